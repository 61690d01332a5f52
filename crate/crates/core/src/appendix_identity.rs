//! The master identity behind the diagonal matrix-element relations.
//!
//! With `f(x; y) = [x+y][x-y-1]` and, for a configuration of `p` triples
//! `(l_{r,2p+1}, l_{r,2p}, l_{r,2p-1})` (the last one without `l_{p,2p-1}`),
//!
//! ```text
//! phi^r = prod_s f(l_{s,2p+1}; l_{r,2p}) * prod_{s<p} f(l_{s,2p-1}; l_{r,2p})
//!         / prod_{s != r} f(l_{s,2p}; l_{r,2p}) f(l_{s,2p}+1; l_{r,2p})
//!
//! Phi   = sum_r ( -phi^r + phi^r|_{l_{r,2p} -> l_{r,2p}-1} ) / [2 l_{r,2p}]
//! ```
//!
//! `Phi = 1` whenever the triples come from a GT pattern. The sweep checks
//! this exactly, in big-rational arithmetic at rational `s = q^(1/2)`.

use std::collections::BTreeSet;
use std::fmt;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::One;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::gtbasis::{l_coords, signatures_up_to, GtPattern, LRow, Signature};
use crate::qnum::{BracketRatio, HalfInt, QError, QMode, QScalar};
use crate::repmatrix::{coeff_a, RepError};

/// Largest `p` accepted by [`identity_sweep`].
pub const MAX_SWEEP_P: usize = 4;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IdentityError {
    #[error("configuration needs at least one triple, and only the last may omit l_(r,2p-1)")]
    MalformedConfig,
    #[error("index r = {r} out of range 1..={p}")]
    IndexOutOfRange { r: usize, p: usize },
    #[error("phi^{r}: vanishing denominator f(l_{s},2p (+1); l_{r},2p)")]
    ZeroDenominator { s: usize, r: usize },
    #[error("Phi: [2 l_({r},2p)] = 0")]
    DivisionByZero { r: usize },
    #[error("p_max = {0} exceeds the sweep cap {MAX_SWEEP_P}")]
    PMaxTooLarge(usize),
    #[error("no s values given")]
    NoSamplePoints,
    #[error(transparent)]
    Mode(#[from] QError),
}

/// `(l_{r,2p+1}, l_{r,2p}, l_{r,2p-1})`; `lower` is `None` for `r = p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LTriple {
    pub upper: HalfInt,
    pub mid: HalfInt,
    pub lower: Option<HalfInt>,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LConfig {
    triples: Vec<LTriple>,
}

impl LConfig {
    pub fn new(triples: Vec<LTriple>) -> Result<Self, IdentityError> {
        let p = triples.len();
        let well_formed = p >= 1
            && triples[..p - 1].iter().all(|t| t.lower.is_some())
            && triples[p - 1].lower.is_none();
        if !well_formed {
            return Err(IdentityError::MalformedConfig);
        }
        Ok(LConfig { triples })
    }

    /// From l-coordinate rows `2p+1` (p entries), `2p` (p), `2p-1` (p-1).
    pub fn from_rows(upper: &LRow, mid: &LRow, lower: &LRow) -> Result<Self, IdentityError> {
        let p = upper.len();
        if mid.len() != p || lower.len() + 1 != p {
            return Err(IdentityError::MalformedConfig);
        }
        let triples = (0..p)
            .map(|r| LTriple {
                upper: upper.l[r],
                mid: mid.l[r],
                lower: lower.l.get(r).copied(),
            })
            .collect();
        Self::new(triples)
    }

    /// Rows `2p+1, 2p, 2p-1` of a pattern with `n >= 2p+1`.
    pub fn from_pattern(pattern: &GtPattern, p: usize) -> Result<Self, IdentityError> {
        if p == 0 || 2 * p + 1 > pattern.n() {
            return Err(IdentityError::MalformedConfig);
        }
        let lower = if p == 1 {
            LRow::empty(1)
        } else {
            l_coords(pattern.row(2 * p - 1))
        };
        Self::from_rows(
            &l_coords(pattern.row(2 * p + 1)),
            &l_coords(pattern.row(2 * p)),
            &lower,
        )
    }

    pub fn p(&self) -> usize {
        self.triples.len()
    }

    pub fn triples(&self) -> &[LTriple] {
        &self.triples
    }

    /// Copy with `l_{r,2p}` (1-based `r`) replaced.
    pub fn with_mid(&self, r: usize, value: HalfInt) -> Self {
        let mut out = self.clone();
        out.triples[r - 1].mid = value;
        out
    }

    fn check_r(&self, r: usize) -> Result<(), IdentityError> {
        if r == 0 || r > self.p() {
            Err(IdentityError::IndexOutOfRange { r, p: self.p() })
        } else {
            Ok(())
        }
    }
}

impl fmt::Debug for LConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, t) in self.triples.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            match t.lower {
                Some(w) => write!(f, "{{{}; {}; {}}}", t.upper, t.mid, w)?,
                None => write!(f, "{{{}; {}; .}}", t.upper, t.mid)?,
            }
        }
        write!(f, "}}")
    }
}

impl fmt::Display for LConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

fn push_f(ratio: &mut BracketRatio, x: HalfInt, y: HalfInt, numerator: bool) {
    let (a, b) = (x + y, x - y - 1);
    if numerator {
        ratio.num(a).num(b);
    } else {
        ratio.den(a).den(b);
    }
}

/// `f(x; y) = [x+y][x-y-1]`.
pub fn f(x: HalfInt, y: HalfInt, mode: &QMode) -> QScalar {
    &mode.q_number(x + y) * &mode.q_number(x - y - 1)
}

/// The bracket ratio defining `phi^r` (1-based `r`).
pub fn phi_ratio(config: &LConfig, r: usize) -> Result<BracketRatio, IdentityError> {
    config.check_r(r)?;
    let lr = config.triples[r - 1].mid;
    let mut ratio = BracketRatio::new();
    for t in &config.triples {
        push_f(&mut ratio, t.upper, lr, true);
        if let Some(w) = t.lower {
            push_f(&mut ratio, w, lr, true);
        }
    }
    for (s, t) in config.triples.iter().enumerate() {
        if s + 1 != r {
            push_f(&mut ratio, t.mid, lr, false);
            push_f(&mut ratio, t.mid + 1, lr, false);
        }
    }
    Ok(ratio)
}

/// `phi^r` (1-based `r`). A vanishing denominator is tolerated only when the
/// numerator vanishes to higher order, in which case the value is 0.
pub fn phi_r(config: &LConfig, r: usize, mode: &QMode) -> Result<QScalar, IdentityError> {
    let ratio = phi_ratio(config, r)?;
    ratio.evaluate(mode).map_err(|e| match e {
        QError::SingularRatio { .. } => {
            let lr = config.triples[r - 1].mid;
            let s = config
                .triples
                .iter()
                .enumerate()
                .find(|(s, t)| {
                    s + 1 != r
                        && [t.mid + lr, t.mid - lr - 1, t.mid + 1 + lr, t.mid - lr]
                            .iter()
                            .any(|x| x.is_zero())
                })
                .map_or(0, |(s, _)| s + 1);
            IdentityError::ZeroDenominator { s, r }
        }
        other => IdentityError::Mode(other),
    })
}

/// `Phi` of the configuration.
pub fn big_phi(config: &LConfig, mode: &QMode) -> Result<QScalar, IdentityError> {
    let mut total = mode.zero();
    for r in 1..=config.p() {
        let lr = config.triples[r - 1].mid;
        let weight = mode.q_number(lr.double());
        if weight.is_zero() {
            return Err(IdentityError::DivisionByZero { r });
        }
        let here = phi_r(config, r, mode)?;
        let lowered = phi_r(&config.with_mid(r, lr - 1), r, mode)?;
        total = &total
            + &(lowered - here)
                .checked_div(&weight)
                .map_err(IdentityError::Mode)?;
    }
    Ok(total)
}

/// Span bound for `Phi - 1` as a Laurent polynomial in `s` after clearing
/// denominators: every bracket `[x]` contributes `4|x| + 4`, so agreement at
/// more than this many distinct `s` would certify the identity at `config`.
pub fn degree_bound(config: &LConfig) -> usize {
    let span = |x: &HalfInt| 2 * x.twice().unsigned_abs() as usize + 4;
    let mut total = 0;
    for r in 1..=config.p() {
        let lr = config.triples[r - 1].mid;
        total += span(&lr.double());
        for c in [config.clone(), config.with_mid(r, lr - 1)] {
            let ratio = phi_ratio(&c, r).expect("r in range");
            total += ratio.numerator_args().iter().map(span).sum::<usize>();
            total += ratio.denominator_args().iter().map(span).sum::<usize>();
        }
    }
    total
}

/// `{l}{l+1} (A^r_{2p})^2` and `phi^r` at the context rows `2p+1, 2p, 2p-1`,
/// for comparison. `{l}{l+1}` is `[2l][2l+2]/([l][l+1])`, finite at `l = 0`.
pub fn coefficient_bridge(
    upper: &LRow,
    mid: &LRow,
    lower: &LRow,
    r: usize,
    mode: &QMode,
) -> Result<(Complex64, Complex64), RepError> {
    let a = coeff_a(upper, mid, lower, r - 1, mode)?.value;
    let l = mid.l[r - 1];
    let pref = (&mode.balanced(l) * &mode.balanced(l + 1)).to_complex();
    let config = LConfig::from_rows(upper, mid, lower).map_err(|_| RepError::IndexOutOfRange {
        j: r,
        len: mid.len(),
    })?;
    let phi = phi_r(&config, r, mode).map_err(|_| RepError::Singular(QError::DivisionByZero))?;
    Ok((pref * a * a, phi.to_complex()))
}

/// Where a swept configuration came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConfigSource {
    /// Rows `2p+1, 2p, 2p-1` of a GT pattern.
    Pattern,
    /// A pattern configuration with `l_{j,2p-1}` set to 0.
    LowerRowZero { j: usize },
    /// Rows `2p, 2p-1, 2p-2` shifted by 1/2, with `l_{j,2p+1} = 3/2` and
    /// `l_{p,2p} = -1/2`.
    UpperThreeHalves { j: usize },
}

impl ConfigSource {
    pub fn is_formal_extension(&self) -> bool {
        !matches!(self, ConfigSource::Pattern)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Counterexample {
    pub config: LConfig,
    pub source: ConfigSource,
    pub s: BigRational,
    /// The computed value, or the evaluation error.
    pub value: Result<BigRational, IdentityError>,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({:?}) at s = {}: ", self.config, self.source, self.s)?;
        match &self.value {
            Ok(v) => write!(f, "Phi = {v}"),
            Err(e) => write!(f, "{e}"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SweepOptions {
    pub p_max: usize,
    pub s_values: Vec<BigRational>,
    /// Signature entries range over `[-max_entry, max_entry]`.
    pub max_entry: HalfInt,
    /// Per `p` and source, keep at most this many configurations (seeded
    /// sample); `None` keeps all.
    pub samples: Option<usize>,
    pub seed: u64,
    pub include_extensions: bool,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            p_max: 2,
            s_values: default_s_values(),
            max_entry: HalfInt::from_int(2),
            samples: None,
            seed: 0x5eed,
            include_extensions: true,
        }
    }
}

/// `3, 7/2, 11/5`.
pub fn default_s_values() -> Vec<BigRational> {
    [(3, 1), (7, 2), (11, 5)]
        .iter()
        .map(|&(n, d)| BigRational::new(n.into(), d.into()))
        .collect()
}

#[derive(Debug, Clone, Default)]
pub struct SweepReport {
    /// Configurations checked, per `p` (index 0 is `p = 1`).
    pub configs_per_p: Vec<usize>,
    pub extension_configs: usize,
    /// Pattern configurations skipped because `l_{p,2p} = 0`.
    pub skipped_degenerate: usize,
    /// Extension evaluations where some `phi^r` is 0/0 or `[2 l_{r,2p}] = 0`.
    pub undefined_extensions: usize,
    /// Total exact evaluations.
    pub evaluations: usize,
    /// Largest [`degree_bound`] among checked configurations.
    pub max_degree_bound: usize,
    pub failures: Vec<Counterexample>,
}

impl SweepReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

fn odd_level_configs(p: usize, max_entry: HalfInt) -> BTreeSet<LConfig> {
    let mut out = BTreeSet::new();
    for half in [false, true] {
        for sig in signatures_up_to(2 * p + 1, max_entry, half) {
            for mid in sig.branch() {
                let lowers = if p == 1 {
                    vec![None]
                } else {
                    mid.branch().into_iter().map(Some).collect()
                };
                for low in lowers {
                    let lower = low.as_ref().map_or(LRow::empty(1), l_coords);
                    let c = LConfig::from_rows(&l_coords(&sig), &l_coords(&mid), &lower)
                        .expect("row lengths");
                    out.insert(c);
                }
            }
        }
    }
    out
}

fn three_halves_configs(p: usize, max_entry: HalfInt) -> BTreeSet<(usize, LConfig)> {
    let half = HalfInt::HALF;
    let mut out = BTreeSet::new();
    let tops: Vec<Signature> = if p == 1 {
        // only l_{1,2p+1} = 3/2 and l_{1,2p} = -1/2 remain
        vec![Signature::from_twice(2, &[0]).expect("level 2")]
    } else {
        [false, true]
            .iter()
            .flat_map(|&h| signatures_up_to(2 * p, max_entry, h))
            .collect()
    };
    for top in tops {
        let mids = if p == 1 {
            vec![None]
        } else {
            top.branch().into_iter().map(Some).collect()
        };
        for mid in mids {
            let lows: Vec<Option<Signature>> = match &mid {
                Some(m) if p >= 2 => {
                    if m.level() >= 3 {
                        m.branch().into_iter().map(Some).collect()
                    } else {
                        vec![None]
                    }
                }
                _ => vec![None],
            };
            for low in lows {
                let l_top = l_coords(&top);
                let l_mid = mid.as_ref().map(l_coords);
                let l_low = low.as_ref().map(l_coords);
                for j in 1..=p {
                    let triples = (1..=p)
                        .map(|s| {
                            let upper = if s == j {
                                HalfInt::from_twice(3)
                            } else {
                                l_top.l[s - 1] + half
                            };
                            if s < p {
                                LTriple {
                                    upper,
                                    mid: l_mid.as_ref().expect("p >= 2").l[s - 1] - half,
                                    lower: Some(l_low.as_ref().expect("p >= 2").l[s - 1] + half),
                                }
                            } else {
                                LTriple {
                                    upper,
                                    mid: -half,
                                    lower: None,
                                }
                            }
                        })
                        .collect();
                    out.insert((j, LConfig::new(triples).expect("well formed")));
                }
            }
        }
    }
    out
}

fn pick<T: Clone>(items: Vec<T>, samples: Option<usize>, rng: &mut ChaCha8Rng) -> Vec<T> {
    match samples {
        Some(k) if k < items.len() => {
            let mut idx = sample(rng, items.len(), k).into_vec();
            idx.sort_unstable();
            idx.into_iter().map(|i| items[i].clone()).collect()
        }
        _ => items,
    }
}

/// Check `Phi = 1` exactly over configurations drawn from GT patterns of
/// small signatures, for every `p <= p_max` and every `s`.
pub fn identity_sweep(opts: &SweepOptions) -> Result<SweepReport, IdentityError> {
    if opts.p_max > MAX_SWEEP_P {
        return Err(IdentityError::PMaxTooLarge(opts.p_max));
    }
    if opts.s_values.is_empty() {
        return Err(IdentityError::NoSamplePoints);
    }
    let modes: Vec<(BigRational, QMode)> = opts
        .s_values
        .iter()
        .map(|s| Ok((s.clone(), QMode::exact(s.clone())?)))
        .collect::<Result<_, QError>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut report = SweepReport::default();
    let mut work: Vec<(LConfig, ConfigSource)> = Vec::new();
    for p in 1..=opts.p_max {
        let all = odd_level_configs(p, opts.max_entry);
        let (good, degenerate): (Vec<_>, Vec<_>) = all
            .into_iter()
            .partition(|c| !c.triples[p - 1].mid.is_zero());
        report.skipped_degenerate += degenerate.len();
        let good = pick(good, opts.samples, &mut rng);
        report.configs_per_p.push(good.len());
        if opts.include_extensions && p >= 2 {
            let mut ext = Vec::new();
            for c in &good {
                for j in 1..p {
                    let mut t = c.triples.clone();
                    t[j - 1].lower = Some(HalfInt::ZERO);
                    ext.push((LConfig { triples: t }, ConfigSource::LowerRowZero { j }));
                }
            }
            let ext: BTreeSet<_> = ext.into_iter().collect();
            let ext = pick(ext.into_iter().collect(), opts.samples, &mut rng);
            report.extension_configs += ext.len();
            work.extend(ext);
        }
        if opts.include_extensions {
            let ext: Vec<_> = three_halves_configs(p, opts.max_entry)
                .into_iter()
                .collect();
            let ext = pick(ext, opts.samples, &mut rng);
            report.extension_configs += ext.len();
            work.extend(
                ext.into_iter()
                    .map(|(j, c)| (c, ConfigSource::UpperThreeHalves { j })),
            );
        }
        work.extend(good.into_iter().map(|c| (c, ConfigSource::Pattern)));
    }
    report.max_degree_bound = work.iter().map(|(c, _)| degree_bound(c)).max().unwrap_or(0);
    report.evaluations = work.len() * modes.len();
    let one = BigRational::one();
    let outcomes: Vec<Option<Counterexample>> = work
        .par_iter()
        .flat_map_iter(|(config, source)| {
            let one = &one;
            modes.iter().filter_map(move |(s, mode)| {
                let value =
                    big_phi(config, mode).map(|v| v.as_exact().cloned().expect("exact mode"));
                match &value {
                    Ok(v) if v == one => None,
                    Err(
                        IdentityError::ZeroDenominator { .. }
                        | IdentityError::DivisionByZero { .. },
                    ) if source.is_formal_extension() => Some(None),
                    _ => Some(Some(Counterexample {
                        config: config.clone(),
                        source: *source,
                        s: s.clone(),
                        value,
                    })),
                }
            })
        })
        .collect();
    for outcome in outcomes {
        match outcome {
            Some(c) => report.failures.push(c),
            None => report.undefined_extensions += 1,
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gtbasis::Basis;
    use num_bigint::BigInt;

    fn h(twice: i64) -> HalfInt {
        HalfInt::from_twice(twice)
    }

    fn exact_mode(n: i64, d: i64) -> QMode {
        QMode::exact(BigRational::new(BigInt::from(n), BigInt::from(d))).unwrap()
    }

    fn one(mode: &QMode) -> QScalar {
        mode.one()
    }

    #[test]
    fn f_examples() {
        let mode = exact_mode(3, 1);
        for t in -8..=8 {
            let y = h(t);
            assert!(f(y + 1, y, &mode).is_zero());
            assert_eq!(f(y, y, &mode), -mode.q_number(y.double()));
            assert_eq!(f(y + 2, y, &mode), mode.q_number(y.double() + 2));
        }
    }

    #[test]
    fn base_case_is_one() {
        let mode = exact_mode(3, 1);
        for l3 in 1..=6 {
            for l2 in -(l3 - 1)..=(l3 - 1) {
                if l2 == 0 {
                    continue;
                }
                let c = LConfig::new(vec![LTriple {
                    upper: h(2 * l3),
                    mid: h(2 * l2),
                    lower: None,
                }])
                .unwrap();
                assert_eq!(big_phi(&c, &mode).unwrap(), one(&mode), "{c}");
                // single triple: phi^1 is just f(l3; l2)
                assert_eq!(phi_r(&c, 1, &mode).unwrap(), f(h(2 * l3), h(2 * l2), &mode));
            }
        }
    }

    #[test]
    fn p2_from_pattern_is_one() {
        let sig = Signature::from_twice(5, &[4, 2]).unwrap();
        let mode = exact_mode(3, 1);
        let mut checked = 0;
        for pat in Basis::new(&sig).patterns() {
            let c = LConfig::from_pattern(pat, 2).unwrap();
            if c.triples()[1].mid.is_zero() {
                assert!(big_phi(&c, &mode).is_err());
                continue;
            }
            assert_eq!(big_phi(&c, &mode).unwrap(), one(&mode), "{c}");
            let float = big_phi(&c, &QMode::real(0.8).unwrap())
                .unwrap()
                .to_complex();
            assert!((float - 1.0).norm() < 1e-12);
            checked += 1;
        }
        assert!(checked > 0);
    }

    #[test]
    fn vanishing_numerator_gives_zero() {
        // l_{1,2p} = l_{1,2p+1} - 1 puts [0] in f(l_{1,2p+1}; l_{1,2p})
        let c = LConfig::new(vec![LTriple {
            upper: h(4),
            mid: h(2),
            lower: None,
        }])
        .unwrap();
        assert!(phi_r(&c, 1, &exact_mode(3, 1)).unwrap().is_zero());
    }

    #[test]
    fn zero_denominator_reported() {
        // l_{1,2p} = l_{2,2p} makes f(l_{2,2p}+1; l_{1,2p}) vanish
        let c = LConfig::new(vec![
            LTriple {
                upper: h(10),
                mid: h(6),
                lower: Some(h(5)),
            },
            LTriple {
                upper: h(2),
                mid: h(6),
                lower: None,
            },
        ])
        .unwrap();
        assert_eq!(
            phi_r(&c, 1, &exact_mode(3, 1)),
            Err(IdentityError::ZeroDenominator { s: 2, r: 1 })
        );
    }

    #[test]
    fn off_lattice_perturbation() {
        let sig = Signature::from_twice(5, &[4, 2]).unwrap();
        let basis = Basis::new(&sig);
        let c = LConfig::from_pattern(&basis.patterns()[0], 2).unwrap();
        let mode = exact_mode(3, 1);
        assert_eq!(big_phi(&c, &mode).unwrap(), one(&mode));
        // Phi is identically 1 as a rational function of the l's, so a parity
        // break alone does not change it
        let mut t = c.triples().to_vec();
        t[0].upper = t[0].upper + HalfInt::HALF;
        let moved = LConfig::new(t).unwrap();
        assert_eq!(big_phi(&moved, &mode).unwrap(), one(&mode));
        // a wrong weight does
        let mut wrong = mode.zero();
        for r in 1..=moved.p() {
            let lr = moved.triples()[r - 1].mid;
            let diff = phi_r(&moved.with_mid(r, lr - 1), r, &mode).unwrap()
                - phi_r(&moved, r, &mode).unwrap();
            wrong = &wrong + &diff.checked_div(&mode.q_number(lr.double() + 1)).unwrap();
        }
        assert_ne!(wrong, one(&mode));
    }

    #[test]
    fn malformed_configs() {
        assert_eq!(LConfig::new(vec![]), Err(IdentityError::MalformedConfig));
        let t = LTriple {
            upper: h(2),
            mid: h(0),
            lower: Some(h(0)),
        };
        assert_eq!(LConfig::new(vec![t]), Err(IdentityError::MalformedConfig));
        let c = LConfig::new(vec![LTriple {
            upper: h(2),
            mid: h(2),
            lower: None,
        }])
        .unwrap();
        assert_eq!(
            phi_r(&c, 2, &QMode::Classical),
            Err(IdentityError::IndexOutOfRange { r: 2, p: 1 })
        );
    }

    #[test]
    fn small_sweep() {
        let opts = SweepOptions {
            p_max: 2,
            ..Default::default()
        };
        let report = identity_sweep(&opts).unwrap();
        assert!(report.pass(), "{:?}", report.failures.first());
        assert_eq!(report.configs_per_p.len(), 2);
        assert!(report.extension_configs > 0);
        assert!(report.max_degree_bound > 0);
        assert!(report.skipped_degenerate > 0);
        assert_eq!(
            identity_sweep(&SweepOptions {
                p_max: 9,
                ..Default::default()
            })
            .unwrap_err(),
            IdentityError::PMaxTooLarge(9)
        );
    }
}
