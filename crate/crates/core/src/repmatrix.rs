//! Matrix elements and generator matrices `T(I_{k,k-1})` over the GT basis.
//!
//! Odd `k = 2p+1` shifts one entry of row `2p` by +-1 with coefficients `A`;
//! even `k = 2p` shifts one entry of row `2p-1` by +-1 with coefficients `B`
//! and adds the diagonal `i C`. Lowering coefficients are the raising
//! formula evaluated at the lowered pattern, negated.
//!
//! All three coefficients are built from q-number ratios ([`BracketRatio`]).
//! `A` carries the extra factor `d(l) = ({l}{l+1})^(-1/2)`, which equals
//! `([l][l+1] / ([2l][2l+2]))^(1/2)` wherever the latter is defined and stays
//! finite at `l = 0`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use thiserror::Error;

use crate::gtbasis::{pattern_l_row, Basis, GtPattern, LRow, Signature};
use crate::qnum::{BracketRatio, HalfInt, QError, QMode, QScalar};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RepError {
    #[error("generator index k = {k} outside 2..={n}")]
    LevelOutOfRange { k: usize, n: usize },
    #[error("exact mode cannot assemble matrices: matrix elements involve square roots")]
    ExactModeMatrix,
    #[error("coefficient index j = {j} out of range for row of length {len}")]
    IndexOutOfRange { j: usize, len: usize },
    #[error("singular matrix element: {0}")]
    Singular(#[from] QError),
}

/// A matrix element value. `non_real` is set when `q` is neither real nor
/// unimodular and the square-rooted value picked up an imaginary part.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coefficient {
    pub value: Complex64,
    pub non_real: bool,
}

impl Coefficient {
    fn new(value: Complex64) -> Self {
        let non_real = value.im.abs() > 1e-12 * value.norm().max(1.0);
        Coefficient { value, non_real }
    }
}

fn check_index(j: usize, len: usize) -> Result<(), RepError> {
    if j < len {
        Ok(())
    } else {
        Err(RepError::IndexOutOfRange { j, len })
    }
}

/// The ratio under the absolute value in `A^j_{2p}`, for rows `2p+1`, `2p`,
/// `2p-1` in l-coordinates and 0-based `j`.
pub fn a_ratio(upper: &LRow, mid: &LRow, lower: &LRow, j: usize) -> BracketRatio {
    let lj = mid.l[j];
    let mut r = BracketRatio::new();
    for &u in &upper.l {
        r.num(u + lj).num(u - lj - 1);
    }
    for &w in &lower.l {
        r.num(w + lj).num(w - lj - 1);
    }
    for (i, &m) in mid.l.iter().enumerate() {
        if i != j {
            r.den(m + lj).den(m - lj).den(m + lj + 1).den(m - lj - 1);
        }
    }
    r
}

/// The ratio under the absolute value in `B^j_{2p-1}`, for rows `2p`, `2p-1`,
/// `2p-2` in l-coordinates and 0-based `j`.
pub fn b_ratio(upper: &LRow, mid: &LRow, lower: &LRow, j: usize) -> BracketRatio {
    let lj = mid.l[j];
    let mut r = BracketRatio::new();
    for &u in &upper.l {
        r.num(u + lj).num(u - lj);
    }
    for &w in &lower.l {
        r.num(w + lj).num(w - lj);
    }
    r.den(lj.double() + 1).den(lj.double() - 1).den(lj).den(lj);
    for (i, &m) in mid.l.iter().enumerate() {
        if i != j {
            r.den(m + lj).den(m - lj).den(m + lj - 1).den(m - lj - 1);
        }
    }
    r
}

/// The ratio defining `C_{2p-1}`, or `None` when `l_{p,2p} = 0` and `C`
/// vanishes identically.
pub fn c_ratio(upper: &LRow, mid: &LRow, lower: &LRow) -> Option<BracketRatio> {
    if upper.l.last().is_some_and(|x| x.is_zero()) {
        return None;
    }
    let mut r = BracketRatio::new();
    for &u in &upper.l {
        r.num(u);
    }
    for &w in &lower.l {
        r.num(w);
    }
    for &m in &mid.l {
        r.den(m).den(m - 1);
    }
    Some(r)
}

/// `d(l)^2 = 1 / ({l}{l+1})`.
pub fn d_squared(l: HalfInt, mode: &QMode) -> Result<QScalar, QError> {
    (&mode.balanced(l) * &mode.balanced(l + 1)).recip()
}

/// `(A^j_{2p})^2` without the absolute value: `d(l)^2` times the signed ratio.
/// Exact in exact and classical modes.
pub fn coeff_a_squared(
    upper: &LRow,
    mid: &LRow,
    lower: &LRow,
    j: usize,
    mode: &QMode,
) -> Result<QScalar, RepError> {
    check_index(j, mid.len())?;
    let ratio = a_ratio(upper, mid, lower, j).evaluate(mode)?;
    Ok(&d_squared(mid.l[j], mode)? * &ratio)
}

fn sqrt_abs(v: &QScalar) -> f64 {
    v.to_complex().norm().sqrt()
}

/// `A^j_{2p}`: `d(l_{j,2p}) |ratio|^(1/2)`.
pub fn coeff_a(
    upper: &LRow,
    mid: &LRow,
    lower: &LRow,
    j: usize,
    mode: &QMode,
) -> Result<Coefficient, RepError> {
    check_index(j, mid.len())?;
    let ratio = a_ratio(upper, mid, lower, j).evaluate(mode)?;
    if ratio.is_zero() {
        return Ok(Coefficient::new(Complex64::new(0.0, 0.0)));
    }
    let d = d_squared(mid.l[j], mode)?.to_complex().sqrt();
    Ok(Coefficient::new(d * sqrt_abs(&ratio)))
}

/// `B^j_{2p-1}`: `|ratio|^(1/2)`.
pub fn coeff_b(
    upper: &LRow,
    mid: &LRow,
    lower: &LRow,
    j: usize,
    mode: &QMode,
) -> Result<Coefficient, RepError> {
    check_index(j, mid.len())?;
    let ratio = b_ratio(upper, mid, lower, j).evaluate(mode)?;
    Ok(Coefficient::new(Complex64::new(sqrt_abs(&ratio), 0.0)))
}

/// `C_{2p-1}`, signed. Exactly zero when `l_{p,2p} = 0`.
pub fn coeff_c(upper: &LRow, mid: &LRow, lower: &LRow, mode: &QMode) -> Result<QScalar, RepError> {
    match c_ratio(upper, mid, lower) {
        None => Ok(mode.zero()),
        Some(r) => Ok(r.evaluate(mode)?),
    }
}

/// l-coordinate rows `(k, k-1, k-2)` of `pattern`; levels below 2 are empty.
pub fn context(pattern: &GtPattern, k: usize) -> (LRow, LRow, LRow) {
    (
        pattern_l_row(pattern, k),
        pattern_l_row(pattern, k - 1),
        pattern_l_row(pattern, k - 2),
    )
}

/// Sparse `T(I_{k,k-1})` in coordinate form over an ordered basis.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorMatrix {
    pub k: usize,
    pub dim: usize,
    /// `(row, col, value)`, sorted by row then column, zeros omitted.
    pub entries: Vec<(usize, usize, Complex64)>,
    pub mode: QMode,
}

impl GeneratorMatrix {
    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let mut m = DMatrix::zeros(self.dim, self.dim);
        for &(r, c, v) in &self.entries {
            m[(r, c)] += v;
        }
        m
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries
            .binary_search_by(|&(r, c, _)| (r, c).cmp(&(row, col)))
            .map(|i| self.entries[i].2)
            .unwrap_or_default()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|e| e.2.norm()).fold(0.0, f64::max)
    }

    /// Whether any coefficient came out non-real.
    pub fn has_non_real_coefficients(&self) -> bool {
        let diagonal_only_imag = self.k % 2 == 0;
        self.entries.iter().any(|&(r, c, v)| {
            let scale = 1e-12 * v.norm().max(1.0);
            if r == c && diagonal_only_imag {
                v.re.abs() > scale
            } else {
                v.im.abs() > scale
            }
        })
    }
}

fn column_entries(
    basis: &Basis,
    col: usize,
    k: usize,
    mode: &QMode,
) -> Result<Vec<(usize, usize, Complex64)>, RepError> {
    let pattern = &basis.patterns()[col];
    let mut out = Vec::new();
    let changed = k - 1;
    let (upper, mid, lower) = context(pattern, k);
    let odd = k % 2 == 1;
    let coeff = |u: &LRow, m: &LRow, w: &LRow, j| {
        if odd {
            coeff_a(u, m, w, j, mode)
        } else {
            coeff_b(u, m, w, j, mode)
        }
    };
    for j in 0..mid.len() {
        let raised = pattern.shifted(changed, j, 1);
        if let Ok(row) = basis.pattern_index(&raised) {
            let a = coeff(&upper, &mid, &lower, j)?;
            out.push((row, col, a.value));
        }
        let lowered = pattern.shifted(changed, j, -1);
        if let Ok(row) = basis.pattern_index(&lowered) {
            let (u, m, w) = context(&lowered, k);
            let a = coeff(&u, &m, &w, j)?;
            out.push((row, col, -a.value));
        }
    }
    if !odd {
        let c = coeff_c(&upper, &mid, &lower, mode)?;
        if !c.is_zero() {
            out.push((col, col, Complex64::i() * c.to_complex()));
        }
    }
    out.retain(|e| e.2 != Complex64::new(0.0, 0.0));
    Ok(out)
}

/// `T(I_{k,k-1})` over `basis`.
pub fn generator_matrix_on(
    basis: &Basis,
    k: usize,
    mode: &QMode,
) -> Result<GeneratorMatrix, RepError> {
    let n = basis.signature().level();
    if k < 2 || k > n {
        return Err(RepError::LevelOutOfRange { k, n });
    }
    if matches!(mode, QMode::ExactRational(_)) {
        return Err(RepError::ExactModeMatrix);
    }
    let columns: Vec<_> = (0..basis.len())
        .into_par_iter()
        .map(|col| column_entries(basis, col, k, mode))
        .collect::<Result<_, _>>()?;
    let mut entries: Vec<_> = columns.into_iter().flatten().collect();
    entries.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
    Ok(GeneratorMatrix {
        k,
        dim: basis.len(),
        entries,
        mode: mode.clone(),
    })
}

/// `T(I_{k,k-1})` for the representation with highest weight `sig`.
pub fn generator_matrix(
    sig: &Signature,
    k: usize,
    mode: &QMode,
) -> Result<GeneratorMatrix, RepError> {
    generator_matrix_on(&Basis::new(sig), k, mode)
}

/// A representation: its basis and the generators `T(I_{k,k-1})`, `k = 2..=n`.
#[derive(Debug, Clone)]
pub struct RepBundle {
    pub signature: Signature,
    pub basis: Basis,
    pub generators: Vec<GeneratorMatrix>,
    pub mode: QMode,
}

impl RepBundle {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn n(&self) -> usize {
        self.signature.level()
    }

    /// The generator `T(I_{k,k-1})`.
    pub fn generator(&self, k: usize) -> Option<&GeneratorMatrix> {
        k.checked_sub(2).and_then(|i| self.generators.get(i))
    }
}

pub fn build_rep(sig: &Signature, mode: &QMode) -> Result<RepBundle, RepError> {
    let basis = Basis::new(sig);
    let generators = (2..=sig.level())
        .map(|k| generator_matrix_on(&basis, k, mode))
        .collect::<Result<_, _>>()?;
    Ok(RepBundle {
        signature: sig.clone(),
        basis,
        generators,
        mode: mode.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gtbasis::l_coords;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn sig(level: usize, twice: &[i64]) -> Signature {
        Signature::from_twice(level, twice).unwrap()
    }

    fn lrow(level: usize, twice: &[i64]) -> LRow {
        l_coords(&Signature::new_unchecked(
            level,
            twice.iter().map(|&t| HalfInt::from_twice(t)).collect(),
        ))
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn so3_a_coefficient_matches_specialized_formula() {
        let mode = QMode::real(0.9).unwrap();
        // m_{1,3} = 2, m_{1,2} = 1 -> l_{1,3} = 3, l_{1,2} = 1
        let (u, m, w) = (lrow(3, &[4]), lrow(2, &[2]), LRow::empty(1));
        let a = coeff_a(&u, &m, &w, 0, &mode).unwrap();
        let q = |x: i64| mode.q_number(HalfInt::from_int(x)).to_complex().re;
        let d = (q(1) * q(2) / (q(2) * q(4))).sqrt();
        let expected = d * (q(3 + 1) * q(3 - 1 - 1)).abs().sqrt();
        assert!((a.value.re - expected).abs() < 1e-14);
        assert!(!a.non_real);
    }

    #[test]
    fn raising_at_ceiling_vanishes() {
        let mode = QMode::real(0.9).unwrap();
        // l_{1,2} = l_{1,3} - 1: m_{1,2} = m_{1,3}
        let (u, m, w) = (lrow(3, &[2]), lrow(2, &[2]), LRow::empty(1));
        assert!(a_ratio(&u, &m, &w, 0).numerator_vanishes());
        assert_eq!(
            coeff_a(&u, &m, &w, 0, &mode).unwrap().value,
            Complex64::new(0.0, 0.0)
        );
    }

    #[test]
    fn d_at_zero_is_finite() {
        let s = BigRational::from_integer(BigInt::from(3));
        let mode = QMode::exact(s).unwrap();
        // d(0)^2 = 1 / ({0}{1}) = 1 / (2 [2])
        let expected = (&mode.from_i64(2) * &mode.q_two()).recip().unwrap();
        assert_eq!(d_squared(HalfInt::ZERO, &mode).unwrap(), expected);
        let fmode = QMode::real(0.7).unwrap();
        let d0 = d_squared(HalfInt::ZERO, &fmode).unwrap().to_complex();
        let two = fmode.q_two().to_complex();
        assert!(close(d0, 1.0 / (2.0 * two), 1e-15));
    }

    #[test]
    fn so4_b_coefficient_matches_specialized_formula() {
        let mode = QMode::real(1.3).unwrap();
        // rows m4 = (2, 1), m3 = (1): l4 = (3, 1), l3 = (2)
        let (u, m, w) = (lrow(4, &[4, 2]), lrow(3, &[2]), LRow::empty(2));
        let b = coeff_b(&u, &m, &w, 0, &mode).unwrap().value.re;
        let q = |x: i64| mode.q_number(HalfInt::from_int(x)).to_complex().re;
        let (l14, l24, l13) = (3, 1, 2);
        let expected = ((q(l14 + l13) * q(l14 - l13) * q(l24 + l13) * q(l24 - l13))
            / (q(2 * l13 + 1) * q(2 * l13 - 1) * q(l13) * q(l13)))
        .abs()
        .sqrt();
        assert!((b - expected).abs() < 1e-14);
    }

    #[test]
    fn b_at_bound_vanishes() {
        // m_{1,4} = m_{1,3}: raising blocked
        let (u, m, w) = (lrow(4, &[2, 0]), lrow(3, &[2]), LRow::empty(2));
        assert!(b_ratio(&u, &m, &w, 0).numerator_vanishes());
        assert_eq!(
            coeff_b(&u, &m, &w, 0, &QMode::Classical).unwrap().value.re,
            0.0
        );
    }

    #[test]
    fn c_coefficient_cases() {
        let mode = QMode::real(0.9).unwrap();
        let empty = LRow::empty(1);
        let c = coeff_c(&lrow(2, &[4]), &empty, &LRow::empty(0), &mode).unwrap();
        assert!(close(c.to_complex(), mode.q_two().to_complex(), 1e-15));
        let c = coeff_c(&lrow(2, &[-2]), &empty, &LRow::empty(0), &mode).unwrap();
        assert!(close(c.to_complex(), Complex64::new(-1.0, 0.0), 1e-15));
        let c = coeff_c(&lrow(2, &[0]), &empty, &LRow::empty(0), &mode).unwrap();
        assert!(c.is_zero());
        // l_{p,2p} = 0 with a vanishing denominator is still exactly 0
        let c = coeff_c(&lrow(4, &[0, 0]), &lrow(3, &[0]), &lrow(2, &[0]), &mode).unwrap();
        assert!(c.is_zero());
    }

    #[test]
    fn so3_generators() {
        let mode = QMode::real(0.9).unwrap();
        let rep = build_rep(&sig(3, &[2]), &mode).unwrap();
        assert_eq!(rep.dim(), 3);
        assert_eq!(rep.generators.len(), 2);
        let t21 = rep.generator(2).unwrap();
        assert_eq!(t21.entries.len(), 2);
        assert!(close(t21.get(0, 0), Complex64::i(), 1e-15));
        assert_eq!(t21.get(1, 1), Complex64::new(0.0, 0.0));
        assert!(close(t21.get(2, 2), -Complex64::i(), 1e-15));
        let t32 = rep.generator(3).unwrap().to_dense();
        assert!((&t32 + t32.transpose()).iter().all(|z| z.norm() == 0.0));
        assert!(t32.iter().all(|z| z.im == 0.0));
        for i in 0..3 {
            for j in 0..3 {
                if (i as i64 - j as i64).abs() != 1 {
                    assert_eq!(t32[(i, j)], Complex64::new(0.0, 0.0));
                }
            }
        }
        assert!(t32[(0, 1)].re > 0.0 && t32[(1, 0)].re < 0.0);
    }

    #[test]
    fn trivial_rep_is_zero() {
        for level in 3..=7 {
            let zeros = vec![0; level / 2];
            let rep = build_rep(&sig(level, &zeros), &QMode::real(0.9).unwrap()).unwrap();
            assert_eq!(rep.dim(), 1);
            assert!(rep.generators.iter().all(|g| g.entries.is_empty()));
        }
    }

    #[test]
    fn bundle_sizes() {
        let mode = QMode::polar(0.3).unwrap();
        let rep = build_rep(&sig(5, &[1, 1]), &mode).unwrap();
        assert_eq!((rep.generators.len(), rep.dim()), (4, 4));
        let rep = build_rep(&sig(4, &[2, 0]), &mode).unwrap();
        assert_eq!((rep.generators.len(), rep.dim()), (3, 4));
    }

    #[test]
    fn errors() {
        let s = sig(4, &[2, 0]);
        assert_eq!(
            generator_matrix(&s, 5, &QMode::Classical),
            Err(RepError::LevelOutOfRange { k: 5, n: 4 })
        );
        assert_eq!(
            generator_matrix(&s, 1, &QMode::Classical),
            Err(RepError::LevelOutOfRange { k: 1, n: 4 })
        );
        let exact = QMode::exact(BigRational::from_integer(BigInt::from(3))).unwrap();
        assert_eq!(
            generator_matrix(&s, 3, &exact),
            Err(RepError::ExactModeMatrix)
        );
        let (u, m, w) = (lrow(3, &[2]), lrow(2, &[0]), LRow::empty(1));
        assert!(matches!(
            coeff_a(&u, &m, &w, 1, &QMode::Classical),
            Err(RepError::IndexOutOfRange { j: 1, len: 1 })
        ));
    }
}
