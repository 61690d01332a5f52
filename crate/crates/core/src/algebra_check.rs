//! Numerical verification of assembled representations: the trilinear
//! relations between adjacent generators, commutation of distant ones,
//! anti-Hermiticity, and irreducibility through the commutant.
//!
//! Residuals use the max-absolute-entry norm, divided by `s^d` where `s` is
//! `max(1, largest input entry)` and `d` is the degree of the relation, so
//! tolerances do not depend on the dimension or on the size of the weights.

use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

use crate::qnum::QMode;
use crate::repmatrix::{GeneratorMatrix, RepBundle};

/// Default dimension cap for [`commutant_dimension`].
pub const DEFAULT_COMMUTANT_CAP: usize = 64;
/// Singular values at or below this fraction of the largest count as zero.
pub const RANK_THRESHOLD: f64 = 1e-8;
/// Minimum separation between the zero and nonzero singular values.
pub const RANK_GAP: f64 = 1e2;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CheckError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("generators I_{{{x},{}}} and I_{{{y},{}}} are not adjacent", x - 1, y - 1)]
    NotAdjacent { x: usize, y: usize },
    #[error("generators I_{{{x},{}}} and I_{{{y},{}}} are adjacent; use the trilinear check", x - 1, y - 1)]
    Adjacent { x: usize, y: usize },
    #[error("commutant check needs floating point generators")]
    NotFloat,
    #[error("dimension {dim} exceeds the commutant cap {cap}")]
    DimensionCap { dim: usize, cap: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    /// `X^2 Y + Y X^2 - [2] X Y X = -Y`
    TrilinearI,
    /// `Y^2 X + X Y^2 - [2] Y X Y = -X`
    TrilinearII,
    /// `[X, Y] = 0` for `|i - k| > 1`
    Commutation,
    /// `X^* = -X`
    Star,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::TrilinearI => "trilinear_I",
            Relation::TrilinearII => "trilinear_II_IV",
            Relation::Commutation => "commutation",
            Relation::Star => "star",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResidualReport {
    pub relation: Relation,
    /// Generator labels `k` of `I_{k,k-1}`; equal for star reports.
    pub pair: (usize, usize),
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl ResidualReport {
    fn new(relation: Relation, pair: (usize, usize), residual: f64, tolerance: f64) -> Self {
        ResidualReport {
            relation,
            pair,
            residual,
            tolerance,
            pass: residual <= tolerance,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub reports: Vec<ResidualReport>,
    /// Order `N` when `q^N` is (numerically) 1.
    pub root_of_unity: Option<u32>,
}

impl SuiteReport {
    pub fn pass(&self) -> bool {
        self.reports.iter().all(|r| r.pass)
    }

    pub fn max_residual(&self) -> f64 {
        self.reports.iter().map(|r| r.residual).fold(0.0, f64::max)
    }
}

type Dense = DMatrix<Complex64>;

/// `S * D` for sparse `S`.
fn sparse_dense(s: &GeneratorMatrix, d: &Dense) -> Dense {
    let mut out = Dense::zeros(s.dim, d.ncols());
    for &(r, c, v) in &s.entries {
        for j in 0..d.ncols() {
            out[(r, j)] += v * d[(c, j)];
        }
    }
    out
}

/// `D * S` for sparse `S`.
fn dense_sparse(d: &Dense, s: &GeneratorMatrix) -> Dense {
    let mut out = Dense::zeros(d.nrows(), s.dim);
    for &(r, c, v) in &s.entries {
        for i in 0..d.nrows() {
            out[(i, c)] += d[(i, r)] * v;
        }
    }
    out
}

fn max_abs(d: &Dense) -> f64 {
    d.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn scale(mats: &[&GeneratorMatrix]) -> f64 {
    mats.iter().map(|m| m.max_abs()).fold(1.0, f64::max)
}

/// `max |X^2 Y + Y X^2 - [2] X Y X + Y|` for adjacent `X`, `Y`.
fn one_sided(x: &GeneratorMatrix, y: &GeneratorMatrix, q_two: Complex64) -> f64 {
    let yd = y.to_dense();
    let xy = sparse_dense(x, &yd);
    let xxy = sparse_dense(x, &xy);
    let yx = dense_sparse(&yd, x);
    let yxx = dense_sparse(&yx, x);
    let xyx = dense_sparse(&xy, x);
    max_abs(&(xxy + yxx - xyx * q_two + yd))
}

/// Trilinear residual for `X = T(I_{k,k-1})`, `Y = T(I_{k-1,k-2})`,
/// covering both orientations of the relation. Returned normalized.
pub fn trilinear_residual(
    x: &GeneratorMatrix,
    y: &GeneratorMatrix,
    mode: &QMode,
) -> Result<f64, CheckError> {
    let (a, b) = trilinear_pair(x, y, mode)?;
    Ok(a.max(b))
}

/// The two orientations separately: (`X`-cubic, `Y`-cubic).
pub fn trilinear_pair(
    x: &GeneratorMatrix,
    y: &GeneratorMatrix,
    mode: &QMode,
) -> Result<(f64, f64), CheckError> {
    if x.dim != y.dim {
        return Err(CheckError::DimensionMismatch(x.dim, y.dim));
    }
    if x.k != y.k + 1 {
        return Err(CheckError::NotAdjacent { x: x.k, y: y.k });
    }
    let q_two = mode.q_two().to_complex();
    let s = scale(&[x, y]).powi(3);
    Ok((one_sided(x, y, q_two) / s, one_sided(y, x, q_two) / s))
}

/// `max |XY - YX|`, normalized, for non-adjacent generators (or `X = Y`).
pub fn commutation_residual(x: &GeneratorMatrix, y: &GeneratorMatrix) -> Result<f64, CheckError> {
    if x.dim != y.dim {
        return Err(CheckError::DimensionMismatch(x.dim, y.dim));
    }
    if x.k.abs_diff(y.k) == 1 {
        return Err(CheckError::Adjacent { x: x.k, y: y.k });
    }
    let yd = y.to_dense();
    let c = sparse_dense(x, &yd) - dense_sparse(&yd, x);
    Ok(max_abs(&c) / scale(&[x, y]).powi(2))
}

/// `max |X + X^dagger|`, normalized. Reported for any `q`.
pub fn star_residual(x: &GeneratorMatrix) -> f64 {
    let d = x.to_dense();
    max_abs(&(&d + d.adjoint())) / scale(&[x])
}

/// Every relation check for one bundle. Star checks are included when the
/// deformation parameter admits the *-structure (real positive or unimodular
/// `q`, or the classical point).
pub fn relation_suite(bundle: &RepBundle, tolerance: f64) -> SuiteReport {
    let gens = &bundle.generators;
    let mut reports = Vec::new();
    for y in 0..gens.len() {
        for x in y + 1..gens.len() {
            let (gx, gy) = (&gens[x], &gens[y]);
            if x == y + 1 {
                let (a, b) = trilinear_pair(gx, gy, &bundle.mode)
                    .expect("adjacent generators of one bundle");
                reports.push(ResidualReport::new(
                    Relation::TrilinearI,
                    (gx.k, gy.k),
                    a,
                    tolerance,
                ));
                reports.push(ResidualReport::new(
                    Relation::TrilinearII,
                    (gx.k, gy.k),
                    b,
                    tolerance,
                ));
            } else {
                let c = commutation_residual(gx, gy).expect("distant generators of one bundle");
                reports.push(ResidualReport::new(
                    Relation::Commutation,
                    (gx.k, gy.k),
                    c,
                    tolerance,
                ));
            }
        }
    }
    if bundle.mode.admits_star() {
        for g in gens {
            reports.push(ResidualReport::new(
                Relation::Star,
                (g.k, g.k),
                star_residual(g),
                tolerance,
            ));
        }
    }
    SuiteReport {
        reports,
        root_of_unity: bundle.mode.root_of_unity_order(),
    }
}

/// Outcome of the commutant computation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Commutant {
    /// `gap` is the smallest ratio seen between the retained nonzero and
    /// discarded zero singular values.
    Determined { dimension: usize, gap: f64 },
    /// Some rank decision had a gap below [`RANK_GAP`].
    Indeterminate { gap: f64, generator: usize },
}

impl Commutant {
    pub fn dimension(&self) -> Option<usize> {
        match self {
            Commutant::Determined { dimension, .. } => Some(*dimension),
            Commutant::Indeterminate { .. } => None,
        }
    }

    pub fn is_irreducible(&self) -> Option<bool> {
        self.dimension().map(|d| d == 1)
    }
}

/// Splits singular values into kept / null, returning the null mask and the gap.
fn rank_split(sv: &[f64]) -> (Vec<bool>, f64) {
    let top = sv.iter().copied().fold(0.0, f64::max);
    if top == 0.0 {
        return (vec![true; sv.len()], f64::INFINITY);
    }
    let threshold = RANK_THRESHOLD * top;
    let null: Vec<bool> = sv.iter().map(|&s| s <= threshold).collect();
    let max_null = sv
        .iter()
        .zip(&null)
        .filter(|p| *p.1)
        .map(|p| *p.0)
        .fold(0.0, f64::max);
    let min_kept = sv
        .iter()
        .zip(&null)
        .filter(|p| !*p.1)
        .map(|p| *p.0)
        .fold(f64::INFINITY, f64::min);
    let gap = if null.iter().any(|&n| n) {
        if max_null == 0.0 {
            f64::INFINITY
        } else {
            min_kept / max_null
        }
    } else {
        min_kept / threshold
    };
    (null, gap)
}

fn is_diagonal(g: &GeneratorMatrix) -> bool {
    g.entries.iter().all(|&(r, c, _)| r == c)
}

/// Dimension of `{X : X T = T X for every generator T}` for dense generators.
///
/// Intersects the kernels of `X -> [T, X]` one generator at a time: a
/// diagonal generator cuts the `d^2` unknowns down to matching-eigenvalue
/// positions directly, every other generator by an SVD of the commutator map
/// restricted to the surviving subspace.
pub fn commutant_of(generators: &[GeneratorMatrix]) -> Commutant {
    let Some(first) = generators.first() else {
        return Commutant::Determined {
            dimension: 0,
            gap: f64::INFINITY,
        };
    };
    let d = first.dim;
    let mut min_gap = f64::INFINITY;
    // Candidate subspace as a list of d x d basis matrices.
    let mut basis: Vec<Dense> = Vec::new();
    let mut order: Vec<&GeneratorMatrix> = generators.iter().filter(|g| is_diagonal(g)).collect();
    order.extend(generators.iter().filter(|g| !is_diagonal(g)));

    let mut started = false;
    for g in &order {
        if !started && is_diagonal(g) {
            let diag: Vec<Complex64> = (0..d).map(|i| g.get(i, i)).collect();
            let mut sv = Vec::with_capacity(d * d);
            for b in 0..d {
                for a in 0..d {
                    sv.push((diag[a] - diag[b]).norm());
                }
            }
            let (null, gap) = rank_split(&sv);
            if gap < RANK_GAP {
                return Commutant::Indeterminate {
                    gap,
                    generator: g.k,
                };
            }
            min_gap = min_gap.min(gap);
            for b in 0..d {
                for a in 0..d {
                    if null[a + d * b] {
                        let mut e = Dense::zeros(d, d);
                        e[(a, b)] = Complex64::new(1.0, 0.0);
                        basis.push(e);
                    }
                }
            }
            started = true;
            continue;
        }
        if !started {
            basis = (0..d * d)
                .map(|idx| {
                    let mut e = Dense::zeros(d, d);
                    e[(idx % d, idx / d)] = Complex64::new(1.0, 0.0);
                    e
                })
                .collect();
            started = true;
        }
        if basis.is_empty() {
            break;
        }
        let r = basis.len();
        let mut op = Dense::zeros(d * d, r);
        for (col, x) in basis.iter().enumerate() {
            let c = sparse_dense(g, x) - dense_sparse(x, g);
            for (i, z) in c.iter().enumerate() {
                op[(i, col)] = *z;
            }
        }
        if max_abs(&op) == 0.0 {
            continue;
        }
        let svd = op.svd(false, true);
        let sv: Vec<f64> = svd.singular_values.iter().copied().collect();
        let (null, gap) = rank_split(&sv);
        if gap < RANK_GAP {
            return Commutant::Indeterminate {
                gap,
                generator: g.k,
            };
        }
        min_gap = min_gap.min(gap);
        let v_t = svd.v_t.expect("requested right singular vectors");
        // rows of v_t beyond the singular values span the kernel as well
        let mut kernel_rows: Vec<usize> = null
            .iter()
            .enumerate()
            .filter(|p| *p.1)
            .map(|p| p.0)
            .collect();
        kernel_rows.extend(sv.len()..v_t.nrows());
        let mut next = Vec::with_capacity(kernel_rows.len());
        for row in kernel_rows {
            let mut x = Dense::zeros(d, d);
            for (col, b) in basis.iter().enumerate() {
                let coef = v_t[(row, col)].conj();
                if coef != Complex64::new(0.0, 0.0) {
                    x += b * coef;
                }
            }
            next.push(x);
        }
        basis = next;
    }
    if !started {
        return Commutant::Determined {
            dimension: d * d,
            gap: min_gap,
        };
    }
    Commutant::Determined {
        dimension: basis.len(),
        gap: min_gap,
    }
}

/// Commutant dimension of a bundle's generators; `1` iff irreducible.
pub fn commutant_dimension(bundle: &RepBundle, cap: usize) -> Result<Commutant, CheckError> {
    if matches!(bundle.mode, QMode::ExactRational(_)) {
        return Err(CheckError::NotFloat);
    }
    if bundle.dim() > cap {
        return Err(CheckError::DimensionCap {
            dim: bundle.dim(),
            cap,
        });
    }
    Ok(commutant_of(&bundle.generators))
}

/// Block-diagonal direct sum of two bundles of the same `n`, generator by
/// generator.
pub fn direct_sum(a: &RepBundle, b: &RepBundle) -> Result<Vec<GeneratorMatrix>, CheckError> {
    if a.generators.len() != b.generators.len() {
        return Err(CheckError::DimensionMismatch(a.n(), b.n()));
    }
    let offset = a.dim();
    Ok(a.generators
        .iter()
        .zip(&b.generators)
        .map(|(ga, gb)| {
            let mut entries = ga.entries.clone();
            entries.extend(
                gb.entries
                    .iter()
                    .map(|&(r, c, v)| (r + offset, c + offset, v)),
            );
            GeneratorMatrix {
                k: ga.k,
                dim: ga.dim + gb.dim,
                entries,
                mode: ga.mode.clone(),
            }
        })
        .collect())
}
