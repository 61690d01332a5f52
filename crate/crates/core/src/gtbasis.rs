//! Gel'fand–Tsetlin combinatorics for so_n: signatures, interlacing
//! ("betweenness") branching, pattern enumeration and l-coordinates.
//!
//! A row at level `k` has `floor(k/2)` entries. Patterns are stored top row
//! first (level `n`) down to level 2. The basis order is lexicographic
//! descending over rows top to bottom, entries left to right.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::qnum::HalfInt;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SignatureError {
    #[error("level must be at least 2, got {0}")]
    LevelTooSmall(usize),
    #[error("level {level} needs {expected} entries, got {got}")]
    LengthMismatch {
        level: usize,
        expected: usize,
        got: usize,
    },
    #[error("mixed parity: entries must be all integers or all half-integers")]
    MixedParity,
    #[error("dominance violated: {0}")]
    Dominance(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BasisError {
    #[error("pattern is not in the basis")]
    NotFound,
}

/// Number of entries of a row at level `k`.
pub fn row_len(level: usize) -> usize {
    level / 2
}

/// Check dominance and parity of a candidate row at `level`.
pub fn validate_signature(level: usize, entries: &[HalfInt]) -> Result<(), SignatureError> {
    if level < 2 {
        return Err(SignatureError::LevelTooSmall(level));
    }
    let p = row_len(level);
    if entries.len() != p {
        return Err(SignatureError::LengthMismatch {
            level,
            expected: p,
            got: entries.len(),
        });
    }
    if entries.windows(2).any(|w| !w[0].same_parity(w[1])) {
        return Err(SignatureError::MixedParity);
    }
    for i in 0..p.saturating_sub(1) {
        let (a, b) = (entries[i], entries[i + 1]);
        if level % 2 == 0 && i + 2 == p {
            if a < b.abs() {
                return Err(SignatureError::Dominance(format!(
                    "m{} ≥ |m{}| fails ({a} < |{b}|)",
                    i + 1,
                    i + 2
                )));
            }
        } else if a < b {
            return Err(SignatureError::Dominance(format!(
                "m{} ≥ m{} fails ({a} < {b})",
                i + 1,
                i + 2
            )));
        }
    }
    if level % 2 == 1 && entries[p - 1] < HalfInt::ZERO {
        return Err(SignatureError::Dominance(format!(
            "m{p} ≥ 0 fails ({} < 0)",
            entries[p - 1]
        )));
    }
    Ok(())
}

/// A dominant row at some level `k >= 2`: the highest weight of an so_k
/// irreducible, and also one row of a GT pattern.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature {
    level: usize,
    entries: Vec<HalfInt>,
}

impl Signature {
    pub fn new(level: usize, entries: Vec<HalfInt>) -> Result<Self, SignatureError> {
        validate_signature(level, &entries)?;
        Ok(Signature { level, entries })
    }

    /// Convenience constructor from twice-integer entries.
    pub fn from_twice(level: usize, twice: &[i64]) -> Result<Self, SignatureError> {
        Self::new(
            level,
            twice.iter().map(|&t| HalfInt::from_twice(t)).collect(),
        )
    }

    pub(crate) fn new_unchecked(level: usize, entries: Vec<HalfInt>) -> Self {
        Signature { level, entries }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn entries(&self) -> &[HalfInt] {
        &self.entries
    }

    pub fn is_integral(&self) -> bool {
        self.entries.first().is_none_or(|x| x.is_integer())
    }

    pub fn twice_entries(&self) -> Vec<i64> {
        self.entries.iter().map(|x| x.twice()).collect()
    }

    /// All rows at level `k - 1` interlacing with this one, lexicographically
    /// descending. Empty at level 2, where the chain ends.
    pub fn branch(&self) -> Vec<Signature> {
        if self.level < 3 {
            return Vec::new();
        }
        let child_level = self.level - 1;
        let bounds = child_bounds(self);
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(bounds.len());
        fill_branch(&bounds, &mut current, &mut |entries| {
            out.push(Signature::new_unchecked(child_level, entries.to_vec()));
        });
        out
    }
}

impl fmt::Debug for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m{}{:?}", self.level, self.entries)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// `[lo, hi]` for each entry of the row below `parent`.
fn child_bounds(parent: &Signature) -> Vec<(HalfInt, HalfInt)> {
    let m = &parent.entries;
    let p = m.len();
    if parent.level % 2 == 1 {
        // m_{i,2p+1} >= x_i >= m_{i+1,2p+1}, last: m_p >= x_p >= -m_p
        (0..p)
            .map(|i| {
                let lo = if i + 1 < p { m[i + 1] } else { -m[p - 1] };
                (lo, m[i])
            })
            .collect()
    } else {
        // m_{i,2p} >= x_i >= m_{i+1,2p}, last: m_{p-1} >= x_{p-1} >= |m_p|
        (0..p - 1)
            .map(|i| {
                let lo = if i + 2 < p { m[i + 1] } else { m[p - 1].abs() };
                (lo, m[i])
            })
            .collect()
    }
}

fn fill_branch(
    bounds: &[(HalfInt, HalfInt)],
    current: &mut Vec<HalfInt>,
    emit: &mut dyn FnMut(&[HalfInt]),
) {
    let i = current.len();
    if i == bounds.len() {
        emit(current);
        return;
    }
    let (lo, hi) = bounds[i];
    let mut x = hi;
    while x >= lo {
        current.push(x);
        fill_branch(bounds, current, emit);
        current.pop();
        x = x - 1;
    }
}

/// Whether `lower` (level `k-1`) interlaces with `upper` (level `k`).
pub fn interlaces(upper: &Signature, lower: &Signature) -> bool {
    if lower.level + 1 != upper.level || lower.entries.len() != row_len(lower.level) {
        return false;
    }
    if let Some(first) = upper.entries.first() {
        if lower.entries.iter().any(|x| !x.same_parity(*first)) {
            return false;
        }
    }
    child_bounds(upper)
        .iter()
        .zip(&lower.entries)
        .all(|(&(lo, hi), &x)| lo <= x && x <= hi)
}

/// A Gel'fand–Tsetlin scheme: rows for levels `n, n-1, ..., 2`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GtPattern {
    rows: Vec<Signature>,
}

impl GtPattern {
    /// Build from explicit rows, checking every interlacing condition.
    pub fn new(rows: Vec<Signature>) -> Option<Self> {
        let pattern = GtPattern { rows };
        pattern.is_valid().then_some(pattern)
    }

    pub fn n(&self) -> usize {
        self.rows[0].level
    }

    pub fn rows(&self) -> &[Signature] {
        &self.rows
    }

    pub fn top(&self) -> &Signature {
        &self.rows[0]
    }

    /// Row at `level`, for `2 <= level <= n`.
    pub fn row(&self, level: usize) -> &Signature {
        &self.rows[self.n() - level]
    }

    /// `row(level)` with entry `j` (0-based) shifted by `delta`. The result
    /// is not validated; look it up in a [`Basis`] to test membership.
    pub fn shifted(&self, level: usize, j: usize, delta: i64) -> GtPattern {
        let mut rows = self.rows.clone();
        let idx = self.n() - level;
        rows[idx].entries[j] = rows[idx].entries[j] + delta;
        GtPattern { rows }
    }

    pub fn is_valid(&self) -> bool {
        let Some(top) = self.rows.first() else {
            return false;
        };
        if validate_signature(top.level, &top.entries).is_err() {
            return false;
        }
        if self.rows.last().map(|r| r.level) != Some(2) {
            return false;
        }
        self.rows.windows(2).all(|w| interlaces(&w[0], &w[1]))
    }

    /// Rows as twice-integers, top first.
    pub fn twice_rows(&self) -> Vec<Vec<i64>> {
        self.rows.iter().map(|r| r.twice_entries()).collect()
    }

    /// Inverse of [`GtPattern::twice_rows`]; validates.
    pub fn from_twice_rows(rows: &[Vec<i64>]) -> Option<Self> {
        let n = rows.len() + 1;
        let rows = rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                Signature::new_unchecked(n - i, r.iter().map(|&t| HalfInt::from_twice(t)).collect())
            })
            .collect();
        Self::new(rows)
    }
}

impl fmt::Debug for GtPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.rows.iter().map(|r| &r.entries))
            .finish()
    }
}

/// All patterns with top row `sig`, in basis order.
pub fn enumerate_patterns(sig: &Signature) -> Vec<GtPattern> {
    let mut out = Vec::new();
    let mut rows = vec![sig.clone()];
    collect_patterns(&mut rows, &mut out);
    out
}

fn collect_patterns(rows: &mut Vec<Signature>, out: &mut Vec<GtPattern>) {
    let last = rows.last().expect("nonempty");
    if last.level == 2 {
        out.push(GtPattern { rows: rows.clone() });
        return;
    }
    for child in last.branch() {
        rows.push(child);
        collect_patterns(rows, out);
        rows.pop();
    }
}

/// Dimension of the irreducible with highest weight `sig`, by the branching
/// recursion `dim(m_k) = sum over branch(m_k) of dim(m_{k-1})`, `dim(m_2) = 1`.
pub fn dimension(sig: &Signature) -> u64 {
    let mut memo = HashMap::new();
    dimension_memo(sig, &mut memo)
}

fn dimension_memo(sig: &Signature, memo: &mut HashMap<Signature, u64>) -> u64 {
    if sig.level <= 2 {
        return 1;
    }
    if let Some(&d) = memo.get(sig) {
        return d;
    }
    let d = sig.branch().iter().map(|c| dimension_memo(c, memo)).sum();
    memo.insert(sig.clone(), d);
    d
}

/// The ordered pattern basis of one representation, with a reverse index.
#[derive(Debug, Clone)]
pub struct Basis {
    signature: Signature,
    patterns: Vec<GtPattern>,
    index: HashMap<GtPattern, usize>,
}

impl Basis {
    pub fn new(signature: &Signature) -> Self {
        let patterns = enumerate_patterns(signature);
        let index = patterns
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        Basis {
            signature: signature.clone(),
            patterns,
            index,
        }
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn patterns(&self) -> &[GtPattern] {
        &self.patterns
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<&GtPattern> {
        self.patterns.get(i)
    }

    pub fn pattern_index(&self, pattern: &GtPattern) -> Result<usize, BasisError> {
        self.index.get(pattern).copied().ok_or(BasisError::NotFound)
    }
}

/// Shifted coordinates of one row:
/// `l_{j,2p+1} = m_{j,2p+1} + p - j + 1`, `l_{j,2p} = m_{j,2p} + p - j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LRow {
    pub level: usize,
    pub l: Vec<HalfInt>,
}

impl LRow {
    /// The empty row used for levels below 2.
    pub fn empty(level: usize) -> Self {
        LRow {
            level,
            l: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.l.len()
    }

    pub fn is_empty(&self) -> bool {
        self.l.is_empty()
    }
}

pub fn l_coords(row: &Signature) -> LRow {
    let p = row.entries.len() as i64;
    let odd = row.level % 2 == 1;
    let l = row
        .entries
        .iter()
        .enumerate()
        .map(|(idx, &m)| {
            let j = idx as i64 + 1;
            if odd {
                m + (p - j + 1)
            } else {
                m + (p - j)
            }
        })
        .collect();
    LRow {
        level: row.level,
        l,
    }
}

/// l-coordinates of `pattern` at `level`, or an empty row below level 2.
pub fn pattern_l_row(pattern: &GtPattern, level: usize) -> LRow {
    if level < 2 {
        LRow::empty(level)
    } else {
        l_coords(pattern.row(level))
    }
}

/// Every dominant signature at `level` whose entries lie in `[-max, max]`
/// and have the given parity (`half = true` for half-integers).
pub fn signatures_up_to(level: usize, max: HalfInt, half: bool) -> Vec<Signature> {
    let p = row_len(level);
    let start = if half { 1 } else { 0 };
    let mut values = Vec::new();
    let mut t = -max.twice();
    while t <= max.twice() {
        if t.rem_euclid(2) == start {
            values.push(HalfInt::from_twice(t));
        }
        t += 1;
    }
    values.reverse();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(p);
    fn rec(
        level: usize,
        p: usize,
        values: &[HalfInt],
        current: &mut Vec<HalfInt>,
        out: &mut Vec<Signature>,
    ) {
        if current.len() == p {
            if validate_signature(level, current).is_ok() {
                out.push(Signature::new_unchecked(level, current.clone()));
            }
            return;
        }
        for &v in values {
            current.push(v);
            rec(level, p, values, current, out);
            current.pop();
        }
    }
    rec(level, p, &values, &mut current, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(level: usize, twice: &[i64]) -> Signature {
        Signature::from_twice(level, twice).unwrap()
    }

    #[test]
    fn validation_examples() {
        assert!(validate_signature(5, &[HalfInt::ONE, HalfInt::ZERO]).is_ok());
        assert!(Signature::from_twice(6, &[2, 2, -2]).is_ok());
        let err = Signature::from_twice(5, &[0, 2]).unwrap_err();
        assert_eq!(
            err,
            SignatureError::Dominance("m1 ≥ m2 fails (0 < 1)".into())
        );
        assert_eq!(
            Signature::from_twice(4, &[2, 1]).unwrap_err(),
            SignatureError::MixedParity
        );
        assert!(matches!(
            Signature::from_twice(5, &[2]),
            Err(SignatureError::LengthMismatch {
                level: 5,
                expected: 2,
                got: 1
            })
        ));
        assert_eq!(
            Signature::from_twice(1, &[]).unwrap_err(),
            SignatureError::LevelTooSmall(1)
        );
        assert!(matches!(
            Signature::from_twice(3, &[-2]),
            Err(SignatureError::Dominance(_))
        ));
        assert!(matches!(
            Signature::from_twice(4, &[2, 4]),
            Err(SignatureError::Dominance(_))
        ));
        assert!(matches!(
            Signature::from_twice(4, &[2, -4]),
            Err(SignatureError::Dominance(_))
        ));
        // level 2 is unconstrained
        assert!(Signature::from_twice(2, &[-6]).is_ok());
    }

    #[test]
    fn branch_examples() {
        let b: Vec<_> = sig(3, &[2])
            .branch()
            .iter()
            .map(|s| s.twice_entries())
            .collect();
        assert_eq!(b, vec![vec![2], vec![0], vec![-2]]);
        let b: Vec<_> = sig(4, &[2, 0])
            .branch()
            .iter()
            .map(|s| s.twice_entries())
            .collect();
        assert_eq!(b, vec![vec![2], vec![0]]);
        let b: Vec<_> = sig(3, &[0])
            .branch()
            .iter()
            .map(|s| s.twice_entries())
            .collect();
        assert_eq!(b, vec![vec![0]]);
        assert!(sig(2, &[2]).branch().is_empty());
        // half-integral parent keeps its parity
        let b: Vec<_> = sig(3, &[3])
            .branch()
            .iter()
            .map(|s| s.twice_entries())
            .collect();
        assert_eq!(b, vec![vec![3], vec![1], vec![-1], vec![-3]]);
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_patterns(&sig(3, &[2])).len(), 3);
        let pinched = enumerate_patterns(&sig(5, &[0, 0]));
        assert_eq!(pinched.len(), 1);
        assert!(pinched[0]
            .rows()
            .iter()
            .all(|r| r.entries().iter().all(|x| x.is_zero())));
        assert_eq!(enumerate_patterns(&sig(5, &[1, 1])).len(), 4);
    }

    #[test]
    fn dimension_examples() {
        for twice_j in 0..=10 {
            assert_eq!(dimension(&sig(3, &[twice_j])), twice_j as u64 + 1);
        }
        assert_eq!(dimension(&sig(5, &[2, 0])), 5);
        assert_eq!(dimension(&sig(4, &[1, 1])), 2);
        assert_eq!(dimension(&sig(4, &[1, -1])), 2);
        // so_5 adjoint and so_6 vector
        assert_eq!(dimension(&sig(5, &[2, 2])), 10);
        assert_eq!(dimension(&sig(6, &[2, 0, 0])), 6);
    }

    #[test]
    fn l_coordinate_examples() {
        assert_eq!(
            l_coords(&sig(5, &[2, 0])).l,
            vec![HalfInt::from_int(3), HalfInt::from_int(1)]
        );
        assert_eq!(
            l_coords(&sig(4, &[2, 0])).l,
            vec![HalfInt::from_int(2), HalfInt::from_int(0)]
        );
        assert_eq!(l_coords(&sig(2, &[-3])).l, vec![HalfInt::from_twice(-3)]);
    }

    #[test]
    fn pattern_index_roundtrip_and_missing() {
        let basis = Basis::new(&sig(5, &[2, 0]));
        for (i, p) in basis.patterns().iter().enumerate() {
            assert_eq!(basis.pattern_index(p), Ok(i));
        }
        let first = basis.get(0).unwrap();
        assert_eq!(basis.pattern_index(first), Ok(0));
        // raise m_{1,3} above m_{1,4}: violates the level 4 -> 3 interlacing
        let bad = first.shifted(3, 0, 1);
        assert!(!bad.is_valid());
        assert_eq!(basis.pattern_index(&bad), Err(BasisError::NotFound));
    }

    #[test]
    fn twice_rows_roundtrip() {
        let basis = Basis::new(&sig(6, &[3, 1, -1]));
        for p in basis.patterns() {
            assert_eq!(
                GtPattern::from_twice_rows(&p.twice_rows()).as_ref(),
                Some(p)
            );
        }
    }

    #[test]
    fn signature_grid() {
        let ints = signatures_up_to(3, HalfInt::from_int(2), false);
        assert_eq!(ints.len(), 3);
        let halves = signatures_up_to(4, HalfInt::from_int(2), true);
        // (1/2,+-1/2), (3/2,+-1/2), (3/2,+-3/2)
        assert_eq!(halves.len(), 6);
    }
}
