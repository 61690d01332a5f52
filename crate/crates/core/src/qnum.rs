//! q-numbers `[x] = (q^x - q^-x) / (q - q^-1)` and balanced brackets
//! `{x} = q^x + q^-x`, evaluated in one of three modes:
//!
//! - [`QMode::FloatComplex`]: complex floating point at a given `q`,
//! - [`QMode::ExactRational`]: exact big rationals at a rational `s = q^(1/2)`,
//! - [`QMode::Classical`]: the undeformed point `q = 1`, where `[x] = x`.
//!
//! Arguments are [`HalfInt`]s so integral and half-integral weights stay exact.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Largest root-of-unity order checked by [`QMode::root_of_unity_order`].
pub const ROOT_OF_UNITY_MAX_ORDER: u32 = 64;
/// Distance `|q^N - 1|` below which `q` is reported as a root of unity.
pub const ROOT_OF_UNITY_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QError {
    #[error("deformation parameter q must be nonzero")]
    ZeroQ,
    #[error("deformation parameter q must be finite")]
    NonFiniteQ,
    #[error("s = q^(1/2) must not be 0 or +-1 (got {0})")]
    DegenerateS(String),
    #[error("division by exact zero")]
    DivisionByZero,
    #[error("vanishing denominator bracket [{arg}] not cancelled by the numerator ({numerator_zeros} zero factor(s) over {denominator_zeros})")]
    SingularRatio {
        arg: HalfInt,
        numerator_zeros: usize,
        denominator_zeros: usize,
    },
}

/// An integer or half-integer, stored as twice its value.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HalfInt {
    twice: i64,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { twice: 0 };
    pub const ONE: HalfInt = HalfInt { twice: 2 };
    pub const HALF: HalfInt = HalfInt { twice: 1 };

    pub const fn from_twice(twice: i64) -> Self {
        HalfInt { twice }
    }

    pub const fn from_int(x: i64) -> Self {
        HalfInt { twice: 2 * x }
    }

    pub const fn twice(self) -> i64 {
        self.twice
    }

    pub const fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    pub const fn is_zero(self) -> bool {
        self.twice == 0
    }

    pub fn abs(self) -> Self {
        HalfInt {
            twice: self.twice.abs(),
        }
    }

    /// `2x`, always an integer.
    pub fn double(self) -> Self {
        HalfInt {
            twice: 2 * self.twice,
        }
    }

    /// `x / 2` when the result is still a half-integer.
    pub fn checked_half(self) -> Option<Self> {
        (self.twice % 2 == 0).then_some(HalfInt {
            twice: self.twice / 2,
        })
    }

    pub fn same_parity(self, other: HalfInt) -> bool {
        (self.twice - other.twice) % 2 == 0
    }

    pub fn to_f64(self) -> f64 {
        self.twice as f64 / 2.0
    }

    pub fn to_rational(self) -> BigRational {
        BigRational::new(BigInt::from(self.twice), BigInt::from(2))
    }
}

impl fmt::Debug for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

impl From<i64> for HalfInt {
    fn from(x: i64) -> Self {
        HalfInt::from_int(x)
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt {
            twice: self.twice + rhs.twice,
        }
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt {
            twice: self.twice - rhs.twice,
        }
    }
}

impl Add<i64> for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: i64) -> HalfInt {
        HalfInt {
            twice: self.twice + 2 * rhs,
        }
    }
}

impl Sub<i64> for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: i64) -> HalfInt {
        HalfInt {
            twice: self.twice - 2 * rhs,
        }
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt { twice: -self.twice }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("not an integer or half-integer: {0:?}")]
pub struct ParseHalfIntError(pub String);

/// Accepts `3`, `-2`, `3/2`, `-1/2`, `1.5`, `.5`, `-0.5`.
impl FromStr for HalfInt {
    type Err = ParseHalfIntError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseHalfIntError(s.to_string());
        let t = s.trim();
        if let Some((num, den)) = t.split_once('/') {
            let num: i64 = num.trim().parse().map_err(|_| err())?;
            let den: i64 = den.trim().parse().map_err(|_| err())?;
            return match den {
                1 => Ok(HalfInt::from_int(num)),
                -1 => Ok(HalfInt::from_int(-num)),
                2 => Ok(HalfInt::from_twice(num)),
                -2 => Ok(HalfInt::from_twice(-num)),
                _ => Err(err()),
            };
        }
        if let Some((int_part, frac)) = t.split_once('.') {
            let negative = int_part.trim_start().starts_with('-');
            let int_digits = int_part.trim_start_matches(['-', '+']);
            let whole: i64 = if int_digits.is_empty() {
                0
            } else {
                int_digits.parse().map_err(|_| err())?
            };
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(err());
            }
            let frac = frac.trim_end_matches('0');
            let half = match frac {
                "" => 0,
                "5" => 1,
                _ => return Err(err()),
            };
            let twice = 2 * whole + half;
            return Ok(HalfInt::from_twice(if negative { -twice } else { twice }));
        }
        t.parse::<i64>().map(HalfInt::from_int).map_err(|_| err())
    }
}

/// A scalar produced by some [`QMode`]: complex floating point, or an exact
/// rational (exact and classical modes).
#[derive(Debug, Clone, PartialEq)]
pub enum QScalar {
    Float(Complex64),
    Exact(BigRational),
}

impl QScalar {
    pub fn is_zero(&self) -> bool {
        match self {
            QScalar::Float(z) => z.is_zero(),
            QScalar::Exact(r) => r.is_zero(),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, QScalar::Exact(_))
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            QScalar::Exact(r) => Some(r),
            QScalar::Float(_) => None,
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        match self {
            QScalar::Float(z) => *z,
            QScalar::Exact(r) => Complex64::new(r.to_f64().unwrap_or(f64::NAN), 0.0),
        }
    }

    pub fn checked_div(&self, rhs: &QScalar) -> Result<QScalar, QError> {
        if rhs.is_zero() {
            return Err(QError::DivisionByZero);
        }
        Ok(match (self, rhs) {
            (QScalar::Float(a), QScalar::Float(b)) => QScalar::Float(a / b),
            (QScalar::Exact(a), QScalar::Exact(b)) => QScalar::Exact(a / b),
            _ => mixed(),
        })
    }

    pub fn recip(&self) -> Result<QScalar, QError> {
        match self {
            QScalar::Float(_) => QScalar::Float(Complex64::new(1.0, 0.0)).checked_div(self),
            QScalar::Exact(_) => QScalar::Exact(BigRational::one()).checked_div(self),
        }
    }
}

#[cold]
fn mixed() -> ! {
    panic!("arithmetic between scalars of different evaluation modes")
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl<'a> $trait<&'a QScalar> for &'a QScalar {
            type Output = QScalar;
            fn $method(self, rhs: &'a QScalar) -> QScalar {
                match (self, rhs) {
                    (QScalar::Float(a), QScalar::Float(b)) => QScalar::Float(a $op b),
                    (QScalar::Exact(a), QScalar::Exact(b)) => QScalar::Exact(a $op b),
                    _ => mixed(),
                }
            }
        }

        impl $trait for QScalar {
            type Output = QScalar;
            fn $method(self, rhs: QScalar) -> QScalar {
                (&self).$method(&rhs)
            }
        }
    };
}

scalar_binop!(Add, add, +);
scalar_binop!(Sub, sub, -);
scalar_binop!(Mul, mul, *);

impl Neg for QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        match self {
            QScalar::Float(z) => QScalar::Float(-z),
            QScalar::Exact(r) => QScalar::Exact(-r),
        }
    }
}

/// Evaluation context for q-brackets.
///
/// Build through [`QMode::float`], [`QMode::real`], [`QMode::polar`],
/// [`QMode::exact`] or [`QMode::classical`]; these reject `q = 0` and
/// `s = 0, +-1`, which the bracket formulas cannot evaluate.
#[derive(Debug, Clone, PartialEq)]
pub enum QMode {
    /// Floating point at complex `q`. Half-integer powers use the principal
    /// branch `q^(1/2) = exp(log(q) / 2)`.
    FloatComplex(Complex64),
    /// Exact arithmetic at rational `s = q^(1/2)`.
    ExactRational(BigRational),
    /// `q = 1`.
    Classical,
}

impl QMode {
    pub fn float(q: Complex64) -> Result<Self, QError> {
        if !q.re.is_finite() || !q.im.is_finite() {
            return Err(QError::NonFiniteQ);
        }
        if q.is_zero() {
            return Err(QError::ZeroQ);
        }
        Ok(QMode::FloatComplex(q))
    }

    pub fn real(q: f64) -> Result<Self, QError> {
        Self::float(Complex64::new(q, 0.0))
    }

    /// `q = exp(i h)`.
    pub fn polar(h: f64) -> Result<Self, QError> {
        Self::float(Complex64::from_polar(1.0, h))
    }

    pub fn exact(s: BigRational) -> Result<Self, QError> {
        if s.is_zero() || s.abs().is_one() {
            return Err(QError::DegenerateS(s.to_string()));
        }
        Ok(QMode::ExactRational(s))
    }

    pub fn classical() -> Self {
        QMode::Classical
    }

    pub fn is_float(&self) -> bool {
        matches!(self, QMode::FloatComplex(_))
    }

    /// Smallest `1 <= N <= 64` with `|q^N - 1| < 1e-12`, if any. Only float
    /// mode can sit on a root of unity; exact `s` is rejected at `+-1` and
    /// no other rational is a root of unity.
    pub fn root_of_unity_order(&self) -> Option<u32> {
        let QMode::FloatComplex(q) = self else {
            return None;
        };
        let mut power = Complex64::new(1.0, 0.0);
        for n in 1..=ROOT_OF_UNITY_MAX_ORDER {
            power *= q;
            if (power - 1.0).norm() < ROOT_OF_UNITY_TOLERANCE {
                return Some(n);
            }
        }
        None
    }

    /// Whether the *-structure is expected to hold: `q` real positive or on
    /// the unit circle (within float tolerance). Classical mode counts.
    pub fn admits_star(&self) -> bool {
        match self {
            QMode::FloatComplex(q) => {
                (q.im.abs() <= 1e-14 * q.norm() && q.re > 0.0) || (q.norm() - 1.0).abs() <= 1e-14
            }
            QMode::ExactRational(_) => false,
            QMode::Classical => true,
        }
    }

    pub fn zero(&self) -> QScalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> QScalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> QScalar {
        match self {
            QMode::FloatComplex(_) => QScalar::Float(Complex64::new(v as f64, 0.0)),
            QMode::ExactRational(_) | QMode::Classical => {
                QScalar::Exact(BigRational::from_integer(BigInt::from(v)))
            }
        }
    }

    /// `[x]`.
    pub fn q_number(&self, x: HalfInt) -> QScalar {
        if x.is_zero() {
            return self.zero();
        }
        match self {
            QMode::FloatComplex(q) => {
                // sinh form is well conditioned near q = 1
                let h = q.ln();
                let denom = h.sinh();
                if denom.is_zero() {
                    QScalar::Float(Complex64::new(x.to_f64(), 0.0))
                } else {
                    QScalar::Float((h * x.to_f64()).sinh() / denom)
                }
            }
            QMode::ExactRational(s) => {
                let t = i32::try_from(x.twice()).expect("q-number argument out of range");
                let num = s.pow(t) - s.pow(-t);
                let den = s.pow(2) - s.pow(-2);
                QScalar::Exact(num / den)
            }
            QMode::Classical => QScalar::Exact(x.to_rational()),
        }
    }

    /// `{x} = q^x + q^-x`.
    pub fn balanced(&self, x: HalfInt) -> QScalar {
        match self {
            QMode::FloatComplex(q) => {
                let h = q.ln();
                QScalar::Float((h * x.to_f64()).cosh() * 2.0)
            }
            QMode::ExactRational(s) => {
                let t = i32::try_from(x.twice()).expect("bracket argument out of range");
                QScalar::Exact(s.pow(t) + s.pow(-t))
            }
            QMode::Classical => self.from_i64(2),
        }
    }

    /// `[2]_q = q + q^-1`.
    pub fn q_two(&self) -> QScalar {
        self.q_number(HalfInt::from_int(2))
    }
}

impl fmt::Display for QMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QMode::FloatComplex(q) if q.im == 0.0 => write!(f, "q={}", q.re),
            QMode::FloatComplex(q) => write!(f, "q={}{:+}i", q.re, q.im),
            QMode::ExactRational(s) => write!(f, "s={s} (exact)"),
            QMode::Classical => write!(f, "q=1 (classical)"),
        }
    }
}

/// `[x]` in `mode`.
pub fn q_number(x: HalfInt, mode: &QMode) -> QScalar {
    mode.q_number(x)
}

/// `{x} = q^x + q^-x` in `mode`.
pub fn balanced_bracket(x: HalfInt, mode: &QMode) -> QScalar {
    mode.balanced(x)
}

/// `[2]_q`.
pub fn q_two(mode: &QMode) -> QScalar {
    mode.q_two()
}

/// A ratio of products of q-numbers, `prod [a_i] / prod [b_j]`.
///
/// Whether a factor vanishes is decided on its argument (`[x] = 0` iff
/// `x = 0` away from roots of unity), so zero handling is mode independent.
/// When the numerator has strictly more vanishing factors than the
/// denominator the ratio is the generic limit `0`; any other vanishing
/// denominator is an error.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BracketRatio {
    numer: Vec<HalfInt>,
    denom: Vec<HalfInt>,
}

impl BracketRatio {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn num(&mut self, x: HalfInt) -> &mut Self {
        self.numer.push(x);
        self
    }

    pub fn den(&mut self, x: HalfInt) -> &mut Self {
        self.denom.push(x);
        self
    }

    pub fn numerator_args(&self) -> &[HalfInt] {
        &self.numer
    }

    pub fn denominator_args(&self) -> &[HalfInt] {
        &self.denom
    }

    /// Number of vanishing factors in (numerator, denominator).
    pub fn zero_orders(&self) -> (usize, usize) {
        let count = |v: &[HalfInt]| v.iter().filter(|x| x.is_zero()).count();
        (count(&self.numer), count(&self.denom))
    }

    pub fn numerator_vanishes(&self) -> bool {
        self.numer.iter().any(|x| x.is_zero())
    }

    pub fn evaluate(&self, mode: &QMode) -> Result<QScalar, QError> {
        let (zn, zd) = self.zero_orders();
        if zd > 0 {
            if zn > zd {
                return Ok(mode.zero());
            }
            let arg = *self
                .denom
                .iter()
                .find(|x| x.is_zero())
                .expect("counted zero");
            return Err(QError::SingularRatio {
                arg,
                numerator_zeros: zn,
                denominator_zeros: zd,
            });
        }
        if zn > 0 {
            return Ok(mode.zero());
        }
        let num = self
            .numer
            .iter()
            .fold(mode.one(), |acc, &x| &acc * &mode.q_number(x));
        let den = self
            .denom
            .iter()
            .fold(mode.one(), |acc, &x| &acc * &mode.q_number(x));
        num.checked_div(&den)
    }
}
