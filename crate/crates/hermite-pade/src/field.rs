//! Coefficient fields: exact rationals of arbitrary precision, and binary
//! floats paired with a zero tolerance.
//!
//! All series, polynomial and matrix code is generic over [`Field`]. The
//! field value itself carries whatever context the element type needs (the
//! float backend stores its tolerance there), so elements stay plain data.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// A field of coefficients with a decidable zero test.
///
/// Division by an element with `is_zero == true` is a caller error; every
/// call site checks the denominator first and reports degeneracy instead of
/// dividing.
pub trait Field: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync + 'static;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_int(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// True when `is_zero` is an exact equality test rather than a tolerance.
    fn is_exact(&self) -> bool;

    /// Best-effort magnitude, used for pivot selection and tolerance scales.
    fn magnitude(&self, a: &Self::Elem) -> f64;

    /// Render an element in the syntax accepted back by [`Field::parse`].
    fn format(&self, a: &Self::Elem) -> String;

    /// Parse an element; `None` on syntax the backend does not accept.
    fn parse(&self, s: &str) -> Option<Self::Elem>;

    /// Backend tag used in reports and emitted documents.
    fn name(&self) -> String;
}

/// Exact rational arithmetic over arbitrary-precision integers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RationalField;

impl Field for RationalField {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(1))
    }

    fn from_int(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn div(&self, a: &BigRational, b: &BigRational) -> BigRational {
        debug_assert!(!b.is_zero(), "division by zero rational");
        a / b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn is_exact(&self) -> bool {
        true
    }

    fn magnitude(&self, a: &BigRational) -> f64 {
        a.to_f64().map(f64::abs).unwrap_or(f64::INFINITY)
    }

    fn format(&self, a: &BigRational) -> String {
        a.to_string()
    }

    fn parse(&self, s: &str) -> Option<BigRational> {
        parse_ratio(s)
    }

    fn name(&self) -> String {
        "rational".to_string()
    }
}

fn parse_ratio(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let num = BigInt::from_str(num.trim()).ok()?;
        let den = BigInt::from_str(den.trim()).ok()?;
        if den.is_zero() {
            return None;
        }
        Some(BigRational::new(num, den))
    } else {
        BigInt::from_str(s).ok().map(BigRational::from_integer)
    }
}

/// `f64` arithmetic with an absolute zero tolerance `tol`.
///
/// The exact algorithms assume general position; with floats the only
/// meaningful analogue of "this constant term is zero" is `|x| <= tol`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FloatField {
    pub tol: f64,
}

impl FloatField {
    pub const DEFAULT_TOL: f64 = 1e-10;

    pub fn new(tol: f64) -> Self {
        assert!(
            tol >= 0.0 && tol.is_finite(),
            "tolerance must be finite and nonnegative"
        );
        FloatField { tol }
    }
}

impl Default for FloatField {
    fn default() -> Self {
        FloatField::new(Self::DEFAULT_TOL)
    }
}

impl Field for FloatField {
    type Elem = f64;

    fn zero(&self) -> f64 {
        0.0
    }

    fn one(&self) -> f64 {
        1.0
    }

    fn from_int(&self, n: i64) -> f64 {
        n as f64
    }

    fn add(&self, a: &f64, b: &f64) -> f64 {
        a + b
    }

    fn sub(&self, a: &f64, b: &f64) -> f64 {
        a - b
    }

    fn mul(&self, a: &f64, b: &f64) -> f64 {
        a * b
    }

    fn div(&self, a: &f64, b: &f64) -> f64 {
        debug_assert!(!self.is_zero(b), "division by a zero-classified float");
        a / b
    }

    fn neg(&self, a: &f64) -> f64 {
        -a
    }

    fn is_zero(&self, a: &f64) -> bool {
        a.abs() <= self.tol
    }

    fn is_exact(&self) -> bool {
        false
    }

    fn magnitude(&self, a: &f64) -> f64 {
        a.abs()
    }

    fn format(&self, a: &f64) -> String {
        format!("{a}")
    }

    fn parse(&self, s: &str) -> Option<f64> {
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            let num = f64::from_str(num.trim()).ok()?;
            let den = f64::from_str(den.trim()).ok()?;
            if den == 0.0 {
                return None;
            }
            Some(num / den)
        } else {
            f64::from_str(s).ok().filter(|v| v.is_finite())
        }
    }

    fn name(&self) -> String {
        format!("float(tol={})", self.tol)
    }
}
