//! Scalar profiles: exact rationals for certification, `f64` for search.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Commutative ring operations. Enough to evaluate brackets and the
/// Nijenhuis tensor, which is how polynomial systems are emitted.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
    fn from_i64(n: i64) -> Self;
}

/// A field of scalars: either the exact profile or the numeric profile.
pub trait Scalar: Ring + std::ops::Div<Output = Self> + 'static {
    /// `true` for the exact rational profile.
    const EXACT: bool;

    fn to_f64(&self) -> f64;

    /// Exact zero test for rationals, `|x| <= tol` for floats.
    fn is_negligible(&self, tol: f64) -> bool;
}

impl Ring for Rational {
    fn from_i64(n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn is_negligible(&self, _tol: f64) -> bool {
        self.is_zero()
    }
}

impl Ring for f64 {
    fn from_i64(n: i64) -> Self {
        n as f64
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn to_f64(&self) -> f64 {
        *self
    }

    fn is_negligible(&self, tol: f64) -> bool {
        self.abs() <= tol
    }
}

/// Shorthand for `p/q` as an exact rational. Panics on `q == 0`.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Parse `"p/q"` or `"p"` (no decimal point) into a rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("invalid rational literal {s:?}"));
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p = BigInt::from_str(num).map_err(|_| bad())?;
    let q = BigInt::from_str(den).map_err(|_| bad())?;
    if q.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(p, q))
}

/// Inverse of [`parse_rational`]: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}
