use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Shorthand for the rational `num / den`.
///
/// Panics when `den` is zero.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Number type shared by every algorithm in the crate.
///
/// Implemented for [`Rational`] (exact, closed under the field operations)
/// and `f64`. A computation is monomorphized over one implementation, so
/// exact and float values never mix.
pub trait Scalar: Clone + Debug + Display + PartialEq + PartialOrd + Num + Signed + Send + Sync + 'static {
    /// Whether arithmetic is roundoff-free.
    const EXACT: bool;

    fn from_rational(r: &Rational) -> Self;

    fn from_i64(v: i64) -> Self;

    /// Nearest `f64`; lossy for rationals.
    fn to_f64(&self) -> f64;

    /// Fails on NaN or infinities. Always succeeds for rationals.
    fn check_finite(&self) -> Result<()>;

    /// Square root when it exists in this number system: rationals only
    /// return perfect squares, floats any nonnegative value.
    fn checked_sqrt(&self) -> Option<Self>;

    /// Zero test. Exact values must be exactly zero; floats may be up to
    /// `rel_tol * scale` in magnitude.
    fn is_negligible(&self, scale: f64, rel_tol: f64) -> bool;

    /// Determinant of a square matrix using the algorithm suited to the
    /// number system. Callers go through [`super::determinant`].
    #[doc(hidden)]
    fn square_determinant(m: &super::Matrix<Self>) -> Self;
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn check_finite(&self) -> Result<()> {
        Ok(())
    }

    fn checked_sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        // Ratio keeps the fraction reduced, so numerator and denominator
        // must be perfect squares individually.
        let n = self.numer().sqrt();
        let d = self.denom().sqrt();
        if &(&n * &n) == self.numer() && &(&d * &d) == self.denom() {
            Some(Rational::new(n, d))
        } else {
            None
        }
    }

    fn is_negligible(&self, _scale: f64, _rel_tol: f64) -> bool {
        self.is_zero()
    }

    fn square_determinant(m: &super::Matrix<Self>) -> Self {
        super::linalg::bareiss_determinant(m)
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_rational(r: &Rational) -> Self {
        Scalar::to_f64(r)
    }

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn check_finite(&self) -> Result<()> {
        if self.is_finite() {
            Ok(())
        } else {
            Err(Error::NonFinite(self.to_string()))
        }
    }

    fn checked_sqrt(&self) -> Option<Self> {
        if *self >= 0.0 {
            Some(self.sqrt())
        } else {
            None
        }
    }

    fn is_negligible(&self, scale: f64, rel_tol: f64) -> bool {
        self.abs() <= rel_tol * scale
    }

    fn square_determinant(m: &super::Matrix<Self>) -> Self {
        super::linalg::lu_determinant(m)
    }
}

/// Parses `-1`, `1/3`, `0.5`, `-2.25` or `1e-3` into an exact rational.
///
/// Decimal notation is read exactly: `0.1` is 1/10, not the nearest float.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::InvalidInput(format!("cannot parse {text:?} as a rational"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n = parse_rational(n)?;
        let d = parse_rational(d)?;
        if d.is_zero() {
            return Err(Error::InvalidInput(format!("zero denominator in {text:?}")));
        }
        return Ok(n / d);
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => {
            let e: i32 = s[i + 1..].parse().map_err(|_| bad())?;
            (&s[..i], e)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let combined = format!("{int_part}{frac_part}");
    let numer = BigInt::from_str(if combined.is_empty() { "0" } else { &combined }).map_err(|_| bad())?;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut value = Rational::from_integer(numer);
    if scale >= 0 {
        value *= Rational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        value /= Rational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Ok(if negative { -value } else { value })
}

/// `n!` as a scalar.
pub(crate) fn factorial<T: Scalar>(n: usize) -> T {
    (1..=n).fold(T::one(), |acc, k| acc * T::from_i64(k as i64))
}

/// `base^exp` for small nonnegative exponents.
pub(crate) fn powi<T: Scalar>(base: &T, exp: usize) -> T {
    (0..exp).fold(T::one(), |acc, _| acc * base.clone())
}

/// `(-1)^exp`.
pub(crate) fn sign_power<T: Scalar>(exp: usize) -> T {
    if exp.is_multiple_of(2) {
        T::one()
    } else {
        -T::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_common_forms() {
        assert_eq!(parse_rational("-1").unwrap(), rat(-1, 1));
        assert_eq!(parse_rational("1/3").unwrap(), rat(1, 3));
        assert_eq!(parse_rational("0.5").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-2.25").unwrap(), rat(-9, 4));
        assert_eq!(parse_rational("1e-3").unwrap(), rat(1, 1000));
        assert_eq!(parse_rational("2.5e2").unwrap(), rat(250, 1));
        assert_eq!(parse_rational(" -6/4 ").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational(".5").unwrap(), rat(1, 2));
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "abc", "1/0", "1.2.3", "--1", "-", "nan", "1/"] {
            assert!(parse_rational(s).is_err(), "{s}");
        }
    }

    #[test]
    fn canonical_representation() {
        let r = rat(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
    }

    #[test]
    fn exact_sqrt_requires_perfect_square() {
        assert_eq!(rat(9, 4).checked_sqrt(), Some(rat(3, 2)));
        assert_eq!(rat(0, 1).checked_sqrt(), Some(rat(0, 1)));
        assert_eq!(rat(2, 1).checked_sqrt(), None);
        assert_eq!(rat(-4, 1).checked_sqrt(), None);
        assert_eq!(4.0f64.checked_sqrt(), Some(2.0));
        assert_eq!((-1.0f64).checked_sqrt(), None);
    }

    #[test]
    fn float_rejects_non_finite() {
        assert!(f64::NAN.check_finite().is_err());
        assert!(f64::INFINITY.check_finite().is_err());
        assert!(1.0f64.check_finite().is_ok());
    }
}
