//! Coefficient fields.

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{FromPrimitive, Num, Zero};
use std::fmt::{Debug, Display};
use std::ops::Neg;

/// A field usable as coefficients of complexes and algebras.
///
/// Exact fields report `is_negligible` only for zero; floating types use a
/// tolerance so that Gaussian elimination stays usable.
pub trait Scalar:
    Num + Clone + PartialEq + Debug + Display + Neg<Output = Self> + FromPrimitive + Send + Sync + 'static
{
    fn is_negligible(&self) -> bool;

    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("integer embeds in every field")
    }

    /// Parses `a`, `-a`, `a/b`, or a decimal for floating types.
    fn parse(text: &str) -> Option<Self> {
        Self::from_str_radix(text.trim(), 10).ok()
    }

    fn sign_pow(k: i64) -> Self {
        if k.rem_euclid(2) == 0 {
            Self::one()
        } else {
            -Self::one()
        }
    }

    /// Size used to pick pivots; larger is preferred for floats only.
    fn magnitude(&self) -> f64;

    fn is_exact() -> bool;
}

impl Scalar for f64 {
    fn is_negligible(&self) -> bool {
        self.abs() < 1e-9
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
    fn is_exact() -> bool {
        false
    }
}

impl Scalar for f32 {
    fn is_negligible(&self) -> bool {
        self.abs() < 1e-4
    }
    fn magnitude(&self) -> f64 {
        self.abs() as f64
    }
    fn is_exact() -> bool {
        false
    }
}

fn parse_ratio<R: Num>(text: &str) -> Option<R> {
    let t = text.trim();
    if t.contains('/') {
        R::from_str_radix(t, 10).ok()
    } else {
        R::from_str_radix(&format!("{t}/1"), 10).ok()
    }
}

impl Scalar for Ratio<i64> {
    fn is_negligible(&self) -> bool {
        self.is_zero()
    }
    fn parse(text: &str) -> Option<Self> {
        parse_ratio(text)
    }
    fn magnitude(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            1.0
        }
    }
    fn is_exact() -> bool {
        true
    }
}

impl Scalar for BigRational {
    fn is_negligible(&self) -> bool {
        self.is_zero()
    }
    fn parse(text: &str) -> Option<Self> {
        parse_ratio(text)
    }
    fn magnitude(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            1.0
        }
    }
    fn is_exact() -> bool {
        true
    }
    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
}

/// Renders a scalar canonically: integers bare, fractions as `a/b`.
pub fn render<S: Scalar>(x: &S) -> String {
    let s = format!("{}", x);
    if s == "-0" {
        "0".to_string()
    } else {
        s
    }
}

#[cfg(test)]
mod parse_tests {
    use super::*;

    #[test]
    fn integers_and_fractions() {
        assert_eq!(BigRational::parse("7"), Some(BigRational::from_int(7)));
        assert_eq!(BigRational::parse("-3/6"), Some(BigRational::from_int(-1) / BigRational::from_int(2)));
        assert_eq!(Ratio::<i64>::parse("4"), Some(Ratio::from_integer(4)));
        assert_eq!(BigRational::parse("x"), None);
    }
}
