//! The commutative-ring interface the probability formulas are written
//! against. Evaluating a formula over `f64` gives a number, over
//! `BigRational` an exact number, and over [`Poly`](crate::poly::Poly) the
//! symbolic polynomial in `p`.

use std::ops::Sub;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub trait Ring: Clone + Zero + One + Sub<Output = Self> {
    fn from_int(v: i64) -> Self;

    fn pow(&self, exp: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = acc * self.clone();
        }
        acc
    }

    /// `1 - self`.
    fn complement(&self) -> Self {
        Self::one() - self.clone()
    }
}

impl Ring for f64 {
    fn from_int(v: i64) -> Self {
        v as f64
    }

    fn pow(&self, exp: usize) -> Self {
        self.powi(exp as i32)
    }
}

impl Ring for BigRational {
    fn from_int(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
}

/// Parses `"3"`, `"-1/4"` or a decimal such as `"0.125"` into an exact
/// rational. Decimals are read as exact base-10 fractions.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    if let Some((num, den)) = text.split_once('/') {
        let num: BigInt = num.trim().parse().ok()?;
        let den: BigInt = den.trim().parse().ok()?;
        if den.is_zero() {
            return None;
        }
        return Some(BigRational::new(num, den));
    }
    let (negative, digits) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text.strip_prefix('+').unwrap_or(text)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all: BigInt = format!("{int_part}{frac_part}0").parse().ok()?;
    let den = num_traits::pow(BigInt::from(10), frac_part.len() + 1);
    let value = BigRational::new(all, den);
    Some(if negative { -value } else { value })
}

pub fn rational_to_f64(value: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    value.to_f64().unwrap_or(f64::NAN)
}
