//! Exact polynomials with rational coefficients.
//!
//! [`Poly`] is univariate in the link outage probability `p`; [`Poly2`] is
//! bivariate in `p` and the block correlation coefficient `rho`. Both keep a
//! canonical form with trailing zeros stripped, so structural equality is
//! polynomial equality.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::ring::{parse_rational, rational_to_f64, Ring};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

impl Poly {
    fn normalize(mut self) -> Self {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        self
    }

    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        Poly { coeffs }.normalize()
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigRational::from_int(c)).collect())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The indeterminate `p`.
    pub fn p() -> Self {
        Self::from_ints(&[0, 1])
    }

    /// `1 - p`.
    pub fn one_minus_p() -> Self {
        Self::from_ints(&[1, -1])
    }

    /// `c * p^deg`.
    pub fn monomial(c: BigRational, deg: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); deg + 1];
        coeffs[deg] = c;
        Self::from_coeffs(coeffs)
    }

    /// `p^k (1-p)^(n-k)`, the probability of one specific state with `k`
    /// of `n` links in outage.
    pub fn state_weight(k: usize, n: usize) -> Self {
        Ring::pow(&Self::p(), k) * Ring::pow(&Self::one_minus_p(), n - k)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Index and value of the lowest-order nonzero coefficient.
    pub fn lowest_term(&self) -> Option<(usize, &BigRational)> {
        self.coeffs.iter().enumerate().find(|(_, c)| !c.is_zero())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// The composition `P(1 - p)`.
    pub fn compose_one_minus(&self) -> Self {
        let base = Self::one_minus_p();
        self.coeffs.iter().rev().fold(Poly::zero(), |acc, c| {
            acc * base.clone() + Poly::constant(c.clone())
        })
    }

    pub fn eval_exact(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + rational_to_f64(c))
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Machine form: `["0", "1", "1", "-1"]` for `p + p^2 - p^3`.
    pub fn to_coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(ToString::to_string).collect()
    }

    pub fn from_coeff_strings<S: AsRef<str>>(coeffs: &[S]) -> Option<Self> {
        coeffs
            .iter()
            .map(|s| parse_rational(s.as_ref()))
            .collect::<Option<Vec<_>>>()
            .map(Self::from_coeffs)
    }
}

/// Writes `coeff * factors` as one signed term of an ascending sum.
fn write_term(
    f: &mut fmt::Formatter<'_>,
    first: bool,
    coeff: &BigRational,
    factors: &str,
) -> fmt::Result {
    let negative = coeff.is_negative();
    match (first, negative) {
        (true, true) => f.write_str("-")?,
        (true, false) => {}
        (false, true) => f.write_str(" - ")?,
        (false, false) => f.write_str(" + ")?,
    }
    let magnitude = coeff.abs();
    if factors.is_empty() {
        return write!(f, "{magnitude}");
    }
    if !magnitude.is_one() {
        if magnitude.is_integer() {
            write!(f, "{magnitude}")?;
        } else {
            write!(f, "({magnitude})")?;
        }
    }
    f.write_str(factors)
}

fn power(var: &str, k: usize) -> String {
    match k {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{k}"),
    }
}

/// Renders a [`Poly`] in a variable other than `p`.
pub struct InVar<'a> {
    poly: &'a Poly,
    var: &'a str,
}

impl Poly {
    /// `A.in_var("x")` displays as `x + 3x^2 + x^3`.
    pub fn in_var<'a>(&'a self, var: &'a str) -> InVar<'a> {
        InVar { poly: self, var }
    }
}

impl fmt::Display for InVar<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.poly.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            write_term(f, first, c, &power(self.var, i))?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Canonical text form: ascending powers, explicit signs, `p^k` notation,
/// e.g. `2 - 4p + 2p^2`. Non-integer coefficients are parenthesized.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.in_var("p").fmt(f)
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Poly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::from_coeffs(out)
    }
}

impl Neg for Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        Poly::from_coeffs(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned_ops {
    ($ty:ty) => {
        impl Add for $ty {
            type Output = $ty;
            fn add(self, rhs: $ty) -> $ty {
                &self + &rhs
            }
        }
        impl Sub for $ty {
            type Output = $ty;
            fn sub(self, rhs: $ty) -> $ty {
                &self - &rhs
            }
        }
        impl Mul for $ty {
            type Output = $ty;
            fn mul(self, rhs: $ty) -> $ty {
                &self * &rhs
            }
        }
    };
}

forward_owned_ops!(Poly);
forward_owned_ops!(Poly2);

impl Zero for Poly {
    fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for Poly {
    fn one() -> Self {
        Poly::from_ints(&[1])
    }
}

impl Ring for Poly {
    fn from_int(v: i64) -> Self {
        Poly::from_ints(&[v])
    }
}

/// Polynomial in `p` and `rho`, stored as a polynomial in `rho` whose
/// coefficients are polynomials in `p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly2 {
    by_rho: Vec<Poly>,
}

impl Poly2 {
    fn normalize(mut self) -> Self {
        while self.by_rho.last().is_some_and(Zero::is_zero) {
            self.by_rho.pop();
        }
        self
    }

    pub fn from_rho_coeffs(by_rho: Vec<Poly>) -> Self {
        Poly2 { by_rho }.normalize()
    }

    pub fn p() -> Self {
        Self::from(Poly::p())
    }

    pub fn rho() -> Self {
        Self::from_rho_coeffs(vec![Poly::zero(), Poly::one()])
    }

    /// Coefficient polynomial in `p` of `rho^j`.
    pub fn rho_coeff(&self, j: usize) -> Poly {
        self.by_rho.get(j).cloned().unwrap_or_default()
    }

    /// Coefficient of `p^i rho^j`.
    pub fn coeff(&self, i: usize, j: usize) -> BigRational {
        self.by_rho.get(j).map(|c| c.coeff(i)).unwrap_or_else(BigRational::zero)
    }

    /// Substitutes a value for `rho`, leaving a polynomial in `p`.
    pub fn at_rho(&self, rho: &BigRational) -> Poly {
        self.by_rho
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, c| acc.scale(rho) + c.clone())
    }

    pub fn eval_exact(&self, p: &BigRational, rho: &BigRational) -> BigRational {
        self.by_rho
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * rho + c.eval_exact(p))
    }

    pub fn eval_f64(&self, p: f64, rho: f64) -> f64 {
        self.by_rho
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * rho + c.eval_f64(p))
    }
}

impl From<Poly> for Poly2 {
    fn from(p: Poly) -> Self {
        Self::from_rho_coeffs(vec![p])
    }
}

/// Terms ordered by `p` power, then `rho` power: `2p^2 - p^2*rho + ...`.
impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let max_p = self.by_rho.iter().filter_map(Poly::degree).max();
        let mut first = true;
        for i in 0..=max_p.unwrap_or(0) {
            for j in 0..self.by_rho.len() {
                let c = self.coeff(i, j);
                if c.is_zero() {
                    continue;
                }
                let factors = match (power("p", i), power("rho", j)) {
                    (a, b) if a.is_empty() => b,
                    (a, b) if b.is_empty() => a,
                    (a, b) => format!("{a}*{b}"),
                };
                write_term(f, first, &c, &factors)?;
                first = false;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl Add<&Poly2> for &Poly2 {
    type Output = Poly2;

    fn add(self, rhs: &Poly2) -> Poly2 {
        let len = self.by_rho.len().max(rhs.by_rho.len());
        Poly2::from_rho_coeffs((0..len).map(|j| &self.rho_coeff(j) + &rhs.rho_coeff(j)).collect())
    }
}

impl Sub<&Poly2> for &Poly2 {
    type Output = Poly2;

    fn sub(self, rhs: &Poly2) -> Poly2 {
        let len = self.by_rho.len().max(rhs.by_rho.len());
        Poly2::from_rho_coeffs((0..len).map(|j| &self.rho_coeff(j) - &rhs.rho_coeff(j)).collect())
    }
}

impl Mul<&Poly2> for &Poly2 {
    type Output = Poly2;

    fn mul(self, rhs: &Poly2) -> Poly2 {
        if self.by_rho.is_empty() || rhs.by_rho.is_empty() {
            return Poly2::zero();
        }
        let mut out = vec![Poly::zero(); self.by_rho.len() + rhs.by_rho.len() - 1];
        for (i, a) in self.by_rho.iter().enumerate() {
            for (j, b) in rhs.by_rho.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly2::from_rho_coeffs(out)
    }
}

impl Zero for Poly2 {
    fn zero() -> Self {
        Poly2 { by_rho: Vec::new() }
    }

    fn is_zero(&self) -> bool {
        self.by_rho.is_empty()
    }
}

impl One for Poly2 {
    fn one() -> Self {
        Poly2::from(Poly::one())
    }
}

impl Ring for Poly2 {
    fn from_int(v: i64) -> Self {
        Poly2::from(Poly::from_int(v))
    }
}

/// Binomial coefficient as an exact integer.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}
