//! Exact scalars and the Pochhammer-type products used throughout the crate.
//!
//! [`Rational`] is an arbitrary-precision rational; [`Gaussian`] is a complex
//! number with rational parts, needed for the complex shifts `x ± i` of the
//! difference equation. Floats only appear in the eigensolver and in the
//! limit studies, and always next to an exact counterpart.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num / den`, reduced. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p/q"`, `"p"` or `"-p/q"` exactly. No decimal or float syntax.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let err = || Error::Parse(text.to_string());
    let t = text.trim();
    let (num, den) = match t.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| err())?;
    let den: BigInt = den.parse().map_err(|_| err())?;
    if den.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(num, den))
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Rising factorial `(a)_k = a (a+1) ... (a+k-1)`.
pub fn pochhammer(a: &Rational, k: usize) -> Rational {
    let mut acc = Rational::one();
    let mut term = a.clone();
    for _ in 0..k {
        acc *= &term;
        term += Rational::one();
    }
    acc
}

/// `Φ_k(λ) = ∏_{m<k} ((a+m)² + λ)`, the real form of `(a-ix)_k (a+ix)_k` at `λ = x²`.
pub fn phi_k(lambda: &Rational, a: &Rational, k: usize) -> Rational {
    let mut acc = Rational::one();
    let mut shift = a.clone();
    for _ in 0..k {
        acc *= &shift * &shift + lambda;
        shift += Rational::one();
    }
    acc
}

pub fn factorial(n: usize) -> Rational {
    pochhammer(&Rational::one(), n)
}

pub fn binomial(n: usize, k: usize) -> Rational {
    if k > n {
        return Rational::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// Complex number with exact rational parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Gaussian {
    pub re: Rational,
    pub im: Rational,
}

impl Gaussian {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn real(re: Rational) -> Self {
        Self { re, im: Rational::zero() }
    }

    pub fn i() -> Self {
        Self { re: Rational::zero(), im: Rational::one() }
    }

    pub fn zero() -> Self {
        Self::real(Rational::zero())
    }

    pub fn one() -> Self {
        Self::real(Rational::one())
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -&self.im }
    }

    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        let d = rhs.norm_sqr();
        if d.is_zero() {
            return None;
        }
        Some(Self {
            re: (&self.re * &rhs.re + &self.im * &rhs.im) / &d,
            im: (&self.im * &rhs.re - &self.re * &rhs.im) / &d,
        })
    }
}

impl From<Rational> for Gaussian {
    fn from(re: Rational) -> Self {
        Self::real(re)
    }
}

impl fmt::Display for Gaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_negative() {
            write!(f, "{} - {}i", self.re, -&self.im)
        } else {
            write!(f, "{} + {}i", self.re, self.im)
        }
    }
}

impl Add for Gaussian {
    type Output = Gaussian;
    fn add(self, rhs: Self) -> Self {
        Self { re: self.re + rhs.re, im: self.im + rhs.im }
    }
}

impl Sub for Gaussian {
    type Output = Gaussian;
    fn sub(self, rhs: Self) -> Self {
        Self { re: self.re - rhs.re, im: self.im - rhs.im }
    }
}

impl Mul for Gaussian {
    type Output = Gaussian;
    fn mul(self, rhs: Self) -> Self {
        Self {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Div for Gaussian {
    type Output = Gaussian;
    /// Panics on division by zero, like `Rational`.
    fn div(self, rhs: Self) -> Self {
        self.checked_div(&rhs).expect("Gaussian division by zero")
    }
}

impl Neg for Gaussian {
    type Output = Gaussian;
    fn neg(self) -> Self {
        Self { re: -self.re, im: -self.im }
    }
}

/// `(z)_k` over the Gaussian rationals.
pub fn pochhammer_gaussian(z: &Gaussian, k: usize) -> Gaussian {
    let mut acc = Gaussian::one();
    let mut term = z.clone();
    for _ in 0..k {
        acc = acc * term.clone();
        term.re += Rational::one();
    }
    acc
}

/// Product of linear factors `base + slope·ε`, kept as `value · ε^order`.
///
/// Closed forms built from Pochhammer ratios can hit removable `0/0` points
/// inside the admissible parameter region. Tracking the order of vanishing
/// along a fixed perturbation direction recovers the limit exactly.
#[derive(Clone, Debug)]
pub struct RegularizedProduct {
    value: Rational,
    order: i32,
}

impl Default for RegularizedProduct {
    fn default() -> Self {
        Self { value: Rational::one(), order: 0 }
    }
}

impl RegularizedProduct {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn scale(&mut self, c: &Rational) -> &mut Self {
        if c.is_zero() {
            // a constant zero can never be regularized
            self.order = i32::MAX / 2;
        } else {
            self.value *= c;
        }
        self
    }

    pub fn mul_factor(&mut self, base: &Rational, slope: &Rational) -> &mut Self {
        if base.is_zero() {
            assert!(!slope.is_zero(), "factor vanishes identically");
            self.value *= slope;
            self.order += 1;
        } else {
            self.value *= base;
        }
        self
    }

    pub fn div_factor(&mut self, base: &Rational, slope: &Rational) -> &mut Self {
        if base.is_zero() {
            assert!(!slope.is_zero(), "factor vanishes identically");
            self.value /= slope;
            self.order -= 1;
        } else {
            self.value /= base;
        }
        self
    }

    /// Multiplies by `(base + slope·ε)_k`.
    pub fn mul_pochhammer(&mut self, base: &Rational, slope: &Rational, k: usize) -> &mut Self {
        let mut b = base.clone();
        for _ in 0..k {
            self.mul_factor(&b, slope);
            b += Rational::one();
        }
        self
    }

    pub fn div_pochhammer(&mut self, base: &Rational, slope: &Rational, k: usize) -> &mut Self {
        let mut b = base.clone();
        for _ in 0..k {
            self.div_factor(&b, slope);
            b += Rational::one();
        }
        self
    }

    /// Value at `ε = 0`; `None` when the product has a pole there.
    pub fn limit(&self) -> Option<Rational> {
        match self.order {
            0 => Some(self.value.clone()),
            o if o > 0 => Some(Rational::zero()),
            _ => None,
        }
    }
}
