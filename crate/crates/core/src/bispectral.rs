//! The difference equation in `x`, checked pointwise in Gaussian rationals:
//!
//! `D̄(x) P_n((x+i)²) - (D̄(x) + D(x)) P_n(x²) + D(x) P_n((x-i)²) = -n(N-n) P_n(x²)`.


use crate::error::{Error, Result};
use crate::params::ParamSet;
use crate::recurrence::{eval_poly, RecurrenceTable};
use crate::scalar::{int, rat, Gaussian, Rational};

/// The coefficient function `D(x)` for one parameter set.
#[derive(Clone, Debug)]
pub struct DifferenceOperator {
    numerator_roots: [Rational; 4],
}

impl DifferenceOperator {
    /// Numerator `(a+ix)(-a-j+ix)(c+ix)(-c-j+ix)`; the last factor is
    /// `(1-c-j+ix)` for even `N`.
    pub fn new(params: &ParamSet) -> Self {
        let j = int(params.j() as i64);
        let (a, c) = (params.a(), params.c());
        let last = if params.is_odd() { -c - &j } else { int(1) - c - &j };
        Self { numerator_roots: [a.clone(), -a - &j, c.clone(), last] }
    }

    pub fn eval(&self, x: &Gaussian) -> Result<Gaussian> {
        let ix = Gaussian::i() * x.clone();
        let two_ix = Gaussian::real(int(2)) * ix.clone();
        let den = two_ix.clone() * (two_ix + Gaussian::one());
        if den.is_zero() {
            return Err(Error::PoleAtX(x.to_string()));
        }
        let num = self
            .numerator_roots
            .iter()
            .fold(Gaussian::one(), |acc, r| acc * (Gaussian::real(r.clone()) + ix.clone()));
        Ok(num / den)
    }
}

pub fn d_of_x(params: &ParamSet, x: &Gaussian) -> Result<Gaussian> {
    DifferenceOperator::new(params).eval(x)
}

/// Eigenvalue `-n(N-n)` of `P_n` under the difference operator.
pub fn eigenvalue(max_degree: usize, n: usize) -> i64 {
    -((n * (max_degree - n)) as i64)
}

/// Left side minus right side of the difference equation at real rational `x`;
/// exactly zero when the identity holds.
pub fn difference_residual(params: &ParamSet, table: &RecurrenceTable, n: usize, x: &Rational) -> Result<Gaussian> {
    let big_n = params.max_degree();
    if n > big_n {
        return Err(Error::IndexOutOfRange { index: n, max: big_n });
    }
    let xg = Gaussian::real(x.clone());
    let d = d_of_x(params, &xg)?;
    let d_bar = d.conj();
    let up = xg.clone() + Gaussian::i();
    let down = xg.clone() - Gaussian::i();
    let p_up = eval_poly(table, n, up.clone() * up)?;
    let p_mid = eval_poly(table, n, xg.clone() * xg)?;
    let p_down = eval_poly(table, n, down.clone() * down)?;
    let lambda = Gaussian::real(int(-eigenvalue(big_n, n)));
    Ok(d_bar.clone() * p_up - (d_bar + d.clone()) * p_mid.clone() + d * p_down + lambda * p_mid)
}

/// `count` distinct nonzero rationals `(3k+1)/(2k+5)` for pointwise certificates.
pub fn certificate_points(count: usize) -> Vec<Rational> {
    (0..count as i64).map(|k| rat(3 * k + 1, 2 * k + 5)).collect()
}

/// Number of points used per parameter set: `2N + 4`.
pub fn certificate_size(max_degree: usize) -> usize {
    2 * max_degree + 4
}
