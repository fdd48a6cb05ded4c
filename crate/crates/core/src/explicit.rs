//! Explicit form `P_n(λ) = η_n Σ_k A_{n,k} Φ_k(λ)`, the second evaluation route.
//!
//! For `n > j` the sum splits into two terminating ₄F₃ pieces at `k = j`.
//! Both pieces are summed in one loop with the branch picked per `k`; the
//! `k > j` branch carries `1/alpha` and `η_n` carries `alpha`.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::params::ParamSet;
use crate::scalar::{factorial, int, phi_k, pochhammer, Rational};
use crate::spectral::BiLattice;

/// `A_{n,0..=n}`; entries beyond `n` vanish and are not stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientRow {
    pub n: usize,
    pub entries: Vec<Rational>,
}

impl CoefficientRow {
    pub fn get(&self, k: usize) -> Rational {
        self.entries.get(k).cloned().unwrap_or_else(Rational::zero)
    }
}

/// Third lower parameter: `a - c - j` (odd N) or `a - c - j + 1` (even N).
fn lower_shift(params: &ParamSet) -> Rational {
    let base = params.a() - params.c() - int(params.j() as i64);
    if params.is_odd() {
        base
    } else {
        base + Rational::one()
    }
}

fn check_degree(params: &ParamSet, n: usize) -> Result<()> {
    let big_n = params.max_degree();
    if n > big_n {
        return Err(Error::IndexOutOfRange { index: n, max: big_n });
    }
    if n > params.j() && params.alpha().is_zero() {
        return Err(Error::AlphaZeroBranch(n));
    }
    Ok(())
}

pub fn limit_coefficients(params: &ParamSet, n: usize) -> Result<CoefficientRow> {
    check_degree(params, n)?;
    let big_n = params.max_degree() as i64;
    let j = params.j();
    let ni = n as i64;
    let sum = params.a() + params.c();
    let shift = lower_shift(params);
    let minus_j = int(-(j as i64));
    let mut entries = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let lower = factorial(k) * pochhammer(&sum, k) * pochhammer(&shift, k);
        let value = if k <= j {
            let den = lower * pochhammer(&minus_j, k);
            if den.is_zero() {
                return Err(Error::Singular(format!("A_{{{n},{k}}} denominator vanishes")));
            }
            pochhammer(&int(-ni), k) * pochhammer(&int(ni - big_n), k) / den
        } else {
            // only (-j)_j ever reaches the denominator here, never (-j)_k with k > j
            let tail = k as i64 - 1 + ni - big_n;
            debug_assert!(tail >= 0);
            let den = params.alpha() * lower * pochhammer(&minus_j, j) * factorial(k - j - 1);
            if den.is_zero() {
                return Err(Error::Singular(format!("A_{{{n},{k}}} denominator vanishes")));
            }
            pochhammer(&int(-ni), k) * pochhammer(&int(ni - big_n), (big_n - ni) as usize) * factorial(tail as usize)
                / den
        };
        entries.push(value);
    }
    Ok(CoefficientRow { n, entries })
}

/// Normalization `η_n` making the explicit sum monic.
pub fn eta(params: &ParamSet, n: usize) -> Result<Rational> {
    check_degree(params, n)?;
    let big_n = params.max_degree() as i64;
    let j = params.j();
    let ni = n as i64;
    let sum = params.a() + params.c();
    let shift = lower_shift(params);
    let minus_j = int(-(j as i64));
    let common = factorial(n) * pochhammer(&sum, n) * pochhammer(&shift, n);
    // (-n)_n = (-1)^n n!
    let minus_n = pochhammer(&int(-ni), n);
    Ok(if n <= j {
        common * pochhammer(&minus_j, n) / (minus_n * pochhammer(&int(ni - big_n), n))
    } else {
        params.alpha() * common * pochhammer(&minus_j, j) * factorial(n - j - 1)
            / (minus_n * pochhammer(&int(ni - big_n), (big_n - ni) as usize) * factorial((2 * ni - 1 - big_n) as usize))
    })
}

pub fn eval_explicit(params: &ParamSet, n: usize, lambda: &Rational) -> Result<Rational> {
    let row = limit_coefficients(params, n)?;
    let norm = eta(params, n)?;
    let total = row
        .entries
        .iter()
        .enumerate()
        .filter(|(_, coeff)| !coeff.is_zero())
        .fold(Rational::zero(), |acc, (k, coeff)| acc + coeff * phi_k(lambda, params.a(), k));
    Ok(norm * total)
}

/// `P_{N+1}(λ) = ∏ (λ - λ_s)` over the bi-lattice nodes.
pub fn char_poly_explicit(params: &ParamSet, lambda: &Rational) -> Rational {
    BiLattice::node_values(params)
        .iter()
        .fold(Rational::one(), |acc, node| acc * (lambda - node))
}

/// `P'_{N+1}(λ)` as the sum of single-factor-dropped products.
pub fn char_poly_derivative(params: &ParamSet, lambda: &Rational) -> Rational {
    let nodes = BiLattice::node_values(params);
    let diffs: Vec<Rational> = nodes.iter().map(|node| lambda - node).collect();
    (0..diffs.len())
        .map(|skip| {
            diffs
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .fold(Rational::one(), |acc, (_, d)| acc * d)
        })
        .fold(Rational::zero(), |acc, term| acc + term)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::validate;
    use crate::recurrence::{eval_poly, recurrence_table};
    use crate::scalar::rat;

    fn odd3() -> ParamSet {
        validate(3, int(1), rat(5, 4), rat(1, 2)).unwrap()
    }

    #[test]
    fn degree_zero() {
        let p = odd3();
        assert_eq!(limit_coefficients(&p, 0).unwrap().entries, vec![int(1)]);
        assert_eq!(eta(&p, 0).unwrap(), int(1));
        assert_eq!(eval_explicit(&p, 0, &rat(-7, 5)).unwrap(), int(1));
    }

    #[test]
    fn first_row_and_eta() {
        let p = odd3();
        let (a, c) = (p.a().clone(), p.c().clone());
        let j = int(1);
        let row = limit_coefficients(&p, 1).unwrap();
        let want = int(-1) * (int(1) - int(3)) / (-&j * (&a + &c) * (&a - &c - &j));
        assert_eq!(row.get(1), want);
        assert_eq!(row.get(5), int(0));
        assert_eq!(eta(&p, 1).unwrap(), -(&a + &c) * (&a - &c - int(1)) / int(2));
    }

    #[test]
    fn upper_branch_scales_with_inverse_alpha() {
        let p = validate(5, int(1), rat(5, 4), rat(1, 3)).unwrap();
        let q = p.with_alpha(rat(2, 3)).unwrap();
        let n = p.j() + 1;
        let rp = limit_coefficients(&p, n).unwrap();
        let rq = limit_coefficients(&q, n).unwrap();
        assert_eq!(rp.get(n), int(2) * rq.get(n));
        assert_eq!(rp.get(n - 1), rq.get(n - 1));
        assert_eq!(eta(&p, n).unwrap() * int(2), eta(&q, n).unwrap());
    }

    #[test]
    fn alpha_zero_refuses_upper_degrees() {
        let p = validate(5, int(1), rat(5, 4), int(0)).unwrap();
        assert!(eval_explicit(&p, p.j(), &int(2)).is_ok());
        assert_eq!(eval_explicit(&p, p.j() + 1, &int(2)), Err(Error::AlphaZeroBranch(3)));
    }

    #[test]
    fn matches_recurrence_examples() {
        let p = odd3();
        let t = recurrence_table(&p).unwrap();
        assert_eq!(eval_explicit(&p, 2, &int(-1)).unwrap(), eval_poly(&t, 2, int(-1)).unwrap());
        let e = validate(4, int(1), rat(3, 2), rat(1, 4)).unwrap();
        let te = recurrence_table(&e).unwrap();
        for lam in [rat(3, 7), int(-2), rat(11, 5)] {
            assert_eq!(eval_explicit(&e, 3, &lam).unwrap(), eval_poly(&te, 3, lam).unwrap());
        }
    }

    #[test]
    fn char_poly_roots() {
        let p = odd3();
        assert_eq!(char_poly_explicit(&p, &int(-1)), int(0));
        let cj = p.c() + int(1);
        assert_eq!(char_poly_explicit(&p, &-(&cj * &cj)), int(0));
        let t = recurrence_table(&p).unwrap();
        for lam in [rat(1, 3), int(5), rat(-9, 4)] {
            assert_eq!(char_poly_explicit(&p, &lam), eval_poly(&t, 4, lam).unwrap());
        }
    }

    #[test]
    fn derivative_matches_expanded_coefficients() {
        let p = validate(4, int(1), rat(3, 2), rat(1, 4)).unwrap();
        // expand prod (x - node) into monomial coefficients, lowest degree first
        let mut coeffs = vec![int(1)];
        for node in BiLattice::node_values(&p) {
            let mut next = vec![int(0); coeffs.len() + 1];
            for (k, ck) in coeffs.iter().enumerate() {
                next[k + 1] += ck;
                next[k] -= ck * &node;
            }
            coeffs = next;
        }
        for x in [rat(2, 3), int(-4), rat(-25, 4)] {
            let mut want = int(0);
            let mut power = int(1);
            for (k, ck) in coeffs.iter().enumerate().skip(1) {
                want += int(k as i64) * ck * &power;
                power *= &x;
            }
            assert_eq!(char_poly_derivative(&p, &x), want);
        }
    }
}
