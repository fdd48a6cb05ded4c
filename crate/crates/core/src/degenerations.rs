//! Limits and specializations: the para-Krawtchouk limit `θ → ∞` of the
//! linear reparametrization `a = (θ-Δ)/2`, `c = (θ+Δ)/2`, and the dual-Hahn
//! reduction at `c = a + 1/2`, `alpha = 1/2`.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::params::{validate, ParamSet};
use crate::recurrence::{recurrence_table, Entry, RecurrenceTable};
use crate::scalar::{binomial, factorial, int, pochhammer, rat, to_f64, Rational};
use crate::spectral::{weights_closed_form, BiLattice, WeightVector};

/// Change of variable `λ = scale·y + shift`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMap {
    pub scale: Rational,
    pub shift: Rational,
}

impl AffineMap {
    pub fn new(scale: Rational, shift: Rational) -> Self {
        assert!(!scale.is_zero(), "affine scale must be nonzero");
        Self { scale, shift }
    }

    pub fn to_y(&self, lambda: &Rational) -> Rational {
        (lambda - &self.shift) / &self.scale
    }

    pub fn to_lambda(&self, y: &Rational) -> Rational {
        &self.scale * y + &self.shift
    }

    /// Monic recurrence in `y`: `b -> (b - shift)/scale`, `u -> u/scale²`, so
    /// that `P_n(λ) = scale^n Q_n(y)`.
    pub fn transform(&self, table: &RecurrenceTable) -> RecurrenceTable {
        let s2 = &self.scale * &self.scale;
        let b = table.b_values().iter().map(|b| (b - &self.shift) / &self.scale).collect();
        let u = table.u_interior().iter().map(|u| u / &s2).collect();
        RecurrenceTable::from_parts(b, u).expect("shape preserved")
    }
}

/// Exact `θ → ∞` targets of the scaled para-Racah data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParaKrawtchoukTarget {
    pub max_degree: usize,
    pub delta: Rational,
    pub limit: RecurrenceTable,
    /// Linear bi-lattice `2s` (A-family) and `2s + 2Δ` (C-family), labeled order.
    pub nodes: Vec<Rational>,
    pub weights: WeightVector,
}

fn pk_weights(max_degree: usize, delta: &Rational) -> WeightVector {
    let j = if max_degree % 2 == 1 { (max_degree - 1) / 2 } else { max_degree / 2 };
    let ji = int(j as i64);
    let one = Rational::one();
    let sign = |e: usize| if e % 2 == 0 { int(1) } else { int(-1) };
    let central = binomial(2 * j, j);
    let mut w = vec![Rational::zero(); max_degree + 1];
    if max_degree % 2 == 1 {
        let lead = pochhammer(&(-delta - &ji), max_degree);
        for s in 0..=j {
            let fs = factorial(s);
            let ps = pochhammer(&-&ji, s);
            w[2 * s] = &lead * &ps * pochhammer(&(-delta - &ji), s)
                / (int(2) * sign(j + 1) * &central * &fs * factorial(j) * pochhammer(delta, j + 1) * pochhammer(&(&one - delta), s));
            w[2 * s + 1] = &lead * &ps * pochhammer(&(delta - &ji), s)
                / (int(2) * sign(j) * &central * &fs * factorial(j) * pochhammer(&-delta, j + 1) * pochhammer(&(&one + delta), s));
        }
    } else {
        let lead = pochhammer(&(-delta - &ji + &one), max_degree);
        for s in 0..=j {
            w[2 * s] = &lead * pochhammer(&-&ji, s) * pochhammer(&(-delta - &ji + &one), s)
                / (sign(j) * &central * factorial(s) * factorial(j) * pochhammer(delta, j) * pochhammer(&(&one - delta), s));
        }
        for s in 0..j {
            w[2 * s + 1] = &lead * pochhammer(&(&one - &ji), s) * pochhammer(&(delta - &ji), s)
                / (sign(j + 1) * &central * factorial(s) * factorial(j - 1) * pochhammer(&-delta, j + 1) * pochhammer(&(&one + delta), s));
        }
    }
    WeightVector { weights: w }
}

/// Limits of `-(2b_n + 2a(θ)²)/θ` and `4u_n/θ²`, the linear bi-lattice and
/// the limiting weights.
pub fn pk_limit_coefficients(max_degree: usize, delta: &Rational) -> Result<ParaKrawtchoukTarget> {
    if max_degree == 0 {
        return Err(Error::InvalidDegree);
    }
    let odd = max_degree % 2 == 1;
    let nn = int(max_degree as i64);
    let one = Rational::one();
    let two_delta = int(2) * delta;
    let base_b = (&nn - &one + &two_delta) / int(2);
    let mut b = Vec::with_capacity(max_degree + 1);
    let mut u = Vec::with_capacity(max_degree);
    for n in 0..=max_degree {
        let ni = int(n as i64);
        b.push(if odd {
            base_b.clone()
        } else {
            let corr = (&two_delta - &one) * (&nn + &one) / int(4);
            &base_b + corr * (&one / (int(2) * &ni - &nn - &one) - &one / (int(2) * &ni - &nn + &one))
        });
    }
    for n in 1..=max_degree {
        let ni = int(n as i64);
        let head = &ni * (&nn + &one - &ni);
        let value = if odd {
            let m = int(2) * &ni - &nn - &one;
            head * (&m - &two_delta) * (&m + &two_delta) / (int(4) * (int(2) * &ni - &nn) * (int(2) * &ni - &nn - int(2)))
        } else {
            let m = int(2) * &ni - &nn - &one;
            head * (int(2) * &ni - &nn - &two_delta) * (int(2) * &ni - &nn - int(2) + &two_delta) / (int(4) * &m * &m)
        };
        if !value.is_positive() {
            return Err(Error::RegimeViolation(format!("limit u_{n} = {value} for Δ = {delta}")));
        }
        u.push(value);
    }
    let nodes = (0..=max_degree)
        .map(|i| {
            let s = int((i / 2) as i64);
            if i % 2 == 0 {
                int(2) * s
            } else {
                int(2) * s + &two_delta
            }
        })
        .collect();
    Ok(ParaKrawtchoukTarget {
        max_degree,
        delta: delta.clone(),
        limit: RecurrenceTable::from_parts(b, u)?,
        nodes,
        weights: pk_weights(max_degree, delta),
    })
}

/// `(N, a(θ), c(θ), 1/2)` with `a = (θ-Δ)/2`, `c = (θ+Δ)/2`.
pub fn pk_params(max_degree: usize, delta: &Rational, theta: &Rational) -> Result<ParamSet> {
    let half = rat(1, 2);
    validate(max_degree, (theta - delta) * &half, (theta + delta) * &half, half)
}

/// The map `λ = -(θ/2) y - a(θ)²` turning `P_n` into the scaled `Q_n`.
pub fn pk_affine(params: &ParamSet, theta: &Rational) -> AffineMap {
    AffineMap::new(-(theta / int(2)), -(params.a() * params.a()))
}

/// Errors of the scaled data at one `θ`, all maxima over indices.
#[derive(Clone, Debug, PartialEq)]
pub struct PkErrorRow {
    pub theta: f64,
    pub b_err: f64,
    pub u_err: f64,
    pub grid_err: f64,
    pub weight_rel_err: f64,
}

pub fn pk_convergence_study(max_degree: usize, delta: &Rational, thetas: &[Rational]) -> Result<Vec<PkErrorRow>> {
    let target = pk_limit_coefficients(max_degree, delta)?;
    thetas
        .iter()
        .map(|theta| {
            let params = pk_params(max_degree, delta, theta)?;
            let scaled = pk_affine(&params, theta).transform(&recurrence_table(&params)?);
            let diff_max = |pairs: Vec<(Rational, Rational)>, relative: bool| {
                pairs
                    .into_iter()
                    .map(|(x, t)| {
                        let d = to_f64(&(x - &t)).abs();
                        if relative {
                            d / to_f64(&t).abs()
                        } else {
                            d
                        }
                    })
                    .fold(0.0f64, f64::max)
            };
            let b_err = diff_max(
                (0..=max_degree).map(|n| (scaled.b(n).clone(), target.limit.b(n).clone())).collect(),
                false,
            );
            let u_err = diff_max(
                (1..=max_degree).map(|n| (scaled.u(n).clone(), target.limit.u(n).clone())).collect(),
                false,
            );
            let map = pk_affine(&params, theta);
            let grid_err = diff_max(
                BiLattice::node_values(&params)
                    .iter()
                    .map(|x| map.to_y(x))
                    .zip(target.nodes.iter().cloned())
                    .collect(),
                false,
            );
            let weights = weights_closed_form(&params)?;
            let weight_rel_err = diff_max(
                weights.weights.into_iter().zip(target.weights.weights.iter().cloned()).collect(),
                true,
            );
            Ok(PkErrorRow { theta: to_f64(theta), b_err, u_err, grid_err, weight_rel_err })
        })
        .collect()
}

/// `θ = 2^4, 2^5, ..., θ_max`.
pub fn doubling_thetas(theta_max: u64) -> Vec<Rational> {
    let mut out = Vec::new();
    let mut t = 16u64;
    while t <= theta_max {
        out.push(int(t as i64));
        t *= 2;
    }
    out
}

/// Least-squares slope of `-log(err)` against `log θ`; zero errors are skipped.
pub fn empirical_order(thetas: &[f64], errors: &[f64]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = thetas
        .iter()
        .zip(errors)
        .filter(|(_, &e)| e > 0.0)
        .map(|(&t, &e)| (t.ln(), -e.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    Some(sxy / sxx)
}

/// Monic dual-Hahn recurrence in `λ(x) = x(x+γ+δ+1)` from the standard data
/// `A_n = (n+γ+1)(n-N)`, `C_n = n(n-δ-N-1)`: `b_n = -(A_n + C_n)`,
/// `u_n = A_{n-1} C_n`.
pub fn dual_hahn_monic(max_degree: usize, gamma: &Rational, delta: &Rational) -> RecurrenceTable {
    let nn = int(max_degree as i64);
    let one = Rational::one();
    let big_a = |n: i64| (int(n) + gamma + &one) * (int(n) - &nn);
    let big_c = |n: i64| int(n) * (int(n) - delta - &nn - &one);
    let b = (0..=max_degree as i64).map(|n| -(big_a(n) + big_c(n))).collect();
    let u = (1..=max_degree as i64).map(|n| big_a(n - 1) * big_c(n)).collect();
    RecurrenceTable::from_parts(b, u).expect("consistent shape")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualHahnReport {
    pub params: ParamSet,
    pub gamma: Rational,
    /// Para-Racah table under `λ = -y/4 - a²`.
    pub transformed: RecurrenceTable,
    pub reference: RecurrenceTable,
    pub first_mismatch: Option<Entry>,
    /// Nodes equal `-(s/2 + a)²` in sorted order.
    pub single_lattice: bool,
    /// Dual-Hahn nodes `s(s + 4a)` equal the mapped para-Racah nodes.
    pub nodes_match: bool,
}

impl DualHahnReport {
    pub fn matches(&self) -> bool {
        self.first_mismatch.is_none() && self.single_lattice && self.nodes_match
    }
}

/// Compares `(-4)^n P_n(-y/4 - a²; N, a, a+1/2, 1/2)` with the monic dual-Hahn
/// `r_n(y; N, γ, γ)`, `γ = (4a-1)/2`, coefficient by coefficient.
pub fn dual_hahn_check(max_degree: usize, a: &Rational) -> Result<DualHahnReport> {
    let half = rat(1, 2);
    let params = validate(max_degree, a.clone(), a + &half, half.clone())?;
    let map = AffineMap::new(rat(-1, 4), -(a * a));
    let transformed = map.transform(&recurrence_table(&params)?);
    let gamma = (int(4) * a - int(1)) / int(2);
    let reference = dual_hahn_monic(max_degree, &gamma, &gamma);
    let first_mismatch = transformed.differing_entries(&reference).first().copied();
    let lattice = BiLattice::new(&params)?;
    let single: Vec<Rational> = (0..=max_degree)
        .map(|s| {
            let r = int(s as i64) * &half + a;
            -(&r * &r)
        })
        .collect();
    let mut sorted = lattice.sorted_values();
    sorted.reverse();
    let single_lattice = sorted == single;
    let nodes_match = (0..=max_degree).all(|s| {
        let si = int(s as i64);
        let y = &si * (&si + &gamma + &gamma + int(1));
        map.to_y(&single[s]) == y
    });
    Ok(DualHahnReport { params, gamma, transformed, reference, first_mismatch, single_lattice, nodes_match })
}
