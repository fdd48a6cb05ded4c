//! The quadratic bi-lattice, orthogonality weights and the Gram matrix.
//!
//! Nodes are labeled by family: index `2s` is the A-family point `-(s+a)²`,
//! index `2s+1` the C-family point `-(s+c)²`. Weights are aligned with that
//! labeling; the increasing order is only a view.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::explicit::char_poly_derivative;
use crate::params::ParamSet;
use crate::recurrence::{eval_all, eval_poly, RecurrenceTable};
use crate::scalar::{binomial, factorial, int, pochhammer, Rational, RegularizedProduct};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    A,
    C,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::A => "A",
            Family::C => "C",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub family: Family,
    pub s: usize,
    pub lambda: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiLattice {
    nodes: Vec<Node>,
    sorted: Vec<usize>,
}

impl BiLattice {
    /// Labeled nodes in `x_0, x_1, ..., x_N` order. Fails on coinciding nodes.
    pub fn new(params: &ParamSet) -> Result<Self> {
        let nodes: Vec<Node> = (0..=params.max_degree())
            .map(|i| {
                let s = i / 2;
                let (family, shift) = if i % 2 == 0 { (Family::A, params.a()) } else { (Family::C, params.c()) };
                let root = int(s as i64) + shift;
                Node { family, s, lambda: -(&root * &root) }
            })
            .collect();
        let mut sorted: Vec<usize> = (0..nodes.len()).collect();
        sorted.sort_by(|&x, &y| nodes[x].lambda.cmp(&nodes[y].lambda));
        for pair in sorted.windows(2) {
            if nodes[pair[0]].lambda == nodes[pair[1]].lambda {
                let (x, y) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
                return Err(Error::CollidingNodes(x, y));
            }
        }
        Ok(Self { nodes, sorted })
    }

    /// Node values in labeled order, without the distinctness check.
    pub fn node_values(params: &ParamSet) -> Vec<Rational> {
        (0..=params.max_degree())
            .map(|i| {
                let shift = if i % 2 == 0 { params.a() } else { params.c() };
                let root = int((i / 2) as i64) + shift;
                -(&root * &root)
            })
            .collect()
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Labeled indices in increasing `λ` order.
    pub fn sorted_view(&self) -> &[usize] {
        &self.sorted
    }

    pub fn sorted_values(&self) -> Vec<Rational> {
        self.sorted.iter().map(|&i| self.nodes[i].lambda.clone()).collect()
    }

    pub fn family(&self, family: Family) -> impl Iterator<Item = &Node> {
        self.nodes.iter().filter(move |node| node.family == family)
    }
}

/// Weights aligned with [`BiLattice`] labeling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightVector {
    pub weights: Vec<Rational>,
}

impl WeightVector {
    pub fn family_sum(&self, family: Family) -> Rational {
        let parity = match family {
            Family::A => 0,
            Family::C => 1,
        };
        self.weights
            .iter()
            .enumerate()
            .filter(|(i, _)| i % 2 == parity)
            .fold(Rational::zero(), |acc, (_, w)| acc + w)
    }

    pub fn total(&self) -> Rational {
        self.weights.iter().fold(Rational::zero(), |acc, w| acc + w)
    }

    pub fn all_positive(&self) -> bool {
        self.weights.iter().all(|w| w.is_positive())
    }

    pub fn family_all_zero(&self, family: Family) -> bool {
        let parity = usize::from(family == Family::C);
        self.weights
            .iter()
            .enumerate()
            .filter(|(i, _)| i % 2 == parity)
            .all(|(_, w)| w.is_zero())
    }
}

/// Linear form `ka·a + kc·c + konst` evaluated at the parameters, with its
/// derivative along the regularization direction `(a, c) -> (a + ε, c + 3ε)`.
struct Linear {
    base: Rational,
    slope: Rational,
}

fn linear(params: &ParamSet, ka: i64, kc: i64, konst: Rational) -> Linear {
    Linear {
        base: int(ka) * params.a() + int(kc) * params.c() + konst,
        slope: int(ka + 3 * kc),
    }
}

impl RegularizedProduct {
    fn up(&mut self, l: &Linear, k: usize) -> &mut Self {
        self.mul_pochhammer(&l.base, &l.slope, k)
    }

    fn down(&mut self, l: &Linear, k: usize) -> &mut Self {
        self.div_pochhammer(&l.base, &l.slope, k)
    }
}

/// Closed-form weights: the mirror-symmetric weights times `2(1-alpha)` on the
/// A-family and `2 alpha` on the C-family (odd `N`), or the even-`N` display
/// with `alpha` built in.
pub fn weights_closed_form(params: &ParamSet) -> Result<WeightVector> {
    let j = params.j();
    let big_n = params.max_degree();
    let ji = int(j as i64);
    let one = Rational::one();
    let alpha = params.alpha();
    let zero = Rational::zero;
    let mut weights = vec![Rational::zero(); big_n + 1];
    let singular = |i: usize| Error::Singular(format!("closed-form weight {i} has a pole"));

    if params.is_odd() {
        // kappa_N = (a-c-j)_N (a+c)_N / (2 (-1)^{j+1} C(2j, j) j!)
        let sign = if (j + 1) % 2 == 0 { int(1) } else { int(-1) };
        let kappa_const = &one / (int(2) * sign * binomial(2 * j, j) * factorial(j));
        for s in 0..=j {
            let mut p = RegularizedProduct::new();
            p.scale(&kappa_const)
                .up(&linear(params, 1, -1, -&ji), big_n)
                .up(&linear(params, 1, 1, zero()), big_n)
                .scale(&pochhammer(&-&ji, s))
                .up(&linear(params, 2, 0, zero()), s)
                .up(&linear(params, 1, 0, one.clone()), s)
                .up(&linear(params, 1, -1, -&ji), s)
                .up(&linear(params, 1, 1, zero()), s)
                .down(&linear(params, 1, 1, zero()), j + 1)
                .down(&linear(params, -1, 1, zero()), j + 1)
                .down(&linear(params, 2, 0, one.clone()), j)
                .scale(&(&one / factorial(s)))
                .down(&linear(params, 1, 0, zero()), s)
                .down(&linear(params, 2, 0, &one + &ji), s)
                .down(&linear(params, 1, -1, one.clone()), s)
                .down(&linear(params, 1, 1, &ji + &one), s)
                .scale(&(int(2) * (&one - alpha)));
            weights[2 * s] = p.limit().ok_or_else(|| singular(2 * s))?;

            let mut p = RegularizedProduct::new();
            p.scale(&-&kappa_const)
                .up(&linear(params, 1, -1, -&ji), big_n)
                .up(&linear(params, 1, 1, zero()), big_n)
                .scale(&pochhammer(&-&ji, s))
                .up(&linear(params, 0, 2, zero()), s)
                .up(&linear(params, 0, 1, one.clone()), s)
                .up(&linear(params, -1, 1, -&ji), s)
                .up(&linear(params, 1, 1, zero()), s)
                .down(&linear(params, 1, 1, zero()), j + 1)
                .down(&linear(params, 1, -1, zero()), j + 1)
                .down(&linear(params, 0, 2, one.clone()), j)
                .scale(&(&one / factorial(s)))
                .down(&linear(params, 0, 1, zero()), s)
                .down(&linear(params, 0, 2, &one + &ji), s)
                .down(&linear(params, -1, 1, one.clone()), s)
                .down(&linear(params, 1, 1, &ji + &one), s)
                .scale(&(int(2) * alpha));
            weights[2 * s + 1] = p.limit().ok_or_else(|| singular(2 * s + 1))?;
        }
    } else {
        // kappa_N = (a-c-j+1)_N (a+c)_N / ((-1)^j C(2j, j))
        let sign = if j % 2 == 0 { int(1) } else { int(-1) };
        let kappa_const = &one / (sign * binomial(2 * j, j));
        for s in 0..=j {
            let mut p = RegularizedProduct::new();
            p.scale(&(int(2) * (&one - alpha) * &kappa_const))
                .up(&linear(params, 1, -1, &one - &ji), big_n)
                .up(&linear(params, 1, 1, zero()), big_n)
                .scale(&pochhammer(&-&ji, s))
                .up(&linear(params, 2, 0, zero()), s)
                .up(&linear(params, 1, 0, one.clone()), s)
                .up(&linear(params, 1, -1, &one - &ji), s)
                .up(&linear(params, 1, 1, zero()), s)
                .scale(&(&one / (factorial(j) * factorial(s))))
                .down(&linear(params, 1, 1, zero()), j)
                .down(&linear(params, -1, 1, zero()), j)
                .down(&linear(params, 2, 0, one.clone()), j)
                .down(&linear(params, 1, 0, zero()), s)
                .down(&linear(params, 2, 0, &one + &ji), s)
                .down(&linear(params, 1, -1, one.clone()), s)
                .down(&linear(params, 1, 1, ji.clone()), s);
            weights[2 * s] = p.limit().ok_or_else(|| singular(2 * s))?;
        }
        for s in 0..j {
            let mut p = RegularizedProduct::new();
            p.scale(&(int(-2) * alpha * &kappa_const))
                .up(&linear(params, 1, -1, &one - &ji), big_n)
                .up(&linear(params, 1, 1, zero()), big_n)
                .scale(&pochhammer(&(&one - &ji), s))
                .up(&linear(params, 0, 2, zero()), s)
                .up(&linear(params, 0, 1, one.clone()), s)
                .up(&linear(params, -1, 1, -&ji), s)
                .up(&linear(params, 1, 1, zero()), s)
                .scale(&(&one / (factorial(j - 1) * factorial(s))))
                .down(&linear(params, 1, 1, zero()), j + 1)
                .down(&linear(params, 1, -1, zero()), j + 1)
                .down(&linear(params, 0, 2, one.clone()), j - 1)
                .down(&linear(params, 0, 1, zero()), s)
                .down(&linear(params, 0, 2, ji.clone()), s)
                .down(&linear(params, -1, 1, one.clone()), s)
                .down(&linear(params, 1, 1, &ji + &one), s);
            weights[2 * s + 1] = p.limit().ok_or_else(|| singular(2 * s + 1))?;
        }
    }
    Ok(WeightVector { weights })
}

/// Weights from `w_s = u_1⋯u_N / (P_N(λ_s) P'_{N+1}(λ_s))`, with `P_N` from the
/// recurrence and `P'_{N+1}` differentiated exactly from the product form.
pub fn weights_spectral(params: &ParamSet, table: &RecurrenceTable) -> Result<WeightVector> {
    let big_n = params.max_degree();
    let norm = table.u_product(big_n);
    let mut weights = Vec::with_capacity(big_n + 1);
    for (i, node) in BiLattice::node_values(params).into_iter().enumerate() {
        let p_n = eval_poly(table, big_n, node.clone())?;
        let dp = char_poly_derivative(params, &node);
        if p_n.is_zero() {
            return Err(Error::ZeroAtNode(i));
        }
        if dp.is_zero() {
            return Err(Error::CollidingNodes(i, i));
        }
        weights.push(&norm / (p_n * dp));
    }
    Ok(WeightVector { weights })
}

/// Exact Gram matrix `G[n][m] = Σ_s P_n(λ_s) P_m(λ_s) w_s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthogonalityReport {
    pub gram: Vec<Vec<Rational>>,
    /// Largest `|G[n][m]|` with `n != m`.
    pub offdiag_max: Rational,
    /// `G[n][n] / (u_1⋯u_n)`; `None` where the norm is zero.
    pub diagonal_ratios: Vec<Option<Rational>>,
}

impl OrthogonalityReport {
    pub fn is_exact(&self) -> bool {
        self.offdiag_max.is_zero() && self.diagonal_ratios.iter().all(|r| r.as_ref().is_some_and(|r| r.is_one()))
    }
}

pub fn orthogonality_check(params: &ParamSet, table: &RecurrenceTable, weights: &WeightVector) -> OrthogonalityReport {
    let big_n = params.max_degree();
    let values: Vec<Vec<Rational>> = BiLattice::node_values(params)
        .into_iter()
        .map(|node| eval_all(table, big_n, node))
        .collect();
    let mut gram = vec![vec![Rational::zero(); big_n + 1]; big_n + 1];
    for n in 0..=big_n {
        for m in n..=big_n {
            let g = values
                .iter()
                .zip(&weights.weights)
                .fold(Rational::zero(), |acc, (vals, w)| acc + &vals[n] * &vals[m] * w);
            gram[m][n] = g.clone();
            gram[n][m] = g;
        }
    }
    let mut offdiag_max = Rational::zero();
    for (n, row) in gram.iter().enumerate() {
        for (m, g) in row.iter().enumerate() {
            if n != m && g.abs() > offdiag_max {
                offdiag_max = g.abs();
            }
        }
    }
    let diagonal_ratios = (0..=big_n)
        .map(|n| {
            let norm = table.u_product(n);
            (!norm.is_zero()).then(|| &gram[n][n] / norm)
        })
        .collect();
    OrthogonalityReport { gram, offdiag_max, diagonal_ratios }
}

/// `P_N` at the nodes, walked in increasing `λ` order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeSignPattern {
    /// `P_N(λ)² = u_1⋯u_N` at every node.
    pub squares_match: bool,
    /// Sign of `P_N` along the sorted view (+1 / -1 / 0).
    pub signs: Vec<i8>,
    pub alternates: bool,
}

impl NodeSignPattern {
    /// Sign `(-1)^(N-s)` at sorted position `s`: positive at the largest node.
    pub fn matches_expected_order(&self) -> bool {
        let big_n = self.signs.len() - 1;
        self.signs
            .iter()
            .enumerate()
            .all(|(s, &sign)| sign == if (big_n - s) % 2 == 0 { 1 } else { -1 })
    }
}

pub fn node_sign_pattern(params: &ParamSet, table: &RecurrenceTable) -> Result<NodeSignPattern> {
    let lattice = BiLattice::new(params)?;
    let big_n = params.max_degree();
    let norm = table.u_product(big_n);
    let mut squares_match = true;
    let mut signs = Vec::with_capacity(lattice.len());
    for lambda in lattice.sorted_values() {
        let v = eval_poly(table, big_n, lambda)?;
        squares_match &= &v * &v == norm;
        signs.push(if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        });
    }
    let alternates = signs.iter().all(|&s| s != 0) && signs.windows(2).all(|w| w[0] == -w[1]);
    Ok(NodeSignPattern { squares_match, signs, alternates })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::validate;
    use crate::recurrence::recurrence_table;
    use crate::scalar::rat;

    #[test]
    fn odd_lattice() {
        let p = validate(3, int(1), rat(5, 4), rat(1, 2)).unwrap();
        let l = BiLattice::new(&p).unwrap();
        let a: Vec<_> = l.family(Family::A).map(|n| n.lambda.clone()).collect();
        let c: Vec<_> = l.family(Family::C).map(|n| n.lambda.clone()).collect();
        assert_eq!(a, vec![int(-1), int(-4)]);
        assert_eq!(c, vec![rat(-25, 16), rat(-81, 16)]);
        assert_eq!(l.sorted_values(), vec![rat(-81, 16), int(-4), rat(-25, 16), int(-1)]);
    }

    #[test]
    fn even_lattice() {
        let p = validate(4, int(1), rat(3, 2), rat(1, 4)).unwrap();
        let l = BiLattice::new(&p).unwrap();
        let a: Vec<_> = l.family(Family::A).map(|n| n.lambda.clone()).collect();
        let c: Vec<_> = l.family(Family::C).map(|n| n.lambda.clone()).collect();
        assert_eq!(a, vec![int(-1), int(-4), int(-9)]);
        assert_eq!(c, vec![rat(-9, 4), rat(-25, 4)]);
    }

    #[test]
    fn smallest_lattice() {
        let p = validate(1, rat(2, 3), rat(1, 3), rat(1, 2)).unwrap();
        assert_eq!(BiLattice::node_values(&p), vec![rat(-4, 9), rat(-1, 9)]);
    }

    #[test]
    fn weights_agree_and_sum() {
        for (n, a, c, al) in [
            (3, int(1), rat(5, 4), rat(1, 2)),
            (4, int(1), rat(3, 2), rat(1, 4)),
            (5, rat(1, 4), rat(-11, 4), rat(2, 7)),
            (6, rat(1, 4), rat(-11, 4), rat(1, 5)),
        ] {
            let p = validate(n, a, c, al.clone()).unwrap();
            let t = recurrence_table(&p).unwrap();
            let wc = weights_closed_form(&p).unwrap();
            let ws = weights_spectral(&p, &t).unwrap();
            assert_eq!(wc, ws);
            assert!(wc.all_positive());
            assert_eq!(wc.family_sum(Family::A), int(1) - &al);
            assert_eq!(wc.family_sum(Family::C), al);
            assert_eq!(wc.total(), int(1));
        }
    }

    #[test]
    fn known_weights_odd3() {
        let p = validate(3, int(1), rat(5, 4), rat(1, 2)).unwrap();
        let w = weights_closed_form(&p).unwrap();
        assert_eq!(w.weights, vec![rat(17, 64), rat(85, 224), rat(15, 64), rat(27, 224)]);
    }

    #[test]
    fn removable_singularity_at_a_zero() {
        // a = 0 puts 0/0 into (2a)_s / (a)_s
        let p = validate(5, int(0), rat(1, 2), rat(1, 3)).unwrap();
        let t = recurrence_table(&p).unwrap();
        assert_eq!(weights_closed_form(&p).unwrap(), weights_spectral(&p, &t).unwrap());
    }

    #[test]
    fn alpha_zero_kills_c_family() {
        let p = validate(4, int(1), rat(3, 2), int(0)).unwrap();
        let w = weights_closed_form(&p).unwrap();
        assert!(w.family_all_zero(Family::C));
        assert!(!w.family_all_zero(Family::A));
        assert_eq!(w.total(), int(1));
    }

    #[test]
    fn gram_is_diagonal() {
        let p = validate(3, int(1), rat(5, 4), rat(1, 2)).unwrap();
        let t = recurrence_table(&p).unwrap();
        let r = orthogonality_check(&p, &t, &weights_closed_form(&p).unwrap());
        assert!(r.is_exact());
        assert_eq!(r.gram[0][0], int(1));
        assert_eq!(r.gram[2][2], t.u(1) * t.u(2));
    }

    #[test]
    fn sign_pattern_at_half() {
        for (n, a, c) in [(3, int(1), rat(5, 4)), (4, int(1), rat(3, 2)), (5, rat(1, 4), rat(-11, 4))] {
            let p = validate(n, a, c, rat(1, 2)).unwrap();
            let t = recurrence_table(&p).unwrap();
            let pat = node_sign_pattern(&p, &t).unwrap();
            assert!(pat.squares_match && pat.alternates && pat.matches_expected_order());
        }
    }
}
