//! Validated parameter sets and the positivity regimes.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::recurrence::RecurrenceTable;
use crate::scalar::{int, Rational};
use crate::spectral::BiLattice;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Odd,
    Even,
}

/// Which admissible region of the `(a, c)` plane the parameters fall in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Regime {
    OddInner,
    OddOuter,
    EvenInner,
    EvenOuter,
}

impl Regime {
    pub fn name(self) -> &'static str {
        match self {
            Regime::OddInner => "OddInner",
            Regime::OddOuter => "OddOuter",
            Regime::EvenInner => "EvenInner",
            Regime::EvenOuter => "EvenOuter",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One para-Racah family: `N`, `a`, `c`, `alpha`, plus the regime that makes it
/// positive-definite. Only [`validate`] builds these.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamSet {
    max_degree: usize,
    j: usize,
    parity: Parity,
    a: Rational,
    c: Rational,
    alpha: Rational,
    regime: Regime,
    degenerate_alpha: bool,
}

impl ParamSet {
    /// `N`, the highest degree; the family has `N + 1` members.
    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// `N = 2j + 1` (odd) or `N = 2j` (even).
    pub fn j(&self) -> usize {
        self.j
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn is_odd(&self) -> bool {
        self.parity == Parity::Odd
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn c(&self) -> &Rational {
        &self.c
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    /// `alpha` is 0 or 1: one off-diagonal entry vanishes and the Jacobi matrix splits.
    pub fn degenerate_alpha(&self) -> bool {
        self.degenerate_alpha
    }

    /// Same family with a different deformation parameter.
    pub fn with_alpha(&self, alpha: Rational) -> Result<ParamSet> {
        validate(self.max_degree, self.a.clone(), self.c.clone(), alpha)
    }

    /// The index `n` with `u_n = 0` when `alpha ∈ {0, 1}`.
    pub fn vanishing_u_index(&self) -> Option<usize> {
        if !self.degenerate_alpha {
            return None;
        }
        match self.parity {
            Parity::Odd => Some(self.j + 1),
            Parity::Even if self.alpha.is_zero() => Some(self.j + 1),
            Parity::Even => Some(self.j),
        }
    }
}

fn split_degree(max_degree: usize) -> (Parity, usize) {
    if max_degree % 2 == 1 {
        (Parity::Odd, (max_degree - 1) / 2)
    } else {
        (Parity::Even, max_degree / 2)
    }
}

/// Regimes whose inequalities hold for `(N, a, c)`, Inner first.
///
/// The odd inner band is `-j-1 < a+c < -j+1`: below `-j-1` the factor
/// `(N-n+a+c)(n-1+a+c)` changes sign for some `n` and `u_n` turns negative.
pub fn matching_regimes(max_degree: usize, a: &Rational, c: &Rational) -> Vec<Regime> {
    let (parity, j) = split_degree(max_degree);
    let n = int(max_degree as i64);
    let j = int(j as i64);
    let one = Rational::one();
    let sum = a + c;
    let diff = c - a;
    let outer_sum = sum < &one - &n || sum > Rational::zero();
    let mut out = Vec::new();
    match parity {
        Parity::Odd => {
            if sum > -&j - &one && sum < &one - &j && diff.abs() > j {
                out.push(Regime::OddInner);
            }
            if outer_sum && diff.abs() < one {
                out.push(Regime::OddOuter);
            }
        }
        Parity::Even => {
            if sum > -&j && sum < &one - &j && (-&diff < -&j || diff < &one - &j) {
                out.push(Regime::EvenInner);
            }
            if outer_sum && diff > Rational::zero() && diff < one {
                out.push(Regime::EvenOuter);
            }
        }
    }
    out
}

/// Checks `(N, a, c, alpha)` against the positivity regimes and builds a [`ParamSet`].
///
/// Inner wins when both regime families match. `alpha ∈ {0, 1}` is accepted
/// and flagged; the one coefficient it zeroes is exempt from the positivity
/// check.
pub fn validate(max_degree: usize, a: Rational, c: Rational, alpha: Rational) -> Result<ParamSet> {
    if max_degree == 0 {
        return Err(Error::InvalidDegree);
    }
    if alpha.is_negative() || alpha > Rational::one() {
        return Err(Error::AlphaOutOfRange(alpha.to_string()));
    }
    if a == c {
        return Err(Error::DegenerateParameters("a = c removes the deformation (u vanishes at the middle row)".into()));
    }
    let (parity, j) = split_degree(max_degree);
    let regime = *matching_regimes(max_degree, &a, &c).first().ok_or_else(|| {
        Error::RegimeViolation(format!("N={max_degree}, a={a}, c={c}: no regime inequalities hold"))
    })?;
    if regime == Regime::OddInner && &a + &c == -int(j as i64) {
        return Err(Error::DegenerateParameters(format!("a + c = -j = -{j} zeroes u_{}", j + 1)));
    }
    let degenerate_alpha = alpha.is_zero() || alpha.is_one();
    let params = ParamSet { max_degree, j, parity, a, c, alpha, regime, degenerate_alpha };

    let table = RecurrenceTable::closed_form(&params);
    let skip = params.vanishing_u_index();
    for n in 1..=max_degree {
        if Some(n) == skip {
            continue;
        }
        let u = table.u(n);
        if u.is_zero() {
            return Err(Error::DegenerateParameters(format!("u_{n} = 0")));
        }
        if u.is_negative() {
            return Err(Error::RegimeViolation(format!("u_{n} = {u} < 0")));
        }
    }
    BiLattice::new(&params).map_err(|e| Error::DegenerateParameters(e.to_string()))?;
    Ok(params)
}

/// Multiplicity of each difference-equation eigenvalue `-n(N-n)`, `n = 0..=N`.
pub fn spectrum_degeneracy(params: &ParamSet) -> BTreeMap<i64, usize> {
    degeneracy_for(params.max_degree)
}

pub(crate) fn degeneracy_for(max_degree: usize) -> BTreeMap<i64, usize> {
    let big_n = max_degree as i64;
    let mut out = BTreeMap::new();
    for n in 0..=big_n {
        *out.entry(-n * (big_n - n)).or_insert(0) += 1;
    }
    out
}
