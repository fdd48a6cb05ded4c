//! Runs every identity for one parameter set against a coefficient table and
//! reports a named pass/fail per check.

use num_traits::{One, Signed, Zero};

use crate::bispectral::{certificate_points, certificate_size, difference_residual, eigenvalue};
use crate::explicit::{char_poly_explicit, eval_explicit};
use crate::jacobi::{block_split, eigenvalues, jacobi_matrix, observed_blocks};
use crate::params::{spectrum_degeneracy, ParamSet};
use crate::recurrence::{eval_poly, recurrence_table, Entry, RecurrenceTable};
use crate::scalar::{rat, to_f64, Rational};
use crate::spectral::{
    node_sign_pattern, orthogonality_check, weights_closed_form, weights_spectral, BiLattice, Family,
};

/// Eigenvalues must match the sorted bi-lattice to this absolute tolerance.
pub const SPECTRUM_TOLERANCE: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Certificate {
    pub checks: Vec<CheckOutcome>,
}

impl Certificate {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| !c.passed)
    }

    fn record(&mut self, name: &'static str, outcome: std::result::Result<String, String>) {
        let (passed, detail) = match outcome {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        self.checks.push(CheckOutcome { name, passed, detail });
    }
}

/// Certifies the library's own coefficient table.
pub fn certify(params: &ParamSet) -> Certificate {
    match recurrence_table(params) {
        Ok(table) => certify_table(params, &table),
        Err(e) => {
            let mut cert = Certificate::default();
            cert.record("coefficient-paths", Err(e.to_string()));
            cert
        }
    }
}

type Outcome = std::result::Result<String, String>;

/// Certifies `table` as the recurrence of `params`.
pub fn certify_table(params: &ParamSet, table: &RecurrenceTable) -> Certificate {
    let mut cert = Certificate::default();
    if table.max_degree() != params.max_degree() {
        cert.record(
            "coefficient-paths",
            Err(format!("table has N = {}, parameters N = {}", table.max_degree(), params.max_degree())),
        );
        return cert;
    }
    let interior = !params.degenerate_alpha();
    cert.record("coefficient-paths", check_paths(params, table));
    cert.record("positivity", check_positivity(params, table));
    cert.record("mirror-symmetry", check_mirror(params, table));
    cert.record("explicit-vs-recurrence", check_explicit(params, table));
    cert.record("characteristic-polynomial", check_char_poly(params, table));
    cert.record("weights", check_weights(params, table));
    if interior {
        cert.record("orthogonality", check_gram(params, table));
    }
    cert.record("bispectral", check_bispectral(params, table));
    cert.record("spectrum", check_spectrum(params, table));
    if !interior {
        cert.record("degenerate-blocks", check_blocks(params, table));
    }
    cert
}

fn check_paths(params: &ParamSet, table: &RecurrenceTable) -> Outcome {
    let closed = RecurrenceTable::closed_form(params);
    let composed = RecurrenceTable::from_wilson(params);
    if let Some(e) = closed.differing_entries(&composed).first() {
        return Err(format!("closed form and A/C composition differ at {e}"));
    }
    match table.differing_entries(&closed).first() {
        Some(e) => Err(format!("{e} = {} but closed form gives {}", table.get(*e), closed.get(*e))),
        None => Ok(format!("{} b and {} u entries agree on both routes", params.max_degree() + 1, params.max_degree())),
    }
}

fn check_positivity(params: &ParamSet, table: &RecurrenceTable) -> Outcome {
    let skip = params.vanishing_u_index();
    for n in 1..=params.max_degree() {
        let u = table.u(n);
        if Some(n) == skip {
            if !u.is_zero() {
                return Err(format!("u_{n} = {u} should vanish at alpha = {}", params.alpha()));
            }
        } else if !u.is_positive() {
            return Err(format!("u_{n} = {u} is not positive"));
        }
    }
    Ok("u_n > 0".into())
}

fn check_mirror(params: &ParamSet, table: &RecurrenceTable) -> Outcome {
    let j = params.j();
    let allowed: Vec<Entry> = if params.alpha() == &rat(1, 2) {
        vec![]
    } else if params.is_odd() {
        vec![Entry::B(j), Entry::B(j + 1)]
    } else {
        vec![Entry::U(j), Entry::U(j + 1)]
    };
    let broken = table.mirror_breaking();
    match broken.iter().find(|e| !allowed.contains(e)) {
        Some(e) => Err(format!("mirror symmetry broken at {e}")),
        None => Ok(format!("{} entries off-mirror", broken.len())),
    }
}

fn sample_lambdas(count: usize) -> Vec<Rational> {
    (0..count as i64).map(|k| rat(7 * k - 31, 2 * k + 3)).collect()
}

fn check_explicit(params: &ParamSet, table: &RecurrenceTable) -> Outcome {
    let top = if params.alpha().is_zero() { params.j() } else { params.max_degree() };
    for lambda in sample_lambdas(6) {
        for n in 0..=top {
            let explicit = eval_explicit(params, n, &lambda).map_err(|e| e.to_string())?;
            let rec = eval_poly(table, n, lambda.clone()).map_err(|e| e.to_string())?;
            if explicit != rec {
                return Err(format!("P_{n}({lambda}) differs between routes"));
            }
        }
    }
    Ok(format!("degrees 0..={top} at 6 points"))
}

fn check_char_poly(params: &ParamSet, table: &RecurrenceTable) -> Outcome {
    let big_n = params.max_degree();
    for lambda in sample_lambdas(big_n + 2) {
        let rec = eval_poly(table, big_n + 1, lambda.clone()).map_err(|e| e.to_string())?;
        if rec != char_poly_explicit(params, &lambda) {
            return Err(format!("P_(N+1)({lambda}) differs from the node product"));
        }
    }
    for (i, node) in BiLattice::node_values(params).into_iter().enumerate() {
        if !eval_poly(table, big_n + 1, node).map_err(|e| e.to_string())?.is_zero() {
            return Err(format!("P_(N+1) does not vanish at node {i}"));
        }
    }
    Ok(format!("{} points, {} nodes", big_n + 2, big_n + 1))
}

fn check_weights(params: &ParamSet, table: &RecurrenceTable) -> Outcome {
    let closed = weights_closed_form(params).map_err(|e| e.to_string())?;
    let alpha = params.alpha();
    if closed.family_sum(Family::A) != Rational::one() - alpha || &closed.family_sum(Family::C) != alpha {
        return Err("family sums differ from 1-alpha, alpha".into());
    }
    if params.degenerate_alpha() {
        let dead = if alpha.is_zero() { Family::C } else { Family::A };
        if !closed.family_all_zero(dead) {
            return Err(format!("{dead}-family weights should vanish"));
        }
        return Ok(format!("{dead}-family weights vanish"));
    }
    if !closed.all_positive() {
        return Err("non-positive weight".into());
    }
    let spectral = weights_spectral(params, table).map_err(|e| e.to_string())?;
    match closed.weights.iter().zip(&spectral.weights).position(|(x, y)| x != y) {
        Some(i) => Err(format!("weight {i}: closed form {} vs spectral {}", closed.weights[i], spectral.weights[i])),
        None => Ok("closed form = spectral formula".into()),
    }
}

fn check_gram(params: &ParamSet, table: &RecurrenceTable) -> Outcome {
    let weights = weights_closed_form(params).map_err(|e| e.to_string())?;
    let report = orthogonality_check(params, table, &weights);
    if report.is_exact() {
        Ok("Gram matrix = diag(u_1..u_n)".into())
    } else {
        Err(format!("off-diagonal max {}", report.offdiag_max))
    }
}

fn check_bispectral(params: &ParamSet, table: &RecurrenceTable) -> Outcome {
    let points = certificate_points(certificate_size(params.max_degree()));
    for x in &points {
        for n in 0..=params.max_degree() {
            let r = difference_residual(params, table, n, x).map_err(|e| e.to_string())?;
            if !r.is_zero() {
                return Err(format!("degree {n}, x = {x}: residual {r}"));
            }
        }
    }
    let levels: std::collections::BTreeSet<i64> =
        (0..=params.max_degree()).map(|n| eigenvalue(params.max_degree(), n)).collect();
    if levels.len() != spectrum_degeneracy(params).len() {
        return Err("eigenvalue levels disagree with the degeneracy map".into());
    }
    Ok(format!("{} points x {} degrees", points.len(), params.max_degree() + 1))
}

fn check_spectrum(params: &ParamSet, table: &RecurrenceTable) -> Outcome {
    let matrix = jacobi_matrix(table).map_err(|e| e.to_string())?;
    let ev = eigenvalues(&matrix).map_err(|e| e.to_string())?;
    let lattice = BiLattice::new(params).map_err(|e| e.to_string())?;
    let worst = ev
        .iter()
        .zip(lattice.sorted_values())
        .map(|(x, node)| (x - to_f64(&node)).abs())
        .fold(0.0, f64::max);
    if worst <= SPECTRUM_TOLERANCE {
        Ok(format!("max deviation {worst:.3e}"))
    } else {
        Err(format!("max deviation {worst:.3e} exceeds {SPECTRUM_TOLERANCE:e}"))
    }
}

fn check_blocks(params: &ParamSet, table: &RecurrenceTable) -> Outcome {
    let split = block_split(params).map_err(|e| e.to_string())?;
    let observed = observed_blocks(table);
    if observed == [split.first, split.second] {
        Ok(format!("blocks {}x{} and {}x{}", split.first, split.first, split.second, split.second))
    } else {
        Err(format!("expected blocks {:?}, table gives {observed:?}", [split.first, split.second]))
    }
}

/// Node sign pattern at `alpha = 1/2`, exposed for reporting.
pub fn persymmetric_sign_report(params: &ParamSet) -> Option<(bool, bool)> {
    let half = params.with_alpha(rat(1, 2)).ok()?;
    let table = recurrence_table(&half).ok()?;
    let pattern = node_sign_pattern(&half, &table).ok()?;
    Some((pattern.squares_match, pattern.alternates && pattern.matches_expected_order()))
}
