//! Browser bindings. Every export takes rationals as `"p/q"` strings and
//! returns a JSON document; failures come back as `{"error": "..."}`.

use para_racah::degenerations::{doubling_thetas, empirical_order, pk_convergence_study};
use para_racah::jacobi::{eigenvalues, jacobi_matrix};
use para_racah::scalar::{parse_rational, to_f64, Rational};
use para_racah::spectral::{weights_closed_form, BiLattice, Family};
use para_racah::{recurrence_table, validate, ParamSet};
use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

type Outcome = Result<Value, String>;

fn parse(name: &str, text: &str) -> Result<Rational, String> {
    parse_rational(text.trim()).map_err(|e| format!("{name}: {e}"))
}

fn params(n: u32, a: &str, c: &str, alpha: &str) -> Result<ParamSet, String> {
    validate(n as usize, parse("a", a)?, parse("c", c)?, parse("alpha", alpha)?).map_err(|e| e.to_string())
}

fn render(outcome: Outcome) -> String {
    outcome.unwrap_or_else(|e| json!({ "error": e })).to_string()
}

/// Bi-lattice nodes with closed-form weights.
pub fn lattice(n: u32, a: &str, c: &str, alpha: &str) -> Outcome {
    let p = params(n, a, c, alpha)?;
    let nodes = BiLattice::new(&p).map_err(|e| e.to_string())?;
    let w = weights_closed_form(&p).map_err(|e| e.to_string())?;
    let rows: Vec<Value> = nodes
        .nodes()
        .iter()
        .zip(&w.weights)
        .map(|(node, wt)| {
            json!({
                "label": node.family.to_string(),
                "s": node.s,
                "lambda": node.lambda.to_string(),
                "lambda_f64": to_f64(&node.lambda),
                "weight": wt.to_string(),
                "weight_f64": to_f64(wt),
            })
        })
        .collect();
    Ok(json!({
        "regime": p.regime().name(),
        "nodes": rows,
        "sum_A": w.family_sum(Family::A).to_string(),
        "sum_C": w.family_sum(Family::C).to_string(),
    }))
}

/// Orthonormal `P_n / sqrt(u_1...u_n)` sampled on a grid covering the nodes,
/// plus Jacobi-matrix eigenvalues against the exact nodes.
pub fn curves(n: u32, a: &str, c: &str, alpha: &str, samples: u32) -> Outcome {
    let p = params(n, a, c, alpha)?;
    let t = recurrence_table(&p).map_err(|e| e.to_string())?;
    let nodes = BiLattice::new(&p).map_err(|e| e.to_string())?.sorted_values();
    let (lo, hi) = (to_f64(&nodes[0]), to_f64(nodes.last().unwrap()));
    let pad = 0.05 * (hi - lo).max(1.0);
    let samples = samples.max(2) as usize;
    let b: Vec<f64> = t.b_values().iter().map(to_f64).collect();
    let u: Vec<f64> = (0..=p.max_degree()).map(|k| to_f64(t.u(k))).collect();
    let norms: Vec<f64> = (0..=p.max_degree()).map(|k| to_f64(&t.u_product(k)).sqrt()).collect();
    let xs: Vec<f64> = (0..samples).map(|i| lo - pad + (hi - lo + 2.0 * pad) * i as f64 / (samples - 1) as f64).collect();
    let mut ys = vec![Vec::with_capacity(samples); p.max_degree() + 1];
    for &x in &xs {
        let (mut prev, mut cur) = (0.0, 1.0);
        for k in 0..=p.max_degree() {
            ys[k].push(if norms[k] > 0.0 { cur / norms[k] } else { f64::NAN });
            let next = (x - b[k]) * cur - if k > 0 { u[k] * prev } else { 0.0 };
            prev = cur;
            cur = next;
        }
    }
    let eig = eigenvalues(&jacobi_matrix(&t).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let deviation = eig.iter().zip(&nodes).map(|(e, x)| (e - to_f64(x)).abs()).fold(0.0, f64::max);
    Ok(json!({
        "lambda": xs,
        "curves": ys,
        "eigenvalues": eig,
        "nodes": nodes.iter().map(to_f64).collect::<Vec<_>>(),
        "max_deviation": deviation,
    }))
}

/// Para-Krawtchouk convergence errors for `θ = 16, 32, ..., theta_max`.
pub fn pk_study(n: u32, delta: &str, theta_max: u32) -> Outcome {
    let delta = parse("delta", delta)?;
    let thetas = doubling_thetas(theta_max as u64);
    if thetas.len() < 2 {
        return Err("theta_max must be at least 32".into());
    }
    let rows = pk_convergence_study(n as usize, &delta, &thetas).map_err(|e| e.to_string())?;
    let ts: Vec<f64> = rows.iter().map(|r| r.theta).collect();
    let col = |f: fn(&para_racah::degenerations::PkErrorRow) -> f64| rows.iter().map(f).collect::<Vec<f64>>();
    let (b, u, grid, w) = (col(|r| r.b_err), col(|r| r.u_err), col(|r| r.grid_err), col(|r| r.weight_rel_err));
    Ok(json!({
        "theta": ts,
        "b_err": b,
        "u_err": u,
        "grid_err": grid,
        "weight_rel_err": w,
        "orders": {
            "b": empirical_order(&ts, &b),
            "u": empirical_order(&ts, &u),
            "grid": empirical_order(&ts, &grid),
            "weights": empirical_order(&ts, &w),
        },
    }))
}

#[wasm_bindgen]
pub fn lattice_json(n: u32, a: &str, c: &str, alpha: &str) -> String {
    render(lattice(n, a, c, alpha))
}

#[wasm_bindgen]
pub fn curves_json(n: u32, a: &str, c: &str, alpha: &str, samples: u32) -> String {
    render(curves(n, a, c, alpha, samples))
}

#[wasm_bindgen]
pub fn pk_study_json(n: u32, delta: &str, theta_max: u32) -> String {
    render(pk_study(n, delta, theta_max))
}
