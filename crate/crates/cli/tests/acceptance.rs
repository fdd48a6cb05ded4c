//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Run with `cargo test -p para-racah-cli --test acceptance`.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::Instant;

use common::{open_fraction, rng, sample, sample_in};
use num_traits::{One, Zero};
use para_racah::bispectral::{certificate_points, certificate_size, d_of_x, difference_residual};
use para_racah::degenerations::{doubling_thetas, dual_hahn_check, empirical_order, pk_convergence_study};
use para_racah::explicit::{char_poly_explicit, eval_explicit};
use para_racah::jacobi::{block_split, eigenvalues, jacobi_matrix, observed_blocks};
use para_racah::params::spectrum_degeneracy;
use para_racah::recurrence::{eval_poly, Entry, RecurrenceTable};
use para_racah::scalar::{int, parse_rational, rat, to_f64, Gaussian, Rational};
use para_racah::spectral::{
    node_sign_pattern, orthogonality_check, weights_closed_form, weights_spectral, BiLattice, Family,
};
use para_racah::{recurrence_table, validate, ParamSet, Parity, Regime};
use serde_json::Value;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn label(p: &ParamSet) -> String {
    format!("N={} a={} c={} alpha={}", p.max_degree(), p.a(), p.c(), p.alpha())
}

const PARITIES: [Parity; 2] = [Parity::Odd, Parity::Even];

fn coefficient_paths() -> Check {
    let mut r = rng(1);
    let mut count = 0;
    for parity in PARITIES {
        for _ in 0..60 {
            let p = sample(&mut r, parity, 21);
            let closed = RecurrenceTable::closed_form(&p);
            let wilson = RecurrenceTable::from_wilson(&p);
            ensure(closed == wilson, || format!("{}: {:?}", label(&p), closed.differing_entries(&wilson)))?;
            count += 1;
        }
    }
    Ok(format!("{count} sets (60 per parity), N <= 21, exact"))
}

fn evaluation_paths() -> Check {
    let mut r = rng(2);
    let mut sets = 0;
    for parity in PARITIES {
        for k in 0..10 {
            let mut p = sample(&mut r, parity, 11);
            if k >= 8 {
                p = p.with_alpha(int(1)).map_err(|e| e.to_string())?;
            }
            let t = recurrence_table(&p).map_err(|e| e.to_string())?;
            for _ in 0..20 {
                let lambda = open_fraction(&mut r, -30, 10);
                for n in 0..=p.max_degree() {
                    let x = eval_explicit(&p, n, &lambda).map_err(|e| e.to_string())?;
                    let y = eval_poly(&t, n, lambda.clone()).map_err(|e| e.to_string())?;
                    ensure(x == y, || format!("{}: n={n} lambda={lambda}", label(&p)))?;
                }
            }
            sets += 1;
        }
    }
    Ok(format!("{sets} sets x 20 lambda, all n, exact"))
}

fn characteristic_polynomial() -> Check {
    let mut r = rng(3);
    let mut sets = 0;
    for parity in PARITIES {
        for _ in 0..10 {
            let p = sample(&mut r, parity, 13);
            let t = recurrence_table(&p).map_err(|e| e.to_string())?;
            let n1 = p.max_degree() + 1;
            for _ in 0..p.max_degree() + 2 {
                let lambda = open_fraction(&mut r, -60, 10);
                let rec = eval_poly(&t, n1, lambda.clone()).map_err(|e| e.to_string())?;
                ensure(rec == char_poly_explicit(&p, &lambda), || format!("{}: lambda={lambda}", label(&p)))?;
            }
            for node in BiLattice::new(&p).map_err(|e| e.to_string())?.nodes() {
                let v = eval_poly(&t, n1, node.lambda.clone()).map_err(|e| e.to_string())?;
                ensure(v.is_zero(), || format!("{}: P_(N+1) nonzero at {}", label(&p), node.lambda))?;
            }
            sets += 1;
        }
    }
    Ok(format!("{sets} sets, N+2 points plus all nodes, exact"))
}

fn orthogonality() -> Check {
    let mut r = rng(4);
    for n in 1..=15 {
        for _ in 0..2 {
            let parity = if n % 2 == 1 { Parity::Odd } else { Parity::Even };
            let mut p = sample(&mut r, parity, n);
            while p.max_degree() != n {
                p = sample(&mut r, parity, n);
            }
            let t = recurrence_table(&p).map_err(|e| e.to_string())?;
            let w = weights_closed_form(&p).map_err(|e| e.to_string())?;
            let g = orthogonality_check(&p, &t, &w).gram;
            for i in 0..=n {
                for k in 0..=n {
                    let want = if i == k { t.u_product(i) } else { Rational::zero() };
                    ensure(g[i][k] == want, || format!("{}: G[{i}][{k}] = {}", label(&p), g[i][k]))?;
                }
            }
        }
    }
    Ok("N = 1..=15, two sets each, Gram = diag(u_1...u_n) exactly".into())
}

fn weights() -> Check {
    let mut r = rng(5);
    let mut sets = 0;
    for parity in PARITIES {
        for _ in 0..20 {
            let p = sample(&mut r, parity, 13);
            let t = recurrence_table(&p).map_err(|e| e.to_string())?;
            let closed = weights_closed_form(&p).map_err(|e| e.to_string())?;
            let spectral = weights_spectral(&p, &t).map_err(|e| e.to_string())?;
            ensure(closed == spectral, || format!("{}: closed != spectral", label(&p)))?;
            ensure(closed.family_sum(Family::A) == Rational::one() - p.alpha(), || format!("{}: A sum", label(&p)))?;
            ensure(&closed.family_sum(Family::C) == p.alpha(), || format!("{}: C sum", label(&p)))?;
            ensure(closed.all_positive(), || format!("{}: nonpositive weight", label(&p)))?;
            sets += 1;
        }
    }
    Ok(format!("{sets} sets: closed = spectral, family sums 1-alpha and alpha, all positive"))
}

fn persymmetry() -> Check {
    let mut r = rng(6);
    let mut sets = 0;
    for parity in PARITIES {
        for _ in 0..10 {
            let p = sample(&mut r, parity, 13).with_alpha(rat(1, 2)).map_err(|e| e.to_string())?;
            let n = p.max_degree();
            let j = p.j();
            let half = recurrence_table(&p).map_err(|e| e.to_string())?;
            for k in 0..=n {
                ensure(half.b(k) == half.b(n - k), || format!("{}: b_{k} != b_{}", label(&p), n - k))?;
            }
            for k in 1..=n {
                ensure(half.u(k) == half.u(n + 1 - k), || format!("{}: u_{k} != u_{}", label(&p), n + 1 - k))?;
            }
            let pattern = node_sign_pattern(&p, &half).map_err(|e| e.to_string())?;
            ensure(pattern.squares_match, || format!("{}: P_N^2 != u_1...u_N at a node", label(&p)))?;
            ensure(pattern.alternates && pattern.matches_expected_order(), || {
                format!("{}: signs {:?}", label(&p), pattern.signs)
            })?;

            let mut al = common::alpha(&mut r);
            while al == rat(1, 2) {
                al = common::alpha(&mut r);
            }
            let q = p.with_alpha(al).map_err(|e| e.to_string())?;
            let table = recurrence_table(&q).map_err(|e| e.to_string())?;
            let (changed, breaking) = match parity {
                Parity::Odd => (vec![Entry::B(j), Entry::B(j + 1), Entry::U(j + 1)], vec![Entry::B(j), Entry::B(j + 1)]),
                Parity::Even => (vec![Entry::U(j), Entry::U(j + 1)], vec![Entry::U(j), Entry::U(j + 1)]),
            };
            let got: BTreeSet<String> = table.differing_entries(&half).iter().map(Entry::to_string).collect();
            let want: BTreeSet<String> = changed.iter().map(Entry::to_string).collect();
            ensure(got == want, || format!("{}: changed entries {got:?}, expected {want:?}", label(&q)))?;
            let got: BTreeSet<String> = table.mirror_breaking().iter().map(Entry::to_string).collect();
            let want: BTreeSet<String> = breaking.iter().map(Entry::to_string).collect();
            ensure(got == want, || format!("{}: mirror-breaking {got:?}, expected {want:?}", label(&q)))?;
            sets += 1;
        }
    }
    Ok(format!(
        "{sets} sets: mirror symmetry, P_N^2 = u_1...u_N with sign (-1)^(N-s); \
         alpha != 1/2 breaks the mirror only at b_j,b_(j+1) (odd) / u_j,u_(j+1) (even)"
    ))
}

fn bispectrality() -> Check {
    let mut r = rng(7);
    let mut evaluations = 0;
    for parity in PARITIES {
        for _ in 0..6 {
            let p = sample(&mut r, parity, 9);
            let t = recurrence_table(&p).map_err(|e| e.to_string())?;
            let points = certificate_points(certificate_size(p.max_degree()));
            for n in 0..=p.max_degree() {
                for x in &points {
                    let res = difference_residual(&p, &t, n, x).map_err(|e| e.to_string())?;
                    ensure(res.is_zero(), || format!("{}: n={n} x={x} residual {res}", label(&p)))?;
                    evaluations += 1;
                }
            }
        }
    }
    Ok(format!("12 sets, 2N+4 points each, {evaluations} residuals all exactly zero"))
}

/// Eigenvalue of the difference operator on `P_n`, read off at one point.
fn operator_eigenvalue(p: &ParamSet, t: &RecurrenceTable, n: usize) -> Result<Rational, String> {
    for k in 1..40 {
        let x = Gaussian::real(rat(2 * k + 1, 3 * k + 7));
        let pn = |z: Gaussian| eval_poly(t, n, z.clone() * z).map_err(|e| e.to_string());
        let mid = pn(x.clone())?;
        if mid.is_zero() {
            continue;
        }
        let d = d_of_x(p, &x).map_err(|e| e.to_string())?;
        let db = d.conj();
        let lp = db.clone() * pn(x.clone() + Gaussian::i())? - (db + d.clone()) * mid.clone()
            + d * pn(x.clone() - Gaussian::i())?;
        let ev = lp.checked_div(&mid).ok_or("division by zero")?;
        if !ev.im.is_zero() {
            return Err(format!("{}: complex eigenvalue {ev} for n={n}", label(p)));
        }
        return Ok(ev.re);
    }
    Err(format!("{}: P_{n} vanished at every probe point", label(p)))
}

fn spectrum() -> Check {
    let mut r = rng(8);
    let mut worst = 0.0f64;
    for n in 1..=40 {
        let parity = if n % 2 == 1 { Parity::Odd } else { Parity::Even };
        let regime = match (parity, n % 4 < 2) {
            (Parity::Odd, true) => Regime::OddInner,
            (Parity::Odd, false) => Regime::OddOuter,
            (Parity::Even, true) => Regime::EvenInner,
            (Parity::Even, false) => Regime::EvenOuter,
        };
        let al = common::alpha(&mut r);
        let p = sample_in(&mut r, regime, n, al);
        let t = recurrence_table(&p).map_err(|e| e.to_string())?;
        let eig = eigenvalues(&jacobi_matrix(&t).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let nodes = BiLattice::new(&p).map_err(|e| e.to_string())?.sorted_values();
        ensure(eig.len() == nodes.len(), || format!("{}: {} eigenvalues", label(&p), eig.len()))?;
        let dev = eig.iter().zip(&nodes).map(|(e, x)| (e - to_f64(x)).abs()).fold(0.0, f64::max);
        ensure(dev <= 1e-10, || format!("{}: deviation {dev:e}", label(&p)))?;
        worst = worst.max(dev);

        if n <= 14 {
            let mut observed: BTreeMap<i64, usize> = BTreeMap::new();
            for k in 0..=n {
                let ev = operator_eigenvalue(&p, &t, k)?;
                ensure(ev.is_integer(), || format!("{}: eigenvalue {ev} not an integer", label(&p)))?;
                *observed.entry(ev.to_integer().try_into().unwrap()).or_insert(0) += 1;
            }
            let expected = spectrum_degeneracy(&p);
            ensure(observed == expected, || format!("{}: degeneracy {observed:?} vs {expected:?}", label(&p)))?;
        }
    }
    Ok(format!("N = 1..=40, max deviation {worst:.2e} <= 1e-10; degeneracy pattern matches for N <= 14"))
}

fn degenerate_alpha() -> Check {
    let mut r = rng(9);
    let mut sets = 0;
    for parity in PARITIES {
        for endpoint in [int(0), int(1)] {
            for _ in 0..4 {
                let p = sample(&mut r, parity, 13).with_alpha(endpoint.clone()).map_err(|e| e.to_string())?;
                let j = p.j();
                let (want_idx, want_blocks) = match (parity, endpoint.is_zero()) {
                    (Parity::Odd, _) => (j + 1, [j + 1, j + 1]),
                    (Parity::Even, true) => (j + 1, [j + 1, j]),
                    (Parity::Even, false) => (j, [j, j + 1]),
                };
                let t = recurrence_table(&p).map_err(|e| e.to_string())?;
                ensure(p.vanishing_u_index() == Some(want_idx), || format!("{}: index {:?}", label(&p), p.vanishing_u_index()))?;
                ensure(t.u(want_idx).is_zero(), || format!("{}: u_{want_idx} = {}", label(&p), t.u(want_idx)))?;
                let split = block_split(&p).map_err(|e| e.to_string())?;
                ensure([split.first, split.second] == want_blocks, || format!("{}: split {split:?}", label(&p)))?;
                ensure(observed_blocks(&t) == want_blocks.to_vec(), || format!("{}: blocks {:?}", label(&p), observed_blocks(&t)))?;
                let w = weights_closed_form(&p).map_err(|e| e.to_string())?;
                let (dead, live) = if endpoint.is_zero() { (Family::C, Family::A) } else { (Family::A, Family::C) };
                ensure(w.family_all_zero(dead) && !w.family_all_zero(live), || format!("{}: weights {:?}", label(&p), w.weights))?;
                let live_parity = usize::from(live == Family::C);
                ensure(w.weights.iter().enumerate().filter(|(i, _)| i % 2 == live_parity).all(|(_, x)| x > &Rational::zero()), || format!("{}: live family not positive", label(&p)))?;
                sets += 1;
            }
        }
    }
    Ok(format!("{sets} sets at alpha in {{0, 1}}: zero coupling, block sizes, one family of weights vanishes"))
}

fn pk_cases() -> Vec<(usize, Rational)> {
    let mut out = Vec::new();
    for n in 2..=7usize {
        out.push((n, rat(1, 3)));
        out.push((n, rat(3, 4)));
        if n % 2 == 1 {
            out.push((n, rat(-1, 2)));
        }
    }
    out
}

fn pk_coefficients_and_grid() -> Check {
    let thetas = doubling_thetas(4096);
    let ts: Vec<f64> = thetas.iter().map(to_f64).collect();
    let mut min_order = f64::INFINITY;
    for (n, delta) in pk_cases() {
        let rows = pk_convergence_study(n, &delta, &thetas).map_err(|e| e.to_string())?;
        for (name, errs) in [
            ("b", rows.iter().map(|r| r.b_err).collect::<Vec<_>>()),
            ("u", rows.iter().map(|r| r.u_err).collect()),
            ("grid", rows.iter().map(|r| r.grid_err).collect()),
        ] {
            match empirical_order(&ts, &errs) {
                Some(order) => {
                    ensure(order >= 0.9, || format!("N={n} delta={delta}: {name} order {order:.3}"))?;
                    min_order = min_order.min(order);
                }
                None => ensure(errs.iter().all(|e| *e == 0.0), || format!("N={n} delta={delta}: {name} order undefined"))?,
            }
        }
    }
    Ok(format!("{} (N, delta) cases, theta = 16..4096: min order {min_order:.3} >= 0.9", pk_cases().len()))
}

fn pk_weights() -> Check {
    let thetas = doubling_thetas(4096);
    let ts: Vec<f64> = thetas.iter().map(to_f64).collect();
    let mut worst = (0.0f64, 0, Rational::zero());
    let mut min_order = f64::INFINITY;
    for (n, delta) in pk_cases() {
        let rows = pk_convergence_study(n, &delta, &thetas).map_err(|e| e.to_string())?;
        let last = rows.last().expect("theta = 4096 present").weight_rel_err;
        if last > worst.0 {
            worst = (last, n, delta.clone());
        }
        let errs: Vec<f64> = rows.iter().map(|r| r.weight_rel_err).collect();
        if let Some(o) = empirical_order(&ts, &errs) {
            min_order = min_order.min(o);
        }
    }
    let summary = format!(
        "max relative weight error at theta=4096 is {:.3e} (N={}, delta={}); weight convergence order {min_order:.3}",
        worst.0, worst.1, worst.2
    );
    if worst.0 <= 1e-6 {
        Ok(summary)
    } else {
        Err(format!("{summary}; required <= 1e-6"))
    }
}

fn dual_hahn() -> Check {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/dual_hahn.json");
    let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
    let fixtures: Vec<Value> = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    let column = |v: &Value, key: &str| -> Vec<Rational> {
        v[key].as_array().unwrap().iter().map(|x| parse_rational(x.as_str().unwrap()).unwrap()).collect()
    };
    let mut parities = BTreeSet::new();
    for f in &fixtures {
        let n = f["N"].as_u64().unwrap() as usize;
        let a = parse_rational(f["a"].as_str().unwrap()).map_err(|e| e.to_string())?;
        let report = dual_hahn_check(n, &a).map_err(|e| e.to_string())?;
        let expected = RecurrenceTable::from_parts(column(f, "b"), column(f, "u")).map_err(|e| e.to_string())?;
        ensure(report.transformed == expected, || {
            format!("N={n} a={a}: differs at {:?}", report.transformed.differing_entries(&expected))
        })?;
        ensure(report.single_lattice && report.nodes_match, || format!("N={n} a={a}: lattice mismatch"))?;
        parities.insert(n % 2);
    }
    ensure(fixtures.len() >= 5 && parities.len() == 2, || "fixtures must cover >= 5 pairs and both parities".into())?;
    Ok(format!("{} fixture pairs, both parities, exact", fixtures.len()))
}

fn cli_certify() -> Check {
    let bin = env!("CARGO_BIN_EXE_para-racah");
    for (n, a, c, al) in [("3", "1", "5/4", "1/2"), ("4", "1/3", "-17/12", "1/5"), ("5", "1/4", "-11/4", "0")] {
        let out = Command::new(bin)
            .args(["certify", "--N", n, "--a", a, "--c", c, "--alpha", al])
            .output()
            .map_err(|e| e.to_string())?;
        ensure(out.status.code() == Some(0), || format!("N={n} a={a} c={c}: exit {:?}", out.status.code()))?;
    }

    let p = validate(4, int(1), rat(3, 2), rat(1, 3)).map_err(|e| e.to_string())?;
    let mut t = recurrence_table(&p).map_err(|e| e.to_string())?;
    t.set(Entry::B(1), t.b(1) + rat(1, 1000));
    let doc = serde_json::json!({
        "b": t.b_values().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "u": t.u_interior().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
    });
    let dir = std::env::temp_dir().join(format!("para-racah-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let table = dir.join("corrupted.json");
    std::fs::write(&table, doc.to_string()).map_err(|e| e.to_string())?;
    let out = Command::new(bin)
        .args(["certify", "--N", "4", "--a", "1", "--c", "3/2", "--alpha", "1/3", "--table"])
        .arg(&table)
        .output()
        .map_err(|e| e.to_string())?;
    let _ = std::fs::remove_dir_all(&dir);
    let stderr = String::from_utf8_lossy(&out.stderr);
    ensure(out.status.code().is_some_and(|c| c != 0), || "corrupted table certified".into())?;
    ensure(stderr.contains("coefficient-paths"), || format!("failing check not named: {stderr}"))?;
    Ok(format!("3 valid sets exit 0; corrupted b_1 exits {} with \"{}\"", out.status.code().unwrap(), stderr.trim()))
}

fn main() {
    let criteria: [(&str, &str, fn() -> Check); 13] = [
        ("1", "coefficient paths", coefficient_paths),
        ("2", "evaluation paths", evaluation_paths),
        ("3", "characteristic polynomial", characteristic_polynomial),
        ("4", "orthogonality", orthogonality),
        ("5", "weights", weights),
        ("6", "persymmetry and alpha-perturbation", persymmetry),
        ("7", "bispectrality", bispectrality),
        ("8", "spectrum", spectrum),
        ("9", "degenerate alpha", degenerate_alpha),
        ("10a", "para-Krawtchouk coefficients and grid", pk_coefficients_and_grid),
        ("10b", "para-Krawtchouk weights at theta=4096", pk_weights),
        ("11", "dual-Hahn", dual_hahn),
        ("12", "CLI certify", cli_certify),
    ];
    let mut failed = Vec::new();
    for (id, name, run) in criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {id:>3} PASS  {name}: {detail} ({secs:.1}s)"),
            Err(detail) => {
                println!("criterion {id:>3} FAIL  {name}: {detail} ({secs:.1}s)");
                failed.push(id);
            }
        }
    }
    if failed.is_empty() {
        println!("acceptance: all criteria passed");
    } else {
        println!("acceptance: failed {}", failed.join(", "));
        std::process::exit(1);
    }
}
