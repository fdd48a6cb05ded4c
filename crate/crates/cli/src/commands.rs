use para_racah::bispectral::{certificate_points, certificate_size, difference_residual};
use para_racah::certify::{certify_table, SPECTRUM_TOLERANCE};
use para_racah::degenerations::{doubling_thetas, dual_hahn_check, empirical_order, pk_convergence_study};
use para_racah::jacobi::{eigenvalues, jacobi_matrix};
use para_racah::params::spectrum_degeneracy;
use para_racah::recurrence::Entry;
use para_racah::scalar::{parse_rational, rat, to_f64, Rational};
use para_racah::spectral::{orthogonality_check, weights_closed_form, weights_spectral, BiLattice, Family};
use para_racah::{recurrence_table, validate, ParamSet};
use serde_json::{json, Value};

use crate::config::{load_config, load_table, RawParams};
use crate::output::{float, Document};
use crate::{CliError, Command, Options};

type Outcome = Result<(Document, Result<(), CliError>), CliError>;

fn rational_flag(name: &str, value: &Option<String>) -> Result<Option<Rational>, CliError> {
    value
        .as_deref()
        .map(|s| parse_rational(s).map_err(|e| CliError::Usage(format!("--{name}: {e}"))))
        .transpose()
}

fn raw_params(opts: &Options) -> Result<RawParams, CliError> {
    let mut raw = match &opts.config {
        Some(path) => load_config(path)?,
        None => RawParams::default(),
    };
    raw.max_degree = opts.max_degree.or(raw.max_degree);
    raw.a = rational_flag("a", &opts.a)?.or(raw.a);
    raw.c = rational_flag("c", &opts.c)?.or(raw.c);
    raw.alpha = rational_flag("alpha", &opts.alpha)?.or(raw.alpha);
    Ok(raw)
}

fn required<T>(value: Option<T>, name: &str) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::Usage(format!("missing parameter {name} (flag or config)")))
}

fn params(opts: &Options) -> Result<ParamSet, CliError> {
    let raw = raw_params(opts)?;
    let n = required(raw.max_degree, "N")?;
    let a = required(raw.a, "a")?;
    let c = required(raw.c, "c")?;
    Ok(validate(n, a, c, raw.alpha.unwrap_or_else(|| rat(1, 2)))?)
}

fn labeled(doc: &mut Document, p: &ParamSet) {
    doc.param("N", p.max_degree())
        .param("a", p.a())
        .param("c", p.c())
        .param("alpha", p.alpha())
        .param("regime", p.regime());
}

pub fn dispatch(command: Command, opts: &Options) -> Outcome {
    match command {
        Command::Coeffs => coeffs(opts),
        Command::Grid => grid(opts),
        Command::Weights => weights(opts),
        Command::Gram => gram(opts),
        Command::Bispectral => bispectral(opts),
        Command::Eigen => eigen(opts),
        Command::PkLimit => pk_limit(opts),
        Command::DualHahn => dual_hahn(opts),
        Command::Certify => certify(opts),
    }
}

fn strings<'a>(xs: impl IntoIterator<Item = &'a Rational>) -> Value {
    Value::Array(xs.into_iter().map(|x| Value::String(x.to_string())).collect())
}

fn coeffs(opts: &Options) -> Outcome {
    let p = params(opts)?;
    let table = recurrence_table(&p)?;
    let mut doc = Document::new("coeffs", &["n", "b", "u"]);
    labeled(&mut doc, &p);
    for n in 0..=p.max_degree() {
        doc.push(vec![n.to_string(), table.b(n).to_string(), table.u(n).to_string()]);
    }
    doc.extra.insert("b".into(), strings(table.b_values()));
    doc.extra.insert("u".into(), strings(table.u_interior()));
    Ok((doc, Ok(())))
}

fn grid(opts: &Options) -> Outcome {
    let p = params(opts)?;
    let lattice = BiLattice::new(&p)?;
    let mut rank = vec![0; lattice.len()];
    for (r, &i) in lattice.sorted_view().iter().enumerate() {
        rank[i] = r;
    }
    let mut doc = Document::new("grid", &["index", "label", "s", "lambda", "lambda_f64", "sorted_rank"]);
    labeled(&mut doc, &p);
    for (i, node) in lattice.nodes().iter().enumerate() {
        doc.push(vec![
            i.to_string(),
            node.family.to_string(),
            node.s.to_string(),
            node.lambda.to_string(),
            float(to_f64(&node.lambda), opts.precision),
            rank[i].to_string(),
        ]);
    }
    Ok((doc, Ok(())))
}

fn weights(opts: &Options) -> Outcome {
    let p = params(opts)?;
    let table = recurrence_table(&p)?;
    let lattice = BiLattice::new(&p)?;
    let closed = weights_closed_form(&p)?;
    let spectral = if p.degenerate_alpha() { None } else { Some(weights_spectral(&p, &table)?) };
    let mut doc = Document::new("weights", &["index", "label", "s", "lambda", "w_closed", "w_spectral"]);
    labeled(&mut doc, &p);
    for (i, node) in lattice.nodes().iter().enumerate() {
        doc.push(vec![
            i.to_string(),
            node.family.to_string(),
            node.s.to_string(),
            node.lambda.to_string(),
            closed.weights[i].to_string(),
            spectral.as_ref().map_or_else(|| "n/a".to_string(), |w| w.weights[i].to_string()),
        ]);
    }
    doc.extra.insert("sum_A".into(), json!(closed.family_sum(Family::A).to_string()));
    doc.extra.insert("sum_C".into(), json!(closed.family_sum(Family::C).to_string()));
    doc.extra.insert("all_positive".into(), json!(closed.all_positive()));
    let agree = spectral.as_ref().map(|w| *w == closed);
    doc.extra.insert("paths_agree".into(), json!(agree));
    Ok((doc, Ok(())))
}

fn gram(opts: &Options) -> Outcome {
    let p = params(opts)?;
    let table = recurrence_table(&p)?;
    let w = weights_closed_form(&p)?;
    let report = orthogonality_check(&p, &table, &w);
    let mut doc = Document::new("gram", &["n", "gram_nn", "u_product", "ratio"]);
    labeled(&mut doc, &p);
    for n in 0..=p.max_degree() {
        doc.push(vec![
            n.to_string(),
            report.gram[n][n].to_string(),
            table.u_product(n).to_string(),
            report.diagonal_ratios[n].as_ref().map_or_else(|| "n/a".to_string(), Rational::to_string),
        ]);
    }
    doc.extra.insert("offdiag_max".into(), json!(report.offdiag_max.to_string()));
    doc.extra.insert("exact".into(), json!(report.is_exact()));
    Ok((doc, Ok(())))
}

fn bispectral(opts: &Options) -> Outcome {
    let p = params(opts)?;
    let table = recurrence_table(&p)?;
    let mut doc = Document::new("bispectral", &["n", "x", "residual_re", "residual_im"]);
    labeled(&mut doc, &p);
    let mut all_zero = true;
    for n in 0..=p.max_degree() {
        for x in certificate_points(certificate_size(p.max_degree())) {
            let r = difference_residual(&p, &table, n, &x)?;
            all_zero &= r.is_zero();
            doc.push(vec![n.to_string(), x.to_string(), r.re.to_string(), r.im.to_string()]);
        }
    }
    doc.extra.insert("all_zero".into(), json!(all_zero));
    Ok((doc, Ok(())))
}

fn eigen(opts: &Options) -> Outcome {
    let p = params(opts)?;
    let table = recurrence_table(&p)?;
    let eig = eigenvalues(&jacobi_matrix(&table)?)?;
    let nodes = BiLattice::new(&p)?.sorted_values();
    let mut doc = Document::new("eigen", &["index", "eigenvalue", "lambda", "abs_error"]);
    labeled(&mut doc, &p);
    let mut max_err = 0.0f64;
    for (i, (e, node)) in eig.iter().zip(&nodes).enumerate() {
        let err = (e - to_f64(node)).abs();
        max_err = max_err.max(err);
        doc.push(vec![i.to_string(), float(*e, opts.precision), node.to_string(), float(err, opts.precision)]);
    }
    let degeneracy: serde_json::Map<String, Value> =
        spectrum_degeneracy(&p).into_iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
    doc.extra.insert("max_abs_error".into(), json!(max_err));
    doc.extra.insert("tolerance".into(), json!(SPECTRUM_TOLERANCE));
    doc.extra.insert("degeneracy".into(), Value::Object(degeneracy));
    Ok((doc, Ok(())))
}

fn pk_limit(opts: &Options) -> Outcome {
    let raw = raw_params(opts)?;
    let n = required(raw.max_degree, "N")?;
    let delta = required(rational_flag("delta", &opts.delta)?, "delta")?;
    let thetas = doubling_thetas(opts.theta_max);
    if thetas.len() < 2 {
        return Err(CliError::Usage("--theta-max must be at least 32".into()));
    }
    let rows = pk_convergence_study(n, &delta, &thetas)?;
    let mut doc = Document::new("pk-limit", &["theta", "b_err", "u_err", "grid_err", "weight_rel_err"]);
    doc.param("N", n).param("delta", &delta).param("alpha", "1/2");
    let fp = |x: f64| float(x, opts.precision);
    for r in &rows {
        doc.push(vec![format!("{}", r.theta), fp(r.b_err), fp(r.u_err), fp(r.grid_err), fp(r.weight_rel_err)]);
    }
    let ts: Vec<f64> = rows.iter().map(|r| r.theta).collect();
    let order = |f: fn(&para_racah::degenerations::PkErrorRow) -> f64| {
        empirical_order(&ts, &rows.iter().map(f).collect::<Vec<_>>())
    };
    doc.extra.insert(
        "orders".into(),
        json!({
            "b": order(|r| r.b_err),
            "u": order(|r| r.u_err),
            "grid": order(|r| r.grid_err),
            "weights": order(|r| r.weight_rel_err),
        }),
    );
    Ok((doc, Ok(())))
}

fn dual_hahn(opts: &Options) -> Outcome {
    let raw = raw_params(opts)?;
    let n = required(raw.max_degree, "N")?;
    let a = required(raw.a, "a")?;
    let report = dual_hahn_check(n, &a)?;
    let mut doc = Document::new("dual-hahn", &["entry", "transformed", "dual_hahn", "match"]);
    labeled(&mut doc, &report.params);
    let entries = (0..=n).map(Entry::B).chain((1..=n).map(Entry::U));
    for e in entries {
        let (x, y) = (report.transformed.get(e), report.reference.get(e));
        doc.push(vec![e.to_string(), x.to_string(), y.to_string(), (x == y).to_string()]);
    }
    doc.extra.insert("gamma".into(), json!(report.gamma.to_string()));
    doc.extra.insert("single_lattice".into(), json!(report.single_lattice));
    doc.extra.insert("nodes_match".into(), json!(report.nodes_match));
    doc.extra.insert("matches".into(), json!(report.matches()));
    let verdict = if report.matches() {
        Ok(())
    } else {
        Err(CliError::CheckFailed(match report.first_mismatch {
            Some(e) => format!("dual-Hahn mismatch at {e}"),
            None => "dual-Hahn lattice mismatch".into(),
        }))
    };
    Ok((doc, verdict))
}

fn certify(opts: &Options) -> Outcome {
    let p = params(opts)?;
    let table = match &opts.table {
        Some(path) => {
            let t = load_table(path)?;
            if t.max_degree() != p.max_degree() {
                return Err(CliError::Usage(format!(
                    "table has degree {} but N = {}",
                    t.max_degree(),
                    p.max_degree()
                )));
            }
            t
        }
        None => recurrence_table(&p)?,
    };
    let cert = certify_table(&p, &table);
    let mut doc = Document::new("certify", &["check", "passed", "detail"]);
    labeled(&mut doc, &p);
    for c in &cert.checks {
        doc.push(vec![c.name.to_string(), c.passed.to_string(), c.detail.clone()]);
    }
    doc.extra.insert("all_passed".into(), json!(cert.all_passed()));
    let failed: Vec<&str> = cert.failures().map(|c| c.name).collect();
    let verdict = if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::CheckFailed(format!("failed checks: {}", failed.join(", "))))
    };
    Ok((doc, verdict))
}
