use serde_json::{json, Value};
use tokenalg::algebras::{self, LocalOptions, Recognition};
use tokenalg::johnson;
use tokenalg::linalg::rat;
use tokenalg::orthopoly::{self, FamilyPolys, PolyKind, PredistanceFamily};
use tokenalg::report::all_passed;
use tokenalg::spectra::{self, SpectralMode};
use tokenalg::tokens::{binomial, binomial_matrix, token_graph};
use tokenalg::{Check, Error, ExactMatrix, Graph, Rational};

use crate::report::{csv_row, Outcome, Timer};

/// Failure before any check could run. Maps to exit code 2.
#[derive(Debug)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<Error> for InputError {
    fn from(e: Error) -> Self {
        InputError(e.to_string())
    }
}

pub type CmdResult = Result<Outcome, InputError>;

pub struct Settings {
    pub mode: SpectralMode,
    pub tol: f64,
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

pub fn token(g: &Graph, k: usize, emit_binomial: bool, timer: &mut Timer) -> CmdResult {
    let f = timer.time("token graph", || token_graph(g, k))?;
    let n = g.n();
    let mut results = json!({
        "n": n,
        "k": k,
        "vertices": f.labels.iter().map(|s| s.label()).collect::<Vec<_>>(),
        "edges": f.graph.edges(),
        "edge_count": f.graph.m(),
    });
    if emit_binomial {
        let b = timer.time("binomial matrix", || binomial_matrix(n, k))?;
        results["binomial"] = to_value(&b);
    }
    let mut csv = csv_row(["u", "v", "label_u", "label_v"]);
    for &(u, v) in f.graph.edges() {
        csv += &csv_row([
            u.to_string(),
            v.to_string(),
            f.labels[u - 1].label(),
            f.labels[v - 1].label(),
        ]);
    }
    Ok(Outcome::new(results).csv(csv))
}

pub fn pair(g: &Graph, k: usize, s: &Settings, timer: &mut Timer) -> CmdResult {
    let table = timer.time("pairing table", || algebras::pairing_table(g, k, s.mode, s.tol))?;
    let law_tol = if table.exact { 0.0 } else { orthopoly::NUMERIC_TOL };
    let mut csv = csv_row(["level", "index", "lambda", "lambda_bar", "lambda_j"]);
    for r in &table.rows {
        csv += &csv_row([
            r.level.to_string(),
            r.index.to_string(),
            r.lambda.to_string(),
            r.lambda_bar.to_string(),
            r.lambda_j.to_string(),
        ]);
    }
    Ok(Outcome::new(to_value(&table))
        .section("pairing", vec![table.law_check(law_tol)])
        .csv(csv))
}

/// The graph whose edges are the nonzero off-diagonal entries of `m`.
fn support_graph(m: &ExactMatrix) -> Result<Graph, Error> {
    let n = m.rows();
    let edges = (0..n).flat_map(|r| (r + 1..n).map(move |c| (r, c)));
    let edges: Vec<(usize, usize)> = edges.filter(|&(r, c)| *m.get(r, c) != rat(0)).map(|(r, c)| (r + 1, c + 1)).collect();
    Graph::new(n, edges)
}

fn family_json(family: &PredistanceFamily) -> Value {
    match &family.polys {
        FamilyPolys::Exact(ps) => to_value(ps),
        FamilyPolys::Numeric(cs) => to_value(cs),
    }
}

fn sample_csv(family: &PredistanceFamily, points: usize) -> String {
    let lmax = family.spectrum.to_f64_values().into_iter().fold(0.0f64, f64::max);
    let mut header = vec!["x".to_string()];
    header.extend((0..family.len()).map(|i| format!("q{i}")));
    let mut out = csv_row(header);
    for step in 0..points {
        let x = lmax * step as f64 / (points - 1) as f64;
        let mut row = vec![x.to_string()];
        row.extend((0..family.len()).map(|i| family.eval_f64(i, x).to_string()));
        out += &csv_row(row);
    }
    out
}

pub struct PolySource {
    pub k: Option<usize>,
    pub alpha: Option<Rational>,
    pub beta: Option<Rational>,
}

pub fn poly(g: &Graph, kind: PolyKind, src: &PolySource, s: &Settings, timer: &mut Timer) -> CmdResult {
    let (graph, matrix, label) = match src.k {
        None => {
            if src.alpha.is_some() || src.beta.is_some() {
                return Err(InputError("--alpha/--beta need --k".into()));
            }
            let m = match kind {
                PolyKind::Laplacian => g.laplacian(),
                PolyKind::Adjacency => g.adjacency(),
            };
            (g.clone(), m, "G".to_string())
        }
        Some(k) => {
            let f = token_graph(g, k)?;
            match (kind, &src.alpha, &src.beta) {
                (PolyKind::Adjacency, None, None) => (f.graph.clone(), f.adjacency(), format!("A(F_{k}(G))")),
                (PolyKind::Adjacency, _, _) => {
                    return Err(InputError("--alpha/--beta combine Laplacians; use --kind laplacian".into()))
                }
                (PolyKind::Laplacian, None, None) => (f.graph.clone(), f.laplacian(), format!("L(F_{k}(G))")),
                (PolyKind::Laplacian, a, b) => {
                    let a = a.clone().unwrap_or_else(|| rat(1));
                    let b = b.clone().unwrap_or_else(|| rat(0));
                    if a < rat(0) || b < rat(0) {
                        return Err(InputError("--alpha and --beta must be nonnegative".into()));
                    }
                    let lbar = token_graph(&g.complement(), k)?.laplacian();
                    let m = f.laplacian().scale(&a).add(&lbar.scale(&b))?;
                    let sg = support_graph(&m)?;
                    (sg, m, format!("{a}·L_{k} + {b}·L̄_{k}"))
                }
            }
        }
    };

    let family = timer.time("predistance family", || orthopoly::family_for_matrix(kind, &matrix, s.mode, s.tol));
    let (family, hoffman) = match family {
        Ok(f) => {
            let h = timer.time("hoffman check", || match kind {
                PolyKind::Laplacian => orthopoly::hoffman_connected_check(&matrix, s.mode, s.tol),
                PolyKind::Adjacency => orthopoly::hoffman_regular_check(&graph, s.mode, s.tol),
            })?;
            (Some(f), h)
        }
        // adjacency families of disconnected graphs can be undefined; the
        // Hoffman check reports that case itself
        Err(Error::DegenerateNormalization { .. }) if kind == PolyKind::Adjacency => {
            (None, orthopoly::hoffman_regular_check(&graph, s.mode, s.tol)?)
        }
        Err(e) => return Err(e.into()),
    };

    let connected = graph.is_connected();
    let expected = match kind {
        PolyKind::Laplacian => connected,
        PolyKind::Adjacency => connected && graph.regular_degree().is_some(),
    };
    let check_name = match kind {
        PolyKind::Laplacian => "H_L(L) = J iff connected",
        PolyKind::Adjacency => "H(A) = J iff connected and regular",
    };
    let check = Check::from_failure(
        check_name,
        (hoffman.holds != expected).then(|| {
            format!(
                "H = J is {}, connected {connected}, max deviation {} at {:?}",
                hoffman.holds, hoffman.max_deviation, hoffman.witness
            )
        }),
    );

    let mut results = json!({
        "kind": kind,
        "matrix": label,
        "size": matrix.rows(),
        "hoffman": hoffman,
    });
    let csv = match &family {
        Some(f) => {
            results["spectrum"] = to_value(&f.spectrum);
            results["exact"] = json!(f.is_exact());
            results["polynomials"] = family_json(f);
            if let Some(h) = f.hoffman_exact() {
                results["hoffman_polynomial"] = to_value(&h);
            }
            sample_csv(f, 200)
        }
        None => {
            results["polynomials"] = Value::Null;
            csv_row(["x"])
        }
    };
    Ok(Outcome::new(results).section("hoffman", vec![check]).csv(csv))
}

pub fn johnson(n: usize, k: usize, verify: bool, s: &Settings, timer: &mut Timer) -> CmdResult {
    let ia = johnson::johnson_intersection_array(n, k)?;
    let results = json!({
        "n": n,
        "k": k,
        "vertices": binomial(n as i64, k as i64),
        "degree": ia.degree(),
        "intersection_array": ia,
        "quotient_matrix": johnson::quotient_matrix(&ia),
        "laplacian_spectrum": johnson::johnson_laplacian_spectrum(n, k)?,
    });
    let mut out = Outcome::new(results);
    if verify {
        let checks = timer.time("closed forms", || johnson::verify_johnson(n, k, s.mode, s.tol))?;
        out = out.section("closed forms", checks);
        let m = timer.time("M = BBᵀ", || johnson::verify_m_identity(n, k, None))?;
        out = out.section("M = BBᵀ", m.checks);
    }
    Ok(out)
}

pub fn algebra_local(g: &Graph, k: usize, alpha: Option<Rational>, beta: Option<Rational>, s: &Settings, timer: &mut Timer) -> CmdResult {
    let opts = LocalOptions {
        alpha,
        beta,
        mode: s.mode,
        tol: s.tol,
        ..LocalOptions::default()
    };
    let rep = timer.time("local algebra", || algebras::local_algebra(g, k, &opts))?;
    let checks = rep.checks.clone();
    Ok(Outcome::new(to_value(&rep)).section("local algebra", checks))
}

pub fn algebra_global(n: usize, k: usize, timer: &mut Timer) -> CmdResult {
    let rep = timer.time("global algebra", || algebras::global_algebra(n, k))?;
    let checks = rep.checks.clone();
    Ok(Outcome::new(to_value(&rep)).section("global algebra", checks))
}

pub fn recognize(s: &Graph, n: usize, k: usize, timer: &mut Timer) -> CmdResult {
    let rep = timer.time("recognition", || algebras::commute_iff_token(s, n, k))?;
    let recognized = Check::from_failure(
        "S = F_k(H) for some H",
        match &rep.recognition {
            Recognition::Accepted { .. } => None,
            Recognition::Rejected {
                edge,
                present,
                class_size,
            } => Some(format!(
                "class of {{{},{}}} has {present} of {class_size} edges",
                edge.0, edge.1
            )),
        },
    );
    let agree = Check::from_failure(
        "L(S) commutes with L(J − S) iff recognized",
        (!rep.agree).then(|| format!("commutes = {}, recognized = {}", rep.commutes, rep.recognition.is_accepted())),
    );
    let mut results = to_value(&rep);
    let mut out = Outcome::new(Value::Null);
    if let Recognition::Accepted { graph } = &rep.recognition {
        results["edge_list"] = json!(graph.to_edge_list());
        let mut csv = csv_row(["u", "v"]);
        for &(u, v) in graph.edges() {
            csv += &csv_row([u.to_string(), v.to_string()]);
        }
        out = out.csv(csv);
    }
    out.results = results;
    Ok(out.section("recognition", vec![recognized, agree]))
}

pub fn verify_all(g: &Graph, k: usize, s: &Settings, timer: &mut Timer) -> CmdResult {
    let mut sections = timer.time("suite", || algebras::verify_all(g, k, s.mode, s.tol))?;
    let m = timer.time("M = BBᵀ", || johnson::verify_m_identity(g.n(), k, Some(g)))?;
    sections.push(algebras::Section {
        title: "M = BBᵀ".into(),
        checks: m.checks,
    });
    let total: usize = sections.iter().map(|s| s.checks.len()).sum();
    let passed: usize = sections.iter().map(|s| s.checks.iter().filter(|c| c.passed).count()).sum();
    let results = json!({
        "n": g.n(),
        "k": k,
        "edges": g.m(),
        "laplacian_spectrum": spectra::spectrum(&g.laplacian(), s.mode, s.tol)?,
        "checks_passed": passed,
        "checks_total": total,
        "all_passed": sections.iter().all(|s| all_passed(&s.checks)),
    });
    let mut out = Outcome::new(results);
    out.sections = sections;
    Ok(out)
}
