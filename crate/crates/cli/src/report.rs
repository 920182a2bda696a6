//! Report documents. Everything is assembled as an ordered JSON value; the
//! text format is a rendering of the same value.

use hopfcalc_core::exactlinalg::IntMatrix;
use hopfcalc_core::forms::{classify_indefinite, form_type, BilinearForm, Epsilon};
use hopfcalc_core::graphmodel::{assemble_global_fiber, Vertex};
use hopfcalc_core::hopflink::{
    admissibility_check, derived_linking_matrix, matches_up_to_sign, presentation_oracle_with,
    project_link_descriptor, spin_link_descriptor, FiberDescriptor, HopfLinkSpec,
};
use hopfcalc_core::invariants::{build_report, product_phi_bound, CupSource, InvariantReport};
use hopfcalc_core::random::random_zero_diagonal_congruence;
use hopfcalc_core::Error;
use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::cache::smith_cached;
use crate::spec::{big_number, SpecFile};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// A finished document and whether it records an invariant violation.
#[derive(Debug, Clone, PartialEq)]
pub struct Document {
    pub value: Value,
    pub violation: bool,
}

impl Document {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.value).expect("serializable");
                s.push('\n');
                s
            }
            Format::Text => {
                let mut s = String::new();
                render_text(&self.value, 0, &mut s);
                s
            }
        }
    }
}

fn core_err(module: &str, locus: &str, e: Error) -> CliError {
    let msg = if locus.is_empty() {
        format!("{module}: {e}")
    } else {
        format!("{module}: {locus}: {e}")
    };
    match e {
        Error::InertiaMismatch { .. } => CliError::Violation(msg),
        _ => CliError::Invalid(msg),
    }
}

fn int(x: &BigInt) -> Value {
    Value::Number(big_number(x))
}

fn vector(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int).collect())
}

fn matrix(m: &IntMatrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| vector(r)).collect())
}

fn eps_value(e: Epsilon) -> Value {
    json!(e.sign())
}

fn fiber_value(f: &FiberDescriptor) -> Value {
    json!({
        "name": f.name,
        "dim": f.dim,
        "betti": f.betti,
        "euler": f.euler,
        "boundary_components": f.boundary_components,
    })
}

fn form_value(f: &BilinearForm) -> Result<Value, CliError> {
    let t = form_type(f).map_err(|e| core_err("forms", "", e))?;
    let mut m = Map::new();
    m.insert("epsilon".into(), eps_value(f.epsilon()));
    m.insert("rank".into(), json!(t.rank));
    m.insert("det".into(), int(&t.det));
    m.insert("unimodular".into(), json!(t.unimodular));
    m.insert("parity".into(), json!(t.parity.to_string()));
    m.insert("definiteness".into(), json!(t.definiteness.to_string()));
    m.insert(
        "inertia".into(),
        t.inertia
            .map_or(Value::Null, |i| json!([i.n_plus, i.n_minus, i.n_zero])),
    );
    m.insert("signature".into(), json!(t.signature()));
    match classify_indefinite(f) {
        Ok(s) => {
            m.insert(
                "standard_form".into(),
                json!({"p": s.p, "q": s.q, "name": s.to_string()}),
            );
        }
        Err(e) => {
            m.insert("standard_form".into(), Value::Null);
            m.insert("standard_form_note".into(), json!(e.to_string()));
        }
    }
    Ok(Value::Object(m))
}

/// Runs the presentation oracle for every component of `link`.
fn oracle_checks(link: &HopfLinkSpec, astar: &IntMatrix) -> (Vec<Value>, bool) {
    let mut out = Vec::new();
    let mut all = true;
    for s in 0..=link.d() {
        let entry = match presentation_oracle_with(link, s, smith_cached) {
            Ok(r) => {
                let sign = matches_up_to_sign(&r.linking_vector, &astar.column(s));
                all &= sign.is_some();
                json!({
                    "s": s,
                    "pass": sign.is_some(),
                    "sign": sign,
                    "oracle": vector(&r.linking_vector),
                })
            }
            Err(e) => {
                all = false;
                json!({"s": s, "pass": false, "error": e.to_string()})
            }
        };
        out.push(entry);
    }
    (out, all)
}

fn admissibility_value(link: &HopfLinkSpec) -> Value {
    let a = admissibility_check(link);
    let stacked = |c: &Option<hopfcalc_core::hopflink::StackedConstruction>| {
        c.as_ref().map_or(Value::Null, |c| {
            json!({"summands": c.summands, "matrix_dim": c.matrix_dim, "components": c.components})
        })
    };
    json!({
        "det": int(&a.det),
        "unimodular": a.unimodular,
        "skew_size_even": a.skew_size_even,
        "admissible": a.admissible,
        "directly_fibered": a.directly_fibered,
        "doubling": stacked(&a.doubling),
        "theta_sum": stacked(&a.theta_sum),
        "notes": a.notes,
    })
}

/// Full pipeline for a spec file.
pub fn emit_report(spec: &SpecFile, oracle: bool) -> Result<Document, CliError> {
    let mut doc = Map::new();
    let mut violation = false;
    doc.insert(
        "spec".into(),
        serde_json::to_value(&spec.raw).expect("serializable"),
    );
    doc.insert("n".into(), json!(spec.raw.n));
    doc.insert("k".into(), json!(spec.raw.k));

    if !spec.graphs.is_empty() {
        let mut vertices = Vec::new();
        for (gi, g) in spec.graphs.iter().enumerate() {
            for (vi, link) in g.black_links() {
                let locus = format!("graphs[{gi}].vertices[{vi}]");
                let mut v = Map::new();
                v.insert("locus".into(), json!(locus));
                v.insert("d".into(), json!(link.d()));
                v.insert("form".into(), form_value(link.form())?);
                v.insert("admissibility".into(), admissibility_value(link));
                let astar =
                    derived_linking_matrix(link).map_err(|e| core_err("hopflink", &locus, e))?;
                v.insert("linking_matrix".into(), matrix(&astar));
                if oracle {
                    let (checks, ok) = oracle_checks(link, &astar);
                    violation |= !ok;
                    v.insert("oracle".into(), Value::Array(checks));
                }
                vertices.push(Value::Object(v));
            }
        }
        doc.insert("black_vertices".into(), Value::Array(vertices));

        let mut graphs = Vec::new();
        for (gi, g) in spec.graphs.iter().enumerate() {
            let locus = format!("graphs[{gi}]");
            let c = hopfcalc_core::graphmodel::graph_counts(g);
            let fiber = assemble_global_fiber(g).map_err(|e| core_err("graphmodel", &locus, e))?;
            graphs.push(json!({
                "locus": locus,
                "m": c.m,
                "s_black": c.s_black,
                "g": c.g,
                "t": c.t,
                "global_fiber_euler": fiber.chi,
                "global_fiber": fiber.descriptor.as_ref().map_or(Value::Null, fiber_value),
            }));
        }
        doc.insert("graphs".into(), Value::Array(graphs));

        let r = build_report(&spec.graphs, spec.raw.assume_cobounding)
            .map_err(|e| core_err("invariants", "", e))?;
        violation |= r
            .verdicts
            .iter()
            .any(|v| matches!(v.criterion.as_str(), "additivity" | "homology-euler") && !v.holds);
        doc.insert("invariants".into(), invariants_value(&r));
    }

    if !spec.products.is_empty() {
        let b =
            product_phi_bound(&spec.products).map_err(|e| core_err("invariants", "products", e))?;
        doc.insert(
            "products".into(),
            json!({
                "factors": spec.products.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "target": "S3",
                "phi_lower": b.lower,
                "phi_upper": int(&b.upper),
                "euler": int(&b.chi),
            }),
        );
    }
    Ok(Document {
        value: Value::Object(doc),
        violation,
    })
}

fn invariants_value(r: &InvariantReport) -> Value {
    let mut m = Map::new();
    m.insert(
        "cup_form_source".into(),
        json!(match r.cup_source {
            CupSource::Edges => "edges",
            CupSource::InverseBlock => "inverse block",
        }),
    );
    m.insert("cup_form".into(), matrix(r.cup_form.matrix()));
    m.insert(
        "inertia".into(),
        r.analysis
            .inertia
            .map_or(Value::Null, |i| json!([i.n_plus, i.n_minus, i.n_zero])),
    );
    m.insert("sigma".into(), json!(r.sigma()));
    m.insert("block_sigmas".into(), json!(r.block_sigmas));
    m.insert("kernel_dim".into(), json!(r.kernel_dim()));
    m.insert(
        "kernel_basis".into(),
        Value::Array(
            r.analysis
                .kernel_integer_basis
                .iter()
                .map(|v| vector(v))
                .collect(),
        ),
    );
    m.insert(
        "euler".into(),
        json!({
            "chi": r.euler.chi,
            "chi_base": r.euler.chi_base,
            "chi_fiber": r.euler.chi_fiber,
            "t": r.euler.t,
            "g": r.euler.g,
        }),
    );
    m.insert("s_black".into(), json!(r.s_black));
    m.insert(
        "homology".into(),
        r.homology.as_ref().map_or(
            Value::Null,
            |h| json!({"family": h.family.to_string(), "dim": h.dim, "ranks": h.ranks}),
        ),
    );
    m.insert(
        "phi".into(),
        r.phi.as_ref().map_or(
            Value::Null,
            |p| json!({"lower": p.lower, "upper": p.upper, "notes": p.notes}),
        ),
    );
    m.insert(
        "verdicts".into(),
        Value::Array(
            r.verdicts
                .iter()
                .map(|v| json!({"criterion": v.criterion, "holds": v.holds, "statement": v.statement}))
                .collect(),
        ),
    );
    m.insert("notes".into(), json!(r.notes));
    Value::Object(m)
}

/// Link-level report for a bare matrix.
pub fn check_link(m: IntMatrix, n: u32, k: u32, theta: u32) -> Result<Document, CliError> {
    let link =
        HopfLinkSpec::from_matrix(m, n, k, theta).map_err(|e| core_err("hopflink", "matrix", e))?;
    let mut doc = Map::new();
    doc.insert("matrix".into(), matrix(link.matrix()));
    doc.insert("n".into(), json!(n));
    doc.insert("k".into(), json!(k));
    doc.insert("theta".into(), json!(theta));
    doc.insert("components".into(), json!(link.components()));
    doc.insert("form".into(), form_value(link.form())?);
    doc.insert("admissibility".into(), admissibility_value(&link));
    let mut violation = false;
    match derived_linking_matrix(&link) {
        Ok(astar) => {
            doc.insert("linking_matrix".into(), matrix(&astar));
            let (checks, ok) = oracle_checks(&link, &astar);
            violation = !ok;
            doc.insert("oracle".into(), Value::Array(checks));
        }
        Err(e) => {
            doc.insert("linking_matrix".into(), Value::Null);
            doc.insert("linking_matrix_note".into(), json!(e.to_string()));
        }
    }
    let (fiber, link_desc) =
        project_link_descriptor(&link).map_err(|e| core_err("hopflink", "", e))?;
    doc.insert(
        "projection".into(),
        json!({"fiber": fiber_value(&fiber), "link": fiber_value(&link_desc)}),
    );
    if k == 0 {
        let s = spin_link_descriptor(&link, 0).map_err(|e| core_err("hopflink", "", e))?;
        doc.insert(
            "spin".into(),
            json!({
                "component": s.spun,
                "fiber": fiber_value(&s.fiber),
                "components": s.components.iter().map(ToString::to_string).collect::<Vec<_>>(),
            }),
        );
    }
    Ok(Document {
        value: Value::Object(doc),
        violation,
    })
}

/// Invariants and standard form of a bare matrix.
pub fn classify(m: IntMatrix) -> Result<Document, CliError> {
    let eps = if m.is_symmetric() {
        Epsilon::Symmetric
    } else {
        Epsilon::Skew
    };
    let f = BilinearForm::new(m, eps).map_err(|e| core_err("forms", "matrix", e))?;
    let mut doc = Map::new();
    doc.insert("matrix".into(), matrix(f.matrix()));
    doc.insert("form".into(), form_value(&f)?);
    Ok(Document {
        value: Value::Object(doc),
        violation: false,
    })
}

/// Oracle cross-checks for every black vertex, plus `random` scrambled
/// copies of each decoration.
pub fn oracle_report(spec: &SpecFile, random: usize, seed: u64) -> Result<Document, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();
    let (mut passed, mut failed) = (0usize, 0usize);
    let mut record = |locus: String, link: &HopfLinkSpec, checks: &mut Vec<Value>| {
        let astar = match derived_linking_matrix(link) {
            Ok(a) => a,
            Err(e) => {
                failed += 1;
                checks.push(json!({"locus": locus, "pass": false, "error": e.to_string()}));
                return;
            }
        };
        let (results, _) = oracle_checks(link, &astar);
        for r in results {
            let pass = r["pass"].as_bool().unwrap_or(false);
            if pass {
                passed += 1;
            } else {
                failed += 1;
            }
            checks.push(json!({"locus": locus, "s": r["s"], "pass": pass, "sign": r.get("sign")}));
        }
    };
    for (gi, g) in spec.graphs.iter().enumerate() {
        for (vi, v) in g.vertices.iter().enumerate() {
            let Vertex::Black { link } = v else { continue };
            record(format!("graphs[{gi}].vertices[{vi}]"), link, &mut checks);
            for r in 0..random {
                let (_, form) = random_zero_diagonal_congruence(link.form(), 12, &mut rng);
                let scrambled = HopfLinkSpec::new(form, link.n(), link.k(), link.theta())
                    .map_err(|e| core_err("hopflink", "", e))?;
                record(
                    format!("graphs[{gi}].vertices[{vi}] random {r}"),
                    &scrambled,
                    &mut checks,
                );
            }
        }
    }
    let doc = json!({
        "seed": seed,
        "random_per_vertex": random,
        "checks": checks,
        "passed": passed,
        "failed": failed,
    });
    Ok(Document {
        value: doc,
        violation: failed > 0,
    })
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn inline(v: &Value) -> Option<String> {
    match v {
        Value::Array(a) if a.iter().all(is_scalar) => Some(format!(
            "[{}]",
            a.iter().map(scalar_text).collect::<Vec<_>>().join(", ")
        )),
        v if is_scalar(v) => Some(scalar_text(v)),
        _ => None,
    }
}

fn render_text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                if indent == 0 && k == "spec" {
                    continue;
                }
                match inline(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_text(x, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(a) => {
            for x in a {
                match inline(x) {
                    Some(s) => out.push_str(&format!("{pad}{s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        render_text(x, indent + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar_text(other))),
    }
}
