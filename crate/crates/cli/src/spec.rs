//! Graph-spec files: JSON documents describing a family of decorated graphs.

use std::path::Path;

use hopfcalc_core::exactlinalg::IntMatrix;
use hopfcalc_core::graphmodel::{validate_graph, DecoratedGraph, Edge, Vertex};
use hopfcalc_core::hopflink::{FiberDescriptor, HopfLinkSpec};
use hopfcalc_core::invariants::ProductFactor;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Number;

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawSpec {
    pub n: u32,
    #[serde(default)]
    pub k: u32,
    #[serde(default = "one")]
    pub theta: u32,
    #[serde(default)]
    pub assume_cobounding: bool,
    #[serde(default)]
    pub graphs: Vec<RawGraph>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub products: Vec<String>,
}

fn one() -> u32 {
    1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawGraph {
    pub vertices: Vec<RawVertex>,
    pub edges: Vec<RawEdge>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twist: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Black,
    White,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawVertex {
    pub color: Color,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<Number>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fiber: Option<RawFiber>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawFiber {
    pub betti: Vec<u64>,
    pub boundary_components: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawEdge {
    pub u: usize,
    pub v: usize,
    pub u_comp: usize,
    pub v_comp: usize,
}

/// A parsed and fully validated spec.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecFile {
    /// Normalized source document.
    pub raw: RawSpec,
    pub graphs: Vec<DecoratedGraph>,
    pub products: Vec<ProductFactor>,
}

pub fn parse_spec(path: &Path) -> Result<SpecFile, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
    parse_spec_str(&text).map_err(|e| match e {
        CliError::Invalid(m) => CliError::Invalid(format!("{}: {m}", path.display())),
        other => other,
    })
}

pub fn parse_spec_str(text: &str) -> Result<SpecFile, CliError> {
    let raw: RawSpec = serde_json::from_str(text).map_err(|e| CliError::Invalid(e.to_string()))?;
    from_raw(raw)
}

pub fn from_raw(mut raw: RawSpec) -> Result<SpecFile, CliError> {
    let invalid = |field: &str, msg: String| CliError::Invalid(format!("{field}: {msg}"));
    if raw.n < 3 {
        return Err(invalid("n", format!("must be at least 3, got {}", raw.n)));
    }
    if raw.k + 2 > raw.n {
        return Err(invalid(
            "k",
            format!("n - k must be at least 2 (n = {}, k = {})", raw.n, raw.k),
        ));
    }
    if raw.theta == 0 {
        return Err(invalid("theta", "must be at least 1".into()));
    }
    if raw.graphs.is_empty() && raw.products.is_empty() {
        return Err(invalid("graphs", "no graphs and no products".into()));
    }

    let mut graphs = Vec::with_capacity(raw.graphs.len());
    for (gi, rg) in raw.graphs.iter_mut().enumerate() {
        let mut vertices = Vec::with_capacity(rg.vertices.len());
        for (vi, rv) in rg.vertices.iter_mut().enumerate() {
            let field = format!("graphs[{gi}].vertices[{vi}]");
            vertices.push(build_vertex(rv, raw.n, raw.k, raw.theta, &field)?);
        }
        let edges = rg
            .edges
            .iter()
            .map(|e| Edge::new(e.u, e.v, e.u_comp, e.v_comp))
            .collect();
        let mut g = DecoratedGraph::new(vertices, edges);
        g.annotation = rg.twist.clone();
        validate_graph(&g).map_err(|e| invalid(&format!("graphs[{gi}]"), e.to_string()))?;
        graphs.push(g);
    }

    let products = raw
        .products
        .iter()
        .enumerate()
        .map(|(i, s)| {
            ProductFactor::parse(s).ok_or_else(|| {
                invalid(
                    &format!("products[{i}]"),
                    format!("unknown factor {s:?} (expected S4 or connsum_<r>, r >= 1)"),
                )
            })
        })
        .collect::<Result<Vec<_>, _>>()?;

    Ok(SpecFile {
        raw,
        graphs,
        products,
    })
}

fn build_vertex(
    rv: &mut RawVertex,
    n: u32,
    k: u32,
    theta: u32,
    field: &str,
) -> Result<Vertex, CliError> {
    let invalid = |msg: String| CliError::Invalid(format!("{field}: {msg}"));
    match rv.color {
        Color::Black => {
            if rv.fiber.is_some() {
                return Err(invalid("black vertices take a matrix, not a fiber".into()));
            }
            let rows = rv
                .matrix
                .as_mut()
                .ok_or_else(|| invalid("black vertex without a matrix".into()))?;
            let m = matrix_from_numbers(rows).map_err(|m| invalid(format!("matrix: {m}")))?;
            let link = HopfLinkSpec::from_matrix(m, n, k, theta)
                .map_err(|e| invalid(format!("matrix: {e}")))?;
            Ok(Vertex::Black { link })
        }
        Color::White => {
            if rv.matrix.is_some() {
                return Err(invalid("white vertices take a fiber, not a matrix".into()));
            }
            let f = rv
                .fiber
                .as_ref()
                .ok_or_else(|| invalid("white vertex without a fiber".into()))?;
            let dim = (n + k) as usize;
            let fiber = FiberDescriptor::new(dim, f.betti.clone(), f.boundary_components)
                .map_err(|e| invalid(format!("fiber: {e}")))?;
            if fiber.betti[0] == 0 {
                return Err(invalid("fiber: b_0 must be positive".into()));
            }
            Ok(Vertex::White { fiber })
        }
    }
}

/// Parses integer entries exactly and rewrites them in canonical form.
pub fn matrix_from_numbers(rows: &mut [Vec<Number>]) -> Result<IntMatrix, String> {
    let mut out = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter_mut().enumerate() {
        let mut r = Vec::with_capacity(row.len());
        for (j, x) in row.iter_mut().enumerate() {
            let v: BigInt = x
                .to_string()
                .parse()
                .map_err(|_| format!("entry ({i}, {j}) = {x} is not an integer"))?;
            *x = big_number(&v);
            r.push(v);
        }
        out.push(r);
    }
    if out.is_empty() {
        return Err("empty matrix".into());
    }
    IntMatrix::from_rows(out).map_err(|e| e.to_string())
}

pub fn big_number(v: &BigInt) -> Number {
    v.to_string()
        .parse()
        .expect("integers are valid JSON numbers")
}

/// Reads a bare matrix file: a JSON array of integer rows.
pub fn parse_matrix_file(path: &Path) -> Result<IntMatrix, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
    let mut rows: Vec<Vec<Number>> = serde_json::from_str(&text)
        .map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
    matrix_from_numbers(&mut rows)
        .map_err(|m| CliError::Invalid(format!("{}: {m}", path.display())))
}
