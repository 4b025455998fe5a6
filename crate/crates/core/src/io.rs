//! Graph files and report serialization.
//!
//! Graph JSON:
//! `{"vertices":[{"id":"p","q":0}],"edges":[{"u":"p","v":"q","len":"1/6"}]}`.
//! `len` may be a string (`"a/b"`, integer or decimal) or a JSON number;
//! `q` defaults to 0. Rationals are written as `"a/b"` strings.

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::bounds::{BoundCheck, Outcome};
use crate::error::{Error, Result};
use crate::graph::{Edge, MetrizedGraph, PmGraph};
use crate::invariants::InvariantReport;
use crate::matrix::Matrix;
use crate::scalar::{parse_rational, Scalar};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    vertices: Vec<VertexEntry>,
    edges: Vec<EdgeEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VertexEntry {
    id: String,
    #[serde(default)]
    q: i64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeEntry {
    u: String,
    v: String,
    len: Length,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum Length {
    Text(String),
    Number(serde_json::Number),
}

/// Parses and validates a graph file. Lengths are read exactly, then
/// converted to the backend.
pub fn parse_graph<S: Scalar>(text: &str) -> Result<PmGraph<S>> {
    let file: GraphFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let ids: Vec<String> = file.vertices.iter().map(|v| v.id.clone()).collect();
    let mut q = Vec::with_capacity(ids.len());
    for v in &file.vertices {
        if v.q < 0 {
            return Err(Error::NegativePolarization(v.id.clone()));
        }
        q.push(u32::try_from(v.q).map_err(|_| Error::Parse(format!("polarization at {:?} is too large", v.id)))?);
    }
    let lookup = |name: &str| ids.iter().position(|x| x == name).ok_or_else(|| Error::UnknownVertex(name.to_string()));
    let mut edges = Vec::with_capacity(file.edges.len());
    for e in &file.edges {
        let len = match &e.len {
            Length::Text(t) => parse_rational(t)?,
            Length::Number(n) => parse_rational(&n.to_string())?,
        };
        edges.push(Edge { u: lookup(&e.u)?, v: lookup(&e.v)?, len: S::from_rational(&len) });
    }
    PmGraph::new(MetrizedGraph::new(ids, edges)?, q)
}

/// Graph file contents for `pg`.
pub fn graph_to_json<S: Scalar>(pg: &PmGraph<S>) -> Value {
    let g = pg.graph();
    let file = GraphFile {
        vertices: g
            .ids()
            .iter()
            .zip(pg.polarization())
            .map(|(id, &q)| VertexEntry { id: id.clone(), q: q as i64 })
            .collect(),
        edges: g
            .edges()
            .iter()
            .map(|e| EdgeEntry {
                u: g.id(e.u).to_string(),
                v: g.id(e.v).to_string(),
                len: Length::Text(e.len.render()),
            })
            .collect(),
    };
    serde_json::to_value(file).expect("graph file serializes")
}

/// `render()` by default, or rounded decimals.
pub fn format_value<S: Scalar>(x: &S, decimals: Option<usize>) -> String {
    match decimals {
        Some(d) => x.render_decimal(d),
        None => x.render(),
    }
}

pub fn report_to_json<S: Scalar>(report: &InvariantReport<S>, decimals: Option<usize>) -> Value {
    let mut out = Map::new();
    out.insert("backend".into(), json!(S::NAME));
    out.insert("genus".into(), json!(report.genus));
    out.insert("pm_genus".into(), json!(report.pm_genus));
    for (name, value) in report.fields() {
        out.insert(name.into(), json!(format_value(&value, decimals)));
    }
    let lengths: Map<String, Value> =
        report.deltas.length.iter().map(|(i, v)| (i.to_string(), json!(format_value(v, decimals)))).collect();
    let counts: Map<String, Value> = report.deltas.count.iter().map(|(i, c)| (i.to_string(), json!(c))).collect();
    out.insert("delta".into(), json!({ "length": lengths, "count": counts }));
    let audit: Vec<Value> = report
        .audit
        .iter()
        .map(|m| json!({ "invariant": m.invariant, "method": m.method, "value": format_value(&m.value, decimals) }))
        .collect();
    out.insert("audit".into(), Value::Array(audit));
    Value::Object(out)
}

pub const REPORT_HEADER: [&str; 3] = ["graph_id", "quantity", "value"];

/// One row per scalar of the report, then `delta_i` by length and count.
pub fn report_rows<S: Scalar>(
    graph_id: &str,
    report: &InvariantReport<S>,
    decimals: Option<usize>,
) -> Vec<[String; 3]> {
    let mut rows = vec![
        [graph_id.to_string(), "genus".into(), report.genus.to_string()],
        [graph_id.to_string(), "pm_genus".into(), report.pm_genus.to_string()],
    ];
    for (name, value) in report.fields() {
        rows.push([graph_id.to_string(), name.to_string(), format_value(&value, decimals)]);
    }
    for (i, v) in &report.deltas.length {
        rows.push([graph_id.to_string(), format!("delta_{i}"), format_value(v, decimals)]);
    }
    for (i, c) in &report.deltas.count {
        rows.push([graph_id.to_string(), format!("delta_{i}_count"), c.to_string()]);
    }
    rows
}

pub const BOUND_HEADER: [&str; 9] =
    ["graph_id", "bound", "applicable", "lhs", "rhs", "margin", "satisfied", "basis", "reason"];

pub fn bound_rows<S: Scalar>(graph_id: &str, checks: &[BoundCheck<S>], decimals: Option<usize>) -> Vec<[String; 9]> {
    checks
        .iter()
        .map(|c| {
            let head = [graph_id.to_string(), c.name.to_string()];
            let tail = match &c.outcome {
                Outcome::Inapplicable { reason } => [
                    "false".into(),
                    String::new(),
                    String::new(),
                    String::new(),
                    String::new(),
                    c.basis.name().into(),
                    reason.clone(),
                ],
                Outcome::Evaluated { lhs, rhs, margin, satisfied } => [
                    "true".into(),
                    format_value(lhs, decimals),
                    format_value(rhs, decimals),
                    format_value(margin, decimals),
                    satisfied.to_string(),
                    c.basis.name().into(),
                    String::new(),
                ],
            };
            let mut row: [String; 9] = Default::default();
            for (slot, v) in row.iter_mut().zip(head.into_iter().chain(tail)) {
                *slot = v;
            }
            row
        })
        .collect()
}

pub fn bounds_to_json<S: Scalar>(checks: &[BoundCheck<S>], decimals: Option<usize>) -> Value {
    Value::Array(
        checks
            .iter()
            .map(|c| match &c.outcome {
                Outcome::Inapplicable { reason } => {
                    json!({ "bound": c.name, "basis": c.basis.name(), "applicable": false, "reason": reason })
                }
                Outcome::Evaluated { lhs, rhs, margin, satisfied } => json!({
                    "bound": c.name,
                    "basis": c.basis.name(),
                    "applicable": true,
                    "lhs": format_value(lhs, decimals),
                    "rhs": format_value(rhs, decimals),
                    "margin": format_value(margin, decimals),
                    "satisfied": satisfied,
                }),
            })
            .collect(),
    )
}

/// Matrix rows with a leading id column; the first row holds the ids.
pub fn matrix_rows<S: Scalar>(ids: &[String], m: &Matrix<S>, decimals: Option<usize>) -> Vec<Vec<String>> {
    let mut rows = vec![std::iter::once(String::new()).chain(ids.iter().cloned()).collect()];
    for (i, id) in ids.iter().enumerate() {
        let mut row = vec![id.clone()];
        row.extend((0..m.dim()).map(|j| format_value(&m[(i, j)], decimals)));
        rows.push(row);
    }
    rows
}

pub fn matrix_to_json<S: Scalar>(ids: &[String], m: &Matrix<S>, decimals: Option<usize>) -> Value {
    json!({
        "ids": ids,
        "rows": (0..m.dim())
            .map(|i| (0..m.dim()).map(|j| format_value(&m[(i, j)], decimals)).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    })
}
