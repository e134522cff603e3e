//! JSON graph documents:
//! `{"vertices":[{"id":"v0","m":1.0},...],"edges":[{"u":"v0","v":"v1","w":1.0},...]}`.

use std::fmt::Write;

use serde::Deserialize;

use super::{GraphBuilder, WeightedGraph};
use crate::error::{Error, Result};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphDoc {
    vertices: Vec<VertexDoc>,
    #[serde(default)]
    edges: Vec<EdgeDoc>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct VertexDoc {
    id: String,
    m: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeDoc {
    u: String,
    v: String,
    w: f64,
}

pub fn parse_graph(text: &str) -> Result<WeightedGraph> {
    let doc: GraphDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let mut builder = GraphBuilder::new();
    for v in doc.vertices {
        builder.add_vertex(v.id, v.m);
    }
    for e in doc.edges {
        builder.add_edge(e.u, e.v, e.w);
    }
    builder.build()
}

/// 17 significant digits in scientific notation; `inf`, `-inf`, `nan`
/// for non-finite values.
pub fn format_real(x: f64) -> String {
    if x.is_nan() {
        "nan".to_owned()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.to_owned()
    } else {
        format!("{x:.16e}")
    }
}

/// Canonical serialization: vertices in stored order, edges sorted by index pair.
pub fn to_json(g: &WeightedGraph) -> String {
    let mut out = String::from("{\"vertices\":[");
    for x in 0..g.len() {
        if x > 0 {
            out.push(',');
        }
        let id = serde_json::to_string(g.id(x)).expect("string serialization");
        let _ = write!(out, "{{\"id\":{id},\"m\":{}}}", format_real(g.measure(x)));
    }
    out.push_str("],\"edges\":[");
    for (k, (u, v, w)) in g.edges().into_iter().enumerate() {
        if k > 0 {
            out.push(',');
        }
        let u = serde_json::to_string(g.id(u)).expect("string serialization");
        let v = serde_json::to_string(g.id(v)).expect("string serialization");
        let _ = write!(out, "{{\"u\":{u},\"v\":{v},\"w\":{}}}", format_real(w));
    }
    out.push_str("]}\n");
    out
}
