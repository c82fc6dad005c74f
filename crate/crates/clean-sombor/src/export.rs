//! Deterministic DOT and JSON renderings of a clean graph.

use serde::Serialize;

use crate::graph::CleanGraph;

/// Graphviz DOT text: one node per vertex labeled `(e,u)`, filled with a
/// color indexed by idempotent class, and one `--` line per edge.
///
/// Byte-identical output for identical graphs.
pub fn to_dot(g: &CleanGraph) -> String {
    let mut out = String::new();
    out.push_str(&format!("graph {}_{} {{\n", g.variant().as_str(), g.n()));
    out.push_str("  node [style=filled, colorscheme=set312];\n");
    for (i, v) in g.vertices().iter().enumerate() {
        out.push_str(&format!(
            "  v{} [label=\"({},{})\", fillcolor={}];\n",
            i,
            v.idempotent,
            v.unit,
            v.class_index % 12 + 1
        ));
    }
    for (i, j) in g.edges() {
        out.push_str(&format!("  v{i} -- v{j};\n"));
    }
    out.push_str("}\n");
    out
}

#[derive(Serialize)]
struct JsonVertex {
    e: u64,
    u: u64,
    class: usize,
    self_inverse: bool,
    degree: u32,
}

#[derive(Serialize)]
struct JsonGraph {
    n: u64,
    variant: &'static str,
    vertices: Vec<JsonVertex>,
    edges: Vec<[u32; 2]>,
}

/// JSON document with the vertex table and the lexicographically sorted
/// `i < j` edge list. Byte-identical output for identical graphs.
pub fn to_json(g: &CleanGraph) -> String {
    let doc = JsonGraph {
        n: g.n(),
        variant: g.variant().as_str(),
        vertices: g
            .vertices()
            .iter()
            .enumerate()
            .map(|(i, v)| JsonVertex {
                e: v.idempotent,
                u: v.unit,
                class: v.class_index,
                self_inverse: v.self_inverse,
                degree: g.degree(i),
            })
            .collect(),
        edges: g.edges().map(|(i, j)| [i, j]).collect(),
    };
    serde_json::to_string(&doc).expect("graph export serialization cannot fail")
}
