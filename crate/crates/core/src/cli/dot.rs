use std::fmt::Write;

use crate::level_graph::EnhancedLevelGraph;

/// Graphviz source with one rank per level, top level first.
pub fn to_dot(graph: &EnhancedLevelGraph) -> String {
    let mut out = String::from("graph level_graph {\n  rankdir=TB;\n  node [shape=record];\n");
    for level in graph.levels() {
        let _ = write!(out, "  {{ rank=same;");
        for v in (0..graph.vertices().len()).filter(|&v| graph.level(v) == level) {
            let _ = write!(out, " v{v};");
        }
        out.push_str(" }\n");
    }
    for (v, vert) in graph.vertices().iter().enumerate() {
        let legs: Vec<String> = vert.legs.iter().map(|l| (l + 1).to_string()).collect();
        let _ = writeln!(
            out,
            "  v{v} [label=\"g={} | {}\"];",
            vert.genus,
            legs.join(",")
        );
    }
    for (e, edge) in graph.edges().iter().enumerate() {
        let label = match graph.kappa(e) {
            Some(k) => format!("κ={k}"),
            None => "hor".to_string(),
        };
        let (a, b) = if graph.is_horizontal(e) {
            (edge.ends[0], edge.ends[1])
        } else {
            (graph.top(e), graph.bottom(e))
        };
        let _ = writeln!(out, "  v{a} -- v{b} [label=\"{label}\"];");
    }
    out.push_str("}\n");
    out
}
