//! DOT and JSON renderings of a diagram.

use std::fmt::Write;

use super::MarkovDiagram;

pub fn to_dot(d: &MarkovDiagram) -> String {
    let mut s = String::from("digraph markov_diagram {\n  node [shape=ellipse];\n");
    for c in 0..d.n_components() {
        let members: Vec<usize> = (0..d.n_vertices()).filter(|&v| d.scc[v] == c).collect();
        let _ = writeln!(s, "  subgraph cluster_{c} {{");
        let _ = writeln!(s, "    label=\"scc {c} (period {})\";", d.periods[c]);
        for v in members {
            let style = if d.boundary[v] { ", style=dashed" } else { "" };
            let _ = writeln!(
                s,
                "    v{v} [label=\"{}\\nd={}\"{style}];",
                d.vertex_name(v).replace('"', "\\\""),
                d.depth(v)
            );
        }
        s.push_str("  }\n");
    }
    for (u, ts) in d.arrows.iter().enumerate() {
        for &v in ts {
            let _ = writeln!(s, "  v{u} -> v{v};");
        }
    }
    s.push_str("}\n");
    s
}

pub fn to_json(d: &MarkovDiagram) -> serde_json::Value {
    serde_json::json!({
        "schema": "kneadlab.diagram/1",
        "source": d.source,
        "depth_cap": d.depth_cap,
        "complete": d.complete,
        "vertices": (0..d.n_vertices()).map(|v| serde_json::json!({
            "id": v,
            "word": d.vertex_name(v),
            "depth": d.depth(v),
            "scc": d.scc[v],
            "boundary": d.boundary[v],
        })).collect::<Vec<_>>(),
        "arrows": d.arrows.iter().enumerate()
            .flat_map(|(u, ts)| ts.iter().map(move |&v| [u, v]))
            .collect::<Vec<_>>(),
        "periods": d.periods,
    })
}
