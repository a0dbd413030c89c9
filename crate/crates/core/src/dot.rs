//! Graphviz export.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::kripke::Model;

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn quote(s: &str) -> String {
    format!("\"{}\"", escape(s))
}

/// Renders a model as an undirected-looking digraph. Edges held in both
/// directions by the same agents collapse into one `dir=both` edge; loops
/// are drawn explicitly. Output is deterministic.
pub fn to_dot(model: &Model, point: Option<usize>) -> String {
    let sig = model.signature();
    let worlds = sig.worlds();
    let agents = sig.agents();
    let mut out = String::from("digraph model {\n  node [shape=circle];\n");
    for (w, name) in worlds.iter().enumerate() {
        let true_atoms: Vec<&str> = sig
            .atoms()
            .iter()
            .enumerate()
            .filter(|&(p, _)| model.atom_set(p).contains(w))
            .map(|(_, a)| a.as_str())
            .collect();
        let label = format!("{}\\n{}", escape(name), escape(&true_atoms.join(",")));
        let extra = if point == Some(w) { ", peripheries=2" } else { "" };
        let _ = writeln!(out, "  {} [label=\"{label}\"{extra}];", quote(name));
    }
    // (from, to, dir) -> agents
    let mut edges: BTreeMap<(usize, usize, &str), Vec<&str>> = BTreeMap::new();
    let n = model.world_count();
    for w in 0..n {
        for u in w..n {
            for (i, agent) in agents.iter().enumerate() {
                let r = model.relation(i);
                let (fwd, back) = (r.contains(w, u), r.contains(u, w));
                let key = match (fwd, back) {
                    _ if w == u && fwd => (w, u, "none"),
                    (true, true) => (w, u, "both"),
                    (true, false) => (w, u, "forward"),
                    (false, true) => (u, w, "forward"),
                    (false, false) => continue,
                };
                edges.entry(key).or_default().push(agent);
            }
        }
    }
    for ((w, u, dir), label) in edges {
        let _ = writeln!(
            out,
            "  {} -> {} [label={}, dir={dir}];",
            quote(&worlds[w]),
            quote(&worlds[u]),
            quote(&label.join(","))
        );
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kripke::ModelSpec;

    #[test]
    fn merges_symmetric_edges() {
        let m = ModelSpec::new(&["w0", "w1"], &["a", "b"], &["p"])
            .rel("a", &[("w0", "w1"), ("w1", "w0"), ("w0", "w0")])
            .rel("b", &[("w1", "w0")])
            .val("p", &["w0"])
            .build()
            .unwrap();
        let dot = to_dot(&m, Some(0));
        assert!(dot.contains("\"w0\" -> \"w1\" [label=\"a\", dir=both];"), "{dot}");
        assert!(dot.contains("\"w1\" -> \"w0\" [label=\"b\", dir=forward];"), "{dot}");
        assert!(dot.contains("\"w0\" -> \"w0\" [label=\"a\", dir=none];"), "{dot}");
        assert!(dot.contains("peripheries=2"));
        assert_eq!(dot, to_dot(&m, Some(0)));
    }
}
