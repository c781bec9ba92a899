//! Graphviz rendering of a tableau.

use std::fmt::Write;

use crate::graph::TableauGraph;
use crate::kb::KnowledgeBase;

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// One box per node with its number, last rule, status and label; states are
/// double-framed.
pub fn export_dot(kb: &KnowledgeBase, graph: &TableauGraph) -> String {
    let mut out = String::from("digraph tableau {\n  node [shape=box, fontname=\"monospace\"];\n");
    for (v, n) in graph.nodes() {
        let rule = n.rule.map_or(String::new(), |r| format!(": {r}"));
        let mut lines = Vec::new();
        for chunk in n.label.as_slice().chunks(3) {
            lines.push(chunk.iter().map(|&f| kb.show(f)).collect::<Vec<_>>().join(", "));
        }
        let text = format!("{v}{rule} [{}]\n{}", n.status, lines.join("\n"));
        let mut attrs = format!("label=\"{}\"", escape(&text).replace('\n', "\\n"));
        if n.is_state() {
            attrs.push_str(", peripheries=2");
        }
        writeln!(out, "  n{} [{attrs}];", v.index()).unwrap();
    }
    for (v, w) in graph.edges() {
        writeln!(out, "  n{} -> n{};", v.index(), w.index()).unwrap();
    }
    out.push_str("}\n");
    out
}
