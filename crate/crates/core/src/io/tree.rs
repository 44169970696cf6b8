use std::fmt::Write;

use crate::dendrogram::{format_cutoff, Dendrogram, Node, NodeId};

fn escape(label: &str) -> String {
    label.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Graphviz DOT text: leaves labelled by name, merges by `depth:cutoff`,
/// edges from parent to child. Nodes appear in id order.
pub fn write_dot(d: &Dendrogram) -> String {
    let mut out = String::from("digraph dendrogram {\n  rankdir=TB;\n  node [shape=box];\n");
    for (id, node) in d.nodes().iter().enumerate() {
        match node {
            Node::Leaf { index } => {
                writeln!(out, "  n{id} [label=\"{}\"];", escape(&d.labels()[*index])).unwrap();
            }
            Node::Merge { depth, cutoff, .. } => {
                writeln!(
                    out,
                    "  n{id} [label=\"{depth}:{}\", shape=ellipse];",
                    format_cutoff(*cutoff)
                )
                .unwrap();
            }
        }
    }
    for (id, node) in d.nodes().iter().enumerate() {
        for child in node.children() {
            writeln!(out, "  n{id} -> n{child};").unwrap();
        }
    }
    out.push_str("}\n");
    out
}

/// Indented plain-text rendering, one node per line.
pub fn write_tree_text(d: &Dendrogram) -> String {
    fn walk(d: &Dendrogram, id: NodeId, indent: usize, out: &mut String) {
        let pad = "  ".repeat(indent);
        match d.node(id) {
            Node::Leaf { index } => writeln!(out, "{pad}{}", d.labels()[*index]).unwrap(),
            Node::Merge {
                children,
                depth,
                cutoff,
                leaves,
            } => {
                writeln!(
                    out,
                    "{pad}+ depth {depth}, cut-off {} ({} leaves)",
                    format_cutoff(*cutoff),
                    leaves.len()
                )
                .unwrap();
                for &c in children {
                    walk(d, c, indent + 1, out);
                }
            }
        }
    }
    let mut out = String::new();
    for &root in d.roots() {
        walk(d, root, 0, &mut out);
    }
    out
}
