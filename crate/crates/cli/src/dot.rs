//! Graphviz rendering. Output depends only on the inputs: nodes and edges
//! appear in declaration order.

use std::collections::BTreeSet;
use std::fmt::Write;

use flowgame::netmodel::{EdgeId, Network};
use flowgame::Rational;

#[derive(Clone, Debug, Default)]
pub struct Overlay {
    /// Flow per edge, appended to the label; positive flow is drawn bold.
    pub flow: Option<Vec<Rational>>,
    /// Drawn dashed.
    pub cut: BTreeSet<EdgeId>,
    /// Drawn red.
    pub attacked: BTreeSet<EdgeId>,
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

pub fn render(net: &Network, overlay: &Overlay) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(net.name())).unwrap();
    writeln!(out, "  rankdir=LR;").unwrap();
    for (v, name) in net.nodes().iter().enumerate() {
        let shape = if v == net.source() || v == net.sink() { "doublecircle" } else { "circle" };
        writeln!(out, "  {} [shape={shape}];", quote(name)).unwrap();
    }
    for (e, edge) in net.edges().iter().enumerate() {
        let mut label = format!("{},{}", edge.capacity, edge.cost);
        let mut styles = Vec::new();
        if let Some(flow) = &overlay.flow {
            write!(label, ",{}", flow[e]).unwrap();
            if flow[e].is_positive() {
                styles.push("bold");
            }
        }
        if overlay.cut.contains(&e) {
            styles.push("dashed");
        }
        let mut attrs = format!("label={}", quote(&label));
        if !styles.is_empty() {
            write!(attrs, ", style={}", quote(&styles.join(","))).unwrap();
        }
        if overlay.attacked.contains(&e) {
            attrs.push_str(", color=red");
        }
        writeln!(out, "  {} -> {} [{attrs}];", quote(net.node_name(edge.tail)), quote(net.node_name(edge.head)))
            .unwrap();
    }
    out.push_str("}\n");
    out
}
