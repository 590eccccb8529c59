use std::fmt::Write;

use super::graph::{LabeledGameGraph, LabeledGraph, Player};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn render(g: &LabeledGraph, shape: impl Fn(usize) -> &'static str) -> String {
    let mut out = String::from("digraph coverage {\n");
    out.push_str("  __start [shape=point];\n");
    for v in 0..g.num_vertices() {
        let props = g.prop_set_names(g.label(v)).join(",");
        let label = format!("{} {{{}}}", g.vertex_name(v), props);
        let _ = writeln!(
            out,
            "  {} [shape={}, label={}];",
            quote(g.vertex_name(v)),
            shape(v),
            quote(&label)
        );
    }
    if g.initial() < g.num_vertices() {
        let _ = writeln!(out, "  __start -> {};", quote(g.vertex_name(g.initial())));
    }
    for v in 0..g.num_vertices() {
        for &w in g.successors(v).iter().filter(|&&w| w < g.num_vertices()) {
            let _ = writeln!(out, "  {} -> {};", quote(g.vertex_name(v)), quote(g.vertex_name(w)));
        }
    }
    out.push_str("}\n");
    out
}

pub fn graph_to_dot(g: &LabeledGraph) -> String {
    render(g, |_| "ellipse")
}

/// Player 1 vertices are drawn as boxes, player 2 vertices as diamonds.
pub fn game_to_dot(g: &LabeledGameGraph) -> String {
    render(g.graph(), |v| match g.owner_opt(v) {
        Some(Player::One) => "box",
        Some(Player::Two) => "diamond",
        None => "ellipse",
    })
}
