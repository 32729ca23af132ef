//! Graphviz export for process models and goal graphs. Output is a pure
//! function of the input, so repeated exports are byte-identical.

use std::collections::BTreeSet;
use std::fmt::Write;

use crate::goals::{DecompositionMode, EdgeKind, GoalGraph, NodeKind, Owner};
use crate::net::ProcessModel;

fn esc(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out
}

/// Places become circles labeled `I0: start`, fragments become boxes
/// labeled with id and strategy. Deficient strategies are dashed.
pub fn process_to_dot(m: &ProcessModel) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "digraph \"{}\" {{", esc(&m.name));
    if m.places.is_empty() && m.fragments.is_empty() {
        s.push_str("}\n");
        return s;
    }
    s.push_str("  rankdir=LR;\n");
    for p in &m.places {
        let _ = writeln!(s, "  \"p_{}\" [shape=circle, label=\"{}: {}\"];", p.id, p.id, esc(&p.label));
    }
    for f in &m.fragments {
        let style = if f.strategy.deficient { ", style=dashed" } else { "" };
        let _ = writeln!(
            s,
            "  \"f_{}\" [shape=box, label=\"{}\\n{}\"{}];",
            f.id,
            f.id,
            esc(&f.strategy.text),
            style
        );
    }
    for f in &m.fragments {
        for src in &f.sources {
            let _ = writeln!(s, "  \"p_{}\" -> \"f_{}\";", src, f.id);
        }
        for tgt in &f.targets {
            let _ = writeln!(s, "  \"f_{}\" -> \"p_{}\";", f.id, tgt);
        }
    }
    s.push_str("}\n");
    s
}

fn shape(kind: NodeKind) -> &'static str {
    match kind {
        NodeKind::Need => "ellipse",
        NodeKind::Goal => "box",
        NodeKind::Objective => "hexagon",
        NodeKind::Requirement => "note",
    }
}

/// Nodes are shaped by kind; ERP-owned nodes are filled grey, change goals
/// get a bold outline. Stakeholders and realisation targets appear as extra
/// nodes.
pub fn goals_to_dot(g: &GoalGraph) -> String {
    let mut s = String::from("digraph \"goals\" {\n");
    if g.nodes.is_empty() && g.stakeholders.is_empty() {
        s.push_str("}\n");
        return s;
    }
    s.push_str("  rankdir=BT;\n");
    for st in &g.stakeholders {
        let _ = writeln!(s, "  \"s_{}\" [shape=house, label=\"{}\"];", st.id, esc(&st.name));
    }
    for n in &g.nodes {
        let mut attrs = format!("shape={}, label=\"{}\\n{}\"", shape(n.kind), n.kind, esc(&n.label));
        if n.owner == Owner::Erp {
            attrs.push_str(", style=filled, fillcolor=lightgrey");
        }
        if n.change {
            attrs.push_str(", penwidth=2");
        }
        let _ = writeln!(s, "  \"n_{}\" [{}];", n.id, attrs);
    }
    let targets: BTreeSet<String> = g
        .edges
        .iter()
        .filter_map(|e| match &e.kind {
            EdgeKind::RealisedBy { target } => Some(target.to_string()),
            _ => None,
        })
        .collect();
    for t in &targets {
        let _ = writeln!(s, "  \"r_{}\" [shape=plaintext, label=\"{}\"];", esc(t), esc(t));
    }
    for e in &g.edges {
        let _ = match &e.kind {
            EdgeKind::DerivesFrom { to } => writeln!(s, "  \"n_{}\" -> \"n_{}\" [label=\"derives\"];", e.from, to),
            EdgeKind::Decomposes { to, mode } => {
                let mode = match mode {
                    DecompositionMode::And => "and",
                    DecompositionMode::Or => "or",
                };
                writeln!(s, "  \"n_{}\" -> \"n_{}\" [label=\"{}\"];", e.from, to, mode)
            }
            EdgeKind::Supports { to } => {
                writeln!(s, "  \"n_{}\" -> \"n_{}\" [label=\"supports\", style=dashed];", e.from, to)
            }
            EdgeKind::DeterminedBy { stakeholder } => {
                writeln!(s, "  \"s_{}\" -> \"n_{}\" [style=dotted];", stakeholder, e.from)
            }
            EdgeKind::RealisedBy { target } => {
                writeln!(s, "  \"n_{}\" -> \"r_{}\" [label=\"realised by\"];", e.from, esc(&target.to_string()))
            }
        };
    }
    s.push_str("}\n");
    s
}
