use std::fmt::Write;

use super::GraphWindow;

// Neighbors are separated by `;` because DL keys already use `,` internally.
pub(super) fn adjacency(w: &GraphWindow) -> String {
    let mut out = String::new();
    for v in 0..w.len() {
        let nbrs: Vec<String> = w.neighbors(v).iter().map(|&u| w.key(u).to_string()).collect();
        let _ = writeln!(out, "{}\t{}\t{}", w.key(v), w.depth(v), nbrs.join(";"));
    }
    out
}

pub(super) fn dot(w: &GraphWindow) -> String {
    let mut out = String::from("graph window {\n");
    for v in 0..w.len() {
        let _ = writeln!(
            out,
            "  {v} [label=\"{}\", depth={}{}];",
            w.key(v),
            w.depth(v),
            if w.on_sphere(v) { ", shape=box" } else { "" }
        );
    }
    for e in w.edges() {
        let _ = writeln!(out, "  {} -- {};", e.u, e.v);
    }
    out.push_str("}\n");
    out
}
