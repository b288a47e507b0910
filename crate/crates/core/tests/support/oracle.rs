//! Deliberately naive reference implementations used to cross-check the
//! production code. Only basic window accessors are used.

use std::collections::{BTreeSet, HashSet};

use cutset_core::graph::{Edge, GraphWindow, VertexId};

/// Every connected vertex set containing `o` with at most `cap` vertices,
/// grown one vertex at a time and deduplicated by sorted contents.
pub fn connected_sets(w: &GraphWindow, cap: usize) -> Vec<Vec<VertexId>> {
    let mut all: Vec<Vec<VertexId>> = Vec::new();
    let mut layer: HashSet<Vec<VertexId>> = HashSet::new();
    layer.insert(vec![w.origin()]);
    for _ in 1..=cap {
        let mut next: HashSet<Vec<VertexId>> = HashSet::new();
        for set in &layer {
            for &v in set {
                for &u in w.neighbors(v) {
                    if !set.contains(&u) {
                        let mut bigger = set.clone();
                        bigger.push(u);
                        bigger.sort_unstable();
                        next.insert(bigger);
                    }
                }
            }
        }
        all.extend(layer.drain());
        layer = next;
    }
    all.sort();
    all
}

/// Counts of connected sets by size.
pub fn connected_set_counts(w: &GraphWindow, cap: usize) -> Vec<u64> {
    let mut counts = vec![0u64; cap + 1];
    for s in connected_sets(w, cap) {
        counts[s.len()] += 1;
    }
    counts
}

fn boundary_edges(w: &GraphWindow, set: &[VertexId]) -> Vec<Edge> {
    w.edges()
        .iter()
        .copied()
        .filter(|e| set.contains(&e.u) != set.contains(&e.v))
        .collect()
}

fn complement_reaches_sphere(w: &GraphWindow, set: &[VertexId]) -> bool {
    let mut seen: HashSet<VertexId> = w.sphere().collect();
    let mut stack: Vec<VertexId> = w.sphere().collect();
    while let Some(v) = stack.pop() {
        for &u in w.neighbors(v) {
            if !set.contains(&u) && seen.insert(u) {
                stack.push(u);
            }
        }
    }
    seen.len() + set.len() == w.len()
}

/// Minimal cutsets of size `<= n_max` whose origin side has at most `cap`
/// vertices and lies in `B_{R-2}`.
pub fn brute_force_cutsets(w: &GraphWindow, n_max: usize, cap: usize) -> BTreeSet<Vec<Edge>> {
    let wall = w.radius() - 2;
    let mut out = BTreeSet::new();
    for set in connected_sets(w, cap) {
        if set.iter().any(|&v| w.depth(v) > wall) {
            continue;
        }
        let mut delta = boundary_edges(w, &set);
        if delta.len() > n_max || !complement_reaches_sphere(w, &set) {
            continue;
        }
        delta.sort_unstable();
        out.insert(delta);
    }
    out
}
