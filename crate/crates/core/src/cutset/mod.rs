//! Minimal cutsets separating the origin from infinity.
//!
//! A minimal cutset is the edge boundary `δK` of a finite connected `K ∋ o`
//! all of whose complementary components are infinite. In a window, "infinite"
//! is read as "meets the boundary sphere `S_R`".

mod closeness;
mod enumerate;
mod subsets;

pub use closeness::{
    closeness_bruteforce, closeness_edges, closeness_vertices, set_distance, sup_closeness,
    ClosenessReport, Convention, SupClosenessRow,
};
pub use enumerate::{
    count_min_cutsets, enumerate_min_cutsets, enumerate_min_cutsets_up_to, fit_alpha, AlphaFit,
    CountTable, EnumerationLimits,
};
pub use subsets::{
    decode_walk, enumerate_connected_subsets, for_each_connected_subset, walk_certificate,
};

use crate::error::{Error, Result};
use crate::graph::{Edge, GraphWindow, VertexId};

/// A minimal cutset with its origin component `K`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cutset {
    /// `δK`, sorted.
    pub edges: Vec<Edge>,
    /// The origin component after removing `edges`, sorted.
    pub component: Vec<VertexId>,
    /// `K ⊆ B_{R-2}` and every other component meets `S_R`.
    pub exact: bool,
}

impl Cutset {
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    /// Cutset stream line: `n<TAB>edge edge ...[<TAB>closeness]`, edges as `u~v` keys.
    pub fn stream_line(&self, w: &GraphWindow, closeness: Option<u32>) -> String {
        let edges: Vec<String> = self
            .edges
            .iter()
            .map(|e| format!("{}~{}", w.key(e.u), w.key(e.v)))
            .collect();
        let mut line = format!("{}\t{}", self.size(), edges.join(" "));
        if let Some(c) = closeness {
            line.push('\t');
            line.push_str(&c.to_string());
        }
        line
    }
}

/// Outcome of checking whether an edge set is a minimal cutset around `o`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalityCertificate {
    /// The origin component after removing the edges.
    pub component: Vec<VertexId>,
    /// The origin component avoids `S_R`.
    pub separates: bool,
    /// `δK` equals the given edge set.
    pub boundary_matches: bool,
    /// Components other than `K` that do not meet `S_R`.
    pub finite_components: Vec<Vec<VertexId>>,
}

impl MinimalityCertificate {
    pub fn is_minimal(&self) -> bool {
        self.separates && self.boundary_matches && self.finite_components.is_empty()
    }
}

fn certify(w: &GraphWindow, edges: &[Edge]) -> MinimalityCertificate {
    let comps = w.components(&[], edges);
    let o = w.origin();
    let mut component = Vec::new();
    let mut separates = false;
    let mut finite_components = Vec::new();
    for c in comps {
        if c.vertices.binary_search(&o).is_ok() {
            separates = !c.touches_boundary;
            component = c.vertices;
        } else if !c.touches_boundary {
            finite_components.push(c.vertices);
        }
    }
    let mut sorted = edges.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let boundary = w.edge_boundary_unchecked(&w.vertex_mask(&component));
    MinimalityCertificate {
        boundary_matches: separates && boundary == sorted,
        component,
        separates,
        finite_components,
    }
}

/// Checks that `edges` is a minimal cutset separating `o` from infinity.
///
/// Edges touching `S_R` are a margin violation.
pub fn is_minimal_cutset(w: &GraphWindow, edges: &[Edge]) -> Result<MinimalityCertificate> {
    for e in edges {
        if w.edge_id(*e).is_none() {
            return Err(Error::Precondition(format!("{e:?} is not a window edge")));
        }
        if w.on_sphere(e.u) || w.on_sphere(e.v) {
            return Err(Error::Margin(format!(
                "edge {}~{} touches the boundary sphere",
                w.key(e.u),
                w.key(e.v)
            )));
        }
    }
    Ok(certify(w, edges))
}

/// The cutset `δK` of a vertex set `K ∋ o`, certified.
pub fn cutset_of(w: &GraphWindow, component: &[VertexId]) -> Result<Cutset> {
    let edges = w.edge_boundary(component)?;
    let cert = certify(w, &edges);
    let mut k = component.to_vec();
    k.sort_unstable();
    k.dedup();
    if !cert.is_minimal() || cert.component != k {
        return Err(Error::Precondition("vertex set is not the origin side of a minimal cutset".into()));
    }
    let wall = w.radius().saturating_sub(2);
    Ok(Cutset {
        exact: k.iter().all(|&v| w.depth(v) <= wall),
        edges,
        component: k,
    })
}

/// `S_n`: the edges separating `N_n(X)` from infinity.
///
/// Components of the window minus `N_n(X)` that miss `S_R` are swallowed
/// into `K`, so the result is a minimal cutset.
pub fn neighborhood_cutset(w: &GraphWindow, x: &[VertexId], n: u32) -> Result<Cutset> {
    if !x.contains(&w.origin()) {
        return Err(Error::Precondition("X must contain the origin".into()));
    }
    if !w.is_connected_set(x) {
        return Err(Error::Precondition("X must be connected".into()));
    }
    let nbhd = w.neighborhood(x, n)?;
    let mask = w.vertex_mask(&nbhd);
    let mut k = nbhd;
    for c in w.components_masked(&mask, &vec![false; w.edge_count()]) {
        if !c.touches_boundary {
            k.extend(c.vertices);
        }
    }
    k.sort_unstable();
    let kmask = w.vertex_mask(&k);
    let edges = w.edge_boundary_unchecked(&kmask);
    let wall = w.radius().saturating_sub(2);
    Ok(Cutset {
        exact: k.iter().all(|&v| w.depth(v) <= wall),
        edges,
        component: k,
    })
}

#[cfg(test)]
mod tests;
