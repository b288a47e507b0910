//! Finite windows of infinite bounded-degree graphs.
//!
//! A [`GraphProvider`] describes an infinite graph through a neighbor
//! function on canonical vertex keys. [`GraphWindow`] materializes the ball
//! `B_R(o)` of such a graph; every other algorithm in the crate runs on
//! windows and refers to vertices by their dense [`VertexId`].
//!
//! Window vertex ids are assigned in `(distance from o, key)` order, so the
//! ids of an `R`-window are a prefix of the ids of any larger window of the
//! same provider, and the boundary sphere `S_R` is a suffix.

mod dump;
mod flow;
mod providers;

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

pub use flow::{FlowNetwork, RayReport};
pub use providers::{HexLattice, RegularTree};

use crate::dl::DlVertex;
use crate::error::{Error, Result};
use crate::group::{GeneratingSet, GroupElement};

/// Dense index of a vertex inside a [`GraphWindow`].
pub type VertexId = usize;

pub const UNREACHED: u32 = u32::MAX;

/// Canonical key of a vertex of an infinite graph. Two keys are equal iff
/// they denote the same vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexKey {
    /// Integer coordinates of a lattice site that is not a group element.
    Site(Vec<i64>),
    /// Reduced word of a regular tree vertex (no letter repeated twice in a row).
    Word(Vec<u8>),
    Group(GroupElement),
    Dl(DlVertex),
}

impl fmt::Display for VertexKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexKey::Site(c) => {
                write!(f, "(")?;
                for (i, x) in c.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
            VertexKey::Word(w) if w.is_empty() => write!(f, "e"),
            VertexKey::Word(w) => {
                for &l in w {
                    write!(f, "{}", (b'a' + l) as char)?;
                }
                Ok(())
            }
            VertexKey::Group(g) => write!(f, "{g}"),
            VertexKey::Dl(v) => write!(f, "{v}"),
        }
    }
}

/// An infinite, locally finite graph given by a neighbor function.
///
/// Contract: the neighbor relation is symmetric, neighbor lists are
/// duplicate-free, deterministic and of length at most `degree_bound()`.
pub trait GraphProvider: Send + Sync {
    fn family(&self) -> &str;

    fn origin(&self) -> VertexKey;

    fn neighbors(&self, v: &VertexKey) -> Vec<VertexKey>;

    fn degree_bound(&self) -> usize;

    /// Radius `R0` from which the window proxy for infinity is exact: for
    /// `R >= R0`, a component of `B_R` minus a set inside `B_{R-2}` that meets
    /// `S_R` is infinite in the full graph.
    fn boundary_connected_from(&self) -> u32 {
        1
    }

    /// The generating set when the provider is a Cayley graph; window
    /// neighbor slots then coincide with generator indices.
    fn generating_set(&self) -> Option<&GeneratingSet> {
        None
    }
}

/// An undirected edge with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
}

impl Edge {
    pub fn new(a: VertexId, b: VertexId) -> Self {
        if a <= b {
            Edge { u: a, v: b }
        } else {
            Edge { u: b, v: a }
        }
    }

    pub fn other(&self, x: VertexId) -> VertexId {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct WindowLimits {
    pub max_vertices: usize,
}

impl Default for WindowLimits {
    fn default() -> Self {
        Self { max_vertices: 1_000_000 }
    }
}

/// Window distance with its exactness certificate.
///
/// `exact` holds when `dist(o,u) + dist(o,v) + value <= 2R`: any path of that
/// length between `u` and `v` stays inside the ball, so the window distance
/// is the distance in the infinite graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WindowDistance {
    pub value: u32,
    pub exact: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub vertices: Vec<VertexId>,
    /// Whether the component meets the boundary sphere `S_R`, the window
    /// proxy for being infinite.
    pub touches_boundary: bool,
}

/// The ball `B_R(o)` of a provider, with distances from `o`.
pub struct GraphWindow {
    provider: Arc<dyn GraphProvider>,
    radius: u32,
    keys: Vec<VertexKey>,
    index: HashMap<VertexKey, VertexId>,
    dist: Vec<u32>,
    offsets: Vec<usize>,
    targets: Vec<VertexId>,
    slots: Vec<u8>,
    arc_edge: Vec<usize>,
    twin: Vec<usize>,
    edges: Vec<Edge>,
    sphere_start: VertexId,
}

impl fmt::Debug for GraphWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GraphWindow")
            .field("family", &self.provider.family())
            .field("radius", &self.radius)
            .field("vertices", &self.keys.len())
            .field("edges", &self.edges.len())
            .finish()
    }
}

/// Builds the radius-`radius` window of `provider` around its origin.
pub fn build_window(
    provider: Arc<dyn GraphProvider>,
    radius: u32,
    limits: WindowLimits,
) -> Result<GraphWindow> {
    GraphWindow::build(provider, radius, limits)
}

impl GraphWindow {
    pub fn build(
        provider: Arc<dyn GraphProvider>,
        radius: u32,
        limits: WindowLimits,
    ) -> Result<Self> {
        if radius < 1 {
            return Err(Error::Precondition("window radius must be at least 1".into()));
        }
        // Breadth-first layers, each sorted by key.
        let origin = provider.origin();
        let mut seen: HashMap<VertexKey, u32> = HashMap::new();
        seen.insert(origin.clone(), 0);
        let mut layers: Vec<Vec<VertexKey>> = vec![vec![origin]];
        let mut total = 1usize;
        for r in 1..=radius {
            let mut next = Vec::new();
            for v in &layers[(r - 1) as usize] {
                for u in provider.neighbors(v) {
                    if !seen.contains_key(&u) {
                        seen.insert(u.clone(), r);
                        next.push(u);
                    }
                }
            }
            total += next.len();
            if total > limits.max_vertices {
                return Err(Error::ResourceCap {
                    what: "window vertices",
                    limit: limits.max_vertices,
                });
            }
            next.sort();
            layers.push(next);
        }
        drop(seen);

        let mut keys = Vec::with_capacity(total);
        let mut dist = Vec::with_capacity(total);
        for (r, layer) in layers.into_iter().enumerate() {
            for k in layer {
                keys.push(k);
                dist.push(r as u32);
            }
        }
        let index: HashMap<VertexKey, VertexId> =
            keys.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        let sphere_start = dist.iter().position(|&d| d == radius).unwrap_or(keys.len());

        let mut offsets = Vec::with_capacity(keys.len() + 1);
        let mut targets = Vec::new();
        let mut slots = Vec::new();
        offsets.push(0);
        for k in &keys {
            for (slot, u) in provider.neighbors(k).iter().enumerate() {
                if let Some(&j) = index.get(u) {
                    targets.push(j);
                    slots.push(slot as u8);
                }
            }
            offsets.push(targets.len());
        }

        let mut edges = Vec::new();
        for v in 0..keys.len() {
            for &u in &targets[offsets[v]..offsets[v + 1]] {
                if v < u {
                    edges.push(Edge::new(v, u));
                }
            }
        }
        edges.sort();
        let edge_ids: HashMap<Edge, usize> =
            edges.iter().enumerate().map(|(i, e)| (*e, i)).collect();

        let mut arc_edge = vec![0; targets.len()];
        let mut twin = vec![usize::MAX; targets.len()];
        for v in 0..keys.len() {
            for a in offsets[v]..offsets[v + 1] {
                let u = targets[a];
                arc_edge[a] = *edge_ids.get(&Edge::new(v, u)).ok_or_else(|| {
                    Error::Precondition(format!(
                        "provider `{}` is not symmetric at {}",
                        provider.family(),
                        keys[v]
                    ))
                })?;
                twin[a] = (offsets[u]..offsets[u + 1])
                    .find(|&b| targets[b] == v)
                    .ok_or_else(|| {
                        Error::Precondition(format!(
                            "provider `{}` is not symmetric between {} and {}",
                            provider.family(),
                            keys[v],
                            keys[u]
                        ))
                    })?;
            }
        }

        Ok(Self {
            provider,
            radius,
            keys,
            index,
            dist,
            offsets,
            targets,
            slots,
            arc_edge,
            twin,
            edges,
            sphere_start,
        })
    }

    pub fn provider(&self) -> &Arc<dyn GraphProvider> {
        &self.provider
    }

    pub fn family(&self) -> &str {
        self.provider.family()
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn origin(&self) -> VertexId {
        0
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn degree_bound(&self) -> usize {
        self.provider.degree_bound()
    }

    pub fn key(&self, v: VertexId) -> &VertexKey {
        &self.keys[v]
    }

    pub fn keys(&self) -> &[VertexKey] {
        &self.keys
    }

    pub fn id(&self, key: &VertexKey) -> Option<VertexId> {
        self.index.get(key).copied()
    }

    pub fn require(&self, key: &VertexKey) -> Result<VertexId> {
        self.id(key).ok_or_else(|| Error::NotInWindow(key.to_string()))
    }

    /// Distance from the origin.
    pub fn depth(&self, v: VertexId) -> u32 {
        self.dist[v]
    }

    pub fn depths(&self) -> &[u32] {
        &self.dist
    }

    pub fn on_sphere(&self, v: VertexId) -> bool {
        v >= self.sphere_start
    }

    /// The boundary sphere `S_R`.
    pub fn sphere(&self) -> std::ops::Range<VertexId> {
        self.sphere_start..self.keys.len()
    }

    /// Vertices at distance `<= r` from the origin (a prefix of the ids).
    pub fn ball(&self, r: u32) -> Vec<VertexId> {
        (0..self.keys.len()).take_while(|&v| self.dist[v] <= r).collect()
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Provider neighbor positions matching [`Self::neighbors`]; for Cayley
    /// providers these are generator indices.
    pub fn neighbor_slots(&self, v: VertexId) -> &[u8] {
        &self.slots[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Neighbor reached from `v` through provider slot `slot`, if inside the window.
    pub fn step(&self, v: VertexId, slot: u8) -> Option<VertexId> {
        self.neighbor_slots(v)
            .iter()
            .position(|&s| s == slot)
            .map(|i| self.neighbors(v)[i])
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub(crate) fn arcs(&self, v: VertexId) -> std::ops::Range<usize> {
        self.offsets[v]..self.offsets[v + 1]
    }

    pub(crate) fn arc_target(&self, a: usize) -> VertexId {
        self.targets[a]
    }

    pub(crate) fn arc_twin(&self, a: usize) -> usize {
        self.twin[a]
    }

    pub(crate) fn arc_edge(&self, a: usize) -> usize {
        self.arc_edge[a]
    }

    pub fn arc_count(&self) -> usize {
        self.targets.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Index of `e` in [`Self::edges`].
    pub fn edge_id(&self, e: Edge) -> Option<usize> {
        self.arcs(e.u).find(|&a| self.targets[a] == e.v).map(|a| self.arc_edge[a])
    }

    pub fn edge_by_keys(&self, a: &VertexKey, b: &VertexKey) -> Result<Edge> {
        let (u, v) = (self.require(a)?, self.require(b)?);
        let e = Edge::new(u, v);
        if self.edge_id(e).is_none() {
            return Err(Error::Precondition(format!("{a} and {b} are not adjacent")));
        }
        Ok(e)
    }

    pub fn vertex_mask(&self, set: &[VertexId]) -> Vec<bool> {
        let mut m = vec![false; self.len()];
        for &v in set {
            m[v] = true;
        }
        m
    }

    /// Multi-source breadth-first distances inside the window, optionally
    /// avoiding blocked vertices and blocked edges (by edge id).
    pub fn bfs(
        &self,
        sources: &[VertexId],
        blocked_vertices: Option<&[bool]>,
        blocked_edges: Option<&[bool]>,
    ) -> Vec<u32> {
        let mut d = vec![UNREACHED; self.len()];
        let mut queue = VecDeque::new();
        for &s in sources {
            if blocked_vertices.is_some_and(|b| b[s]) || d[s] == 0 {
                continue;
            }
            d[s] = 0;
            queue.push_back(s);
        }
        while let Some(v) = queue.pop_front() {
            for a in self.arcs(v) {
                let u = self.targets[a];
                if d[u] != UNREACHED
                    || blocked_vertices.is_some_and(|b| b[u])
                    || blocked_edges.is_some_and(|b| b[self.arc_edge[a]])
                {
                    continue;
                }
                d[u] = d[v] + 1;
                queue.push_back(u);
            }
        }
        d
    }

    /// Shortest path (as a vertex sequence) from `from` to `to` avoiding
    /// blocked edges; `None` when disconnected.
    pub fn shortest_path(
        &self,
        from: VertexId,
        to: VertexId,
        blocked_edges: Option<&[bool]>,
    ) -> Option<Vec<VertexId>> {
        let d = self.bfs(&[to], None, blocked_edges);
        if d[from] == UNREACHED {
            return None;
        }
        let mut path = vec![from];
        let mut v = from;
        while v != to {
            // first neighbor in adjacency order one step closer to `to`
            let next = self
                .arcs(v)
                .filter(|&a| !blocked_edges.is_some_and(|b| b[self.arc_edge[a]]))
                .map(|a| self.targets[a])
                .find(|&u| d[u] + 1 == d[v])?;
            path.push(next);
            v = next;
        }
        Some(path)
    }

    /// Length of a shortest path inside the window between `u` and `v`.
    pub fn distance(&self, u: VertexId, v: VertexId) -> Result<WindowDistance> {
        for x in [u, v] {
            if x >= self.len() {
                return Err(Error::NotInWindow(format!("vertex id {x}")));
            }
        }
        let d = self.bfs(&[u], None, None)[v];
        Ok(WindowDistance {
            value: d,
            exact: self.dist[u] + self.dist[v] + d <= 2 * self.radius,
        })
    }

    pub fn distance_by_keys(&self, a: &VertexKey, b: &VertexKey) -> Result<WindowDistance> {
        self.distance(self.require(a)?, self.require(b)?)
    }

    fn check_ids(&self, set: &[VertexId]) -> Result<()> {
        match set.iter().find(|&&v| v >= self.len()) {
            Some(v) => Err(Error::NotInWindow(format!("vertex id {v}"))),
            None => Ok(()),
        }
    }

    fn check_off_sphere(&self, set: &[VertexId], what: &str) -> Result<()> {
        self.check_ids(set)?;
        if let Some(&v) = set.iter().find(|&&v| self.on_sphere(v)) {
            return Err(Error::Margin(format!(
                "{what} meets the boundary sphere S_{} at {}",
                self.radius, self.keys[v]
            )));
        }
        Ok(())
    }

    /// `N_n(X)`: all vertices at distance `<= n` from `X`, sorted.
    ///
    /// Fails with a margin error when the neighborhood reaches `S_R`, since it
    /// could then be truncated by the window.
    pub fn neighborhood(&self, set: &[VertexId], n: u32) -> Result<Vec<VertexId>> {
        self.check_ids(set)?;
        let mut d = vec![UNREACHED; self.len()];
        let mut queue = VecDeque::new();
        let mut out = Vec::new();
        for &s in set {
            if d[s] == UNREACHED {
                d[s] = 0;
                queue.push_back(s);
            }
        }
        while let Some(v) = queue.pop_front() {
            if self.on_sphere(v) {
                return Err(Error::Margin(format!(
                    "{}-neighborhood reaches the boundary sphere at {}",
                    n, self.keys[v]
                )));
            }
            out.push(v);
            if d[v] == n {
                continue;
            }
            for &u in self.neighbors(v) {
                if d[u] == UNREACHED {
                    d[u] = d[v] + 1;
                    queue.push_back(u);
                }
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    /// External vertex boundary `∂X`: vertices outside `X` adjacent to `X`.
    pub fn boundary(&self, set: &[VertexId]) -> Result<Vec<VertexId>> {
        self.check_off_sphere(set, "vertex set")?;
        let mask = self.vertex_mask(set);
        let mut out: Vec<VertexId> = set
            .iter()
            .flat_map(|&v| self.neighbors(v).iter().copied())
            .filter(|&u| !mask[u])
            .collect();
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    /// Inner vertex boundary `∂_i X`: vertices of `X` adjacent to the complement.
    pub fn inner_boundary(&self, set: &[VertexId]) -> Result<Vec<VertexId>> {
        self.check_off_sphere(set, "vertex set")?;
        let mask = self.vertex_mask(set);
        let mut out: Vec<VertexId> = set
            .iter()
            .copied()
            .filter(|&v| self.neighbors(v).iter().any(|&u| !mask[u]))
            .collect();
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    /// Edge boundary `δX`: edges with exactly one endpoint in `X`, sorted.
    pub fn edge_boundary(&self, set: &[VertexId]) -> Result<Vec<Edge>> {
        self.check_off_sphere(set, "vertex set")?;
        Ok(self.edge_boundary_unchecked(&self.vertex_mask(set)))
    }

    pub(crate) fn edge_boundary_unchecked(&self, mask: &[bool]) -> Vec<Edge> {
        let mut out: Vec<Edge> = self
            .edges
            .iter()
            .copied()
            .filter(|e| mask[e.u] != mask[e.v])
            .collect();
        out.sort_unstable();
        out
    }

    /// Connected components of the window after deleting vertices and edges,
    /// ordered by smallest vertex id.
    pub fn components(
        &self,
        removed_vertices: &[VertexId],
        removed_edges: &[Edge],
    ) -> Vec<Component> {
        let vmask = self.vertex_mask(removed_vertices);
        let mut emask = vec![false; self.edge_count()];
        for e in removed_edges {
            if let Some(id) = self.edge_id(*e) {
                emask[id] = true;
            }
        }
        self.components_masked(&vmask, &emask)
    }

    pub(crate) fn components_masked(&self, vmask: &[bool], emask: &[bool]) -> Vec<Component> {
        let mut label = vec![usize::MAX; self.len()];
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for s in 0..self.len() {
            if vmask[s] || label[s] != usize::MAX {
                continue;
            }
            let c = out.len();
            label[s] = c;
            stack.push(s);
            let mut verts = Vec::new();
            let mut touches = false;
            while let Some(v) = stack.pop() {
                verts.push(v);
                touches |= self.on_sphere(v);
                for a in self.arcs(v) {
                    let u = self.targets[a];
                    if vmask[u] || emask[self.arc_edge[a]] || label[u] != usize::MAX {
                        continue;
                    }
                    label[u] = c;
                    stack.push(u);
                }
            }
            verts.sort_unstable();
            out.push(Component { vertices: verts, touches_boundary: touches });
        }
        out
    }

    /// Whether the induced subgraph on `set` is connected (empty sets are not).
    pub fn is_connected_set(&self, set: &[VertexId]) -> bool {
        let Some(&start) = set.first() else {
            return false;
        };
        let inside = self.vertex_mask(set);
        let mut seen = vec![false; self.len()];
        seen[start] = true;
        let mut stack = vec![start];
        let mut count = 0;
        while let Some(v) = stack.pop() {
            count += 1;
            for &u in self.neighbors(v) {
                if inside[u] && !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        let distinct = inside.iter().filter(|&&b| b).count();
        count == distinct
    }

    /// Maximum number of vertex-disjoint paths from `∂X` to `S_R` avoiding
    /// `X`, the window stand-in for disjoint infinite rays leaving `X`.
    pub fn disjoint_ray_count(&self, set: &[VertexId]) -> Result<RayReport> {
        self.check_off_sphere(set, "vertex set")?;
        flow::disjoint_rays(self, set)
    }

    /// Adjacency dump: `key<TAB>dist<TAB>neighbor;neighbor;...`.
    pub fn dump_adjacency(&self) -> String {
        dump::adjacency(self)
    }

    /// Graphviz rendering of the window.
    pub fn to_dot(&self) -> String {
        dump::dot(self)
    }
}
