use std::collections::VecDeque;

use super::{GraphWindow, VertexId};
use crate::error::Result;

/// A small Dinic max-flow network with integer capacities.
#[derive(Debug, Clone, Default)]
pub struct FlowNetwork {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<u32>,
    initial: Vec<u32>,
}

impl FlowNetwork {
    pub fn new(nodes: usize) -> Self {
        Self { head: vec![Vec::new(); nodes], ..Default::default() }
    }

    pub fn node_count(&self) -> usize {
        self.head.len()
    }

    /// Adds a directed arc and its zero-capacity reverse; returns the arc index.
    pub fn add_arc(&mut self, from: usize, to: usize, cap: u32) -> usize {
        let id = self.to.len();
        self.head[from].push(id);
        self.to.push(to);
        self.cap.push(cap);
        self.initial.push(cap);
        self.head[to].push(id + 1);
        self.to.push(from);
        self.cap.push(0);
        self.initial.push(0);
        id
    }

    /// Flow currently routed through arc `a`.
    pub fn flow(&self, a: usize) -> u32 {
        self.initial[a].saturating_sub(self.cap[a])
    }

    fn levels(&self, s: usize, t: usize) -> Option<Vec<u32>> {
        let mut level = vec![u32::MAX; self.node_count()];
        level[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(v) = q.pop_front() {
            for &a in &self.head[v] {
                let u = self.to[a];
                if self.cap[a] > 0 && level[u] == u32::MAX {
                    level[u] = level[v] + 1;
                    q.push_back(u);
                }
            }
        }
        (level[t] != u32::MAX).then_some(level)
    }

    fn augment(&mut self, v: usize, t: usize, pushed: u32, level: &[u32], it: &mut [usize]) -> u32 {
        if v == t {
            return pushed;
        }
        while it[v] < self.head[v].len() {
            let a = self.head[v][it[v]];
            let u = self.to[a];
            if self.cap[a] > 0 && level[u] == level[v] + 1 {
                let got = self.augment(u, t, pushed.min(self.cap[a]), level, it);
                if got > 0 {
                    self.cap[a] -= got;
                    self.cap[a ^ 1] += got;
                    return got;
                }
            }
            it[v] += 1;
        }
        0
    }

    /// Maximum flow from `s` to `t`, stopping early once `limit` is reached.
    pub fn max_flow(&mut self, s: usize, t: usize, limit: u32) -> u32 {
        let mut total = 0;
        while total < limit {
            let Some(level) = self.levels(s, t) else {
                break;
            };
            let mut it = vec![0; self.node_count()];
            loop {
                let got = self.augment(s, t, limit - total, &level, &mut it);
                if got == 0 {
                    break;
                }
                total += got;
                if total >= limit {
                    break;
                }
            }
        }
        total
    }

    /// Nodes reachable from `s` in the residual network.
    pub fn residual_reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.node_count()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &a in &self.head[v] {
                let u = self.to[a];
                if self.cap[a] > 0 && !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        seen
    }
}

/// Disjoint-ray certificate: `count` vertex-disjoint paths from `∂X` to
/// `S_R` together with a separating vertex set of the same size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RayReport {
    pub count: usize,
    pub paths: Vec<Vec<VertexId>>,
    /// Minimum vertex set (avoiding `X`) meeting every `∂X`–`S_R` path.
    pub separator: Vec<VertexId>,
}

pub(super) fn disjoint_rays(w: &GraphWindow, set: &[VertexId]) -> Result<RayReport> {
    let n = w.len();
    let inside = w.vertex_mask(set);
    let boundary = w.boundary(set)?;
    let (source, sink) = (2 * n, 2 * n + 1);
    let mut net = FlowNetwork::new(2 * n + 2);
    // Only the split arcs are unit; everything else is effectively unbounded
    // so that minimum cuts consist of vertices.
    let big = n as u32 + 1;
    let mut through = vec![usize::MAX; n];
    for v in 0..n {
        if inside[v] {
            continue;
        }
        through[v] = net.add_arc(2 * v, 2 * v + 1, 1);
        for &u in w.neighbors(v) {
            if !inside[u] {
                net.add_arc(2 * v + 1, 2 * u, big);
            }
        }
        if w.on_sphere(v) {
            net.add_arc(2 * v + 1, sink, big);
        }
    }
    for &v in &boundary {
        net.add_arc(source, 2 * v, big);
    }
    let count = net.max_flow(source, sink, u32::MAX) as usize;

    // Decompose: every vertex carries at most one unit, so following used
    // arcs from each start vertex traces a simple path.
    let mut paths = Vec::with_capacity(count);
    for &start in &boundary {
        if through[start] == usize::MAX || net.flow(through[start]) == 0 {
            continue;
        }
        let mut path = vec![start];
        let mut v = start;
        loop {
            if w.on_sphere(v) && net.head[2 * v + 1].iter().any(|&a| net.to[a] == sink && net.flow(a) > 0)
            {
                break;
            }
            let next = net.head[2 * v + 1]
                .iter()
                .copied()
                .filter(|&a| a % 2 == 0 && net.to[a] < 2 * n && net.flow(a) > 0)
                .map(|a| net.to[a] / 2)
                .next();
            match next {
                Some(u) => {
                    path.push(u);
                    v = u;
                }
                None => break,
            }
        }
        paths.push(path);
    }

    let reach = net.residual_reachable(source);
    let separator: Vec<VertexId> =
        (0..n).filter(|&v| !inside[v] && reach[2 * v] && !reach[2 * v + 1]).collect();

    Ok(RayReport { count, paths, separator })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dinic_on_a_diamond() {
        let mut net = FlowNetwork::new(4);
        net.add_arc(0, 1, 2);
        net.add_arc(0, 2, 1);
        net.add_arc(1, 3, 1);
        net.add_arc(2, 3, 3);
        net.add_arc(1, 2, 1);
        assert_eq!(net.max_flow(0, 3, u32::MAX), 3);
    }

    #[test]
    fn limit_stops_early() {
        let mut net = FlowNetwork::new(2);
        for _ in 0..5 {
            net.add_arc(0, 1, 1);
        }
        assert_eq!(net.max_flow(0, 1, 3), 3);
    }
}
