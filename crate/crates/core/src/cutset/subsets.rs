use crate::error::{Error, Result};
use crate::graph::{GraphWindow, VertexId};

/// Calls `visit` once for every connected vertex set containing `o` with at
/// most `n` vertices (Redelmeier's untried-set recursion). Returns the counts
/// per size `0..=n`.
pub fn for_each_connected_subset<F>(w: &GraphWindow, n: usize, max_sets: u64, mut visit: F) -> Result<Vec<u64>>
where
    F: FnMut(&[VertexId]),
{
    if n as u64 > w.radius() as u64 {
        return Err(Error::Precondition(format!("n = {n} exceeds the window radius {}", w.radius())));
    }
    let mut counts = vec![0u64; n + 1];
    if n == 0 {
        return Ok(counts);
    }
    let mut seen = vec![false; w.len()];
    let o = w.origin();
    seen[o] = true;
    let mut set = Vec::with_capacity(n);
    let mut ctx = Ctx { w, n, max_sets, total: 0, seen, set: &mut set, counts: &mut counts, visit: &mut visit };
    ctx.grow(vec![o])?;
    Ok(counts)
}

struct Ctx<'a, F> {
    w: &'a GraphWindow,
    n: usize,
    max_sets: u64,
    total: u64,
    seen: Vec<bool>,
    set: &'a mut Vec<VertexId>,
    counts: &'a mut Vec<u64>,
    visit: &'a mut F,
}

impl<F: FnMut(&[VertexId])> Ctx<'_, F> {
    fn grow(&mut self, mut untried: Vec<VertexId>) -> Result<()> {
        while let Some(v) = untried.pop() {
            self.set.push(v);
            self.counts[self.set.len()] += 1;
            self.total += 1;
            if self.total > self.max_sets {
                return Err(Error::ResourceCap { what: "connected subsets", limit: self.max_sets as usize });
            }
            (self.visit)(self.set);
            if self.set.len() < self.n {
                let mut next = untried.clone();
                let mut added = Vec::new();
                for &u in self.w.neighbors(v) {
                    if !self.seen[u] {
                        self.seen[u] = true;
                        added.push(u);
                        next.push(u);
                    }
                }
                self.grow(next)?;
                for u in added {
                    self.seen[u] = false;
                }
            }
            self.set.pop();
        }
        Ok(())
    }
}

/// Number of connected `n`-vertex sets containing `o`.
pub fn enumerate_connected_subsets(w: &GraphWindow, n: usize, max_sets: u64) -> Result<u64> {
    let counts = for_each_connected_subset(w, n, max_sets, |_| {})?;
    Ok(counts[n])
}

/// Depth-first walk around a spanning tree of `set` from `o`, recorded as
/// provider slots: one step down and one step back per tree edge.
pub fn walk_certificate(w: &GraphWindow, set: &[VertexId]) -> Result<Vec<u8>> {
    let o = w.origin();
    if !set.contains(&o) || !w.is_connected_set(set) {
        return Err(Error::Precondition("walk certificates need a connected set containing o".into()));
    }
    let inside = w.vertex_mask(set);
    let mut visited = vec![false; w.len()];
    let mut walk = Vec::new();
    fn dfs(w: &GraphWindow, v: VertexId, inside: &[bool], visited: &mut [bool], walk: &mut Vec<u8>) {
        visited[v] = true;
        for (i, &u) in w.neighbors(v).iter().enumerate() {
            if inside[u] && !visited[u] {
                walk.push(w.neighbor_slots(v)[i]);
                dfs(w, u, inside, visited, walk);
                let back = w.neighbors(u).iter().position(|&x| x == v).unwrap();
                walk.push(w.neighbor_slots(u)[back]);
            }
        }
    }
    dfs(w, o, &inside, &mut visited, &mut walk);
    Ok(walk)
}

/// Replays a walk from `o`; returns the visited vertices, sorted.
pub fn decode_walk(w: &GraphWindow, walk: &[u8]) -> Result<Vec<VertexId>> {
    let mut v = w.origin();
    let mut out = vec![v];
    for &slot in walk {
        v = w
            .step(v, slot)
            .ok_or_else(|| Error::Precondition(format!("slot {slot} leaves the window at {}", w.key(v))))?;
        out.push(v);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}
