use std::fmt;
use std::str::FromStr;

use super::{enumerate_min_cutsets_up_to, Cutset, EnumerationLimits};
use crate::error::{Error, Result};
use crate::graph::{Edge, GraphWindow, VertexId, UNREACHED};

/// How distances between edges are measured.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Convention {
    /// Minimum vertex distance over endpoint pairs.
    Endpoint,
    /// Endpoint distance plus one for distinct edges.
    #[default]
    Subdivision,
}

impl Convention {
    pub fn name(self) -> &'static str {
        match self {
            Convention::Endpoint => "endpoint",
            Convention::Subdivision => "subdivision",
        }
    }

    fn offset(self) -> u32 {
        match self {
            Convention::Endpoint => 0,
            Convention::Subdivision => 1,
        }
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Convention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "endpoint" => Ok(Convention::Endpoint),
            "subdivision" => Ok(Convention::Subdivision),
            other => Err(Error::Precondition(format!("unknown convention {other:?}"))),
        }
    }
}

/// `C(Y)` with a bipartition achieving it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosenessReport<T> {
    pub value: u32,
    pub part_a: Vec<T>,
    pub part_b: Vec<T>,
    pub convention: Convention,
    /// `|Y| = 1`: no nontrivial bipartition exists.
    pub degenerate: bool,
}

/// Pairwise distances between sources, each source a set of vertices.
/// Returns the matrix and the largest depth among all vertices involved.
fn distance_matrix(w: &GraphWindow, sources: &[Vec<VertexId>]) -> (Vec<Vec<u32>>, u32) {
    let n = sources.len();
    let mut owner: Vec<Vec<usize>> = vec![Vec::new(); w.len()];
    let mut max_depth = 0;
    for (i, s) in sources.iter().enumerate() {
        for &v in s {
            owner[v].push(i);
            max_depth = max_depth.max(w.depth(v));
        }
    }
    let mut matrix = vec![vec![0u32; n]; n];
    let mut dist = vec![UNREACHED; w.len()];
    let mut queue = Vec::new();
    for i in 0..n {
        dist.iter_mut().for_each(|d| *d = UNREACHED);
        queue.clear();
        let mut found = vec![false; n];
        let mut remaining = n;
        for &v in &sources[i] {
            if dist[v] == UNREACHED {
                dist[v] = 0;
                queue.push(v);
            }
        }
        let mut head = 0;
        while head < queue.len() && remaining > 0 {
            let v = queue[head];
            head += 1;
            for &j in &owner[v] {
                if !found[j] {
                    found[j] = true;
                    remaining -= 1;
                    matrix[i][j] = dist[v];
                }
            }
            for &u in w.neighbors(v) {
                if dist[u] == UNREACHED {
                    dist[u] = dist[v] + 1;
                    queue.push(u);
                }
            }
        }
        for j in 0..n {
            if !found[j] {
                matrix[i][j] = UNREACHED;
            }
        }
    }
    (matrix, max_depth)
}

/// Maximum-spacing bipartition from a minimum spanning tree (Prim).
/// Ties are broken by index so the witness is deterministic.
fn bottleneck(d: &[Vec<u32>]) -> (u32, Vec<usize>, Vec<usize>) {
    let n = d.len();
    let mut in_tree = vec![false; n];
    let mut best = vec![u32::MAX; n];
    let mut link = vec![0usize; n];
    let mut tree: Vec<(usize, usize, u32)> = Vec::with_capacity(n.saturating_sub(1));
    in_tree[0] = true;
    best[1..n].copy_from_slice(&d[0][1..n]);
    for _ in 1..n {
        let j = (0..n).filter(|&j| !in_tree[j]).min_by_key(|&j| (best[j], j)).unwrap();
        in_tree[j] = true;
        tree.push((link[j], j, best[j]));
        for k in 0..n {
            if !in_tree[k] && d[j][k] < best[k] {
                best[k] = d[j][k];
                link[k] = j;
            }
        }
    }
    let Some(cut) = tree.iter().enumerate().max_by_key(|(i, e)| (e.2, std::cmp::Reverse(*i))).map(|(i, _)| i)
    else {
        return (0, (0..n).collect(), Vec::new());
    };
    let value = tree[cut].2;
    let mut adj = vec![Vec::new(); n];
    for (i, &(a, b, _)) in tree.iter().enumerate() {
        if i != cut {
            adj[a].push(b);
            adj[b].push(a);
        }
    }
    let mut side = vec![false; n];
    side[0] = true;
    let mut stack = vec![0];
    while let Some(v) = stack.pop() {
        for &u in &adj[v] {
            if !side[u] {
                side[u] = true;
                stack.push(u);
            }
        }
    }
    let a = (0..n).filter(|&i| side[i]).collect();
    let b = (0..n).filter(|&i| !side[i]).collect();
    (value, a, b)
}

/// Exactness: a true shortest path shorter than `h` between two involved
/// vertices stays within depth `(2 max_depth + h - 1) / 2`.
fn check_exact(w: &GraphWindow, max_depth: u32, h: u32) -> Result<()> {
    if h == UNREACHED || 2 * max_depth + h.saturating_sub(1) > 2 * w.radius() {
        return Err(Error::Margin(format!(
            "closeness threshold {h} at depth {max_depth} is not certified in a radius-{} window",
            w.radius()
        )));
    }
    Ok(())
}

fn sorted_unique<T: Ord + Clone>(items: &[T]) -> Result<Vec<T>> {
    let mut v = items.to_vec();
    v.sort();
    v.dedup();
    if v.is_empty() {
        return Err(Error::Precondition("closeness needs a nonempty set".into()));
    }
    Ok(v)
}

/// `C(Y)` for an edge set.
pub fn closeness_edges(w: &GraphWindow, y: &[Edge], convention: Convention) -> Result<ClosenessReport<Edge>> {
    let y = sorted_unique(y)?;
    for e in &y {
        if w.edge_id(*e).is_none() {
            return Err(Error::Precondition(format!("{e:?} is not a window edge")));
        }
    }
    let sources: Vec<Vec<VertexId>> = y.iter().map(|e| vec![e.u, e.v]).collect();
    let (d, max_depth) = distance_matrix(w, &sources);
    // The offset is uniform off the diagonal, so the bottleneck is unchanged.
    let (h, a, b) = bottleneck(&d);
    check_exact(w, max_depth, h)?;
    let degenerate = y.len() == 1;
    Ok(ClosenessReport {
        value: if degenerate { 0 } else { h + convention.offset() },
        part_a: a.iter().map(|&i| y[i]).collect(),
        part_b: b.iter().map(|&i| y[i]).collect(),
        convention,
        degenerate,
    })
}

/// `C(X)` for a vertex set under plain graph distance.
pub fn closeness_vertices(w: &GraphWindow, x: &[VertexId]) -> Result<ClosenessReport<VertexId>> {
    let x = sorted_unique(x)?;
    let sources: Vec<Vec<VertexId>> = x.iter().map(|&v| vec![v]).collect();
    let (d, max_depth) = distance_matrix(w, &sources);
    let (h, a, b) = bottleneck(&d);
    check_exact(w, max_depth, h)?;
    Ok(ClosenessReport {
        value: h,
        part_a: a.iter().map(|&i| x[i]).collect(),
        part_b: b.iter().map(|&i| x[i]).collect(),
        convention: Convention::Endpoint,
        degenerate: x.len() == 1,
    })
}

/// Distance between two vertex sets, certified exact.
pub fn set_distance(w: &GraphWindow, a: &[VertexId], b: &[VertexId]) -> Result<u32> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::Precondition("set distance needs nonempty sets".into()));
    }
    let d = w.bfs(a, None, None);
    let value = b.iter().map(|&v| d[v]).min().unwrap();
    let max_depth = a.iter().chain(b).map(|&v| w.depth(v)).max().unwrap();
    check_exact(w, max_depth, value)?;
    Ok(value)
}

/// Oracle: maximum over all `2^{|Y|-1} - 1` bipartitions, with pairwise
/// distances taken one pair at a time.
pub fn closeness_bruteforce(w: &GraphWindow, y: &[Edge], convention: Convention) -> Result<u32> {
    let y = sorted_unique(y)?;
    if y.len() > 20 {
        return Err(Error::Precondition("brute-force closeness is limited to 20 edges".into()));
    }
    let m = y.len();
    let mut d = vec![vec![0u32; m]; m];
    for i in 0..m {
        for j in i + 1..m {
            let mut best = u32::MAX;
            for a in [y[i].u, y[i].v] {
                for b in [y[j].u, y[j].v] {
                    let dist = w.distance(a, b)?;
                    if !dist.exact {
                        return Err(Error::Margin("pair distance not certified".into()));
                    }
                    best = best.min(dist.value);
                }
            }
            d[i][j] = best + convention.offset();
            d[j][i] = d[i][j];
        }
    }
    let mut best = 0;
    for mask in 1u32..(1 << (m - 1)) {
        let in_b = |i: usize| i > 0 && mask & (1 << (i - 1)) != 0;
        let mut cross = u32::MAX;
        for i in 0..m {
            for j in 0..m {
                if !in_b(i) && in_b(j) {
                    cross = cross.min(d[i][j]);
                }
            }
        }
        best = best.max(cross);
    }
    Ok(best)
}

/// One row of the closeness supremum table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupClosenessRow {
    pub n: usize,
    /// Window-exact cutsets of size `n`.
    pub count: usize,
    pub max: Option<u32>,
    pub witness: Option<Cutset>,
    pub running_max: Option<u32>,
}

/// Per-size maximum of `C(Π)` over window-exact minimal cutsets.
pub fn sup_closeness(
    w: &GraphWindow,
    n_max: usize,
    convention: Convention,
    limits: EnumerationLimits,
) -> Result<Vec<SupClosenessRow>> {
    let cutsets = enumerate_min_cutsets_up_to(w, n_max, limits)?;
    let mut rows: Vec<SupClosenessRow> = (1..=n_max)
        .map(|n| SupClosenessRow { n, count: 0, max: None, witness: None, running_max: None })
        .collect();
    for c in cutsets.into_iter().filter(|c| c.exact) {
        let value = closeness_edges(w, &c.edges, convention)?.value;
        let row = &mut rows[c.size() - 1];
        row.count += 1;
        if row.max.is_none_or(|m| value > m) {
            row.max = Some(value);
            row.witness = Some(c);
        }
    }
    let mut running: Option<u32> = None;
    for row in &mut rows {
        running = match (running, row.max) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        };
        row.running_max = running;
    }
    Ok(rows)
}
