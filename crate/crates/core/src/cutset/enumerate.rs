use std::collections::BTreeSet;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use super::Cutset;
use crate::error::{Error, Result};
use crate::graph::{GraphWindow, VertexId};

const UNDECIDED: u8 = 0;
const INSIDE: u8 = 1;
const EXCLUDED: u8 = 2;

/// Search levels below which branches are handed to rayon.
const SPLIT_DEPTH: u32 = 6;
/// States counted locally before they are added to the shared total.
const FLUSH_EVERY: u64 = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationLimits {
    /// Cap on visited search states.
    pub max_states: u64,
    pub parallel: bool,
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        Self { max_states: 2_000_000_000, parallel: true }
    }
}

/// Per-size counts of minimal cutsets with the window-exact range.
#[derive(Debug, Clone, PartialEq)]
pub struct CountTable {
    /// `counts[n]` for `n = 0..=n_max`.
    pub counts: Vec<u64>,
    /// Sizes strictly below this value are unaffected by the window edge.
    pub exact_below: usize,
    pub alpha: Option<AlphaFit>,
}

impl CountTable {
    pub fn is_exact(&self, n: usize) -> bool {
        n < self.exact_below
    }

    /// Fit over the exact positive counts with size `<= n`.
    pub fn running_alpha(&self, n: usize) -> Option<AlphaFit> {
        let hi = n.min(self.counts.len().saturating_sub(1));
        fit_alpha(&self.points(hi))
    }

    fn points(&self, hi: usize) -> Vec<(usize, u64)> {
        (1..=hi)
            .filter(|&n| self.is_exact(n) && self.counts[n] > 0)
            .map(|n| (n, self.counts[n]))
            .collect()
    }
}

/// Least-squares fit of `ln count ≈ intercept + n ln α`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaFit {
    pub alpha: f64,
    pub intercept: f64,
    /// Smallest and largest size used.
    pub range: (usize, usize),
    pub points: usize,
}

/// Ordinary least squares on `(n, ln count)`; needs two distinct sizes.
pub fn fit_alpha(points: &[(usize, u64)]) -> Option<AlphaFit> {
    let pts: Vec<(f64, f64)> = points
        .iter()
        .filter(|p| p.1 > 0)
        .map(|&(n, c)| (n as f64, (c as f64).ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let lo = points.iter().filter(|p| p.1 > 0).map(|p| p.0).min()?;
    let hi = points.iter().filter(|p| p.1 > 0).map(|p| p.0).max()?;
    Some(AlphaFit { alpha: slope.exp(), intercept: my - slope * mx, range: (lo, hi), points: pts.len() })
}

/// All window-exact-candidate minimal cutsets of size exactly `n`.
pub fn enumerate_min_cutsets(w: &GraphWindow, n: usize, limits: EnumerationLimits) -> Result<Vec<Cutset>> {
    let mut all = enumerate_min_cutsets_up_to(w, n, limits)?;
    all.retain(|c| c.size() == n);
    Ok(all)
}

/// All minimal cutsets with `K ⊆ B_{R-2}` and size `<= n_max`, ordered by
/// `(size, edges)`.
pub fn enumerate_min_cutsets_up_to(
    w: &GraphWindow,
    n_max: usize,
    limits: EnumerationLimits,
) -> Result<Vec<Cutset>> {
    let out = run(w, n_max, limits, true)?;
    let mut cutsets: Vec<Cutset> = out
        .found
        .into_iter()
        .map(|k| {
            let mut component = k;
            component.sort_unstable();
            let edges = w.edge_boundary_unchecked(&w.vertex_mask(&component));
            Cutset { exact: edges.len() < out.wall_bound, edges, component }
        })
        .collect();
    cutsets.sort_unstable_by(|a, b| (a.size(), &a.edges).cmp(&(b.size(), &b.edges)));
    Ok(cutsets)
}

/// Counts of minimal cutsets for sizes `0..=n_max` with an α fit over the
/// exact range.
pub fn count_min_cutsets(w: &GraphWindow, n_max: usize, limits: EnumerationLimits) -> Result<CountTable> {
    let out = run(w, n_max, limits, false)?;
    let mut table = CountTable { counts: out.counts, exact_below: out.wall_bound, alpha: None };
    table.alpha = fit_alpha(&table.points(n_max));
    Ok(table)
}

struct Outcome {
    found: Vec<Vec<VertexId>>,
    counts: Vec<u64>,
    wall_bound: usize,
}

fn run(w: &GraphWindow, limit: usize, limits: EnumerationLimits, collect: bool) -> Result<Outcome> {
    if w.radius() < 2 {
        return Err(Error::Precondition("enumeration needs R >= 2".into()));
    }
    let mut s = Search::new(w, limit, limits.max_states, collect);
    let o = w.origin();
    s.include(o);
    s.recurse(if limits.parallel { 0 } else { SPLIT_DEPTH })?;
    s.flush_states()?;
    Ok(Outcome { found: s.found, counts: s.counts, wall_bound: s.wall_bound })
}

/// Include/exclude search over connected `K ∋ o`.
///
/// The undecided vertex with the smallest id adjacent to `K` is branched on,
/// include first. Each `K` appears at exactly one leaf. States whose flow
/// lower bound on `|δK|` exceeds the limit are cut.
#[derive(Clone)]
struct Search<'w> {
    w: &'w GraphWindow,
    limit: usize,
    wall: u32,
    max_states: u64,
    collect: bool,
    state: Vec<u8>,
    touch: Vec<u16>,
    inside: Vec<VertexId>,
    frontier: BTreeSet<VertexId>,
    committed: usize,
    on_wall: usize,
    /// States not yet added to `total_states`.
    states: u64,
    /// Shared by every parallel branch so the cap is global.
    total_states: Arc<AtomicU64>,
    found: Vec<Vec<VertexId>>,
    counts: Vec<u64>,
    wall_bound: usize,
    // scratch
    flow: Vec<i8>,
    touched_arcs: Vec<usize>,
    stamp: Vec<u32>,
    generation: u32,
    parent_arc: Vec<usize>,
    queue: Vec<VertexId>,
}

impl<'w> Search<'w> {
    fn new(w: &'w GraphWindow, limit: usize, max_states: u64, collect: bool) -> Self {
        let wall = w.radius() - 2;
        let state = (0..w.len())
            .map(|v| if w.depth(v) > wall { EXCLUDED } else { UNDECIDED })
            .collect();
        Self {
            w,
            limit,
            wall,
            max_states,
            collect,
            state,
            touch: vec![0; w.len()],
            inside: Vec::new(),
            frontier: BTreeSet::new(),
            committed: 0,
            on_wall: 0,
            states: 0,
            total_states: Arc::new(AtomicU64::new(0)),
            found: Vec::new(),
            counts: vec![0; limit + 1],
            wall_bound: usize::MAX,
            flow: vec![0; w.arc_count()],
            touched_arcs: Vec::new(),
            stamp: vec![0; w.len()],
            generation: 0,
            parent_arc: vec![usize::MAX; w.len()],
            queue: Vec::new(),
        }
    }

    fn include(&mut self, v: VertexId) {
        self.state[v] = INSIDE;
        self.frontier.remove(&v);
        self.inside.push(v);
        if self.w.depth(v) == self.wall {
            self.on_wall += 1;
        }
        for &u in self.w.neighbors(v) {
            self.touch[u] += 1;
            match self.state[u] {
                EXCLUDED => self.committed += 1,
                UNDECIDED => {
                    self.frontier.insert(u);
                }
                _ => {}
            }
        }
    }

    fn undo_include(&mut self, v: VertexId) {
        for &u in self.w.neighbors(v) {
            self.touch[u] -= 1;
            match self.state[u] {
                EXCLUDED => self.committed -= 1,
                UNDECIDED if self.touch[u] == 0 => {
                    self.frontier.remove(&u);
                }
                _ => {}
            }
        }
        if self.w.depth(v) == self.wall {
            self.on_wall -= 1;
        }
        self.inside.pop();
        self.state[v] = UNDECIDED;
        self.frontier.insert(v);
    }

    fn exclude(&mut self, v: VertexId) {
        self.state[v] = EXCLUDED;
        self.frontier.remove(&v);
        self.committed += self.touch[v] as usize;
    }

    fn undo_exclude(&mut self, v: VertexId) {
        self.committed -= self.touch[v] as usize;
        self.state[v] = UNDECIDED;
        self.frontier.insert(v);
    }

    fn flush_states(&mut self) -> Result<()> {
        let total = self.total_states.fetch_add(self.states, Ordering::Relaxed) + self.states;
        self.states = 0;
        if total > self.max_states {
            return Err(Error::ResourceCap { what: "enumeration states", limit: self.max_states as usize });
        }
        Ok(())
    }

    fn recurse(&mut self, level: u32) -> Result<()> {
        self.states += 1;
        if self.states >= FLUSH_EVERY.min(self.max_states + 1) {
            self.flush_states()?;
        }
        if self.committed > self.limit {
            return Ok(());
        }
        let Some(&v) = self.frontier.first() else {
            self.leaf();
            return Ok(());
        };
        let bound = self.lower_bound(self.limit + 1);
        if bound > self.limit {
            return Ok(());
        }
        if self.on_wall > 0 {
            self.wall_bound = self.wall_bound.min(bound);
        }
        if level < SPLIT_DEPTH {
            let mut other = self.clone();
            other.found.clear();
            other.counts.iter_mut().for_each(|c| *c = 0);
            other.states = 0;
            let (a, b) = rayon::join(
                || {
                    self.include(v);
                    let r = self.recurse(level + 1);
                    self.undo_include(v);
                    r
                },
                || {
                    other.exclude(v);
                    other.recurse(level + 1)
                },
            );
            a?;
            b?;
            other.flush_states()?;
            self.found.append(&mut other.found);
            for (c, o) in self.counts.iter_mut().zip(&other.counts) {
                *c += o;
            }
            self.wall_bound = self.wall_bound.min(other.wall_bound);
            return Ok(());
        }
        self.include(v);
        let r = self.recurse(level + 1);
        self.undo_include(v);
        r?;
        self.exclude(v);
        let r = self.recurse(level + 1);
        self.undo_exclude(v);
        r
    }

    /// `K` is final: keep it when every other component reaches `S_R`.
    fn leaf(&mut self) {
        let n = self.committed;
        if self.on_wall > 0 {
            self.wall_bound = self.wall_bound.min(n);
        }
        if n > self.limit || !self.complement_all_infinite() {
            return;
        }
        self.counts[n] += 1;
        if self.collect {
            self.found.push(self.inside.clone());
        }
    }

    fn next_generation(&mut self) -> u32 {
        self.generation = self.generation.wrapping_add(1);
        if self.generation == 0 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.generation = 1;
        }
        self.generation
    }

    fn complement_all_infinite(&mut self) -> bool {
        let g = self.next_generation();
        let w = self.w;
        self.queue.clear();
        for v in w.sphere() {
            self.stamp[v] = g;
            self.queue.push(v);
        }
        let mut head = 0;
        while head < self.queue.len() {
            let v = self.queue[head];
            head += 1;
            for &u in w.neighbors(v) {
                if self.state[u] != INSIDE && self.stamp[u] != g {
                    self.stamp[u] = g;
                    self.queue.push(u);
                }
            }
        }
        self.queue.len() + self.inside.len() == w.len()
    }

    /// Max-flow from `K` to the excluded vertices with unit edge capacities,
    /// stopped at `cap`. Every completion of the state has `|δK|` at least this.
    fn lower_bound(&mut self, cap: usize) -> usize {
        let w = self.w;
        let mut total = 0;
        while total < cap {
            let g = self.next_generation();
            self.queue.clear();
            let mut sink = None;
            'seed: for i in 0..self.inside.len() {
                let v = self.inside[i];
                for a in w.arcs(v) {
                    let u = w.arc_target(a);
                    if self.state[u] == INSIDE || self.stamp[u] == g || self.flow[a] >= 1 {
                        continue;
                    }
                    self.stamp[u] = g;
                    self.parent_arc[u] = a;
                    if self.state[u] == EXCLUDED {
                        sink = Some(u);
                        break 'seed;
                    }
                    self.queue.push(u);
                }
            }
            let mut head = 0;
            while sink.is_none() && head < self.queue.len() {
                let v = self.queue[head];
                head += 1;
                for a in w.arcs(v) {
                    let u = w.arc_target(a);
                    if self.state[u] == INSIDE || self.stamp[u] == g || self.flow[a] >= 1 {
                        continue;
                    }
                    self.stamp[u] = g;
                    self.parent_arc[u] = a;
                    if self.state[u] == EXCLUDED {
                        sink = Some(u);
                        break;
                    }
                    self.queue.push(u);
                }
            }
            let Some(mut v) = sink else {
                break;
            };
            loop {
                let a = self.parent_arc[v];
                self.flow[a] += 1;
                let t = w.arc_twin(a);
                self.flow[t] -= 1;
                self.touched_arcs.push(a);
                self.touched_arcs.push(t);
                // The tail of `a` is the twin's target.
                let tail = w.arc_target(t);
                if self.state[tail] == INSIDE {
                    break;
                }
                v = tail;
            }
            total += 1;
        }
        for &a in &self.touched_arcs {
            self.flow[a] = 0;
        }
        self.touched_arcs.clear();
        total
    }
}
