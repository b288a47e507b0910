//! Shortlex spanning trees of Cayley windows, growth, subperiodicity, and
//! the finiteness-of-cutsets experiments.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use crate::cutset::{count_min_cutsets, EnumerationLimits};
use crate::error::{Error, Result};
use crate::graph::{GraphProvider, GraphWindow, VertexId, WindowLimits};

/// Spanning tree of a Cayley window where each vertex hangs off the end of
/// its shortlex-minimal word.
#[derive(Debug, Clone)]
pub struct SpanningTreeWindow {
    parent: Vec<Option<VertexId>>,
    /// Generator index of the last letter of the word.
    letter: Vec<u8>,
    depth: Vec<u32>,
    children: Vec<Vec<VertexId>>,
    /// Vertices in breadth-first (shortlex) order.
    order: Vec<VertexId>,
    names: Vec<String>,
    radius: u32,
}

/// Ordered breadth-first search: the first discovery of a vertex comes from
/// the shortlex-smallest parent word and generator.
pub fn build_shortlex_tree(w: &GraphWindow) -> Result<SpanningTreeWindow> {
    let gens = w
        .provider()
        .generating_set()
        .ok_or_else(|| Error::Precondition("shortlex trees need a Cayley window".into()))?;
    if w.radius() < 1 {
        return Err(Error::Precondition("R must be at least 1".into()));
    }
    let n = w.len();
    let mut parent = vec![None; n];
    let mut letter = vec![0u8; n];
    let mut depth = vec![u32::MAX; n];
    let mut children = vec![Vec::new(); n];
    let mut order = Vec::with_capacity(n);
    let o = w.origin();
    depth[o] = 0;
    let mut queue = VecDeque::from([o]);
    while let Some(v) = queue.pop_front() {
        order.push(v);
        let mut nb: Vec<(u8, VertexId)> =
            w.neighbor_slots(v).iter().copied().zip(w.neighbors(v).iter().copied()).collect();
        nb.sort_unstable();
        for (slot, u) in nb {
            if depth[u] == u32::MAX {
                depth[u] = depth[v] + 1;
                parent[u] = Some(v);
                letter[u] = slot;
                children[v].push(u);
                queue.push_back(u);
            }
        }
    }
    Ok(SpanningTreeWindow { parent, letter, depth, children, order, names: gens.names().to_vec(), radius: w.radius() })
}

impl SpanningTreeWindow {
    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn parent(&self, v: VertexId) -> Option<VertexId> {
        self.parent[v]
    }

    pub fn depth(&self, v: VertexId) -> u32 {
        self.depth[v]
    }

    pub fn children(&self, v: VertexId) -> &[VertexId] {
        &self.children[v]
    }

    pub fn order(&self) -> &[VertexId] {
        &self.order
    }

    /// Generator indices along the tree path from the root.
    pub fn word(&self, mut v: VertexId) -> Vec<u8> {
        let mut out = Vec::new();
        while let Some(p) = self.parent[v] {
            out.push(self.letter[v]);
            v = p;
        }
        out.reverse();
        out
    }

    /// The word with generator names, `e` for the empty word.
    pub fn word_string(&self, v: VertexId) -> String {
        let w = self.word(v);
        if w.is_empty() {
            return "e".into();
        }
        w.iter().map(|&i| self.names[i as usize].as_str()).collect::<Vec<_>>().join(" ")
    }

    /// Tree dump: `vertex<TAB>parent<TAB>word`, root parent `-`.
    pub fn dump(&self, w: &GraphWindow) -> String {
        let mut s = String::new();
        for &v in &self.order {
            let p = self.parent[v].map_or("-".to_string(), |p| w.key(p).to_string());
            s.push_str(&format!("{}\t{}\t{}\n", w.key(v), p, self.word_string(v)));
        }
        s
    }

    /// Ball sizes of the tree metric around the root for radii `0..=n_max`.
    pub fn growth(&self, n_max: u32) -> Vec<usize> {
        let mut counts = vec![0usize; n_max as usize + 1];
        for &d in &self.depth {
            if d <= n_max {
                counts[d as usize] += 1;
            }
        }
        running_sum(counts)
    }
}

fn running_sum(mut v: Vec<usize>) -> Vec<usize> {
    for i in 1..v.len() {
        v[i] += v[i - 1];
    }
    v
}

/// Ball sizes `|B_0| .. |B_{n_max}|` of the graph.
pub fn growth(w: &GraphWindow, n_max: u32) -> Result<Vec<usize>> {
    if n_max > w.radius() {
        return Err(Error::Precondition(format!("n_max {n_max} exceeds R = {}", w.radius())));
    }
    let mut counts = vec![0usize; n_max as usize + 1];
    for v in 0..w.len() {
        let d = w.depth(v);
        if d <= n_max {
            counts[d as usize] += 1;
        }
    }
    Ok(running_sum(counts))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubperiodicResult {
    /// Pairs `(vertex of T_x, image in T)`, root pair first.
    Embedding(Vec<(VertexId, VertexId)>),
    /// Inconclusive: the truncated search found nothing.
    NotFoundInWindow,
}

struct Embedder<'t> {
    tree: &'t SpanningTreeWindow,
    memo: HashMap<(VertexId, VertexId, u32), bool>,
}

impl Embedder<'_> {
    fn embeds(&mut self, a: VertexId, b: VertexId, rem: u32) -> bool {
        if rem == 0 {
            return true;
        }
        if let Some(&r) = self.memo.get(&(a, b, rem)) {
            return r;
        }
        let r = self.matching(a, b, rem).is_some();
        self.memo.insert((a, b, rem), r);
        r
    }

    /// Assignment of children of `a` to distinct children of `b` (Kuhn).
    fn matching(&mut self, a: VertexId, b: VertexId, rem: u32) -> Option<Vec<(VertexId, VertexId)>> {
        let ca = self.tree.children(a).to_vec();
        let cb = self.tree.children(b).to_vec();
        if ca.len() > cb.len() {
            return None;
        }
        let mut ok = vec![vec![false; cb.len()]; ca.len()];
        for (i, &x) in ca.iter().enumerate() {
            for (j, &y) in cb.iter().enumerate() {
                ok[i][j] = self.embeds(x, y, rem - 1);
            }
        }
        let mut owner: Vec<Option<usize>> = vec![None; cb.len()];
        fn augment(i: usize, ok: &[Vec<bool>], owner: &mut [Option<usize>], seen: &mut [bool]) -> bool {
            for j in 0..owner.len() {
                if ok[i][j] && !seen[j] {
                    seen[j] = true;
                    if owner[j].is_none_or(|k| augment(k, ok, owner, seen)) {
                        owner[j] = Some(i);
                        return true;
                    }
                }
            }
            false
        }
        for i in 0..ca.len() {
            if !augment(i, &ok, &mut owner, &mut vec![false; cb.len()]) {
                return None;
            }
        }
        let mut pairs: Vec<(VertexId, VertexId)> =
            owner.iter().enumerate().filter_map(|(j, i)| i.map(|i| (ca[i], cb[j]))).collect();
        pairs.sort_unstable();
        Some(pairs)
    }
}

/// Searches for a depth-preserving injective tree map of `T_x`, truncated at
/// relative depth `depth`, into `T` with `x ↦ o`.
pub fn check_subperiodic(tree: &SpanningTreeWindow, x: VertexId, depth: u32) -> Result<SubperiodicResult> {
    if tree.depth(x) + depth > tree.radius() {
        return Err(Error::Margin(format!(
            "T_x truncated at {depth} below depth {} leaves the radius-{} window",
            tree.depth(x),
            tree.radius()
        )));
    }
    let root = tree.order()[0];
    let mut e = Embedder { tree, memo: HashMap::new() };
    if !e.embeds(x, root, depth) {
        return Ok(SubperiodicResult::NotFoundInWindow);
    }
    let mut out = vec![(x, root)];
    let mut stack = vec![(x, root, depth)];
    while let Some((a, b, rem)) = stack.pop() {
        if rem == 0 {
            continue;
        }
        let pairs = e.matching(a, b, rem).expect("feasibility was established");
        for (ca, cb) in pairs {
            out.push((ca, cb));
            stack.push((ca, cb, rem - 1));
        }
    }
    Ok(SubperiodicResult::Embedding(out))
}

/// `|F_x|` per vertex and the record set `S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FxTable {
    /// Total size of the child subtrees of `x` that avoid `S_R`.
    pub fx: Vec<usize>,
    /// Some child subtree of `x` meets `S_R`, or `x` is on `S_R`; its
    /// finiteness is read through the proxy.
    pub uncertain: Vec<bool>,
    /// Vertices whose `|F_x|` beats every vertex strictly closer to `o`, in tree order.
    pub s_set: Vec<VertexId>,
    /// `max |F_x|` over `B_n ∖ S_R` for `n = 0..R-1`.
    pub running_max: Vec<usize>,
}

pub fn fx_and_s_sets(tree: &SpanningTreeWindow, w: &GraphWindow) -> FxTable {
    let n = tree.len();
    let mut size = vec![1usize; n];
    let mut touches: Vec<bool> = (0..n).map(|v| w.on_sphere(v)).collect();
    for &v in tree.order().iter().rev() {
        if let Some(p) = tree.parent(v) {
            size[p] += size[v];
            touches[p] |= touches[v];
        }
    }
    let mut fx = vec![0usize; n];
    let mut uncertain = vec![false; n];
    for v in 0..n {
        uncertain[v] = w.on_sphere(v);
        for &c in tree.children(v) {
            if touches[c] {
                uncertain[v] = true;
            } else {
                fx[v] += size[c];
            }
        }
    }
    let r = w.radius() as usize;
    let mut by_depth = vec![0usize; r];
    let mut seen_depth = vec![false; r];
    for v in 0..n {
        let d = tree.depth(v) as usize;
        if d < r {
            by_depth[d] = by_depth[d].max(fx[v]);
            seen_depth[d] = true;
        }
    }
    let mut running_max = by_depth.clone();
    for i in 1..r {
        running_max[i] = running_max[i].max(running_max[i - 1]);
    }
    let s_set = tree
        .order()
        .iter()
        .copied()
        .filter(|&v| {
            let d = tree.depth(v) as usize;
            d < r && (d == 0 || fx[v] > running_max[d - 1])
        })
        .collect();
    FxTable { fx, uncertain, s_set, running_max }
}

/// Counts of size-`n` minimal cutsets over growing windows.
#[derive(Debug, Clone, PartialEq)]
pub struct FinitenessReport {
    pub n: usize,
    /// `(R, count)`.
    pub rows: Vec<(u32, u64)>,
    /// Smallest listed `R` from which the count never changes again
    /// (needs at least two radii in the stable tail).
    pub stabilized_from: Option<u32>,
    /// Smallest `r >= 1` such that `∂B_{r-1}` supports `n + 1` disjoint rays.
    pub core_ball_radius: Option<u32>,
}

impl FinitenessReport {
    pub fn strictly_increasing(&self) -> bool {
        self.rows.windows(2).all(|p| p[1].1 > p[0].1)
    }

    /// The counts are affine in `R` (constant first differences per unit radius).
    pub fn linear_in_r(&self) -> bool {
        let slopes: Vec<f64> = self
            .rows
            .windows(2)
            .map(|p| (p[1].1 as f64 - p[0].1 as f64) / (p[1].0 as f64 - p[0].0 as f64))
            .collect();
        slopes.windows(2).all(|s| s[0] == s[1])
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("R,count\n");
        for (r, c) in &self.rows {
            s.push_str(&format!("{r},{c}\n"));
        }
        s
    }
}

pub fn finiteness_experiment(
    provider: Arc<dyn GraphProvider>,
    n: usize,
    radii: &[u32],
    window_limits: WindowLimits,
    limits: EnumerationLimits,
) -> Result<FinitenessReport> {
    let mut radii = radii.to_vec();
    radii.sort_unstable();
    radii.dedup();
    let mut rows = Vec::new();
    let mut largest = None;
    for &r in &radii {
        let w = GraphWindow::build(provider.clone(), r, window_limits)?;
        rows.push((r, count_min_cutsets(&w, n, limits)?.counts[n]));
        largest = Some(w);
    }
    let mut stabilized_from = None;
    if let Some(&(_, last)) = rows.last() {
        let tail = rows.iter().rev().take_while(|row| row.1 == last).count();
        if tail >= 2 {
            stabilized_from = Some(rows[rows.len() - tail].0);
        }
    }
    let mut core_ball_radius = None;
    if let Some(w) = &largest {
        for r in 1..w.radius() {
            let rays = w.disjoint_ray_count(&w.ball(r - 1))?.count;
            if rays > n {
                core_ball_radius = Some(r);
                break;
            }
        }
    }
    Ok(FinitenessReport { n, rows, stabilized_from, core_ball_radius })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::VertexKey;
    use crate::group::{CayleyProvider, GeneratingSet, Group, GroupElement};

    fn window(group: Group, r: u32) -> GraphWindow {
        GraphWindow::build(Arc::new(CayleyProvider::new(GeneratingSet::standard(group))), r, WindowLimits::default())
            .unwrap()
    }

    #[test]
    fn square_lattice_words() {
        let w = window(Group::Abelian(2), 5);
        let t = build_shortlex_tree(&w).unwrap();
        let v = w.require(&VertexKey::Group(GroupElement::Vector(vec![1, 1]))).unwrap();
        assert_eq!(t.word(v), vec![0, 1]);
        assert_eq!(t.word_string(v), "e1 e2");
        let p = w.require(&VertexKey::Group(GroupElement::Vector(vec![1, 0]))).unwrap();
        assert_eq!(t.parent(v), Some(p));
        for v in 0..w.len() {
            assert_eq!(t.depth(v), w.depth(v));
        }
        assert_eq!(t.growth(5), growth(&w, 5).unwrap());
        assert!(t.dump(&w).starts_with("(0,0)\t-\te\n"));
    }

    #[test]
    fn line_and_free_group() {
        let w = window(Group::Abelian(1), 6);
        let t = build_shortlex_tree(&w).unwrap();
        assert_eq!(growth(&w, 6).unwrap(), vec![1, 3, 5, 7, 9, 11, 13]);
        let f = fx_and_s_sets(&t, &w);
        assert!(f.fx.iter().all(|&x| x == 0));
        let far = w.require(&VertexKey::Group(GroupElement::Vector(vec![3]))).unwrap();
        assert!(matches!(check_subperiodic(&t, far, 3).unwrap(), SubperiodicResult::Embedding(_)));

        let w = window(Group::Free(2), 4);
        let t = build_shortlex_tree(&w).unwrap();
        assert_eq!(t.len() - 1, w.edge_count());
        let x = w.neighbors(w.origin())[0];
        assert!(matches!(check_subperiodic(&t, x, 3).unwrap(), SubperiodicResult::Embedding(_)));
        assert!(matches!(check_subperiodic(&t, x, 4), Err(Error::Margin(_))));
    }

    #[test]
    fn square_lattice_subperiodic() {
        let w = window(Group::Abelian(2), 6);
        let t = build_shortlex_tree(&w).unwrap();
        let east = w.require(&VertexKey::Group(GroupElement::Vector(vec![1, 0]))).unwrap();
        let SubperiodicResult::Embedding(pairs) = check_subperiodic(&t, east, 3).unwrap() else {
            panic!("no embedding");
        };
        assert_eq!(pairs[0], (east, w.origin()));
        let images: std::collections::HashSet<VertexId> = pairs.iter().map(|p| p.1).collect();
        assert_eq!(images.len(), pairs.len());
        for &(a, b) in &pairs[1..] {
            let pa = t.parent(a).unwrap();
            let pb = pairs.iter().find(|p| p.0 == pa).unwrap().1;
            assert_eq!(t.parent(b), Some(pb));
        }
    }

    #[test]
    fn finiteness_on_the_square_lattice() {
        let p: Arc<dyn GraphProvider> =
            Arc::new(CayleyProvider::new(GeneratingSet::standard(Group::Abelian(2))));
        let rep = finiteness_experiment(p, 4, &[3, 4, 5, 6], WindowLimits::default(), EnumerationLimits::default())
            .unwrap();
        assert_eq!(rep.rows.iter().map(|r| r.1).collect::<Vec<_>>(), vec![1, 1, 1, 1]);
        assert_eq!(rep.stabilized_from, Some(3));
        assert_eq!(rep.core_ball_radius, Some(2));
    }
}
