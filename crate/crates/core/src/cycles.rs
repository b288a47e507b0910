//! The mod-2 edge space of a window, relator cycles, and the crossing-cycle
//! argument bounding closeness by half the longest relator.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::cutset::{closeness_edges, enumerate_min_cutsets_up_to, Convention, Cutset, EnumerationLimits};
use crate::error::{Error, Result};
use crate::graph::{Edge, GraphWindow, VertexId};
use crate::group::Group;

/// A subset of window edges as a bitset over edge ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryEdgeVector {
    bits: Vec<u64>,
    len: usize,
}

impl BinaryEdgeVector {
    pub fn zero(len: usize) -> Self {
        Self { bits: vec![0; len.div_ceil(64)], len }
    }

    pub fn from_ids(len: usize, ids: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zero(len);
        for i in ids {
            v.toggle(i);
        }
        v
    }

    /// Mod-2 sum of the given edges.
    pub fn from_edges(w: &GraphWindow, edges: &[Edge]) -> Result<Self> {
        let mut v = Self::zero(w.edge_count());
        for e in edges {
            let id = w
                .edge_id(*e)
                .ok_or_else(|| Error::Precondition(format!("{e:?} is not a window edge")))?;
            v.toggle(id);
        }
        Ok(v)
    }

    /// Edges of a vertex walk, mod 2.
    pub fn from_walk(w: &GraphWindow, walk: &[VertexId]) -> Result<Self> {
        let edges: Vec<Edge> = walk.windows(2).map(|p| Edge::new(p[0], p[1])).collect();
        Self::from_edges(w, &edges)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn get(&self, i: usize) -> bool {
        self.bits[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn toggle(&mut self, i: usize) {
        assert!(i < self.len, "edge id out of range");
        self.bits[i / 64] ^= 1 << (i % 64);
    }

    pub fn add_assign(&mut self, other: &Self) {
        assert_eq!(self.len, other.len, "vectors over different windows");
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a ^= b;
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&b| b == 0)
    }

    pub fn count(&self) -> usize {
        self.bits.iter().map(|b| b.count_ones() as usize).sum()
    }

    /// Lowest set edge id.
    pub fn first(&self) -> Option<usize> {
        self.bits
            .iter()
            .enumerate()
            .find(|(_, &b)| b != 0)
            .map(|(i, b)| i * 64 + b.trailing_zeros() as usize)
    }

    pub fn ids(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(|&i| self.get(i))
    }

    pub fn edges(&self, w: &GraphWindow) -> Vec<Edge> {
        self.ids().map(|i| w.edges()[i]).collect()
    }

    pub fn meets(&self, other: &Self) -> bool {
        self.bits.iter().zip(&other.bits).any(|(a, b)| a & b != 0)
    }

    /// Vertices incident to an odd number of set edges, sorted.
    pub fn odd_vertices(&self, w: &GraphWindow) -> Vec<VertexId> {
        let mut parity = std::collections::BTreeMap::new();
        for e in self.edges(w) {
            *parity.entry(e.u).or_insert(0u32) += 1;
            *parity.entry(e.v).or_insert(0u32) += 1;
        }
        parity.into_iter().filter(|(_, d)| d % 2 == 1).map(|(v, _)| v).collect()
    }

    /// The set edges form one connected subgraph (false when empty).
    pub fn is_connected(&self, w: &GraphWindow) -> bool {
        let edges = self.edges(w);
        let Some(first) = edges.first() else {
            return false;
        };
        let mut seen: HashSet<VertexId> = HashSet::from([first.u]);
        let mut stack = vec![first.u];
        while let Some(v) = stack.pop() {
            for e in &edges {
                if e.u == v || e.v == v {
                    let u = e.other(v);
                    if seen.insert(u) {
                        stack.push(u);
                    }
                }
            }
        }
        edges.iter().all(|e| seen.contains(&e.u))
    }
}

/// Cycles of length at most `t` that generate the cycle space.
#[derive(Debug, Clone)]
pub struct CycleBasisSet {
    pub cycles: Vec<BinaryEdgeVector>,
    pub t: usize,
}

/// Relators of the shipped presentations: commutators for `Z^d`, none for free
/// groups. The lamplighter group is not finitely presented.
pub fn standard_relators(group: Group) -> Result<Vec<String>> {
    match group {
        Group::Abelian(d) => Ok((1..=d)
            .flat_map(|i| (i + 1..=d).map(move |j| format!("e{i} e{j} E{i} E{j}")))
            .collect()),
        Group::Free(_) => Ok(Vec::new()),
        Group::Lamplighter => Err(Error::NotFinitelyPresented("lamplighter group".into())),
    }
}

/// Every translate `v · r` of every relator loop that stays in the window,
/// deduplicated as edge sets.
pub fn relator_cycles(w: &GraphWindow, relators: &[String]) -> Result<CycleBasisSet> {
    let gens = w
        .provider()
        .generating_set()
        .ok_or_else(|| Error::Precondition("relator cycles need a Cayley window".into()))?;
    let mut words = Vec::with_capacity(relators.len());
    for r in relators {
        let word = gens.parse_indices(r)?;
        if gens.word_to_element(&word)? != gens.group().identity() {
            return Err(Error::NonIdentityRelator(r.clone()));
        }
        words.push(word);
    }
    let t = words.iter().map(Vec::len).max().unwrap_or(0);
    let mut seen = HashSet::new();
    let mut cycles = Vec::new();
    for word in &words {
        'start: for start in 0..w.len() {
            let mut v = start;
            let mut c = BinaryEdgeVector::zero(w.edge_count());
            for &g in word {
                let Some(i) = w.neighbor_slots(v).iter().position(|&s| s as usize == g) else {
                    continue 'start;
                };
                let a = w.arcs(v).start + i;
                c.toggle(w.arc_edge(a));
                v = w.arc_target(a);
            }
            debug_assert_eq!(v, start);
            if !c.is_empty() && seen.insert(c.clone()) {
                cycles.push(c);
            }
        }
    }
    Ok(CycleBasisSet { cycles, t })
}

/// Gaussian elimination over GF(2) with pivots in canonical edge order.
#[derive(Debug, Clone)]
pub struct CycleSolver {
    /// Reduced rows with their pivot edge and the basis members they combine.
    rows: Vec<(usize, BinaryEdgeVector, Vec<u64>)>,
    members: usize,
}

impl CycleSolver {
    pub fn new(basis: &CycleBasisSet) -> Self {
        let m = basis.cycles.len();
        let mut rows: Vec<(usize, BinaryEdgeVector, Vec<u64>)> = Vec::new();
        for (i, c) in basis.cycles.iter().enumerate() {
            let mut v = c.clone();
            let mut combo = vec![0u64; m.div_ceil(64).max(1)];
            combo[i / 64] |= 1 << (i % 64);
            reduce(&rows, &mut v, &mut combo);
            if let Some(p) = v.first() {
                rows.push((p, v, combo));
            }
        }
        Self { rows, members: m }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Indices of basis members summing to `target`.
    pub fn solve(&self, w: &GraphWindow, target: &BinaryEdgeVector) -> Result<Vec<usize>> {
        if !target.odd_vertices(w).is_empty() {
            return Err(Error::OddDegree);
        }
        let mut v = target.clone();
        let mut combo = vec![0u64; self.members.div_ceil(64).max(1)];
        reduce(&self.rows, &mut v, &mut combo);
        if !v.is_empty() {
            return Err(Error::Unreachable);
        }
        Ok((0..self.members).filter(|&i| combo[i / 64] >> (i % 64) & 1 == 1).collect())
    }
}

fn reduce(rows: &[(usize, BinaryEdgeVector, Vec<u64>)], v: &mut BinaryEdgeVector, combo: &mut [u64]) {
    // Rows are in insertion order; each row's pivot is absent from later
    // rows' pivots only, so sweep until no pivot of any row remains set.
    loop {
        let mut changed = false;
        for (p, row, c) in rows {
            if v.get(*p) {
                v.add_assign(row);
                for (a, b) in combo.iter_mut().zip(c) {
                    *a ^= b;
                }
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
}

/// A sub-collection of `basis` whose mod-2 sum is `target`.
pub fn decompose(w: &GraphWindow, target: &BinaryEdgeVector, basis: &CycleBasisSet) -> Result<Vec<usize>> {
    CycleSolver::new(basis).solve(w, target)
}

/// The cut `δM` where `M` is the component of the window minus `k` that
/// contains `y`: a minimal cut between any vertex of `k` and `y`.
pub fn two_vertex_cut(w: &GraphWindow, k: &[VertexId], y: VertexId) -> Result<Vec<Edge>> {
    let blocked = w.vertex_mask(k);
    if blocked[y] {
        return Err(Error::Precondition("y lies inside the grown set".into()));
    }
    let d = w.bfs(&[y], Some(&blocked), None);
    let m: Vec<VertexId> = (0..w.len()).filter(|&v| d[v] != crate::graph::UNREACHED).collect();
    Ok(w.edge_boundary_unchecked(&w.vertex_mask(&m)))
}

/// Output of the crossing-cycle construction.
#[derive(Debug, Clone)]
pub struct ThetaWitness {
    pub p1: Vec<VertexId>,
    pub p2: Vec<VertexId>,
    /// Size of the decomposition of `P1 + P2`.
    pub decomposition: usize,
    /// Members of the decomposition meeting `Π1`.
    pub k1: usize,
    pub theta: BinaryEdgeVector,
    pub theta_avoids_pi1: bool,
    pub theta_odd_vertices: Vec<VertexId>,
    /// A relator cycle meeting both parts.
    pub cycle: BinaryEdgeVector,
    pub meets_pi1: Vec<Edge>,
    pub meets_pi2: Vec<Edge>,
    /// Minimum vertex distance between endpoints of `meets_pi1` and `meets_pi2`.
    pub cross_distance: u32,
}

impl ThetaWitness {
    /// Both checks of the construction: `θ` avoids `Π1` and its odd vertices are `{x, y}`.
    pub fn theta_ok(&self, x: VertexId, y: VertexId) -> bool {
        let mut xy = vec![x, y];
        xy.sort_unstable();
        self.theta_avoids_pi1 && self.theta_odd_vertices == xy
    }

    /// The cycle as a closed walk of vertex keys, annotated with the edges
    /// it shares with each part.
    pub fn dump(&self, w: &GraphWindow) -> String {
        let mut line = String::new();
        let walk = cycle_walk(w, &self.cycle);
        let keys: Vec<String> = walk.iter().map(|&v| w.key(v).to_string()).collect();
        line.push_str(&keys.join(" "));
        for (tag, edges) in [("pi1", &self.meets_pi1), ("pi2", &self.meets_pi2)] {
            let _ = write!(line, "\t{tag}:");
            for e in edges {
                let _ = write!(line, " {}~{}", w.key(e.u), w.key(e.v));
            }
        }
        line
    }
}

/// Closed walk around a cycle given as an edge set (simple cycles only;
/// other inputs yield a walk over one component).
pub fn cycle_walk(w: &GraphWindow, c: &BinaryEdgeVector) -> Vec<VertexId> {
    let mut edges = c.edges(w);
    let Some(first) = edges.first().copied() else {
        return Vec::new();
    };
    edges.remove(0);
    let mut walk = vec![first.u, first.v];
    let mut v = first.v;
    while let Some(i) = edges.iter().position(|e| e.u == v || e.v == v) {
        let e = edges.remove(i);
        v = e.other(v);
        walk.push(v);
    }
    walk
}

/// Finds a cycle of `basis` meeting both parts of a minimal `x`–`y` cut.
pub fn crossing_cycle_witness(
    w: &GraphWindow,
    pi: &[Edge],
    pi1: &[Edge],
    x: VertexId,
    y: VertexId,
    solver: &CycleSolver,
    basis: &CycleBasisSet,
) -> Result<ThetaWitness> {
    let mut pi = pi.to_vec();
    pi.sort_unstable();
    pi.dedup();
    let mut pi1 = pi1.to_vec();
    pi1.sort_unstable();
    pi1.dedup();
    if pi1.is_empty() || pi1.len() == pi.len() || pi1.iter().any(|e| pi.binary_search(e).is_err()) {
        return Err(Error::Precondition("Π1 must be a nonempty proper subset of Π".into()));
    }
    let pi2: Vec<Edge> = pi.iter().copied().filter(|e| pi1.binary_search(e).is_err()).collect();
    let mask = |es: &[Edge]| {
        let mut m = vec![false; w.edge_count()];
        for e in es {
            m[w.edge_id(*e).expect("cut edges come from the window")] = true;
        }
        m
    };
    for e in &pi {
        if w.edge_id(*e).is_none() {
            return Err(Error::Precondition(format!("{e:?} is not a window edge")));
        }
    }
    if w.shortest_path(x, y, Some(&mask(&pi))).is_some() {
        return Err(Error::Precondition("Π does not separate x from y".into()));
    }
    let p1 = w.shortest_path(x, y, Some(&mask(&pi2))).ok_or(Error::NoAvoidingPath)?;
    let p2 = w.shortest_path(x, y, Some(&mask(&pi1))).ok_or(Error::NoAvoidingPath)?;
    let v1 = BinaryEdgeVector::from_walk(w, &p1)?;
    let v2 = BinaryEdgeVector::from_walk(w, &p2)?;
    let members = solver.solve(w, &v1.add(&v2))?;

    let pi1v = BinaryEdgeVector::from_edges(w, &pi1)?;
    let pi2v = BinaryEdgeVector::from_edges(w, &pi2)?;
    let k1: Vec<usize> = members.iter().copied().filter(|&i| basis.cycles[i].meets(&pi1v)).collect();
    let mut theta = v1.clone();
    for &i in &k1 {
        theta.add_assign(&basis.cycles[i]);
    }
    let theta_avoids_pi1 = !theta.meets(&pi1v);
    let theta_odd_vertices = theta.odd_vertices(w);

    let &found = k1
        .iter()
        .find(|&&i| basis.cycles[i].meets(&pi2v))
        .ok_or_else(|| Error::Assertion("no cycle of K'1 meets Π2".into()))?;
    let cycle = basis.cycles[found].clone();
    let meets_pi1: Vec<Edge> = pi1.iter().copied().filter(|e| cycle.get(w.edge_id(*e).unwrap())).collect();
    let meets_pi2: Vec<Edge> = pi2.iter().copied().filter(|e| cycle.get(w.edge_id(*e).unwrap())).collect();
    let ends = |es: &[Edge]| es.iter().flat_map(|e| [e.u, e.v]).collect::<Vec<_>>();
    let d = w.bfs(&ends(&meets_pi1), None, None);
    let cross_distance = ends(&meets_pi2).iter().map(|&v| d[v]).min().unwrap();
    Ok(ThetaWitness {
        p1,
        p2,
        decomposition: members.len(),
        k1: k1.len(),
        theta,
        theta_avoids_pi1,
        theta_odd_vertices,
        cycle,
        meets_pi1,
        meets_pi2,
        cross_distance,
    })
}

/// Result of checking `C(Π) <= t/2` over enumerated cutsets.
#[derive(Debug, Clone)]
pub struct HalfTReport {
    pub t: usize,
    pub checked: usize,
    pub max_observed: Option<u32>,
    /// First cutset with `2 C(Π) > t`, with its witness bipartition.
    pub counterexample: Option<(Cutset, Vec<Edge>, Vec<Edge>)>,
}

impl HalfTReport {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Checks the half-`t` bound on every window-exact minimal cutset of size
/// `<= n_max` under the subdivision convention.
pub fn verify_half_t_bound(
    w: &GraphWindow,
    relators: &[String],
    n_max: usize,
    limits: EnumerationLimits,
) -> Result<HalfTReport> {
    let gens = w
        .provider()
        .generating_set()
        .ok_or_else(|| Error::Precondition("the bound needs a Cayley window".into()))?;
    if gens.group() == Group::Lamplighter {
        return Err(Error::NotFinitelyPresented("lamplighter group has no finite t".into()));
    }
    if relators.is_empty() {
        return Err(Error::Precondition("no relators given; the bound is not applicable".into()));
    }
    let basis = relator_cycles(w, relators)?;
    let mut report = HalfTReport { t: basis.t, checked: 0, max_observed: None, counterexample: None };
    for c in enumerate_min_cutsets_up_to(w, n_max, limits)?.into_iter().filter(|c| c.exact) {
        let r = closeness_edges(w, &c.edges, Convention::Subdivision)?;
        report.checked += 1;
        report.max_observed = Some(report.max_observed.map_or(r.value, |m| m.max(r.value)));
        if 2 * r.value as usize > report.t && report.counterexample.is_none() {
            report.counterexample = Some((c, r.part_a, r.part_b));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::graph::{VertexKey, WindowLimits};
    use crate::group::{CayleyProvider, GeneratingSet, GroupElement};

    fn window(group: Group, r: u32) -> GraphWindow {
        let p = Arc::new(CayleyProvider::new(GeneratingSet::standard(group)));
        GraphWindow::build(p, r, WindowLimits::default()).unwrap()
    }

    fn pt(w: &GraphWindow, x: i64, y: i64) -> VertexId {
        w.require(&VertexKey::Group(GroupElement::Vector(vec![x, y]))).unwrap()
    }

    #[test]
    fn vector_algebra() {
        let a = BinaryEdgeVector::from_ids(130, [0, 5, 129]);
        let b = BinaryEdgeVector::from_ids(130, [5, 64]);
        assert_eq!(a.add(&b).ids().collect::<Vec<_>>(), vec![0, 64, 129]);
        assert!(a.add(&a).is_empty());
        assert_eq!(a.first(), Some(0));
        assert!(a.meets(&b));
    }

    #[test]
    fn square_relator_cycles() {
        let w = window(Group::Abelian(2), 4);
        let rel = standard_relators(Group::Abelian(2)).unwrap();
        let k = relator_cycles(&w, &rel).unwrap();
        assert_eq!(k.t, 4);
        // Oracle: unit cells [x,x+1]×[y,y+1] with all four corners in the ball.
        let cells = (-4i64..4)
            .flat_map(|x| (-4i64..4).map(move |y| (x, y)))
            .filter(|&(x, y)| {
                [(x, y), (x + 1, y), (x, y + 1), (x + 1, y + 1)].iter().all(|(a, b)| a.abs() + b.abs() <= 4)
            })
            .count();
        assert_eq!(k.cycles.len(), cells);
        for c in &k.cycles {
            assert_eq!(c.count(), 4);
            assert!(c.odd_vertices(&w).is_empty() && c.is_connected(&w));
        }
        let free = window(Group::Free(2), 3);
        assert!(relator_cycles(&free, &[]).unwrap().cycles.is_empty());
        assert!(matches!(
            relator_cycles(&w, &["e1 e2".to_string()]),
            Err(Error::NonIdentityRelator(_))
        ));
    }

    #[test]
    fn decompositions() {
        let w = window(Group::Abelian(2), 6);
        let k = relator_cycles(&w, &standard_relators(Group::Abelian(2)).unwrap()).unwrap();
        let block: Vec<VertexId> =
            (0..=2).flat_map(|x| (0..=2).map(move |y| (x, y))).map(|(x, y)| pt(&w, x, y)).collect();
        let ring = BinaryEdgeVector::from_walk(
            &w,
            &[(0, 0), (1, 0), (2, 0), (2, 1), (2, 2), (1, 2), (0, 2), (0, 1), (0, 0)]
                .iter()
                .map(|&(x, y)| pt(&w, x, y))
                .collect::<Vec<_>>(),
        )
        .unwrap();
        let parts = decompose(&w, &ring, &k).unwrap();
        assert_eq!(parts.len(), 4);
        let mut sum = BinaryEdgeVector::zero(w.edge_count());
        for &i in &parts {
            sum.add_assign(&k.cycles[i]);
            assert!(k.cycles[i].edges(&w).iter().all(|e| block.contains(&e.u) && block.contains(&e.v)));
        }
        assert_eq!(sum, ring);
        assert_eq!(decompose(&w, &k.cycles[3], &k).unwrap(), vec![3]);
        assert!(decompose(&w, &BinaryEdgeVector::zero(w.edge_count()), &k).unwrap().is_empty());
        let path = BinaryEdgeVector::from_walk(&w, &[pt(&w, 0, 0), pt(&w, 1, 0)]).unwrap();
        assert!(matches!(decompose(&w, &path, &k), Err(Error::OddDegree)));
    }

    #[test]
    fn witness_at_the_origin() {
        let w = window(Group::Abelian(2), 8);
        let k = relator_cycles(&w, &standard_relators(Group::Abelian(2)).unwrap()).unwrap();
        let solver = CycleSolver::new(&k);
        let (o, y) = (w.origin(), pt(&w, 3, 0));
        let pi = w.edge_boundary(&[o]).unwrap();
        let north = Edge::new(o, pt(&w, 0, 1));
        let wit = crossing_cycle_witness(&w, &pi, &[north], o, y, &solver, &k).unwrap();
        assert!(wit.theta_ok(o, y));
        assert_eq!(wit.cycle.count(), 4);
        assert_eq!(wit.meets_pi1, vec![north]);
        // Oracle: the unit squares through the north edge use an east or west edge.
        let sides = [Edge::new(o, pt(&w, 1, 0)), Edge::new(o, pt(&w, -1, 0))];
        assert_eq!(wit.meets_pi2.len(), 1);
        assert!(sides.contains(&wit.meets_pi2[0]));
        assert!(wit.cross_distance <= 2);
        assert!(wit.dump(&w).contains("pi1:"));
        assert!(matches!(
            crossing_cycle_witness(&w, &pi, &[], o, y, &solver, &k),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn half_t_guards() {
        let lamp = window(Group::Lamplighter, 4);
        assert!(matches!(
            verify_half_t_bound(&lamp, &["t T".into()], 4, EnumerationLimits::default()),
            Err(Error::NotFinitelyPresented(_))
        ));
        let w = window(Group::Abelian(2), 8);
        let rel = standard_relators(Group::Abelian(2)).unwrap();
        let rep = verify_half_t_bound(&w, &rel, 8, EnumerationLimits::default()).unwrap();
        assert!(rep.holds());
        assert_eq!((rep.t, rep.max_observed), (4, Some(2)));
    }
}
