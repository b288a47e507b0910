mod support;

use std::sync::OnceLock;

use proptest::prelude::*;

use cutset_core::cutset::{
    closeness_bruteforce, closeness_edges, cutset_of, decode_walk, is_minimal_cutset, neighborhood_cutset,
    walk_certificate, Convention,
};
use cutset_core::cycles::{decompose, relator_cycles, standard_relators, BinaryEdgeVector, CycleBasisSet};
use cutset_core::graph::{Edge, GraphWindow, VertexId};
use cutset_core::group::Group;

fn square10() -> &'static GraphWindow {
    static W: OnceLock<GraphWindow> = OnceLock::new();
    W.get_or_init(|| support::window(support::square(), 10))
}

fn hex10() -> &'static GraphWindow {
    static W: OnceLock<GraphWindow> = OnceLock::new();
    W.get_or_init(|| support::window(support::hex(), 10))
}

fn lamplighter8() -> &'static GraphWindow {
    static W: OnceLock<GraphWindow> = OnceLock::new();
    W.get_or_init(|| support::window(support::lamplighter(), 8))
}

fn square_basis() -> &'static CycleBasisSet {
    static B: OnceLock<CycleBasisSet> = OnceLock::new();
    B.get_or_init(|| {
        let w = square10();
        relator_cycles(w, &standard_relators(Group::Abelian(2)).unwrap()).unwrap()
    })
}

fn windows() -> [&'static GraphWindow; 3] {
    [square10(), hex10(), lamplighter8()]
}

/// Grows a connected set from `o` by following `picks` into the current
/// frontier, staying inside `B_max_depth`.
fn grow(w: &GraphWindow, picks: &[usize], max_depth: u32) -> Vec<VertexId> {
    let mut set = vec![w.origin()];
    for &p in picks {
        let mut frontier: Vec<VertexId> = set
            .iter()
            .flat_map(|&v| w.neighbors(v).iter().copied())
            .filter(|&u| w.depth(u) <= max_depth && !set.contains(&u))
            .collect();
        frontier.sort_unstable();
        frontier.dedup();
        if frontier.is_empty() {
            break;
        }
        set.push(frontier[p % frontier.len()]);
    }
    set.sort_unstable();
    set
}

/// Edges with both endpoints within `depth` of `o`.
fn near_edges(w: &GraphWindow, depth: u32) -> Vec<Edge> {
    w.edges().iter().copied().filter(|e| w.depth(e.u).max(w.depth(e.v)) <= depth).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn edge_vector_addition_is_a_group(
        a in prop::collection::btree_set(0usize..200, 0..40),
        b in prop::collection::btree_set(0usize..200, 0..40),
        c in prop::collection::btree_set(0usize..200, 0..40),
    ) {
        let (va, vb, vc) = (
            BinaryEdgeVector::from_ids(200, a.iter().copied()),
            BinaryEdgeVector::from_ids(200, b.iter().copied()),
            BinaryEdgeVector::from_ids(200, c.iter().copied()),
        );
        prop_assert!(va.add(&va).is_empty());
        prop_assert_eq!(va.add(&vb), vb.add(&va));
        prop_assert_eq!(va.add(&vb).add(&vc), va.add(&vb.add(&vc)));
        let both = a.intersection(&b).count();
        prop_assert_eq!(va.add(&vb).count(), a.len() + b.len() - 2 * both);
        prop_assert_eq!(va.meets(&vb), both > 0);
        let ids: Vec<usize> = va.add(&vb).ids().collect();
        let sym: Vec<usize> = a.symmetric_difference(&b).copied().collect();
        prop_assert_eq!(ids, sym);
    }

    #[test]
    fn decomposition_resums_to_target(picks in prop::collection::vec(any::<prop::sample::Index>(), 1..12)) {
        let w = square10();
        let basis = square_basis();
        // Sums of squares near the origin stay far from the window edge.
        let near: Vec<usize> = (0..basis.cycles.len())
            .filter(|&i| basis.cycles[i].edges(w).iter().all(|e| w.depth(e.u).max(w.depth(e.v)) <= 5))
            .collect();
        let mut target = BinaryEdgeVector::zero(w.edge_count());
        for p in &picks {
            target.add_assign(&basis.cycles[near[p.index(near.len())]]);
        }
        let used = decompose(w, &target, basis).unwrap();
        let mut sum = BinaryEdgeVector::zero(w.edge_count());
        for i in used {
            sum.add_assign(&basis.cycles[i]);
        }
        prop_assert_eq!(sum, target.clone());
        prop_assert!(target.odd_vertices(w).is_empty());
    }

    #[test]
    fn mst_closeness_matches_bruteforce(
        which in 0usize..3,
        picks in prop::collection::vec(any::<prop::sample::Index>(), 1..10),
    ) {
        let w = windows()[which];
        let near = near_edges(w, w.radius() / 2);
        let mut y: Vec<Edge> = picks.iter().map(|p| near[p.index(near.len())]).collect();
        y.sort_unstable();
        y.dedup();
        for conv in [Convention::Endpoint, Convention::Subdivision] {
            let mst = closeness_edges(w, &y, conv).unwrap();
            prop_assert_eq!(mst.value, closeness_bruteforce(w, &y, conv).unwrap());
            let mut parts: Vec<Edge> = mst.part_a.iter().chain(&mst.part_b).copied().collect();
            parts.sort_unstable();
            prop_assert_eq!(parts, y.clone());
        }
        let end = closeness_edges(w, &y, Convention::Endpoint).unwrap().value;
        let sub = closeness_edges(w, &y, Convention::Subdivision).unwrap().value;
        if y.len() > 1 {
            prop_assert_eq!(sub, end + 1);
        }
    }

    #[test]
    fn walk_certificates_round_trip(which in 0usize..3, picks in prop::collection::vec(any::<usize>(), 0..9)) {
        let w = windows()[which];
        let set = grow(w, &picks, w.radius());
        let walk = walk_certificate(w, &set).unwrap();
        prop_assert_eq!(walk.len(), 2 * (set.len() - 1));
        prop_assert_eq!(decode_walk(w, &walk).unwrap(), set);
    }

    #[test]
    fn window_distances_are_a_metric(
        which in 0usize..3,
        a in any::<prop::sample::Index>(),
        b in any::<prop::sample::Index>(),
        c in any::<prop::sample::Index>(),
    ) {
        let w = windows()[which];
        let ball = w.ball(w.radius() / 2);
        let (u, v, x) = (ball[a.index(ball.len())], ball[b.index(ball.len())], ball[c.index(ball.len())]);
        let d = |p, q| w.distance(p, q).unwrap();
        prop_assert_eq!(d(u, v), d(v, u));
        prop_assert_eq!(d(u, u).value, 0);
        prop_assert!(d(u, v).exact);
        prop_assert!(d(u, x).value <= d(u, v).value + d(v, x).value);
        prop_assert_eq!(d(w.origin(), u).value, w.depth(u));
    }

    #[test]
    fn neighborhood_cutsets_are_minimal(
        which in 0usize..3,
        picks in prop::collection::vec(any::<usize>(), 0..5),
        n in 0u32..2,
    ) {
        let w = windows()[which];
        let x = grow(w, &picks, 2);
        let s = neighborhood_cutset(w, &x, n).unwrap();
        prop_assert!(is_minimal_cutset(w, &s.edges).unwrap().is_minimal());
        prop_assert!(x.iter().all(|v| s.component.binary_search(v).is_ok()));
        prop_assert_eq!(cutset_of(w, &s.component).unwrap().edges, s.edges);
    }
}
