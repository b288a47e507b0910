use std::sync::Arc;

use super::*;
use crate::graph::{GraphWindow, HexLattice, VertexKey, WindowLimits};
use crate::group::{CayleyProvider, GeneratingSet, GroupElement, Group};

fn z2(r: u32) -> GraphWindow {
    let p = Arc::new(CayleyProvider::new(GeneratingSet::standard(Group::Abelian(2))));
    GraphWindow::build(p, r, WindowLimits::default()).unwrap()
}

fn z1(r: u32) -> GraphWindow {
    let p = Arc::new(CayleyProvider::new(GeneratingSet::standard(Group::Abelian(1))));
    GraphWindow::build(p, r, WindowLimits::default()).unwrap()
}

fn pt(w: &GraphWindow, x: i64, y: i64) -> VertexId {
    w.require(&VertexKey::Group(GroupElement::Vector(vec![x, y]))).unwrap()
}

fn serial() -> EnumerationLimits {
    EnumerationLimits { parallel: false, ..Default::default() }
}

#[test]
fn minimality_certificates() {
    let w = z2(8);
    let o = w.origin();
    let star = w.edge_boundary(&[o]).unwrap();
    assert!(is_minimal_cutset(&w, &star).unwrap().is_minimal());
    let cert = is_minimal_cutset(&w, &star[..3]).unwrap();
    assert!(!cert.separates && !cert.is_minimal());

    let far = pt(&w, 4, 0);
    let domino = [o, pt(&w, 1, 0)];
    let mut y = w.edge_boundary(&domino).unwrap();
    y.extend(w.edge_boundary(&[far]).unwrap());
    let cert = is_minimal_cutset(&w, &y).unwrap();
    assert!(cert.separates);
    assert_eq!(cert.finite_components, vec![vec![far]]);
    assert!(!cert.is_minimal());

    let outer = w.sphere().start;
    let e = w.edges().iter().find(|e| e.u == outer || e.v == outer).copied().unwrap();
    assert!(matches!(is_minimal_cutset(&w, &[e]), Err(Error::Margin(_))));
}

#[test]
fn small_square_lattice_counts() {
    let w = z2(10);
    let t = count_min_cutsets(&w, 8, serial()).unwrap();
    // Perimeter 8: 6 straight trominoes, 12 L-trominoes, 4 squares.
    assert_eq!(&t.counts[..9], &[0, 0, 0, 0, 1, 0, 4, 0, 22]);
    assert!(t.is_exact(8));
    let six = enumerate_min_cutsets(&w, 6, serial()).unwrap();
    assert_eq!(six.len(), 4);
    for c in &six {
        assert_eq!(c.component.len(), 2);
        assert!(c.exact);
        assert!(is_minimal_cutset(&w, &c.edges).unwrap().is_minimal());
    }
}

#[test]
fn parallel_matches_serial() {
    let w = z2(9);
    let a = enumerate_min_cutsets_up_to(&w, 10, serial()).unwrap();
    let b = enumerate_min_cutsets_up_to(&w, 10, EnumerationLimits::default()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn line_counts_are_inexact() {
    let w = z1(8);
    let t = count_min_cutsets(&w, 2, serial()).unwrap();
    // Intervals [a, b] ∋ 0 inside B_{R-2}.
    assert_eq!(t.counts[2], 49);
    assert!(!t.is_exact(2));
}

#[test]
fn state_cap() {
    let w = z2(8);
    for parallel in [false, true] {
        let limits = EnumerationLimits { max_states: 10, parallel };
        assert!(matches!(count_min_cutsets(&w, 8, limits), Err(Error::ResourceCap { .. })));
    }
    // The cap is global: it trips between the serial state count and its
    // per-branch share, whatever the split.
    let serial = EnumerationLimits { max_states: u64::MAX, parallel: false };
    let mut total = 16;
    while count_min_cutsets(&w, 8, EnumerationLimits { max_states: total, ..serial }).is_err() {
        total *= 2;
    }
    let limits = EnumerationLimits { max_states: total / 4, parallel: true };
    assert!(matches!(count_min_cutsets(&w, 8, limits), Err(Error::ResourceCap { .. })));
}

#[test]
fn closeness_basics() {
    let w = z2(8);
    let o = w.origin();
    let star = w.edge_boundary(&[o]).unwrap();
    let r = closeness_edges(&w, &star, Convention::Subdivision).unwrap();
    assert_eq!(r.value, 1);
    assert_eq!(r.part_a.len() + r.part_b.len(), 4);
    assert_eq!(closeness_edges(&w, &star, Convention::Endpoint).unwrap().value, 0);
    assert_eq!(closeness_bruteforce(&w, &star, Convention::Subdivision).unwrap(), 1);

    let single = closeness_edges(&w, &star[..1], Convention::Subdivision).unwrap();
    assert_eq!(single.value, 0);
    assert!(single.degenerate && single.part_b.is_empty());

    let x = [pt(&w, 0, 0), pt(&w, 3, 0), pt(&w, 0, 1)];
    let r = closeness_vertices(&w, &x).unwrap();
    assert_eq!(r.value, 3);
    assert_eq!(r.part_b, vec![pt(&w, 3, 0)]);
    assert_eq!(set_distance(&w, &[o], &[pt(&w, 2, 2)]).unwrap(), 4);
}

#[test]
fn closeness_margin() {
    let w = z2(4);
    let x = [pt(&w, 4, 0), pt(&w, -4, 0)];
    assert!(matches!(closeness_vertices(&w, &x), Err(Error::Margin(_))));
}

#[test]
fn square_and_hex_sup() {
    let w = z2(10);
    let rows = sup_closeness(&w, 8, Convention::Subdivision, serial()).unwrap();
    assert_eq!(rows.last().unwrap().running_max, Some(2));
    let hex = GraphWindow::build(Arc::new(HexLattice), 10, WindowLimits::default()).unwrap();
    let rows = sup_closeness(&hex, 10, Convention::Subdivision, serial()).unwrap();
    assert_eq!(rows.last().unwrap().running_max, Some(3));
}

#[test]
fn neighborhood_cutsets() {
    let w = z2(8);
    let o = w.origin();
    let s1 = neighborhood_cutset(&w, &[o], 1).unwrap();
    assert_eq!(s1.size(), 12);
    assert_eq!(s1.component.len(), 5);
    let s0 = neighborhood_cutset(&w, &[o, pt(&w, 1, 0)], 0).unwrap();
    assert_eq!(s0.edges, w.edge_boundary(&[o, pt(&w, 1, 0)]).unwrap());
    // A U shape: the hole is swallowed.
    let u: Vec<VertexId> = [(0, 0), (1, 0), (2, 0), (0, 1), (2, 1), (0, 2), (1, 2), (2, 2)]
        .iter()
        .map(|&(x, y)| pt(&w, x, y))
        .collect();
    let s = neighborhood_cutset(&w, &u, 0).unwrap();
    assert_eq!(s.component.len(), 9);
    assert_eq!(s.size(), 12);
    assert!(is_minimal_cutset(&w, &s.edges).unwrap().is_minimal());
}

#[test]
fn connected_subsets_and_walks() {
    let w = z2(6);
    let counts = for_each_connected_subset(&w, 6, u64::MAX, |set| {
        let walk = walk_certificate(&w, set).unwrap();
        assert_eq!(walk.len(), 2 * (set.len() - 1));
        assert!(walk.iter().all(|&s| (s as usize) < 4));
        let mut sorted = set.to_vec();
        sorted.sort_unstable();
        assert_eq!(decode_walk(&w, &walk).unwrap(), sorted);
    })
    .unwrap();
    assert_eq!(counts, vec![0, 1, 4, 18, 76, 315, 1296]);
    assert!(enumerate_connected_subsets(&w, 7, u64::MAX).is_err());
}
