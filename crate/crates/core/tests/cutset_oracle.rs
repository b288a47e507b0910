mod support;

use std::collections::BTreeSet;

use cutset_core::cutset::{
    count_min_cutsets, enumerate_connected_subsets, enumerate_min_cutsets_up_to, is_minimal_cutset,
    EnumerationLimits,
};
use cutset_core::graph::{Edge, GraphWindow};
use support::oracle::{brute_force_cutsets, connected_set_counts};
use support::*;

fn production(w: &GraphWindow, n_max: usize) -> BTreeSet<Vec<Edge>> {
    enumerate_min_cutsets_up_to(w, n_max, EnumerationLimits::default())
        .unwrap()
        .into_iter()
        .map(|c| c.edges)
        .collect()
}

fn agree(w: &GraphWindow, n_max: usize, cap: usize) {
    let got = production(w, n_max);
    let want = brute_force_cutsets(w, n_max, cap);
    assert_eq!(got.len(), want.len(), "{}: counts differ", w.family());
    assert_eq!(got, want, "{}: cutset sets differ", w.family());
}

#[test]
fn square_lattice_matches_oracle() {
    let w = window(square(), 10);
    agree(&w, 8, 8);
    let counts = count_min_cutsets(&w, 6, EnumerationLimits::default()).unwrap().counts;
    assert_eq!(&counts[4..=6], &[1, 0, 4]);
}

#[test]
fn hex_lattice_matches_oracle() {
    agree(&window(hex(), 12), 8, 12);
}

#[test]
fn lamplighter_matches_oracle() {
    agree(&window(lamplighter(), 12), 8, 10);
}

#[test]
fn diestel_leader_matches_oracle() {
    agree(&window(dl22(), 12), 8, 8);
}

#[test]
fn emitted_cutsets_are_certified() {
    for (p, r) in [(square(), 9), (hex(), 9), (dl22(), 10)] {
        let w = window(p, r);
        for c in enumerate_min_cutsets_up_to(&w, 8, EnumerationLimits::default()).unwrap() {
            assert!(is_minimal_cutset(&w, &c.edges).unwrap().is_minimal());
            // Dropping any single edge reconnects o to the sphere.
            for skip in 0..c.edges.len() {
                let rest: Vec<Edge> =
                    c.edges.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, e)| *e).collect();
                assert!(!is_minimal_cutset(&w, &rest).unwrap().separates);
            }
        }
    }
}

#[test]
fn connected_subset_counts_match_oracle() {
    let w = window(square(), 8);
    let want = connected_set_counts(&w, 7);
    for n in 1..=7 {
        assert_eq!(enumerate_connected_subsets(&w, n, u64::MAX).unwrap(), want[n], "n = {n}");
    }
    assert_eq!(&want[1..4], &[1, 4, 18]);
    let w = window(dl22(), 6);
    let want = connected_set_counts(&w, 5);
    for n in 1..=5 {
        assert_eq!(enumerate_connected_subsets(&w, n, u64::MAX).unwrap(), want[n]);
    }
}
