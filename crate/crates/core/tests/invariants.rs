use proptest::prelude::*;

use oddcycle_core::bipartization::{d2, gamma2, max_cut};
use oddcycle_core::cycles::{cycle_spectrum, girth, odd_girth};
use oddcycle_core::graph::{bipartition, canonical_form, from_graph6, to_graph6};
use oddcycle_core::harness::replay::{brute_force_d2, brute_force_gamma2};
use oddcycle_core::{Budget, Graph};

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            let edges: Vec<_> = pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e).collect();
            Graph::build(n, &edges).unwrap()
        })
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

/// Cycle lengths by Held-Karp over (subset, endpoint) with the start fixed
/// at the subset's lowest vertex.
fn held_karp_lengths(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut lengths = vec![false; n + 1];
    for s in 0..n {
        let width = n - s;
        // reach[mask][v]: a path from s through mask (relative to s) ending at v
        let mut reach = vec![0u64; 1 << width];
        reach[1] = 1;
        for mask in 1usize..1 << width {
            if mask & 1 == 0 || reach[mask] == 0 {
                continue;
            }
            let ends = reach[mask];
            for e in 0..width {
                if ends >> e & 1 == 0 {
                    continue;
                }
                let len = mask.count_ones() as usize;
                if len >= 3 && g.has_edge(s + e, s) {
                    lengths[len] = true;
                }
                for f in 1..width {
                    if mask >> f & 1 == 0 && g.has_edge(s + e, s + f) {
                        reach[mask | 1 << f] |= 1 << f;
                    }
                }
            }
        }
    }
    (3..=n).filter(|&l| lengths[l]).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn spectrum_matches_held_karp(g in graph_strategy(8)) {
        let spectrum = cycle_spectrum(&g, Budget::UNLIMITED).unwrap();
        prop_assert_eq!(spectrum.lengths(), held_karp_lengths(&g));
        for l in spectrum.lengths() {
            let c = spectrum.witness(l).unwrap();
            prop_assert_eq!(c.len(), l);
            prop_assert!(c.vertices().iter().enumerate().all(|(i, &v)| g.has_edge(v, c.vertices()[(i + 1) % l])));
        }
        prop_assert_eq!(spectrum.girth(), girth(&g));
        prop_assert_eq!(spectrum.odd_girth(), odd_girth(&g));
    }

    #[test]
    fn bipartization_numbers(g in graph_strategy(8)) {
        let d = d2(&g, Budget::UNLIMITED).unwrap();
        let e = gamma2(&g, Budget::UNLIMITED).unwrap();
        prop_assert!(d.validate(&g));
        prop_assert!(e.validate(&g));
        prop_assert!(d.size <= e.size);
        prop_assert_eq!(d.size == 0, bipartition(&g).is_some());
        prop_assert_eq!(e.size == 0, d.size == 0);
        prop_assert_eq!(d.size, brute_force_d2(&g));
        prop_assert_eq!(e.size, brute_force_gamma2(&g));
        let (cut, split) = max_cut(&g, Budget::UNLIMITED).unwrap();
        prop_assert_eq!(cut + e.size, g.m());
        prop_assert!(split.x & 1 == 1);
    }

    #[test]
    fn gamma2_monotone_under_edge_addition(g in graph_strategy(8), extra in any::<u64>()) {
        let n = g.n();
        let added: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .enumerate()
            .filter(|&(i, (u, v))| extra >> (i % 64) & 1 == 1 && !g.has_edge(u, v))
            .map(|(_, e)| e)
            .collect();
        let h = g.with_edges_added(&added).unwrap();
        let (a, b) = (gamma2(&g, Budget::UNLIMITED).unwrap(), gamma2(&h, Budget::UNLIMITED).unwrap());
        prop_assert!(a.size <= b.size);
    }

    #[test]
    fn invariants_survive_relabeling((g, order) in graph_strategy(8).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), permutation(n))
    })) {
        let h = g.permuted(&order);
        prop_assert_eq!(canonical_form(&g), canonical_form(&h));
        let (sg, sh) = (cycle_spectrum(&g, Budget::UNLIMITED).unwrap(), cycle_spectrum(&h, Budget::UNLIMITED).unwrap());
        prop_assert_eq!(sg.lengths(), sh.lengths());
        prop_assert_eq!(d2(&g, Budget::UNLIMITED).unwrap().size, d2(&h, Budget::UNLIMITED).unwrap().size);
        prop_assert_eq!(gamma2(&g, Budget::UNLIMITED).unwrap().size, gamma2(&h, Budget::UNLIMITED).unwrap().size);
    }

    #[test]
    fn graph6_round_trip(g in graph_strategy(20)) {
        prop_assert_eq!(from_graph6(&to_graph6(&g)).unwrap(), g);
    }
}
