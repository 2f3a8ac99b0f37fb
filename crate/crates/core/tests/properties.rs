use num_bigint::BigUint;
use proptest::prelude::*;
use supersat::caps::Caps;
use supersat::counting::{automorphism_count, count_copies, count_injections};
use supersat::graph::{chromatic_number, count_proper_colorings, matching_number, Edge};
use supersat::io::{from_graph6, to_graph6};
use supersat::scalar::{binomial, falling, to_big};
use supersat::types::{enumerate_types, type_count};
use supersat::Graph;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<Edge> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let len = pairs.len();
        proptest::collection::vec(any::<bool>(), len).prop_map(move |keep| {
            let edges: Vec<Edge> = pairs.iter().zip(&keep).filter(|(_, &k)| k).map(|(&e, _)| e).collect();
            Graph::build(n, &edges).unwrap()
        })
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

/// Chromatic polynomial at `k` by deletion and contraction on an adjacency
/// matrix.
fn chromatic_poly(adj: &[Vec<bool>], k: i128) -> i128 {
    let n = adj.len();
    let edge = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .find(|&(u, v)| adj[u][v]);
    let Some((u, v)) = edge else {
        return k.pow(n as u32);
    };
    let mut deleted = adj.to_vec();
    deleted[u][v] = false;
    deleted[v][u] = false;
    // merge v into u
    let keep: Vec<usize> = (0..n).filter(|&w| w != v).collect();
    let contracted: Vec<Vec<bool>> = keep
        .iter()
        .map(|&a| {
            keep.iter()
                .map(|&b| {
                    let mut e = adj[a][b];
                    if a == u && b != u {
                        e |= adj[v][b];
                    }
                    if b == u && a != u {
                        e |= adj[a][v];
                    }
                    e && a != b
                })
                .collect()
        })
        .collect();
    chromatic_poly(&deleted, k) - chromatic_poly(&contracted, k)
}

fn matrix(g: &Graph) -> Vec<Vec<bool>> {
    (0..g.n())
        .map(|u| (0..g.n()).map(|v| g.has_edge(u, v)).collect())
        .collect()
}

/// Largest set of disjoint edges, by trying every subset.
fn matching_brute(g: &Graph) -> usize {
    let edges = g.edge_list();
    let mut best = 0;
    for mask in 0u32..(1 << edges.len()) {
        let mut used = 0u64;
        let mut ok = true;
        for (i, &(a, b)) in edges.iter().enumerate() {
            if mask >> i & 1 == 1 {
                if used >> a & 1 == 1 || used >> b & 1 == 1 {
                    ok = false;
                    break;
                }
                used |= 1 << a | 1 << b;
            }
        }
        if ok {
            best = best.max(mask.count_ones() as usize);
        }
    }
    best
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn graph6_round_trip(g in graph(20)) {
        let text = to_graph6(&g);
        prop_assert_eq!(from_graph6(&text).unwrap(), g.clone());
        prop_assert_eq!(to_graph6(&from_graph6(&text).unwrap()), text);
    }

    #[test]
    fn copies_times_aut_is_injections(f in graph(5), g in graph(8)) {
        prop_assume!(f.isolated_vertices() == 0);
        let copies = count_copies(&f, &g).unwrap();
        prop_assert_eq!(count_injections(&f, &g).unwrap(), copies * automorphism_count(&f).unwrap());
    }

    #[test]
    fn counts_survive_relabelling((g, perm) in graph(9).prop_flat_map(|g| { let n = g.n(); (Just(g), permutation(n)) })) {
        let f = Graph::complete(3);
        let p4 = Graph::build(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let h = g.relabel(&perm).unwrap();
        prop_assert_eq!(count_copies(&f, &g).unwrap(), count_copies(&f, &h).unwrap());
        prop_assert_eq!(count_copies(&p4, &g).unwrap(), count_copies(&p4, &h).unwrap());
        prop_assert_eq!(automorphism_count(&g).unwrap(), automorphism_count(&h).unwrap());
    }

    #[test]
    fn adding_an_edge_never_loses_copies(g in graph(9), a in 0usize..9, b in 0usize..9) {
        let (a, b) = (a % g.n(), b % g.n());
        prop_assume!(a != b && !g.has_edge(a, b));
        let h = g.add_edge(a, b).unwrap();
        for f in [Graph::complete(3), Graph::build(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()] {
            prop_assert!(count_copies(&f, &h).unwrap() >= count_copies(&f, &g).unwrap());
        }
    }

    #[test]
    fn colouring_counts_follow_deletion_contraction(g in graph(7), k in 1usize..5) {
        let oracle = chromatic_poly(&matrix(&g), k as i128);
        prop_assert_eq!(count_proper_colorings(&g, k).unwrap() as i128, oracle);
    }

    #[test]
    fn chromatic_number_is_least_colourable_k(g in graph(7)) {
        let chi = chromatic_number(&g).unwrap();
        let m = matrix(&g);
        prop_assert!(chromatic_poly(&m, chi as i128) > 0);
        if chi > 1 {
            prop_assert_eq!(chromatic_poly(&m, chi as i128 - 1), 0);
        }
    }

    #[test]
    fn matching_number_matches_brute_force(g in graph(7)) {
        prop_assume!(g.edge_count() <= 16);
        prop_assert_eq!(matching_number(&g).unwrap(), matching_brute(&g));
    }

    #[test]
    fn exact_arithmetic_agrees_across_scalars(n in 0i64..60, k in 0i64..30) {
        let small: u128 = binomial(n, k).unwrap();
        let big: BigUint = binomial(n, k).unwrap();
        prop_assert_eq!(to_big(&small), big);
        let ffb: BigUint = falling(n as u64, k as u64).unwrap();
        match falling::<u128>(n as u64, k as u64) {
            Ok(ff) => prop_assert_eq!(to_big(&ff), ffb),
            // the narrow scalar reports overflow instead of wrapping
            Err(_) => prop_assert!(ffb > BigUint::from(u128::MAX)),
        }
    }

    #[test]
    fn type_stream_is_complete_and_distinct(n in 1usize..7, r in 2usize..5) {
        let g = Graph::empty(n);
        let all: Vec<Vec<usize>> = enumerate_types(&g, r, &Caps::default()).unwrap().map(|t| t.assignment().to_vec()).collect();
        prop_assert_eq!(all.len() as u128, type_count(n, r));
        let distinct: std::collections::BTreeSet<_> = all.iter().collect();
        prop_assert_eq!(distinct.len(), all.len());
    }
}
