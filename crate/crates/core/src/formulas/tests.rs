use super::*;
use crate::constructions::{h_detached_edge, h_with_edge, kneser, pattern_section3, turan_with_matching};
use crate::counting::count_copies;

fn caps() -> Caps {
    Caps::default()
}

#[test]
fn triangle_values() {
    // Rademacher: floor(n/2) triangles through an edge in the larger class
    for n in 6..12 {
        let c: u128 = c_min(&Graph::complete(3), 1, n, &caps()).unwrap();
        assert_eq!(c, (n / 2) as u128);
        let d: u128 = d_eval(&Graph::complete(3), 1, n, &caps()).unwrap();
        assert_eq!(d, c);
        let fv: u128 = f_eval(&Graph::complete(3), 1, n, &caps()).unwrap();
        assert_eq!(fv, c);
    }
}

#[test]
fn added_edge_matches_brute_force() {
    let cases: Vec<(Graph, usize, usize)> = vec![
        (Graph::complete(3), 1, 7),
        (Graph::complete(4), 1, 8),
        (Graph::complete(3).scalar_union(2), 2, 9),
        (pattern_section3(2).unwrap().graph, 2, 12),
        (pattern_section3(2).unwrap().graph, 2, 13),
    ];
    for (f, k, n) in cases {
        let profile = CriticalProfile::build(&f, k, ProfileKind::AddedEdge, &caps()).unwrap();
        let sizes = profile.part_sizes(n).unwrap();
        for p in 0..sizes.len() {
            let formula: u128 = profile.evaluate(&sizes, p).unwrap();
            let host = h_with_edge(n, profile.r, k, p).unwrap();
            assert_eq!(formula, count_copies(&f, &host.graph).unwrap(), "n={n} part {p}");
        }
    }
}

#[test]
fn section3_profile_agrees_with_closed_form() {
    let f = pattern_section3(2).unwrap().graph;
    let profile = CriticalProfile::build(&f, 2, ProfileKind::AddedEdge, &caps()).unwrap();
    for n in 11..16 {
        let sizes = profile.part_sizes(n).unwrap();
        for i in 0..3 {
            let a: BigUint = profile.evaluate(&sizes, i).unwrap();
            let b: BigUint = sec3_ci(n, 2, i).unwrap();
            assert_eq!(a, b, "n={n} part {i}");
        }
    }
    assert_eq!(c_min::<u128>(&f, 2, 13, &caps()).unwrap(), 576);
}

#[test]
fn petersen_profile_agrees_with_closed_form() {
    let p = kneser(5, 2).unwrap();
    let profile = CriticalProfile::build(&p, 3, ProfileKind::AddedEdge, &caps()).unwrap();
    for n in 13..30 {
        let c: BigUint = profile.minimum(n).unwrap();
        assert_eq!(c, petersen_c_formula::<BigUint>(n).unwrap(), "n={n}");
    }
}

#[test]
fn matching_host_matches_brute_force() {
    let cases: Vec<(Graph, usize, usize)> = vec![
        (Graph::complete(3), 1, 7),
        (Graph::complete(3).scalar_union(2), 2, 12),
        (Graph::complete(4).scalar_union(2), 2, 10),
    ];
    for (f, k, n) in cases {
        let profile = CriticalProfile::build(&f, k, ProfileKind::Matching, &caps()).unwrap();
        let sizes = profile.part_sizes(n).unwrap();
        for p in (0..sizes.len()).filter(|&p| sizes[p] >= 2 * k) {
            let formula: u128 = profile.evaluate(&sizes, p).unwrap();
            let host = turan_with_matching(n, profile.r, k, p).unwrap();
            assert_eq!(formula, count_copies(&f, &host.graph).unwrap(), "n={n} part {p}");
        }
    }
}

#[test]
fn detached_host_matches_brute_force() {
    let cases: Vec<(Graph, usize, usize)> = vec![
        (Graph::complete(4), 1, 8),
        (Graph::complete(3).scalar_union(2), 2, 9),
        (pattern_section3(2).unwrap().graph, 2, 12),
        (kneser(5, 2).unwrap(), 3, 14),
    ];
    for (f, k, n) in cases {
        let profile = CriticalProfile::build(&f, k, ProfileKind::DetachedEdge, &caps()).unwrap();
        let sizes = profile.part_sizes(n).unwrap();
        for p in 0..sizes.len() {
            let formula: u128 = profile.evaluate(&sizes, p).unwrap();
            let host = h_detached_edge(n, profile.r, k, p).unwrap();
            assert_eq!(formula, count_copies(&f, &host.graph).unwrap(), "n={n} part {p}");
        }
    }
}

#[test]
fn non_critical_patterns_are_rejected() {
    assert!(CriticalProfile::build(&Graph::complete(3), 2, ProfileKind::AddedEdge, &caps()).is_err());
}

#[test]
fn report_agreement_flag() {
    let r = FormulaReport::new("petersen-c", &[("n", 16)], &33600u128).with_oracle(33600);
    assert_eq!(r.agreement, Some(true));
    let r = FormulaReport::new("petersen-c", &[("n", 16)], &33600u128).with_oracle(1);
    assert_eq!(r.agreement, Some(false));
}
