use supersat::constructions::{h_nrk, h_with_edge, pattern_section3};
use supersat::counting::{classify_by_pieces, count_copies, format_signature, PreparedPattern};
use supersat::formulas::{sec3_ci, sec3_ordering_holds, verify_counterexample};

#[test]
fn star_host_decomposes_exactly() {
    for (n, q) in [(18, 4), (20, 5)] {
        let rep = verify_counterexample(n, 2, q, true).unwrap();
        let ex = rep.exact.unwrap();
        println!("n={n} q={q} main={} {:?}", rep.main_term, ex.by_star_edges);
        assert!(ex.reconciles, "n={n} q={q}");
        assert!(ex.one_edge_class_is_main);
    }
    // the star does not fit in the first part at n = 18 with q = 5
    assert!(verify_counterexample(18, 2, 5, true).is_err());
}

#[test]
fn eq1_window_and_ordering() {
    let f = pattern_section3(2).unwrap().graph;
    for n in 11..=15 {
        for i in 0..3 {
            let host = h_with_edge(n, 3, 2, i).unwrap();
            assert_eq!(
                count_copies(&f, &host.graph).unwrap(),
                sec3_ci::<u128>(n, 2, i).unwrap(),
                "n={n} i={i}"
            );
        }
    }
    assert!(sec3_ordering_holds(5, 2).unwrap());
    assert_eq!(count_copies(&f, &h_nrk(13, 3, 2).unwrap().graph).unwrap(), 0);
}

#[test]
fn every_copy_splits_along_the_parts() {
    let pat = pattern_section3(2).unwrap();
    let p = PreparedPattern::new(&pat.graph).unwrap();
    for n in [12, 13] {
        for i in 0..3 {
            let host = h_with_edge(n, 3, 2, i).unwrap();
            let hist = classify_by_pieces(&p, &host, &pat.pieces).unwrap();
            let names: Vec<String> = hist.keys().map(|k| format_signature(k, &pat.piece_names)).collect();
            println!("n={n} i={i} {names:?}");
            assert!(hist.len() <= 2);
        }
    }
}
