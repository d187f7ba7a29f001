//! The rayon-backed scan and search must be observationally identical to
//! the sequential versions: same rows, same families, same node counts,
//! same bytes.

#![cfg(feature = "parallel")]

use sedf::{parallel, scan_tsv, GroupSpec};

#[test]
fn scan_rows_match_sequential() {
    for q_max in [5, 27, 128, 257] {
        let seq = sedf::scan_cyclotomic(q_max, 2).unwrap();
        let par = parallel::scan_cyclotomic(q_max, 2).unwrap();
        assert_eq!(seq, par, "scan rows differ at q_max = {q_max}");
        assert_eq!(scan_tsv(&seq), scan_tsv(&par));
    }
}

#[test]
fn scan_capacity_error_matches_sequential() {
    assert!(sedf::scan_cyclotomic(1 << 21, 2).is_err());
    assert!(parallel::scan_cyclotomic(1 << 21, 2).is_err());
}

#[test]
fn search_outcomes_match_sequential() {
    let cases: [(Vec<u32>, usize, usize); 4] = [
        (vec![5], 2, 2),
        (vec![9], 3, 2),
        (vec![3, 3], 2, 4),
        (vec![4], 4, 1),
    ];
    for (factors, m, k) in cases {
        let group = GroupSpec::new(factors.clone()).unwrap();
        let seq = sedf::exhaustive_search(&group, m, k, None).unwrap();
        let par = parallel::exhaustive_search(&group, m, k, None).unwrap();
        assert_eq!(seq, par, "outcomes differ for {factors:?}, m={m}, k={k}");
    }
}

#[test]
fn search_with_node_limit_matches_sequential() {
    let group = GroupSpec::cyclic(5).unwrap();
    for limit in [1, 3, 10, 100] {
        let seq = sedf::exhaustive_search(&group, 2, 2, Some(limit)).unwrap();
        let par = parallel::exhaustive_search(&group, 2, 2, Some(limit)).unwrap();
        assert_eq!(seq, par, "outcomes differ at limit = {limit}");
        assert!(limit >= seq.nodes);
    }
}
