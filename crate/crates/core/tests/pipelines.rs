use std::time::Instant;

use qonsager::coeffs::{c_closed, c_from_polynomial, c_recursive, c_solve};

#[test]
fn three_pipelines_agree_to_rank_twelve() {
    for r in 1..=12 {
        let t0 = Instant::now();
        let rec = c_recursive(r).unwrap();
        let t1 = t0.elapsed();
        let closed = c_closed(r).unwrap();
        let t2 = t0.elapsed();
        let poly = c_from_polynomial(r).unwrap();
        let t3 = t0.elapsed();
        eprintln!("r={r} rec {t1:?} closed {:?} poly {:?}", t2 - t1, t3 - t2);
        assert_eq!(rec.diff(&closed), vec![], "recursive vs closed at r = {r}");
        assert_eq!(closed.diff(&poly), vec![], "closed vs polynomial at r = {r}");
        assert!(rec.check_invariants().is_empty(), "r = {r}");
    }
}

#[test]
fn solve_agrees_to_rank_six() {
    for r in 1..=6 {
        let t0 = Instant::now();
        let s = c_solve(r).unwrap();
        eprintln!("r={r} solve {:?}", t0.elapsed());
        assert_eq!(s.diff(&c_closed(r).unwrap()), vec![], "r = {r}");
    }
}
