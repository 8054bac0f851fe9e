use std::time::Instant;

use qonsager::coeffs::{c_closed, Pipeline};
use qonsager::qcoeff::LaurentScalar;
use qonsager::repcheck::{
    check_relation_matrix_with, spectral_polynomial_check, spectral_polynomial_check_with, Branch, MatrixCheckOptions,
    SpectralParams,
};

#[test]
fn matrix_relation_to_rank_five() {
    for branch in [Branch::Zero, Branch::Nonzero] {
        for r in 1..=5 {
            let start = Instant::now();
            let opts = MatrixCheckOptions { samples: 20, seed: 2024, branch, ..Default::default() };
            let report = check_relation_matrix_with(r, &c_closed(r).unwrap(), &opts).unwrap();
            assert!(report.all_zero, "{branch:?} r = {r}");
            assert!(report.normalization_is_one());
            eprintln!("matrix {branch:?} r = {r}: {:?}", start.elapsed());
        }
    }
}

#[test]
fn matrix_reports_are_seed_stable() {
    let t = c_closed(3).unwrap();
    let opts = MatrixCheckOptions { samples: 6, seed: 77, ..Default::default() };
    let a = check_relation_matrix_with(3, &t, &opts).unwrap();
    let b = check_relation_matrix_with(3, &t, &opts).unwrap();
    assert_eq!(a, b);
    for pipeline in Pipeline::ALL {
        let other = check_relation_matrix_with(3, &pipeline.compute(3).unwrap(), &opts).unwrap();
        assert!(other.all_zero);
    }
}

#[test]
fn spectral_band_to_rank_eight() {
    for r in 1..=8 {
        let start = Instant::now();
        let report = spectral_polynomial_check(r);
        assert!(report.oracle && report.passed, "r = {r}");
        eprintln!("spectral r = {r}: {:?}", start.elapsed());
    }
    let report = spectral_polynomial_check_with(5, &SpectralParams::new("q^2 - 3".parse::<LaurentScalar>().unwrap()));
    assert!(report.passed);
}
