//! `Delta_r(A_0, A_1)` at seeded random points of the evaluation
//! representation.

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{build_evaluation_rep, calibrate_rho, Mat3, ParamsDocument, RepError, RepParams};
use crate::coeffs::{admissible, CoeffTable, Pipeline};

pub const DEFAULT_MAX_RANK: usize = 5;

/// Which solution of the `w` constraint is sampled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    /// `w_i = 0`.
    #[default]
    Zero,
    /// `w_i != 0`, `cbar_i = -w_i^2 (q + 1/q - 2) / c_i`.
    Nonzero,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MatrixCheckOptions {
    pub samples: usize,
    pub seed: u64,
    pub branch: Branch,
    pub max_r: usize,
}

impl Default for MatrixCheckOptions {
    fn default() -> Self {
        Self { samples: 20, seed: 0, branch: Branch::Zero, max_r: DEFAULT_MAX_RANK }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointReport {
    pub index: usize,
    pub params: ParamsDocument,
    pub rho: String,
    pub rho_expected: String,
    /// `rho / (c_0 cbar_0)`.
    pub normalization: Option<String>,
    pub zero: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub residual: Option<Vec<Vec<String>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixReport {
    pub r: usize,
    pub pipeline: Pipeline,
    pub seed: u64,
    pub branch: Branch,
    pub all_zero: bool,
    pub points: Vec<PointReport>,
}

fn small(rng: &mut ChaCha8Rng) -> BigRational {
    let n: i64 = rng.gen_range(1..=9);
    let d: i64 = rng.gen_range(1..=9);
    let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
    BigRational::new((sign * n).into(), d.into())
}

fn sample_s(rng: &mut ChaCha8Rng) -> BigRational {
    loop {
        let a: i64 = rng.gen_range(2..=7);
        let b: i64 = rng.gen_range(1..=3);
        let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
        if a != b {
            return BigRational::new((sign * a).into(), b.into());
        }
    }
}

/// Parameter point number `index` of the stream seeded by `seed`.
pub fn sample_params(seed: u64, index: usize, branch: Branch) -> RepParams {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    let s = sample_s(&mut rng);
    let z = small(&mut rng);
    let c = [(); 3].map(|_| small(&mut rng));
    let (cbar, w) = match branch {
        Branch::Zero => ([(); 3].map(|_| small(&mut rng)), Default::default()),
        Branch::Nonzero => {
            let q = &s * &s;
            let d = &q + &q.recip() - BigRational::from_integer(2.into());
            let w = [(); 3].map(|_| small(&mut rng));
            let cbar = [0, 1, 2].map(|j| -(&w[j] * &w[j] * &d) / &c[j]);
            (cbar, w)
        }
    };
    RepParams::with_w(s, z, c, cbar, w).expect("sampled parameters satisfy the constraints")
}

/// `Delta_r(A, B)` with the scalars specialized at `q` and `rho`.
pub fn delta_at(r: usize, table: &CoeffTable, q: &BigRational, rho: &BigRational, a: &Mat3, b: &Mat3) -> Result<Mat3, RepError> {
    let a_pow: Vec<Mat3> = (0..=r + 1).map(|n| a.pow(n)).collect();
    let b_r = b.pow(r);
    let mut out = Mat3::zero();
    for (p, k) in admissible(r) {
        let mut c = table.try_get(p, k)?.eval(q)? * num_traits::pow(rho.clone(), p);
        if (k + p) % 2 == 1 {
            c = -c;
        }
        if c.is_zero() {
            continue;
        }
        let m = &(&a_pow[r + 1 - 2 * p - k] * &b_r) * &a_pow[k];
        out = &out + &m.scale(&c);
    }
    Ok(out)
}

fn check_point(r: usize, table: &CoeffTable, index: usize, params: RepParams) -> Result<PointReport, RepError> {
    let rep = build_evaluation_rep(&params)?;
    let cal = calibrate_rho(&rep, 0, 1)?;
    let delta = delta_at(r, table, &params.q(), &cal.rho, &rep.a[0], &rep.a[1])?;
    let zero = delta.is_zero();
    Ok(PointReport {
        index,
        params: params.to_document(),
        rho: cal.rho.to_string(),
        rho_expected: cal.expected.to_string(),
        normalization: cal.factor().map(|f| f.to_string()),
        zero,
        residual: (!zero).then(|| delta.to_strings()),
    })
}

/// Evaluates `Delta_r(A_0, A_1)` at `options.samples` points, with `rho`
/// calibrated at each point. A nonzero matrix is reported, not an error.
pub fn check_relation_matrix_with(r: usize, table: &CoeffTable, options: &MatrixCheckOptions) -> Result<MatrixReport, RepError> {
    if r == 0 || r > options.max_r {
        return Err(RepError::RankOutOfRange { r, max: options.max_r });
    }
    if table.r() != r {
        return Err(RepError::RankMismatch { expected: r, found: table.r() });
    }
    let points = (0..options.samples)
        .into_par_iter()
        .map(|i| check_point(r, table, i, sample_params(options.seed, i, options.branch)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(MatrixReport {
        r,
        pipeline: table.pipeline(),
        seed: options.seed,
        branch: options.branch,
        all_zero: points.iter().all(|p| p.zero),
        points,
    })
}

pub fn check_relation_matrix(r: usize, table: &CoeffTable, samples: usize, seed: u64) -> Result<MatrixReport, RepError> {
    check_relation_matrix_with(r, table, &MatrixCheckOptions { samples, seed, ..Default::default() })
}

impl MatrixReport {
    /// Whether every point calibrated to exactly `c_0 cbar_0`.
    pub fn normalization_is_one(&self) -> bool {
        self.points.iter().all(|p| p.normalization.as_deref().is_none_or(|f| f == BigRational::one().to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::c_closed;
    use crate::qcoeff::LaurentScalar;

    #[test]
    fn rank_one_is_exact() {
        let report = check_relation_matrix(1, &c_closed(1).unwrap(), 10, 3).unwrap();
        assert!(report.all_zero && report.normalization_is_one());
        assert_eq!(report.points.len(), 10);
        assert!(report.points.iter().enumerate().all(|(i, p)| p.index == i));
    }

    #[test]
    fn both_branches_to_rank_three() {
        for branch in [Branch::Zero, Branch::Nonzero] {
            for r in 2..=3 {
                let opts = MatrixCheckOptions { samples: 5, seed: 11, branch, ..Default::default() };
                let report = check_relation_matrix_with(r, &c_closed(r).unwrap(), &opts).unwrap();
                assert!(report.all_zero, "{branch:?} r = {r}");
            }
        }
    }

    #[test]
    fn nonzero_branch_has_nonzero_w() {
        let p = sample_params(5, 2, Branch::Nonzero);
        assert!(p.w.iter().all(|w| !w.is_zero()));
        assert!(p.validate().is_ok());
    }

    #[test]
    fn perturbation_is_reported() {
        let t = c_closed(2).unwrap();
        let bad = t.with_entry(0, 1, t.get(0, 1).unwrap() + &LaurentScalar::one()).unwrap();
        let report = check_relation_matrix(2, &bad, 4, 1).unwrap();
        assert!(!report.all_zero);
        assert!(report.points.iter().any(|p| p.residual.is_some()));
        assert_eq!(report.pipeline, Pipeline::Given);
    }

    #[test]
    fn seeded_sampling_is_reproducible() {
        assert_eq!(sample_params(9, 4, Branch::Zero), sample_params(9, 4, Branch::Zero));
        assert_ne!(sample_params(9, 4, Branch::Zero), sample_params(9, 5, Branch::Zero));
    }

    #[test]
    fn rank_bounds() {
        let t = c_closed(6).unwrap();
        assert!(matches!(check_relation_matrix(6, &t, 1, 0), Err(RepError::RankOutOfRange { r: 6, max: 5 })));
        assert!(matches!(
            check_relation_matrix(3, &c_closed(2).unwrap(), 1, 0),
            Err(RepError::RankMismatch { expected: 3, found: 2 })
        ));
    }
}
