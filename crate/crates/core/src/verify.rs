//! The rank-`r` relation
//!
//! ```text
//! Delta_r = sum_{p,k} (-1)^(k+p) rho^p c[r,p]_k A_i^(r-2p+1-k) A_j^r A_i^k
//! ```
//!
//! and its symbolic verification by reduction to normal form.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coeffs::{admissible, CoeffError, CoeffTable, Pipeline};
use crate::freealg::{monomial, Letter, NCPolynomial, Word};
use crate::qcoeff::{q_binomial, LaurentScalar, RhoScalar};
use crate::reducer::{Reducer, RhoMode};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VerifyError {
    #[error("table has rank {found}, expected {expected}")]
    RankMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}

fn term(r: usize, p: usize, k: usize, c: &LaurentScalar) -> NCPolynomial {
    let sign = if (k + p).is_multiple_of(2) { c.clone() } else { -c };
    monomial(r + 1 - 2 * p - k, r, k).scale(&RhoScalar::monomial(sign, p))
}

/// `Delta_r` with the coefficients of `table`; with `rho_zero` only the
/// `p = 0` terms are kept.
pub fn build_delta(r: usize, table: &CoeffTable, rho_zero: bool) -> Result<NCPolynomial, VerifyError> {
    if table.r() != r {
        return Err(VerifyError::RankMismatch { expected: r, found: table.r() });
    }
    let mut out = NCPolynomial::zero();
    for (p, k) in admissible(r).filter(|&(p, _)| !rho_zero || p == 0) {
        out = &out + &term(r, p, k, table.try_get(p, k)?);
    }
    Ok(out)
}

/// `sum_k (-1)^k [r+1 choose k] A_i^(r+1-k) A_j^r A_i^k`, the higher q-Serre
/// relation.
pub fn qserre_delta(r: usize) -> NCPolynomial {
    let mut out = NCPolynomial::zero();
    for k in 0..=r + 1 {
        let c = q_binomial(r as i64 + 1, k as i64).expect("k <= r + 1");
        out = &out + &term(r, 0, k, &c);
    }
    out
}

/// Outcome of reducing one relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationCertificate {
    pub r: usize,
    pub table_source: Pipeline,
    pub rho_zero: bool,
    pub reduced_form: NCPolynomial,
    pub elapsed: Duration,
    pub term_count_peak: usize,
}

impl RelationCertificate {
    /// Whether the relation holds.
    pub fn is_zero(&self) -> bool {
        self.reduced_form.is_zero()
    }

    /// Serialized form; `timing = false` writes `ms: 0` for reproducible output.
    pub fn to_document(&self, timing: bool) -> CertificateDocument {
        CertificateDocument {
            r: self.r,
            pipeline: self.table_source,
            rho_zero: self.rho_zero,
            zero: self.is_zero(),
            residual_terms: self.reduced_form.len(),
            peak_terms: self.term_count_peak,
            ms: if timing { self.elapsed.as_millis() as u64 } else { 0 },
            residual: (!self.is_zero()).then(|| self.reduced_form.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDocument {
    pub r: usize,
    pub pipeline: Pipeline,
    pub rho_zero: bool,
    pub zero: bool,
    pub residual_terms: usize,
    pub peak_terms: usize,
    pub ms: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub residual: Option<String>,
}

fn certify(r: usize, source: Pipeline, rho_zero: bool, delta: &NCPolynomial, start: Instant) -> RelationCertificate {
    let mode = if rho_zero { RhoMode::Zero } else { RhoMode::Formal };
    let (reduced_form, stats) = Reducer::new(mode).reduce_with_stats(delta);
    RelationCertificate {
        r,
        table_source: source,
        rho_zero,
        reduced_form,
        elapsed: start.elapsed(),
        term_count_peak: stats.peak_terms,
    }
}

/// Reduces `Delta_r` built from `table`; a nonzero residual is a reported
/// outcome, not an error.
pub fn verify_relation(r: usize, table: &CoeffTable, rho_zero: bool) -> Result<RelationCertificate, VerifyError> {
    let start = Instant::now();
    let delta = build_delta(r, table, rho_zero)?;
    Ok(certify(r, table.pipeline(), rho_zero, &delta, start))
}

/// Reduces the higher q-Serre relation with the `rho = 0` rule.
pub fn verify_qserre(r: usize) -> RelationCertificate {
    let start = Instant::now();
    certify(r, Pipeline::Given, true, &qserre_delta(r), start)
}

/// [`verify_relation`] over several tables concurrently; results keep the
/// input order.
pub fn verify_many(tables: &[CoeffTable], rho_zero: bool) -> Vec<RelationCertificate> {
    tables
        .par_iter()
        .map(|t| verify_relation(t.r(), t, rho_zero).expect("rank taken from the table"))
        .collect()
}

/// Image of `x` when the two generators commute: every word becomes
/// `A_i^a A_j^b`.
pub fn commuting_image(x: &NCPolynomial) -> NCPolynomial {
    x.terms()
        .map(|(w, c)| {
            let letters: Vec<Letter> =
                std::iter::repeat_n(Letter::I, w.i_degree()).chain(std::iter::repeat_n(Letter::J, w.j_degree())).collect();
            (Word::from_letters(&letters), c.clone())
        })
        .collect()
}
