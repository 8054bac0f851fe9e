//! Coefficient tables `c[r,p]_k` of the rank-`r` relation, by four
//! independent routes:
//!
//! - [`c_recursive`]: induction on `r` through the `eta`/`M` recursions;
//! - [`c_closed`]: the explicit subset-sum formula;
//! - [`c_from_polynomial`]: expansion of the factorized generating polynomial;
//! - [`c_solve`]: the linear system forced by reducing the relation itself.

mod closed;
mod generating;
mod linsys;
mod recursion;
mod solve;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::qcoeff::{q_binomial, LaurentScalar, QError};

pub use closed::c_closed;
pub use generating::{c_from_polynomial, expand_generating_polynomial, BivariatePolynomial};
pub use recursion::{
    c_recursive, eta_table, m_table, verify_eta_against_reducer, EtaMismatch, EtaReport, EtaTable, MTable,
    RecursionTables,
};
pub use solve::c_solve;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoeffError {
    #[error("rank must be at least 1")]
    ZeroRank,
    #[error("index ({p}, {k}) outside the admissible range for r = {r}")]
    OutOfRange { r: usize, p: usize, k: usize },
    #[error("no eta entry for m = {m}, p = {p}, j = {j}")]
    MissingEta { m: usize, p: usize, j: usize },
    #[error("table for r = {r} lacks entry ({p}, {k})")]
    Incomplete { r: usize, p: usize, k: usize },
    #[error("generating polynomial has a term x^{x} y^{y} rho^{rho} outside the expected shape")]
    Shape { x: usize, y: usize, rho: usize },
    #[error("linear system for r = {r} is inconsistent at {residual}")]
    Inconsistent { r: usize, residual: String },
    #[error("linear system for r = {r} has rank {rank} < {unknowns} unknowns")]
    Underdetermined { r: usize, rank: usize, unknowns: usize },
    #[error("malformed table document: {0}")]
    Document(String),
    #[error(transparent)]
    Scalar(#[from] QError),
}

/// Provenance tag of a [`CoeffTable`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Pipeline {
    Recursive,
    Closed,
    Polynomial,
    Solve,
    /// Supplied from outside (fixtures, hand-edited tables).
    Given,
}

impl Pipeline {
    pub const ALL: [Pipeline; 4] = [Pipeline::Recursive, Pipeline::Closed, Pipeline::Polynomial, Pipeline::Solve];

    pub fn name(self) -> &'static str {
        match self {
            Pipeline::Recursive => "recursive",
            Pipeline::Closed => "closed",
            Pipeline::Polynomial => "polynomial",
            Pipeline::Solve => "solve",
            Pipeline::Given => "given",
        }
    }

    pub fn compute(self, r: usize) -> Result<CoeffTable, CoeffError> {
        match self {
            Pipeline::Recursive => c_recursive(r),
            Pipeline::Closed => c_closed(r),
            Pipeline::Polynomial => c_from_polynomial(r),
            Pipeline::Solve => c_solve(r),
            Pipeline::Given => Err(CoeffError::Document("a given table cannot be computed".into())),
        }
    }
}

impl fmt::Display for Pipeline {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Pipeline {
    type Err = CoeffError;

    fn from_str(s: &str) -> Result<Self, CoeffError> {
        match s {
            "recursive" => Ok(Pipeline::Recursive),
            "closed" => Ok(Pipeline::Closed),
            "polynomial" => Ok(Pipeline::Polynomial),
            "solve" => Ok(Pipeline::Solve),
            "given" => Ok(Pipeline::Given),
            _ => Err(CoeffError::Document(format!("unknown pipeline `{s}`"))),
        }
    }
}

/// Largest `rho`-power `p` in the rank-`r` relation.
pub fn max_p(r: usize) -> usize {
    r.div_ceil(2)
}

/// Largest `k` for a given `(r, p)`, or `None` if `p` is out of range.
pub fn max_k(r: usize, p: usize) -> Option<usize> {
    (p <= max_p(r)).then(|| r + 1 - 2 * p)
}

pub fn is_admissible(r: usize, p: usize, k: usize) -> bool {
    max_k(r, p).is_some_and(|m| k <= m)
}

/// Every admissible `(p, k)` for rank `r`, in `(p, k)` order.
pub fn admissible(r: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..=max_p(r)).flat_map(move |p| (0..=r + 1 - 2 * p).map(move |k| (p, k)))
}

/// The triangular array `c[r,p]_k`, with every admissible entry present.
#[derive(Clone, PartialEq, Eq)]
pub struct CoeffTable {
    r: usize,
    pipeline: Pipeline,
    entries: BTreeMap<(usize, usize), LaurentScalar>,
}

/// A property the tables are expected to satisfy, found broken.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Violation {
    #[error("c[r,0]_{k} is not the q-binomial [r+1 choose {k}]")]
    NotBinomial { k: usize },
    #[error("c[r,{p}]_{k} differs from its mirror entry")]
    NotPalindromic { p: usize, k: usize },
    #[error("c[r,{p}]_{k} has a nontrivial denominator")]
    NotPolynomial { p: usize, k: usize },
    #[error("c[r,{p}]_{k} is not invariant under q -> 1/q")]
    NotBarInvariant { p: usize, k: usize },
}

impl CoeffTable {
    /// Builds a table, rejecting missing or out-of-range entries.
    pub fn new(
        r: usize,
        pipeline: Pipeline,
        entries: BTreeMap<(usize, usize), LaurentScalar>,
    ) -> Result<Self, CoeffError> {
        if r == 0 {
            return Err(CoeffError::ZeroRank);
        }
        if let Some(&(p, k)) = entries.keys().find(|&&(p, k)| !is_admissible(r, p, k)) {
            return Err(CoeffError::OutOfRange { r, p, k });
        }
        if let Some((p, k)) = admissible(r).find(|pk| !entries.contains_key(pk)) {
            return Err(CoeffError::Incomplete { r, p, k });
        }
        Ok(Self { r, pipeline, entries })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn pipeline(&self) -> Pipeline {
        self.pipeline
    }

    pub fn with_pipeline(mut self, pipeline: Pipeline) -> Self {
        self.pipeline = pipeline;
        self
    }

    pub fn get(&self, p: usize, k: usize) -> Option<&LaurentScalar> {
        self.entries.get(&(p, k))
    }

    /// Entry lookup that reports out-of-range indices as errors.
    pub fn try_get(&self, p: usize, k: usize) -> Result<&LaurentScalar, CoeffError> {
        self.get(p, k).ok_or(CoeffError::OutOfRange { r: self.r, p, k })
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &LaurentScalar)> {
        self.entries.iter().map(|(pk, v)| (*pk, v))
    }

    /// Copy with one entry replaced; tags the result as [`Pipeline::Given`].
    pub fn with_entry(&self, p: usize, k: usize, value: LaurentScalar) -> Result<Self, CoeffError> {
        if !is_admissible(self.r, p, k) {
            return Err(CoeffError::OutOfRange { r: self.r, p, k });
        }
        let mut out = self.clone();
        out.entries.insert((p, k), value);
        out.pipeline = Pipeline::Given;
        Ok(out)
    }

    /// Indices where the two tables differ (tables of different rank differ
    /// everywhere they do not share an index).
    pub fn diff(&self, other: &CoeffTable) -> Vec<(usize, usize)> {
        let mut keys: Vec<_> = self.entries.keys().chain(other.entries.keys()).copied().collect();
        keys.sort_unstable();
        keys.dedup();
        keys.into_iter().filter(|&(p, k)| self.get(p, k) != other.get(p, k)).collect()
    }

    pub fn check_invariants(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for k in 0..=self.r + 1 {
            let expected = q_binomial(self.r as i64 + 1, k as i64).expect("k within range");
            if self.entries[&(0, k)] != expected {
                out.push(Violation::NotBinomial { k });
            }
        }
        for (&(p, k), v) in &self.entries {
            let mirror = self.r + 1 - 2 * p - k;
            if self.entries[&(p, mirror)] != *v {
                out.push(Violation::NotPalindromic { p, k });
            }
            if !v.is_polynomial() {
                out.push(Violation::NotPolynomial { p, k });
            }
            if !v.is_bar_invariant() {
                out.push(Violation::NotBarInvariant { p, k });
            }
        }
        out
    }

    pub fn to_document(&self) -> TableDocument {
        TableDocument {
            r: self.r,
            entries: self
                .entries
                .iter()
                .map(|(&(p, k), v)| EntryDocument { p, k, value: v.to_string() })
                .collect(),
            pipeline: self.pipeline,
        }
    }

    pub fn from_document(doc: &TableDocument) -> Result<Self, CoeffError> {
        let mut entries = BTreeMap::new();
        for e in &doc.entries {
            let v: LaurentScalar = e.value.parse()?;
            if entries.insert((e.p, e.k), v).is_some() {
                return Err(CoeffError::Document(format!("duplicate entry ({}, {})", e.p, e.k)));
            }
        }
        Self::new(doc.r, doc.pipeline, entries)
    }
}

impl fmt::Display for CoeffTable {
    /// One `c[r,p]_k = value` line per entry.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (&(p, k), v) in &self.entries {
            writeln!(f, "c[{},{p}]_{k} = {v}", self.r)?;
        }
        Ok(())
    }
}

impl fmt::Debug for CoeffTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CoeffTable(r = {}, {}) ", self.r, self.pipeline)?;
        f.debug_map().entries(self.entries.iter()).finish()
    }
}

/// Serialized form: `{"r", "entries": [{"p", "k", "value"}], "pipeline"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableDocument {
    pub r: usize,
    pub entries: Vec<EntryDocument>,
    pub pipeline: Pipeline,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryDocument {
    pub p: usize,
    pub k: usize,
    pub value: String,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn admissible_shape() {
        assert_eq!(admissible(1).collect::<Vec<_>>(), vec![(0, 0), (0, 1), (0, 2), (1, 0)]);
        assert_eq!(admissible(2).count(), 6);
        assert_eq!(admissible(5).count(), 7 + 5 + 3 + 1);
        assert!(!is_admissible(2, 1, 2));
        assert!(is_admissible(3, 2, 0));
        assert!(!is_admissible(3, 3, 0));
    }

    #[test]
    fn construction_checks_shape() {
        let mut entries: BTreeMap<_, _> = admissible(1).map(|pk| (pk, LaurentScalar::one())).collect();
        assert!(CoeffTable::new(1, Pipeline::Given, entries.clone()).is_ok());
        entries.insert((1, 1), LaurentScalar::one());
        assert_eq!(
            CoeffTable::new(1, Pipeline::Given, entries.clone()).unwrap_err(),
            CoeffError::OutOfRange { r: 1, p: 1, k: 1 }
        );
        entries.remove(&(1, 1));
        entries.remove(&(0, 2));
        assert_eq!(
            CoeffTable::new(1, Pipeline::Given, entries).unwrap_err(),
            CoeffError::Incomplete { r: 1, p: 0, k: 2 }
        );
    }

    #[test]
    fn document_round_trip() {
        let t = c_closed(3).unwrap();
        let doc = t.to_document();
        let json = serde_json::to_string(&doc).unwrap();
        assert!(json.starts_with(r#"{"r":3,"entries":[{"p":0,"k":0,"value":"1"}"#));
        assert!(json.ends_with(r#""pipeline":"closed"}"#));
        let back: TableDocument = serde_json::from_str(&json).unwrap();
        assert_eq!(CoeffTable::from_document(&back).unwrap(), t);
    }

    #[test]
    fn invariant_violations_are_reported() {
        let t = c_closed(3).unwrap();
        assert!(t.check_invariants().is_empty());
        let bad = t.with_entry(1, 0, t.get(1, 0).unwrap() * &LaurentScalar::q_pow(1)).unwrap();
        let v = bad.check_invariants();
        assert!(v.contains(&Violation::NotBarInvariant { p: 1, k: 0 }));
        assert!(v.contains(&Violation::NotPalindromic { p: 1, k: 0 }));
        assert_eq!(bad.diff(&t), vec![(1, 0)]);
    }
}
