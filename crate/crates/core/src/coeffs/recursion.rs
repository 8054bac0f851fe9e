//! Inductive construction `r -> r + 1` through the expansions
//! `A_i^m A_j = sum_p rho^p (eta[m,p,0] A_i A_j A_i^.. + eta[m,p,1] A_j A_i^..)`
//! and the auxiliary coefficients `M[r,p]_k`.

use std::collections::BTreeMap;

use super::{admissible, is_admissible, max_k, max_p, CoeffError, CoeffTable, Pipeline};
use crate::freealg::{monomial, NCPolynomial, Word};
use crate::qcoeff::{q_binomial, q_int, LaurentScalar, RhoScalar};
use crate::reducer::{reduce, RhoMode};

/// `eta[m,p,j]` for `2 <= m <= m_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EtaTable {
    m_max: usize,
    entries: BTreeMap<(usize, usize, usize), LaurentScalar>,
}

impl EtaTable {
    pub fn m_max(&self) -> usize {
        self.m_max
    }

    pub fn get(&self, m: usize, p: usize, j: usize) -> Result<&LaurentScalar, CoeffError> {
        self.entries.get(&(m, p, j)).ok_or(CoeffError::MissingEta { m, p, j })
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize, usize), &LaurentScalar)> {
        self.entries.iter().map(|(i, v)| (*i, v))
    }

    /// The expansion of `A_i^m A_j` these entries encode, including the
    /// `rho^(n+1) A_j` tail for even `m = 2n + 2`.
    pub fn expansion(&self, m: usize) -> Result<NCPolynomial, CoeffError> {
        let mut out = NCPolynomial::zero();
        let top = (m - 1) / 2;
        for p in 0..=top {
            let rest = m - 1 - 2 * p;
            let ij = Word::parse("IJ").unwrap().concat(&Word::i_pow(rest));
            let j = Word::parse("J").unwrap().concat(&Word::i_pow(rest + 1));
            out.add_term(ij, RhoScalar::monomial(self.get(m, p, 0)?.clone(), p));
            out.add_term(j, RhoScalar::monomial(self.get(m, p, 1)?.clone(), p));
        }
        if m.is_multiple_of(2) {
            out.add_term(Word::parse("J").unwrap(), RhoScalar::monomial(LaurentScalar::one(), m / 2));
        }
        Ok(out)
    }
}

/// `M[r,p]_k` for one rank `r`, all `p` and `0 <= k <= r - 2p + 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MTable {
    r: usize,
    entries: BTreeMap<(usize, usize), LaurentScalar>,
}

impl MTable {
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn get(&self, p: usize, k: usize) -> Result<&LaurentScalar, CoeffError> {
        self.entries.get(&(p, k)).ok_or(CoeffError::OutOfRange { r: self.r, p, k })
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &LaurentScalar)> {
        self.entries.iter().map(|(i, v)| (*i, v))
    }
}

/// The `eta` and `M` tables driving one induction step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecursionTables {
    pub eta: EtaTable,
    pub em: MTable,
}

pub fn eta_table(m_max: usize) -> EtaTable {
    assert!(m_max >= 2, "eta tables start at m = 2");
    let two = q_int(2);
    let mut e: BTreeMap<(usize, usize, usize), LaurentScalar> = BTreeMap::new();
    e.insert((2, 0, 0), two.clone());
    e.insert((2, 0, 1), LaurentScalar::from_int(-1));
    let g = |e: &BTreeMap<_, LaurentScalar>, m, p, j| e[&(m, p, j)].clone();
    for m in 3..=m_max {
        if m % 2 == 1 {
            // m = 2n + 1
            let n = (m - 1) / 2;
            for p in 0..n {
                let v = &(&two * &g(&e, m - 1, p, 0)) + &g(&e, m - 1, p, 1);
                e.insert((m, p, 0), v);
            }
            e.insert((m, n, 0), LaurentScalar::one());
            for p in 1..n {
                let v = &g(&e, m - 1, p - 1, 0) - &g(&e, m - 1, p, 0);
                e.insert((m, p, 1), v);
            }
            let v = -&g(&e, m - 1, 0, 0);
            e.insert((m, 0, 1), v);
            let v = g(&e, m - 1, n - 1, 0);
            e.insert((m, n, 1), v);
        } else {
            // m = 2n + 2
            let n = (m - 2) / 2;
            for p in 0..=n {
                let v = &(&two * &g(&e, m - 1, p, 0)) + &g(&e, m - 1, p, 1);
                e.insert((m, p, 0), v);
            }
            for p in 1..=n {
                let v = &g(&e, m - 1, p - 1, 0) - &g(&e, m - 1, p, 0);
                e.insert((m, p, 1), v);
            }
            let v = -&g(&e, m - 1, 0, 0);
            e.insert((m, 0, 1), v);
        }
    }
    EtaTable { m_max, entries: e }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EtaMismatch {
    pub m: usize,
    pub expected: NCPolynomial,
    pub reduced: NCPolynomial,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EtaReport {
    /// Exponents `m` compared, in order, up to and including any mismatch.
    pub checked: Vec<usize>,
    pub first_mismatch: Option<EtaMismatch>,
}

impl EtaReport {
    pub fn passed(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// Compares `reduce(A_i^m A_j)` against the `eta` expansion for
/// `2 <= m <= 2 n_max + 2`, stopping at the first mismatch.
pub fn verify_eta_against_reducer(n_max: usize) -> EtaReport {
    assert!(n_max >= 1);
    let m_max = 2 * n_max + 2;
    let eta = eta_table(m_max);
    let mut report = EtaReport { checked: Vec::new(), first_mismatch: None };
    for m in 2..=m_max {
        report.checked.push(m);
        let reduced = reduce(&monomial(m, 1, 0), RhoMode::Formal);
        let expected = eta.expansion(m).expect("table covers m");
        if reduced != expected {
            report.first_mismatch = Some(EtaMismatch { m, expected, reduced });
            break;
        }
    }
    report
}

/// `M[r,p]_0 = c[r,p]_0`, `M[r,p]_k = c[r,p]_k - c[r,0]_1 c[r,p]_(k-1)` and
/// `M[r,p]_(r-2p+2) = -c[r,0]_1 c[r,p]_(r-2p+1)`.
pub fn m_table(base: &CoeffTable) -> MTable {
    let r = base.r();
    let c = |p, k| base.get(p, k).expect("complete table");
    let c1 = c(0, 1);
    let mut entries = BTreeMap::new();
    for p in 0..=max_p(r) {
        let top = max_k(r, p).unwrap();
        entries.insert((p, 0), c(p, 0).clone());
        for k in 1..=top {
            entries.insert((p, k), c(p, k) - &(c1 * c(p, k - 1)));
        }
        entries.insert((p, top + 1), -&(c1 * c(p, top)));
    }
    MTable { r, entries }
}

type Val = Result<LaurentScalar, CoeffError>;

fn signed(e: usize, x: LaurentScalar) -> LaurentScalar {
    if e.is_multiple_of(2) {
        x
    } else {
        -x
    }
}

/// Lookups for one step `r -> r + 1`.
struct Step<'a> {
    c: &'a CoeffTable,
    m: &'a MTable,
    eta: &'a EtaTable,
    /// `c[r+1,0]_1`
    c1: LaurentScalar,
}

impl Step<'_> {
    fn c(&self, p: usize, k: usize) -> Result<LaurentScalar, CoeffError> {
        self.c.try_get(p, k).cloned()
    }

    fn m(&self, p: usize, k: usize) -> Result<LaurentScalar, CoeffError> {
        self.m.get(p, k).cloned()
    }

    /// `eta[m,p,1]`
    fn e1(&self, m: usize, p: usize) -> Result<LaurentScalar, CoeffError> {
        self.eta.get(m, p, 1).cloned()
    }

    /// `M[p]_k eta[m,pe,1]`
    fn me(&self, p: usize, k: usize, m: usize, pe: usize) -> Result<LaurentScalar, CoeffError> {
        Ok(&self.m(p, k)? * &self.e1(m, pe)?)
    }

    /// `c1 c[p]_k eta[m,pe,1]`
    fn ce(&self, p: usize, k: usize, m: usize, pe: usize) -> Result<LaurentScalar, CoeffError> {
        Ok(&(&self.c1 * &self.c(p, k)?) * &self.e1(m, pe)?)
    }

    /// `sum_{p=0}^{top} (-1)^(p+h) M[p]_(2(h-p))`
    fn alternating_m(&self, h: usize, top: usize) -> Result<LaurentScalar, CoeffError> {
        (0..=top).map(|p| Val::Ok(signed(p + h, self.m(p, 2 * (h - p))?))).sum()
    }

    /// `c[l]_(2h-2l+1)` for `l >= 1`.
    fn odd_entry(&self, h: usize, l: usize) -> Result<LaurentScalar, CoeffError> {
        let a: LaurentScalar =
            (0..=l).map(|p| Val::Ok(signed(p + l, self.me(p, 2 * (h - p) + 1, 2 * (h - p) + 1, l - p)?))).sum::<Val>()?;
        let b: LaurentScalar =
            (0..=l).map(|p| Val::Ok(signed(p + l, self.ce(p, 2 * (h - p), 2 * (h - p), l - p)?))).sum::<Val>()?;
        Ok(&a + &b)
    }

    /// `c[l]_(2h-2l)` for `l >= 1`, `h >= 3`.
    fn even_entry(&self, h: usize, l: usize) -> Result<LaurentScalar, CoeffError> {
        let a: LaurentScalar =
            (0..=l).map(|p| Val::Ok(signed(p + l, self.me(p, 2 * (h - p), 2 * (h - p), l - p)?))).sum::<Val>()?;
        let b: LaurentScalar = (0..=l.min(h - 2))
            .map(|p| Val::Ok(signed(p + l, self.ce(p, 2 * (h - p) - 1, 2 * (h - p) - 1, l - p)?)))
            .sum::<Val>()?;
        Ok(&a + &b)
    }

    /// `c[h]_1` for `h >= 2`.
    fn first_entry(&self, h: usize) -> Result<LaurentScalar, CoeffError> {
        let a: LaurentScalar = (0..h)
            .map(|p| Val::Ok(signed(p + h, self.me(p, 2 * (h - p) + 1, 2 * (h - p) + 1, h - p)?)))
            .sum::<Val>()?;
        let b: LaurentScalar = (0..=h).map(|p| Val::Ok(signed(p + h, self.c(p, 2 * (h - p))?))).sum::<Val>()?;
        Ok(&a + &(&self.c1 * &b))
    }

    /// `c[1]_1 = -M[0]_3 eta[3,1,1] + c1 (c[1]_0 - c[0]_2)`
    fn c11(&self) -> Result<LaurentScalar, CoeffError> {
        let inner = &self.c(1, 0)? - &self.c(0, 2)?;
        Ok(&(-self.me(0, 3, 3, 1)?) + &(&self.c1 * &inner))
    }

    /// `c[1]_2 = -M[0]_4 eta[4,1,1] + M[1]_2 eta[2,0,1] - c1 c[0]_3 eta[3,1,1]`
    fn c12(&self) -> Result<LaurentScalar, CoeffError> {
        Ok(&(&self.me(1, 2, 2, 0)? - &self.me(0, 4, 4, 1)?) - &self.ce(0, 3, 3, 1)?)
    }
}

/// Table for `r + 1` from the table for `r`.
fn step(prev: &CoeffTable, eta: &EtaTable) -> Result<CoeffTable, CoeffError> {
    let big_r = prev.r() + 1;
    let em = m_table(prev);
    let s = Step { c: prev, m: &em, eta, c1: q_binomial(big_r as i64 + 1, 1)? };
    let mut out: BTreeMap<(usize, usize), LaurentScalar> = BTreeMap::new();
    // Formulas whose target lies outside the rank-(r+1) triangle are skipped.
    let mut set = |p: usize, k: usize, f: &dyn Fn() -> Val| -> Result<(), CoeffError> {
        if is_admissible(big_r, p, k) {
            out.insert((p, k), f()?);
        }
        Ok(())
    };

    set(0, 0, &|| -> Val { Ok(LaurentScalar::one()) })?;
    set(0, 1, &|| -> Val { Ok(s.c1.clone()) })?;
    set(0, 2, &|| -> Val { s.me(0, 2, 2, 0) })?;
    set(1, 0, &|| -> Val { Ok(&s.m(1, 0)? - &s.m(0, 2)?) })?;
    set(1, 1, &|| -> Val { s.c11() })?;
    set(1, 2, &|| -> Val { s.c12() })?;

    // big_r = 2t + 1 (odd) or 2t + 2 (even)
    let odd = big_r % 2 == 1;
    let t = if odd { (big_r - 1) / 2 } else { (big_r - 2) / 2 };
    // Upper limit of h in the p >= 1 families.
    let h_top = if odd { t } else { t + 1 };

    for h in 2..=t + 1 {
        set(0, 2 * h, &|| -> Val { Ok(&s.me(0, 2 * h, 2 * h, 0)? + &s.ce(0, 2 * h - 1, 2 * h - 1, 0)?) })?;
    }
    for h in 1..=h_top {
        set(0, 2 * h + 1, &|| -> Val { Ok(&s.me(0, 2 * h + 1, 2 * h + 1, 0)? + &s.ce(0, 2 * h, 2 * h, 0)?) })?;
    }
    for h in 2..=h_top {
        set(h, 0, &|| -> Val { s.alternating_m(h, h) })?;
        set(h, 1, &|| -> Val { s.first_entry(h) })?;
    }
    if odd {
        // c[t+1]_0 = sum_{p=0}^{t} (-1)^(p+t+1) M[p]_(2(t+1-p))
        set(t + 1, 0, &|| -> Val { s.alternating_m(t + 1, t) })?;
    }
    for h in 2..=h_top {
        for l in 1..h {
            set(l, 2 * h - 2 * l + 1, &|| -> Val { s.odd_entry(h, l) })?;
        }
    }
    for h in 3..=t + 1 {
        for l in 1..h {
            set(l, 2 * h - 2 * l, &|| -> Val { s.even_entry(h, l) })?;
        }
    }

    CoeffTable::new(big_r, Pipeline::Recursive, out)
}

/// Table for rank 1: the defining relation `A_i^2 A_j - [2] A_i A_j A_i + A_j A_i^2 - rho A_j`.
fn seed() -> CoeffTable {
    let mut entries: BTreeMap<_, _> = (0..=2).map(|k| ((0, k), q_binomial(2, k as i64).unwrap())).collect();
    entries.insert((1, 0), LaurentScalar::one());
    CoeffTable::new(1, Pipeline::Recursive, entries).expect("rank-1 table is complete")
}

/// Coefficient table for rank `r`, built bottom-up from rank 1.
pub fn c_recursive(r: usize) -> Result<CoeffTable, CoeffError> {
    if r == 0 {
        return Err(CoeffError::ZeroRank);
    }
    let eta = eta_table(2 * r + 4);
    let mut table = seed();
    while table.r() < r {
        table = step(&table, &eta)?;
    }
    debug_assert!(admissible(r).all(|(p, k)| table.get(p, k).is_some()));
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &LaurentScalar) -> String {
        x.to_string()
    }

    #[test]
    fn eta_initial_values() {
        let e = eta_table(6);
        assert_eq!(e.get(2, 0, 0).unwrap(), &q_int(2));
        assert_eq!(s(e.get(2, 0, 1).unwrap()), "-1");
        assert!(e.get(3, 1, 0).unwrap().is_one());
        let two = q_int(2);
        assert_eq!(e.get(3, 0, 0).unwrap(), &(&(&two * &two) - &LaurentScalar::one()));
        assert_eq!(e.get(7, 4, 0), Err(CoeffError::MissingEta { m: 7, p: 4, j: 0 }));
    }

    #[test]
    fn eta_expansions_match_reduction() {
        let report = verify_eta_against_reducer(3);
        assert!(report.passed(), "{:?}", report.first_mismatch);
        assert_eq!(report.checked, (2..=8).collect::<Vec<_>>());
    }

    #[test]
    fn m_entries_for_rank_two() {
        let base = c_recursive(2).unwrap();
        let m = m_table(&base);
        assert_eq!(m.get(0, 0).unwrap(), base.get(0, 0).unwrap());
        // [3] - [3] * 1
        assert!(m.get(0, 1).unwrap().is_zero());
        // top entry: -c[2,0]_1 c[2,1]_1
        let top = -&(base.get(0, 1).unwrap() * base.get(1, 1).unwrap());
        assert_eq!(m.get(1, 2).unwrap(), &top);
        assert_eq!(m.get(1, 3), Err(CoeffError::OutOfRange { r: 2, p: 1, k: 3 }));
        assert_eq!(m.get(2, 0), Err(CoeffError::OutOfRange { r: 2, p: 2, k: 0 }));
    }

    #[test]
    fn m_entries_for_odd_rank_top_row() {
        // M[2t+1, t+1]_1 = -c[2t+1,t+1]_0 c[2t+1,0]_1 with t = 1
        let base = c_recursive(3).unwrap();
        let m = m_table(&base);
        assert_eq!(m.get(2, 1).unwrap(), &(-&(base.get(2, 0).unwrap() * base.get(0, 1).unwrap())));
    }

    #[test]
    fn rank_two_values() {
        let t = c_recursive(2).unwrap();
        assert_eq!(s(t.get(1, 0).unwrap()), "q^2 + 2 + q^-2");
        assert_eq!(s(t.get(1, 1).unwrap()), "q^2 + 2 + q^-2");
    }

    #[test]
    fn rank_three_and_five_values() {
        let t = c_recursive(3).unwrap();
        assert_eq!(t.get(2, 0).unwrap(), &q_int(3).pow(2));
        let t = c_recursive(5).unwrap();
        let x = &q_int(3) * &q_int(5);
        assert_eq!(t.get(3, 0).unwrap(), &(&x * &x));
    }

    #[test]
    fn zero_rank_rejected() {
        assert_eq!(c_recursive(0).unwrap_err(), CoeffError::ZeroRank);
    }
}
