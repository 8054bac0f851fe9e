//! Coefficients as the unique solution of the linear system obtained by
//! reducing every monomial of the rank-`r` relation and requiring each normal
//! word (at each power of `rho`) to cancel.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::linsys::{solve_unique, LinsysError, Row};
use super::{admissible, CoeffError, CoeffTable, Pipeline};
use crate::freealg::{monomial, NCPolynomial, Word};
use crate::qcoeff::{LaurentPoly, LaurentScalar};
use crate::reducer::{reduce, RhoMode};

const SEED: u64 = 0x5eed;

/// `(-1)^(k+p) rho^p A_i^(r-2p+1-k) A_j^r A_i^k` in normal form, for every
/// admissible `(p, k)`.
pub(crate) fn reduced_monomials(r: usize, mode: RhoMode) -> Vec<((usize, usize), NCPolynomial)> {
    let pk: Vec<(usize, usize)> = admissible(r).filter(|&(p, _)| mode == RhoMode::Formal || p == 0).collect();
    pk.into_par_iter()
        .map(|(p, k)| {
            let m = reduce(&monomial(r + 1 - 2 * p - k, r, k), mode);
            let sign = if (k + p) % 2 == 0 { 1 } else { -1 };
            let m = m.map_coeffs(|c| c.mul_rho_pow(p).scale(&LaurentScalar::from_int(sign)));
            ((p, k), m)
        })
        .collect()
}

fn render(w: &Word, e: usize) -> String {
    match e {
        0 => w.to_string(),
        1 => format!("rho {w}"),
        _ => format!("rho^{e} {w}"),
    }
}

fn poly(c: &LaurentScalar) -> LaurentPoly {
    c.as_polynomial().expect("reduction only produces Laurent polynomials").clone()
}

/// Coefficient table for rank `r` from the linear system, normalized by
/// `c[r,0]_0 = 1`.
pub fn c_solve(r: usize) -> Result<CoeffTable, CoeffError> {
    if r == 0 {
        return Err(CoeffError::ZeroRank);
    }
    let monomials = reduced_monomials(r, RhoMode::Formal);
    let unknowns: Vec<(usize, usize)> = admissible(r).filter(|&pk| pk != (0, 0)).collect();
    let column: BTreeMap<(usize, usize), usize> = unknowns.iter().enumerate().map(|(i, pk)| (*pk, i)).collect();
    let n = unknowns.len();

    // (word, rho power) -> (coefficients, constant term)
    let mut eqs: BTreeMap<(Word, usize), (Vec<LaurentPoly>, LaurentPoly)> = BTreeMap::new();
    for (pk, m) in &monomials {
        for (w, c) in m.terms() {
            for (e, v) in c.coeffs().iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let slot = eqs.entry((*w, e)).or_insert_with(|| (vec![LaurentPoly::zero(); n], LaurentPoly::zero()));
                match column.get(pk) {
                    Some(&i) => slot.0[i] = &slot.0[i] + &poly(v),
                    // c[r,0]_0 = 1 moves to the right-hand side
                    None => slot.1 = &slot.1 - &poly(v),
                }
            }
        }
    }
    let (keys, rows): (Vec<(Word, usize)>, Vec<Row>) = eqs
        .into_iter()
        .filter(|(_, (cs, rhs))| !rhs.is_zero() || cs.iter().any(|c| !c.is_zero()))
        .map(|(key, (coeffs, rhs))| (key, Row { coeffs, rhs }))
        .unzip();

    let x = solve_unique(&rows, n, SEED).map_err(|e| match e {
        LinsysError::Inconsistent { row } => {
            let (w, e) = keys[row];
            CoeffError::Inconsistent { r, residual: render(&w, e) }
        }
        LinsysError::Underdetermined { rank } => CoeffError::Underdetermined { r, rank, unknowns: n },
    })?;

    let mut entries: BTreeMap<(usize, usize), LaurentScalar> = unknowns.into_iter().zip(x).collect();
    entries.insert((0, 0), LaurentScalar::one());
    CoeffTable::new(r, Pipeline::Solve, entries)
}
