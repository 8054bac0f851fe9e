//! Explicit formula
//!
//! ```text
//! c[r,p]_k = sum_l binom(N - k + a l - p, floor(a l / 2))
//!            * sum over disjoint P, Q subsets of S, |P| = p, |Q| = k - a l,
//!              prod_{s in P} [s]^2 * prod_{s in Q} [2s]/[s]
//! ```
//!
//! with `N = floor((r+1)/2)`, `S = {r, r-2, ...}` down to 1 or 2, and
//! `a = 2` for odd `r`, `a = 1` for even `r`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::binomial;

use super::{admissible, CoeffError, CoeffTable, Pipeline};
use crate::qcoeff::{exact_div, q_int, LaurentScalar, LaurentPoly};

/// Sum over disjoint ordered `P, Q` of the given sizes, by assigning every
/// element of `S` to `P`, `Q` or neither.
fn subset_sum(squares: &[LaurentScalar], ratios: &[LaurentScalar], p: usize, m: usize) -> LaurentScalar {
    fn go(
        i: usize,
        p: usize,
        m: usize,
        acc: &LaurentScalar,
        squares: &[LaurentScalar],
        ratios: &[LaurentScalar],
        out: &mut LaurentScalar,
    ) {
        if p == 0 && m == 0 {
            *out = &*out + acc;
            return;
        }
        if squares.len() - i < p + m {
            return;
        }
        if p > 0 {
            go(i + 1, p - 1, m, &(acc * &squares[i]), squares, ratios, out);
        }
        if m > 0 {
            go(i + 1, p, m - 1, &(acc * &ratios[i]), squares, ratios, out);
        }
        go(i + 1, p, m, acc, squares, ratios, out);
    }
    let mut out = LaurentScalar::zero();
    go(0, p, m, &LaurentScalar::one(), squares, ratios, &mut out);
    out
}

/// Coefficient table for rank `r` from the explicit formula.
pub fn c_closed(r: usize) -> Result<CoeffTable, CoeffError> {
    if r == 0 {
        return Err(CoeffError::ZeroRank);
    }
    let n = r.div_ceil(2);
    let alpha = if r % 2 == 1 { 2 } else { 1 };
    let first = r - 2 * ((r - 1) / 2);
    let s_values: Vec<u32> = (first..=r).step_by(2).map(|s| s as u32).collect();
    debug_assert_eq!(s_values.len(), n);
    let squares: Vec<LaurentScalar> = s_values.iter().map(|&s| q_int(s).pow(2)).collect();
    let ratios = s_values
        .iter()
        .map(|&s| exact_div(&q_int(2 * s), &q_int(s)).map(|q| q.value))
        .collect::<Result<Vec<_>, _>>()?;

    let mut entries = BTreeMap::new();
    for (p, k) in admissible(r) {
        let mut value = LaurentScalar::zero();
        for l in 0..=k / alpha {
            let m = k - alpha * l;
            // binom(N - p - m, floor(a l / 2)), zero when out of range
            let Some(top) = n.checked_sub(p + m) else { continue };
            let bottom = alpha * l / 2;
            if bottom > top {
                continue;
            }
            let b: BigInt = binomial(BigInt::from(top), BigInt::from(bottom));
            let sum = subset_sum(&squares, &ratios, p, m);
            value = &value + &(&sum * &LaurentScalar::from_poly(LaurentPoly::constant(b)));
        }
        entries.insert((p, k), value);
    }
    CoeffTable::new(r, Pipeline::Closed, entries)
}
