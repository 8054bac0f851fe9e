//! Exact solution of overdetermined linear systems `A x = b` with entries in
//! `Z[q, q^-1]`.
//!
//! Independent rows are picked by elimination modulo a prime at a random
//! point `q`; a full rank there certifies full rank over `Q(q)`. The picked
//! square system is solved by fraction-free elimination (rows are scaled by
//! the pivot instead of divided by it, then stripped of their common factor),
//! and every original row is checked against the solution.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use num_traits::One;

use crate::qcoeff::{addmod, mulmod, powmod, LaurentPoly, LaurentScalar};

const PRIME: u64 = (1 << 61) - 1;
const ATTEMPTS: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum LinsysError {
    /// The row with this index is violated by the unique candidate solution.
    Inconsistent { row: usize },
    Underdetermined { rank: usize },
}

/// One equation: `coeffs . x = rhs`.
#[derive(Debug, Clone)]
pub(crate) struct Row {
    pub coeffs: Vec<LaurentPoly>,
    pub rhs: LaurentPoly,
}

/// Greedy choice of independent rows modulo `PRIME` at `q`.
fn pivot_rows_mod(rows: &[Row], n: usize, q: u64) -> Vec<usize> {
    let q_inv = powmod(q, PRIME - 2, PRIME);
    // Reduced basis rows, each with its pivot column.
    let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();
    let mut chosen = Vec::new();
    for (idx, row) in rows.iter().enumerate() {
        let mut v: Vec<u64> = row.coeffs.iter().map(|c| c.eval_mod(q, q_inv, PRIME)).collect();
        for (col, b) in &basis {
            let f = v[*col];
            if f != 0 {
                for (x, y) in v.iter_mut().zip(b) {
                    *x = addmod(*x, PRIME - mulmod(f, *y, PRIME), PRIME);
                }
            }
        }
        let Some(col) = v.iter().position(|&x| x != 0) else { continue };
        let inv = powmod(v[col], PRIME - 2, PRIME);
        for x in v.iter_mut() {
            *x = mulmod(*x, inv, PRIME);
        }
        basis.push((col, v));
        chosen.push(idx);
        if chosen.len() == n {
            break;
        }
    }
    chosen
}

/// Divides a row by the gcd of its entries (polynomial part and content).
fn strip_common_factor(row: &mut [LaurentPoly]) {
    let nonzero: Vec<&LaurentPoly> = row.iter().filter(|c| !c.is_zero()).collect();
    let Some(first) = nonzero.first() else { return };
    let mut g = (*first).gcd_primitive(first);
    let mut content = first.content();
    for c in &nonzero[1..] {
        if !g.is_one() {
            g = g.gcd_primitive(c);
        }
        if !content.is_one() {
            content = num_integer::Integer::gcd(&content, &c.content());
        }
        if g.is_one() && content.is_one() {
            return;
        }
    }
    for c in row.iter_mut() {
        if c.is_zero() {
            continue;
        }
        if !g.is_one() {
            *c = c.div_exact(&g).expect("gcd divides every entry");
        }
        if !content.is_one() {
            *c = c.div_scalar_exact(&content);
        }
    }
}

/// Solves the square system given by `rows` (augmented, `n + 1` columns).
fn solve_square(mut m: Vec<Vec<LaurentPoly>>, n: usize) -> Option<Vec<LaurentScalar>> {
    for col in 0..n {
        let pivot = (col..n)
            .filter(|&i| !m[i][col].is_zero())
            .min_by_key(|&i| m[i][col].term_count())?;
        m.swap(col, pivot);
        let (head, tail) = m.split_at_mut(col + 1);
        let prow = &head[col];
        for row in tail.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for j in col..=n {
                row[j] = &(&prow[col] * &row[j]) - &(&f * &prow[j]);
            }
            strip_common_factor(row);
        }
    }
    let mut x = vec![LaurentScalar::zero(); n];
    for i in (0..n).rev() {
        let mut acc = LaurentScalar::from_poly(m[i][n].clone());
        for j in i + 1..n {
            if !m[i][j].is_zero() {
                acc = &acc - &(&LaurentScalar::from_poly(m[i][j].clone()) * &x[j]);
            }
        }
        x[i] = acc.checked_div(&LaurentScalar::from_poly(m[i][i].clone())).ok()?;
    }
    Some(x)
}

fn residual(row: &Row, x: &[LaurentScalar]) -> LaurentScalar {
    let lhs: LaurentScalar = row
        .coeffs
        .iter()
        .zip(x)
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, v)| &LaurentScalar::from_poly(c.clone()) * v)
        .sum();
    &lhs - &LaurentScalar::from_poly(row.rhs.clone())
}

/// The unique solution of `rows` in `Q(q)^n`.
pub(crate) fn solve_unique(rows: &[Row], n: usize, seed: u64) -> Result<Vec<LaurentScalar>, LinsysError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Vec<usize> = Vec::new();
    for _ in 0..ATTEMPTS {
        let q = rng.gen_range(2..PRIME - 1);
        let chosen = pivot_rows_mod(rows, n, q);
        if chosen.len() > best.len() {
            best = chosen;
        }
        if best.len() == n {
            break;
        }
    }
    if best.len() < n {
        return Err(LinsysError::Underdetermined { rank: best.len() });
    }
    let square: Vec<Vec<LaurentPoly>> = best
        .iter()
        .map(|&i| {
            let mut r = rows[i].coeffs.clone();
            r.push(rows[i].rhs.clone());
            r
        })
        .collect();
    // Full rank modulo a prime implies a nonsingular system over Q(q).
    let x = solve_square(square, n).expect("nonsingular system");
    if let Some(row) = rows.iter().position(|row| !residual(row, &x).is_zero()) {
        return Err(LinsysError::Inconsistent { row });
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(s: &str) -> LaurentPoly {
        s.parse::<LaurentScalar>().unwrap().as_polynomial().unwrap().clone()
    }

    fn row(cs: &[&str], rhs: &str) -> Row {
        Row { coeffs: cs.iter().map(|s| lp(s)).collect(), rhs: lp(rhs) }
    }

    #[test]
    fn solves_rational_system() {
        // (q) x + y = 1 ; x - y = q ; redundant: (q + 1) x = 1 + q
        let rows = vec![row(&["q", "1"], "1"), row(&["1", "-1"], "q"), row(&["q + 1", "0"], "q + 1")];
        let x = solve_unique(&rows, 2, 7).unwrap();
        assert!(x[0].is_one());
        assert_eq!(x[1].to_string(), "-q + 1");
    }

    #[test]
    fn detects_inconsistency_and_rank_loss() {
        let rows = vec![row(&["1", "0"], "1"), row(&["0", "1"], "q"), row(&["1", "1"], "0")];
        assert_eq!(solve_unique(&rows, 2, 1), Err(LinsysError::Inconsistent { row: 2 }));
        let rows = vec![row(&["q", "1"], "1"), row(&["q^2", "q"], "q")];
        assert_eq!(solve_unique(&rows, 2, 1), Err(LinsysError::Underdetermined { rank: 1 }));
    }

    #[test]
    fn non_polynomial_solution() {
        // (q^2 + 1) x = q
        let rows = vec![row(&["q^2 + 1"], "q")];
        let x = solve_unique(&rows, 1, 3).unwrap();
        assert_eq!(x[0].to_string(), "(q)/(q^2 + 1)");
    }
}
