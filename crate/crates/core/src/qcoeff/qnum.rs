//! Symmetric q-integers, q-factorials and q-binomials.

use super::{exact_div, LaurentPoly, LaurentScalar, QError};

/// `[n]_q = q^(n-1) + q^(n-3) + ... + q^(1-n)`; `[0]_q = 0`.
pub fn q_int(n: u32) -> LaurentScalar {
    let n = i64::from(n);
    LaurentScalar::from_poly(LaurentPoly::from_terms((0..n).map(|i| (n - 1 - 2 * i, 1))))
}

/// `[n]_q! = [1]_q [2]_q ... [n]_q`, with `[0]_q! = 1`.
pub fn q_factorial(n: u32) -> LaurentScalar {
    (1..=n).map(q_int).product()
}

/// `[n]_q! / ([m]_q! [n-m]_q!)`, always a Laurent polynomial.
pub fn q_binomial(n: i64, m: i64) -> Result<LaurentScalar, QError> {
    if m < 0 || m > n {
        return Err(QError::InvalidBinomial { n, m });
    }
    let (n, m) = (n as u32, m as u32);
    let den = &q_factorial(m) * &q_factorial(n - m);
    let quot = exact_div(&q_factorial(n), &den)?;
    debug_assert!(quot.is_polynomial);
    Ok(quot.value)
}
