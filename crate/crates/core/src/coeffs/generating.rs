//! The generating polynomial
//!
//! ```text
//! p_{2t+1}(x, y) = prod_{l=1}^{t+1} (x^2 - ([4l-2]/[2l-1]) x y + y^2 - rho [2l-1]^2)
//! p_{2t+2}(x, y) = (x - y) prod_{l=1}^{t+1} (x^2 - ([4l]/[2l]) x y + y^2 - rho [2l]^2)
//! ```
//!
//! whose expansion `sum (-1)^(k+p) rho^p c[r,p]_k x^(r-2p+1-k) y^k` carries
//! the whole coefficient table.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};

use super::{is_admissible, max_k, CoeffError, CoeffTable, Pipeline};
use crate::qcoeff::{exact_div, q_int, LaurentScalar, RhoScalar};

/// Polynomial in commuting `x`, `y` with [`RhoScalar`] coefficients, keyed by
/// `(x-degree, y-degree)`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct BivariatePolynomial {
    terms: BTreeMap<(usize, usize), RhoScalar>,
}

impl BivariatePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::term(0, 0, RhoScalar::one())
    }

    pub fn term(x: usize, y: usize, c: RhoScalar) -> Self {
        let mut out = Self::zero();
        out.add_term(x, y, c);
        out
    }

    pub fn add_term(&mut self, x: usize, y: usize, c: RhoScalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((x, y)).or_default();
        slot.add_assign_ref(&c);
        if slot.is_zero() {
            self.terms.remove(&(x, y));
        }
    }

    pub fn coeff(&self, x: usize, y: usize) -> RhoScalar {
        self.terms.get(&(x, y)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((usize, usize), &RhoScalar)> {
        self.terms.iter().map(|(d, c)| (*d, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest `x-degree + y-degree`, `None` for zero.
    pub fn total_degree(&self) -> Option<usize> {
        self.terms.keys().map(|(a, b)| a + b).max()
    }

    /// `p(y, x)`
    pub fn swap(&self) -> Self {
        Self { terms: self.terms.iter().map(|(&(a, b), c)| ((b, a), c.clone())).collect() }
    }

    /// Substitutes `x`, `y` and `rho`.
    pub fn eval(&self, x: &LaurentScalar, y: &LaurentScalar, rho: &LaurentScalar) -> LaurentScalar {
        self.terms
            .iter()
            .map(|(&(a, b), c)| &(&c.eval_rho(rho) * &x.pow(a as u32)) * &y.pow(b as u32))
            .sum()
    }
}

impl Add for &BivariatePolynomial {
    type Output = BivariatePolynomial;

    fn add(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        let mut out = self.clone();
        for (&(a, b), c) in &rhs.terms {
            out.add_term(a, b, c.clone());
        }
        out
    }
}

impl Mul for &BivariatePolynomial {
    type Output = BivariatePolynomial;

    fn mul(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        let mut out = BivariatePolynomial::zero();
        for (&(a, b), c) in &self.terms {
            for (&(d, e), f) in &rhs.terms {
                out.add_term(a + d, b + e, c * f);
            }
        }
        out
    }
}

impl fmt::Display for BivariatePolynomial {
    /// `[c] x^a y^b + ...` in descending x-degree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, (&(a, b), c)) in self.terms.iter().rev().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "[{c}] x^{a} y^{b}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `x^2 - (q^s + q^-s) x y + y^2 - rho [s]^2`, the middle coefficient formed
/// as the exact quotient `[2s]/[s]`.
pub(crate) fn quadratic_factor(s: u32) -> Result<BivariatePolynomial, CoeffError> {
    let mid = exact_div(&q_int(2 * s), &q_int(s))?;
    debug_assert!(mid.is_polynomial);
    let mut f = BivariatePolynomial::zero();
    f.add_term(2, 0, RhoScalar::one());
    f.add_term(1, 1, RhoScalar::constant(-mid.value));
    f.add_term(0, 2, RhoScalar::one());
    f.add_term(0, 0, RhoScalar::monomial(-q_int(s).pow(2), 1));
    Ok(f)
}

/// The values `s` of the quadratic factors of `p_r`.
pub(crate) fn factor_indices(r: usize) -> Vec<u32> {
    let t = if r % 2 == 1 { (r - 1) / 2 } else { (r - 2) / 2 };
    (1..=t as u32 + 1).map(|l| if r % 2 == 1 { 2 * l - 1 } else { 2 * l }).collect()
}

/// Fully expanded `p_r(x, y)`.
pub fn expand_generating_polynomial(r: usize) -> Result<BivariatePolynomial, CoeffError> {
    if r == 0 {
        return Err(CoeffError::ZeroRank);
    }
    let mut p = if r % 2 == 1 {
        BivariatePolynomial::one()
    } else {
        let mut lin = BivariatePolynomial::term(1, 0, RhoScalar::one());
        lin.add_term(0, 1, -&RhoScalar::one());
        lin
    };
    for s in factor_indices(r) {
        p = &p * &quadratic_factor(s)?;
    }
    Ok(p)
}

/// Reads `c[r,p]_k = (-1)^(k+p) [rho^p x^(r-2p+1-k) y^k] p_r`.
pub fn c_from_polynomial(r: usize) -> Result<CoeffTable, CoeffError> {
    let poly = expand_generating_polynomial(r)?;
    let mut entries: BTreeMap<(usize, usize), LaurentScalar> =
        super::admissible(r).map(|pk| (pk, LaurentScalar::zero())).collect();
    for ((x, y), c) in poly.terms() {
        for (p, v) in c.coeffs().iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            if max_k(r, p) != Some(x + y) || !is_admissible(r, p, y) {
                return Err(CoeffError::Shape { x, y, rho: p });
            }
            let v = if (y + p) % 2 == 0 { v.clone() } else { -v };
            entries.insert((p, y), v);
        }
    }
    CoeffTable::new(r, Pipeline::Polynomial, entries)
}
