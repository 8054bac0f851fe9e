use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::LaurentScalar;

/// Polynomial in the formal scalar `rho` with [`LaurentScalar`] coefficients.
///
/// `coeffs[p]` multiplies `rho^p`; trailing zeros are trimmed, so the zero
/// value has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RhoScalar {
    coeffs: Vec<LaurentScalar>,
}

impl RhoScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(LaurentScalar::one())
    }

    /// The formal scalar `rho`.
    pub fn rho() -> Self {
        Self::monomial(LaurentScalar::one(), 1)
    }

    pub fn constant(c: LaurentScalar) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * rho^p`
    pub fn monomial(c: LaurentScalar, p: usize) -> Self {
        let mut coeffs = vec![LaurentScalar::zero(); p];
        coeffs.push(c);
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(coeffs: Vec<LaurentScalar>) -> Self {
        let mut s = Self { coeffs };
        s.trim();
        s
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(LaurentScalar::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `rho`-degree; `None` stands for the degree of zero (minus infinity).
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `rho^p` (zero past the degree).
    pub fn coeff(&self, p: usize) -> LaurentScalar {
        self.coeffs.get(p).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[LaurentScalar] {
        &self.coeffs
    }

    pub fn scale(&self, c: &LaurentScalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Multiplies by `rho^p`.
    pub fn mul_rho_pow(&self, p: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![LaurentScalar::zero(); p];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    /// Sets `rho = 0`.
    pub fn truncate_rho(&self) -> Self {
        Self::constant(self.coeff(0))
    }

    /// Substitutes a value for `rho`.
    pub fn eval_rho(&self, rho: &LaurentScalar) -> LaurentScalar {
        self.coeffs.iter().rev().fold(LaurentScalar::zero(), |acc, c| &(&acc * rho) + c)
    }

    pub fn add_assign_ref(&mut self, rhs: &RhoScalar) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), LaurentScalar::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a = &*a + b;
        }
        self.trim();
    }
}

impl From<LaurentScalar> for RhoScalar {
    fn from(c: LaurentScalar) -> Self {
        Self::constant(c)
    }
}

impl Add for &RhoScalar {
    type Output = RhoScalar;

    fn add(self, rhs: &RhoScalar) -> RhoScalar {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl Neg for &RhoScalar {
    type Output = RhoScalar;

    fn neg(self) -> RhoScalar {
        RhoScalar { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Sub for &RhoScalar {
    type Output = RhoScalar;

    fn sub(self, rhs: &RhoScalar) -> RhoScalar {
        self + &(-rhs)
    }
}

impl Mul for &RhoScalar {
    type Output = RhoScalar;

    fn mul(self, rhs: &RhoScalar) -> RhoScalar {
        if self.is_zero() || rhs.is_zero() {
            return RhoScalar::zero();
        }
        let mut coeffs = vec![LaurentScalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        RhoScalar::from_coeffs(coeffs)
    }
}

impl fmt::Display for RhoScalar {
    /// A pure `q`-coefficient renders as its [`LaurentScalar`] text; otherwise
    /// `(<c0>) + (<c1>)rho + (<c2>)rho^2`, skipping zero coefficients.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.coeffs.len() {
            0 => return f.write_str("0"),
            1 => return write!(f, "{}", self.coeffs[0]),
            _ => {}
        }
        let mut first = true;
        for (p, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match p {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})rho")?,
                _ => write!(f, "({c})rho^{p}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RhoScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
