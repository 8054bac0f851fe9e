//! Free associative algebra on the generators `A_i`, `A_j` of one linked pair,
//! with [`RhoScalar`] coefficients.

mod word;

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub use word::{Letter, Word};
pub(crate) use word::low_mask;

use crate::qcoeff::{LaurentScalar, RhoScalar};

/// Finite linear combination of [`Word`]s. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct NCPolynomial {
    terms: BTreeMap<Word, RhoScalar>,
}

impl NCPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_word(Word::empty())
    }

    pub fn from_word(w: Word) -> Self {
        Self::term(w, RhoScalar::one())
    }

    pub fn term(w: Word, c: RhoScalar) -> Self {
        let mut p = Self::zero();
        p.add_term(w, c);
        p
    }

    /// `A_i`
    pub fn gen_i() -> Self {
        Self::from_word(Word::from_letters(&[Letter::I]))
    }

    /// `A_j`
    pub fn gen_j() -> Self {
        Self::from_word(Word::from_letters(&[Letter::J]))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending word order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &RhoScalar)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Word, RhoScalar> {
        self.terms
    }

    pub fn coeff(&self, w: &Word) -> RhoScalar {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    /// The largest word, if any.
    pub fn max_word(&self) -> Option<Word> {
        self.terms.keys().next_back().copied()
    }

    pub fn add_term(&mut self, w: Word, c: RhoScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                e.get_mut().add_assign_ref(&c);
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &RhoScalar) -> Self {
        let mut out = Self::zero();
        for (w, x) in &self.terms {
            out.add_term(*w, x * c);
        }
        out
    }

    pub fn scale_q(&self, c: &LaurentScalar) -> Self {
        self.scale(&RhoScalar::constant(c.clone()))
    }

    /// Applies `f` to every coefficient, dropping terms that become zero.
    pub fn map_coeffs(&self, f: impl Fn(&RhoScalar) -> RhoScalar) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            out.add_term(*w, f(c));
        }
        out
    }
}

/// Bilinear extension of word concatenation.
pub fn nc_multiply(a: &NCPolynomial, b: &NCPolynomial) -> NCPolynomial {
    let mut out = NCPolynomial::zero();
    for (wa, ca) in &a.terms {
        for (wb, cb) in &b.terms {
            out.add_term(wa.concat(wb), ca * cb);
        }
    }
    out
}

/// `A_i^n_left A_j^r_mid A_i^n_right` with coefficient 1.
pub fn monomial(n_left: usize, r_mid: usize, n_right: usize) -> NCPolynomial {
    let w = Word::i_pow(n_left).concat(&Word::j_pow(r_mid)).concat(&Word::i_pow(n_right));
    NCPolynomial::from_word(w)
}

impl FromIterator<(Word, RhoScalar)> for NCPolynomial {
    fn from_iter<T: IntoIterator<Item = (Word, RhoScalar)>>(iter: T) -> Self {
        let mut p = Self::zero();
        for (w, c) in iter {
            p.add_term(w, c);
        }
        p
    }
}

impl Add for &NCPolynomial {
    type Output = NCPolynomial;

    fn add(self, rhs: &NCPolynomial) -> NCPolynomial {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(*w, c.clone());
        }
        out
    }
}

impl Neg for &NCPolynomial {
    type Output = NCPolynomial;

    fn neg(self) -> NCPolynomial {
        NCPolynomial { terms: self.terms.iter().map(|(w, c)| (*w, -c)).collect() }
    }
}

impl Sub for &NCPolynomial {
    type Output = NCPolynomial;

    fn sub(self, rhs: &NCPolynomial) -> NCPolynomial {
        self + &(-rhs)
    }
}

impl Mul for &NCPolynomial {
    type Output = NCPolynomial;

    fn mul(self, rhs: &NCPolynomial) -> NCPolynomial {
        nc_multiply(self, rhs)
    }
}

impl fmt::Display for NCPolynomial {
    /// Terms from the largest word down: `[q + q^-1] Ai·Aj·Ai + [-1] Aj·Ai·Ai`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, (w, c)) in self.terms.iter().rev().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            if *c == RhoScalar::one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "[{c}] {w}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for NCPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
