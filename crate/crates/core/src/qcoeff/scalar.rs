use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::laurent::LaurentPoly;
use super::QError;

/// Exact rational function of `q` with integer coefficients.
///
/// The representation is canonical: the numerator and denominator are coprime
/// in `Q[q]`, their integer contents are coprime, and the denominator has
/// lowest exponent 0 and a positive leading coefficient. Equal values are
/// therefore structurally equal, and `Eq`/`Hash` are derived.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentScalar {
    num: LaurentPoly,
    den: LaurentPoly,
}

/// Result of [`exact_div`]: the canonical quotient and whether it is a
/// Laurent polynomial (denominator 1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    pub value: LaurentScalar,
    pub is_polynomial: bool,
}

impl Default for LaurentScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl LaurentScalar {
    pub fn zero() -> Self {
        Self { num: LaurentPoly::zero(), den: LaurentPoly::one() }
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    /// `q^exp`
    pub fn q_pow(exp: i64) -> Self {
        Self::from_poly(LaurentPoly::q_pow(exp))
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_poly(LaurentPoly::constant(c.into()))
    }

    pub fn from_poly(num: LaurentPoly) -> Self {
        Self { num, den: LaurentPoly::one() }
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Self::from_fraction(
            LaurentPoly::constant(r.numer().clone()),
            LaurentPoly::constant(r.denom().clone()),
        )
        .expect("rational denominators are nonzero")
    }

    /// Canonical form of `num / den`.
    pub fn from_fraction(num: LaurentPoly, den: LaurentPoly) -> Result<Self, QError> {
        if den.is_zero() {
            return Err(QError::DivisionByZero);
        }
        Ok(Self::canonicalize(num, den))
    }

    fn canonicalize(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let shift = den.low_exp().unwrap();
        let (mut num, mut den) = (num.shift(-shift), den.shift(-shift));
        if den.is_one() {
            return Self { num, den };
        }
        if den.term_count() > 1 {
            let g = num.gcd_primitive(&den);
            if !g.is_one() {
                num = num.div_exact(&g).expect("gcd divides numerator");
                den = den.div_exact(&g).expect("gcd divides denominator");
            }
        }
        let c = num.content().gcd(&den.content());
        if !c.is_one() {
            num = num.div_scalar_exact(&c);
            den = den.div_scalar_exact(&c);
        }
        if den.leading_coeff().is_some_and(Signed::is_negative) {
            num = -num;
            den = -den;
        }
        Self { num, den }
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the denominator is 1.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_polynomial(&self) -> Option<&LaurentPoly> {
        self.is_polynomial().then_some(&self.num)
    }

    /// Image under `q -> q^-1`.
    pub fn bar(&self) -> Self {
        Self::canonicalize(self.num.bar(), self.den.bar())
    }

    pub fn is_bar_invariant(&self) -> bool {
        self.bar() == *self
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self { num: self.num.shift(k), den: self.den.clone() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, q: &BigRational) -> Result<BigRational, QError> {
        if q.is_zero() {
            return Err(QError::Pole);
        }
        let d = self.den.eval(q);
        if d.is_zero() {
            return Err(QError::Pole);
        }
        Ok(self.num.eval(q) / d)
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, QError> {
        exact_div(self, rhs).map(|q| q.value)
    }
}

/// Exact quotient `a / b` in canonical form.
pub fn exact_div(a: &LaurentScalar, b: &LaurentScalar) -> Result<Quotient, QError> {
    if b.is_zero() {
        return Err(QError::DivisionByZero);
    }
    if a.is_polynomial() && b.is_polynomial() {
        if let Some(quot) = a.num.div_exact(&b.num) {
            return Ok(Quotient { value: LaurentScalar::from_poly(quot), is_polynomial: true });
        }
    }
    let value = LaurentScalar::canonicalize(&a.num * &b.den, &a.den * &b.num);
    let is_polynomial = value.is_polynomial();
    Ok(Quotient { value, is_polynomial })
}

impl From<i64> for LaurentScalar {
    fn from(c: i64) -> Self {
        Self::from_int(c)
    }
}

impl From<LaurentPoly> for LaurentScalar {
    fn from(p: LaurentPoly) -> Self {
        Self::from_poly(p)
    }
}

impl Add for &LaurentScalar {
    type Output = LaurentScalar;

    fn add(self, rhs: &LaurentScalar) -> LaurentScalar {
        if self.den == rhs.den {
            let num = &self.num + &rhs.num;
            if self.den.is_one() {
                return LaurentScalar { num, den: self.den.clone() };
            }
            return LaurentScalar::canonicalize(num, self.den.clone());
        }
        LaurentScalar::canonicalize(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &LaurentScalar {
    type Output = LaurentScalar;

    fn sub(self, rhs: &LaurentScalar) -> LaurentScalar {
        self + &(-rhs)
    }
}

impl Neg for &LaurentScalar {
    type Output = LaurentScalar;

    fn neg(self) -> LaurentScalar {
        LaurentScalar { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for LaurentScalar {
    type Output = LaurentScalar;

    fn neg(self) -> LaurentScalar {
        LaurentScalar { num: -self.num, den: self.den }
    }
}

impl Mul for &LaurentScalar {
    type Output = LaurentScalar;

    fn mul(self, rhs: &LaurentScalar) -> LaurentScalar {
        if self.is_zero() || rhs.is_zero() {
            return LaurentScalar::zero();
        }
        if self.is_polynomial() && rhs.is_polynomial() {
            return LaurentScalar::from_poly(&self.num * &rhs.num);
        }
        LaurentScalar::canonicalize(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for LaurentScalar {
            type Output = LaurentScalar;
            fn $method(self, rhs: LaurentScalar) -> LaurentScalar {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&LaurentScalar> for LaurentScalar {
            type Output = LaurentScalar;
            fn $method(self, rhs: &LaurentScalar) -> LaurentScalar {
                (&self).$method(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::iter::Sum for LaurentScalar {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, x| &acc + &x)
    }
}

impl std::iter::Product for LaurentScalar {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::one(), |acc, x| &acc * &x)
    }
}

impl fmt::Display for LaurentScalar {
    /// `q^4 + 2 + q^-4` for Laurent polynomials, `(<num>)/(<den>)` otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for LaurentScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for LaurentScalar {
    type Err = QError;

    /// Parses the canonical text form (and any sum of `c`, `cq`, `cq^e` terms).
    fn from_str(s: &str) -> Result<Self, QError> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix('(') {
            let (num, den) = rest
                .split_once(")/(")
                .ok_or_else(|| QError::Parse(s.to_string()))?;
            let den = den.strip_suffix(')').ok_or_else(|| QError::Parse(s.to_string()))?;
            return Self::from_fraction(parse_poly(num)?, parse_poly(den)?);
        }
        parse_poly(s).map(Self::from_poly)
    }
}

fn parse_poly(s: &str) -> Result<LaurentPoly, QError> {
    let err = || QError::Parse(s.to_string());
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(err());
    }
    let mut terms = Vec::new();
    let bytes = compact.as_bytes();
    let mut start = 0;
    for i in 1..=bytes.len() {
        let at_split = i == bytes.len() || ((bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^');
        if at_split {
            terms.push(parse_term(&compact[start..i]).ok_or_else(err)?);
            start = i;
        }
    }
    Ok(LaurentPoly::from_terms(terms))
}

fn parse_term(t: &str) -> Option<(i64, BigInt)> {
    let (sign, body) = match t.as_bytes().first()? {
        b'-' => (-1, &t[1..]),
        b'+' => (1, &t[1..]),
        _ => (1, t),
    };
    if body.is_empty() {
        return None;
    }
    let (coef, exp) = match body.find('q') {
        None => (body, 0),
        Some(pos) => {
            let exp = match &body[pos + 1..] {
                "" => 1,
                e => e.strip_prefix('^')?.parse().ok()?,
            };
            (&body[..pos], exp)
        }
    };
    let coef: BigInt = if coef.is_empty() { BigInt::one() } else { coef.parse().ok()? };
    Some((exp, coef * sign))
}
