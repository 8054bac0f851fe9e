//! Dense univariate polynomials over the integers, coefficients stored in
//! ascending order. Internal helpers for exact division and gcd.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub(crate) fn trim(p: &mut Vec<BigInt>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

pub(crate) fn content(p: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in p {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

pub(crate) fn primitive_part(p: &[BigInt]) -> Vec<BigInt> {
    let c = content(p);
    if c.is_zero() || c.is_one() {
        return p.to_vec();
    }
    p.iter().map(|x| x / &c).collect()
}

/// Pseudo-remainder of `a` by `b` (`b` nonzero, trimmed).
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] -= &lr * bc;
        }
        trim(&mut r);
    }
    r
}

/// Primitive gcd over Z[q] with positive leading coefficient.
/// Integer content is deliberately not included.
pub(crate) fn gcd_primitive(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() {
        return normalize_sign(primitive_part(b));
    }
    if b.is_empty() {
        return normalize_sign(primitive_part(a));
    }
    let (mut a, mut b) = (primitive_part(a), primitive_part(b));
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        if b.len() == 1 {
            return vec![BigInt::one()];
        }
        let r = pseudo_rem(&a, &b);
        a = b;
        b = primitive_part(&r);
    }
    normalize_sign(a)
}

fn normalize_sign(mut p: Vec<BigInt>) -> Vec<BigInt> {
    if p.last().is_some_and(Signed::is_negative) {
        for c in p.iter_mut() {
            *c = -&*c;
        }
    }
    p
}

/// Exact quotient `a / b` over Z[q], or `None` when `b` does not divide `a`
/// with integral coefficients.
pub(crate) fn div_exact(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    if b.is_empty() {
        return None;
    }
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < b.len() {
        return None;
    }
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    let mut quot = vec![BigInt::zero(); a.len() - db];
    for i in (0..quot.len()).rev() {
        let lead = &r[i + db];
        if lead.is_zero() {
            continue;
        }
        let (qc, rem) = lead.div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        for (j, bc) in b.iter().enumerate() {
            r[i + j] -= &qc * bc;
        }
        quot[i] = qc;
    }
    if r.iter().all(Zero::is_zero) {
        trim(&mut quot);
        Some(quot)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> Vec<BigInt> {
        cs.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn gcd_of_products() {
        // (1 + q)(2 - q) and (1 + q)(3 + q^2)
        let a = p(&[2, 1, -1]);
        let b = p(&[3, 3, 1, 1]);
        assert_eq!(gcd_primitive(&a, &b), p(&[1, 1]));
    }

    #[test]
    fn gcd_coprime_is_one() {
        assert_eq!(gcd_primitive(&p(&[1, 1]), &p(&[-1, 1])), p(&[1]));
    }

    #[test]
    fn exact_division() {
        assert_eq!(div_exact(&p(&[-1, 0, 1]), &p(&[1, 1])), Some(p(&[-1, 1])));
        assert_eq!(div_exact(&p(&[1, 0, 1]), &p(&[1, 1])), None);
        assert_eq!(div_exact(&p(&[1, 1]), &p(&[2, 2])), None);
    }
}
