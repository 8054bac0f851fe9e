//! The 3-dimensional evaluation module of `U_q(a_2^(1))` and the image
//!
//! ```text
//! A_i = c_i e_i q^(h_i/2) + cbar_i f_i q^(h_i/2) + w_i q^(h_i)
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{Mat3, RepError};

/// Weights of the basis vectors under `h_0, h_1, h_2`.
const H: [[i64; 3]; 3] = [[-1, 0, 1], [1, -1, 0], [0, 1, -1]];

fn cartan(i: usize, j: usize) -> i64 {
    if i == j {
        2
    } else {
        -1
    }
}

fn rpow(x: &BigRational, e: i64) -> BigRational {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        num_traits::pow(x.recip(), e.unsigned_abs() as usize)
    }
}

/// Exact square root of a rational, if it is a perfect square.
pub fn rational_sqrt(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let (n, d) = (x.numer(), x.denom());
    let (sn, sd) = (n.sqrt(), d.sqrt());
    (&sn * &sn == *n && &sd * &sd == *d).then(|| BigRational::new(sn, sd))
}

/// Parameters of the evaluation representation; `q = s^2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepParams {
    pub s: BigRational,
    pub z: BigRational,
    pub c: [BigRational; 3],
    pub cbar: [BigRational; 3],
    pub w: [BigRational; 3],
}

impl RepParams {
    /// Parameters on the `w = 0` branch.
    pub fn new(s: BigRational, z: BigRational, c: [BigRational; 3], cbar: [BigRational; 3]) -> Result<Self, RepError> {
        Self::with_w(s, z, c, cbar, Default::default())
    }

    pub fn with_w(
        s: BigRational,
        z: BigRational,
        c: [BigRational; 3],
        cbar: [BigRational; 3],
        w: [BigRational; 3],
    ) -> Result<Self, RepError> {
        let p = Self { s, z, c, cbar, w };
        p.validate()?;
        Ok(p)
    }

    /// Chooses `w_j = +sqrt(-c_j cbar_j / (q + 1/q - 2))` for every node;
    /// `None` if some radicand is not a rational square.
    pub fn with_w_from_sqrt(s: BigRational, z: BigRational, c: [BigRational; 3], cbar: [BigRational; 3]) -> Result<Option<Self>, RepError> {
        check_s(&s)?;
        let d = qq_minus_two(&(&s * &s));
        let mut w: [BigRational; 3] = Default::default();
        for j in 0..3 {
            match rational_sqrt(&(-(&c[j] * &cbar[j]) / &d)) {
                Some(x) => w[j] = x,
                None => return Ok(None),
            }
        }
        Self::with_w(s, z, c, cbar, w).map(Some)
    }

    pub fn q(&self) -> BigRational {
        &self.s * &self.s
    }

    pub fn validate(&self) -> Result<(), RepError> {
        check_s(&self.s)?;
        if self.z.is_zero() {
            return Err(RepError::InvalidParams("z = 0".into()));
        }
        let d = qq_minus_two(&self.q());
        for i in 0..3 {
            for j in (0..3).filter(|&j| j != i) {
                let v = &self.w[i] * &(&self.w[j] * &self.w[j] + &self.c[j] * &self.cbar[j] / &d);
                if !v.is_zero() {
                    return Err(RepError::InvalidParams(format!("w constraint fails for nodes ({i}, {j})")));
                }
            }
        }
        Ok(())
    }

    pub fn to_document(&self) -> ParamsDocument {
        let s = |a: &[BigRational; 3]| a.iter().map(|x| x.to_string()).collect();
        ParamsDocument { s: self.s.to_string(), z: self.z.to_string(), c: s(&self.c), cbar: s(&self.cbar), w: s(&self.w) }
    }
}

fn check_s(s: &BigRational) -> Result<(), RepError> {
    if s.is_zero() || s.abs().is_one() {
        return Err(RepError::InvalidParams(format!("s = {s}")));
    }
    Ok(())
}

/// `q + q^-1 - 2`.
fn qq_minus_two(q: &BigRational) -> BigRational {
    q + &q.recip() - BigRational::from_integer(BigInt::from(2))
}

/// Parameter point as exact rational strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsDocument {
    pub s: String,
    pub z: String,
    pub c: Vec<String>,
    pub cbar: Vec<String>,
    pub w: Vec<String>,
}

/// Chevalley generators and the images `A_0, A_1, A_2`.
#[derive(Debug, Clone)]
pub struct EvaluationRep {
    pub params: RepParams,
    pub e: [Mat3; 3],
    pub f: [Mat3; 3],
    pub h: [Mat3; 3],
    pub a: [Mat3; 3],
}

impl EvaluationRep {
    /// `q^(n h_i / 2) = diag(s^(n h_i))`.
    fn k(&self, i: usize, n: i64) -> Mat3 {
        Mat3::diag(H[i].map(|h| rpow(&self.params.s, n * h)))
    }

    fn self_validate(&self) -> Result<(), RepError> {
        let fail = |what: String| Err(RepError::SelfValidation(what));
        let q = self.params.q();
        let q2 = &q + &q.recip();
        let qdiff = &q - &q.recip();
        for i in 0..3 {
            if !self.h[i].trace().is_zero() {
                return fail(format!("trace h_{i} != 0"));
            }
            let (k, k_inv) = (self.k(i, 2), self.k(i, -2));
            for j in 0..3 {
                let a = rpow(&q, cartan(i, j));
                if &(&k * &self.e[j]) * &k_inv != self.e[j].scale(&a) {
                    return fail(format!("K_{i} e_{j} K_{i}^-1 != q^a e_{j}"));
                }
                if &(&k * &self.f[j]) * &k_inv != self.f[j].scale(&a.recip()) {
                    return fail(format!("K_{i} f_{j} K_{i}^-1 != q^-a f_{j}"));
                }
                let comm = &(&self.e[i] * &self.f[j]) - &(&self.f[j] * &self.e[i]);
                let expected = if i == j { (&k - &k_inv).scale(&qdiff.recip()) } else { Mat3::zero() };
                if comm != expected {
                    return fail(format!("[e_{i}, f_{j}]"));
                }
                if i != j {
                    for (name, g) in [("e", &self.e), ("f", &self.f)] {
                        if !serre(&g[i], &g[j], &q2).is_zero() {
                            return fail(format!("q-Serre relation for {name}_{i}, {name}_{j}"));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// `x^2 y - [2] x y x + y x^2`.
fn serre(x: &Mat3, y: &Mat3, q2: &BigRational) -> Mat3 {
    let xy = x * y;
    let yx = y * x;
    &(&(x * &xy) - &(&xy * x).scale(q2)) + &(&yx * x)
}

/// Builds the representation and checks the Chevalley relations on it.
pub fn build_evaluation_rep(params: &RepParams) -> Result<EvaluationRep, RepError> {
    params.validate()?;
    let z = &params.z;
    let e = [Mat3::unit(2, 0).scale(z), Mat3::unit(0, 1), Mat3::unit(1, 2)];
    let f = [Mat3::unit(0, 2).scale(&z.recip()), Mat3::unit(1, 0), Mat3::unit(2, 1)];
    let h = H.map(|w| Mat3::diag(w.map(|x| BigRational::from_integer(x.into()))));
    let mut rep = EvaluationRep { params: params.clone(), e, f, h, a: Default::default() };
    for i in 0..3 {
        let k1 = rep.k(i, 1);
        rep.a[i] = &(&(&rep.e[i] * &k1).scale(&params.c[i]) + &(&rep.f[i] * &k1).scale(&params.cbar[i]))
            + &rep.k(i, 2).scale(&params.w[i]);
    }
    rep.self_validate()?;
    Ok(rep)
}

impl Default for Mat3 {
    fn default() -> Self {
        Mat3::zero()
    }
}

/// The scalar `rho` making the defining relation hold for `A_i, A_j`, next
/// to the expected `c_i cbar_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RhoCalibration {
    pub rho: BigRational,
    pub expected: BigRational,
}

impl RhoCalibration {
    /// `rho / (c_i cbar_i)`, when the product is nonzero.
    pub fn factor(&self) -> Option<BigRational> {
        (!self.expected.is_zero()).then(|| &self.rho / &self.expected)
    }

    pub fn matches(&self) -> bool {
        self.rho == self.expected
    }
}

/// Solves `A_i^2 A_j - [2] A_i A_j A_i + A_j A_i^2 = rho A_j` for `rho`.
pub fn calibrate_rho(rep: &EvaluationRep, i: usize, j: usize) -> Result<RhoCalibration, RepError> {
    if i == j || i > 2 || j > 2 {
        return Err(RepError::NotLinked { i, j });
    }
    let q = rep.params.q();
    let (ai, aj) = (&rep.a[i], &rep.a[j]);
    let lhs = serre(ai, aj, &(&q + &q.recip()));
    let pivot = (0..3).flat_map(|a| (0..3).map(move |b| (a, b))).find(|&(a, b)| !aj.get(a, b).is_zero());
    let Some((a, b)) = pivot else {
        return Err(RepError::NoScalar { i, j });
    };
    let rho = lhs.get(a, b) / aj.get(a, b);
    if !(&lhs - &aj.scale(&rho)).is_zero() {
        return Err(RepError::NoScalar { i, j });
    }
    Ok(RhoCalibration { rho, expected: &rep.params.c[i] * &rep.params.cbar[i] })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn generic() -> RepParams {
        RepParams::new(q(3, 2), q(-5, 7), [q(2, 1), q(-1, 3), q(4, 5)], [q(3, 4), q(7, 2), q(-2, 9)]).unwrap()
    }

    #[test]
    fn generic_point_validates_and_calibrates() {
        let rep = build_evaluation_rep(&generic()).unwrap();
        for h in &rep.h {
            assert!(h.trace().is_zero());
        }
        for (i, j) in [(0, 1), (1, 0), (1, 2), (2, 0)] {
            let cal = calibrate_rho(&rep, i, j).unwrap();
            assert!(cal.matches(), "({i}, {j}): {} vs {}", cal.rho, cal.expected);
            assert_eq!(cal.factor(), Some(q(1, 1)));
        }
    }

    #[test]
    fn vanishing_c_gives_zero_rho() {
        let p = RepParams::new(q(2, 1), q(3, 1), Default::default(), [q(1, 2), q(5, 1), q(-3, 1)]).unwrap();
        let rep = build_evaluation_rep(&p).unwrap();
        let cal = calibrate_rho(&rep, 0, 1).unwrap();
        assert!(cal.rho.is_zero());
        assert_eq!(cal.factor(), None);
    }

    #[test]
    fn rho_depends_on_product_only() {
        let p = generic();
        let mut scaled = p.clone();
        let lambda = q(-7, 3);
        scaled.c[0] = &p.c[0] * &lambda;
        scaled.cbar[0] = &p.cbar[0] / &lambda;
        let a = calibrate_rho(&build_evaluation_rep(&p).unwrap(), 0, 1).unwrap();
        let b = calibrate_rho(&build_evaluation_rep(&scaled).unwrap(), 0, 1).unwrap();
        assert_eq!(a.rho, b.rho);
    }

    #[test]
    fn invalid_parameters() {
        let c = [q(1, 1), q(1, 1), q(1, 1)];
        assert!(RepParams::new(q(1, 1), q(1, 1), c.clone(), c.clone()).is_err());
        assert!(RepParams::new(q(-1, 1), q(1, 1), c.clone(), c.clone()).is_err());
        assert!(RepParams::new(q(0, 1), q(1, 1), c.clone(), c.clone()).is_err());
        assert!(RepParams::new(q(2, 1), q(0, 1), c.clone(), c.clone()).is_err());
        let w = [q(1, 1), q(0, 1), q(0, 1)];
        assert!(matches!(
            RepParams::with_w(q(2, 1), q(1, 1), c.clone(), c.clone(), w),
            Err(RepError::InvalidParams(_))
        ));
        assert!(matches!(calibrate_rho(&build_evaluation_rep(&generic()).unwrap(), 1, 1), Err(RepError::NotLinked { .. })));
    }

    #[test]
    fn w_branch_from_square_roots() {
        // s = 2: q + 1/q - 2 = 9/4, so -c cbar must be 9/4 times a square
        let s = q(2, 1);
        let c = [q(1, 1), q(-9, 4), q(9, 1)];
        let cbar = [q(-9, 4), q(1, 1), q(-1, 4)];
        let p = RepParams::with_w_from_sqrt(s.clone(), q(2, 3), c.clone(), cbar).unwrap().unwrap();
        assert_eq!(p.w, [q(1, 1), q(1, 1), q(1, 1)]);
        let rep = build_evaluation_rep(&p).unwrap();
        assert!(calibrate_rho(&rep, 0, 1).unwrap().matches());
        assert_eq!(RepParams::with_w_from_sqrt(s, q(1, 1), c, [q(-2, 1), q(1, 1), q(1, 1)]).unwrap(), None);
    }

    #[test]
    fn square_roots() {
        assert_eq!(rational_sqrt(&q(9, 4)), Some(q(3, 2)));
        assert_eq!(rational_sqrt(&q(2, 1)), None);
        assert_eq!(rational_sqrt(&q(-4, 1)), None);
        assert_eq!(rational_sqrt(&q(0, 1)), Some(q(0, 1)));
    }
}
