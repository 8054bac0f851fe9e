//! Band structure of the generating polynomial on the eigenvalues
//! `theta_k = C (v q^k + v^-1 q^-k)`, with `v` kept symbolic.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::coeffs::expand_generating_polynomial;
use crate::qcoeff::{q_int, LaurentScalar};

/// Laurent polynomial in `v` over `Q(q)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
struct VPoly(BTreeMap<i64, LaurentScalar>);

impl VPoly {
    fn constant(c: LaurentScalar) -> Self {
        let mut p = Self::default();
        p.add(0, c);
        p
    }

    fn add(&mut self, e: i64, c: LaurentScalar) {
        let sum = match self.0.remove(&e) {
            Some(old) => &old + &c,
            None => c,
        };
        if !sum.is_zero() {
            self.0.insert(e, sum);
        }
    }

    fn plus(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (&e, c) in &rhs.0 {
            out.add(e, c.clone());
        }
        out
    }

    fn times(&self, rhs: &Self) -> Self {
        let mut out = Self::default();
        for (&a, x) in &self.0 {
            for (&b, y) in &rhs.0 {
                out.add(a + b, x * y);
            }
        }
        out
    }

    fn scale(&self, c: &LaurentScalar) -> Self {
        let mut out = Self::default();
        for (&e, x) in &self.0 {
            out.add(e, x * c);
        }
        out
    }

    fn pow(&self, n: usize) -> Self {
        (0..n).fold(Self::constant(LaurentScalar::one()), |acc, _| acc.times(self))
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// The value if free of `v`.
    fn as_constant(&self) -> Option<LaurentScalar> {
        match self.0.len() {
            0 => Some(LaurentScalar::zero()),
            1 => self.0.get(&0).cloned(),
            _ => None,
        }
    }
}

/// `C` of the eigenvalue formula; `v` stays formal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectralParams {
    pub c: LaurentScalar,
}

impl SpectralParams {
    pub fn new(c: LaurentScalar) -> Self {
        Self { c }
    }

    /// `theta_k`.
    fn theta(&self, k: i64) -> VPoly {
        let mut p = VPoly::default();
        p.add(1, &self.c * &LaurentScalar::q_pow(k));
        p.add(-1, &self.c * &LaurentScalar::q_pow(-k));
        p
    }
}

impl Default for SpectralParams {
    fn default() -> Self {
        Self::new(LaurentScalar::one())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpectralError {
    #[error("x^2 + y^2 - (q^d + q^-d) x y depends on v at k = {k}, d = {d}")]
    VDependent { k: i64, d: i64 },
    #[error("rho differs between offsets at k = {k}, d = {d}")]
    Inconsistent { k: i64, d: i64 },
    #[error("C = 0")]
    ZeroC,
}

/// Expands `x^2 + y^2 - (q^d + q^-d) x y` at `x = theta_k`, `y = theta_(k+d)`
/// for `1 <= d <= max_offset` and `k` in `ks`, checks that each value is free
/// of `v`, and returns the common `rho` with value `rho [d]^2`.
pub fn derive_spectral_rho(params: &SpectralParams, max_offset: i64, ks: &[i64]) -> Result<LaurentScalar, SpectralError> {
    if params.c.is_zero() {
        return Err(SpectralError::ZeroC);
    }
    let mut rho: Option<LaurentScalar> = None;
    for d in 1..=max_offset.max(1) {
        let a = &LaurentScalar::q_pow(d) + &LaurentScalar::q_pow(-d);
        for &k in ks {
            let (x, y) = (params.theta(k), params.theta(k + d));
            let value = x.pow(2).plus(&y.pow(2)).plus(&x.times(&y).scale(&-&a));
            let value = value.as_constant().ok_or(SpectralError::VDependent { k, d })?;
            let candidate = value.checked_div(&q_int(d as u32).pow(2)).expect("[d] != 0");
            match &rho {
                None => rho = Some(candidate),
                Some(r) if *r == candidate => {}
                Some(_) => return Err(SpectralError::Inconsistent { k, d }),
            }
        }
    }
    Ok(rho.expect("at least one offset"))
}

/// Offsets `l - k` at which `p_r(theta_k, theta_l)` should vanish.
pub fn allowed_offsets(r: usize) -> Vec<i64> {
    let r = r as i64;
    (-r..=r).filter(|d| (d - r).rem_euclid(2) == 0).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OffsetCheck {
    pub k: i64,
    pub offset: i64,
    pub allowed: bool,
    pub zero: bool,
}

impl OffsetCheck {
    pub fn passed(&self) -> bool {
        self.allowed == self.zero
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectralReport {
    pub r: usize,
    pub c: String,
    pub rho: Option<String>,
    pub oracle: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub oracle_error: Option<String>,
    pub offsets: Vec<OffsetCheck>,
    pub passed: bool,
}

const BASE_POINTS: [i64; 2] = [0, 3];

/// `p_r(theta_k, theta_(k+d))` for `|d| <= r + 2`, with `rho` taken from
/// [`derive_spectral_rho`].
pub fn spectral_polynomial_check_with(r: usize, params: &SpectralParams) -> SpectralReport {
    let oracle = derive_spectral_rho(params, r.max(1) as i64 + 2, &[-2, 0, 1, 5]);
    let rho = match &oracle {
        Ok(rho) => rho.clone(),
        Err(e) => {
            return SpectralReport {
                r,
                c: params.c.to_string(),
                rho: None,
                oracle: false,
                oracle_error: Some(e.to_string()),
                offsets: Vec::new(),
                passed: false,
            }
        }
    };
    let offsets = offsets_with_rho(r, params, &rho);
    SpectralReport {
        r,
        c: params.c.to_string(),
        rho: Some(rho.to_string()),
        oracle: true,
        oracle_error: None,
        passed: offsets.iter().all(OffsetCheck::passed),
        offsets,
    }
}

pub fn spectral_polynomial_check(r: usize) -> SpectralReport {
    spectral_polynomial_check_with(r, &SpectralParams::default())
}

/// The offset table for an arbitrary `rho`.
pub fn offsets_with_rho(r: usize, params: &SpectralParams, rho: &LaurentScalar) -> Vec<OffsetCheck> {
    let p = expand_generating_polynomial(r).expect("r >= 1");
    let allowed = allowed_offsets(r);
    let bound = r as i64 + 2;
    let mut out = Vec::new();
    for k in BASE_POINTS {
        let x = params.theta(k);
        let x_pow: Vec<VPoly> = (0..=r + 1).map(|n| x.pow(n)).collect();
        for d in -bound..=bound {
            let y = params.theta(k + d);
            let y_pow: Vec<VPoly> = (0..=r + 1).map(|n| y.pow(n)).collect();
            let value = p.terms().fold(VPoly::default(), |acc, ((a, b), c)| {
                acc.plus(&x_pow[a].times(&y_pow[b]).scale(&c.eval_rho(rho)))
            });
            out.push(OffsetCheck { k, offset: d, allowed: allowed.contains(&d), zero: value.is_zero() });
        }
    }
    out
}
