use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

/// An exact 3x3 rational matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat3([[BigRational; 3]; 3]);

impl Mat3 {
    pub fn zero() -> Self {
        Self(Default::default())
    }

    pub fn identity() -> Self {
        Self::diag([BigRational::one(), BigRational::one(), BigRational::one()])
    }

    pub fn diag(d: [BigRational; 3]) -> Self {
        let mut m = Self::zero();
        for (i, x) in d.into_iter().enumerate() {
            m.0[i][i] = x;
        }
        m
    }

    /// The elementary matrix `E_ij` (0-indexed).
    pub fn unit(i: usize, j: usize) -> Self {
        let mut m = Self::zero();
        m.0[i][j] = BigRational::one();
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.0[i][j]
    }

    pub fn rows(&self) -> &[[BigRational; 3]; 3] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().flatten().all(Zero::is_zero)
    }

    pub fn trace(&self) -> BigRational {
        (0..3).map(|i| self.0[i][i].clone()).sum()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self(self.0.clone().map(|row| row.map(|x| x * c)))
    }

    pub fn pow(&self, n: usize) -> Self {
        (0..n).fold(Self::identity(), |acc, _| &acc * self)
    }

    /// Entries rendered as exact rational strings.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.0.iter().map(|row| row.iter().map(|x| x.to_string()).collect()).collect()
    }

    fn zip(&self, rhs: &Self, f: impl Fn(&BigRational, &BigRational) -> BigRational) -> Self {
        let mut m = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] = f(&self.0[i][j], &rhs.0[i][j]);
            }
        }
        m
    }
}

impl Add for &Mat3 {
    type Output = Mat3;
    fn add(self, rhs: &Mat3) -> Mat3 {
        self.zip(rhs, |a, b| a + b)
    }
}

impl Sub for &Mat3 {
    type Output = Mat3;
    fn sub(self, rhs: &Mat3) -> Mat3 {
        self.zip(rhs, |a, b| a - b)
    }
}

impl Neg for &Mat3 {
    type Output = Mat3;
    fn neg(self) -> Mat3 {
        Mat3(self.0.clone().map(|row| row.map(|x| -x)))
    }
}

impl Mul for &Mat3 {
    type Output = Mat3;
    fn mul(self, rhs: &Mat3) -> Mat3 {
        let mut m = Mat3::zero();
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] = (0..3).map(|k| &self.0[i][k] * &rhs.0[k][j]).sum();
            }
        }
        m
    }
}

impl fmt::Display for Mat3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.to_strings().into_iter().map(|r| r.join(", ")).collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn arithmetic() {
        let a = &Mat3::unit(0, 1) + &Mat3::unit(1, 2).scale(&q(1, 2));
        assert_eq!(&a * &a, Mat3::unit(0, 2).scale(&q(1, 2)));
        assert!(a.pow(3).is_zero());
        assert_eq!(a.pow(0), Mat3::identity());
        assert_eq!(Mat3::diag([q(1, 1), q(-2, 1), q(1, 1)]).trace(), q(0, 1));
        assert_eq!(a.to_string(), "[0, 1, 0; 0, 0, 1/2; 0, 0, 0]");
        assert!((&a - &a).is_zero() && (&a + &(-&a)).is_zero());
    }
}
