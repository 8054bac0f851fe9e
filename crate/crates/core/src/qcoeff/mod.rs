//! Exact scalar arithmetic in the deformation parameter `q`.
//!
//! - [`LaurentPoly`]: Laurent polynomials in `q` over the integers.
//! - [`LaurentScalar`]: canonical rational functions of `q`; houses every
//!   q-number and relation coefficient.
//! - [`RhoScalar`]: polynomials in the formal scalar `rho` over
//!   [`LaurentScalar`].
//! - [`q_int`], [`q_factorial`], [`q_binomial`]: symmetric q-numbers.
//!
//! Nothing here specializes `q`; all values are immutable and operations pure.

mod laurent;
mod qnum;
mod rho;
mod scalar;
mod upoly;

pub use laurent::LaurentPoly;
pub use qnum::{q_binomial, q_factorial, q_int};
pub use rho::RhoScalar;
pub use scalar::{exact_div, LaurentScalar, Quotient};

pub(crate) use laurent::{addmod, mulmod, powmod};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("q-binomial [{n} choose {m}] requires 0 <= m <= n")]
    InvalidBinomial { n: i64, m: i64 },
    #[error("cannot parse `{0}` as a q-scalar")]
    Parse(String),
    #[error("evaluation point is a pole")]
    Pole,
}
