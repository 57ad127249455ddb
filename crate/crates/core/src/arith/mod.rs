//! Exact arithmetic substrate.
//!
//! Integers are [`num_bigint::BigInt`]; rationals are [`num_rational::BigRational`],
//! which is always kept in lowest terms with a positive denominator.

mod factor;
mod prime;
mod rational;
mod valuation;

use num_bigint::BigInt;
use thiserror::Error;

pub use factor::{factorize, Factorization};
pub use prime::{is_prime, is_prime_u64};
pub use rational::{format_rational, parse_rational, serde_rational};
pub use valuation::{valuation, valuation_rational, ExtValuation, Prime, SignedValuation};

/// Arbitrary-precision rational in lowest terms.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("{0} is not prime")]
    NotPrime(BigInt),
    #[error("cannot factor zero")]
    FactorZero,
    #[error("modulus must be at least 2, got {0}")]
    ModulusTooSmall(BigInt),
    #[error("invalid rational literal {0:?}")]
    ParseRational(String),
}
