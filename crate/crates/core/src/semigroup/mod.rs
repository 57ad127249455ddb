//! Subsemigroups of the naturals and the eventually periodic sets that carry
//! them.

mod descriptor;
mod periodic;

use thiserror::Error;

pub use descriptor::{DescriptorJson, NumericalCore, SemigroupDescriptor};
pub use periodic::EventuallyPeriodicSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemigroupError {
    #[error("generator set is empty")]
    NoGenerators,
    #[error("period must be positive")]
    ZeroPeriod,
    #[error("residue {residue} is not below the period {period}")]
    ResidueOutOfRange { residue: u64, period: u64 },
    #[error("exceptional element {element} is not below the threshold {threshold}")]
    ExceptionalOutOfRange { element: u64, threshold: u64 },
    #[error("set does not contain 0")]
    MissingZero,
    #[error("set is not closed under addition: {a} + {b} = {} is missing", a + b)]
    NotClosed { a: u64, b: u64 },
    #[error("{0} is not a numerical semigroup (complement is infinite)")]
    NotNumerical(String),
    #[error("the Frobenius number of {0} is undefined")]
    NoFrobenius(String),
}
