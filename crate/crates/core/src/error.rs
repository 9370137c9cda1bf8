//! Error type shared by the whole crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The order n of the root of unity must be at least 2.
    #[error("invalid order n = {0}, expected n >= 2")]
    InvalidOrder(usize),

    /// Mixed-order arithmetic is rejected: both operands must live over
    /// the same Q(zeta_n).
    #[error("order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    /// Division by the zero element of the field or ring.
    #[error("division by zero")]
    DivisionByZero,

    /// A parameter is outside its documented range.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A matrix pair does not satisfy the defining relations of H_n(q),
    /// or violates a structural expectation of the decomposition.
    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
