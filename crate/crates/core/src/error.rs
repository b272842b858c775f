use thiserror::Error;

use crate::values::ValueGroup;

/// Errors raised by the structural operations of this crate.
///
/// Outcomes such as an undefined Cartan entry or an infinite groupoid are not
/// errors; they are reported through the dedicated result enums.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("values live in different groups: {left} vs {right}")]
    GroupMismatch { left: ValueGroup, right: ValueGroup },

    #[error("torsion order must be at least 1")]
    ZeroTorsion,

    #[error("torsion exponent {tors} out of range for order {order}")]
    TorsionOutOfRange { tors: u64, order: u64 },

    #[error("free exponent vector has length {found}, expected {expected}")]
    FreeRank { expected: usize, found: usize },

    #[error("exponent arithmetic overflowed")]
    Overflow,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("vectors do not form a Z-basis (determinant {0})")]
    NotUnimodular(i128),

    #[error("index {index} out of range for rank {rank}")]
    Index { index: usize, rank: usize },

    #[error("determinant {0} is not a unit")]
    NotInvertible(i64),

    #[error("the Weyl groupoid is not finite (outcome: {0})")]
    NotFinite(&'static str),

    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
