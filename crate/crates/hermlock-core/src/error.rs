//! Error type shared by every module of the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("InvalidSpec: {0}")]
    InvalidSpec(String),
    #[error("ParseSpec at byte {pos}: expected {expected}")]
    ParseSpec { pos: usize, expected: String },
    #[error("NotAUnit: element lies in the radical")]
    NotAUnit,
    #[error("RingMismatch: operands belong to different rings")]
    RingMismatch,
    #[error("NotInOnePlusM: argument is not in 1 + \u{1d52a}")]
    NotInOnePlusM,
    #[error("NotANorm: value is not in the image of the norm map")]
    NotANorm,
    #[error("NotASquare: unit has no square root in the fixed ring")]
    NotASquare,
    #[error("BudgetExceeded: {0}")]
    BudgetExceeded(String),
    #[error("DimensionMismatch: {0}")]
    DimensionMismatch(String),
    #[error("NotInvertible: residue matrix is singular")]
    NotInvertible,
    #[error("NonCommutativeRing: operation requires a commutative ring")]
    NonCommutativeRing,
    #[error("Degenerate: Gram matrix is not invertible")]
    Degenerate,
    #[error("NotHermitian: matrix differs from its conjugate transpose")]
    NotHermitian,
    #[error("NotEquivalent: the two forms have different kinds")]
    NotEquivalent,
    #[error("NotRepresentable: requested length is outside the value set")]
    NotRepresentable,
    #[error("LengthMismatch: vectors have different lengths")]
    LengthMismatch,
    #[error("NotPrimitive: vector has all coordinates in the radical")]
    NotPrimitive,
    #[error("NotUnitaryInput: matrix does not preserve the form")]
    NotUnitaryInput,
    #[error("PreconditionViolated: {0}")]
    PreconditionViolated(String),
    #[error("IdealNotSquareZero: need 2k >= e so that (\u{1d52f}^k)^2 = 0")]
    IdealNotSquareZero,
    #[error("BadNormalForm: {0}")]
    BadNormalForm(String),
    #[error("RNotInRadical: the quadratic coefficient must lie in \u{1d52a}")]
    RNotInRadical,
    #[error("InvalidQuery: {0}")]
    InvalidQuery(String),
    #[error("NoSuchVector: no primitive vector of the requested length class")]
    NoSuchVector,
    #[error("InvalidCase: {0}")]
    InvalidCase(String),
    #[error("BadInput: {0}")]
    BadInput(String),
}
