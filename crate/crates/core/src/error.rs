//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by validation and numerical routines.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    /// A matrix that must be Hermitian is not, within tolerance.
    #[error("matrix is not Hermitian: entry ({row},{col}) deviates from its conjugate by {deviation:.3e} (tolerance {tolerance:.3e})")]
    NonHermitian {
        row: usize,
        col: usize,
        deviation: f64,
        tolerance: f64,
    },
    /// A scalar parameter fell outside its documented range.
    #[error("parameter `{name}` = {value} outside [{min}, {max}]")]
    ParamOutOfRange {
        name: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },
    /// A density operator failed a validity check.
    #[error("invalid state: {check} check failed ({detail})")]
    InvalidState { check: &'static str, detail: String },
    /// A POVM effect operator is not between 0 and the identity.
    #[error("invalid effect: {0}")]
    InvalidEffect(String),
    /// A dichotomic POVM pair does not sum to the identity.
    #[error("POVM pair {index} does not resolve the identity (deviation {deviation:.3e})")]
    PovmNotNormalized { index: usize, deviation: f64 },
    /// Functional / assignment shape mismatch.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    /// Index out of range.
    #[error("index {index} out of range for {what} of size {size}")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        size: usize,
    },
    /// Joint-measurability search refused: too many measurements.
    #[error("measurement set of size {n} exceeds the supported maximum {max}")]
    SetTooLarge { n: usize, max: usize },
    /// A bisection profile was not monotone.
    #[error("sampled value profile is not monotone in the channel parameter: {0}")]
    NonMonotoneProfile(String),
    /// Requested operation is not defined for the given inputs.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// Malformed serialized input.
    #[error("malformed input: {0}")]
    Malformed(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
