// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

/// Errors raised by the operator, spectral and experiment layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid dimension {dim}: {reason}")]
    InvalidDimension { dim: usize, reason: &'static str },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("operator is not unitary (defect {defect:.3e} exceeds {tolerance:.1e})")]
    NotUnitary { defect: f64, tolerance: f64 },

    #[error("dimension {dim} exceeds the eigen-solver cap {cap}")]
    CapExceeded { dim: usize, cap: usize },

    #[error("eigen-solver did not converge after {iterations} QR iterations")]
    NoConvergence { iterations: usize },

    #[error("eigenpair residual {residual:.3e} exceeds {tolerance:.1e}")]
    Residual { residual: f64, tolerance: f64 },

    #[error("operator does not commute with the parity (commutator {commutator:.3e})")]
    ParityBroken { commutator: f64 },

    #[error("not a fixed-point-free involution")]
    NotInvolution,

    #[error("invalid modulus {0}: must be odd and at least 3")]
    InvalidModulus(u64),

    #[error("value {value} outside {domain}")]
    OutOfDomain { value: f64, domain: &'static str },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
