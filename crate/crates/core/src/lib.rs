// SPDX-License-Identifier: Apache-2.0

//! Quantum shift operator on `N`-dimensional Hilbert space, its
//! decomposition into two quantum bakers, perturbed variants, fidelity decay
//! and eigenphase spacing statistics.

pub mod error;
pub mod experiment;
pub mod fidelity;
pub mod linalg;
pub mod numtheory;
pub mod operators;
pub mod spectral;

pub use error::{Error, Result};
pub use linalg::{DenseOperator, FactoredOperator, PhasedFourier, StateVector, C64};
pub use numtheory::{multiplicative_order, predict_shoulder, OrderInfo};
pub use operators::{
    build_baker, build_perturbed, build_shift, BakerKind, Pauli, PerturbationSpec, ShiftOperator,
};
