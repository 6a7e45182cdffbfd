// SPDX-License-Identifier: Apache-2.0

//! Dense complex linear algebra: states, operators, the phased Fourier
//! transform, factored operators and a unitary eigen-solver.

mod dense;
mod eigen;
mod factored;
mod fourier;

pub use dense::{DenseOperator, Qubit2, StateVector, UNITARY_TOL};
pub use eigen::{
    complex_schur, eigen_decomposition, eigenphases, EigenPair, EigenSolver, Eigenphase, Schur,
};
pub use factored::{Factor, FactoredOperator};
pub use fourier::{build_phased_fourier, PhasedFourier};

pub use num_complex::Complex64 as C64;

/// `e^{iφ}`.
#[inline]
pub fn cis(phase: f64) -> C64 {
    C64::from_polar(1.0, phase)
}

/// Largest entry-wise modulus of `a - b`.
pub fn max_abs_diff(a: &[C64], b: &[C64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Euclidean norm.
pub fn norm2(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}
