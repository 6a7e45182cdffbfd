// SPDX-License-Identifier: Apache-2.0

//! Discrete Fourier transform with boundary phases,
//! `F_N(α, β)_{nm} = exp(−2πi(n+α)(m+β)/N)/√N`.
//!
//! `α = β = 0` is the periodic DFT, `α = β = ½` the anti-periodic one.
//! Fast application splits the kernel as
//! `e^{−2πiαβ/N} · e^{−2πiβn/N} · DFT_{nm} · e^{−2πiαm/N}`.

use std::f64::consts::TAU;
use std::fmt;
use std::sync::Arc;

use rustfft::{Fft, FftPlanner};

use super::{cis, DenseOperator, C64, UNITARY_TOL};
use crate::error::{Error, Result};

/// Phase of `(n+α)(m+β)/N` reduced to `[0, 1)` turns, keeping the integer
/// part `nm mod N` exact.
fn kernel_turns(n: usize, m: usize, dim: usize, alpha: f64, beta: f64) -> f64 {
    let integer = ((n as u128 * m as u128) % dim as u128) as f64;
    let rest = n as f64 * beta + alpha * m as f64 + alpha * beta;
    ((integer + rest) / dim as f64).rem_euclid(1.0)
}

/// `F_N(α, β)` with `N ≥ 2`; the unitary flag is set after an explicit check.
pub fn build_phased_fourier(dim: usize, alpha: f64, beta: f64) -> Result<DenseOperator> {
    PhasedFourier::new(dim, alpha, beta)?.to_dense()
}

/// `F_N(α, β)` with a cached FFT plan.
#[derive(Clone)]
pub struct PhasedFourier {
    dim: usize,
    alpha: f64,
    beta: f64,
    /// `e^{−2πiαm/N}`, applied to the input.
    pre: Vec<C64>,
    /// `e^{−2πiαβ/N} e^{−2πiβn/N} / √N`, applied to the output.
    post: Vec<C64>,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl fmt::Debug for PhasedFourier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PhasedFourier")
            .field("dim", &self.dim)
            .field("alpha", &self.alpha)
            .field("beta", &self.beta)
            .finish()
    }
}

impl PhasedFourier {
    pub fn new(dim: usize, alpha: f64, beta: f64) -> Result<Self> {
        Self::with_min_dim(dim, alpha, beta, 2)
    }

    /// Half-size blocks of the baker construction may be 1×1.
    pub(crate) fn with_min_dim(dim: usize, alpha: f64, beta: f64, min_dim: usize) -> Result<Self> {
        if dim < min_dim {
            return Err(Error::InvalidDimension {
                dim,
                reason: "Fourier transform dimension too small",
            });
        }
        if !alpha.is_finite() || !beta.is_finite() {
            return Err(Error::OutOfDomain {
                value: if alpha.is_finite() { beta } else { alpha },
                domain: "finite boundary phases",
            });
        }
        let nf = dim as f64;
        let norm = 1.0 / nf.sqrt();
        let pre = (0..dim)
            .map(|m| cis(-TAU * ((alpha * m as f64) / nf).rem_euclid(1.0)))
            .collect();
        let global = cis(-TAU * (alpha * beta / nf).rem_euclid(1.0));
        let post = (0..dim)
            .map(|n| global * cis(-TAU * ((beta * n as f64) / nf).rem_euclid(1.0)) * norm)
            .collect();
        let mut planner = FftPlanner::new();
        let forward = planner.plan_fft_forward(dim);
        let inverse = planner.plan_fft_inverse(dim);
        Ok(Self {
            dim,
            alpha,
            beta,
            pre,
            post,
            forward,
            inverse,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Entry `(n, m)` by direct evaluation.
    pub fn entry(&self, n: usize, m: usize) -> C64 {
        let turns = kernel_turns(n, m, self.dim, self.alpha, self.beta);
        cis(-TAU * turns) / (self.dim as f64).sqrt()
    }

    pub fn to_dense(&self) -> Result<DenseOperator> {
        let op = DenseOperator::from_fn(self.dim, |n, m| self.entry(n, m))?;
        if self.dim <= 512 {
            op.check_unitary(UNITARY_TOL)
        } else {
            Ok(op.assume_unitary())
        }
    }

    /// In-place `buf ← F buf`.
    pub fn apply_in_place(&self, buf: &mut [C64]) {
        debug_assert_eq!(buf.len(), self.dim);
        for (x, p) in buf.iter_mut().zip(&self.pre) {
            *x *= p;
        }
        self.forward.process(buf);
        for (x, p) in buf.iter_mut().zip(&self.post) {
            *x *= p;
        }
    }

    /// In-place `buf ← F⁻¹ buf = F† buf`.
    pub fn apply_inverse_in_place(&self, buf: &mut [C64]) {
        debug_assert_eq!(buf.len(), self.dim);
        for (x, p) in buf.iter_mut().zip(&self.post) {
            *x *= p.conj();
        }
        self.inverse.process(buf);
        for (x, p) in buf.iter_mut().zip(&self.pre) {
            *x *= p.conj();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{max_abs_diff, StateVector};

    #[test]
    fn two_point_dft_is_hadamard() {
        let f = build_phased_fourier(2, 0.0, 0.0).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let expected = [h, h, h, -h];
        for (z, e) in f.entries().iter().zip(expected) {
            assert!((z - C64::new(e, 0.0)).norm() < 1e-15);
        }
        assert!(f.is_unitary());
    }

    #[test]
    fn antiperiodic_two_point_matches_formula() {
        let f = build_phased_fourier(2, 0.5, 0.5).unwrap();
        for n in 0..2 {
            for m in 0..2 {
                let direct = C64::from_polar(
                    std::f64::consts::FRAC_1_SQRT_2,
                    -TAU * (n as f64 + 0.5) * (m as f64 + 0.5) / 2.0,
                );
                assert!((f.get(n, m) - direct).norm() < 1e-15);
            }
        }
        assert!(f.unitarity_defect() <= 1e-12);
    }

    #[test]
    fn generic_phases_stay_unitary() {
        let f = build_phased_fourier(6, 0.3, 0.7).unwrap();
        // Direct U†U product as the oracle.
        let prod = f.adjoint().compose(&f).unwrap();
        let id = DenseOperator::identity(6).unwrap();
        assert!(prod.max_abs_diff(&id) <= 1e-12);
    }

    #[test]
    fn dft_of_delta_is_uniform() {
        let f = PhasedFourier::new(8, 0.0, 0.0).unwrap();
        let mut v = StateVector::basis(8, 0).unwrap().into_amplitudes();
        f.apply_in_place(&mut v);
        let u = C64::new(1.0 / 8f64.sqrt(), 0.0);
        assert!(v.iter().all(|z| (z - u).norm() < 1e-15));
    }

    #[test]
    fn fast_path_matches_dense() {
        for &(n, a, b) in &[
            (5usize, 0.0, 0.0),
            (8, 0.5, 0.5),
            (12, 0.3, 0.7),
            (7, 0.25, 0.125),
        ] {
            let f = PhasedFourier::new(n, a, b).unwrap();
            let dense = f.to_dense().unwrap();
            let x: Vec<C64> = (0..n)
                .map(|i| C64::new((i as f64).sin(), (3.0 * i as f64).cos()))
                .collect();
            let mut fast = x.clone();
            f.apply_in_place(&mut fast);
            assert!(max_abs_diff(&fast, &dense.apply_slice(&x)) < 1e-13);
            let mut back = fast.clone();
            f.apply_inverse_in_place(&mut back);
            assert!(max_abs_diff(&back, &x) < 1e-13);
        }
    }

    #[test]
    fn rejects_tiny_dimension() {
        assert!(matches!(
            build_phased_fourier(1, 0.0, 0.0),
            Err(Error::InvalidDimension { dim: 1, .. })
        ));
        assert!(build_phased_fourier(0, 0.0, 0.0).is_err());
    }
}
