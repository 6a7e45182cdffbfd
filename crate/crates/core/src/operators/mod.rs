// SPDX-License-Identifier: Apache-2.0

//! The shift operator `S|n⟩ = |2n mod (N−1)⟩` (with `|N−1⟩` fixed), the two
//! quantum bakers whose normalized sum it is, and the one-parameter family
//! `S(θ; α, P) = V(θ) S` obtained by rotating the qubit factor.
//!
//! Block layouts put the qubit first: label `n = L·i + k` on `ℋ₂ ⊗ ℋ_L`.

mod classical;

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use serde::Serialize;

pub use classical::classical_baker_step;

use crate::error::{Error, Result};
use crate::linalg::{
    cis, DenseOperator, Factor, FactoredOperator, PhasedFourier, Qubit2, StateVector, C64,
};
use crate::numtheory::{multiplicative_order, OrderInfo};

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);
const I: C64 = C64::new(0.0, 1.0);

/// Single-qubit Pauli axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Pauli {
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 3] = [Pauli::X, Pauli::Y, Pauli::Z];

    pub fn matrix(self) -> Qubit2 {
        match self {
            Pauli::X => [[ZERO, ONE], [ONE, ZERO]],
            Pauli::Y => [[ZERO, -I], [I, ZERO]],
            Pauli::Z => [[ONE, ZERO], [ZERO, -ONE]],
        }
    }

    /// `exp(−iθP) = cos θ · 1 − i sin θ · P`.
    pub fn rotation(self, theta: f64) -> Qubit2 {
        let p = self.matrix();
        let (s, c) = theta.sin_cos();
        let mut out = [[ZERO; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                let id = if i == j { c } else { 0.0 };
                *slot = C64::new(id, 0.0) - I * s * p[i][j];
            }
        }
        out
    }

    /// The least-significant-qubit operator `T` in `F⁻¹(σ_P ⊗ I_L)F ≈ I_L ⊗ T`.
    pub fn conjugation_target(self) -> Pauli {
        match self {
            Pauli::X => Pauli::Z,
            Pauli::Y => Pauli::X,
            Pauli::Z => Pauli::Y,
        }
    }
}

impl std::str::FromStr for Pauli {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "x" | "sx" | "sigma_x" => Ok(Pauli::X),
            "y" | "sy" | "sigma_y" => Ok(Pauli::Y),
            "z" | "sz" | "sigma_z" => Ok(Pauli::Z),
            other => Err(Error::Invalid(format!("unknown Pauli axis {other:?}"))),
        }
    }
}

impl std::fmt::Display for Pauli {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Pauli::X => "x",
            Pauli::Y => "y",
            Pauli::Z => "z",
        })
    }
}

pub(crate) fn qubit_mul(a: &Qubit2, b: &Qubit2) -> Qubit2 {
    let mut out = [[ZERO; 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            *slot = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

/// Member `(θ, α, P)` of the perturbed family.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PerturbationSpec {
    pub theta: f64,
    pub alpha: f64,
    pub pauli: Pauli,
}

impl PerturbationSpec {
    /// `|θ| ≤ π` and `α ∈ [0, 1)`.
    pub fn new(theta: f64, alpha: f64, pauli: Pauli) -> Result<Self> {
        if !theta.is_finite() || theta.abs() > PI {
            return Err(Error::OutOfDomain {
                value: theta,
                domain: "[-π, π]",
            });
        }
        if !(0.0..1.0).contains(&alpha) {
            return Err(Error::OutOfDomain {
                value: alpha,
                domain: "[0, 1)",
            });
        }
        Ok(Self {
            theta,
            alpha,
            pauli,
        })
    }

    pub fn unperturbed(alpha: f64) -> Result<Self> {
        Self::new(0.0, alpha, Pauli::X)
    }
}

/// The qubit matrix `(1/√2)[[1, 1], [e^{−iπα}, −e^{−iπα}]]` of the
/// factored shift.
pub fn qubit_mixer(alpha: f64) -> Qubit2 {
    let e = cis(-PI * alpha);
    let h = FRAC_1_SQRT_2;
    [[C64::new(h, 0.0), C64::new(h, 0.0)], [e * h, -e * h]]
}

fn check_even(dim: usize, min: usize) -> Result<usize> {
    if !dim.is_multiple_of(2) || dim < min {
        return Err(Error::InvalidDimension {
            dim,
            reason: "needs an even dimension",
        });
    }
    Ok(dim / 2)
}

/// Modular multiplication by two on `N` labels, `N−1` fixed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftOperator {
    perm: Vec<usize>,
}

/// `S` for even `N ≥ 4`.
pub fn build_shift(dim: usize) -> Result<ShiftOperator> {
    check_even(dim, 4)?;
    let m = dim - 1;
    let perm = (0..dim)
        .map(|n| if n == m { m } else { 2 * n % m })
        .collect();
    Ok(ShiftOperator { perm })
}

impl ShiftOperator {
    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    /// `n ↦ 2n mod (N−1)`.
    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }

    pub fn image(&self, n: usize) -> usize {
        self.perm[n]
    }

    pub fn to_dense(&self) -> Result<DenseOperator> {
        DenseOperator::from_permutation(&self.perm)
    }

    /// Labels of `S^k`.
    pub fn power(&self, k: u64) -> Vec<usize> {
        let m = (self.dim() - 1) as u64;
        let factor = crate::numtheory::mod_pow(2, k, m).expect("modulus ≥ 3");
        (0..self.dim())
            .map(|n| {
                if n == self.dim() - 1 {
                    n
                } else {
                    ((n as u64 * factor) % m) as usize
                }
            })
            .collect()
    }

    /// Length of the orbit of `|n⟩`.
    pub fn orbit_length(&self, n: usize) -> usize {
        let mut x = self.perm[n];
        let mut len = 1;
        while x != n {
            x = self.perm[x];
            len += 1;
        }
        len
    }

    pub fn order(&self) -> OrderInfo {
        multiplicative_order(2, self.dim() as u64 - 1).expect("N − 1 is odd and ≥ 3")
    }

    pub fn apply(&self, v: &StateVector) -> Result<StateVector> {
        if v.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: v.dim(),
            });
        }
        let mut out = vec![ZERO; self.dim()];
        for (n, a) in v.amplitudes().iter().enumerate() {
            out[self.perm[n]] = *a;
        }
        StateVector::new(out)
    }
}

/// Which stacking order the quantum baker follows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BakerKind {
    /// Left half stretched onto the bottom half.
    Standard,
    /// Left half stretched onto the top half.
    Reverse,
}

/// `e^{−iπ(n+α)/L}` on the lower half: turns `F_L(α, α/2)` into
/// `F_L(α, (α+1)/2)` by row phases.
fn half_shift_phases(l: usize, alpha: f64) -> Vec<C64> {
    (0..l)
        .map(|n| cis(-PI * (n as f64 + alpha) / l as f64))
        .collect()
}

fn half_blocks(l: usize, alpha: f64) -> Result<Factor> {
    Ok(Factor::Fourier {
        transform: PhasedFourier::with_min_dim(l, alpha, alpha / 2.0, 1)?,
        inverse: false,
    })
}

fn full_inverse(dim: usize, alpha: f64) -> Result<Factor> {
    Ok(Factor::Fourier {
        transform: PhasedFourier::new(dim, alpha, alpha)?,
        inverse: true,
    })
}

/// Baker map on `2L` labels as a fast factored product.
pub fn baker_factored(kind: BakerKind, l: usize, alpha: f64) -> Result<FactoredOperator> {
    if l == 0 {
        return Err(Error::InvalidDimension {
            dim: 0,
            reason: "baker half-dimension must be positive",
        });
    }
    let dim = 2 * l;
    let shifted = half_shift_phases(l, alpha);
    let e = cis(-PI * alpha);
    let op = FactoredOperator::new(dim)?.then(half_blocks(l, alpha)?)?;
    let op = match kind {
        BakerKind::Standard => {
            // blockdiag(F_L(α, α/2), −e^{−iπα} F_L(α, (α+1)/2))
            let diag = std::iter::repeat_n(ONE, l)
                .chain(shifted.iter().map(|z| -e * z))
                .collect();
            op.then(Factor::Diagonal(diag))?
        }
        BakerKind::Reverse => {
            // [[0, F_L(α, (1+α)/2)], [e^{−iπα} F_L(α, α/2), 0]]
            let swap = (0..dim).map(|n| (n + l) % dim).collect();
            let diag = shifted
                .into_iter()
                .chain(std::iter::repeat_n(e, l))
                .collect();
            op.then(Factor::Permutation(swap))?
                .then(Factor::Diagonal(diag))?
        }
    };
    op.then(full_inverse(dim, alpha)?)
}

/// `B_{2L}` or `B′_{2L}` as a dense unitary.
pub fn build_baker(kind: BakerKind, l: usize, alpha: f64) -> Result<DenseOperator> {
    baker_factored(kind, l, alpha)?.to_dense()
}

/// `F⁻¹_{2L}(α,α) ∘ (q ⊗ I_L) ∘ blockdiag(F_L(α, α/2), F_L(α, (1+α)/2))`.
fn shift_like(dim: usize, alpha: f64, qubit: Qubit2) -> Result<FactoredOperator> {
    let l = check_even(dim, 2)?;
    let diag = std::iter::repeat_n(ONE, l)
        .chain(half_shift_phases(l, alpha))
        .collect();
    FactoredOperator::new(dim)?
        .then(half_blocks(l, alpha)?)?
        .then(Factor::Diagonal(diag))?
        .then(Factor::QubitMix(qubit))?
        .then(full_inverse(dim, alpha)?)
}

/// Factored shift built from phased Fourier transforms; independent of `α`
/// after materialization.
pub fn build_shift_factored(dim: usize, alpha: f64) -> Result<FactoredOperator> {
    check_even(dim, 4)?;
    shift_like(dim, alpha, qubit_mixer(alpha))
}

/// `S(θ; α, P)` as a fast factored product.
pub fn perturbed_factored(dim: usize, spec: &PerturbationSpec) -> Result<FactoredOperator> {
    check_even(dim, 4)?;
    let q = qubit_mul(&spec.pauli.rotation(spec.theta), &qubit_mixer(spec.alpha));
    shift_like(dim, spec.alpha, q)
}

/// `V(θ) = F⁻¹_{2L}(α,α) (exp(−iθP) ⊗ I_L) F_{2L}(α,α)`; exactly `I` at `θ = 0`.
pub fn perturbation_operator(dim: usize, spec: &PerturbationSpec) -> Result<DenseOperator> {
    check_even(dim, 2)?;
    if spec.theta == 0.0 {
        return DenseOperator::identity(dim);
    }
    qubit_conjugate(dim, spec.alpha, spec.pauli.rotation(spec.theta))?.to_dense()
}

fn qubit_conjugate(dim: usize, alpha: f64, q: Qubit2) -> Result<FactoredOperator> {
    let f = PhasedFourier::new(dim, alpha, alpha)?;
    FactoredOperator::new(dim)?
        .then(Factor::Fourier {
            transform: f.clone(),
            inverse: false,
        })?
        .then(Factor::QubitMix(q))?
        .then(Factor::Fourier {
            transform: f,
            inverse: true,
        })
}

/// `S(θ; α, P) = V(θ) S` as a dense unitary; equals `S` exactly at `θ = 0`.
pub fn build_perturbed(dim: usize, spec: &PerturbationSpec) -> Result<DenseOperator> {
    let shift = build_shift(dim)?;
    perturbation_operator(dim, spec)?.compose_permutation(shift.permutation())
}

/// Parity `R|n⟩ = |N−1−n⟩`.
pub fn build_parity(dim: usize) -> Result<DenseOperator> {
    DenseOperator::from_permutation(&parity_permutation(dim)?)
}

pub fn parity_permutation(dim: usize) -> Result<Vec<usize>> {
    check_even(dim, 2)?;
    Ok((0..dim).map(|n| dim - 1 - n).collect())
}

/// `R′ = diag(1, R_{N−2}, 1)`: parity on the interior labels, `0` and `N−1`
/// fixed.
pub fn build_half_order_op(dim: usize) -> Result<DenseOperator> {
    DenseOperator::from_permutation(&half_order_permutation(dim)?)
}

pub fn half_order_permutation(dim: usize) -> Result<Vec<usize>> {
    check_even(dim, 2)?;
    Ok((0..dim)
        .map(|n| {
            if n == 0 || n == dim - 1 {
                n
            } else {
                dim - 1 - n
            }
        })
        .collect())
}

/// `C = F⁻¹_{2L}(α,α)(σ_P ⊗ I_L)F_{2L}(α,α)` and `‖C − I_L ⊗ T‖_max` where
/// `T` is [`Pauli::conjugation_target`] on the least-significant qubit.
pub fn pauli_fourier_conjugate(pauli: Pauli, l: usize, alpha: f64) -> Result<(DenseOperator, f64)> {
    if l == 0 {
        return Err(Error::InvalidDimension {
            dim: 0,
            reason: "half-dimension must be positive",
        });
    }
    let conj = qubit_conjugate(2 * l, alpha, pauli.matrix())?.to_dense()?;
    let target = DenseOperator::kron2_low(l, &pauli.conjugation_target().matrix())?;
    let deviation = conj.max_abs_diff(&target);
    Ok((conj, deviation))
}
