// SPDX-License-Identifier: Apache-2.0

//! Operators stored as a product of structured unitary factors, applied in
//! `O(N log N)` without materializing the matrix.

use super::dense::validate_permutation;
use super::{max_abs_diff, DenseOperator, PhasedFourier, Qubit2, StateVector, C64};
use crate::error::{Error, Result};

/// One structured factor.
#[derive(Clone, Debug)]
pub enum Factor {
    /// `|n⟩ ↦ |perm[n]⟩`.
    Permutation(Vec<usize>),
    /// Unit-modulus diagonal.
    Diagonal(Vec<C64>),
    /// `I_{N/size} ⊗ F_size(α, β)` (or its inverse) acting on consecutive
    /// blocks of length `size`.
    Fourier {
        transform: PhasedFourier,
        inverse: bool,
    },
    /// `q ⊗ I_L` with the qubit as the most-significant factor.
    QubitMix(Qubit2),
}

impl Factor {
    fn check(&self, dim: usize) -> Result<()> {
        match self {
            Factor::Permutation(p) => {
                if p.len() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        got: p.len(),
                    });
                }
                validate_permutation(p)
            }
            Factor::Diagonal(d) => {
                if d.len() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        got: d.len(),
                    });
                }
                match d.iter().map(|z| (z.norm() - 1.0).abs()).fold(0.0, f64::max) {
                    defect if defect > 1e-12 => Err(Error::NotUnitary {
                        defect,
                        tolerance: 1e-12,
                    }),
                    _ => Ok(()),
                }
            }
            Factor::Fourier { transform, .. } => {
                if !dim.is_multiple_of(transform.dim()) {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        got: transform.dim(),
                    });
                }
                Ok(())
            }
            Factor::QubitMix(q) => {
                if !dim.is_multiple_of(2) {
                    return Err(Error::InvalidDimension {
                        dim,
                        reason: "qubit mixing needs an even dimension",
                    });
                }
                let defect = qubit_unitarity_defect(q);
                if defect > 1e-12 {
                    return Err(Error::NotUnitary {
                        defect,
                        tolerance: 1e-12,
                    });
                }
                Ok(())
            }
        }
    }

    fn apply(&self, buf: &mut [C64], scratch: &mut Vec<C64>) {
        match self {
            Factor::Permutation(p) => {
                scratch.clear();
                scratch.extend_from_slice(buf);
                for (n, &image) in p.iter().enumerate() {
                    buf[image] = scratch[n];
                }
            }
            Factor::Diagonal(d) => {
                for (x, z) in buf.iter_mut().zip(d) {
                    *x *= z;
                }
            }
            Factor::Fourier { transform, inverse } => {
                for chunk in buf.chunks_exact_mut(transform.dim()) {
                    if *inverse {
                        transform.apply_inverse_in_place(chunk);
                    } else {
                        transform.apply_in_place(chunk);
                    }
                }
            }
            Factor::QubitMix(q) => {
                let l = buf.len() / 2;
                let (top, bottom) = buf.split_at_mut(l);
                for (a, b) in top.iter_mut().zip(bottom.iter_mut()) {
                    let (x0, x1) = (*a, *b);
                    *a = q[0][0] * x0 + q[0][1] * x1;
                    *b = q[1][0] * x0 + q[1][1] * x1;
                }
            }
        }
    }
}

fn qubit_unitarity_defect(q: &Qubit2) -> f64 {
    let mut worst = 0.0_f64;
    for i in 0..2 {
        for j in 0..2 {
            let mut acc = q[0][i].conj() * q[0][j] + q[1][i].conj() * q[1][j];
            if i == j {
                acc -= 1.0;
            }
            worst = worst.max(acc.norm());
        }
    }
    worst
}

/// Product of unitary factors; `factors[0]` acts first.
#[derive(Clone, Debug)]
pub struct FactoredOperator {
    dim: usize,
    factors: Vec<Factor>,
}

impl FactoredOperator {
    pub fn new(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidDimension {
                dim,
                reason: "operators need a positive dimension",
            });
        }
        Ok(Self {
            dim,
            factors: Vec::new(),
        })
    }

    /// Appends a factor applied after the existing ones.
    pub fn then(mut self, factor: Factor) -> Result<Self> {
        factor.check(self.dim)?;
        self.factors.push(factor);
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn apply_in_place(&self, buf: &mut [C64]) -> Result<()> {
        if buf.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: buf.len(),
            });
        }
        let mut scratch = Vec::with_capacity(self.dim);
        for f in &self.factors {
            f.apply(buf, &mut scratch);
        }
        Ok(())
    }

    pub fn apply(&self, v: &StateVector) -> Result<StateVector> {
        let mut buf = v.amplitudes().to_vec();
        self.apply_in_place(&mut buf)?;
        StateVector::new(buf)
    }

    /// `self · m`, one column at a time.
    pub fn apply_to_dense(&self, m: &DenseOperator) -> Result<DenseOperator> {
        if m.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: m.dim(),
            });
        }
        let n = self.dim;
        let mut out = vec![C64::new(0.0, 0.0); n * n];
        let mut col = vec![C64::new(0.0, 0.0); n];
        for c in 0..n {
            for (r, x) in col.iter_mut().enumerate() {
                *x = m.get(r, c);
            }
            self.apply_in_place(&mut col)?;
            for (r, x) in col.iter().enumerate() {
                out[r * n + c] = *x;
            }
        }
        let dense = DenseOperator::from_entries(n, out)?;
        Ok(if m.is_unitary() {
            dense.assume_unitary()
        } else {
            dense
        })
    }

    /// The full matrix. Every factor is unitary, so the result carries the
    /// unitary flag.
    pub fn to_dense(&self) -> Result<DenseOperator> {
        self.apply_to_dense(&DenseOperator::identity(self.dim)?)
    }

    /// Largest max-norm gap between the fast path and `dense` over the
    /// supplied states.
    pub fn max_deviation_from(&self, dense: &DenseOperator, states: &[StateVector]) -> Result<f64> {
        let mut worst = 0.0_f64;
        for s in states {
            let fast = self.apply(s)?;
            let slow = dense.apply(s)?;
            worst = worst.max(max_abs_diff(fast.amplitudes(), slow.amplitudes()));
        }
        Ok(worst)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::cis;

    fn sample_state(n: usize, seed: f64) -> StateVector {
        StateVector::new(
            (0..n)
                .map(|i| C64::new((seed * i as f64).sin(), (seed + i as f64).cos()))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn each_primitive_matches_its_dense_form() {
        let n = 8;
        let q = [
            [cis(0.3) * 0.6, C64::new(0.8, 0.0)],
            [C64::new(-0.8, 0.0), cis(-0.3) * 0.6],
        ];
        let f4 = PhasedFourier::new(4, 0.5, 0.25).unwrap();
        let f4d = f4.to_dense().unwrap();
        let zero = DenseOperator::zeros(4).unwrap();
        let op = FactoredOperator::new(n)
            .unwrap()
            .then(Factor::Permutation(vec![3, 0, 1, 2, 7, 4, 5, 6]))
            .unwrap()
            .then(Factor::Diagonal(
                (0..n).map(|k| cis(0.1 * k as f64)).collect(),
            ))
            .unwrap()
            .then(Factor::Fourier {
                transform: f4.clone(),
                inverse: false,
            })
            .unwrap()
            .then(Factor::QubitMix(q))
            .unwrap()
            .then(Factor::Fourier {
                transform: PhasedFourier::new(8, 0.3, 0.3).unwrap(),
                inverse: true,
            })
            .unwrap();

        let perm = DenseOperator::from_permutation(&[3, 0, 1, 2, 7, 4, 5, 6]).unwrap();
        let diag =
            DenseOperator::diagonal(&(0..n).map(|k| cis(0.1 * k as f64)).collect::<Vec<_>>())
                .unwrap();
        let blocks = DenseOperator::block2x2(&f4d, &zero, &zero, &f4d).unwrap();
        let mix = DenseOperator::kron2(&q, 4).unwrap();
        let finv = PhasedFourier::new(8, 0.3, 0.3)
            .unwrap()
            .to_dense()
            .unwrap()
            .adjoint();
        let dense = finv
            .compose(
                &mix.compose(&blocks.compose(&diag.compose(&perm).unwrap()).unwrap())
                    .unwrap(),
            )
            .unwrap();

        assert!(op.to_dense().unwrap().max_abs_diff(&dense) < 1e-13);
        let states: Vec<_> = (1..6).map(|s| sample_state(n, s as f64)).collect();
        assert!(op.max_deviation_from(&dense, &states).unwrap() < 1e-13);
    }

    #[test]
    fn rejects_non_unitary_factors() {
        let op = FactoredOperator::new(4).unwrap();
        assert!(op
            .clone()
            .then(Factor::Diagonal(vec![C64::new(2.0, 0.0); 4]))
            .is_err());
        assert!(op
            .clone()
            .then(Factor::Permutation(vec![0, 0, 1, 2]))
            .is_err());
        let bad = [[C64::new(1.0, 0.0); 2]; 2];
        assert!(op.then(Factor::QubitMix(bad)).is_err());
    }

    #[test]
    fn empty_product_is_identity() {
        let op = FactoredOperator::new(5).unwrap();
        let v = sample_state(5, 0.7);
        assert_eq!(op.apply(&v).unwrap(), v);
    }
}
