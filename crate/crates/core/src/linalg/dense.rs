// SPDX-License-Identifier: Apache-2.0

use std::fmt;

use super::{max_abs_diff, norm2, C64};
use crate::error::{Error, Result};

/// Tolerance on `‖U†U − I‖_max` for an operator to carry the unitary flag.
pub const UNITARY_TOL: f64 = 1e-10;

/// A 2×2 complex matrix acting on the qubit factor, `q[row][col]`.
pub type Qubit2 = [[C64; 2]; 2];

/// Complex amplitude vector.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<C64>,
    normalized: bool,
}

impl StateVector {
    /// Wraps raw amplitudes. The `normalized` flag is set when the norm is 1
    /// to within `1e-12`.
    pub fn new(amplitudes: Vec<C64>) -> Result<Self> {
        if amplitudes.len() < 2 {
            return Err(Error::InvalidDimension {
                dim: amplitudes.len(),
                reason: "a state needs at least two amplitudes",
            });
        }
        let normalized = (norm2(&amplitudes) - 1.0).abs() <= 1e-12;
        Ok(Self {
            amplitudes,
            normalized,
        })
    }

    /// The computational basis state `|index⟩`.
    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        if index >= dim {
            return Err(Error::Invalid(format!(
                "basis index {index} out of range for dimension {dim}"
            )));
        }
        let mut amplitudes = vec![C64::new(0.0, 0.0); dim];
        amplitudes[index] = C64::new(1.0, 0.0);
        Self::new(amplitudes)
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amplitudes
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn norm(&self) -> f64 {
        norm2(&self.amplitudes)
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Result<C64> {
        check_dim(self.dim(), other.dim())?;
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    pub fn max_abs_diff(&self, other: &StateVector) -> f64 {
        max_abs_diff(&self.amplitudes, &other.amplitudes)
    }
}

/// Dense `N×N` complex matrix, row-major. Row index is the output basis
/// label, column index the input label.
#[derive(Clone, PartialEq)]
pub struct DenseOperator {
    dim: usize,
    entries: Vec<C64>,
    unitary: bool,
}

impl fmt::Debug for DenseOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DenseOperator")
            .field("dim", &self.dim)
            .field("unitary", &self.unitary)
            .finish_non_exhaustive()
    }
}

fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, got })
    }
}

impl DenseOperator {
    pub fn zeros(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidDimension {
                dim,
                reason: "operators need a positive dimension",
            });
        }
        Ok(Self {
            dim,
            entries: vec![C64::new(0.0, 0.0); dim * dim],
            unitary: false,
        })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        let mut op = Self::zeros(dim)?;
        for i in 0..dim {
            op.entries[i * dim + i] = C64::new(1.0, 0.0);
        }
        op.unitary = true;
        Ok(op)
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C64) -> Result<Self> {
        let mut op = Self::zeros(dim)?;
        for r in 0..dim {
            for c in 0..dim {
                op.entries[r * dim + c] = f(r, c);
            }
        }
        Ok(op)
    }

    /// Row-major entries.
    pub fn from_entries(dim: usize, entries: Vec<C64>) -> Result<Self> {
        check_dim(dim * dim, entries.len())?;
        if dim == 0 {
            return Err(Error::InvalidDimension {
                dim,
                reason: "operators need a positive dimension",
            });
        }
        Ok(Self {
            dim,
            entries,
            unitary: false,
        })
    }

    /// Permutation matrix with `|n⟩ ↦ |perm[n]⟩`.
    pub fn from_permutation(perm: &[usize]) -> Result<Self> {
        validate_permutation(perm)?;
        let dim = perm.len();
        let mut op = Self::zeros(dim)?;
        for (n, &image) in perm.iter().enumerate() {
            op.entries[image * dim + n] = C64::new(1.0, 0.0);
        }
        op.unitary = true;
        Ok(op)
    }

    pub fn diagonal(diag: &[C64]) -> Result<Self> {
        let dim = diag.len();
        let mut op = Self::zeros(dim)?;
        for (i, d) in diag.iter().enumerate() {
            op.entries[i * dim + i] = *d;
        }
        Ok(op)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.entries[row * self.dim + col]
    }

    /// Overwrites one entry and clears the unitary flag.
    pub fn set(&mut self, row: usize, col: usize, value: C64) {
        self.entries[row * self.dim + col] = value;
        self.unitary = false;
    }

    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    pub fn column(&self, col: usize) -> Vec<C64> {
        (0..self.dim).map(|r| self.get(r, col)).collect()
    }

    pub fn is_unitary(&self) -> bool {
        self.unitary
    }

    /// `‖U†U − I‖_max`.
    pub fn unitarity_defect(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0_f64;
        for i in 0..n {
            for j in i..n {
                let mut acc = C64::new(0.0, 0.0);
                for k in 0..n {
                    acc += self.entries[k * n + i].conj() * self.entries[k * n + j];
                }
                if i == j {
                    acc -= 1.0;
                }
                worst = worst.max(acc.norm());
            }
        }
        worst
    }

    /// Sets the unitary flag after checking the defect against `tolerance`.
    pub fn check_unitary(mut self, tolerance: f64) -> Result<Self> {
        let defect = self.unitarity_defect();
        if defect > tolerance {
            return Err(Error::NotUnitary { defect, tolerance });
        }
        self.unitary = true;
        Ok(self)
    }

    /// For products of unitary factors, where the check is implied by
    /// construction.
    pub(crate) fn assume_unitary(mut self) -> Self {
        self.unitary = true;
        self
    }

    pub fn apply(&self, v: &StateVector) -> Result<StateVector> {
        check_dim(self.dim, v.dim())?;
        StateVector::new(self.apply_slice(v.amplitudes()))
    }

    pub fn apply_slice(&self, v: &[C64]) -> Vec<C64> {
        let n = self.dim;
        (0..n)
            .map(|r| {
                let row = &self.entries[r * n..(r + 1) * n];
                row.iter().zip(v).map(|(a, b)| a * b).sum()
            })
            .collect()
    }

    /// `self · other`.
    pub fn compose(&self, other: &DenseOperator) -> Result<DenseOperator> {
        check_dim(self.dim, other.dim)?;
        let n = self.dim;
        let mut out = vec![C64::new(0.0, 0.0); n * n];
        for i in 0..n {
            let out_row = &mut out[i * n..(i + 1) * n];
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                let b_row = &other.entries[k * n..(k + 1) * n];
                for (o, b) in out_row.iter_mut().zip(b_row) {
                    *o += a * b;
                }
            }
        }
        Ok(Self {
            dim: n,
            entries: out,
            unitary: self.unitary && other.unitary,
        })
    }

    pub fn adjoint(&self) -> DenseOperator {
        let n = self.dim;
        let mut out = vec![C64::new(0.0, 0.0); n * n];
        for r in 0..n {
            for c in 0..n {
                out[c * n + r] = self.entries[r * n + c].conj();
            }
        }
        Self {
            dim: n,
            entries: out,
            unitary: self.unitary,
        }
    }

    pub fn scale(&self, factor: C64) -> DenseOperator {
        let unitary = self.unitary && (factor.norm() - 1.0).abs() < 1e-15;
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|z| z * factor).collect(),
            unitary,
        }
    }

    pub fn add(&self, other: &DenseOperator) -> Result<DenseOperator> {
        check_dim(self.dim, other.dim)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self {
            dim: self.dim,
            entries,
            unitary: false,
        })
    }

    pub fn sub(&self, other: &DenseOperator) -> Result<DenseOperator> {
        check_dim(self.dim, other.dim)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self {
            dim: self.dim,
            entries,
            unitary: false,
        })
    }

    /// Largest entry-wise modulus of `self − other`.
    ///
    /// Panics if the dimensions differ.
    pub fn max_abs_diff(&self, other: &DenseOperator) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        max_abs_diff(&self.entries, &other.entries)
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// `‖AB − BA‖_max`.
    pub fn commutator_norm(&self, other: &DenseOperator) -> Result<f64> {
        let ab = self.compose(other)?;
        let ba = other.compose(self)?;
        Ok(ab.max_abs_diff(&ba))
    }

    /// `q ⊗ I_L`, qubit as the most-significant factor: row/column
    /// `n = L·i + k`.
    pub fn kron2(q: &Qubit2, l: usize) -> Result<DenseOperator> {
        let mut op = Self::zeros(2 * l)?;
        let n = 2 * l;
        for (i, row) in q.iter().enumerate() {
            for (j, &qij) in row.iter().enumerate() {
                for k in 0..l {
                    op.entries[(l * i + k) * n + l * j + k] = qij;
                }
            }
        }
        Ok(op)
    }

    /// `I_L ⊗ q`, qubit as the least-significant factor: row/column
    /// `n = 2k + i`.
    pub fn kron2_low(l: usize, q: &Qubit2) -> Result<DenseOperator> {
        let mut op = Self::zeros(2 * l)?;
        let n = 2 * l;
        for k in 0..l {
            for (i, row) in q.iter().enumerate() {
                for (j, &qij) in row.iter().enumerate() {
                    op.entries[(2 * k + i) * n + 2 * k + j] = qij;
                }
            }
        }
        Ok(op)
    }

    /// `[[A, B], [C, D]]` from four `L×L` blocks.
    pub fn block2x2(
        a: &DenseOperator,
        b: &DenseOperator,
        c: &DenseOperator,
        d: &DenseOperator,
    ) -> Result<DenseOperator> {
        let l = a.dim;
        for blk in [b, c, d] {
            check_dim(l, blk.dim)?;
        }
        let n = 2 * l;
        let mut op = Self::zeros(n)?;
        for (bi, blk) in [a, b, c, d].into_iter().enumerate() {
            let (r0, c0) = ((bi / 2) * l, (bi % 2) * l);
            for r in 0..l {
                op.entries[(r0 + r) * n + c0..(r0 + r) * n + c0 + l]
                    .copy_from_slice(&blk.entries[r * l..(r + 1) * l]);
            }
        }
        Ok(op)
    }

    /// The `L×L` block at block-row `bi`, block-column `bj` of a `2L×2L` matrix.
    pub fn block(&self, bi: usize, bj: usize) -> Result<DenseOperator> {
        if !self.dim.is_multiple_of(2) || bi > 1 || bj > 1 {
            return Err(Error::InvalidDimension {
                dim: self.dim,
                reason: "block access needs an even dimension",
            });
        }
        let l = self.dim / 2;
        DenseOperator::from_fn(l, |r, c| self.get(bi * l + r, bj * l + c))
    }

    /// The permutation `n ↦ perm[n]` when every column holds a single exact 1.
    pub fn as_permutation(&self) -> Option<Vec<usize>> {
        let n = self.dim;
        let mut perm = vec![0; n];
        for (c, slot) in perm.iter_mut().enumerate() {
            let mut hit = None;
            for r in 0..n {
                let z = self.get(r, c);
                if z == C64::new(1.0, 0.0) {
                    if hit.is_some() {
                        return None;
                    }
                    hit = Some(r);
                } else if z != C64::new(0.0, 0.0) {
                    return None;
                }
            }
            *slot = hit?;
        }
        validate_permutation(&perm).ok()?;
        Some(perm)
    }

    /// `P_σ† · self · P_σ` for the permutation `σ`, i.e. entry `(a, b)` of the
    /// result is `self[σ(a), σ(b)]`.
    pub fn conjugate_by_permutation(&self, perm: &[usize]) -> Result<DenseOperator> {
        check_dim(self.dim, perm.len())?;
        validate_permutation(perm)?;
        let n = self.dim;
        let mut out = Self::from_fn(n, |a, b| self.get(perm[a], perm[b]))?;
        out.unitary = self.unitary;
        Ok(out)
    }

    /// `self · P_σ`, i.e. column `n` of the result is column `σ(n)` of `self`.
    pub fn compose_permutation(&self, perm: &[usize]) -> Result<DenseOperator> {
        check_dim(self.dim, perm.len())?;
        validate_permutation(perm)?;
        let n = self.dim;
        let mut out = Self::from_fn(n, |r, c| self.get(r, perm[c]))?;
        out.unitary = self.unitary;
        Ok(out)
    }
}

pub(crate) fn validate_permutation(perm: &[usize]) -> Result<()> {
    let mut seen = vec![false; perm.len()];
    for &p in perm {
        if p >= perm.len() || seen[p] {
            return Err(Error::Invalid("not a permutation".into()));
        }
        seen[p] = true;
    }
    if perm.is_empty() {
        return Err(Error::InvalidDimension {
            dim: 0,
            reason: "empty permutation",
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn identity_application_is_a_no_op() {
        let v = StateVector::new(vec![c(0.3, 0.1), c(-0.2, 0.5), c(0.0, -1.0)]).unwrap();
        let id = DenseOperator::identity(3).unwrap();
        assert_eq!(id.apply(&v).unwrap(), v);
    }

    #[test]
    fn kron2_of_sigma_x_swaps_halves() {
        let sx = [[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]];
        let op = DenseOperator::kron2(&sx, 2).unwrap();
        assert_eq!(op.as_permutation().unwrap(), vec![2, 3, 0, 1]);
    }

    #[test]
    fn kron2_low_pairs_adjacent_labels() {
        let sx = [[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]];
        let op = DenseOperator::kron2_low(2, &sx).unwrap();
        assert_eq!(op.as_permutation().unwrap(), vec![1, 0, 3, 2]);
    }

    #[test]
    fn block2x2_places_blocks() {
        let a = DenseOperator::from_fn(2, |r, c_| c(r as f64, c_ as f64)).unwrap();
        let z = DenseOperator::zeros(2).unwrap();
        let m = DenseOperator::block2x2(&z, &a, &z, &z).unwrap();
        assert_eq!(m.get(1, 3), c(1.0, 1.0));
        assert_eq!(m.block(0, 1).unwrap(), a);
        assert_eq!(m.get(3, 1), c(0.0, 0.0));
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let a = DenseOperator::identity(3).unwrap();
        let b = DenseOperator::identity(4).unwrap();
        assert!(matches!(
            a.compose(&b),
            Err(Error::DimensionMismatch {
                expected: 3,
                got: 4
            })
        ));
        let v = StateVector::basis(4, 0).unwrap();
        assert!(a.apply(&v).is_err());
    }

    #[test]
    fn state_needs_two_amplitudes() {
        assert!(StateVector::new(vec![c(1.0, 0.0)]).is_err());
        assert!(StateVector::basis(4, 1).unwrap().is_normalized());
        assert!(!StateVector::new(vec![c(1.0, 0.0), c(1.0, 0.0)])
            .unwrap()
            .is_normalized());
    }

    #[test]
    fn non_unitary_check_fails() {
        let m = DenseOperator::from_fn(2, |_, _| c(1.0, 0.0)).unwrap();
        assert!(matches!(
            m.check_unitary(UNITARY_TOL),
            Err(Error::NotUnitary { .. })
        ));
    }

    #[test]
    fn permutation_conjugation_matches_dense_product() {
        let perm = [2usize, 0, 3, 1];
        let p = DenseOperator::from_permutation(&perm).unwrap();
        let m =
            DenseOperator::from_fn(4, |r, c_| c((r * 4 + c_) as f64, (r as f64) - 0.5)).unwrap();
        let dense = p.adjoint().compose(&m).unwrap().compose(&p).unwrap();
        assert_eq!(
            m.conjugate_by_permutation(&perm)
                .unwrap()
                .max_abs_diff(&dense),
            0.0
        );
        let dense_right = m.compose(&p).unwrap();
        assert_eq!(
            m.compose_permutation(&perm)
                .unwrap()
                .max_abs_diff(&dense_right),
            0.0
        );
    }
}
