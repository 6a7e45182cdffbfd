// SPDX-License-Identifier: Apache-2.0

//! Complex Schur decomposition and eigenphases of unitary matrices.
//!
//! Householder reduction to upper Hessenberg form, then single-shift
//! implicit QR with Wilkinson shifts and periodic exceptional shifts. For a
//! unitary (normal) input the triangular factor is diagonal up to rounding,
//! so the Schur vectors are the eigenvectors even inside degenerate
//! clusters. Every returned pair is checked against its residual.

use std::f64::consts::TAU;

use super::{norm2, DenseOperator, C64};
use crate::error::{Error, Result};

/// Residual bound on `‖U v − e^{iφ} v‖₂` for every returned eigenpair.
pub const RESIDUAL_TOL: f64 = 1e-8;

/// Default largest dimension accepted by [`EigenSolver`].
pub const DEFAULT_CAP: usize = 2048;

/// `A = Q T Q†` with `T` upper triangular. Both row-major.
#[derive(Clone, Debug)]
pub struct Schur {
    pub dim: usize,
    pub q: Vec<C64>,
    pub t: Vec<C64>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Eigenphase {
    /// In `[0, 2π)`.
    pub phase: f64,
    pub residual: f64,
}

#[derive(Clone, Debug)]
pub struct EigenPair {
    pub phase: f64,
    pub eigenvalue: C64,
    pub vector: Vec<C64>,
    pub residual: f64,
}

/// Eigen-solver for unitary matrices with a dimension cap.
#[derive(Clone, Copy, Debug)]
pub struct EigenSolver {
    pub cap: usize,
}

impl Default for EigenSolver {
    fn default() -> Self {
        Self { cap: DEFAULT_CAP }
    }
}

impl EigenSolver {
    pub fn with_cap(cap: usize) -> Self {
        Self { cap }
    }

    /// Eigenpairs sorted by ascending phase.
    pub fn decompose(&self, u: &DenseOperator) -> Result<Vec<EigenPair>> {
        if !u.is_unitary() {
            return Err(Error::NotUnitary {
                defect: f64::NAN,
                tolerance: super::UNITARY_TOL,
            });
        }
        let n = u.dim();
        if n > self.cap {
            return Err(Error::CapExceeded {
                dim: n,
                cap: self.cap,
            });
        }
        let schur = complex_schur(u.entries(), n)?;
        let mut pairs = Vec::with_capacity(n);
        let mut image = vec![C64::new(0.0, 0.0); n];
        for j in 0..n {
            let eigenvalue = schur.t[j * n + j];
            let mut phase = eigenvalue.arg().rem_euclid(TAU);
            if phase >= TAU {
                phase = 0.0;
            }
            let vector: Vec<C64> = (0..n).map(|r| schur.q[r * n + j]).collect();
            let e = C64::from_polar(1.0, phase);
            for (r, slot) in image.iter_mut().enumerate() {
                let row = &u.entries()[r * n..(r + 1) * n];
                let uv: C64 = row.iter().zip(&vector).map(|(a, b)| a * b).sum();
                *slot = uv - e * vector[r];
            }
            let residual = norm2(&image);
            if residual > RESIDUAL_TOL {
                return Err(Error::Residual {
                    residual,
                    tolerance: RESIDUAL_TOL,
                });
            }
            pairs.push(EigenPair {
                phase,
                eigenvalue,
                vector,
                residual,
            });
        }
        pairs.sort_by(|a, b| a.phase.total_cmp(&b.phase));
        Ok(pairs)
    }

    pub fn eigenphases(&self, u: &DenseOperator) -> Result<Vec<Eigenphase>> {
        Ok(self
            .decompose(u)?
            .into_iter()
            .map(|p| Eigenphase {
                phase: p.phase,
                residual: p.residual,
            })
            .collect())
    }
}

/// Eigenphases of a unitary-flagged operator with the default cap.
pub fn eigenphases(u: &DenseOperator) -> Result<Vec<Eigenphase>> {
    EigenSolver::default().eigenphases(u)
}

/// Eigenpairs of a unitary-flagged operator with the default cap.
pub fn eigen_decomposition(u: &DenseOperator) -> Result<Vec<EigenPair>> {
    EigenSolver::default().decompose(u)
}

#[inline]
fn idx(n: usize, r: usize, c: usize) -> usize {
    r * n + c
}

/// Schur decomposition of a general complex `n×n` matrix (row-major).
pub fn complex_schur(a: &[C64], n: usize) -> Result<Schur> {
    if a.len() != n * n || n == 0 {
        return Err(Error::DimensionMismatch {
            expected: n * n,
            got: a.len(),
        });
    }
    let mut h = a.to_vec();
    let mut q = vec![C64::new(0.0, 0.0); n * n];
    for i in 0..n {
        q[idx(n, i, i)] = C64::new(1.0, 0.0);
    }
    hessenberg(&mut h, &mut q, n);
    qr_iterate(&mut h, &mut q, n)?;
    for r in 1..n {
        for c in 0..r {
            h[idx(n, r, c)] = C64::new(0.0, 0.0);
        }
    }
    Ok(Schur { dim: n, q, t: h })
}

fn hessenberg(h: &mut [C64], q: &mut [C64], n: usize) {
    if n < 3 {
        return;
    }
    let mut v = vec![C64::new(0.0, 0.0); n];
    for k in 0..n - 2 {
        let len = n - k - 1;
        let x0 = h[idx(n, k + 1, k)];
        let xnorm = (k + 1..n)
            .map(|r| h[idx(n, r, k)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if xnorm == 0.0 {
            continue;
        }
        let sign = if x0.norm() == 0.0 {
            C64::new(1.0, 0.0)
        } else {
            x0 / x0.norm()
        };
        let alpha = -sign * xnorm;
        // v = x − α e₁, normalized.
        for (i, slot) in v[..len].iter_mut().enumerate() {
            *slot = h[idx(n, k + 1 + i, k)];
        }
        v[0] -= alpha;
        let vnorm = norm2(&v[..len]);
        if vnorm == 0.0 {
            continue;
        }
        for x in &mut v[..len] {
            *x /= vnorm;
        }
        // Rows k+1.. : H ← (I − 2vv†) H.
        for c in k..n {
            let mut dot = C64::new(0.0, 0.0);
            for i in 0..len {
                dot += v[i].conj() * h[idx(n, k + 1 + i, c)];
            }
            dot *= 2.0;
            for i in 0..len {
                h[idx(n, k + 1 + i, c)] -= v[i] * dot;
            }
        }
        // Columns k+1.. : H ← H (I − 2vv†), Q ← Q (I − 2vv†).
        for mat in [&mut *h, &mut *q] {
            for r in 0..n {
                let row = &mut mat[r * n + k + 1..r * n + n];
                let mut dot = C64::new(0.0, 0.0);
                for i in 0..len {
                    dot += row[i] * v[i];
                }
                dot *= 2.0;
                for i in 0..len {
                    row[i] -= dot * v[i].conj();
                }
            }
        }
        h[idx(n, k + 1, k)] = alpha;
        for r in k + 2..n {
            h[idx(n, r, k)] = C64::new(0.0, 0.0);
        }
    }
}

/// Givens rotation `G = [[c, s], [−s̄, c]]` with `G·[x; y] = [r; 0]`.
fn givens(x: C64, y: C64) -> (f64, C64) {
    let ax = x.norm();
    let ay = y.norm();
    if ay == 0.0 {
        return (1.0, C64::new(0.0, 0.0));
    }
    if ax == 0.0 {
        return (0.0, y.conj() / ay);
    }
    let nrm = ax.hypot(ay);
    (ax / nrm, (x / ax) * y.conj() / nrm)
}

fn wilkinson_shift(a: C64, b: C64, c: C64, d: C64) -> C64 {
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let mean = (a + d) * 0.5;
    let mu1 = mean + disc;
    let mu2 = mean - disc;
    if (mu1 - d).norm() <= (mu2 - d).norm() {
        mu1
    } else {
        mu2
    }
}

fn qr_iterate(h: &mut [C64], q: &mut [C64], n: usize) -> Result<()> {
    let eps = f64::EPSILON;
    let fro = norm2(h).max(f64::MIN_POSITIVE);
    let max_total = 60 * n.max(10);
    let mut total = 0usize;
    let mut hi = n - 1;
    let mut iter = 0usize;
    while hi > 0 {
        // Locate the active window [lo, hi].
        let mut lo = hi;
        while lo > 0 {
            let sub = h[idx(n, lo, lo - 1)].norm();
            let mut scale = h[idx(n, lo - 1, lo - 1)].norm() + h[idx(n, lo, lo)].norm();
            if scale == 0.0 {
                scale = fro;
            }
            if sub <= eps * scale {
                h[idx(n, lo, lo - 1)] = C64::new(0.0, 0.0);
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            hi -= 1;
            iter = 0;
            continue;
        }
        iter += 1;
        total += 1;
        if total > max_total {
            return Err(Error::NoConvergence { iterations: total });
        }
        let shift = if iter.is_multiple_of(10) {
            let sub = h[idx(n, hi, hi - 1)].norm();
            h[idx(n, hi, hi)] + C64::from_polar(0.75 * sub.max(eps), 1.3 * (total as f64))
        } else {
            wilkinson_shift(
                h[idx(n, hi - 1, hi - 1)],
                h[idx(n, hi - 1, hi)],
                h[idx(n, hi, hi - 1)],
                h[idx(n, hi, hi)],
            )
        };
        qr_sweep(h, q, n, lo, hi, shift);
    }
    Ok(())
}

fn qr_sweep(h: &mut [C64], q: &mut [C64], n: usize, lo: usize, hi: usize, shift: C64) {
    for k in lo..hi {
        let (x, y) = if k == lo {
            (h[idx(n, lo, lo)] - shift, h[idx(n, lo + 1, lo)])
        } else {
            (h[idx(n, k, k - 1)], h[idx(n, k + 1, k - 1)])
        };
        let (c, s) = givens(x, y);
        let first_col = if k == lo { k } else { k - 1 };
        for col in first_col..n {
            let t1 = h[idx(n, k, col)];
            let t2 = h[idx(n, k + 1, col)];
            h[idx(n, k, col)] = t1 * c + s * t2;
            h[idx(n, k + 1, col)] = -s.conj() * t1 + t2 * c;
        }
        if k > lo {
            h[idx(n, k + 1, k - 1)] = C64::new(0.0, 0.0);
        }
        let last_row = (k + 2).min(hi);
        for row in 0..=last_row {
            let t1 = h[idx(n, row, k)];
            let t2 = h[idx(n, row, k + 1)];
            h[idx(n, row, k)] = t1 * c + t2 * s.conj();
            h[idx(n, row, k + 1)] = -s * t1 + t2 * c;
        }
        for row in 0..n {
            let t1 = q[idx(n, row, k)];
            let t2 = q[idx(n, row, k + 1)];
            q[idx(n, row, k)] = t1 * c + t2 * s.conj();
            q[idx(n, row, k + 1)] = -s * t1 + t2 * c;
        }
    }
}
