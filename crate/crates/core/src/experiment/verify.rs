// SPDX-License-Identifier: Apache-2.0

use std::f64::consts::FRAC_1_SQRT_2;
use std::path::PathBuf;

use rayon::prelude::*;
use serde::Serialize;

use super::{validate_dim, write_json};
use crate::error::{Error, Result};
use crate::linalg::{DenseOperator, C64};
use crate::operators::{
    build_baker, build_perturbed, build_shift, build_shift_factored, parity_permutation,
    pauli_fourier_conjugate, BakerKind, Pauli, PerturbationSpec,
};
use crate::spectral::parity_commutator;

/// Every exact identity must hold to this bound.
pub const VERIFY_TOL: f64 = 1e-10;

const BASE_ALPHAS: [f64; 3] = [0.0, 0.25, 0.5];

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub dims: Vec<usize>,
    /// Extra boundary phase checked on top of `0, ¼, ½`.
    pub alpha: Option<f64>,
    pub theta: f64,
    pub self_test_fault: bool,
    pub out: Option<PathBuf>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            dims: (4..=256).step_by(2).collect(),
            alpha: None,
            theta: 0.3,
            self_test_fault: false,
            out: None,
        }
    }
}

impl VerifyConfig {
    pub fn validate(&self) -> Result<()> {
        if self.dims.is_empty() {
            return Err(Error::Invalid("empty N grid".into()));
        }
        for &n in &self.dims {
            validate_dim(n)?;
        }
        if let Some(a) = self.alpha {
            PerturbationSpec::new(0.0, a, Pauli::X)?;
        }
        PerturbationSpec::new(self.theta, 0.5, Pauli::X)?;
        Ok(())
    }

    fn alphas(&self) -> Vec<f64> {
        let mut out = BASE_ALPHAS.to_vec();
        if let Some(a) = self.alpha.filter(|a| !BASE_ALPHAS.contains(a)) {
            out.push(a);
        }
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub max_deviation: f64,
    pub worst_dim: usize,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub dims: Vec<usize>,
    pub alphas: Vec<f64>,
    pub theta: f64,
    pub self_test_fault: bool,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

const CHECKS: [&str; 5] = [
    "decomposition",
    "factored_shift",
    "sigma_x_conjugation",
    "shift_parity",
    "perturbed_parity",
];

fn deviations(dim: usize, alphas: &[f64], theta: f64, fault: bool) -> Result<[f64; 5]> {
    let l = dim / 2;
    let shift = build_shift(dim)?;
    let s = shift.to_dense()?;
    let mut reference = s.clone();
    if fault {
        reference.set(0, 0, -reference.get(0, 0));
    }

    let mut decomposition = 0.0_f64;
    let mut factored = 0.0_f64;
    for &alpha in alphas {
        let b = build_baker(BakerKind::Standard, l, alpha)?;
        let b_rev = build_baker(BakerKind::Reverse, l, alpha)?;
        let sum = b.add(&b_rev)?.scale(C64::new(FRAC_1_SQRT_2, 0.0));
        decomposition = decomposition.max(sum.max_abs_diff(&reference));
        factored = factored.max(
            build_shift_factored(dim, alpha)?
                .to_dense()?
                .max_abs_diff(&s),
        );
    }

    let (_, conjugation) = pauli_fourier_conjugate(Pauli::X, l, 0.0)?;
    let rho = parity_permutation(dim)?;
    let perturbed: DenseOperator =
        build_perturbed(dim, &PerturbationSpec::new(theta, 0.5, Pauli::X)?)?;
    Ok([
        decomposition,
        factored,
        conjugation,
        parity_commutator(&s, &rho),
        parity_commutator(&perturbed, &rho),
    ])
}

/// Runs the exact-identity suite. Failures are reported, not raised.
pub fn cmd_verify(cfg: &VerifyConfig) -> Result<VerifyReport> {
    cfg.validate()?;
    let alphas = cfg.alphas();
    let first = cfg.dims[0];
    let rows: Vec<(usize, [f64; 5])> = cfg
        .dims
        .par_iter()
        .map(|&n| {
            Ok((
                n,
                deviations(n, &alphas, cfg.theta, cfg.self_test_fault && n == first)?,
            ))
        })
        .collect::<Result<_>>()?;

    let checks: Vec<CheckResult> = CHECKS
        .iter()
        .enumerate()
        .map(|(k, &name)| {
            let (worst_dim, max_deviation) = rows.iter().map(|(n, d)| (*n, d[k])).fold(
                (rows[0].0, f64::NEG_INFINITY),
                |acc, x| if x.1 > acc.1 { x } else { acc },
            );
            CheckResult {
                name,
                max_deviation,
                worst_dim,
                tolerance: VERIFY_TOL,
                passed: max_deviation <= VERIFY_TOL,
            }
        })
        .collect();
    let report = VerifyReport {
        dims: cfg.dims.clone(),
        alphas,
        theta: cfg.theta,
        self_test_fault: cfg.self_test_fault,
        passed: checks.iter().all(|c| c.passed),
        checks,
    };
    if let Some(path) = &cfg.out {
        write_json(path, &report)?;
    }
    Ok(report)
}
