// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;

use rayon::prelude::*;
use serde::Serialize;

use super::{validate_dim, write_json, Csv};
use crate::error::{Error, Result};
use crate::fidelity::{
    detect_shoulders, fidelity_trace, FidelityTrace, Shoulder, ShoulderKind, ShoulderOptions,
    ShoulderReport,
};
use crate::numtheory::predict_shoulder;
use crate::operators::{Pauli, PerturbationSpec};

#[derive(Clone, Debug)]
pub struct FidelityConfig {
    pub dims: Vec<usize>,
    pub theta: f64,
    pub alpha: f64,
    pub pauli: Pauli,
    /// Trace length; defaults to a little over three predicted shoulders.
    pub t_max: Option<usize>,
    pub shoulders: ShoulderOptions,
    pub out_dir: PathBuf,
}

impl FidelityConfig {
    pub fn new(
        dims: Vec<usize>,
        theta: f64,
        alpha: f64,
        pauli: Pauli,
        out_dir: impl Into<PathBuf>,
    ) -> Self {
        Self {
            dims,
            theta,
            alpha,
            pauli,
            t_max: None,
            shoulders: ShoulderOptions::default(),
            out_dir: out_dir.into(),
        }
    }

    pub fn validate(&self) -> Result<PerturbationSpec> {
        if self.dims.is_empty() {
            return Err(Error::Invalid("empty N list".into()));
        }
        for &n in &self.dims {
            validate_dim(n)?;
        }
        if self.t_max == Some(0) {
            return Err(Error::Invalid("trace length T must be at least 1".into()));
        }
        if self.shoulders.window == 0 {
            return Err(Error::Invalid("shoulder window must be at least 1".into()));
        }
        if !(self.shoulders.factor > 1.0 && self.shoulders.factor.is_finite()) {
            return Err(Error::OutOfDomain {
                value: self.shoulders.factor,
                domain: "shoulder factor > 1",
            });
        }
        PerturbationSpec::new(self.theta, self.alpha, self.pauli)
    }

    fn trace_len(&self, dim: usize) -> Result<usize> {
        match self.t_max {
            Some(t) => Ok(t),
            None => {
                Ok((3 * predict_shoulder(dim)? as usize).max(32) + 2 * self.shoulders.window + 2)
            }
        }
    }

    fn describe(&self, dim: usize, t_max: usize) -> String {
        format!(
            "command=fidelity N={dim} theta={} alpha={} pauli={} T={t_max} window={} factor={}",
            self.theta, self.alpha, self.pauli, self.shoulders.window, self.shoulders.factor
        )
    }
}

/// Written next to each trace CSV.
#[derive(Clone, Debug, Serialize)]
pub struct FidelitySidecar {
    pub dim: usize,
    pub theta: f64,
    pub alpha: f64,
    pub pauli: Pauli,
    pub t_max: usize,
    pub modulus: u64,
    pub order: u64,
    pub half_order_is_minus_one: bool,
    pub predicted_shoulder: u64,
    pub first_detection: Option<usize>,
    pub detected_shoulders: Vec<Shoulder>,
    pub too_short: bool,
    pub model_bits: u32,
    pub csv: String,
}

#[derive(Clone, Debug)]
pub struct FidelityRun {
    pub trace: FidelityTrace,
    pub shoulders: ShoulderReport,
    pub sidecar: FidelitySidecar,
}

fn flags(t: usize, trace: &FidelityTrace, shoulders: &ShoulderReport) -> String {
    let mut out = Vec::new();
    if t > 0 && t.is_multiple_of(trace.model_bits as usize) {
        out.push("knot");
    }
    if t as u64 == trace.predicted_shoulder {
        out.push("predicted");
    }
    for s in shoulders.shoulders.iter().filter(|s| s.time == t) {
        out.push(match s.kind {
            ShoulderKind::Steepening => "steepening",
            ShoulderKind::Recurrence => "recurrence",
        });
    }
    out.join(";")
}

fn run_one(cfg: &FidelityConfig, spec: &PerturbationSpec, dim: usize) -> Result<FidelityRun> {
    let t_max = cfg.trace_len(dim)?;
    let trace = fidelity_trace(dim, spec, t_max)?;
    let shoulders = detect_shoulders(&trace.f, cfg.shoulders);
    let stem = format!("fidelity_N{dim}");

    let mut csv = Csv::new(&cfg.describe(dim, t_max), &["t", "f", "f_model", "flags"]);
    for t in 0..=t_max {
        csv.row(&[
            t.to_string(),
            trace.f[t].to_string(),
            trace.f_model[t].to_string(),
            flags(t, &trace, &shoulders),
        ]);
    }
    csv.write(&cfg.out_dir.join(format!("{stem}.csv")))?;

    let sidecar = FidelitySidecar {
        dim,
        theta: spec.theta,
        alpha: spec.alpha,
        pauli: spec.pauli,
        t_max,
        modulus: trace.order.modulus,
        order: trace.order.order,
        half_order_is_minus_one: trace.order.half_order_is_minus_one,
        predicted_shoulder: trace.predicted_shoulder,
        first_detection: shoulders.first(),
        detected_shoulders: shoulders.shoulders.clone(),
        too_short: shoulders.too_short,
        model_bits: trace.model_bits,
        csv: format!("{stem}.csv"),
    };
    write_json(&cfg.out_dir.join(format!("{stem}.json")), &sidecar)?;
    Ok(FidelityRun {
        trace,
        shoulders,
        sidecar,
    })
}

/// One trace per `N`, in parallel, each written as `fidelity_N<N>.csv` plus
/// a `.json` sidecar under `out_dir`.
pub fn cmd_fidelity(cfg: &FidelityConfig) -> Result<Vec<FidelityRun>> {
    let spec = cfg.validate()?;
    cfg.dims
        .par_iter()
        .map(|&n| run_one(cfg, &spec, n))
        .collect()
}
