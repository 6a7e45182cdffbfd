// SPDX-License-Identifier: Apache-2.0

//! Fidelity of the state `|1⟩` under repeated perturbed modular
//! multiplication,
//!
//! ```text
//! f(t) = |⟨2^t mod (N−1)| S(θ; α, P)^t |1⟩|²,
//! ```
//!
//! the bit-counting model of its decay, and a shoulder detector.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{DenseOperator, StateVector, C64};
use crate::numtheory::{mod_pow, OrderInfo};
use crate::operators::{
    build_shift, half_order_permutation, perturbation_operator, perturbed_factored,
    PerturbationSpec,
};

/// Measured and modelled fidelity for `t = 0..=T`.
#[derive(Clone, Debug, Serialize)]
pub struct FidelityTrace {
    pub dim: usize,
    pub spec: PerturbationSpec,
    /// `f[t]`.
    pub f: Vec<f64>,
    /// Bit-counting model at `M = model_bits`.
    pub f_model: Vec<f64>,
    pub model_bits: u32,
    pub order: OrderInfo,
    pub predicted_shoulder: u64,
}

impl FidelityTrace {
    pub fn len(&self) -> usize {
        self.f.len()
    }

    pub fn is_empty(&self) -> bool {
        self.f.is_empty()
    }

    /// Last time step `T`.
    pub fn t_max(&self) -> usize {
        self.f.len() - 1
    }
}

/// `⌈log₂ N⌉`, the qubit count the model uses for any `N`.
pub fn model_bits(dim: usize) -> u32 {
    usize::BITS - (dim - 1).leading_zeros()
}

/// Evolves `|1⟩` one factored application per step.
pub fn fidelity_trace(dim: usize, spec: &PerturbationSpec, t_max: usize) -> Result<FidelityTrace> {
    if t_max < 1 {
        return Err(Error::Invalid("trace length T must be at least 1".into()));
    }
    let op = perturbed_factored(dim, spec)?;
    let order = build_shift(dim)?.order();
    let modulus = dim as u64 - 1;
    let mut state = StateVector::basis(dim, 1)?.into_amplitudes();
    let mut f = Vec::with_capacity(t_max + 1);
    f.push(1.0);
    for t in 1..=t_max {
        op.apply_in_place(&mut state)?;
        let label = mod_pow(2, t as u64, modulus)? as usize;
        f.push(state[label].norm_sqr());
    }
    let bits = model_bits(dim);
    let f_model = (0..=t_max)
        .map(|t| model_fidelity(spec.theta, bits, t))
        .collect();
    Ok(FidelityTrace {
        dim,
        spec: *spec,
        f,
        f_model,
        model_bits: bits,
        order,
        predicted_shoulder: order.predicted_shoulder(),
    })
}

/// `|cos²(rθ)|^{(r+1)M−t} · |cos²((r+1)θ)|^{t−rM}` with `r = ⌊t/M⌋`.
pub fn model_fidelity(theta: f64, bits: u32, t: usize) -> f64 {
    assert!(bits >= 1, "the model needs at least one bit");
    let m = bits as usize;
    let r = t / m;
    let c2 = |k: usize| (k as f64 * theta).cos().powi(2);
    c2(r).powi(((r + 1) * m - t) as i32) * c2(r + 1).powi((t - r * m) as i32)
}

/// Result of the interaction-picture cross-check.
#[derive(Clone, Debug, Serialize)]
pub struct InteractionCheck {
    /// `(t, |f_product(t) − f_trace(t)|)`.
    pub deviations: Vec<(usize, f64)>,
    /// `‖V_{k₀} − V‖_max`.
    pub period_deviation: f64,
    /// `‖V_{k₀/2} − R′⁻¹VR′‖_max` when `2^{k₀/2} ≡ −1`.
    pub half_period_deviation: Option<f64>,
}

/// Largest dimension for the dense interaction-picture products.
pub const INTERACTION_MAX_DIM: usize = 512;

/// Rebuilds `f(t) = |⟨1|V_t ⋯ V_1|1⟩|²` with `V_l = S^{−l} V S^l` and
/// compares against [`fidelity_trace`].
pub fn interaction_picture_check(
    dim: usize,
    spec: &PerturbationSpec,
    times: &[usize],
) -> Result<InteractionCheck> {
    if dim > INTERACTION_MAX_DIM {
        return Err(Error::CapExceeded {
            dim,
            cap: INTERACTION_MAX_DIM,
        });
    }
    let shift = build_shift(dim)?;
    let v = perturbation_operator(dim, spec)?;
    let t_max = times.iter().copied().max().unwrap_or(0);
    let trace = fidelity_trace(dim, spec, t_max.max(1))?;

    let mut state = StateVector::basis(dim, 1)?.into_amplitudes();
    let mut spread = vec![C64::new(0.0, 0.0); dim];
    let mut deviations = Vec::new();
    for l in 1..=t_max {
        // V_l x = S^{−l} V S^l x.
        let sigma = shift.power(l as u64);
        for (b, x) in state.iter().enumerate() {
            spread[sigma[b]] = *x;
        }
        let mixed = v.apply_slice(&spread);
        for (a, slot) in state.iter_mut().enumerate() {
            *slot = mixed[sigma[a]];
        }
        if times.contains(&l) {
            deviations.push((l, (state[1].norm_sqr() - trace.f[l]).abs()));
        }
    }
    if times.contains(&0) {
        deviations.insert(0, (0, (1.0 - trace.f[0]).abs()));
    }

    let order = shift.order();
    let period_deviation = interaction_operator(&v, &shift.power(order.order))?.max_abs_diff(&v);
    let half_period_deviation = if order.half_order_is_minus_one {
        let vt = interaction_operator(&v, &shift.power(order.order / 2))?;
        let conj = v.conjugate_by_permutation(&half_order_permutation(dim)?)?;
        Some(vt.max_abs_diff(&conj))
    } else {
        None
    };
    Ok(InteractionCheck {
        deviations,
        period_deviation,
        half_period_deviation,
    })
}

/// `S^{−l} V S^l` given the labels of `S^l`.
pub fn interaction_operator(v: &DenseOperator, shift_power: &[usize]) -> Result<DenseOperator> {
    v.conjugate_by_permutation(shift_power)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ShoulderKind {
    /// The exponential decay rate jumps up.
    Steepening,
    /// Decay turns into recovery.
    Recurrence,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Shoulder {
    pub time: usize,
    pub kind: ShoulderKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ShoulderOptions {
    /// Half-width of the local slope windows.
    pub window: usize,
    /// Minimum ratio of decay rates after/before a steepening.
    pub factor: f64,
}

impl Default for ShoulderOptions {
    fn default() -> Self {
        Self {
            window: 5,
            factor: 1.5,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ShoulderReport {
    /// Sorted by time.
    pub shoulders: Vec<Shoulder>,
    /// Set when the trace is shorter than two windows.
    pub too_short: bool,
}

impl ShoulderReport {
    pub fn times(&self) -> Vec<usize> {
        self.shoulders.iter().map(|s| s.time).collect()
    }

    pub fn first(&self) -> Option<usize> {
        self.shoulders.first().map(|s| s.time)
    }
}

const FLAT_SLOPE: f64 = 1e-9;

/// Least-squares slope of `y` over the integer points `a..=b`.
fn ls_slope(y: &[f64], a: usize, b: usize) -> f64 {
    let n = (b - a + 1) as f64;
    let mean_t = (a + b) as f64 / 2.0;
    let mean_y = y[a..=b].iter().sum::<f64>() / n;
    let (mut num, mut den) = (0.0, 0.0);
    for (t, v) in (a..=b).zip(&y[a..=b]) {
        let dt = t as f64 - mean_t;
        num += dt * (v - mean_y);
        den += dt * dt;
    }
    if den == 0.0 {
        0.0
    } else {
        num / den
    }
}

fn steepening_ratio(before: f64, after: f64) -> f64 {
    if before < -FLAT_SLOPE && after < -FLAT_SLOPE {
        after / before
    } else {
        0.0
    }
}

/// Finds times where the log-fidelity decay steepens or reverses.
///
/// Steepening candidates are local maxima of the ratio of least-squares
/// log-slopes on `[t−w, t]` and `[t, t+w]`. They are then merged bottom-up:
/// the candidate whose neighbouring segments have the smallest slope ratio
/// is dropped until every survivor steepens by at least `factor`.
/// Recurrences are local minima of `f` where a decay turns into growth.
pub fn detect_shoulders(f: &[f64], opts: ShoulderOptions) -> ShoulderReport {
    let w = opts.window.max(1);
    if f.len() < 2 * w + 2 {
        return ShoulderReport {
            shoulders: Vec::new(),
            too_short: true,
        };
    }
    let t_max = f.len() - 1;
    let lf: Vec<f64> = f.iter().map(|x| x.max(1e-300).ln()).collect();

    let mut ratio = vec![0.0; f.len()];
    let mut shoulders = Vec::new();
    for t in w..=t_max - w {
        let before = ls_slope(&lf, t - w, t);
        let after = ls_slope(&lf, t, t + w);
        ratio[t] = steepening_ratio(before, after);
        if before < -FLAT_SLOPE && after > FLAT_SLOPE && (t - w..=t + w).all(|u| f[t] <= f[u]) {
            shoulders.push(Shoulder {
                time: t,
                kind: ShoulderKind::Recurrence,
            });
        }
    }

    let mut candidates: Vec<usize> = (w..=t_max - w)
        .filter(|&t| {
            ratio[t] >= opts.factor
                && (t - w..t).all(|u| ratio[t] > ratio[u])
                && (t + 1..=(t + w).min(t_max)).all(|u| ratio[t] >= ratio[u])
        })
        .collect();

    loop {
        let mut weakest: Option<(usize, f64)> = None;
        for (i, &t) in candidates.iter().enumerate() {
            let lo = if i == 0 { 0 } else { candidates[i - 1] };
            let hi = candidates.get(i + 1).copied().unwrap_or(t_max);
            let q = steepening_ratio(ls_slope(&lf, lo, t), ls_slope(&lf, t, hi));
            if weakest.is_none_or(|(_, best)| q < best) {
                weakest = Some((i, q));
            }
        }
        match weakest {
            Some((i, q)) if q < opts.factor => {
                candidates.remove(i);
            }
            _ => break,
        }
    }

    shoulders.extend(candidates.into_iter().map(|time| Shoulder {
        time,
        kind: ShoulderKind::Steepening,
    }));
    shoulders.sort_by_key(|s| s.time);
    ShoulderReport {
        shoulders,
        too_short: false,
    }
}

/// Autocorrelation of the mean-removed series, normalized to 1 at lag 0,
/// each lag averaged over its `n − lag` overlapping pairs.
pub fn autocorrelation(series: &[f64], max_lag: usize) -> Vec<f64> {
    let n = series.len();
    if n == 0 {
        return Vec::new();
    }
    let mean = series.iter().sum::<f64>() / n as f64;
    let x: Vec<f64> = series.iter().map(|v| v - mean).collect();
    let raw: Vec<f64> = (0..=max_lag.min(n - 1))
        .map(|lag| {
            x[..n - lag]
                .iter()
                .zip(&x[lag..])
                .map(|(a, b)| a * b)
                .sum::<f64>()
                / (n - lag) as f64
        })
        .collect();
    let zero = raw[0];
    if zero == 0.0 {
        return vec![0.0; raw.len()];
    }
    raw.into_iter().map(|r| r / zero).collect()
}

/// First lag in `[min_lag, max_lag]` where the autocorrelation has a local
/// maximum.
pub fn first_autocorrelation_peak(series: &[f64], min_lag: usize, max_lag: usize) -> Option<usize> {
    let ac = autocorrelation(series, max_lag + 1);
    (min_lag.max(1)..ac.len().saturating_sub(1))
        .find(|&l| l <= max_lag && ac[l] > ac[l - 1] && ac[l] >= ac[l + 1])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Extremum {
    Min,
    Max,
}

/// Strict local extrema over `±window`, in time order.
pub fn turning_points(series: &[f64], window: usize) -> Vec<(usize, Extremum)> {
    let n = series.len();
    let mut out = Vec::new();
    for t in window..n.saturating_sub(window) {
        let neighbours = (t - window..=t + window).filter(|&u| u != t);
        if neighbours.clone().all(|u| series[t] > series[u]) {
            out.push((t, Extremum::Max));
        } else if neighbours.into_iter().all(|u| series[t] < series[u]) {
            out.push((t, Extremum::Min));
        }
    }
    out
}
