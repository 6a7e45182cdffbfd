// SPDX-License-Identifier: Apache-2.0

//! Nearest-neighbour spacing statistics of eigenphases.
//!
//! Unitary spectra have uniform mean density on the circle, so unfolding is
//! the linear rescaling `s = Δφ · d / 2π`; the wraparound gap is included so
//! a `d`-dimensional block yields `d` spacings with mean exactly 1.

use std::f64::consts::{PI, TAU};

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{DenseOperator, EigenSolver, C64};
use crate::operators::PerturbationSpec;

/// Largest commutator with the parity accepted by [`desymmetrize`].
pub const PARITY_TOL: f64 = 1e-10;

/// Parity block of the spectrum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sector {
    Even,
    Odd,
    Full,
}

impl std::str::FromStr for Sector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "even" | "+" => Ok(Sector::Even),
            "odd" | "-" => Ok(Sector::Odd),
            "full" | "all" => Ok(Sector::Full),
            other => Err(Error::Invalid(format!("unknown sector {other:?}"))),
        }
    }
}

impl std::fmt::Display for Sector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Sector::Even => "even",
            Sector::Odd => "odd",
            Sector::Full => "full",
        })
    }
}

/// `‖uR − Ru‖_max` for a permutation parity `ρ`.
pub fn parity_commutator(u: &DenseOperator, rho: &[usize]) -> f64 {
    let n = u.dim();
    let mut worst = 0.0_f64;
    for a in 0..n {
        for b in 0..n {
            worst = worst.max((u.get(a, rho[b]) - u.get(rho[a], b)).norm());
        }
    }
    worst
}

/// Restricts `u` to one parity sector in the basis
/// `e_n^± = (|n⟩ ± |ρ(n)⟩)/√2`, `n < ρ(n)` in increasing order.
pub fn desymmetrize(
    u: &DenseOperator,
    parity: &DenseOperator,
    sector: Sector,
) -> Result<DenseOperator> {
    if u.dim() != parity.dim() {
        return Err(Error::DimensionMismatch {
            expected: u.dim(),
            got: parity.dim(),
        });
    }
    if sector == Sector::Full {
        return Ok(u.clone());
    }
    let rho = parity.as_permutation().ok_or(Error::NotInvolution)?;
    if rho.iter().enumerate().any(|(n, &r)| r == n || rho[r] != n) {
        return Err(Error::NotInvolution);
    }
    let commutator = parity_commutator(u, &rho);
    if commutator > PARITY_TOL {
        return Err(Error::ParityBroken { commutator });
    }
    let sign = if sector == Sector::Even { 1.0 } else { -1.0 };
    let reps: Vec<usize> = (0..rho.len()).filter(|&n| n < rho[n]).collect();
    let block = DenseOperator::from_fn(reps.len(), |i, j| {
        let (m, n) = (reps[i], reps[j]);
        let (pm, pn) = (rho[m], rho[n]);
        (u.get(m, n) + (u.get(m, pn) + u.get(pm, n)) * sign + u.get(pm, pn)) * 0.5
    })?;
    block.check_unitary(1e-9)
}

/// Where a spacing sample came from.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SampleSource {
    pub dim: usize,
    pub spec: PerturbationSpec,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpacingSample {
    pub source: Option<SampleSource>,
    pub subspace: Sector,
    /// In eigenphase order, mean 1.
    pub spacings: Vec<f64>,
    pub ks_goe: f64,
    pub ks_poisson: f64,
}

impl SpacingSample {
    pub fn from_spacings(spacings: Vec<f64>) -> Self {
        let ks_goe = ks_distance(&spacings, goe_cdf);
        let ks_poisson = ks_distance(&spacings, poisson_cdf);
        Self {
            source: None,
            subspace: Sector::Full,
            spacings,
            ks_goe,
            ks_poisson,
        }
    }

    pub fn labelled(mut self, source: SampleSource, subspace: Sector) -> Self {
        self.source = Some(source);
        self.subspace = subspace;
        self
    }

    pub fn mean(&self) -> f64 {
        self.spacings.iter().sum::<f64>() / self.spacings.len() as f64
    }

    /// Fraction of spacings strictly below `s`.
    pub fn fraction_below(&self, s: f64) -> f64 {
        self.spacings.iter().filter(|&&x| x < s).count() as f64 / self.spacings.len() as f64
    }
}

/// Unfolded circular spacings of eigenphases in `[0, 2π)`.
pub fn unfolded_spacings(phases: &[f64]) -> Vec<f64> {
    let d = phases.len();
    let mut sorted = phases.to_vec();
    sorted.sort_by(f64::total_cmp);
    let scale = d as f64 / TAU;
    let mut out: Vec<f64> = sorted.windows(2).map(|w| (w[1] - w[0]) * scale).collect();
    if let (Some(first), Some(last)) = (sorted.first(), sorted.last()) {
        out.push((first + TAU - last) * scale);
    }
    out
}

/// Spacing sample of a unitary block with the default solver.
pub fn spacing_sample(u_sub: &DenseOperator) -> Result<SpacingSample> {
    spacing_sample_with(u_sub, EigenSolver::default())
}

pub fn spacing_sample_with(u_sub: &DenseOperator, solver: EigenSolver) -> Result<SpacingSample> {
    let phases: Vec<f64> = solver.eigenphases(u_sub)?.iter().map(|e| e.phase).collect();
    Ok(SpacingSample::from_spacings(unfolded_spacings(&phases)))
}

/// Wigner surmise for the orthogonal ensemble, `(πs/2) e^{−πs²/4}`.
pub fn goe_pdf(s: f64) -> f64 {
    if s < 0.0 {
        0.0
    } else {
        PI * s / 2.0 * (-PI * s * s / 4.0).exp()
    }
}

pub fn goe_cdf(s: f64) -> f64 {
    if s <= 0.0 {
        0.0
    } else {
        -(-PI * s * s / 4.0).exp_m1()
    }
}

pub fn poisson_pdf(s: f64) -> f64 {
    if s < 0.0 {
        0.0
    } else {
        (-s).exp()
    }
}

pub fn poisson_cdf(s: f64) -> f64 {
    if s <= 0.0 {
        0.0
    } else {
        -(-s).exp_m1()
    }
}

/// One-sample Kolmogorov–Smirnov distance `sup |F_n − F|`.
pub fn ks_distance(sample: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let mut sorted = sample.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    sorted
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let c = cdf(x);
            ((i + 1) as f64 / n - c).max(c - i as f64 / n)
        })
        .fold(0.0, f64::max)
}

/// Reference spacing laws with closed-form inverse CDFs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Reference {
    Goe,
    Poisson,
}

impl std::str::FromStr for Reference {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "goe" | "wigner" => Ok(Reference::Goe),
            "poisson" => Ok(Reference::Poisson),
            other => Err(Error::Invalid(format!(
                "unknown reference distribution {other:?}"
            ))),
        }
    }
}

impl Reference {
    /// Inverse-CDF draw from `u ∈ [0, 1)`.
    pub fn quantile(self, u: f64) -> f64 {
        match self {
            Reference::Goe => (-4.0 / PI * (-u).ln_1p()).sqrt(),
            Reference::Poisson => -(-u).ln_1p(),
        }
    }

    pub fn sample(self, count: usize, rng: &mut impl Rng) -> Vec<f64> {
        (0..count)
            .map(|_| self.quantile(rng.random::<f64>()))
            .collect()
    }
}

/// Density histogram over `[0, s_max)` with reference curves at the bin
/// centres. Normalized over the in-range samples; `overflow` counts the rest.
#[derive(Clone, Debug, Serialize)]
pub struct Histogram {
    pub bin_width: f64,
    pub centers: Vec<f64>,
    pub counts: Vec<usize>,
    pub density: Vec<f64>,
    pub goe: Vec<f64>,
    pub poisson: Vec<f64>,
    pub overflow: usize,
}

pub fn histogram(spacings: &[f64], bins: usize, s_max: f64) -> Result<Histogram> {
    if bins < 4 {
        return Err(Error::Invalid(format!("need at least 4 bins, got {bins}")));
    }
    if spacings.is_empty() {
        return Err(Error::Invalid("empty spacing sample".into()));
    }
    if !(s_max > 0.0 && s_max.is_finite()) {
        return Err(Error::OutOfDomain {
            value: s_max,
            domain: "positive finite s_max",
        });
    }
    let width = s_max / bins as f64;
    let mut counts = vec![0usize; bins];
    let mut overflow = 0;
    for &s in spacings {
        let b = (s / width).floor();
        if s >= 0.0 && (b as usize) < bins {
            counts[b as usize] += 1;
        } else {
            overflow += 1;
        }
    }
    let inside = (spacings.len() - overflow).max(1) as f64;
    let centers: Vec<f64> = (0..bins).map(|b| (b as f64 + 0.5) * width).collect();
    Ok(Histogram {
        bin_width: width,
        density: counts
            .iter()
            .map(|&c| c as f64 / (inside * width))
            .collect(),
        goe: centers.iter().map(|&s| goe_pdf(s)).collect(),
        poisson: centers.iter().map(|&s| poisson_pdf(s)).collect(),
        centers,
        counts,
        overflow,
    })
}

/// Phases `e^{iφ}` of a list, for trace comparisons.
pub fn phase_sum(phases: &[f64]) -> C64 {
    phases.iter().map(|&p| C64::from_polar(1.0, p)).sum()
}
