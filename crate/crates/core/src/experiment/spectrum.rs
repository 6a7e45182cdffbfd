// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{validate_dim, write_json, Csv};
use crate::error::{Error, Result};
use crate::linalg::EigenSolver;
use crate::operators::{build_parity, build_perturbed, Pauli, PerturbationSpec};
use crate::spectral::{
    desymmetrize, histogram, spacing_sample_with, Reference, SampleSource, Sector, SpacingSample,
};

/// Spacings at or below this count as degenerate.
pub const DEGENERATE_SPACING: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SpectrumSource {
    Operator {
        dim: usize,
        theta: f64,
        alpha: f64,
        pauli: Pauli,
        sector: Sector,
    },
    Synthetic {
        reference: Reference,
        samples: usize,
        seed: u64,
    },
}

#[derive(Clone, Debug)]
pub struct SpectrumConfig {
    pub source: SpectrumSource,
    pub bins: usize,
    pub s_max: f64,
    pub cap: usize,
    pub out_dir: PathBuf,
}

impl SpectrumConfig {
    pub fn new(source: SpectrumSource, out_dir: impl Into<PathBuf>) -> Self {
        Self {
            source,
            bins: 40,
            s_max: 4.0,
            cap: EigenSolver::default().cap,
            out_dir: out_dir.into(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.bins < 4 {
            return Err(Error::Invalid(format!(
                "need at least 4 bins, got {}",
                self.bins
            )));
        }
        if !(self.s_max > 0.0 && self.s_max.is_finite()) {
            return Err(Error::OutOfDomain {
                value: self.s_max,
                domain: "positive finite s_max",
            });
        }
        match self.source {
            SpectrumSource::Operator {
                dim,
                theta,
                alpha,
                pauli,
                sector,
            } => {
                validate_dim(dim)?;
                PerturbationSpec::new(theta, alpha, pauli)?;
                let block = if sector == Sector::Full { dim } else { dim / 2 };
                if block > self.cap {
                    return Err(Error::CapExceeded {
                        dim: block,
                        cap: self.cap,
                    });
                }
            }
            SpectrumSource::Synthetic { samples, .. } => {
                if samples < 2 {
                    return Err(Error::Invalid("need at least 2 synthetic samples".into()));
                }
            }
        }
        Ok(())
    }

    fn stem(&self) -> String {
        match self.source {
            SpectrumSource::Operator { dim, sector, .. } => format!("spectrum_N{dim}_{sector}"),
            SpectrumSource::Synthetic {
                reference, seed, ..
            } => {
                let name = match reference {
                    Reference::Goe => "goe",
                    Reference::Poisson => "poisson",
                };
                format!("synthetic_{name}_seed{seed}")
            }
        }
    }

    fn describe(&self) -> String {
        let head = match self.source {
            SpectrumSource::Operator {
                dim,
                theta,
                alpha,
                pauli,
                sector,
            } => {
                format!("command=spectrum N={dim} theta={theta} alpha={alpha} pauli={pauli} sector={sector}")
            }
            SpectrumSource::Synthetic {
                reference,
                samples,
                seed,
            } => format!("command=spectrum synthetic={reference:?} samples={samples} seed={seed}")
                .to_lowercase(),
        };
        format!(
            "{head} bins={} s_max={} cap={}",
            self.bins, self.s_max, self.cap
        )
    }
}

/// KS summary written as `<stem>.json`.
#[derive(Clone, Debug, Serialize)]
pub struct SpectrumReport {
    pub source: SpectrumSource,
    pub count: usize,
    pub mean_spacing: f64,
    pub ks_goe: f64,
    pub ks_poisson: f64,
    pub fraction_below_0_1: f64,
    pub degenerate_fraction: f64,
    pub bins: usize,
    pub s_max: f64,
    pub overflow: usize,
    pub histogram_csv: String,
    pub spacings_csv: String,
}

fn sample(cfg: &SpectrumConfig) -> Result<SpacingSample> {
    match cfg.source {
        SpectrumSource::Operator {
            dim,
            theta,
            alpha,
            pauli,
            sector,
        } => {
            let spec = PerturbationSpec::new(theta, alpha, pauli)?;
            let u = build_perturbed(dim, &spec)?;
            let block = desymmetrize(&u, &build_parity(dim)?, sector)?;
            Ok(spacing_sample_with(&block, EigenSolver::with_cap(cfg.cap))?
                .labelled(SampleSource { dim, spec }, sector))
        }
        SpectrumSource::Synthetic {
            reference,
            samples,
            seed,
        } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Ok(SpacingSample::from_spacings(
                reference.sample(samples, &mut rng),
            ))
        }
    }
}

/// Writes `<stem>_histogram.csv`, `<stem>_spacings.csv` and `<stem>.json`.
pub fn cmd_spectrum(cfg: &SpectrumConfig) -> Result<(SpectrumReport, SpacingSample)> {
    cfg.validate()?;
    let sample = sample(cfg)?;
    let hist = histogram(&sample.spacings, cfg.bins, cfg.s_max)?;
    let stem = cfg.stem();
    let config = cfg.describe();

    let mut csv = Csv::new(&config, &["s", "density", "goe", "poisson", "count"]);
    for b in 0..cfg.bins {
        csv.row(&[
            hist.centers[b].to_string(),
            hist.density[b].to_string(),
            hist.goe[b].to_string(),
            hist.poisson[b].to_string(),
            hist.counts[b].to_string(),
        ]);
    }
    let histogram_csv = format!("{stem}_histogram.csv");
    csv.write(&cfg.out_dir.join(&histogram_csv))?;

    let mut raw = Csv::new(&config, &["index", "s"]);
    for (i, s) in sample.spacings.iter().enumerate() {
        raw.row(&[i.to_string(), s.to_string()]);
    }
    let spacings_csv = format!("{stem}_spacings.csv");
    raw.write(&cfg.out_dir.join(&spacings_csv))?;

    let report = SpectrumReport {
        source: cfg.source,
        count: sample.spacings.len(),
        mean_spacing: sample.mean(),
        ks_goe: sample.ks_goe,
        ks_poisson: sample.ks_poisson,
        fraction_below_0_1: sample.fraction_below(0.1),
        degenerate_fraction: sample
            .spacings
            .iter()
            .filter(|&&s| s <= DEGENERATE_SPACING)
            .count() as f64
            / sample.spacings.len() as f64,
        bins: cfg.bins,
        s_max: cfg.s_max,
        overflow: hist.overflow,
        histogram_csv,
        spacings_csv,
    };
    write_json(&cfg.out_dir.join(format!("{stem}.json")), &report)?;
    Ok((report, sample))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn operator(dim: usize, theta: f64, sector: Sector) -> SpectrumSource {
        SpectrumSource::Operator {
            dim,
            theta,
            alpha: 0.5,
            pauli: Pauli::X,
            sector,
        }
    }

    #[test]
    fn odd_sector_has_half_the_spacings() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = SpectrumConfig::new(operator(40, 0.3, Sector::Odd), dir.path());
        let (report, _) = cmd_spectrum(&cfg).unwrap();
        assert_eq!(report.count, 20);
        assert!((report.mean_spacing - 1.0).abs() < 1e-6);
        for name in [
            "spectrum_N40_odd.json",
            "spectrum_N40_odd_histogram.csv",
            "spectrum_N40_odd_spacings.csv",
        ] {
            assert!(dir.path().join(name).exists(), "{name}");
        }
    }

    #[test]
    fn cap_is_enforced_before_building() {
        let mut cfg = SpectrumConfig::new(operator(40, 0.3, Sector::Full), "unused");
        cfg.cap = 30;
        assert!(matches!(
            cfg.validate(),
            Err(Error::CapExceeded { dim: 40, cap: 30 })
        ));
        cfg.source = operator(40, 0.3, Sector::Even);
        assert!(cfg.validate().is_ok());
    }

    #[test]
    fn parity_breaking_perturbation_is_refused_in_a_sector() {
        let src = SpectrumSource::Operator {
            dim: 20,
            theta: 0.3,
            alpha: 0.0,
            pauli: Pauli::Y,
            sector: Sector::Even,
        };
        let cfg = SpectrumConfig::new(src, "unused");
        assert!(matches!(
            cmd_spectrum(&cfg),
            Err(Error::ParityBroken { .. })
        ));
    }

    #[test]
    fn synthetic_runs_are_reproducible() {
        let dir = tempfile::tempdir().unwrap();
        let src = SpectrumSource::Synthetic {
            reference: Reference::Goe,
            samples: 2000,
            seed: 11,
        };
        let cfg = SpectrumConfig::new(src, dir.path());
        let (a, _) = cmd_spectrum(&cfg).unwrap();
        let first = std::fs::read(dir.path().join("synthetic_goe_seed11_histogram.csv")).unwrap();
        let (b, _) = cmd_spectrum(&cfg).unwrap();
        assert_eq!(
            first,
            std::fs::read(dir.path().join("synthetic_goe_seed11_histogram.csv")).unwrap()
        );
        assert_eq!(a.ks_goe, b.ks_goe);
        assert!(a.ks_goe < a.ks_poisson);
    }
}
