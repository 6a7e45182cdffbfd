// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;
use std::process::ExitCode;

use bakershift::experiment::{
    cmd_fidelity, cmd_order, cmd_spectrum, cmd_verify, parse_dims, ExitStatus, FidelityConfig,
    SpectrumConfig, SpectrumSource, VerifyConfig,
};
use bakershift::fidelity::ShoulderOptions;
use bakershift::spectral::{Reference, Sector};
use bakershift::{Pauli, Result};
use clap::{Parser, Subcommand};
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "bakershift",
    version,
    about = "Quantum shift operator experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the exact operator identities over a grid of dimensions.
    Verify {
        /// Comma list or `lo..=hi` range of even dimensions.
        #[arg(long = "N", default_value = "4..=256")]
        dims: String,
        /// Extra boundary phase on top of 0, 0.25 and 0.5.
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long, default_value_t = 0.3)]
        theta: f64,
        /// Corrupt one reference entry; the run must then fail.
        #[arg(long)]
        self_test_fault: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fidelity traces with shoulder detection, one CSV per dimension.
    Fidelity {
        #[arg(long = "N")]
        dims: String,
        #[arg(long, default_value_t = 0.05)]
        theta: f64,
        #[arg(long, default_value_t = 0.0)]
        alpha: f64,
        #[arg(long, default_value = "y")]
        pauli: Pauli,
        #[arg(long = "T")]
        t_max: Option<usize>,
        #[arg(long, default_value_t = 5)]
        window: usize,
        #[arg(long, default_value_t = 1.5)]
        factor: f64,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Eigenphase spacing histogram and KS distances.
    Spectrum {
        #[arg(long = "N", required_unless_present = "synthetic")]
        dim: Option<usize>,
        #[arg(long, default_value_t = 0.3)]
        theta: f64,
        #[arg(long, default_value_t = 0.5)]
        alpha: f64,
        #[arg(long, default_value = "x")]
        pauli: Pauli,
        #[arg(long, default_value = "even")]
        sector: Sector,
        #[arg(long, default_value_t = 40)]
        bins: usize,
        #[arg(long, default_value_t = 4.0)]
        s_max: f64,
        #[arg(long, default_value_t = 2048)]
        cap: usize,
        /// Draw from a reference law instead of diagonalizing.
        #[arg(long, conflicts_with = "dim")]
        synthetic: Option<Reference>,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Multiplicative order of 2 modulo an odd number.
    Order {
        modulus: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn print<T: Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn run(command: Command) -> Result<ExitStatus> {
    match command {
        Command::Verify {
            dims,
            alpha,
            theta,
            self_test_fault,
            out,
        } => {
            let cfg = VerifyConfig {
                dims: parse_dims(&dims)?,
                alpha,
                theta,
                self_test_fault,
                out,
            };
            let report = cmd_verify(&cfg)?;
            print(&report)?;
            Ok(if report.passed {
                ExitStatus::Success
            } else {
                ExitStatus::VerificationFailed
            })
        }
        Command::Fidelity {
            dims,
            theta,
            alpha,
            pauli,
            t_max,
            window,
            factor,
            out,
        } => {
            let mut cfg = FidelityConfig::new(parse_dims(&dims)?, theta, alpha, pauli, out);
            cfg.t_max = t_max;
            cfg.shoulders = ShoulderOptions { window, factor };
            let runs = cmd_fidelity(&cfg)?;
            print(&runs.iter().map(|r| &r.sidecar).collect::<Vec<_>>())?;
            Ok(ExitStatus::Success)
        }
        Command::Spectrum {
            dim,
            theta,
            alpha,
            pauli,
            sector,
            bins,
            s_max,
            cap,
            synthetic,
            samples,
            seed,
            out,
        } => {
            let source = match (synthetic, dim) {
                (Some(reference), _) => SpectrumSource::Synthetic {
                    reference,
                    samples,
                    seed,
                },
                (None, Some(dim)) => SpectrumSource::Operator {
                    dim,
                    theta,
                    alpha,
                    pauli,
                    sector,
                },
                (None, None) => unreachable!("clap requires --N without --synthetic"),
            };
            let cfg = SpectrumConfig {
                source,
                bins,
                s_max,
                cap,
                out_dir: out,
            };
            print(&cmd_spectrum(&cfg)?.0)?;
            Ok(ExitStatus::Success)
        }
        Command::Order { modulus, out } => {
            print(&cmd_order(modulus, out.as_deref())?)?;
            Ok(ExitStatus::Success)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let status = run(cli.command).unwrap_or_else(|err| {
        eprintln!("error: {err}");
        ExitStatus::for_error(&err)
    });
    ExitCode::from(status.code() as u8)
}
