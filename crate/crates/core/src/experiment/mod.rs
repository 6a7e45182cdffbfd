// SPDX-License-Identifier: Apache-2.0

//! Reproducible experiments behind the `bakershift` binary: configs with
//! validation, CSV/JSON artifacts written atomically, and exit codes.

mod spectrum;
mod trace;
mod verify;

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numtheory::multiplicative_order;

pub use spectrum::{cmd_spectrum, SpectrumConfig, SpectrumReport, SpectrumSource};
pub use trace::{cmd_fidelity, FidelityConfig, FidelityRun, FidelitySidecar};
pub use verify::{cmd_verify, CheckResult, VerifyConfig, VerifyReport, VERIFY_TOL};

/// Process exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    VerificationFailed = 1,
    InvalidInput = 2,
}

impl ExitStatus {
    /// I/O and numerical breakdowns count as failures; everything else is a
    /// rejected input.
    pub fn for_error(err: &Error) -> Self {
        match err {
            Error::Io(_)
            | Error::Json(_)
            | Error::NoConvergence { .. }
            | Error::Residual { .. } => ExitStatus::VerificationFailed,
            _ => ExitStatus::InvalidInput,
        }
    }

    pub fn code(self) -> i32 {
        self as i32
    }
}

/// Even `N ≥ 4`.
pub fn validate_dim(dim: usize) -> Result<usize> {
    if dim < 4 || !dim.is_multiple_of(2) {
        return Err(Error::InvalidDimension {
            dim,
            reason: "N must be even and at least 4",
        });
    }
    Ok(dim)
}

/// Parses `"250,252"` or `"4..=16"` (even members only for ranges).
pub fn parse_dims(text: &str) -> Result<Vec<usize>> {
    let mut dims = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if let Some((lo, hi)) = part.split_once("..=") {
            let (lo, hi) = (parse_usize(lo)?, parse_usize(hi)?);
            dims.extend((lo..=hi).filter(|n| n % 2 == 0));
        } else {
            dims.push(parse_usize(part)?);
        }
    }
    if dims.is_empty() {
        return Err(Error::Invalid("empty N list".into()));
    }
    dims.into_iter().map(validate_dim).collect()
}

fn parse_usize(s: &str) -> Result<usize> {
    s.trim()
        .parse()
        .map_err(|_| Error::Invalid(format!("not a non-negative integer: {s:?}")))
}

/// Writes through a sibling temporary file and renames it into place.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    let name = path
        .file_name()
        .ok_or_else(|| Error::Invalid(format!("not a file path: {}", path.display())))?;
    let mut tmp_name = name.to_os_string();
    tmp_name.push(format!(".tmp-{}", std::process::id()));
    let tmp = path.with_file_name(tmp_name);
    fs::write(&tmp, contents)?;
    fs::rename(&tmp, path).inspect_err(|_| {
        let _ = fs::remove_file(&tmp);
    })?;
    Ok(())
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    write_atomic(path, text.as_bytes())
}

/// CSV text with a `#` config comment, a header and plain rows.
pub(crate) struct Csv {
    text: String,
}

impl Csv {
    pub(crate) fn new(config: &str, header: &[&str]) -> Self {
        let mut text = format!("# {config}\n");
        text.push_str(&header.join(","));
        text.push('\n');
        Self { text }
    }

    pub(crate) fn row(&mut self, cells: &[String]) {
        let _ = writeln!(self.text, "{}", cells.join(","));
    }

    pub(crate) fn write(&self, path: &Path) -> Result<()> {
        write_atomic(path, self.text.as_bytes())
    }
}

/// Printed by the `order` subcommand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OrderReport {
    pub modulus: u64,
    pub order: u64,
    pub half_order_is_minus_one: bool,
    pub predicted_shoulder: u64,
}

pub fn cmd_order(modulus: u64, out: Option<&Path>) -> Result<OrderReport> {
    let info = multiplicative_order(2, modulus)?;
    let report = OrderReport {
        modulus,
        order: info.order,
        half_order_is_minus_one: info.half_order_is_minus_one,
        predicted_shoulder: info.predicted_shoulder(),
    };
    if let Some(path) = out {
        write_json(path, &report)?;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dims_parse_lists_and_ranges() {
        assert_eq!(parse_dims("250, 252,254").unwrap(), vec![250, 252, 254]);
        assert_eq!(parse_dims("4..=10").unwrap(), vec![4, 6, 8, 10]);
        assert!(parse_dims("7").is_err());
        assert!(parse_dims("2").is_err());
        assert!(parse_dims("").is_err());
        assert!(parse_dims("x").is_err());
    }

    #[test]
    fn order_reports() {
        let r = cmd_order(253, None).unwrap();
        assert_eq!((r.order, r.predicted_shoulder), (110, 110));
        let r9 = cmd_order(9, None).unwrap();
        assert_eq!(
            (r9.order, r9.half_order_is_minus_one, r9.predicted_shoulder),
            (6, true, 3)
        );
        let err = cmd_order(250, None).unwrap_err();
        assert_eq!(ExitStatus::for_error(&err), ExitStatus::InvalidInput);
    }

    #[test]
    fn atomic_write_replaces_contents() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("nested/out.json");
        write_json(&path, &[1, 2]).unwrap();
        write_json(&path, &[3]).unwrap();
        assert_eq!(fs::read_to_string(&path).unwrap(), "[\n  3\n]\n");
        assert_eq!(fs::read_dir(path.parent().unwrap()).unwrap().count(), 1);
    }
}
