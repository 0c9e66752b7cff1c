//! Atomic file output and the JSON sidecars describing each file.

use std::io::Write;
use std::path::{Path, PathBuf};

use apollonian::stats::Region;
use apollonian::HAUSDORFF_DIM;
use serde::Serialize;
use tempfile::NamedTempFile;

use crate::config::ExperimentConfig;
use crate::error::{CliError, Result};

pub fn ensure_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))
}

/// Writes through a temporary file in the same directory and renames it into
/// place, so readers never see a half-written file.
pub fn write_atomic<F>(path: &Path, fill: F) -> Result<()>
where
    F: FnOnce(&mut Vec<u8>) -> std::result::Result<(), Box<dyn std::error::Error>>,
{
    let dir = path
        .parent()
        .filter(|p| !p.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    let mut buf = Vec::new();
    fill(&mut buf).map_err(|e| CliError::io(path, std::io::Error::other(e.to_string())))?;
    let mut tmp = NamedTempFile::new_in(dir).map_err(|e| CliError::io(path, e))?;
    tmp.write_all(&buf).map_err(|e| CliError::io(path, e))?;
    tmp.as_file()
        .sync_all()
        .map_err(|e| CliError::io(path, e))?;
    tmp.persist(path).map_err(|e| CliError::io(path, e.error))?;
    Ok(())
}

/// Everything needed to rerun the computation behind one output file.
/// Deliberately free of timestamps and thread counts.
#[derive(Debug, Serialize)]
pub struct Metadata<'a> {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'a str,
    /// Tangency angles as multiples of π.
    pub theta1: f64,
    pub theta2: f64,
    pub bounds: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub region: Option<Region>,
    pub include_bounding: bool,
    pub deterministic: bool,
    pub s_max: f64,
    pub s_step: f64,
    pub delta: f64,
    pub hausdorff_dim: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_points: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<f64>,
}

impl<'a> Metadata<'a> {
    pub fn new(command: &'a str, config: &ExperimentConfig, bounds: Vec<f64>) -> Self {
        Metadata {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            command,
            theta1: config.theta.0,
            theta2: config.theta.1,
            bounds,
            region: None,
            include_bounding: config.include_bounding,
            deterministic: config.deterministic,
            s_max: config.s_max,
            s_step: config.s_step,
            delta: config.delta,
            hausdorff_dim: HAUSDORFF_DIM,
            n_points: None,
            s: None,
        }
    }

    pub fn region(mut self, region: Region) -> Self {
        self.region = Some(region);
        self
    }

    pub fn n_points(mut self, n: usize) -> Self {
        self.n_points = Some(n);
        self
    }

    pub fn s(mut self, s: f64) -> Self {
        self.s = Some(s);
        self
    }

    /// Writes `<csv path with .json extension>`.
    pub fn write_beside(&self, csv_path: &Path) -> Result<PathBuf> {
        let path = csv_path.with_extension("json");
        write_atomic(&path, |buf| {
            serde_json::to_writer_pretty(&mut *buf, self)?;
            buf.push(b'\n');
            Ok(())
        })?;
        Ok(path)
    }
}
