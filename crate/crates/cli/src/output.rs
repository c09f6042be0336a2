//! CSV curves and the per-run manifest.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::config::ScenarioConfig;
use crate::error::{CliError, Result};

/// 17 significant digits, enough to round-trip any `f64`.
pub fn format_value(x: f64) -> String {
    format!("{x:.16e}")
}

/// Compact label for a coupling inside a file name (`2.5` → `2.5`, `10` → `10`).
pub fn label(x: f64) -> String {
    format!("{x}")
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Curve {
    pub file: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Curve {
    pub fn new(file: impl Into<String>, header: &[&str]) -> Self {
        Self { file: file.into(), header: header.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let idx = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[idx]).collect())
    }

    pub fn write(&self, dir: &Path) -> Result<PathBuf> {
        let path = dir.join(&self.file);
        let io = |source| CliError::Io { path: path.display().to_string(), source };
        let mut writer = csv::Writer::from_path(&path).map_err(|e| io(e.into()))?;
        writer.write_record(&self.header).map_err(|e| io(e.into()))?;
        for row in &self.rows {
            writer.write_record(row.iter().map(|&x| format_value(x))).map_err(|e| io(e.into()))?;
        }
        writer.flush().map_err(io)?;
        Ok(path)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FileEntry {
    pub file: String,
    pub columns: Vec<String>,
    pub rows: usize,
}

/// Everything needed to reproduce a run. No timestamps or host details, so
/// repeated runs give identical manifests too.
#[derive(Debug, Clone, Serialize)]
pub struct Manifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub core_version: &'static str,
    pub config: ScenarioConfig,
    pub method: Method,
    pub diagnostics: Diagnostics,
    pub notes: Vec<String>,
    pub files: Vec<FileEntry>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Method {
    pub propagator: &'static str,
    pub speed_limit: &'static str,
}

#[derive(Debug, Clone, Copy, Default, Serialize)]
pub struct Diagnostics {
    /// Largest `|‖ψ_t‖² − ‖ψ₀‖²|` over every recorded sample of every trajectory.
    pub max_norm_drift: f64,
    pub trajectories: usize,
}

impl Manifest {
    pub fn write(&self, dir: &Path) -> Result<PathBuf> {
        let path = dir.join("manifest.json");
        let text = serde_json::to_string_pretty(self).expect("manifest is plain data");
        fs::write(&path, text + "\n").map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
        Ok(path)
    }
}
