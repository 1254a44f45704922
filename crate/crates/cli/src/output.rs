use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use qcomplexity::QuadratureConfig;

use crate::error::{CliError, CliResult};
use crate::figure::FigureSpec;

/// Written next to every data file; enough to regenerate it.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub tool_version: String,
    pub wall_clock_seconds: f64,
    pub run: RunSpec,
    pub quadrature: QuadratureConfig,
    pub outputs: Vec<OutputRecord>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RunSpec {
    Figure(FigureSpec),
    PhaseDiffusionScan {
        concentration: f64,
        xi_stop: f64,
        xi_points: usize,
        slope_floor: f64,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OutputRecord {
    /// Relative to the manifest's directory.
    pub path: String,
    pub rows: usize,
    pub sha256: String,
}

/// A finished CSV held in memory until it is written.
#[derive(Debug, Clone)]
pub struct CsvTable {
    pub file_name: String,
    pub contents: String,
    pub rows: usize,
}

/// 17 significant digits, enough to round-trip an `f64`.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn csv_table(file_name: String, header: &str, rows: &[Vec<f64>]) -> CsvTable {
    let mut contents = String::with_capacity(48 * (rows.len() + 1));
    contents.push_str(header);
    contents.push('\n');
    for row in rows {
        let line: Vec<String> = row.iter().map(|&v| fmt_f64(v)).collect();
        let _ = writeln!(contents, "{}", line.join(","));
    }
    CsvTable {
        file_name,
        contents,
        rows: rows.len(),
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn record(table: &CsvTable) -> OutputRecord {
    OutputRecord {
        path: table.file_name.clone(),
        rows: table.rows,
        sha256: sha256_hex(table.contents.as_bytes()),
    }
}

pub fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(CliError::io(parent))?;
    }
    fs::write(path, contents).map_err(CliError::io(path))
}

/// Writes the tables and their manifest into `dir`; returns the manifest path.
pub fn write_run(
    dir: &Path,
    manifest_name: &str,
    command: &str,
    run: RunSpec,
    quadrature: QuadratureConfig,
    tables: &[CsvTable],
    elapsed: Duration,
) -> CliResult<PathBuf> {
    for t in tables {
        write_file(&dir.join(&t.file_name), &t.contents)?;
    }
    let manifest = RunManifest {
        command: command.to_string(),
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        wall_clock_seconds: elapsed.as_secs_f64(),
        run,
        quadrature,
        outputs: tables.iter().map(record).collect(),
    };
    let path = dir.join(manifest_name);
    write_file(&path, &to_toml(&manifest)?)?;
    Ok(path)
}

pub fn read_manifest(path: &Path) -> CliResult<RunManifest> {
    let text = fs::read_to_string(path).map_err(CliError::io(path))?;
    toml::from_str(&text).map_err(|e| CliError::Parse {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

pub fn to_toml<T: Serialize>(value: &T) -> CliResult<String> {
    toml::to_string_pretty(value).map_err(|e| CliError::Usage(format!("cannot render output: {e}")))
}
