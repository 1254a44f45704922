//! `qcx`: phase-space complexity of single-mode states and channels.

mod channel;
mod error;
mod figure;
mod output;
mod state;
mod validate;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qcomplexity::QuadratureConfig;

use crate::channel::{phase_diffusion_scan, run_channel, ChannelCommand};
use crate::error::{CliError, CliResult};
use crate::figure::{run_figure, FigureId};
use crate::output::{read_manifest, sha256_hex, RunSpec};
use crate::state::{run_state, StateArgs};
use crate::validate::{run_validate, Suite};

#[derive(Debug, Parser)]
#[command(
    name = "qcx",
    version,
    about = "Husimi-function complexity of bosonic states and channels"
)]
struct Cli {
    #[command(flatten)]
    quadrature: QuadratureArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args)]
struct QuadratureArgs {
    /// Angular trapezoid nodes (even).
    #[arg(long, global = true, default_value_t = 256)]
    angular_nodes: usize,
    /// Gauss-Legendre panels in the radius.
    #[arg(long, global = true, default_value_t = 24)]
    radial_panels: usize,
    /// Nodes per radial panel.
    #[arg(long, global = true, default_value_t = 16)]
    radial_order: usize,
    /// Largest Q allowed on the outer ring.
    #[arg(long, global = true, default_value_t = 1e-12)]
    tail_tol: f64,
}

impl QuadratureArgs {
    fn config(&self) -> CliResult<QuadratureConfig> {
        let cfg = QuadratureConfig {
            angular_nodes: self.angular_nodes,
            radial_panel_order: self.radial_order,
            radial_panel_count: self.radial_panels,
            tail_tolerance: self.tail_tol,
            ..QuadratureConfig::default()
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Complexity of a single state.
    State(StateArgs),
    /// Supremum of the complexity over a channel's outputs.
    #[command(subcommand)]
    Channel(ChannelCommand),
    /// Regenerate figure data as CSV plus manifest.
    Figure {
        #[arg(value_parser = parse_figure_target)]
        target: FigureTarget,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Recompute the outputs named in a manifest and compare their hashes.
    Replay { manifest: PathBuf },
    /// Run a validation suite.
    Validate {
        #[arg(value_enum)]
        suite: Suite,
    },
}

#[derive(Debug, Clone, Copy)]
enum FigureTarget {
    One(FigureId),
    All,
}

fn parse_figure_target(s: &str) -> Result<FigureTarget, String> {
    if s == "all" {
        return Ok(FigureTarget::All);
    }
    FigureId::ALL
        .into_iter()
        .find(|id| id.name() == s)
        .map(FigureTarget::One)
        .ok_or_else(|| {
            let names: Vec<&str> = FigureId::ALL.iter().map(|id| id.name()).collect();
            format!("unknown figure {s}; expected one of {} or all", names.join(", "))
        })
}

fn replay(path: &Path) -> CliResult<()> {
    let manifest = read_manifest(path)?;
    manifest.quadrature.validate()?;
    let dir = path.parent().unwrap_or(Path::new("."));
    let tables = match &manifest.run {
        RunSpec::Figure(spec) => spec.tables(&manifest.quadrature)?,
        RunSpec::PhaseDiffusionScan {
            concentration,
            xi_stop,
            xi_points,
            slope_floor,
        } => vec![phase_diffusion_scan(*concentration, *xi_stop, *xi_points, *slope_floor, &manifest.quadrature)?.1],
    };
    let mut mismatches = 0;
    for rec in &manifest.outputs {
        let regenerated = tables
            .iter()
            .find(|t| t.file_name == rec.path)
            .map(|t| sha256_hex(t.contents.as_bytes()));
        let on_disk = fs::read(dir.join(&rec.path)).ok().map(|b| sha256_hex(&b));
        let ok = regenerated.as_deref() == Some(rec.sha256.as_str()) && on_disk.as_deref() == Some(rec.sha256.as_str());
        if !ok {
            mismatches += 1;
        }
        println!(
            "{} {}: recorded {} regenerated {} on disk {}",
            if ok { "MATCH" } else { "MISMATCH" },
            rec.path,
            rec.sha256,
            regenerated.as_deref().unwrap_or("missing"),
            on_disk.as_deref().unwrap_or("missing"),
        );
    }
    if tables.len() != manifest.outputs.len() {
        mismatches += 1;
        println!(
            "MISMATCH output count: recorded {} regenerated {}",
            manifest.outputs.len(),
            tables.len()
        );
    }
    if mismatches > 0 {
        return Err(CliError::Validation(mismatches));
    }
    Ok(())
}

fn run(cli: Cli) -> CliResult<()> {
    let cfg = cli.quadrature.config()?;
    match cli.command {
        Command::State(args) => run_state(&args, &cfg),
        Command::Channel(cmd) => run_channel(&cmd, &cfg),
        Command::Figure { target, out_dir } => match target {
            FigureTarget::One(id) => run_figure(id, &out_dir, &cfg),
            FigureTarget::All => FigureId::ALL
                .into_iter()
                .try_for_each(|id| run_figure(id, &out_dir, &cfg)),
        },
        Command::Replay { manifest } => replay(&manifest),
        Command::Validate { suite } => run_validate(suite, &cfg),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qcx: {e}");
            e.exit_code()
        }
    }
}
