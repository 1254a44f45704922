use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Subcommand};
use serde::Serialize;

use qcomplexity::gaussian::{channel_complexity_asymptotic, channel_complexity_at_t, GaussianChannelParams};
use qcomplexity::optimizer::{InputState, ReportDiagnostics};
use qcomplexity::states::PhotonVariant;
use qcomplexity::{channel_complexity, ChannelSpec, ComplexityReport, QuadratureConfig, SearchConfig};

use crate::error::CliResult;
use crate::output::{csv_table, to_toml, write_run, CsvTable, RunSpec};

#[derive(Debug, Clone, Subcommand)]
pub enum ChannelCommand {
    /// Diffusive Gaussian channel with unit damping; time enters as Γt.
    Gaussian {
        /// Bath photon number N.
        #[arg(long = "N")]
        n: f64,
        /// Bath squeezing |M|, with |M|^2 <= N(N+1).
        #[arg(long = "absM")]
        abs_m: f64,
        /// Γt; `inf` for the asymptotic channel.
        #[arg(long = "gammat", default_value = "inf")]
        gamma_t: f64,
    },
    /// Von Mises phase diffusion.
    PhaseDiffusion {
        #[arg(long)]
        kappa: f64,
        #[command(flatten)]
        scan: ScanArgs,
    },
    /// Heralded photon addition.
    PhotonAdded,
    /// Heralded photon subtraction.
    PhotonSubtracted,
}

#[derive(Debug, Clone, Args)]
pub struct ScanArgs {
    /// Largest displacement scanned.
    #[arg(long, default_value_t = 8.0)]
    pub xi_max: f64,
    #[arg(long, default_value_t = 33)]
    pub xi_points: usize,
    /// Endpoint slope above which the supremum is reported unbounded.
    #[arg(long, default_value_t = 0.05)]
    pub slope_floor: f64,
    /// Directory for the scan curve and its manifest.
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
}

#[derive(Debug, Serialize)]
struct ReportOutput {
    channel: String,
    /// `C(E_t)` for Gaussian channels.
    #[serde(skip_serializing_if = "Option::is_none")]
    complexity_at_t: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    complexity_asymptotic: Option<f64>,
    /// Number, or "unbounded".
    value: String,
    attained: bool,
    boundary_optimum: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    argmax: Option<InputState>,
    scan_parameter: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    curve_file: Option<String>,
    diagnostics: ReportDiagnostics,
}

impl ReportOutput {
    fn new(channel: &str, rep: ComplexityReport) -> Self {
        let value = match rep.finite_value() {
            Some(v) => format!("{v}"),
            None => "unbounded".into(),
        };
        Self {
            channel: channel.into(),
            complexity_at_t: None,
            complexity_asymptotic: None,
            value,
            attained: rep.attained,
            boundary_optimum: rep.boundary_optimum,
            argmax: rep.argmax,
            scan_parameter: rep.scan_parameter,
            curve_file: None,
            diagnostics: rep.diagnostics,
        }
    }
}

pub fn run_channel(cmd: &ChannelCommand, cfg: &QuadratureConfig) -> CliResult<()> {
    let search = SearchConfig {
        quadrature: *cfg,
        ..SearchConfig::default()
    };
    let out = match cmd {
        ChannelCommand::Gaussian { n, abs_m, gamma_t } => {
            // the core error already names the |M|^2 <= N(N+1) constraint
            let ch = GaussianChannelParams::with_real_squeezing(*n, *abs_m)?;
            let rep = channel_complexity(
                &ChannelSpec::Gaussian {
                    channel: ch,
                    time: *gamma_t,
                },
                &search,
            )?;
            let mut out = ReportOutput::new("gaussian", rep);
            out.complexity_at_t = Some(channel_complexity_at_t(&ch, *gamma_t)?);
            out.complexity_asymptotic = Some(channel_complexity_asymptotic(&ch));
            out
        }
        ChannelCommand::PhaseDiffusion { kappa, scan } => {
            let start = Instant::now();
            let (rep, table) = phase_diffusion_scan(*kappa, scan.xi_max, scan.xi_points, scan.slope_floor, cfg)?;
            let run = RunSpec::PhaseDiffusionScan {
                concentration: *kappa,
                xi_stop: scan.xi_max,
                xi_points: scan.xi_points,
                slope_floor: scan.slope_floor,
            };
            write_run(
                &scan.out_dir,
                &format!("phase_diffusion_kappa_{kappa}.manifest.toml"),
                "channel",
                run,
                *cfg,
                std::slice::from_ref(&table),
                start.elapsed(),
            )?;
            let mut out = ReportOutput::new("phase-diffusion", rep);
            out.curve_file = Some(scan.out_dir.join(&table.file_name).display().to_string());
            out
        }
        ChannelCommand::PhotonAdded => ReportOutput::new(
            "photon-added",
            channel_complexity(
                &ChannelSpec::Photon {
                    variant: PhotonVariant::Added,
                },
                &search,
            )?,
        ),
        ChannelCommand::PhotonSubtracted => ReportOutput::new(
            "photon-subtracted",
            channel_complexity(
                &ChannelSpec::Photon {
                    variant: PhotonVariant::Subtracted,
                },
                &search,
            )?,
        ),
    };
    print!("{}", to_toml(&out)?);
    Ok(())
}

/// The scan report and its curve as a CSV table.
pub fn phase_diffusion_scan(
    concentration: f64,
    xi_stop: f64,
    xi_points: usize,
    slope_floor: f64,
    cfg: &QuadratureConfig,
) -> CliResult<(ComplexityReport, CsvTable)> {
    let search = SearchConfig {
        xi_range: (0.0, xi_stop),
        xi_points,
        slope_floor,
        quadrature: *cfg,
        ..SearchConfig::default()
    };
    let rep = channel_complexity(&ChannelSpec::PhaseDiffusion { concentration }, &search)?;
    let rows: Vec<Vec<f64>> = rep.scan_curve.iter().map(|&(x, c)| vec![x, c]).collect();
    let table = csv_table(
        format!("phase_diffusion_kappa_{concentration}.csv"),
        "param,complexity",
        &rows,
    );
    Ok((rep, table))
}
