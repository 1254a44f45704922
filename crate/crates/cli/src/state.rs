use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use qcomplexity::fock::{complexity_from_fock, FockDensityMatrix};
use qcomplexity::functionals::QuadratureDiagnostics;
use qcomplexity::states::{
    purity_from_photons, q_gaussian, q_phase_diffused, q_photon_added, q_photon_subtracted, GaussianStateParams,
    PhaseDiffusionParams, PhotonVariantParams,
};
use qcomplexity::{complexity, ComplexityValue, QuadratureConfig};

use crate::error::{CliError, CliResult};
use crate::output::to_toml;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Gaussian,
    PhaseDiffused,
    PhotonAdded,
    PhotonSubtracted,
    FockFile,
}

#[derive(Debug, Clone, Args)]
pub struct StateArgs {
    pub family: Family,
    /// Displacement (real part for gaussian).
    #[arg(long, allow_hyphen_values = true)]
    pub xi: Option<f64>,
    /// Imaginary part of the displacement (gaussian only).
    #[arg(long, allow_hyphen_values = true)]
    pub xi_im: Option<f64>,
    #[arg(long)]
    pub nbar: Option<f64>,
    /// Purity; alternative to --nbar for gaussian.
    #[arg(long)]
    pub mu: Option<f64>,
    /// Squeezing strength.
    #[arg(long)]
    pub r: Option<f64>,
    /// Squeezing phase.
    #[arg(long, allow_hyphen_values = true)]
    pub theta: Option<f64>,
    #[arg(long)]
    pub kappa: Option<f64>,
    /// JSON density matrix for fock-file.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Serialize)]
struct StateOutput {
    family: String,
    parameters: BTreeMap<String, f64>,
    complexity: f64,
    wehrl_entropy: f64,
    fisher_information: f64,
    diagnostics: QuadratureDiagnostics,
}

/// `{"real": [[...]], "imag": [[...]]}`; `imag` may be omitted.
#[derive(Debug, Deserialize)]
struct FockFile {
    real: Vec<Vec<f64>>,
    #[serde(default)]
    imag: Option<Vec<Vec<f64>>>,
}

fn need(value: Option<f64>, flag: &str, family: &str) -> CliResult<f64> {
    value.ok_or_else(|| CliError::Usage(format!("{family} needs --{flag}")))
}

pub fn load_fock_file(path: &Path) -> CliResult<FockDensityMatrix> {
    let text = fs::read_to_string(path).map_err(CliError::io(path))?;
    let parse_err = |message: String| CliError::Parse {
        path: path.to_path_buf(),
        message,
    };
    let file: FockFile = serde_json::from_str(&text).map_err(|e| parse_err(e.to_string()))?;
    let dim = file.real.len();
    let imag = file.imag.unwrap_or_else(|| vec![vec![0.0; dim]; dim]);
    if imag.len() != dim || file.real.iter().chain(&imag).any(|row| row.len() != dim) {
        return Err(parse_err(format!("real and imag must both be {dim}x{dim}")));
    }
    let entries: Vec<Complex64> = file
        .real
        .iter()
        .zip(&imag)
        .flat_map(|(re, im)| re.iter().zip(im).map(|(&a, &b)| Complex64::new(a, b)))
        .collect();
    Ok(FockDensityMatrix::from_row_major(dim, &entries)?)
}

pub fn evaluate(args: &StateArgs, cfg: &QuadratureConfig) -> CliResult<(BTreeMap<String, f64>, ComplexityValue)> {
    let mut params = BTreeMap::new();
    let mut put = |k: &str, v: f64| {
        params.insert(k.to_string(), v);
        v
    };
    let value = match args.family {
        Family::Gaussian => {
            let xi = Complex64::new(
                put("xi", args.xi.unwrap_or(0.0)),
                put("xi_im", args.xi_im.unwrap_or(0.0)),
            );
            let mu = match (args.mu, args.nbar) {
                (Some(_), Some(_)) => return Err(CliError::Usage("give --mu or --nbar, not both".into())),
                (Some(mu), None) => mu,
                (None, Some(n)) => purity_from_photons(n)?,
                (None, None) => return Err(CliError::Usage("gaussian needs --mu or --nbar".into())),
            };
            let p = GaussianStateParams::new(
                xi,
                put("r", args.r.unwrap_or(0.0)),
                put("theta", args.theta.unwrap_or(0.0)),
                put("mu", mu),
            )?;
            complexity(&q_gaussian(p)?, cfg)?
        }
        Family::PhaseDiffused => {
            let p = PhaseDiffusionParams::new(
                put("kappa", need(args.kappa, "kappa", "phase-diffused")?),
                put("xi", need(args.xi, "xi", "phase-diffused")?),
                put("nbar", need(args.nbar, "nbar", "phase-diffused")?),
            )?;
            complexity(&q_phase_diffused(p)?, cfg)?
        }
        Family::PhotonAdded => {
            let p = PhotonVariantParams::added(
                put("xi", need(args.xi, "xi", "photon-added")?),
                put("nbar", need(args.nbar, "nbar", "photon-added")?),
            )?;
            complexity(&q_photon_added(p)?, cfg)?
        }
        Family::PhotonSubtracted => {
            let p = PhotonVariantParams::subtracted(
                put("xi", need(args.xi, "xi", "photon-subtracted")?),
                put("nbar", need(args.nbar, "nbar", "photon-subtracted")?),
            )?;
            complexity(&q_photon_subtracted(p)?, cfg)?
        }
        Family::FockFile => {
            let path = args
                .file
                .as_ref()
                .ok_or_else(|| CliError::Usage("fock-file needs --file".into()))?;
            let rho = load_fock_file(path)?;
            put("dimension", rho.dim() as f64);
            complexity_from_fock(&rho, cfg)?
        }
    };
    Ok((params, value))
}

pub fn run_state(args: &StateArgs, cfg: &QuadratureConfig) -> CliResult<()> {
    let (parameters, v) = evaluate(args, cfg)?;
    let out = StateOutput {
        family: args
            .family
            .to_possible_value()
            .map(|p| p.get_name().to_string())
            .unwrap_or_default(),
        parameters,
        complexity: v.complexity,
        wehrl_entropy: v.wehrl_entropy,
        fisher_information: v.fisher_information,
        diagnostics: v.diagnostics,
    };
    print!("{}", to_toml(&out)?);
    Ok(())
}
