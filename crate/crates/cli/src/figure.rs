//! Figure data: one CSV per curve plus a manifest holding the grid.

use std::path::Path;
use std::time::Instant;

use clap::ValueEnum;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use qcomplexity::nongaussian::{gamma_kappa, phase_diffused_complexity, photon_variant_complexity};
use qcomplexity::states::{PhotonVariant, PhotonVariantParams};
use qcomplexity::{Error, QuadratureConfig};

use crate::error::{CliError, CliResult};
use crate::output::{csv_table, write_run, CsvTable, RunSpec};

/// `(curve value, [(x, C)])`.
pub type Curve = (f64, Vec<(f64, f64)>);

/// Figure rows must respect the complexity lower bound to this slack.
const ROW_FLOOR: f64 = 1.0 - 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum FigureId {
    Fig1a,
    Fig1b,
    Fig2,
    Fig3a,
    Fig3b,
    Fig4a,
    Fig4b,
}

impl FigureId {
    pub const ALL: [FigureId; 7] = [
        FigureId::Fig1a,
        FigureId::Fig1b,
        FigureId::Fig2,
        FigureId::Fig3a,
        FigureId::Fig3b,
        FigureId::Fig4a,
        FigureId::Fig4b,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FigureId::Fig1a => "fig1a",
            FigureId::Fig1b => "fig1b",
            FigureId::Fig2 => "fig2",
            FigureId::Fig3a => "fig3a",
            FigureId::Fig3b => "fig3b",
            FigureId::Fig4a => "fig4a",
            FigureId::Fig4b => "fig4b",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Grid {
    Linear { start: f64, stop: f64, step: f64 },
    Log { start: f64, stop: f64, points: usize },
}

impl Grid {
    pub fn points(&self) -> CliResult<Vec<f64>> {
        match *self {
            Grid::Linear { start, stop, step } => {
                if !(step > 0.0) || !(stop >= start) {
                    return Err(CliError::Usage(format!("bad linear grid {start}..{stop} step {step}")));
                }
                let n = ((stop - start) / step + 1e-9).floor() as usize + 1;
                // index times step, so rounding does not accumulate
                Ok((0..n).map(|i| start + i as f64 * step).collect())
            }
            Grid::Log { start, stop, points } => {
                if !(start > 0.0) || !(stop > start) || points < 2 {
                    return Err(CliError::Usage(format!(
                        "bad log grid {start}..{stop} with {points} points"
                    )));
                }
                let (a, b) = (start.ln(), stop.ln());
                Ok((0..points)
                    .map(|i| {
                        if i == points - 1 {
                            stop
                        } else {
                            (a + (b - a) * i as f64 / (points - 1) as f64).exp()
                        }
                    })
                    .collect())
            }
        }
    }
}

/// What a figure sweeps and which curves it draws.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FigureSpec {
    pub id: FigureId,
    pub sweep: String,
    pub grid: Grid,
    pub curve_parameter: String,
    pub curve_values: Vec<f64>,
    /// Adds the `1 + γ_κ ξ⁴` column.
    pub reference: bool,
}

impl FigureSpec {
    pub fn default_for(id: FigureId) -> Self {
        let lin = |start, stop, step| Grid::Linear { start, stop, step };
        let log = Grid::Log {
            start: 0.1,
            stop: 10.0,
            points: 40,
        };
        let (sweep, grid, curve, values, reference) = match id {
            FigureId::Fig1a => ("xi", lin(0.0, 6.0, 0.1), "kappa", vec![0.001, 3.0, 10.0], false),
            FigureId::Fig1b => ("xi", lin(0.0, 0.5, 0.01), "kappa", vec![0.001, 3.0, 10.0], true),
            FigureId::Fig2 => ("neg_ln_kappa", lin(-3.0, 7.0, 0.25), "xi", vec![1.0, 2.0, 3.0], false),
            FigureId::Fig3a | FigureId::Fig4a => ("xi", lin(0.0, 3.0, 0.1), "nbar", vec![0.1, 1.0, 10.0], false),
            FigureId::Fig3b | FigureId::Fig4b => ("nbar", log, "xi", vec![0.1, 1.0, 3.0], false),
        };
        Self {
            id,
            sweep: sweep.into(),
            grid,
            curve_parameter: curve.into(),
            curve_values: values,
            reference,
        }
    }

    fn file_name(&self, value: f64) -> String {
        format!("{}_{}_{}.csv", self.id.name(), self.curve_parameter, value)
    }

    /// Complexity at sweep value `x` on the curve with parameter `v`.
    fn evaluate(&self, v: f64, x: f64, cfg: &QuadratureConfig) -> Result<f64, Error> {
        let photon = |variant, xi, n| photon_variant_complexity(PhotonVariantParams::new(variant, xi, n)?, cfg);
        match self.id {
            FigureId::Fig1a | FigureId::Fig1b => phase_diffused_complexity(v, x, 0.0, cfg),
            FigureId::Fig2 => phase_diffused_complexity((-x).exp(), v, 0.0, cfg),
            FigureId::Fig3a => photon(PhotonVariant::Added, x, v),
            FigureId::Fig3b => photon(PhotonVariant::Added, v, x),
            FigureId::Fig4a => photon(PhotonVariant::Subtracted, x, v),
            FigureId::Fig4b => photon(PhotonVariant::Subtracted, v, x),
        }
    }

    /// All curves, computed concurrently.
    pub fn curves(&self, cfg: &QuadratureConfig) -> CliResult<Vec<Curve>> {
        let xs = self.grid.points()?;
        let jobs: Vec<(usize, usize)> = (0..self.curve_values.len())
            .flat_map(|c| (0..xs.len()).map(move |i| (c, i)))
            .collect();
        let values = jobs
            .par_iter()
            .map(|&(c, i)| {
                let (v, x) = (self.curve_values[c], xs[i]);
                self.evaluate(v, x, cfg).map_err(|e| Error::Search {
                    param: "figure point",
                    value: x,
                    source: Box::new(e),
                })
            })
            .collect::<Result<Vec<f64>, Error>>()?;
        let mut out = Vec::with_capacity(self.curve_values.len());
        for (c, &v) in self.curve_values.iter().enumerate() {
            let ys = &values[c * xs.len()..(c + 1) * xs.len()];
            if let Some((i, y)) = ys.iter().enumerate().find(|(_, y)| **y < ROW_FLOOR) {
                return Err(CliError::Numerical(Error::Consistency(format!(
                    "{} curve {} = {v}: complexity {y} at {} = {} below 1",
                    self.id.name(),
                    self.curve_parameter,
                    self.sweep,
                    xs[i]
                ))));
            }
            out.push((v, xs.iter().copied().zip(ys.iter().copied()).collect()));
        }
        Ok(out)
    }

    pub fn tables(&self, cfg: &QuadratureConfig) -> CliResult<Vec<CsvTable>> {
        let curves = self.curves(cfg)?;
        curves
            .into_iter()
            .map(|(v, points)| {
                if self.reference {
                    let gamma = gamma_kappa(v)?.gamma;
                    let rows: Vec<Vec<f64>> = points
                        .iter()
                        .map(|&(x, y)| vec![x, y, 1.0 + gamma * x.powi(4)])
                        .collect();
                    Ok(csv_table(self.file_name(v), "param,complexity,reference", &rows))
                } else {
                    let rows: Vec<Vec<f64>> = points.iter().map(|&(x, y)| vec![x, y]).collect();
                    Ok(csv_table(self.file_name(v), "param,complexity", &rows))
                }
            })
            .collect()
    }
}

pub fn run_figure(id: FigureId, out_dir: &Path, cfg: &QuadratureConfig) -> CliResult<()> {
    let start = Instant::now();
    let spec = FigureSpec::default_for(id);
    let tables = spec.tables(cfg)?;
    let manifest = write_run(
        out_dir,
        &format!("{}.manifest.toml", id.name()),
        "figure",
        RunSpec::Figure(spec),
        *cfg,
        &tables,
        start.elapsed(),
    )?;
    for t in &tables {
        println!("wrote {} ({} rows)", out_dir.join(&t.file_name).display(), t.rows);
    }
    println!("manifest {}", manifest.display());
    Ok(())
}
