use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::gauss_legendre;
use crate::error::{domain, Error, Result};
use crate::functionals::QField;

/// Below this value a node contributes nothing to the Fisher integrand.
pub const FISHER_FLOOR: f64 = 1e-300;

const MAX_EXTENSIONS: usize = 64;
const GRADED_LEVELS: usize = 4;

/// How the radial cutoff of the polar grid is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RMaxPolicy {
    /// Start at `reach + sigmas * sqrt(scale)` and extend by two standard
    /// deviations until the tail estimate drops below the tolerance.
    Adaptive { sigmas: f64 },
    /// Fixed cutoff radius around the field center; no tail check.
    Fixed { radius: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    pub angular_nodes: usize,
    pub radial_panel_order: usize,
    pub radial_panel_count: usize,
    pub tail_tolerance: f64,
    pub r_max_policy: RMaxPolicy,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            angular_nodes: 256,
            radial_panel_order: 16,
            radial_panel_count: 24,
            tail_tolerance: 1e-12,
            r_max_policy: RMaxPolicy::Adaptive { sigmas: 8.0 },
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if self.angular_nodes < 8 || !self.angular_nodes.is_multiple_of(2) {
            return domain(format!(
                "angular_nodes must be even and >= 8, got {}",
                self.angular_nodes
            ));
        }
        if self.radial_panel_order < 4 {
            return domain(format!(
                "radial_panel_order must be >= 4, got {}",
                self.radial_panel_order
            ));
        }
        if self.radial_panel_count == 0 {
            return domain("radial_panel_count must be positive");
        }
        if !(self.tail_tolerance > 0.0) {
            return domain(format!("tail_tolerance must be > 0, got {}", self.tail_tolerance));
        }
        match self.r_max_policy {
            RMaxPolicy::Adaptive { sigmas } if !(sigmas > 0.0) => {
                domain(format!("adaptive r_max needs sigmas > 0, got {sigmas}"))
            }
            RMaxPolicy::Fixed { radius } if !(radius > 0.0) => domain(format!("fixed r_max must be > 0, got {radius}")),
            _ => Ok(()),
        }
    }

    /// The same rule with angular nodes and radial panels doubled.
    pub fn refined(&self) -> Self {
        Self {
            angular_nodes: self.angular_nodes * 2,
            radial_panel_count: self.radial_panel_count * 2,
            ..*self
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IntegrandKind {
    /// `Q`
    Normalization,
    /// `-Q ln Q`
    Wehrl,
    /// `|grad Q|^2 / (4 Q)`
    Fisher,
}

/// All three phase-plane integrals from one pass over the grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseIntegrals {
    pub normalization: f64,
    pub wehrl: f64,
    pub fisher: f64,
    pub r_max: f64,
    pub node_count: usize,
    /// Tail estimate at `r_max`; zero under a fixed cutoff.
    pub tail_estimate: f64,
}

impl PhaseIntegrals {
    pub fn get(&self, kind: IntegrandKind) -> f64 {
        match kind {
            IntegrandKind::Normalization => self.normalization,
            IntegrandKind::Wehrl => self.wehrl,
            IntegrandKind::Fisher => self.fisher,
        }
    }
}

/// `∫ f(α) d²α/π` over the disc of radius `r_max` about the field center.
pub fn integrate_phase_plane(field: &dyn QField, config: &QuadratureConfig, kind: IntegrandKind) -> Result<f64> {
    integrate_all(field, config).map(|r| r.get(kind))
}

pub fn integrate_all(field: &dyn QField, config: &QuadratureConfig) -> Result<PhaseIntegrals> {
    config.validate()?;
    let (r_max, tail_estimate) = choose_r_max(field, config)?;
    let radial = radial_rule(config, r_max);
    let angles = angular_rule(config.angular_nodes);
    let center = field.center();

    // ring sums are collected in radial order and reduced sequentially, so
    // the result does not depend on the thread schedule
    let rings: Vec<[f64; 3]> = radial
        .par_iter()
        .map(|&(rho, weight)| -> Result<[f64; 3]> {
            let mut acc = [0.0; 3];
            for &(c, s) in &angles {
                let alpha = center + Complex64::new(rho * c, rho * s);
                let [q, w, f] = integrands(field, alpha)?;
                acc[0] += q;
                acc[1] += w;
                acc[2] += f;
            }
            let jac = weight * rho * 2.0 / angles.len() as f64;
            Ok([acc[0] * jac, acc[1] * jac, acc[2] * jac])
        })
        .collect::<Result<_>>()?;

    let mut total = [0.0; 3];
    for ring in &rings {
        for (t, v) in total.iter_mut().zip(ring) {
            *t += v;
        }
    }
    Ok(PhaseIntegrals {
        normalization: total[0],
        wehrl: total[1],
        fisher: total[2],
        r_max,
        node_count: radial.len() * angles.len(),
        tail_estimate,
    })
}

fn integrands(field: &dyn QField, alpha: Complex64) -> Result<[f64; 3]> {
    let (q, g) = field.value_and_gradient(alpha);
    if !q.is_finite() {
        return Err(Error::Evaluation {
            point: alpha,
            what: "Q value",
        });
    }
    if !(g[0].is_finite() && g[1].is_finite()) {
        return Err(Error::Evaluation {
            point: alpha,
            what: "Q gradient",
        });
    }
    let entropy = if q > 0.0 { -q * q.ln() } else { 0.0 };
    let fisher = if q >= FISHER_FLOOR {
        0.25 * (g[0] * g[0] + g[1] * g[1]) / q
    } else {
        0.0
    };
    Ok([q, entropy, fisher])
}

fn angular_rule(n: usize) -> Vec<(f64, f64)> {
    (0..n)
        .map(|j| {
            let phi = 2.0 * std::f64::consts::PI * j as f64 / n as f64;
            (phi.cos(), phi.sin())
        })
        .collect()
}

/// Panelled Gauss–Legendre nodes on `[0, r_max]`; the innermost panel is
/// split geometrically so that zeros of `Q` at the center are resolved.
fn radial_rule(config: &QuadratureConfig, r_max: f64) -> Vec<(f64, f64)> {
    let (x, w) = gauss_legendre::nodes_and_weights(config.radial_panel_order);
    let h = r_max / config.radial_panel_count as f64;
    let mut edges = vec![0.0];
    for level in (1..=GRADED_LEVELS).rev() {
        edges.push(h / f64::from(1u32 << level));
    }
    edges.extend((1..=config.radial_panel_count).map(|i| h * i as f64));

    let mut rule = Vec::with_capacity((edges.len() - 1) * x.len());
    for pair in edges.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        rule.extend(x.iter().zip(&w).map(|(xi, wi)| (mid + half * xi, half * wi)));
    }
    rule
}

fn choose_r_max(field: &dyn QField, config: &QuadratureConfig) -> Result<(f64, f64)> {
    let sigma = field.scale().sqrt();
    if !(sigma > 0.0 && sigma.is_finite()) {
        return domain(format!("field scale must be positive, got {}", field.scale()));
    }
    match config.r_max_policy {
        RMaxPolicy::Fixed { radius } => Ok((radius, 0.0)),
        RMaxPolicy::Adaptive { sigmas } => {
            let mut r = field.reach() + sigmas * sigma;
            for _ in 0..MAX_EXTENSIONS {
                let tail = tail_estimate(field, config.angular_nodes, r, sigma)?;
                if tail <= config.tail_tolerance {
                    return Ok((r, tail));
                }
                r += 2.0 * sigma;
            }
            Err(Error::Quadrature(format!(
                "tail above {} after extending r_max to {r}",
                config.tail_tolerance
            )))
        }
    }
}

/// Ring average at radius `r`, times a Gaussian decay length, for each integrand.
fn tail_estimate(field: &dyn QField, angular_nodes: usize, r: f64, sigma: f64) -> Result<f64> {
    let center = field.center();
    let angles = angular_rule(angular_nodes);
    let mut acc = [0.0_f64; 3];
    for &(c, s) in &angles {
        let [q, w, f] = integrands(field, center + Complex64::new(r * c, r * s))?;
        acc[0] += q.abs();
        acc[1] += w.abs();
        acc[2] += f;
    }
    let decay = sigma * sigma / (r - field.reach()).max(sigma);
    let worst = acc.iter().fold(0.0_f64, |m, v| m.max(*v)) / angles.len() as f64;
    Ok(2.0 * r * worst * decay)
}
