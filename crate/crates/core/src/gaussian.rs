//! Closed-form results for the single-mode diffusive Gaussian channel with
//! damping `Γ`, bath photon number `N` and bath squeezing `M`.
//!
//! The master equation is never integrated; the evolution is carried by its
//! solved parametrisation in terms of the asymptotic state `(μ∞, r∞, θ∞)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// Relative slack allowed on `|M|² <= N(N+1)` to absorb rounding in `|M|`.
const CONSTRAINT_SLACK: f64 = 1e-12;

/// Validated on construction; `|M|² <= N(N+1)` and `Γ > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GaussianChannelParams {
    damping: f64,
    bath_photons: f64,
    bath_squeezing: Complex64,
}

impl GaussianChannelParams {
    pub fn new(damping: f64, bath_photons: f64, bath_squeezing: Complex64) -> Result<Self> {
        if !(damping > 0.0) || !damping.is_finite() {
            return domain(format!("damping must be positive, got {damping}"));
        }
        if !(bath_photons >= 0.0) || !bath_photons.is_finite() {
            return domain(format!("bath photon number must be >= 0, got {bath_photons}"));
        }
        let bound = bath_photons * (bath_photons + 1.0);
        let m2 = bath_squeezing.norm_sqr();
        if !m2.is_finite() || m2 > bound + CONSTRAINT_SLACK * (1.0 + bound) {
            return domain(format!(
                "bath squeezing violates |M|^2 <= N(N+1): |M|^2 = {m2}, N(N+1) = {bound}"
            ));
        }
        Ok(Self {
            damping,
            bath_photons,
            bath_squeezing,
        })
    }

    /// Unit damping and real non-negative `M`; time enters only through `Γt`.
    pub fn with_real_squeezing(bath_photons: f64, abs_m: f64) -> Result<Self> {
        Self::new(1.0, bath_photons, Complex64::new(abs_m, 0.0))
    }

    pub fn damping(&self) -> f64 {
        self.damping
    }

    pub fn bath_photons(&self) -> f64 {
        self.bath_photons
    }

    pub fn bath_squeezing(&self) -> Complex64 {
        self.bath_squeezing
    }

    pub fn abs_m(&self) -> f64 {
        // clip the rounding slack accepted by the constructor
        let n = self.bath_photons;
        self.bath_squeezing.norm().min((n * (n + 1.0)).sqrt())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticState {
    pub purity: f64,
    pub squeezing: f64,
    pub squeezing_phase: f64,
}

impl AsymptoticState {
    pub fn cosh_2r(&self) -> f64 {
        (2.0 * self.squeezing).cosh()
    }
}

pub fn asymptotic_state(ch: &GaussianChannelParams) -> AsymptoticState {
    let two_n1 = 2.0 * ch.bath_photons + 1.0;
    let m = ch.abs_m();
    let det = (two_n1 * two_n1 - 4.0 * m * m).max(1.0);
    let cosh_2r = (1.0 + 4.0 * m * m / det).sqrt();
    let phase = if m == 0.0 {
        0.0
    } else {
        ch.bath_squeezing.arg().rem_euclid(2.0 * PI)
    };
    AsymptoticState {
        purity: (1.0 / det.sqrt()).min(1.0),
        squeezing: 0.5 * cosh_2r.max(1.0).acosh(),
        squeezing_phase: phase,
    }
}

/// `(μ(t), r(t))` for an initial displaced thermal state of purity `μ₀`.
pub fn evolve_purity_squeezing(initial_purity: f64, t: f64, ch: &GaussianChannelParams) -> Result<(f64, f64)> {
    if !(initial_purity > 0.0 && initial_purity <= 1.0) {
        return domain(format!("initial purity must lie in (0, 1], got {initial_purity}"));
    }
    if !(t >= 0.0) {
        return domain(format!("time must be >= 0, got {t}"));
    }
    let inf = asymptotic_state(ch);
    let mu0 = initial_purity;
    let e = (-ch.damping * t).exp();
    let ratio = mu0 / inf.purity;
    let c_inf = inf.cosh_2r();
    let bracket = ratio * ratio * (1.0 - e) * (1.0 - e) + e * e + 2.0 * ratio * c_inf * (1.0 - e) * e;
    let mu = mu0 / bracket.sqrt();
    let cosh_2r = mu * (e / mu0 + (1.0 - e) * c_inf / inf.purity);
    // roundoff can leave cosh slightly below one
    let r = 0.5 * cosh_2r.max(1.0).acosh();
    Ok((mu, r))
}

/// `C(E_t) = 1 / sqrt(1 - 4 (|M| / (coth(Γt/2) + 2N + 1))²)`; `t = ∞` is allowed.
pub fn channel_complexity_at_t(ch: &GaussianChannelParams, t: f64) -> Result<f64> {
    if !(t >= 0.0) {
        return domain(format!("time must be >= 0, got {t}"));
    }
    // |M| / (coth + 2N + 1) written with tanh so that t = 0 and t = ∞ are exact
    let th = (0.5 * ch.damping * t).tanh();
    let x = ch.abs_m() * th / (1.0 + (2.0 * ch.bath_photons + 1.0) * th);
    Ok(1.0 / (1.0 - 4.0 * x * x).sqrt())
}

/// `C(E_∞) = 1 / sqrt(1 - (|M|/(N+1))²)`, bounded by `sqrt(N+1)`.
pub fn channel_complexity_asymptotic(ch: &GaussianChannelParams) -> f64 {
    let x = ch.abs_m() / (ch.bath_photons + 1.0);
    1.0 / (1.0 - x * x).sqrt()
}

/// `(μ(t), r(t))` by RK4 integration of the covariance flow
/// `dσ/dt = Γ(σ∞ - σ)`, with the vacuum at `σ = I/4`.
///
/// Independent of the closed-form parametrisation; used as its oracle.
pub fn covariance_flow_rk4(
    initial_purity: f64,
    t: f64,
    ch: &GaussianChannelParams,
    steps: usize,
) -> Result<(f64, f64)> {
    if !(initial_purity > 0.0 && initial_purity <= 1.0) {
        return domain(format!("initial purity must lie in (0, 1], got {initial_purity}"));
    }
    if !(t >= 0.0) || !t.is_finite() || steps == 0 {
        return domain("covariance flow needs a finite t >= 0 and at least one step");
    }
    type Cov = [f64; 3];
    let d = (2.0 * ch.bath_photons + 1.0) / 4.0;
    let m = ch.bath_squeezing;
    // (σxx, σxy, σyy)
    let inf: Cov = [d + 0.5 * m.re, 0.5 * m.im, d - 0.5 * m.re];
    let g = ch.damping;
    let rhs = |s: &Cov| -> Cov { [g * (inf[0] - s[0]), g * (inf[1] - s[1]), g * (inf[2] - s[2])] };
    let axpy = |s: &Cov, k: &Cov, h: f64| -> Cov { [s[0] + h * k[0], s[1] + h * k[1], s[2] + h * k[2]] };
    let h = t / steps as f64;
    let v0 = 0.25 / initial_purity;
    let mut s: Cov = [v0, 0.0, v0];
    for _ in 0..steps {
        let k1 = rhs(&s);
        let k2 = rhs(&axpy(&s, &k1, 0.5 * h));
        let k3 = rhs(&axpy(&s, &k2, 0.5 * h));
        let k4 = rhs(&axpy(&s, &k3, h));
        for i in 0..3 {
            s[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
    }
    let det = s[0] * s[2] - s[1] * s[1];
    let mu = 0.25 / det.sqrt();
    let r = 0.5 * (2.0 * mu * (s[0] + s[2])).max(1.0).acosh();
    Ok((mu, r))
}
