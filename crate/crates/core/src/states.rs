//! Closed-form Husimi functions, with analytic gradients, for the state
//! families used throughout the crate.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::functionals::QField;
use crate::numerics::{i1_over_x_i0, ln_i};

/// `D_ξ S_η ν_n̄ S_η† D_ξ†` with `η = r e^{iθ}` and purity `μ = 1/(1+2n̄)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianStateParams {
    pub displacement: Complex64,
    pub squeezing: f64,
    pub squeezing_phase: f64,
    pub purity: f64,
}

impl GaussianStateParams {
    pub fn new(displacement: Complex64, squeezing: f64, squeezing_phase: f64, purity: f64) -> Result<Self> {
        if !(purity > 0.0 && purity <= 1.0) {
            return domain(format!("purity must lie in (0, 1], got {purity}"));
        }
        if !(squeezing >= 0.0) || !squeezing.is_finite() {
            return domain(format!("squeezing magnitude must be finite and >= 0, got {squeezing}"));
        }
        if !squeezing_phase.is_finite() || !(displacement.re.is_finite() && displacement.im.is_finite()) {
            return domain("displacement and squeezing phase must be finite");
        }
        Ok(Self {
            displacement,
            squeezing,
            squeezing_phase: squeezing_phase.rem_euclid(2.0 * PI),
            purity,
        })
    }

    pub fn coherent(displacement: Complex64) -> Self {
        Self {
            displacement,
            squeezing: 0.0,
            squeezing_phase: 0.0,
            purity: 1.0,
        }
    }

    pub fn displaced_thermal(displacement: Complex64, thermal_photons: f64) -> Result<Self> {
        Self::new(displacement, 0.0, 0.0, purity_from_photons(thermal_photons)?)
    }

    pub fn thermal_photons(&self) -> f64 {
        0.5 * (1.0 / self.purity - 1.0)
    }

    /// Q-function variances `(minor, major)` along the principal axes.
    pub fn variances(&self) -> (f64, f64) {
        let e = (2.0 * self.squeezing).exp();
        (0.25 * (1.0 / (e * self.purity) + 1.0), 0.25 * (e / self.purity + 1.0))
    }
}

/// `μ = 1/(1+2n̄)`.
pub fn purity_from_photons(thermal_photons: f64) -> Result<f64> {
    if !(thermal_photons >= 0.0) || !thermal_photons.is_finite() {
        return domain(format!(
            "thermal photon number must be finite and >= 0, got {thermal_photons}"
        ));
    }
    Ok(1.0 / (1.0 + 2.0 * thermal_photons))
}

/// Bivariate Gaussian Husimi function.
#[derive(Debug, Clone)]
pub struct GaussianField {
    params: GaussianStateParams,
    minor_axis: (f64, f64),
    var_minor: f64,
    var_major: f64,
    peak: f64,
}

pub fn q_gaussian(params: GaussianStateParams) -> Result<GaussianField> {
    let params = GaussianStateParams::new(
        params.displacement,
        params.squeezing,
        params.squeezing_phase,
        params.purity,
    )?;
    let (var_minor, var_major) = params.variances();
    let half = 0.5 * params.squeezing_phase;
    Ok(GaussianField {
        params,
        minor_axis: (half.cos(), half.sin()),
        var_minor,
        var_major,
        peak: 0.5 / (var_minor * var_major).sqrt(),
    })
}

impl GaussianField {
    pub fn params(&self) -> &GaussianStateParams {
        &self.params
    }

    fn axes(&self, alpha: Complex64) -> (f64, f64) {
        let d = alpha - self.params.displacement;
        let (c, s) = self.minor_axis;
        (d.re * c + d.im * s, -d.re * s + d.im * c)
    }
}

impl QField for GaussianField {
    fn value(&self, alpha: Complex64) -> f64 {
        let (u, v) = self.axes(alpha);
        self.peak * (-0.5 * (u * u / self.var_minor + v * v / self.var_major)).exp()
    }

    fn gradient(&self, alpha: Complex64) -> [f64; 2] {
        self.value_and_gradient(alpha).1
    }

    fn value_and_gradient(&self, alpha: Complex64) -> (f64, [f64; 2]) {
        let (u, v) = self.axes(alpha);
        let q = self.peak * (-0.5 * (u * u / self.var_minor + v * v / self.var_major)).exp();
        let (c, s) = self.minor_axis;
        let du = -q * u / self.var_minor;
        let dv = -q * v / self.var_major;
        (q, [du * c - dv * s, du * s + dv * c])
    }

    fn center(&self) -> Complex64 {
        self.params.displacement
    }

    fn scale(&self) -> f64 {
        self.var_major
    }
}

/// `C(ρ_g) = (1 + cosh(2r)/μ) / sqrt(1 + 2 cosh(2r)/μ + 1/μ²)`.
pub fn gaussian_complexity_closed_form(purity: f64, squeezing: f64) -> Result<f64> {
    if !(purity > 0.0 && purity <= 1.0) {
        return domain(format!("purity must lie in (0, 1], got {purity}"));
    }
    if !(squeezing >= 0.0) || !squeezing.is_finite() {
        return domain(format!("squeezing must be finite and >= 0, got {squeezing}"));
    }
    let c = (2.0 * squeezing).cosh() / purity;
    Ok((1.0 + c) / (1.0 + 2.0 * c + 1.0 / (purity * purity)).sqrt())
}

/// Displaced thermal state after von Mises phase diffusion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseDiffusionParams {
    pub concentration: f64,
    pub displacement: f64,
    pub thermal_photons: f64,
}

impl PhaseDiffusionParams {
    /// The displacement is taken real and non-negative; a general complex
    /// displacement is a phase rotation away and does not change complexity.
    pub fn new(concentration: f64, displacement: f64, thermal_photons: f64) -> Result<Self> {
        if !(concentration >= 0.0) || !concentration.is_finite() {
            return domain(format!("kappa must be finite and >= 0, got {concentration}"));
        }
        if !(displacement >= 0.0) || !displacement.is_finite() {
            return domain(format!("displacement must be finite and >= 0, got {displacement}"));
        }
        purity_from_photons(thermal_photons)?;
        Ok(Self {
            concentration,
            displacement,
            thermal_photons,
        })
    }
}

/// `Q_κ(α) = e^{-(|α|²+ξ²)/s} I_0(R) / (s I_0(κ))` with `s = n̄+1` and
/// `R² = κ² + 4|α|²ξ²/s² + 4κξ Re(α)/s`.
#[derive(Debug, Clone)]
pub struct PhaseDiffusedField {
    params: PhaseDiffusionParams,
    s: f64,
    ln_norm: f64,
}

pub fn q_phase_diffused(params: PhaseDiffusionParams) -> Result<PhaseDiffusedField> {
    let params = PhaseDiffusionParams::new(params.concentration, params.displacement, params.thermal_photons)?;
    let s = params.thermal_photons + 1.0;
    let xi = params.displacement;
    Ok(PhaseDiffusedField {
        params,
        s,
        ln_norm: -ln_i(0, params.concentration) - xi * xi / s - s.ln(),
    })
}

impl PhaseDiffusedField {
    pub fn params(&self) -> &PhaseDiffusionParams {
        &self.params
    }

    fn bessel_argument(&self, alpha: Complex64) -> f64 {
        let (k, xi, s) = (self.params.concentration, self.params.displacement, self.s);
        let r2 = k * k + 4.0 * alpha.norm_sqr() * xi * xi / (s * s) + 4.0 * k * xi * alpha.re / s;
        r2.max(0.0).sqrt()
    }
}

impl QField for PhaseDiffusedField {
    fn value(&self, alpha: Complex64) -> f64 {
        let r = self.bessel_argument(alpha);
        (ln_i(0, r) + self.ln_norm - alpha.norm_sqr() / self.s).exp()
    }

    fn gradient(&self, alpha: Complex64) -> [f64; 2] {
        self.value_and_gradient(alpha).1
    }

    fn value_and_gradient(&self, alpha: Complex64) -> (f64, [f64; 2]) {
        let (k, xi, s) = (self.params.concentration, self.params.displacement, self.s);
        let r = self.bessel_argument(alpha);
        let q = (ln_i(0, r) + self.ln_norm - alpha.norm_sqr() / s).exp();
        // d ln I_0(R) = (I_1/I_0)(R) dR = (I_1/(R I_0)) d(R²)/2
        let w = i1_over_x_i0(r);
        let half_dr2_dx = 4.0 * alpha.re * xi * xi / (s * s) + 2.0 * k * xi / s;
        let half_dr2_dy = 4.0 * alpha.im * xi * xi / (s * s);
        let gx = q * (w * half_dr2_dx - 2.0 * alpha.re / s);
        let gy = q * (w * half_dr2_dy - 2.0 * alpha.im / s);
        (q, [gx, gy])
    }

    fn center(&self) -> Complex64 {
        Complex64::new(0.0, 0.0)
    }

    fn scale(&self) -> f64 {
        0.5 * self.s
    }

    fn reach(&self) -> f64 {
        self.params.displacement
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PhotonVariant {
    Added,
    Subtracted,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhotonVariantParams {
    pub variant: PhotonVariant,
    pub displacement: f64,
    pub thermal_photons: f64,
}

impl PhotonVariantParams {
    pub fn new(variant: PhotonVariant, displacement: f64, thermal_photons: f64) -> Result<Self> {
        if !(displacement >= 0.0) || !displacement.is_finite() {
            return domain(format!("displacement must be finite and >= 0, got {displacement}"));
        }
        purity_from_photons(thermal_photons)?;
        if variant == PhotonVariant::Subtracted && displacement * displacement + thermal_photons <= 0.0 {
            return domain("cannot subtract a photon from the vacuum (xi^2 + nbar = 0)");
        }
        Ok(Self {
            variant,
            displacement,
            thermal_photons,
        })
    }

    pub fn added(displacement: f64, thermal_photons: f64) -> Result<Self> {
        Self::new(PhotonVariant::Added, displacement, thermal_photons)
    }

    pub fn subtracted(displacement: f64, thermal_photons: f64) -> Result<Self> {
        Self::new(PhotonVariant::Subtracted, displacement, thermal_photons)
    }
}

/// `Q_+(α) = |α|² e^{-|α-ξ|²/s} / ((1+ξ²+n̄) s)`.
#[derive(Debug, Clone)]
pub struct PhotonAddedField {
    xi: f64,
    s: f64,
    prefactor: f64,
}

pub fn q_photon_added(params: PhotonVariantParams) -> Result<PhotonAddedField> {
    let p = PhotonVariantParams::new(params.variant, params.displacement, params.thermal_photons)?;
    if p.variant != PhotonVariant::Added {
        return domain("q_photon_added needs variant = added");
    }
    let s = 1.0 + p.thermal_photons;
    let xi = p.displacement;
    Ok(PhotonAddedField {
        xi,
        s,
        prefactor: 1.0 / ((1.0 + xi * xi + p.thermal_photons) * s),
    })
}

impl QField for PhotonAddedField {
    fn value(&self, alpha: Complex64) -> f64 {
        let d = alpha - self.xi;
        self.prefactor * alpha.norm_sqr() * (-d.norm_sqr() / self.s).exp()
    }

    fn gradient(&self, alpha: Complex64) -> [f64; 2] {
        self.value_and_gradient(alpha).1
    }

    fn value_and_gradient(&self, alpha: Complex64) -> (f64, [f64; 2]) {
        let d = alpha - self.xi;
        let e = self.prefactor * (-d.norm_sqr() / self.s).exp();
        let a2 = alpha.norm_sqr();
        let gx = e * (2.0 * alpha.re - 2.0 * a2 * d.re / self.s);
        let gy = e * (2.0 * alpha.im - 2.0 * a2 * d.im / self.s);
        (e * a2, [gx, gy])
    }

    // centered on the zero of Q so the polar grid never straddles it
    fn center(&self) -> Complex64 {
        Complex64::new(0.0, 0.0)
    }

    fn scale(&self) -> f64 {
        0.5 * self.s
    }

    fn reach(&self) -> f64 {
        self.xi
    }
}

/// Photon-subtracted displaced thermal state, in the frame `β = α - ξ`.
///
/// `Q_-(β) = e^{-|β|²/s} (n̄²|β|²/s³ + n̄(1 + 2ξ Re β)/s² + ξ²/s) / (ξ²+n̄)`.
#[derive(Debug, Clone)]
pub struct PhotonSubtractedField {
    xi: f64,
    s: f64,
    norm: f64,
    quad: f64,
    lin: f64,
    constant: f64,
}

pub fn q_photon_subtracted(params: PhotonVariantParams) -> Result<PhotonSubtractedField> {
    let p = PhotonVariantParams::new(params.variant, params.displacement, params.thermal_photons)?;
    if p.variant != PhotonVariant::Subtracted {
        return domain("q_photon_subtracted needs variant = subtracted");
    }
    let (xi, n) = (p.displacement, p.thermal_photons);
    let s = 1.0 + n;
    Ok(PhotonSubtractedField {
        xi,
        s,
        norm: 1.0 / (xi * xi + n),
        quad: n * n / (s * s * s),
        lin: n / (s * s),
        constant: xi * xi / s,
    })
}

impl PhotonSubtractedField {
    fn polynomial(&self, beta: Complex64) -> f64 {
        self.quad * beta.norm_sqr() + self.lin * (1.0 + 2.0 * self.xi * beta.re) + self.constant
    }
}

impl QField for PhotonSubtractedField {
    fn value(&self, beta: Complex64) -> f64 {
        self.norm * (-beta.norm_sqr() / self.s).exp() * self.polynomial(beta)
    }

    fn gradient(&self, beta: Complex64) -> [f64; 2] {
        self.value_and_gradient(beta).1
    }

    fn value_and_gradient(&self, beta: Complex64) -> (f64, [f64; 2]) {
        let e = self.norm * (-beta.norm_sqr() / self.s).exp();
        let p = self.polynomial(beta);
        let gx = e * (2.0 * self.quad * beta.re + 2.0 * self.lin * self.xi - 2.0 * beta.re * p / self.s);
        let gy = e * (2.0 * self.quad * beta.im - 2.0 * beta.im * p / self.s);
        (e * p, [gx, gy])
    }

    fn center(&self) -> Complex64 {
        Complex64::new(0.0, 0.0)
    }

    fn scale(&self) -> f64 {
        0.5 * self.s
    }
}

/// Weights `(n̄/(1+n̄), 1/(1+n̄))` of `ν_- = w₊ ν_+ + w_th ν_n̄`.
pub fn photon_sub_mixture_weights(thermal_photons: f64) -> Result<(f64, f64)> {
    if !(thermal_photons > 0.0) {
        return domain(format!("mixture weights need nbar > 0, got {thermal_photons}"));
    }
    if thermal_photons.is_infinite() {
        return Ok((1.0, 0.0));
    }
    let s = 1.0 + thermal_photons;
    Ok((thermal_photons / s, 1.0 / s))
}
