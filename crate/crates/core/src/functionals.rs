//! Wehrl entropy, location Fisher information and statistical complexity of
//! a Husimi function.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::numerics::{integrate_all, IntegrandKind, PhaseIntegrals, QuadratureConfig};

/// Tolerance of the complexity lower bound before it is treated as an error.
pub const COMPLEXITY_FLOOR_TOLERANCE: f64 = 1e-5;
/// Tolerance of the Wehrl entropy lower bound of one nat.
pub const WEHRL_FLOOR_TOLERANCE: f64 = 1e-7;

/// A Husimi function `Q(α) = ⟨α|ρ|α⟩` normalised against `d²α/π`.
///
/// Gradients are with respect to `(x, y)` where `α = x + iy`. `center`,
/// `scale` and `reach` only steer the quadrature: the grid is centered on
/// `center`, and its radius starts at `reach + 8 sqrt(scale)`.
pub trait QField: Send + Sync {
    fn value(&self, alpha: Complex64) -> f64;

    fn gradient(&self, alpha: Complex64) -> [f64; 2];

    fn value_and_gradient(&self, alpha: Complex64) -> (f64, [f64; 2]) {
        (self.value(alpha), self.gradient(alpha))
    }

    fn center(&self) -> Complex64;

    /// Largest variance of the Gaussian envelope.
    fn scale(&self) -> f64;

    /// Distance from `center` at which most of the mass sits (ring radius).
    fn reach(&self) -> f64 {
        0.0
    }
}

impl<F: QField + ?Sized> QField for &F {
    fn value(&self, alpha: Complex64) -> f64 {
        (**self).value(alpha)
    }
    fn gradient(&self, alpha: Complex64) -> [f64; 2] {
        (**self).gradient(alpha)
    }
    fn value_and_gradient(&self, alpha: Complex64) -> (f64, [f64; 2]) {
        (**self).value_and_gradient(alpha)
    }
    fn center(&self) -> Complex64 {
        (**self).center()
    }
    fn scale(&self) -> f64 {
        (**self).scale()
    }
    fn reach(&self) -> f64 {
        (**self).reach()
    }
}

impl<F: QField + ?Sized> QField for Box<F> {
    fn value(&self, alpha: Complex64) -> f64 {
        (**self).value(alpha)
    }
    fn gradient(&self, alpha: Complex64) -> [f64; 2] {
        (**self).gradient(alpha)
    }
    fn value_and_gradient(&self, alpha: Complex64) -> (f64, [f64; 2]) {
        (**self).value_and_gradient(alpha)
    }
    fn center(&self) -> Complex64 {
        (**self).center()
    }
    fn scale(&self) -> f64 {
        (**self).scale()
    }
    fn reach(&self) -> f64 {
        (**self).reach()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureDiagnostics {
    pub normalization: f64,
    pub r_max: f64,
    pub node_count: usize,
    pub tail_estimate: f64,
}

impl From<&PhaseIntegrals> for QuadratureDiagnostics {
    fn from(p: &PhaseIntegrals) -> Self {
        Self {
            normalization: p.normalization,
            r_max: p.r_max,
            node_count: p.node_count,
            tail_estimate: p.tail_estimate,
        }
    }
}

/// `C = exp(S_W - 1) I` together with its two ingredients.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexityValue {
    pub complexity: f64,
    pub wehrl_entropy: f64,
    pub fisher_information: f64,
    pub diagnostics: QuadratureDiagnostics,
}

impl ComplexityValue {
    fn from_integrals(p: &PhaseIntegrals) -> Self {
        Self {
            complexity: (p.wehrl - 1.0).exp() * p.fisher,
            wehrl_entropy: p.wehrl,
            fisher_information: p.fisher,
            diagnostics: p.into(),
        }
    }
}

/// `-∫ Q ln Q d²α/π`, in nats.
pub fn wehrl_entropy(field: &dyn QField, config: &QuadratureConfig) -> Result<f64> {
    let s = integrate_all(field, config)?.get(IntegrandKind::Wehrl);
    check_wehrl(s)?;
    Ok(s)
}

/// `¼ ∫ |∇Q|² / Q d²α/π`.
pub fn fisher_information(field: &dyn QField, config: &QuadratureConfig) -> Result<f64> {
    Ok(integrate_all(field, config)?.get(IntegrandKind::Fisher))
}

pub fn complexity(field: &dyn QField, config: &QuadratureConfig) -> Result<ComplexityValue> {
    let integrals = integrate_all(field, config)?;
    check_wehrl(integrals.wehrl)?;
    let value = ComplexityValue::from_integrals(&integrals);
    if value.complexity < 1.0 - COMPLEXITY_FLOOR_TOLERANCE {
        return Err(Error::Consistency(format!(
            "complexity {} below the lower bound C >= 1 (normalization {})",
            value.complexity, integrals.normalization
        )));
    }
    Ok(value)
}

fn check_wehrl(s: f64) -> Result<()> {
    if s < 1.0 - WEHRL_FLOOR_TOLERANCE {
        return Err(Error::Consistency(format!(
            "Wehrl entropy {s} below the one-nat lower bound"
        )));
    }
    Ok(())
}

/// `α ↦ λ² Q(λα)`; complexity is unchanged by this map.
#[derive(Debug, Clone)]
pub struct ScaledField<F> {
    inner: F,
    lambda: f64,
}

pub fn scale_field<F: QField>(field: F, lambda: f64) -> Result<ScaledField<F>> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return domain(format!("scale factor must be positive, got {lambda}"));
    }
    Ok(ScaledField { inner: field, lambda })
}

impl<F: QField> QField for ScaledField<F> {
    fn value(&self, alpha: Complex64) -> f64 {
        self.lambda * self.lambda * self.inner.value(alpha * self.lambda)
    }
    fn gradient(&self, alpha: Complex64) -> [f64; 2] {
        let l3 = self.lambda.powi(3);
        let g = self.inner.gradient(alpha * self.lambda);
        [l3 * g[0], l3 * g[1]]
    }
    fn value_and_gradient(&self, alpha: Complex64) -> (f64, [f64; 2]) {
        let (q, g) = self.inner.value_and_gradient(alpha * self.lambda);
        let l2 = self.lambda * self.lambda;
        (l2 * q, [l2 * self.lambda * g[0], l2 * self.lambda * g[1]])
    }
    fn center(&self) -> Complex64 {
        self.inner.center() / self.lambda
    }
    fn scale(&self) -> f64 {
        self.inner.scale() / (self.lambda * self.lambda)
    }
    fn reach(&self) -> f64 {
        self.inner.reach() / self.lambda
    }
}

/// `α ↦ Q(α - shift)`, the Husimi function of `D_shift ρ D_shift†`.
#[derive(Debug, Clone)]
pub struct TranslatedField<F> {
    inner: F,
    shift: Complex64,
}

pub fn translate_field<F: QField>(field: F, shift: Complex64) -> TranslatedField<F> {
    TranslatedField { inner: field, shift }
}

impl<F: QField> QField for TranslatedField<F> {
    fn value(&self, alpha: Complex64) -> f64 {
        self.inner.value(alpha - self.shift)
    }
    fn gradient(&self, alpha: Complex64) -> [f64; 2] {
        self.inner.gradient(alpha - self.shift)
    }
    fn value_and_gradient(&self, alpha: Complex64) -> (f64, [f64; 2]) {
        self.inner.value_and_gradient(alpha - self.shift)
    }
    fn center(&self) -> Complex64 {
        self.inner.center() + self.shift
    }
    fn scale(&self) -> f64 {
        self.inner.scale()
    }
    fn reach(&self) -> f64 {
        self.inner.reach()
    }
}
