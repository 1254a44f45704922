//! Truncated Fock-space construction of the non-Gaussian states, used as an
//! independent check on the analytic Husimi functions.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::functionals::{complexity, ComplexityValue, QField};
use crate::numerics::{ln_i, QuadratureConfig};
use crate::states::PhotonVariant;

/// Extra levels used while building a state, cropped afterwards.
const WORK_PADDING: usize = 40;
/// Population allowed in the top tenth of the levels.
pub const LEAKAGE_TOLERANCE: f64 = 1e-10;
pub const INVARIANT_TOLERANCE: f64 = 1e-10;
const LADDER_TRACE_FLOOR: f64 = 1e-12;
/// Husimi values this far below zero are rounding and clamp to zero.
const HUSIMI_FLOOR: f64 = -1e-12;

/// Smallest truncation accepted for a displaced thermal state.
pub fn minimum_dimension(displacement: Complex64, thermal_photons: f64) -> usize {
    (8.0 * (displacement.norm_sqr() + thermal_photons + 1.0) + 20.0).ceil() as usize
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FockDensityMatrix {
    matrix: DMatrix<Complex64>,
}

impl FockDensityMatrix {
    /// Wraps `matrix` after checking Hermiticity, unit trace and positivity.
    pub fn new(matrix: DMatrix<Complex64>) -> Result<Self> {
        let rho = Self { matrix };
        rho.check_invariants(INVARIANT_TOLERANCE)?;
        Ok(rho)
    }

    /// Builds a `dim x dim` matrix from row-major entries, then validates it.
    pub fn from_row_major(dim: usize, entries: &[Complex64]) -> Result<Self> {
        if dim == 0 || entries.len() != dim * dim {
            return Err(Error::Dimension(format!(
                "expected {dim}x{dim} = {} entries, got {}",
                dim * dim,
                entries.len()
            )));
        }
        Self::new(DMatrix::from_row_slice(dim, dim, entries))
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.matrix
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }

    pub fn populations(&self) -> Vec<f64> {
        self.matrix.diagonal().iter().map(|z| z.re).collect()
    }

    /// Population held by the top `ceil(D/10)` levels.
    pub fn leakage(&self) -> f64 {
        let d = self.dim();
        let top = d.div_ceil(10);
        self.populations()[d - top..].iter().sum()
    }

    pub fn check_invariants(&self, tol: f64) -> Result<()> {
        let m = &self.matrix;
        if m.nrows() != m.ncols() || m.nrows() == 0 {
            return Err(Error::Dimension(format!(
                "density matrix must be square and non-empty, got {}x{}",
                m.nrows(),
                m.ncols()
            )));
        }
        if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Consistency("density matrix has non-finite entries".into()));
        }
        let herm = (m - m.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max);
        if herm > tol {
            return Err(Error::Consistency(format!(
                "density matrix not Hermitian (defect {herm:e})"
            )));
        }
        let tr = m.trace();
        if (tr - 1.0).norm() > tol {
            return Err(Error::Consistency(format!("density matrix trace is {tr}")));
        }
        let eig = m.clone().symmetric_eigenvalues();
        let min = eig.iter().copied().fold(f64::INFINITY, f64::min);
        if min < -tol {
            return Err(Error::Consistency(format!("density matrix has eigenvalue {min:e}")));
        }
        Ok(())
    }

    pub fn mean_amplitude(&self) -> Complex64 {
        let d = self.dim();
        // tr(ρ a) = Σ √n ρ_{n,n-1}
        (1..d).map(|n| self.matrix[(n, n - 1)] * (n as f64).sqrt()).sum()
    }

    pub fn mean_photons(&self) -> f64 {
        self.populations().iter().enumerate().map(|(n, p)| n as f64 * p).sum()
    }
}

fn annihilation(dim: usize) -> DMatrix<Complex64> {
    let mut a = DMatrix::zeros(dim, dim);
    for n in 1..dim {
        a[(n - 1, n)] = Complex64::new((n as f64).sqrt(), 0.0);
    }
    a
}

fn crop(m: &DMatrix<Complex64>, dim: usize) -> DMatrix<Complex64> {
    m.view((0, 0), (dim, dim)).into_owned()
}

fn hermitize_and_normalize(m: DMatrix<Complex64>) -> Result<(DMatrix<Complex64>, f64)> {
    let h = (&m + m.adjoint()) * Complex64::new(0.5, 0.0);
    let tr = h.trace().re;
    if !(tr > 0.0) || !tr.is_finite() {
        return Err(Error::Consistency(format!("state has vanishing trace {tr}")));
    }
    Ok((h / Complex64::new(tr, 0.0), tr))
}

/// `D(ξ) ρ_th(n̄) D(ξ)†` in the first `dim` levels.
pub fn displaced_thermal_fock(displacement: Complex64, thermal_photons: f64, dim: usize) -> Result<FockDensityMatrix> {
    if !(thermal_photons >= 0.0) || !thermal_photons.is_finite() {
        return domain(format!(
            "thermal photon number must be finite and >= 0, got {thermal_photons}"
        ));
    }
    if !displacement.re.is_finite() || !displacement.im.is_finite() {
        return domain("displacement must be finite");
    }
    let need = minimum_dimension(displacement, thermal_photons);
    if dim < need {
        return Err(Error::Dimension(format!(
            "dimension {dim} too small for |xi|^2 = {}, nbar = {thermal_photons}; need >= {need}",
            displacement.norm_sqr()
        )));
    }
    let work = dim + WORK_PADDING;
    let s = thermal_photons + 1.0;
    let ratio = thermal_photons / s;
    let mut thermal = DMatrix::<Complex64>::zeros(work, work);
    let mut p = 1.0 / s;
    for n in 0..work {
        thermal[(n, n)] = Complex64::new(p, 0.0);
        p *= ratio;
    }
    let a = annihilation(work);
    let generator = a.adjoint() * displacement - &a * displacement.conj();
    let d = generator.exp();
    let rho = &d * thermal * d.adjoint();
    let (m, _) = hermitize_and_normalize(crop(&rho, dim))?;
    let rho = FockDensityMatrix::new(m)?;
    check_leakage(&rho)?;
    Ok(rho)
}

/// Average of `e^{iθn} ρ e^{-iθn}` over a von Mises phase with concentration `κ`.
pub fn dephase_von_mises(rho: &FockDensityMatrix, concentration: f64) -> Result<FockDensityMatrix> {
    if !(concentration >= 0.0) || !concentration.is_finite() {
        return domain(format!("kappa must be finite and >= 0, got {concentration}"));
    }
    let d = rho.dim();
    let ln0 = ln_i(0, concentration);
    let factors: Vec<f64> = (0..d).map(|k| (ln_i(k as u32, concentration) - ln0).exp()).collect();
    let m = DMatrix::from_fn(d, d, |i, j| rho.matrix[(i, j)] * factors[i.abs_diff(j)]);
    Ok(FockDensityMatrix { matrix: m })
}

/// `a†ρa` or `aρa†`, normalised; the raw trace is the heralding weight.
///
/// The raw trace is checked against `⟨n⟩ + 1` (added) or `⟨n⟩` (subtracted);
/// truncation only removes the top level's contribution to the former.
pub fn apply_ladder(rho: &FockDensityMatrix, variant: PhotonVariant) -> Result<(FockDensityMatrix, f64)> {
    let d = rho.dim();
    let a = annihilation(d);
    let (raw, expected) = match variant {
        PhotonVariant::Added => {
            let top = rho.matrix[(d - 1, d - 1)].re * d as f64;
            (a.adjoint() * &rho.matrix * &a, rho.mean_photons() + 1.0 - top)
        }
        PhotonVariant::Subtracted => (&a * &rho.matrix * a.adjoint(), rho.mean_photons()),
    };
    let tr = raw.trace().re;
    if !(tr > LADDER_TRACE_FLOOR) {
        return domain(format!("ladder operation leaves trace {tr:e}; nothing to herald"));
    }
    if (tr - expected).abs() > INVARIANT_TOLERANCE * (1.0 + expected) {
        return Err(Error::Consistency(format!(
            "ladder trace {tr} differs from the photon-number prediction {expected}"
        )));
    }
    let (m, tr) = hermitize_and_normalize(raw)?;
    Ok((FockDensityMatrix { matrix: m }, tr))
}

fn check_leakage(rho: &FockDensityMatrix) -> Result<()> {
    let leak = rho.leakage();
    if leak > LEAKAGE_TOLERANCE {
        return Err(Error::Dimension(format!(
            "top levels of a {}-level truncation hold population {leak:e}",
            rho.dim()
        )));
    }
    Ok(())
}

/// `Q(α) = ⟨α|ρ|α⟩`, restricted to `|α|² <= D/4` where truncation is harmless.
pub fn husimi_from_fock(rho: &FockDensityMatrix, alpha: Complex64) -> Result<f64> {
    if alpha.norm_sqr() > rho.dim() as f64 / 4.0 {
        return Err(Error::Dimension(format!(
            "|alpha|^2 = {} exceeds D/4 = {}",
            alpha.norm_sqr(),
            rho.dim() as f64 / 4.0
        )));
    }
    let q = FockField::new(rho.clone()).value(alpha);
    if q < HUSIMI_FLOOR {
        return Err(Error::Consistency(format!(
            "negative Husimi value {q:e} at alpha = {alpha}"
        )));
    }
    Ok(q.max(0.0))
}

/// Husimi function of a Fock matrix, evaluated at any point.
#[derive(Debug, Clone)]
pub struct FockField {
    rho: FockDensityMatrix,
    center: Complex64,
    scale: f64,
}

impl FockField {
    pub fn new(rho: FockDensityMatrix) -> Self {
        let center = rho.mean_amplitude();
        // summed Q-variances of the two quadratures
        let scale = (rho.mean_photons() + 1.0 - center.norm_sqr()).max(0.5);
        Self { rho, center, scale }
    }

    pub fn density(&self) -> &FockDensityMatrix {
        &self.rho
    }

    /// `u_n = e^{-|α|²/2} αⁿ/√n!`, built by recurrence so nothing overflows.
    fn coherent_amplitudes(&self, alpha: Complex64) -> DVector<Complex64> {
        let d = self.rho.dim();
        let mut u = DVector::zeros(d);
        u[0] = Complex64::new((-0.5 * alpha.norm_sqr()).exp(), 0.0);
        for n in 1..d {
            u[n] = u[n - 1] * alpha / (n as f64).sqrt();
        }
        u
    }
}

impl QField for FockField {
    fn value(&self, alpha: Complex64) -> f64 {
        let u = self.coherent_amplitudes(alpha);
        u.dotc(&(&self.rho.matrix * &u)).re
    }

    fn gradient(&self, alpha: Complex64) -> [f64; 2] {
        self.value_and_gradient(alpha).1
    }

    fn value_and_gradient(&self, alpha: Complex64) -> (f64, [f64; 2]) {
        let u = self.coherent_amplitudes(alpha);
        let d = u.len();
        let mut v = DVector::zeros(d);
        for n in 1..d {
            v[n] = u[n - 1] * (n as f64).sqrt();
        }
        let ru = &self.rho.matrix * &u;
        let q = u.dotc(&ru).re;
        let z = v.dotc(&ru);
        let gx = 2.0 * z.re - 2.0 * alpha.re * q;
        let gy = 2.0 * z.im - 2.0 * alpha.im * q;
        (q, [gx, gy])
    }

    fn center(&self) -> Complex64 {
        self.center
    }

    fn scale(&self) -> f64 {
        self.scale
    }
}

/// Complexity of a Fock matrix; refuses states that reach the truncation edge.
pub fn complexity_from_fock(rho: &FockDensityMatrix, cfg: &QuadratureConfig) -> Result<ComplexityValue> {
    rho.check_invariants(INVARIANT_TOLERANCE)?;
    check_leakage(rho)?;
    complexity(&FockField::new(rho.clone()), cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn displaced_thermal_invariants() {
        let rho = displaced_thermal_fock(c(0.8, -0.4), 0.5, 40).unwrap();
        rho.check_invariants(1e-12).unwrap();
        assert!((rho.mean_amplitude() - c(0.8, -0.4)).norm() < 1e-10);
        assert!((rho.mean_photons() - (0.8f64 * 0.8 + 0.16 + 0.5)).abs() < 1e-10);
        assert!(matches!(
            displaced_thermal_fock(c(2.0, 0.0), 1.0, 40),
            Err(Error::Dimension(_))
        ));
        assert!(displaced_thermal_fock(c(0.0, 0.0), -1.0, 40).is_err());
    }

    #[test]
    fn husimi_matches_gaussian() {
        let xi = c(1.0, 0.3);
        let n = 0.7;
        let rho = displaced_thermal_fock(xi, n, 60).unwrap();
        for a in [c(0.0, 0.0), c(1.2, -0.5), c(-1.0, 2.0)] {
            let want = (-(a - xi).norm_sqr() / (n + 1.0)).exp() / (n + 1.0);
            assert!((husimi_from_fock(&rho, a).unwrap() - want).abs() < 1e-12);
        }
        assert!(husimi_from_fock(&rho, c(4.0, 0.0)).is_err());
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let rho = displaced_thermal_fock(c(0.6, 0.2), 0.4, 40).unwrap();
        let (rho, _) = apply_ladder(&rho, PhotonVariant::Added).unwrap();
        let f = FockField::new(rho);
        let h = 1e-6;
        for a in [c(0.3, 0.1), c(-0.7, 1.1)] {
            let g = f.gradient(a);
            let fx = (f.value(a + h) - f.value(a - h)) / (2.0 * h);
            let fy = (f.value(a + c(0.0, h)) - f.value(a - c(0.0, h))) / (2.0 * h);
            assert!((g[0] - fx).abs() < 1e-8 && (g[1] - fy).abs() < 1e-8);
        }
    }

    #[test]
    fn dephasing_matches_phase_quadrature() {
        let rho = displaced_thermal_fock(c(0.5, 0.2), 0.1, 32).unwrap();
        let kappa = 1.7;
        let fast = dephase_von_mises(&rho, kappa).unwrap();
        let d = rho.dim();
        let nodes = 64;
        let mut acc = DMatrix::<Complex64>::zeros(d, d);
        let mut wsum = 0.0;
        for j in 0..nodes {
            let th = 2.0 * PI * j as f64 / nodes as f64;
            let w = (kappa * th.cos()).exp();
            wsum += w;
            let u = DMatrix::from_diagonal(&DVector::from_fn(d, |n, _| Complex64::from_polar(1.0, th * n as f64)));
            acc += (&u * rho.matrix() * u.adjoint()) * Complex64::new(w, 0.0);
        }
        acc /= Complex64::new(wsum, 0.0);
        let err = (&acc - fast.matrix()).iter().map(|z| z.norm()).fold(0.0, f64::max);
        assert!(err < 1e-12, "{err}");
        fast.check_invariants(1e-12).unwrap();
    }

    #[test]
    fn dephasing_commutes_with_number() {
        let rho = displaced_thermal_fock(c(1.0, 0.0), 0.3, 40).unwrap();
        let full = dephase_von_mises(&rho, 0.0).unwrap();
        let m = full.matrix();
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                if i != j {
                    assert!(m[(i, j)].norm() < 1e-15);
                }
            }
        }
        assert_eq!(full.populations(), rho.populations());
    }

    #[test]
    fn ladder_traces() {
        let n = 0.6;
        let xi = c(0.9, 0.0);
        let rho = displaced_thermal_fock(xi, n, 50).unwrap();
        let (added, p_add) = apply_ladder(&rho, PhotonVariant::Added).unwrap();
        let (sub, p_sub) = apply_ladder(&rho, PhotonVariant::Subtracted).unwrap();
        assert!((p_add - (1.0 + xi.norm_sqr() + n)).abs() < 1e-9);
        assert!((p_sub - (xi.norm_sqr() + n)).abs() < 1e-9);
        added.check_invariants(1e-12).unwrap();
        sub.check_invariants(1e-12).unwrap();
        let vac = displaced_thermal_fock(c(0.0, 0.0), 0.0, 30).unwrap();
        assert!(matches!(
            apply_ladder(&vac, PhotonVariant::Subtracted),
            Err(Error::Domain(_))
        ));
        let (one, p) = apply_ladder(&vac, PhotonVariant::Added).unwrap();
        assert!((p - 1.0).abs() < 1e-12 && (one.matrix()[(1, 1)].re - 1.0).abs() < 1e-12);
        let coh = displaced_thermal_fock(c(0.7, -0.3), 0.0, 40).unwrap();
        let (same, _) = apply_ladder(&coh, PhotonVariant::Subtracted).unwrap();
        let err = (same.matrix() - coh.matrix())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        assert!(err < 1e-10, "{err}");
    }

    #[test]
    fn construction_examples() {
        let n = 0.8;
        let th = displaced_thermal_fock(c(0.0, 0.0), n, 40).unwrap();
        for (k, p) in th.populations().iter().enumerate() {
            let want = (n / (1.0 + n)).powi(k as i32) / (1.0 + n);
            assert!((p - want).abs() < 1e-13);
        }
        let xi = c(1.0, 0.0);
        let coh = displaced_thermal_fock(xi, 0.0, 40).unwrap();
        let mut amp = vec![(-0.5f64).exp()];
        for k in 1..40 {
            amp.push(amp[k - 1] / (k as f64).sqrt());
        }
        for i in 0..40 {
            for j in 0..40 {
                assert!((coh.matrix()[(i, j)] - amp[i] * amp[j]).norm() < 1e-12);
            }
        }
        let rho = displaced_thermal_fock(xi, 1.0, 50).unwrap();
        assert!((husimi_from_fock(&rho, xi).unwrap() - 0.5).abs() < 1e-12);
        let (_, p) = apply_ladder(&rho, PhotonVariant::Added).unwrap();
        assert!((p - 3.0).abs() < 1e-9);
    }

    #[test]
    fn dephasing_composes() {
        let rho = displaced_thermal_fock(c(1.2, 0.4), 0.2, 50).unwrap();
        let (k1, k2) = (0.7, 2.5);
        let twice = dephase_von_mises(&dephase_von_mises(&rho, k1).unwrap(), k2).unwrap();
        let d = rho.dim();
        let kernel = |k: usize| (ln_i(k as u32, k1) - ln_i(0, k1)).exp() * (ln_i(k as u32, k2) - ln_i(0, k2)).exp();
        for i in 0..d {
            for j in 0..d {
                let want = rho.matrix()[(i, j)] * kernel(i.abs_diff(j));
                assert!((twice.matrix()[(i, j)] - want).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn invariant_violations_detected() {
        let mut m = DMatrix::<Complex64>::zeros(3, 3);
        m[(0, 0)] = c(1.2, 0.0);
        m[(1, 1)] = c(-0.2, 0.0);
        assert!(FockDensityMatrix::new(m.clone()).is_err());
        m[(1, 1)] = c(-0.1, 0.0);
        m[(2, 2)] = c(-0.1, 0.0);
        m[(0, 1)] = c(0.0, 0.1);
        assert!(FockDensityMatrix::new(m).is_err());
    }
}
