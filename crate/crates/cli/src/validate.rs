use std::f64::consts::PI;

use clap::ValueEnum;
use num_complex::Complex64;

use qcomplexity::fock::{
    apply_ladder, complexity_from_fock, dephase_von_mises, displaced_thermal_fock, husimi_from_fock, FockDensityMatrix,
};
use qcomplexity::gaussian::{
    channel_complexity_asymptotic, covariance_flow_rk4, evolve_purity_squeezing, GaussianChannelParams,
};
use qcomplexity::nongaussian::{phase_diffused_complexity, photon_variant_complexity};
use qcomplexity::states::{
    gaussian_complexity_closed_form, photon_sub_mixture_weights, q_gaussian, q_phase_diffused, q_photon_added,
    q_photon_subtracted, GaussianStateParams, PhaseDiffusionParams, PhotonVariant, PhotonVariantParams,
};
use qcomplexity::{
    channel_complexity, complexity, ChannelSpec, QField, QuadratureConfig, SearchConfig, EXP_EULER_GAMMA,
};

use crate::error::{CliError, CliResult};
use crate::figure::{FigureId, FigureSpec};

const FOCK_DIM: usize = 70;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    ClosedForms,
    Oracle,
    Monotonicity,
    All,
}

#[derive(Default)]
struct Checks {
    total: usize,
    failed: usize,
}

impl Checks {
    fn check(&mut self, name: &str, pass: bool, detail: impl std::fmt::Display) {
        self.total += 1;
        if !pass {
            self.failed += 1;
        }
        println!("{} {name}: {detail}", if pass { "PASS" } else { "FAIL" });
    }

    fn residual(&mut self, name: &str, residual: f64, tol: f64) {
        self.check(
            name,
            residual <= tol,
            format!("residual {residual:.3e} (tol {tol:.0e})"),
        );
    }
}

pub fn run_validate(suite: Suite, cfg: &QuadratureConfig) -> CliResult<()> {
    let mut checks = Checks::default();
    if matches!(suite, Suite::ClosedForms | Suite::All) {
        closed_forms(&mut checks, cfg)?;
    }
    if matches!(suite, Suite::Oracle | Suite::All) {
        oracle(&mut checks, cfg)?;
    }
    if matches!(suite, Suite::Monotonicity | Suite::All) {
        monotonicity(&mut checks, cfg)?;
    }
    println!("{} of {} checks passed", checks.total - checks.failed, checks.total);
    if checks.failed > 0 {
        return Err(CliError::Validation(checks.failed));
    }
    Ok(())
}

fn closed_forms(checks: &mut Checks, cfg: &QuadratureConfig) -> CliResult<()> {
    let mut worst: f64 = 0.0;
    for mu in [0.2, 0.5, 1.0] {
        for r in [0.0, 0.5, 1.0] {
            let p = GaussianStateParams::new(Complex64::new(0.4, -0.7), r, 1.1, mu)?;
            let c = complexity(&q_gaussian(p)?, cfg)?.complexity;
            worst = worst.max((c - gaussian_complexity_closed_form(mu, r)?).abs());
        }
    }
    checks.residual("gaussian quadrature vs closed form (3x3 grid)", worst, 1e-6);

    let mut worst: f64 = 0.0;
    for (re, im, n) in [
        (0.0, 0.0, 0.0),
        (1.0, 0.0, 0.5),
        (-2.0, 0.5, 1.0),
        (0.0, 0.0, 3.0),
        (4.0, -3.0, 10.0),
    ] {
        let p = GaussianStateParams::displaced_thermal(Complex64::new(re, im), n)?;
        worst = worst.max((complexity(&q_gaussian(p)?, cfg)?.complexity - 1.0).abs());
    }
    checks.residual("displaced thermal states have C = 1", worst, 1e-6);

    let mut worst: f64 = 0.0;
    for n in [0.5, 1.0, 5.0] {
        worst =
            worst.max((photon_variant_complexity(PhotonVariantParams::added(0.0, n)?, cfg)? - EXP_EULER_GAMMA).abs());
    }
    checks.residual("photon-added thermal states have C = e^gamma", worst, 1e-5);

    let search = SearchConfig {
        quadrature: *cfg,
        ..SearchConfig::default()
    };
    let (mut worst, mut boundary) = (0.0f64, true);
    for (n, frac, gt) in [
        (0.3, 0.5, 0.2),
        (1.0, 0.9, 1.0),
        (2.0, 0.3, 3.0),
        (0.8, 1.0, 0.7),
        (5.0, 0.6, 10.0),
    ] {
        let ch = GaussianChannelParams::with_real_squeezing(n, frac * (n * (n + 1.0)).sqrt())?;
        let rep = channel_complexity(&ChannelSpec::Gaussian { channel: ch, time: gt }, &search)?;
        worst = worst.max(rep.diagnostics.search_residual.unwrap_or(f64::INFINITY));
        boundary &= rep.boundary_optimum;
    }
    checks.residual("gaussian channel: purity scan vs closed form", worst, 1e-6);
    checks.check("gaussian channel: optimum at unit input purity", boundary, boundary);

    let mut worst: f64 = 0.0;
    for n in [0.0f64, 0.5, 1.0, 4.0] {
        let ch = GaussianChannelParams::with_real_squeezing(n, (n * (n + 1.0)).sqrt())?;
        worst = worst.max((channel_complexity_asymptotic(&ch) - (n + 1.0).sqrt()).abs());
    }
    checks.residual("asymptotic channel bound sqrt(N+1) attained", worst, 1e-9);

    let mut worst: f64 = 0.0;
    for kappa in [0.5, 3.0] {
        let a = phase_diffused_complexity(kappa, 2.0, 3.0, cfg)?;
        let b = phase_diffused_complexity(kappa, 1.0, 0.0, cfg)?;
        worst = worst.max((a - b).abs());
    }
    checks.residual("phase diffusion scaling reduction", worst, 1e-6);

    let mut worst: f64 = 0.0;
    for n in [0.1, 1.0, 7.0] {
        let (w_add, w_th) = photon_sub_mixture_weights(n)?;
        let sub = q_photon_subtracted(PhotonVariantParams::subtracted(0.0, n)?)?;
        let add = q_photon_added(PhotonVariantParams::added(0.0, n)?)?;
        let th = q_gaussian(GaussianStateParams::displaced_thermal(Complex64::new(0.0, 0.0), n)?)?;
        for i in 0..41 {
            for j in 0..41 {
                let a = Complex64::new(-6.0 + 0.3 * i as f64, -6.0 + 0.3 * j as f64);
                worst = worst.max((sub.value(a) - w_add * add.value(a) - w_th * th.value(a)).abs());
            }
        }
    }
    checks.residual("photon-subtracted mixture identity (41x41 grid)", worst, 1e-12);
    Ok(())
}

/// 50 points on a golden-angle spiral inside `|α| <= 3.5`.
fn spiral_points() -> Vec<Complex64> {
    let golden = PI * (3.0 - 5f64.sqrt());
    (0..50)
        .map(|k| Complex64::from_polar(3.5 * ((k as f64 + 0.5) / 50.0).sqrt(), golden * k as f64))
        .collect()
}

fn husimi_residual(analytic: &dyn QField, rho: &FockDensityMatrix, shift: f64) -> CliResult<f64> {
    let mut worst: f64 = 0.0;
    for a in spiral_points() {
        worst = worst.max((analytic.value(a - shift) - husimi_from_fock(rho, a)?).abs());
    }
    Ok(worst)
}

fn oracle(checks: &mut Checks, cfg: &QuadratureConfig) -> CliResult<()> {
    let (xi, n, kappa) = (1.0, 0.5, 3.0);
    let base = displaced_thermal_fock(Complex64::new(xi, 0.0), n, FOCK_DIM)?;
    let gauss = q_gaussian(GaussianStateParams::displaced_thermal(Complex64::new(xi, 0.0), n)?)?;
    checks.residual(
        "fock vs analytic Q: displaced thermal",
        husimi_residual(&gauss, &base, 0.0)?,
        1e-8,
    );
    let diffused = dephase_von_mises(&base, kappa)?;
    let pd = q_phase_diffused(PhaseDiffusionParams::new(kappa, xi, n)?)?;
    checks.residual(
        "fock vs analytic Q: phase diffused",
        husimi_residual(&pd, &diffused, 0.0)?,
        1e-8,
    );
    let (added, _) = apply_ladder(&base, PhotonVariant::Added)?;
    let qa = q_photon_added(PhotonVariantParams::added(xi, n)?)?;
    checks.residual(
        "fock vs analytic Q: photon added",
        husimi_residual(&qa, &added, 0.0)?,
        1e-8,
    );
    let (subbed, _) = apply_ladder(&base, PhotonVariant::Subtracted)?;
    let qs = q_photon_subtracted(PhotonVariantParams::subtracted(xi, n)?)?;
    checks.residual(
        "fock vs analytic Q: photon subtracted",
        husimi_residual(&qs, &subbed, xi)?,
        1e-8,
    );

    let pairs = [
        (
            "displaced thermal",
            complexity_from_fock(&base, cfg)?.complexity,
            complexity(&gauss, cfg)?.complexity,
        ),
        (
            "phase diffused",
            complexity_from_fock(&diffused, cfg)?.complexity,
            complexity(&pd, cfg)?.complexity,
        ),
        (
            "photon added",
            complexity_from_fock(&added, cfg)?.complexity,
            complexity(&qa, cfg)?.complexity,
        ),
        (
            "photon subtracted",
            complexity_from_fock(&subbed, cfg)?.complexity,
            complexity(&qs, cfg)?.complexity,
        ),
    ];
    for (name, fock, analytic) in pairs {
        checks.residual(
            &format!("fock vs analytic complexity: {name}"),
            (fock - analytic).abs(),
            1e-4,
        );
    }

    let mut worst: f64 = 0.0;
    let cases = [
        (1.0, 0.0, 0.0, 1.0, 0.5),
        (0.5, 1.0, 0.8, 0.3, 2.0),
        (2.0, 2.5, 0.5, 0.05, 0.7),
        (1.3, 0.2, 1.0, 0.9, 4.0),
    ];
    for (damping, n, frac, mu0, t) in cases {
        let m = Complex64::from_polar(frac * (n * (n + 1.0f64)).sqrt(), 0.7);
        let ch = GaussianChannelParams::new(damping, n, m)?;
        let (mu, r) = evolve_purity_squeezing(mu0, t, &ch)?;
        let (mu_rk, r_rk) = covariance_flow_rk4(mu0, t, &ch, 20_000)?;
        worst = worst.max((mu - mu_rk).abs()).max((r - r_rk).abs());
    }
    checks.residual("gaussian evolution vs RK4 covariance flow", worst, 1e-9);
    Ok(())
}

/// Worst violation of strict monotonicity (negative when it holds).
fn worst_step(ys: &[f64], increasing: bool) -> f64 {
    ys.windows(2)
        .map(|w| if increasing { w[0] - w[1] } else { w[1] - w[0] })
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Worst violation of `lower <= upper` (negative when it holds strictly).
fn worst_order(lower: &[f64], upper: &[f64]) -> f64 {
    lower
        .iter()
        .zip(upper)
        .map(|(l, u)| l - u)
        .fold(f64::NEG_INFINITY, f64::max)
}

fn monotonicity(checks: &mut Checks, cfg: &QuadratureConfig) -> CliResult<()> {
    for id in [
        FigureId::Fig1a,
        FigureId::Fig2,
        FigureId::Fig3a,
        FigureId::Fig3b,
        FigureId::Fig4a,
        FigureId::Fig4b,
    ] {
        let spec = FigureSpec::default_for(id);
        let curves = spec.curves(cfg)?;
        let name = id.name();
        // sweep window for the monotonicity claim, and for the ordering claim
        let (mono_from, order_from, increasing) = match id {
            FigureId::Fig1a => (0.5, 2.0, true),
            FigureId::Fig2 | FigureId::Fig3b | FigureId::Fig4b => (f64::NEG_INFINITY, f64::NEG_INFINITY, true),
            _ => (f64::NEG_INFINITY, f64::NEG_INFINITY, false),
        };
        let window =
            |pts: &[(f64, f64)], from: f64| pts.iter().filter(|p| p.0 >= from).map(|p| p.1).collect::<Vec<_>>();
        for (v, pts) in &curves {
            let ys = window(pts, mono_from);
            let w = worst_step(&ys, increasing);
            let dir = if increasing { "increasing" } else { "decreasing" };
            checks.check(
                &format!("{name} {} = {v}: {dir} in {}", spec.curve_parameter, spec.sweep),
                w < 0.0,
                format!("worst step {w:.3e} over {} points", ys.len()),
            );
        }
        // fig2/3a/4a curves rise with the curve parameter; the others fall
        let ascending = matches!(id, FigureId::Fig2 | FigureId::Fig3a | FigureId::Fig4a);
        let slack = if ascending { 1e-9 } else { 0.0 };
        let mut worst = f64::NEG_INFINITY;
        for pair in curves.windows(2) {
            let (a, b) = (window(&pair[0].1, order_from), window(&pair[1].1, order_from));
            let w = if ascending {
                worst_order(&a, &b)
            } else {
                worst_order(&b, &a)
            };
            worst = worst.max(w);
        }
        let values: Vec<String> = spec.curve_values.iter().map(|v| v.to_string()).collect();
        checks.check(
            &format!(
                "{name} ordering {} = {} {}",
                spec.curve_parameter,
                values.join(", "),
                if ascending { "bottom to top" } else { "top to bottom" }
            ),
            worst < slack,
            format!("worst gap {worst:.3e}"),
        );
    }
    Ok(())
}
