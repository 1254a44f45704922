//! One test per acceptance criterion. Every check prints a PASS/FAIL line;
//! a test fails when any of its checks does.

use std::f64::consts::PI;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use qcomplexity::fock::{
    apply_ladder, complexity_from_fock, dephase_von_mises, displaced_thermal_fock, husimi_from_fock,
};
use qcomplexity::functionals::complexity;
use qcomplexity::gaussian::{
    channel_complexity_asymptotic, channel_complexity_at_t, evolve_purity_squeezing, GaussianChannelParams,
};
use qcomplexity::nongaussian::{
    gamma_kappa, phase_diffused_complexity, photon_variant_channel_complexity, photon_variant_complexity,
    quartic_law_check, quartic_log_slope,
};
use qcomplexity::optimizer::maximize_1d;
use qcomplexity::states::{
    gaussian_complexity_closed_form, photon_sub_mixture_weights, q_gaussian, q_phase_diffused, q_photon_added,
    q_photon_subtracted, GaussianStateParams, PhaseDiffusionParams, PhotonVariant, PhotonVariantParams,
};
use qcomplexity::{channel_complexity, ChannelSpec, QField, QuadratureConfig, SearchConfig, EXP_EULER_GAMMA};

const FOCK_DIM: usize = 70;

struct Criterion {
    id: u32,
    failures: Vec<String>,
}

impl Criterion {
    fn new(id: u32) -> Self {
        Self {
            id,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, name: &str, pass: bool, detail: String) {
        let tag = if pass { "PASS" } else { "FAIL" };
        println!("ACCEPTANCE #{:<2} {tag} {name}: {detail}", self.id);
        if !pass {
            self.failures.push(name.to_string());
        }
    }

    fn finish(self) {
        assert!(
            self.failures.is_empty(),
            "criterion #{} failed checks: {:?}",
            self.id,
            self.failures
        );
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn cfg() -> QuadratureConfig {
    QuadratureConfig::default()
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
}

fn logspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    linspace(a.ln(), b.ln(), n).into_iter().map(f64::exp).collect()
}

fn curve<F: Fn(f64) -> f64 + Sync>(xs: &[f64], f: F) -> Vec<f64> {
    xs.par_iter().map(|&x| f(x)).collect()
}

/// Largest violation of `ys` strictly increasing (negative when it holds).
fn worst_step(ys: &[f64], increasing: bool) -> f64 {
    ys.windows(2)
        .map(|w| if increasing { w[0] - w[1] } else { w[1] - w[0] })
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Largest violation of `lower <= upper` pointwise (negative when it holds).
fn worst_order(lower: &[f64], upper: &[f64]) -> f64 {
    lower
        .iter()
        .zip(upper)
        .map(|(l, u)| l - u)
        .fold(f64::NEG_INFINITY, f64::max)
}

#[test]
fn criterion_01_displaced_thermal_minimality() {
    let mut cr = Criterion::new(1);
    let pairs = [
        (c(0.0, 0.0), 0.0),
        (c(0.5, 0.0), 0.0),
        (c(0.0, -1.5), 0.0),
        (c(3.0, 2.0), 0.0),
        (c(0.0, 0.0), 0.3),
        (c(1.0, 1.0), 0.5),
        (c(-2.0, 0.5), 1.0),
        (c(0.0, 0.0), 2.0),
        (c(4.0, -3.0), 3.0),
        (c(0.2, 0.1), 5.0),
        (c(-1.0, -1.0), 10.0),
        (c(6.0, 0.0), 25.0),
    ];
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for (xi, n) in pairs {
        let f = q_gaussian(GaussianStateParams::displaced_thermal(xi, n).unwrap()).unwrap();
        let v = complexity(&f, &cfg()).unwrap().complexity;
        worst = worst.max((v - 1.0).abs());
    }
    let secs = start.elapsed().as_secs_f64();
    cr.check(
        "C = 1 on 12 displaced thermal states",
        worst <= 1e-6,
        format!("max |C-1| = {worst:.3e}"),
    );
    cr.check("runtime < 10 s", secs < 10.0, format!("{secs:.2} s"));
    cr.finish();
}

#[test]
fn criterion_02_gaussian_closed_form() {
    let mut cr = Criterion::new(2);
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for mu in [0.2, 0.5, 1.0] {
        for r in [0.0, 0.5, 1.0] {
            let p = GaussianStateParams::new(c(0.4, -0.7), r, 1.1, mu).unwrap();
            let v = complexity(&q_gaussian(p).unwrap(), &cfg()).unwrap().complexity;
            worst = worst.max((v - gaussian_complexity_closed_form(mu, r).unwrap()).abs());
        }
    }
    let secs = start.elapsed().as_secs_f64();
    cr.check(
        "quadrature vs closed form on 3x3 grid",
        worst <= 1e-6,
        format!("max residual {worst:.3e}"),
    );
    cr.check("runtime < 30 s", secs < 30.0, format!("{secs:.2} s"));
    cr.finish();
}

#[test]
fn criterion_03_gaussian_channel() {
    let mut cr = Criterion::new(3);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let search = SearchConfig::default();
    let (mut worst, mut all_boundary) = (0.0f64, true);
    for _ in 0..10 {
        let n: f64 = rng.gen_range(0.0..3.0);
        let m = rng.gen_range(0.05..1.0) * (n * (n + 1.0)).sqrt();
        let gt = rng.gen_range(0.05..5.0);
        let ch = GaussianChannelParams::with_real_squeezing(n, m).unwrap();
        let rep = channel_complexity(&ChannelSpec::Gaussian { channel: ch, time: gt }, &search).unwrap();
        let closed = 1.0 / (1.0 - 4.0 * (m / (1.0 / (0.5 * gt).tanh() + 2.0 * n + 1.0)).powi(2)).sqrt();
        let scan_max = linspace(0.01, 1.0, 100)
            .into_iter()
            .map(|mu0| {
                let (mu, r) = evolve_purity_squeezing(mu0, gt, &ch).unwrap();
                gaussian_complexity_closed_form(mu, r).unwrap()
            })
            .fold(f64::NEG_INFINITY, f64::max);
        worst = worst
            .max((scan_max - closed).abs())
            .max(rep.diagnostics.search_residual.unwrap())
            .max((rep.finite_value().unwrap() - closed).abs());
        let arg_mu0 = 1.0 / (2.0 * rep.argmax.unwrap().thermal_photons + 1.0);
        all_boundary &= rep.boundary_optimum && (arg_mu0 - 1.0).abs() < 1e-12;
    }
    cr.check(
        "mu0-scan supremum vs closed form (10 random)",
        worst <= 1e-6,
        format!("max residual {worst:.3e}"),
    );
    cr.check(
        "argmax at mu0 = 1 on the boundary",
        all_boundary,
        format!("{all_boundary}"),
    );

    let mut exact = true;
    for (n, gt) in [(0.0, 1.0), (0.7, 0.2), (2.5, 4.0)] {
        let ch = GaussianChannelParams::with_real_squeezing(n, 0.0).unwrap();
        let rep = channel_complexity(&ChannelSpec::Gaussian { channel: ch, time: gt }, &search).unwrap();
        exact &= rep.finite_value() == Some(1.0) && channel_complexity_at_t(&ch, gt).unwrap() == 1.0;
    }
    cr.check("M = 0 channels give exactly 1", exact, format!("{exact}"));

    let (mut bound_ok, mut eq_worst) = (true, 0.0f64);
    for n in [0.0f64, 0.3, 1.0, 4.0, 20.0] {
        let top = (n * (n + 1.0)).sqrt();
        for frac in [0.0, 0.25, 0.5, 0.9, 1.0] {
            let ch = GaussianChannelParams::with_real_squeezing(n, frac * top).unwrap();
            bound_ok &= channel_complexity_asymptotic(&ch) <= (n + 1.0).sqrt() + 1e-9;
        }
        let ch = GaussianChannelParams::with_real_squeezing(n, top).unwrap();
        eq_worst = eq_worst.max((channel_complexity_asymptotic(&ch) - (n + 1.0).sqrt()).abs());
    }
    cr.check("C(E_inf) <= sqrt(N+1)", bound_ok, format!("{bound_ok}"));
    cr.check(
        "equality at |M|^2 = N(N+1)",
        eq_worst <= 1e-9,
        format!("max gap {eq_worst:.3e}"),
    );
    cr.finish();
}

type Cov = [[f64; 2]; 2];

fn cov_add(a: Cov, b: Cov, s: f64) -> Cov {
    [
        [a[0][0] + s * b[0][0], a[0][1] + s * b[0][1]],
        [a[1][0] + s * b[1][0], a[1][1] + s * b[1][1]],
    ]
}

/// RK4 on `dσ/dt = Γ(σ∞ - σ)` with the vacuum at `σ = I/4`.
fn rk4_covariance(sigma0: Cov, sigma_inf: Cov, damping: f64, t: f64, steps: usize) -> Cov {
    let rhs = |s: Cov| cov_add(sigma_inf, s, -1.0).map(|row| row.map(|v| damping * v));
    let h = t / steps as f64;
    let mut s = sigma0;
    for _ in 0..steps {
        let k1 = rhs(s);
        let k2 = rhs(cov_add(s, k1, 0.5 * h));
        let k3 = rhs(cov_add(s, k2, 0.5 * h));
        let k4 = rhs(cov_add(s, k3, h));
        let mut incr = cov_add(k1, k2, 2.0);
        incr = cov_add(incr, k3, 2.0);
        incr = cov_add(incr, k4, 1.0);
        s = cov_add(s, incr, h / 6.0);
    }
    s
}

#[test]
fn criterion_04_evolution_oracle() {
    let mut cr = Criterion::new(4);
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (mut worst_mu, mut worst_r) = (0.0f64, 0.0f64);
    for _ in 0..20 {
        let n: f64 = rng.gen_range(0.0..3.0);
        let m = Complex64::from_polar(
            rng.gen_range(0.0..1.0) * (n * (n + 1.0)).sqrt(),
            rng.gen_range(0.0..2.0 * PI),
        );
        let damping = rng.gen_range(0.2..2.0);
        let t = rng.gen_range(0.1..4.0);
        let mu0 = rng.gen_range(0.05..1.0);
        let ch = GaussianChannelParams::new(damping, n, m).unwrap();
        let (mu, r) = evolve_purity_squeezing(mu0, t, &ch).unwrap();

        let d = (2.0 * n + 1.0) / 4.0;
        let sigma_inf = [[d + 0.5 * m.re, 0.5 * m.im], [0.5 * m.im, d - 0.5 * m.re]];
        let v0 = 0.25 / mu0;
        let s = rk4_covariance([[v0, 0.0], [0.0, v0]], sigma_inf, damping, t, 20_000);
        let det = s[0][0] * s[1][1] - s[0][1] * s[1][0];
        let mu_rk = 0.25 / det.sqrt();
        let r_rk = 0.5 * (2.0 * mu_rk * (s[0][0] + s[1][1])).max(1.0).acosh();
        worst_mu = worst_mu.max((mu - mu_rk).abs());
        worst_r = worst_r.max((r - r_rk).abs());
    }
    cr.check(
        "purity vs RK4 covariance flow (20 random)",
        worst_mu <= 1e-9,
        format!("max |dmu| = {worst_mu:.3e}"),
    );
    cr.check(
        "squeezing vs RK4 covariance flow (20 random)",
        worst_r <= 1e-9,
        format!("max |dr| = {worst_r:.3e}"),
    );
    cr.finish();
}

#[test]
fn criterion_05_photon_addition() {
    let mut cr = Criterion::new(5);
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for n in [0.5, 1.0, 5.0] {
        let v = photon_variant_complexity(PhotonVariantParams::added(0.0, n).unwrap(), &cfg()).unwrap();
        worst = worst.max((v - EXP_EULER_GAMMA).abs());
    }
    let rep = photon_variant_channel_complexity(PhotonVariant::Added, &cfg()).unwrap();
    let secs = start.elapsed().as_secs_f64();
    cr.check(
        "C(rho_+(0, nbar)) = e^gamma",
        worst <= 1e-5,
        format!("max |C - e^gamma| = {worst:.3e}"),
    );
    cr.check(
        "channel report attains e^gamma",
        rep.attained && rep.finite_value() == Some(EXP_EULER_GAMMA),
        format!("attained = {}", rep.attained),
    );
    cr.check("runtime < 20 s", secs < 20.0, format!("{secs:.2} s"));
    cr.finish();
}

#[test]
fn criterion_06_photon_subtraction() {
    let mut cr = Criterion::new(6);
    let mut worst: f64 = 0.0;
    for n in [0.1, 1.0, 7.0] {
        let (w_add, w_th) = photon_sub_mixture_weights(n).unwrap();
        let sub = q_photon_subtracted(PhotonVariantParams::subtracted(0.0, n).unwrap()).unwrap();
        let add = q_photon_added(PhotonVariantParams::added(0.0, n).unwrap()).unwrap();
        let th = q_gaussian(GaussianStateParams::displaced_thermal(c(0.0, 0.0), n).unwrap()).unwrap();
        for x in linspace(-6.0, 6.0, 41) {
            for y in linspace(-6.0, 6.0, 41) {
                let a = c(x, y);
                worst = worst.max((sub.value(a) - w_add * add.value(a) - w_th * th.value(a)).abs());
            }
        }
    }
    cr.check(
        "mixture identity on 41x41 grid",
        worst <= 1e-12,
        format!("max residual {worst:.3e}"),
    );

    let ns = [1.0, 10.0, 50.0, 200.0];
    let cs = curve(&ns, |n| {
        photon_variant_complexity(PhotonVariantParams::subtracted(0.0, n).unwrap(), &cfg()).unwrap()
    });
    let step = worst_step(&cs, true);
    cr.check(
        "C(rho_-(0, nbar)) strictly increasing",
        step < 0.0,
        format!("values {cs:.6?}"),
    );
    let top = cs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    cr.check(
        "bounded by e^gamma + 1e-4",
        top <= EXP_EULER_GAMMA + 1e-4,
        format!("max {top:.8} vs {EXP_EULER_GAMMA:.8}"),
    );
    cr.finish();
}

#[test]
fn criterion_07_quartic_law_and_figures() {
    let mut cr = Criterion::new(7);
    let q = cfg();
    let slope_grid = linspace(0.05, 0.15, 5);
    for kappa in [1.0, 3.0, 10.0] {
        let s = quartic_law_check(kappa, 0.1, &q).unwrap();
        let ratio = s.ratio();
        cr.check(
            &format!("kappa = {kappa}: (C-1)/xi^4 at xi = 0.1 within 5% of gamma"),
            (ratio - 1.0).abs() <= 0.05,
            format!("ratio {ratio:.4}"),
        );
        let slope = quartic_log_slope(kappa, &slope_grid, &q).unwrap();
        cr.check(
            &format!("kappa = {kappa}: log-log slope 4.0 +- 0.1"),
            (slope - 4.0).abs() <= 0.1,
            format!("slope {slope:.4}"),
        );
    }

    let pd = |k: f64, xi: f64| phase_diffused_complexity(k, xi, 0.0, &q).unwrap();

    // fig1a: increasing in xi; kappa = 0.001, 3, 10 from top to bottom
    let xs = linspace(0.5, 6.0, 23);
    let kappas = [0.001, 3.0, 10.0];
    let fig1: Vec<Vec<f64>> = kappas.iter().map(|&k| curve(&xs, |x| pd(k, x))).collect();
    for (k, ys) in kappas.iter().zip(&fig1) {
        let w = worst_step(ys, true);
        cr.check(
            &format!("fig1 kappa = {k}: increasing in xi on [0.5, 6]"),
            w < 0.0,
            format!("worst step {w:.3e}"),
        );
    }
    let large: Vec<usize> = (0..xs.len()).filter(|&i| xs[i] >= 2.0).collect();
    let pick = |ys: &Vec<f64>| large.iter().map(|&i| ys[i]).collect::<Vec<_>>();
    let o1 = worst_order(&pick(&fig1[1]), &pick(&fig1[0]));
    let o2 = worst_order(&pick(&fig1[2]), &pick(&fig1[1]));
    cr.check(
        "fig1 ordering kappa = 0.001 > 3 > 10 for xi in [2, 6]",
        o1 < 0.0 && o2 < 0.0,
        format!("worst gaps {o1:.3e}, {o2:.3e}"),
    );

    // fig2: increasing in -ln kappa; xi = 1, 2, 3 from bottom to top
    let lk = linspace(-3.0, 7.0, 21);
    let mut fig2 = Vec::new();
    for xi in [1.0, 2.0, 3.0] {
        let ys = curve(&lk, |t| pd((-t).exp(), xi));
        let w = worst_step(&ys, true);
        cr.check(
            &format!("fig2 xi = {xi}: increasing in -ln kappa on [-3, 7]"),
            w < 0.0,
            format!("worst step {w:.3e}"),
        );
        fig2.push(ys);
    }
    let o = worst_order(&fig2[0], &fig2[1]).max(worst_order(&fig2[1], &fig2[2]));
    cr.check("fig2 ordering xi = 1 < 2 < 3", o < 0.0, format!("worst gap {o:.3e}"));

    for (variant, fig) in [(PhotonVariant::Added, "fig3"), (PhotonVariant::Subtracted, "fig4")] {
        let pv =
            |xi: f64, n: f64| photon_variant_complexity(PhotonVariantParams::new(variant, xi, n).unwrap(), &q).unwrap();
        // panel a: decreasing in xi; nbar = 0.1, 1, 10 from bottom to top
        let xs = linspace(0.0, 3.0, 21);
        let nbars = [0.1, 1.0, 10.0];
        let panel_a: Vec<Vec<f64>> = nbars.iter().map(|&n| curve(&xs, |x| pv(x, n))).collect();
        for (n, ys) in nbars.iter().zip(&panel_a) {
            let w = worst_step(ys, false);
            cr.check(
                &format!("{fig}a nbar = {n}: decreasing in xi on [0, 3]"),
                w < 0.0,
                format!("worst step {w:.3e}"),
            );
        }
        let o = worst_order(&panel_a[0], &panel_a[1]).max(worst_order(&panel_a[1], &panel_a[2]));
        cr.check(
            &format!("{fig}a ordering nbar = 0.1 <= 1 <= 10"),
            o <= 1e-6,
            format!("worst gap {o:.3e}"),
        );

        // panel b: increasing in nbar; xi = 0.1, 1, 3 from top to bottom
        let ns = logspace(0.1, 10.0, 20);
        let xis = [0.1, 1.0, 3.0];
        let panel_b: Vec<Vec<f64>> = xis.iter().map(|&x| curve(&ns, |n| pv(x, n))).collect();
        for (x, ys) in xis.iter().zip(&panel_b) {
            let w = worst_step(ys, true);
            cr.check(
                &format!("{fig}b xi = {x}: increasing in nbar on [0.1, 10]"),
                w < 0.0,
                format!("worst step {w:.3e}"),
            );
        }
        let o = worst_order(&panel_b[1], &panel_b[0]).max(worst_order(&panel_b[2], &panel_b[1]));
        cr.check(
            &format!("{fig}b ordering xi = 0.1 > 1 > 3"),
            o < 0.0,
            format!("worst gap {o:.3e}"),
        );
    }
    cr.finish();
}

#[test]
fn criterion_08_scaling_reduction() {
    let mut cr = Criterion::new(8);
    for kappa in [0.5, 3.0] {
        let a = phase_diffused_complexity(kappa, 2.0, 3.0, &cfg()).unwrap();
        let b = phase_diffused_complexity(kappa, 1.0, 0.0, &cfg()).unwrap();
        cr.check(
            &format!("kappa = {kappa}: C(2, 3) = C(1, 0)"),
            (a - b).abs() <= 1e-6,
            format!("|diff| = {:.3e}", (a - b).abs()),
        );
    }
    cr.finish();
}

#[test]
fn criterion_09_fock_oracle() {
    let mut cr = Criterion::new(9);
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let points = |rng: &mut ChaCha8Rng| {
        (0..50)
            .map(|_| Complex64::from_polar(rng.gen_range(0.0..3.5), rng.gen_range(0.0..2.0 * PI)))
            .collect::<Vec<_>>()
    };

    let max_diff =
        |analytic: &dyn QField, fock: &qcomplexity::fock::FockDensityMatrix, shift: f64, pts: &[Complex64]| {
            pts.iter()
                .map(|&a| (analytic.value(a - shift) - husimi_from_fock(fock, a).unwrap()).abs())
                .fold(0.0, f64::max)
        };

    // displaced thermal
    let (xi, n) = (1.0, 0.5);
    let base = displaced_thermal_fock(c(xi, 0.0), n, FOCK_DIM).unwrap();
    let gauss = q_gaussian(GaussianStateParams::displaced_thermal(c(xi, 0.0), n).unwrap()).unwrap();
    let d = max_diff(&gauss, &base, 0.0, &points(&mut rng));
    cr.check(
        "Husimi: displaced thermal (1, 0.5)",
        d <= 1e-8,
        format!("max |dQ| = {d:.3e}"),
    );

    // phase diffused
    let kappa = 3.0;
    let diffused = dephase_von_mises(&base, kappa).unwrap();
    let pdf = q_phase_diffused(PhaseDiffusionParams::new(kappa, xi, n).unwrap()).unwrap();
    let d = max_diff(&pdf, &diffused, 0.0, &points(&mut rng));
    cr.check(
        "Husimi: phase diffused (3, 1, 0.5)",
        d <= 1e-8,
        format!("max |dQ| = {d:.3e}"),
    );

    // photon added and subtracted
    let (added, _) = apply_ladder(&base, PhotonVariant::Added).unwrap();
    let (subbed, _) = apply_ladder(&base, PhotonVariant::Subtracted).unwrap();
    let qa = q_photon_added(PhotonVariantParams::added(xi, n).unwrap()).unwrap();
    let qs = q_photon_subtracted(PhotonVariantParams::subtracted(xi, n).unwrap()).unwrap();
    let d = max_diff(&qa, &added, 0.0, &points(&mut rng));
    cr.check(
        "Husimi: photon added (1, 0.5)",
        d <= 1e-8,
        format!("max |dQ| = {d:.3e}"),
    );
    let d = max_diff(&qs, &subbed, xi, &points(&mut rng));
    cr.check(
        "Husimi: photon subtracted (1, 0.5)",
        d <= 1e-8,
        format!("max |dQ| = {d:.3e}"),
    );

    // complexity of one representative per family
    let q = cfg();
    let reps: Vec<(&str, f64, f64)> = vec![
        (
            "displaced thermal (1, 0.5)",
            complexity_from_fock(&base, &q).unwrap().complexity,
            complexity(&gauss, &q).unwrap().complexity,
        ),
        (
            "phase diffused (3, 1, 0)",
            complexity_from_fock(
                &dephase_von_mises(&displaced_thermal_fock(c(1.0, 0.0), 0.0, FOCK_DIM).unwrap(), 3.0).unwrap(),
                &q,
            )
            .unwrap()
            .complexity,
            phase_diffused_complexity(3.0, 1.0, 0.0, &q).unwrap(),
        ),
        (
            "photon added (0, 1)",
            complexity_from_fock(
                &apply_ladder(
                    &displaced_thermal_fock(c(0.0, 0.0), 1.0, FOCK_DIM).unwrap(),
                    PhotonVariant::Added,
                )
                .unwrap()
                .0,
                &q,
            )
            .unwrap()
            .complexity,
            photon_variant_complexity(PhotonVariantParams::added(0.0, 1.0).unwrap(), &q).unwrap(),
        ),
        (
            "photon subtracted (1, 1)",
            complexity_from_fock(
                &apply_ladder(
                    &displaced_thermal_fock(c(1.0, 0.0), 1.0, FOCK_DIM).unwrap(),
                    PhotonVariant::Subtracted,
                )
                .unwrap()
                .0,
                &q,
            )
            .unwrap()
            .complexity,
            photon_variant_complexity(PhotonVariantParams::subtracted(1.0, 1.0).unwrap(), &q).unwrap(),
        ),
    ];
    for (name, fock, analytic) in reps {
        let d = (fock - analytic).abs();
        cr.check(
            &format!("complexity: {name}"),
            d <= 1e-4,
            format!("fock {fock:.9} vs analytic {analytic:.9}"),
        );
    }
    let secs = start.elapsed().as_secs_f64();
    cr.check("runtime < 2 min", secs < 120.0, format!("{secs:.2} s"));
    cr.finish();
}

#[test]
fn criterion_10_gamma_limits() {
    let mut cr = Criterion::new(10);
    let g = |k: f64| gamma_kappa(k).unwrap().gamma;
    cr.check("gamma(1e-3) <= 1e-10", g(1e-3) <= 1e-10, format!("{:.3e}", g(1e-3)));
    let ratio = g(0.01) / (0.01f64.powi(4) / 32.0);
    cr.check(
        "gamma(0.01) / (kappa^4/32) within 1%",
        (ratio - 1.0).abs() <= 0.01,
        format!("ratio {ratio:.6}"),
    );
    cr.check("gamma(1e3) <= 1e-5", g(1e3) <= 1e-5, format!("{:.3e}", g(1e3)));
    let m = maximize_1d(|k| Ok(g(k)), (0.1, 50.0), 1e-8).unwrap();
    cr.check(
        "interior maximum above gamma(0.1) and gamma(50)",
        !m.on_boundary && m.value > g(0.1) && m.value > g(50.0),
        format!("max gamma {:.6e} at kappa {:.4}", m.value, m.arg),
    );
    cr.finish();
}
