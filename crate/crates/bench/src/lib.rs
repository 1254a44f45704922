//! Benchmark fixtures: one representative field per state family.

use num_complex::Complex64;
use qcomplexity::fock::{displaced_thermal_fock, FockField};
use qcomplexity::states::{
    q_gaussian, q_phase_diffused, q_photon_added, q_photon_subtracted, GaussianStateParams, PhaseDiffusionParams,
    PhotonVariantParams,
};
use qcomplexity::QField;

pub fn fixtures() -> Vec<(&'static str, Box<dyn QField>)> {
    let gaussian = GaussianStateParams::new(Complex64::new(1.0, -0.5), 0.6, 0.4, 0.5).expect("gaussian");
    vec![
        (
            "gaussian",
            Box::new(q_gaussian(gaussian).expect("gaussian")) as Box<dyn QField>,
        ),
        (
            "phase_diffused",
            Box::new(q_phase_diffused(PhaseDiffusionParams::new(3.0, 2.0, 0.5).expect("pd")).expect("pd")),
        ),
        (
            "photon_added",
            Box::new(q_photon_added(PhotonVariantParams::added(1.0, 1.0).expect("add")).expect("add")),
        ),
        (
            "photon_subtracted",
            Box::new(q_photon_subtracted(PhotonVariantParams::subtracted(1.0, 1.0).expect("sub")).expect("sub")),
        ),
        (
            "fock_d40",
            Box::new(FockField::new(
                displaced_thermal_fock(Complex64::new(1.0, 0.0), 0.5, 40).expect("fock"),
            )),
        ),
    ]
}
