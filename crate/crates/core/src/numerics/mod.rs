//! Special functions and quadrature shared by the rest of the crate.

mod bessel;
pub mod gauss_legendre;
mod quadrature;

pub use bessel::{bessel_ratio, log_bessel_i, LogBesselValue};
pub(crate) use bessel::{i1_over_x_i0, ln_i};
pub use quadrature::{
    integrate_all, integrate_phase_plane, IntegrandKind, PhaseIntegrals, QuadratureConfig, RMaxPolicy, FISHER_FLOOR,
};
