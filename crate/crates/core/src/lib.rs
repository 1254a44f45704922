//! Phase-space statistical complexity of single-mode bosonic states and of
//! the channels acting on them.
//!
//! The complexity of a state is `C(ρ) = exp(S_W(ρ) - 1) I(ρ)`, built from the
//! Wehrl entropy and the location Fisher information of its Husimi function.
//! A channel's complexity is the largest complexity it can produce from a
//! displaced thermal input.

pub mod error;
pub mod fock;
pub mod functionals;
pub mod gaussian;
pub mod nongaussian;
pub mod numerics;
pub mod optimizer;
pub mod states;

pub use error::{Error, Result};
pub use functionals::{complexity, ComplexityValue, QField};
pub use numerics::QuadratureConfig;
pub use optimizer::{channel_complexity, ChannelSpec, ComplexityReport, SearchConfig};

/// `e^γ` with γ the Euler–Mascheroni constant.
pub const EXP_EULER_GAMMA: f64 = 1.781_072_417_990_198;
