//! The restriction quotient `‖φ̂|_S‖_{L²(dμ)} / ‖φ‖_p` for graphs
//! `S = {ξ_n = R(ξ′)}` and its behaviour under the nonisotropic dilations
//! `d_s φ(x) = φ(s^{1/k_1} x_1, …, s^{1/k_{n-1}} x_{n-1}, s x_n)`.

mod dilation;
mod profile;
mod quotient;

pub use dilation::{dilate, DilationSpec};
pub use profile::GaussianProfile;
pub use quotient::{
    necessity_quotients, necessity_scan, restriction_quotient, surface_samples, RestrictionSetup, SurfaceSpec,
    BAND_SAFETY,
};

#[cfg(test)]
mod tests;
