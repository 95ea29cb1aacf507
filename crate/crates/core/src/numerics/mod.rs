//! Foundation kernels shared by every other module.

mod extrapolate;
mod fit;
mod fourier;
mod grid;
mod quad;

pub use extrapolate::{richardson_limit, Extrapolation};
pub use fit::{loglog_fit, DecayFit};
pub(crate) use fourier::{apply_axis_phases, fft_axes, fft_frequencies, require_power_of_two};
pub use fourier::{dft_at, fft_nd, Direction};
pub use grid::{boundary_mass_fraction, lp_norm, Domain, Grid, SampledField};
pub use quad::{adaptive_quad, adaptive_quad_with, ray_quad, ray_quad_with, QuadOptions, QuadResult};

/// C-style `%.12e`: `1.250000000000e-03`, exponent signed and at least two digits.
pub fn sci(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    let s = format!("{x:.12e}");
    let (mant, exp) = s.split_once('e').expect("exponent marker");
    let e: i32 = exp.parse().expect("integer exponent");
    let sign = if e < 0 { '-' } else { '+' };
    format!("{mant}e{sign}{:02}", e.abs())
}
