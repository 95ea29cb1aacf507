//! Executable forms of the one-dimensional estimates: bound sweeps, decay
//! fits, the half-line transform identity, the factorised `Ǧ_z`, and the
//! critical-exponent arithmetic.

mod exponents;
mod gz;
mod lemma22;
mod sweeps;

pub use exponents::{critical_exponents, CriticalExponents};
pub use gz::{gz_eta_scan, gz_eval, EtaPoint, EtaScan, GzSpec};
pub use lemma22::{half_line_transform, half_line_transform_check, EpsSample, HalfLineReport, LIMIT_TOL, PER_EPS_TOL};
pub use sweeps::{
    bound_sweep, decay_fit, geometric_grid, interval_integral, scaled_magnitudes, uniform_grid, vdcorput_interval,
    BoundSweep, SweepSample, Violation,
};
