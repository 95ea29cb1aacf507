//! Spectral solver for `D_t u - a(D)u = f` with a separable symbol, the
//! free-space operator `T_s`, decay scans and Strichartz quotients.
//!
//! Transforms use the symmetric `(2π)^{-n/2}` convention, so `propagate` is
//! `e^{ita(D)}` while `T_s` is `(2π)^{n/2} e^{iτa(D)}`.

mod problem;
mod propagate;
mod scans;
mod ts;

pub use problem::{EvolutionProblem, NormSeries, NormTag, BOUNDARY_GUARD, EDGE_BAND, INITIAL_GUARD};
pub use propagate::{duhamel_solve, duhamel_weights, propagate, solve_all};
pub use scans::{decay_scan, strichartz_dilation_scan, strichartz_quotient, DilationBase, DilationQuotient};
pub use ts::{interpolated_bound_check, interpolation_exponent, ts_apply_freespace};
