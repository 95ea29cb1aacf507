//! Oscillatory integrals of the form `∫ exp(i x s + i s^k) ds`, their uniform
//! bounds and decay laws, and the dispersive and restriction estimates built
//! on top of them.
//!
//! The crate is organised bottom-up:
//!
//! * [`numerics`]: adaptive quadrature, rays with certified truncation,
//!   Richardson extrapolation, grids, FFTs, norms and log-log fits.
//! * [`special_fn`]: complex Gamma, Airy `Ai`, `(x + i0)^w` and the Gaussian
//!   closed form.
//! * [`osc_core`]: `A_k(x)` by rotated contours, by the ε-regularised oracle
//!   and by closed forms; scaling, the `|ξ|^K` variant and product kernels.
//! * [`analysis`]: bound sweeps, decay fits, the half-line transform identity,
//!   the factorised `Ǧ_z` and critical exponents.
//! * [`dispersive`]: spectral propagator, Duhamel solver, the `T_s` operator
//!   and Strichartz quotients.
//! * [`restriction`]: surface sampling, restriction quotients and the
//!   nonisotropic dilation scan.
//!
//! All Fourier transforms use the symmetric convention
//! `f̂(ξ) = (2π)^{-n/2} ∫ f(x) e^{-ix·ξ} dx`.

// `!(x > 0.0)` style guards are kept on purpose: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod dispersive;
mod error;
pub mod exec;
pub mod numerics;
pub mod osc_core;
pub mod restriction;
pub mod special_fn;

pub use error::{Error, Result};
pub use num_complex::Complex64;
