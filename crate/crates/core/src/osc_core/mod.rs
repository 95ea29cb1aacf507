//! The one-dimensional integral `A_k(x) = lim_{ε↘0} ∫ exp(-ε|s|^k + ixs + is^k) ds`,
//! its rescalings, the `|ξ|^K` variant and the separable n-dimensional kernel.
//!
//! Contour quadrature is the reference method; the ε-regularised oracle and the
//! Gaussian/Airy closed forms exist to check it.

mod bounds;
mod contour;
mod oracle;
mod phase;

pub use bounds::{ibp_bound, split_points, Regime, SplitPoints};
pub use contour::{ak_abs, ak_contour, oscillatory_integral};
pub use oracle::{ak_eps_oracle, default_eps_schedule, regularized_integral, ORACLE_RESIDUAL_LIMIT};
pub use phase::{Exponent, PhaseSpec, PhaseTerm};

use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

use crate::special_fn::{airy_ai, gaussian_closed_form};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Contour,
    EpsOracle,
    ClosedForm,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OscResult {
    pub value: Complex64,
    pub err_est: f64,
    pub method: Method,
}

/// `A_2` from the Gaussian formula, `A_3 = 2π 3^{-1/3} Ai(3^{-1/3} x)`.
pub fn ak_closed(k: u32, x: f64) -> Result<OscResult> {
    match k {
        2 => {
            let value = gaussian_closed_form(x, 1.0)?;
            Ok(OscResult {
                value,
                err_est: 1e-15 * value.norm(),
                method: Method::ClosedForm,
            })
        }
        3 => {
            let c = 3f64.powf(-1.0 / 3.0);
            let value = 2.0 * PI * c * airy_ai(c * x)?;
            Ok(OscResult {
                value: Complex64::new(value, 0.0),
                err_est: 2.0 * PI * c * 1e-10,
                method: Method::ClosedForm,
            })
        }
        _ => Err(Error::invalid(format!("closed form exists only for k = 2, 3, got {k}"))),
    }
}

/// `∫ exp(i x ξ + i τ ψ(ξ)) dξ` through `A_k` and the rescaling
/// `ξ ↦ |τ|^{-1/k} ξ`; negative `τ` conjugates with `x ↦ -x`.
pub fn scaled_term(exponent: Exponent, x: f64, tau: f64, tol: f64) -> Result<OscResult> {
    if tau == 0.0 || !tau.is_finite() {
        return Err(Error::Domain(format!("t must be finite and nonzero, got {tau}")));
    }
    let s = tau.abs().powf(-1.0 / exponent.value());
    let y = if tau > 0.0 { s * x } else { -s * x };
    let r = oscillatory_integral(exponent, y, 1.0, tol / s)?;
    let value = if tau > 0.0 { r.value } else { r.value.conj() };
    Ok(OscResult {
        value: s * value,
        err_est: s * r.err_est,
        method: r.method,
    })
}

/// `t^{-1/k} A_k(t^{-1/k} x)` for `t > 0`, `(-t)^{-1/k} conj(A_k(-(-t)^{-1/k} x))` for `t < 0`.
pub fn scaled_integral(k: u32, x: f64, t: f64, tol: f64) -> Result<OscResult> {
    scaled_term(Exponent::Int(k), x, t, tol)
}

/// `(2π)^{-n} ∏_j ∫ exp(i x_j ξ + i a_j t ψ_j(ξ)) dξ`, the free propagator of
/// `e^{i t a(D)}` at `x`.
pub fn kernel_nd(phase: &PhaseSpec, x: &[f64], t: f64, tol: f64) -> Result<Complex64> {
    if x.len() != phase.dims() {
        return Err(Error::invalid(format!(
            "x has {} coordinates, phase has {} terms",
            x.len(),
            phase.dims()
        )));
    }
    if t == 0.0 || !t.is_finite() {
        return Err(Error::Domain(format!("t must be finite and nonzero, got {t}")));
    }
    let n = phase.dims();
    let per_factor = tol / n as f64;
    let mut acc = Complex64::new((2.0 * PI).powi(-(n as i32)), 0.0);
    for (term, &xj) in phase.terms().iter().zip(x) {
        acc *= scaled_term(term.exponent, xj, term.coeff * t, per_factor)?.value;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests;
