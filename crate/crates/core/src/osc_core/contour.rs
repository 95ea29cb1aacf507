use num_complex::Complex64;
use std::f64::consts::PI;

use super::phase::Exponent;
use super::{Method, OscResult};
use crate::numerics::{adaptive_quad_with, ray_quad_with, QuadOptions, QuadResult};
use crate::{Error, Result};

const MAX_SEGMENT_PANELS: usize = 200_000;

/// `∫_0^∞ exp(i(y v + c v^K)) dv` for real `c ≠ 0`, `K > 1`.
///
/// The contour runs along the real axis to the stationary point
/// `v* = (-y/(Kc))^{1/(K-1)}` (or stays at 0 when `y ≥ 0`) and then leaves
/// on the ray of angle `π/(2K)`. Along that ray the exact log-modulus
/// `-y u sin α - c Im((v* + u e^{iα})^K)` is concave and decreasing, so it is
/// its own decay certificate and the integrand never exceeds 1.
pub(crate) fn half_line(y: f64, c: f64, big_k: f64, tol: f64) -> Result<QuadResult> {
    if c < 0.0 {
        let r = half_line(-y, -c, big_k, tol)?;
        return Ok(QuadResult {
            value: r.value.conj(),
            ..r
        });
    }
    if !(c > 0.0) || !c.is_finite() || !y.is_finite() {
        return Err(Error::invalid(format!(
            "half-line integral needs finite y and c != 0, got y = {y}, c = {c}"
        )));
    }
    let alpha = PI / (2.0 * big_k);
    let rot = Complex64::from_polar(1.0, alpha);
    let base = if y < 0.0 {
        (-y / (big_k * c)).powf(1.0 / (big_k - 1.0))
    } else {
        0.0
    };

    let mut value = Complex64::new(0.0, 0.0);
    let mut err_est = 0.0;
    let mut evals = 0;
    let mut ray_tol = tol;
    if base > 0.0 {
        // Phase y v + c v^K sweeps |y| v*(1 - 1/K) radians on [0, v*].
        let sweep = y.abs() * base * (1.0 - 1.0 / big_k);
        let panels = ((sweep / PI).ceil() as usize).clamp(1, MAX_SEGMENT_PANELS);
        let opts = QuadOptions {
            initial_panels: panels,
            max_subdivisions: 4 * panels + 400_000,
        };
        let seg = adaptive_quad_with(
            |v| Complex64::from_polar(1.0, y * v + c * v.powf(big_k)),
            0.0,
            base,
            0.5 * tol,
            &opts,
        )?;
        value += seg.value;
        err_est += seg.err_est;
        evals += seg.evals;
        ray_tol = 0.5 * tol;
    }

    let w = |u: f64| Complex64::new(base, 0.0) + rot * u;
    let exponent = |u: f64| {
        let z = w(u);
        Complex64::i() * (y * z + c * z.powf(big_k))
    };
    let ray = ray_quad_with(
        |u| rot * exponent(u).exp(),
        |u| exponent(u).re,
        ray_tol,
        &QuadOptions {
            initial_panels: 8,
            ..QuadOptions::default()
        },
    )?;
    value += ray.value;
    err_est += ray.err_est;
    evals += ray.evals;
    Ok(QuadResult { value, err_est, evals })
}

/// `∫_ℝ exp(i x ξ + i t ψ(ξ)) dξ` (as the ε ↘ 0 limit) by contour deformation.
pub fn oscillatory_integral(exponent: Exponent, x: f64, t: f64, tol: f64) -> Result<OscResult> {
    exponent.validate()?;
    if !(tol > 0.0) {
        return Err(Error::invalid(format!("tolerance must be positive, got {tol}")));
    }
    if t == 0.0 || !t.is_finite() {
        return Err(Error::Domain(format!(
            "phase coefficient must be finite and nonzero, got {t}"
        )));
    }
    if !x.is_finite() {
        return Err(Error::invalid(format!("x must be finite, got {x}")));
    }
    let big_k = exponent.value();
    let r = if exponent.is_even() {
        let pos = half_line(x, t, big_k, 0.5 * tol)?;
        let neg = half_line(-x, t, big_k, 0.5 * tol)?;
        QuadResult {
            value: pos.value + neg.value,
            err_est: pos.err_est + neg.err_est,
            evals: pos.evals + neg.evals,
        }
    } else {
        // The negative half-line is the conjugate of the positive one.
        let pos = half_line(x, t, big_k, 0.5 * tol)?;
        QuadResult {
            value: Complex64::new(2.0 * pos.value.re, 0.0),
            err_est: 2.0 * pos.err_est,
            evals: pos.evals,
        }
    };
    if r.err_est > tol {
        return Err(Error::NonConvergence {
            best: r.value,
            err_est: r.err_est,
            evals: r.evals,
        });
    }
    Ok(OscResult {
        value: r.value,
        err_est: r.err_est,
        method: Method::Contour,
    })
}

/// `A_k(x)` by rotated-contour quadrature.
pub fn ak_contour(k: u32, x: f64, tol: f64) -> Result<OscResult> {
    oscillatory_integral(Exponent::Int(k), x, 1.0, tol)
}

/// `∫ exp(i x ξ + i|ξ|^K) dξ` for real `K > 1`.
pub fn ak_abs(big_k: f64, x: f64, tol: f64) -> Result<OscResult> {
    oscillatory_integral(Exponent::Abs(big_k), x, 1.0, tol)
}
