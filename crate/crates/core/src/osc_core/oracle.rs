use num_complex::Complex64;
use std::f64::consts::PI;

use super::{Method, OscResult};
use crate::exec;
use crate::numerics::{adaptive_quad_with, richardson_limit, QuadOptions};
use crate::{Error, Result};

/// `ln(1e14)` rounded up: the truncation point satisfies `e^{-εL^k} < 1e-14`.
const TRUNCATION_LOG: f64 = 32.3;
const LEVEL_TOL: f64 = 1e-11;
/// Largest extrapolation residual the oracle will vouch for.
pub const ORACLE_RESIDUAL_LIMIT: f64 = 1e-6;

/// Starting ε and number of halvings suited to `(k, x)`.
///
/// Regularisation damps the stationary point `s* = (|x|/k)^{1/(k-1)}` by
/// `e^{-ε s*^k}`, so the Taylor scale in ε shrinks like `s*^{-k}`.
pub fn default_eps_schedule(k: u32, x: f64) -> (f64, usize) {
    let s_star = (x.abs() / k as f64).powf(1.0 / (k as f64 - 1.0));
    let scale = s_star.powi(k as i32).max(1.0);
    (0.25 / scale, 7)
}

/// `∫_ℝ exp(-ε|s|^k + ixs + is^k) ds` over `|s| ≤ L`, folded onto `[0, L]`.
pub fn regularized_integral(k: u32, x: f64, eps: f64) -> Result<(Complex64, f64)> {
    let kf = k as f64;
    let len = (TRUNCATION_LOG / eps).powf(1.0 / kf);
    let sweep = len.powf(kf) + x.abs() * len;
    let panels = ((sweep / PI).ceil() as usize).max(16);
    let opts = QuadOptions {
        initial_panels: panels,
        max_subdivisions: 8 * panels + 400_000,
    };
    let even = k.is_multiple_of(2);
    let r = adaptive_quad_with(
        |s| {
            let sk = s.powi(k as i32);
            let damp = (-eps * sk).exp();
            if even {
                Complex64::from_polar(2.0 * damp * (x * s).cos(), sk)
            } else {
                Complex64::new(2.0 * damp * (x * s + sk).cos(), 0.0)
            }
        },
        0.0,
        len,
        LEVEL_TOL,
        &opts,
    )?;
    Ok((r.value, r.err_est))
}

/// `A_k(x)` as the literal `ε ↘ 0` limit: real-line quadrature at
/// `ε = eps0 / 2^m`, `m < levels`, then Richardson extrapolation.
pub fn ak_eps_oracle(k: u32, x: f64, eps0: f64, levels: usize) -> Result<OscResult> {
    if k < 2 {
        return Err(Error::invalid(format!("k must be >= 2, got {k}")));
    }
    if !(eps0 > 0.0 && eps0 <= 1.0) {
        return Err(Error::invalid(format!("eps0 must lie in (0, 1], got {eps0}")));
    }
    if levels < 3 {
        return Err(Error::invalid(format!("need at least 3 levels, got {levels}")));
    }
    if !x.is_finite() {
        return Err(Error::invalid(format!("x must be finite, got {x}")));
    }
    let eps: Vec<f64> = (0..levels).map(|m| eps0 / 2f64.powi(m as i32)).collect();
    let samples = exec::try_map(&eps, |&e| regularized_integral(k, x, e).map(|(v, err)| (e, v, err)))?;
    let quad_err: f64 = samples.iter().map(|s| s.2).sum();
    let pairs: Vec<(f64, Complex64)> = samples.iter().map(|s| (s.0, s.1)).collect();
    let ex = richardson_limit(&pairs)?;
    let err_est = ex.err_est + quad_err;
    if err_est > ORACLE_RESIDUAL_LIMIT * ex.value.norm().max(1.0) {
        let trail: Vec<String> = pairs.iter().map(|(e, v)| format!("eps={e:.3e}: {v:.10}")).collect();
        return Err(Error::Extrapolation(format!(
            "residual {err_est:.3e} above {ORACLE_RESIDUAL_LIMIT:.0e} for k = {k}, x = {x}; samples [{}]",
            trail.join(", ")
        )));
    }
    Ok(OscResult {
        value: ex.value,
        err_est,
        method: Method::EpsOracle,
    })
}
