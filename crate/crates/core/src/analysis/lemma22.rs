use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

use crate::exec;
use crate::numerics::{adaptive_quad, ray_quad, richardson_limit, QuadResult};
use crate::special_fn::{branch_power, gamma_complex};
use crate::{Error, Result};

/// Per-ε agreement required of the quadrature.
pub const PER_EPS_TOL: f64 = 1e-8;
/// Agreement required of the extrapolated limit.
pub const LIMIT_TOL: f64 = 1e-4;

/// `∫_0^∞ e^{-εξ} ξ^z e^{ixξ} dξ / Γ(z+1)` by quadrature.
///
/// `[0, 1]` is integrated in `ξ = r^m`, which makes `ξ^z dξ` smooth; the rest
/// runs up the line `1 + i·sgn(x)·u`, where `e^{ixξ}` decays like `e^{-|x|u}`.
pub fn half_line_transform(z: Complex64, x: f64, eps: f64, tol: f64) -> Result<QuadResult> {
    if !(z.re > -1.0) {
        return Err(Error::Domain(format!(
            "Re z must exceed -1 for a convergent integral, got {z}"
        )));
    }
    if x == 0.0 || !x.is_finite() {
        return Err(Error::invalid(format!("x must be finite and nonzero, got {x}")));
    }
    if !(eps > 0.0) {
        return Err(Error::invalid(format!("eps must be positive, got {eps}")));
    }
    let inv_gamma = 1.0 / gamma_complex(z + 1.0)?;
    let m = (4.0 / (z.re + 1.0)).ceil();
    let e = Complex64::new(-eps, x);
    let seg = adaptive_quad(
        |r| {
            if r == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            let xi = r.powf(m);
            // ξ^z dξ = m r^{m z + m - 1} dr
            m * ((z * m + (m - 1.0)) * r.ln()).exp() * (e * xi).exp()
        },
        0.0,
        1.0,
        0.25 * tol,
    )?;
    let dir = Complex64::new(0.0, x.signum());
    let ray = ray_quad(
        |u| {
            let xi = Complex64::new(1.0, 0.0) + dir * u;
            dir * (z * xi.ln()).exp() * (e * xi).exp()
        },
        |u| -eps - x.abs() * u + z.re.max(0.0) * (1.0 + u).ln() + z.im.abs() * PI / 2.0,
        0.25 * tol,
    )?;
    Ok(QuadResult {
        value: (seg.value + ray.value) * inv_gamma,
        err_est: (seg.err_est + ray.err_est) * inv_gamma.norm(),
        evals: seg.evals + ray.evals,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EpsSample {
    pub eps: f64,
    pub quadrature: Complex64,
    pub closed_form: Complex64,
    pub abs_err: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HalfLineReport {
    pub z: Complex64,
    pub x: f64,
    pub samples: Vec<EpsSample>,
    pub max_sample_err: f64,
    pub limit: Complex64,
    pub limit_err_est: f64,
    pub expected_limit: Complex64,
    pub limit_err: f64,
    pub samples_pass: bool,
    pub limit_pass: bool,
}

/// Per-ε quadrature against `(ε - ix)^{-z-1}`, and the extrapolated ε ↘ 0 limit
/// against `i e^{izπ/2} (x + i0)^{-z-1}`.
pub fn half_line_transform_check(z: Complex64, x: f64, eps_grid: &[f64]) -> Result<HalfLineReport> {
    if eps_grid.len() < 3 {
        return Err(Error::invalid("need at least three eps values"));
    }
    let samples = exec::try_map(eps_grid, |&eps| {
        let q = half_line_transform(z, x, eps, 1e-12)?;
        let closed = (Complex64::new(eps, -x).ln() * (-z - 1.0)).exp();
        Ok::<_, Error>(EpsSample {
            eps,
            quadrature: q.value,
            closed_form: closed,
            abs_err: (q.value - closed).norm(),
        })
    })?;
    let pairs: Vec<(f64, Complex64)> = samples.iter().map(|s| (s.eps, s.quadrature)).collect();
    let ex = richardson_limit(&pairs)?;
    let expected = Complex64::i() * (Complex64::i() * z * PI / 2.0).exp() * branch_power(x, -z - 1.0)?;
    let max_sample_err = samples.iter().map(|s| s.abs_err).fold(0.0, f64::max);
    let limit_err = (ex.value - expected).norm();
    Ok(HalfLineReport {
        z,
        x,
        samples,
        max_sample_err,
        limit: ex.value,
        limit_err_est: ex.err_est,
        expected_limit: expected,
        limit_err,
        samples_pass: max_sample_err <= PER_EPS_TOL,
        limit_pass: limit_err <= LIMIT_TOL,
    })
}
