use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

use crate::exec;
use crate::numerics::{adaptive_quad_with, loglog_fit, DecayFit, QuadOptions};
use crate::osc_core::{ak_contour, ibp_bound, scaled_integral};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Violation {
    pub x: f64,
    pub value: f64,
    pub bound: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepSample {
    pub x: f64,
    pub abs: f64,
    pub bound: f64,
    pub err_est: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundSweep {
    pub k: u32,
    pub points: usize,
    pub max_abs: f64,
    pub argmax: f64,
    pub max_err_est: f64,
    pub violations: Vec<Violation>,
    #[serde(skip)]
    pub samples: Vec<SweepSample>,
}

/// `lo, lo + step, …` up to `hi` (inclusive, with a little slack for rounding).
pub fn uniform_grid(lo: f64, hi: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0) || !(hi >= lo) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::invalid(format!("bad grid [{lo}, {hi}] with step {step}")));
    }
    let n = ((hi - lo) / step + 1e-9).floor() as usize + 1;
    Ok((0..n).map(|i| lo + i as f64 * step).collect())
}

/// `|A_k|` across a uniform grid against the regional bounds.
pub fn bound_sweep(k: u32, x_lo: f64, x_hi: f64, step: f64, tol: f64) -> Result<BoundSweep> {
    let xs = uniform_grid(x_lo, x_hi, step)?;
    let vals = exec::try_map(&xs, |&x| ak_contour(k, x, tol).map_err(Error::at(x)))?;
    let mut sweep = BoundSweep {
        k,
        points: xs.len(),
        max_abs: 0.0,
        argmax: xs[0],
        max_err_est: 0.0,
        violations: Vec::new(),
        samples: Vec::with_capacity(xs.len()),
    };
    for (&x, r) in xs.iter().zip(&vals) {
        let v = r.value.norm();
        if v > sweep.max_abs {
            sweep.max_abs = v;
            sweep.argmax = x;
        }
        sweep.max_err_est = sweep.max_err_est.max(r.err_est);
        let bound = ibp_bound(k, x);
        sweep.samples.push(SweepSample {
            x,
            abs: v,
            bound,
            err_est: r.err_est,
        });
        if v > bound + tol {
            sweep.violations.push(Violation { x, value: v, bound });
        }
    }
    Ok(sweep)
}

fn check_t_grid(t_grid: &[f64], min_points: usize, min_decades: f64) -> Result<()> {
    if t_grid.len() < min_points {
        return Err(Error::invalid(format!(
            "need at least {min_points} times, got {}",
            t_grid.len()
        )));
    }
    if t_grid.iter().any(|&t| !(t > 0.0) || !t.is_finite()) {
        return Err(Error::invalid("times must be positive and finite"));
    }
    let lo = t_grid.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = t_grid.iter().cloned().fold(0.0, f64::max);
    if (hi / lo).log10() < min_decades {
        return Err(Error::invalid(format!(
            "times span {:.2} decades, need {min_decades}",
            (hi / lo).log10()
        )));
    }
    Ok(())
}

/// `t ↦ |∫ e^{ixξ + itξ^k} dξ|` across `t_grid`.
pub fn scaled_magnitudes(k: u32, x: f64, t_grid: &[f64]) -> Result<Vec<(f64, f64)>> {
    exec::try_map(t_grid, |&t| {
        let r = scaled_integral(k, x, t, 1e-11 * t.abs().powf(-1.0 / k as f64)).map_err(Error::at(t))?;
        let m = r.value.norm();
        if !(m > 1e3 * r.err_est) || m < 1e-250 {
            return Err(Error::Domain(format!(
                "|A_k| vanishes at t = {t} (value {m:.3e}, err_est {:.1e}); pick another x, e.g. x = 0",
                r.err_est
            )));
        }
        Ok((t, m))
    })
}

/// Log-log slope of `|∫ e^{ixξ + itξ^k} dξ|` against `t`.
pub fn decay_fit(k: u32, x: f64, t_grid: &[f64]) -> Result<DecayFit> {
    check_t_grid(t_grid, 4, 2.0)?;
    loglog_fit(&scaled_magnitudes(k, x, t_grid)?)
}

/// `∫_a^b e^{ixξ + itξ^k} dξ` on the real axis, one initial panel per half
/// oscillation.
pub fn interval_integral(k: u32, x: f64, t: f64, a: f64, b: f64) -> Result<Complex64> {
    let reach = a.abs().max(b.abs());
    let sweep = x.abs() * (b - a) + 2.0 * t.abs() * reach.powi(k as i32);
    let panels = (sweep / PI).ceil() as usize + 1;
    let opts = QuadOptions {
        initial_panels: panels,
        max_subdivisions: 8 * panels + 400_000,
    };
    adaptive_quad_with(
        |s| Complex64::from_polar(1.0, x * s + t * s.powi(k as i32)),
        a,
        b,
        1e-13 * (b - a),
        &opts,
    )
    .map(|r| r.value)
    .map_err(|e| Error::Domain(format!("t = {t}: quadrature with {panels} initial panels failed: {e}")))
}

/// Decay of the truncated integral over `[a, b]`, the van der Corput setting.
pub fn vdcorput_interval(k: u32, x: f64, a: f64, b: f64, t_grid: &[f64]) -> Result<DecayFit> {
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(Error::invalid(format!("need a < b, got [{a}, {b}]")));
    }
    check_t_grid(t_grid, 3, 0.0)?;
    let pts = exec::try_map(t_grid, |&t| interval_integral(k, x, t, a, b).map(|v| (t, v.norm())))?;
    loglog_fit(&pts)
}

/// `n` points geometrically spaced over `[lo, hi]`.
pub fn geometric_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    let r = (hi / lo).ln() / (n - 1) as f64;
    (0..n).map(|i| lo * (r * i as f64).exp()).collect()
}
