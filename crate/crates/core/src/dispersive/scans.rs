use num_complex::Complex64;
use serde::Serialize;

use super::problem::{EvolutionProblem, NormSeries, NormTag, BOUNDARY_GUARD, EDGE_BAND};
use super::propagate::{propagate, solve_all};
use crate::exec;
use crate::numerics::{boundary_mass_fraction, loglog_fit, lp_norm, DecayFit, Grid, SampledField};
use crate::osc_core::PhaseSpec;
use crate::{Error, Result};

/// `‖u(t)‖_∞` for the free evolution across `t_grid`, with a log-log fit.
///
/// Every `u(t)` is checked against the boundary-mass guard; the first time
/// (in grid order) that breaches it is reported as an error.
pub fn decay_scan(problem: &EvolutionProblem, t_grid: &[f64]) -> Result<(NormSeries, DecayFit)> {
    if !problem.forcing().is_empty() {
        return Err(Error::invalid("decay scan is for the free evolution (f = 0)"));
    }
    if t_grid.iter().any(|&t| !(t > 0.0)) {
        return Err(Error::invalid("scan times must be positive"));
    }
    let rows = exec::try_map(t_grid, |&t| {
        let u = propagate(problem.initial(), problem.phase(), t)?;
        Ok::<_, Error>((u.max_abs(), boundary_mass_fraction(&u, EDGE_BAND)))
    })?;
    if let Some((t, (_, frac))) = t_grid.iter().zip(&rows).find(|(_, r)| r.1 >= BOUNDARY_GUARD) {
        return Err(Error::BoundaryMass {
            t: *t,
            fraction: *frac,
            guard: BOUNDARY_GUARD,
        });
    }
    let series = NormSeries::new(t_grid.to_vec(), rows.iter().map(|r| r.0).collect(), NormTag::Sup)?;
    let fit = loglog_fit(&series.points())?;
    Ok((series, fit))
}

fn trapezoid(dt: f64, vals: &[f64]) -> f64 {
    match vals.len() {
        0 | 1 => 0.0,
        n => dt * (vals.iter().sum::<f64>() - 0.5 * (vals[0] + vals[n - 1])),
    }
}

/// `‖u‖_{L^{p'}([0,T]×grid)} / (‖φ‖₂ + ‖f‖_{L^p([0,T]×grid)})`, trapezoid in t.
pub fn strichartz_quotient(problem: &EvolutionProblem, p: f64) -> Result<f64> {
    check_p(p)?;
    quotient_from_states(problem, &solve_all(problem)?, p)
}

fn check_p(p: f64) -> Result<()> {
    if !(p > 1.0 && p < 2.0) {
        return Err(Error::invalid(format!("p must lie in (1, 2), got {p}")));
    }
    Ok(())
}

fn quotient_from_states(problem: &EvolutionProblem, us: &[SampledField], p: f64) -> Result<f64> {
    let p_dual = p / (p - 1.0);
    let u_pows = exec::try_map(us, |u| lp_norm(u, p_dual).map(|v| v.powf(p_dual)))?;
    let num = trapezoid(problem.dt(), &u_pows).powf(1.0 / p_dual);
    let f_pows = exec::try_map(problem.forcing(), |f| lp_norm(f, p).map(|v| v.powf(p)))?;
    let den = lp_norm(problem.initial(), 2.0)? + trapezoid(problem.dt(), &f_pows).powf(1.0 / p);
    if num == 0.0 {
        return Ok(0.0);
    }
    if den == 0.0 {
        return Err(Error::Domain("data vanish but the solution does not".into()));
    }
    Ok(num / den)
}

/// Grid and time window shared by every member of a dilation family.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DilationBase {
    pub spacing: Vec<f64>,
    pub points: Vec<usize>,
    pub dt: f64,
    pub horizon: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DilationQuotient {
    pub s: f64,
    pub quotient: f64,
}

/// Strichartz quotients of the free evolution of `φ_s = J^{1/2} φ(d_s x)`,
/// `d_s x = (s^{1/k_j} x_j)_j`, `J = s^{1/q}`, all on the base grid over
/// `[0, T]`.
///
/// `a(d_s ξ) = s a(ξ)`, so on the whole line the quotient at the critical `p`
/// is `s`-independent; what varies here is the finite window `[0, T]` (which
/// the scaling maps to `[0, sT]`) and the discretisation. Every state is held
/// to the boundary-mass guard.
pub fn strichartz_dilation_scan(
    phase: &PhaseSpec,
    profile: impl Fn(&[f64]) -> Complex64 + Sync + Send,
    p: f64,
    scales: &[f64],
    base: &DilationBase,
) -> Result<Vec<DilationQuotient>> {
    check_p(p)?;
    if scales.iter().any(|&s| !(s > 0.0)) {
        return Err(Error::invalid("dilation parameters must be positive"));
    }
    let ks: Vec<f64> = phase.terms().iter().map(|t| t.exponent.value()).collect();
    let grid = Grid::centered(base.spacing.clone(), base.points.clone())?;
    scales
        .iter()
        .map(|&s| {
            let factors: Vec<f64> = ks.iter().map(|k| s.powf(1.0 / k)).collect();
            let jac: f64 = factors.iter().product();
            let phi = SampledField::from_fn(grid.clone(), |x| {
                let y: Vec<f64> = x.iter().zip(&factors).map(|(xi, f)| xi * f).collect();
                profile(&y) * jac.sqrt()
            })?;
            let problem = EvolutionProblem::new(phase.clone(), phi, base.dt, base.horizon)?;
            let us = solve_all(&problem)?;
            let times = problem.times();
            if let Some((t, frac)) = times
                .iter()
                .zip(&us)
                .map(|(t, u)| (*t, boundary_mass_fraction(u, EDGE_BAND)))
                .find(|(_, f)| *f >= BOUNDARY_GUARD)
            {
                return Err(Error::BoundaryMass {
                    t,
                    fraction: frac,
                    guard: BOUNDARY_GUARD,
                });
            }
            Ok(DilationQuotient {
                s,
                quotient: quotient_from_states(&problem, &us, p)?,
            })
        })
        .collect()
}
