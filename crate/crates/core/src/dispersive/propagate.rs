use num_complex::Complex64;

use super::problem::EvolutionProblem;
use crate::exec;
use crate::numerics::{
    apply_axis_phases, fft_axes, fft_frequencies, require_power_of_two, Direction, Domain, Grid, SampledField,
};
use crate::osc_core::PhaseSpec;
use crate::{Error, Result};

fn check(field: &SampledField, phase: &PhaseSpec) -> Result<()> {
    if *field.domain() != Domain::Space {
        return Err(Error::invalid("propagate expects a spatial field"));
    }
    if field.grid().dims() != phase.dims() {
        return Err(Error::invalid(format!(
            "phase has {} terms but the grid is {}-dimensional",
            phase.dims(),
            field.grid().dims()
        )));
    }
    require_power_of_two(field.grid())
}

/// Per-axis factors of `e^{i t a(ξ)}` at the grid frequencies, FFT order.
fn multiplier(grid: &Grid, phase: &PhaseSpec, t: f64) -> Vec<Vec<Complex64>> {
    phase
        .terms()
        .iter()
        .enumerate()
        .map(|(axis, term)| {
            fft_frequencies(grid, axis)
                .into_iter()
                .map(|xi| Complex64::from_polar(1.0, t * term.coeff * term.exponent.eval(xi)))
                .collect()
        })
        .collect()
}

/// Unnormalised DFT of a spatial field.
fn spectrum(field: &SampledField) -> Vec<Complex64> {
    let mut v = field.values().to_vec();
    fft_axes(&mut v, field.grid().points(), Direction::Forward);
    v
}

fn synthesize(grid: &Grid, mut spec: Vec<Complex64>) -> Result<SampledField> {
    fft_axes(&mut spec, grid.points(), Direction::Inverse);
    let scale = 1.0 / grid.len() as f64;
    spec.iter_mut().for_each(|v| *v *= scale);
    SampledField::new(grid.clone(), spec)
}

/// `e^{i t a(D)} φ` as a Fourier multiplier on the periodic grid.
pub fn propagate(field: &SampledField, phase: &PhaseSpec, t: f64) -> Result<SampledField> {
    check(field, phase)?;
    if !t.is_finite() {
        return Err(Error::invalid(format!("t must be finite, got {t}")));
    }
    let grid = field.grid();
    let mut spec = spectrum(field);
    apply_axis_phases(&mut spec, grid.points(), &multiplier(grid, phase, t));
    synthesize(grid, spec)
}

/// Weights (in units of `dt`) for `∫_0^{m dt} g`, using samples `0..available`.
///
/// Composite Simpson for even `m`; for odd `m ≥ 3` the last three intervals
/// take Simpson's 3/8 rule; `m = 1` uses the third-order one-step formula
/// when a sample past the endpoint exists.
pub fn duhamel_weights(m: usize, available: usize) -> Vec<f64> {
    match m {
        0 => vec![],
        1 if available >= 3 => vec![5.0 / 12.0, 8.0 / 12.0, -1.0 / 12.0],
        1 => vec![0.5, 0.5],
        _ => {
            let mut w = vec![0.0; m + 1];
            let simpson_end = if m.is_multiple_of(2) { m } else { m - 3 };
            for j in (0..simpson_end).step_by(2) {
                w[j] += 1.0 / 3.0;
                w[j + 1] += 4.0 / 3.0;
                w[j + 2] += 1.0 / 3.0;
            }
            if m % 2 == 1 {
                let b = m - 3;
                for (o, c) in [1.0, 3.0, 3.0, 1.0].iter().enumerate() {
                    w[b + o] += 3.0 / 8.0 * c;
                }
            }
            w
        }
    }
}

/// Spectra `e^{-i s_j a(ξ)} \hat f(s_j)` of the forcing snapshots, pulled back
/// to time 0 so that every Duhamel sum is a weighted sum of the same vectors.
fn pulled_back_forcing(problem: &EvolutionProblem) -> Vec<Vec<Complex64>> {
    let grid = problem.initial().grid();
    let dt = problem.dt();
    exec::map_range(problem.forcing().len(), |j| {
        let mut s = spectrum(&problem.forcing()[j]);
        apply_axis_phases(
            &mut s,
            grid.points(),
            &multiplier(grid, problem.phase(), -(j as f64) * dt),
        );
        s
    })
}

fn assemble(
    problem: &EvolutionProblem,
    base: &[Complex64],
    pulled: &[Vec<Complex64>],
    m: usize,
) -> Result<SampledField> {
    let grid = problem.initial().grid();
    let mut acc = base.to_vec();
    let weights = duhamel_weights(m, pulled.len());
    for (w, g) in weights.iter().zip(pulled) {
        let c = Complex64::new(0.0, w * problem.dt());
        acc.iter_mut().zip(g).for_each(|(a, b)| *a += c * b);
    }
    let t = m as f64 * problem.dt();
    apply_axis_phases(&mut acc, grid.points(), &multiplier(grid, problem.phase(), t));
    synthesize(grid, acc)
}

/// `u(t) = e^{ita(D)}φ + i ∫_0^t e^{i(t-s)a(D)} f(s) ds` at a grid time.
pub fn duhamel_solve(problem: &EvolutionProblem, t: f64) -> Result<SampledField> {
    let m = problem.step_of(t)?;
    if problem.forcing().is_empty() {
        return propagate(problem.initial(), problem.phase(), t);
    }
    check(problem.initial(), problem.phase())?;
    let pulled = pulled_back_forcing(problem);
    assemble(problem, &spectrum(problem.initial()), &pulled, m)
}

/// `u` at every grid time `0, dt, …, T`.
pub fn solve_all(problem: &EvolutionProblem) -> Result<Vec<SampledField>> {
    check(problem.initial(), problem.phase())?;
    let pulled = pulled_back_forcing(problem);
    let base = spectrum(problem.initial());
    exec::try_map(&problem.times(), |&t| {
        if pulled.is_empty() {
            propagate(problem.initial(), problem.phase(), t)
        } else {
            assemble(problem, &base, &pulled, problem.step_of(t)?)
        }
    })
}
