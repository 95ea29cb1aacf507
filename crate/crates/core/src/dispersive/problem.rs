use serde::Serialize;

use crate::numerics::{boundary_mass_fraction, sci, Domain, SampledField};
use crate::osc_core::PhaseSpec;
use crate::{Error, Result};

/// Relative width of the edge band watched by the boundary-mass monitor.
pub const EDGE_BAND: f64 = 0.05;
/// Largest edge fraction of `Σ|u|²` tolerated during a scan.
pub const BOUNDARY_GUARD: f64 = 1e-6;
/// Largest edge fraction tolerated in the initial data.
pub const INITIAL_GUARD: f64 = 1e-8;

/// `D_t u - a(D) u = f`, `u(0) = φ` on a uniform time grid `0, dt, …, T`.
#[derive(Debug, Clone)]
pub struct EvolutionProblem {
    phase: PhaseSpec,
    initial: SampledField,
    forcing: Vec<SampledField>,
    dt: f64,
    horizon: f64,
}

impl EvolutionProblem {
    pub fn new(phase: PhaseSpec, initial: SampledField, dt: f64, horizon: f64) -> Result<Self> {
        if phase.dims() != initial.grid().dims() {
            return Err(Error::invalid(format!(
                "phase has {} terms but the grid is {}-dimensional",
                phase.dims(),
                initial.grid().dims()
            )));
        }
        if *initial.domain() != Domain::Space {
            return Err(Error::invalid("initial data must be a spatial field"));
        }
        if !(horizon > 0.0) || !horizon.is_finite() {
            return Err(Error::invalid(format!("horizon must be positive, got {horizon}")));
        }
        if !(dt > 0.0) || dt > horizon {
            return Err(Error::invalid(format!("time step must lie in (0, T], got {dt}")));
        }
        let steps = (horizon / dt).round();
        if (steps * dt - horizon).abs() > 1e-9 * horizon {
            return Err(Error::invalid(format!(
                "horizon {horizon} is not a multiple of dt = {dt}"
            )));
        }
        let edge = boundary_mass_fraction(&initial, EDGE_BAND);
        if edge >= INITIAL_GUARD {
            return Err(Error::BoundaryMass {
                t: 0.0,
                fraction: edge,
                guard: INITIAL_GUARD,
            });
        }
        Ok(EvolutionProblem {
            phase,
            initial,
            forcing: Vec::new(),
            dt,
            horizon,
        })
    }

    /// Forcing snapshots `f(j dt)` for `j = 0..=T/dt`.
    pub fn with_forcing(mut self, forcing: Vec<SampledField>) -> Result<Self> {
        if forcing.len() != self.steps() + 1 {
            return Err(Error::invalid(format!(
                "need {} forcing snapshots on the time grid, got {}",
                self.steps() + 1,
                forcing.len()
            )));
        }
        if let Some(j) = forcing
            .iter()
            .position(|f| !f.grid().same_shape(self.initial.grid()) || *f.domain() != Domain::Space)
        {
            return Err(Error::invalid(format!(
                "forcing snapshot {j} is not a spatial field on the initial grid"
            )));
        }
        self.forcing = forcing;
        Ok(self)
    }

    pub fn phase(&self) -> &PhaseSpec {
        &self.phase
    }

    pub fn initial(&self) -> &SampledField {
        &self.initial
    }

    pub fn forcing(&self) -> &[SampledField] {
        &self.forcing
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    pub fn steps(&self) -> usize {
        (self.horizon / self.dt).round() as usize
    }

    pub fn times(&self) -> Vec<f64> {
        (0..=self.steps()).map(|j| j as f64 * self.dt).collect()
    }

    /// Index `m` with `t = m dt`, if `t` lies on the grid.
    pub fn step_of(&self, t: f64) -> Result<usize> {
        let m = (t / self.dt).round();
        if !(t >= 0.0) || (m * self.dt - t).abs() > 1e-9 * self.dt.max(t) || m as usize > self.steps() {
            return Err(Error::Domain(format!(
                "t = {t} is not on the time grid 0, {}, …, {}",
                self.dt, self.horizon
            )));
        }
        Ok(m as usize)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NormTag {
    Lp(f64),
    Sup,
}

impl std::fmt::Display for NormTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NormTag::Lp(p) => write!(f, "L{p}"),
            NormTag::Sup => write!(f, "Linf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormSeries {
    times: Vec<f64>,
    values: Vec<f64>,
    tag: NormTag,
}

impl NormSeries {
    pub fn new(times: Vec<f64>, values: Vec<f64>, tag: NormTag) -> Result<Self> {
        if times.len() != values.len() {
            return Err(Error::invalid(format!(
                "{} times for {} values",
                times.len(),
                values.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::invalid("norm values must be finite and nonnegative"));
        }
        Ok(NormSeries { times, values, tag })
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn tag(&self) -> NormTag {
        self.tag
    }

    pub fn points(&self) -> Vec<(f64, f64)> {
        self.times.iter().cloned().zip(self.values.iter().cloned()).collect()
    }

    /// `t,value,norm_tag` rows with a header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,value,norm_tag\n");
        for (t, v) in self.times.iter().zip(&self.values) {
            out.push_str(&format!("{},{},{}\n", sci(*t), sci(*v), self.tag));
        }
        out
    }
}
