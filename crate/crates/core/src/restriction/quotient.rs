use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

use super::dilation::DilationSpec;
use super::profile::GaussianProfile;
use crate::exec;
use crate::numerics::{dft_at, loglog_fit, lp_norm, DecayFit, Grid, SampledField};
use crate::osc_core::PhaseSpec;
use crate::{Error, Result};

/// Fraction of the Nyquist band `π/h` in which surface samples are trusted.
pub const BAND_SAFETY: f64 = 0.8;

/// Graph `ξ_n = R(ξ′)` with `R` given by an (n−1)-dimensional phase.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SurfaceSpec {
    pub phase: PhaseSpec,
}

impl SurfaceSpec {
    pub fn new(phase: PhaseSpec) -> Self {
        SurfaceSpec { phase }
    }

    pub fn ambient_dims(&self) -> usize {
        self.phase.dims() + 1
    }

    pub fn height(&self, xi_prime: &[f64]) -> f64 {
        self.phase.symbol(xi_prime)
    }

    pub fn point(&self, xi_prime: &[f64]) -> Vec<f64> {
        let mut xi = xi_prime.to_vec();
        xi.push(self.height(xi_prime));
        xi
    }

    /// `|∂R̃/∂ξ_n|^{-1}` for `R̃ = ξ_n − R(ξ′)`, which is 1 for every graph.
    pub fn measure_weight(&self, _xi_prime: &[f64]) -> f64 {
        1.0
    }

    /// `1/q = Σ 1/k_j` over the surface exponents.
    pub fn inv_q(&self) -> f64 {
        self.phase.inv_q()
    }
}

fn check_dims(field: &SampledField, surface: &SurfaceSpec, xi_grid: &Grid) -> Result<()> {
    if field.grid().dims() != surface.ambient_dims() {
        return Err(Error::invalid(format!(
            "surface lives in {} dimensions, field in {}",
            surface.ambient_dims(),
            field.grid().dims()
        )));
    }
    if xi_grid.dims() != surface.phase.dims() {
        return Err(Error::invalid(format!(
            "ξ′ grid has {} dimensions, surface parameter has {}",
            xi_grid.dims(),
            surface.phase.dims()
        )));
    }
    Ok(())
}

/// `φ̂(ξ′, R(ξ′))` at every point of `xi_grid`.
pub fn surface_samples(field: &SampledField, surface: &SurfaceSpec, xi_grid: &Grid) -> Result<Vec<Complex64>> {
    check_dims(field, surface, xi_grid)?;
    let band: Vec<f64> = field.grid().spacing().iter().map(|h| BAND_SAFETY * PI / h).collect();
    let points: Vec<Vec<f64>> = (0..xi_grid.len()).map(|i| surface.point(&xi_grid.coords(i))).collect();
    for xi in &points {
        if let Some(a) = (0..xi.len()).find(|&a| xi[a].abs() > band[a]) {
            return Err(Error::Domain(format!(
                "surface point {:?} leaves the resolvable band |ξ_{a}| <= {:.4}",
                xi, band[a]
            )));
        }
    }
    exec::try_map(&points, |xi| dft_at(field, xi))
}

/// Tensor trapezoid weights on an (n−1)-dimensional grid.
fn trapezoid_weights(grid: &Grid) -> Vec<f64> {
    (0..grid.len())
        .map(|i| {
            grid.unravel(i)
                .iter()
                .zip(grid.points())
                .zip(grid.spacing())
                .map(|((&j, &n), &h)| if n > 1 && (j == 0 || j == n - 1) { 0.5 * h } else { h })
                .product()
        })
        .collect()
}

fn surface_norm(samples: &[Complex64], surface: &SurfaceSpec, xi_grid: &Grid) -> f64 {
    let w = trapezoid_weights(xi_grid);
    samples
        .iter()
        .zip(&w)
        .enumerate()
        .map(|(i, (v, w))| v.norm_sqr() * w * surface.measure_weight(&xi_grid.coords(i)))
        .sum::<f64>()
        .sqrt()
}

/// `(∫ |φ̂(ξ′, R(ξ′))|² dξ′)^{1/2} / ‖φ‖_p`, truncated to the `xi_grid` window.
pub fn restriction_quotient(field: &SampledField, surface: &SurfaceSpec, p: f64, xi_grid: &Grid) -> Result<f64> {
    if !(p >= 1.0) {
        return Err(Error::invalid(format!("p must be at least 1, got {p}")));
    }
    let samples = surface_samples(field, surface, xi_grid)?;
    let den = lp_norm(field, p)?;
    if den == 0.0 {
        return Err(Error::invalid("restriction quotient of the zero field"));
    }
    Ok(surface_norm(&samples, surface, xi_grid) / den)
}

/// Spatial grid and ξ′ window shared by a whole dilation sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RestrictionSetup {
    pub grid: Grid,
    pub xi_grid: Grid,
}

/// `(s, Q_p(d_s φ))` for every `p` in `ps`; the surface samples are shared
/// across `p`, only the denominators differ.
pub fn necessity_quotients(
    profile: &GaussianProfile,
    surface: &SurfaceSpec,
    ps: &[f64],
    s_list: &[f64],
    setup: &RestrictionSetup,
) -> Result<Vec<Vec<(f64, f64)>>> {
    if profile.dims() != surface.ambient_dims() {
        return Err(Error::invalid("profile and surface dimensions differ"));
    }
    if let Some(p) = ps.iter().find(|p| !(**p >= 1.0)) {
        return Err(Error::invalid(format!("p must be at least 1, got {p}")));
    }
    check_dims(&SampledField::zeros(setup.grid.clone()), surface, &setup.xi_grid)?;
    let per_s: Vec<(f64, Vec<f64>)> = s_list
        .iter()
        .map(|&s| {
            let d = DilationSpec::new(surface, s)?;
            let field = profile.dilated(&d)?.sample(setup.grid.clone())?;
            let samples = surface_samples(&field, surface, &setup.xi_grid)?;
            let num = surface_norm(&samples, surface, &setup.xi_grid);
            let dens = ps.iter().map(|&p| lp_norm(&field, p)).collect::<Result<Vec<_>>>()?;
            Ok((num, dens))
        })
        .collect::<Result<_>>()?;
    Ok(ps
        .iter()
        .enumerate()
        .map(|(j, _)| {
            s_list
                .iter()
                .zip(&per_s)
                .map(|(&s, (num, dens))| (s, num / dens[j]))
                .collect()
        })
        .collect())
}

/// Log-log slope of `Q_p(d_s φ)` against `s`.
pub fn necessity_scan(
    profile: &GaussianProfile,
    surface: &SurfaceSpec,
    p: f64,
    s_list: &[f64],
    setup: &RestrictionSetup,
) -> Result<DecayFit> {
    let q = necessity_quotients(profile, surface, &[p], s_list, setup)?;
    loglog_fit(&q[0])
}
