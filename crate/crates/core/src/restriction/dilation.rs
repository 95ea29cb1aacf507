use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

use super::quotient::SurfaceSpec;
use crate::numerics::{Domain, SampledField};
use crate::{Error, Result};

/// `d_s x = (s^{e_1} x_1, …, s^{e_n} x_n)` with `e = (1/k_1, …, 1/k_{n-1}, 1)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DilationSpec {
    pub s: f64,
    pub exponents: Vec<f64>,
}

impl DilationSpec {
    pub fn new(surface: &SurfaceSpec, s: f64) -> Result<Self> {
        if !(s > 0.0) || !s.is_finite() {
            return Err(Error::invalid(format!("dilation parameter must be positive, got {s}")));
        }
        let mut exponents: Vec<f64> = surface.phase.terms().iter().map(|t| 1.0 / t.exponent.value()).collect();
        exponents.push(1.0);
        Ok(DilationSpec { s, exponents })
    }

    pub fn factors(&self) -> Vec<f64> {
        self.exponents.iter().map(|e| self.s.powf(*e)).collect()
    }

    /// `Σ e_j = 1 + 1/q`, the homogeneity of the Jacobian.
    pub fn degree(&self) -> f64 {
        self.exponents.iter().sum()
    }
}

/// Band-limited interpolation weight on a periodic grid of even size `n`
/// (Nyquist term split symmetrically): `sin(πu) / (n tan(πu/n))`.
fn dirichlet(u: f64, n: usize) -> f64 {
    let r = u.round();
    if (u - r).abs() < 1e-12 {
        return if (r as i64).rem_euclid(n as i64) == 0 { 1.0 } else { 0.0 };
    }
    let nf = n as f64;
    if n.is_multiple_of(2) {
        (PI * u).sin() / (nf * (PI * u / nf).tan())
    } else {
        (PI * u).sin() / (nf * (PI * u / nf).sin())
    }
}

/// `d_s φ` on the same grid, by band-limited interpolation of the samples.
///
/// Fails when the dilated support (cells with `|φ| > 1e-12 max|φ|`, mapped by
/// `d_s^{-1}`) leaves the grid.
pub fn dilate(field: &SampledField, surface: &SurfaceSpec, s: f64) -> Result<SampledField> {
    let grid = field.grid();
    if *field.domain() != Domain::Space {
        return Err(Error::invalid("dilation acts on spatial fields"));
    }
    if grid.dims() != surface.phase.dims() + 1 {
        return Err(Error::invalid(format!(
            "surface lives in {} dimensions, field in {}",
            surface.phase.dims() + 1,
            grid.dims()
        )));
    }
    let d = DilationSpec::new(surface, s)?;
    if s == 1.0 {
        return Ok(field.clone());
    }
    let f = d.factors();
    let n = grid.dims();

    let floor = 1e-12 * field.max_abs();
    let mut lo = vec![f64::INFINITY; n];
    let mut hi = vec![f64::NEG_INFINITY; n];
    for (i, v) in field.values().iter().enumerate() {
        if v.norm() > floor {
            for (a, x) in grid.coords(i).into_iter().enumerate() {
                lo[a] = lo[a].min(x);
                hi[a] = hi[a].max(x);
            }
        }
    }
    for a in 0..n {
        let first = grid.origin()[a];
        let last = first + (grid.points()[a] - 1) as f64 * grid.spacing()[a];
        if lo[a] / f[a] < first || hi[a] / f[a] > last {
            return Err(Error::Domain(format!(
                "dilated support [{:.3}, {:.3}] leaves the grid [{first:.3}, {last:.3}] on axis {a}",
                lo[a] / f[a],
                hi[a] / f[a]
            )));
        }
    }

    // Separable: interpolate axis by axis with an N×N weight matrix.
    let mut values = field.values().to_vec();
    let shape = grid.points().to_vec();
    for a in 0..n {
        let np = shape[a];
        let (o, h) = (grid.origin()[a], grid.spacing()[a]);
        let w: Vec<Vec<f64>> = (0..np)
            .map(|i| {
                let src = (o + i as f64 * h) * f[a];
                // Outside the grid the periodic interpolant would wrap around.
                if src < o - 0.5 * h || src > o + (np as f64 - 0.5) * h {
                    return vec![0.0; np];
                }
                (0..np).map(|m| dirichlet((src - (o + m as f64 * h)) / h, np)).collect()
            })
            .collect();
        let stride: usize = shape[a + 1..].iter().product();
        let block = np * stride;
        let mut out = vec![Complex64::new(0.0, 0.0); values.len()];
        for outer in 0..values.len() / block {
            let base = outer * block;
            for inner in 0..stride {
                for (i, row) in w.iter().enumerate() {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for (m, wm) in row.iter().enumerate() {
                        acc += values[base + inner + m * stride] * wm;
                    }
                    out[base + inner + i * stride] = acc;
                }
            }
        }
        values = out;
    }
    SampledField::new(grid.clone(), values)
}
