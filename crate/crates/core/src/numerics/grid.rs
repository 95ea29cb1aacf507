use num_complex::Complex64;
use serde::Serialize;

use crate::{Error, Result};

/// Uniform rectangular grid `x_j = origin_j + m_j h_j`, `m_j = 0..points_j`,
/// stored row-major (last axis fastest).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Grid {
    origin: Vec<f64>,
    spacing: Vec<f64>,
    points: Vec<usize>,
}

impl Grid {
    pub fn new(origin: Vec<f64>, spacing: Vec<f64>, points: Vec<usize>) -> Result<Self> {
        let n = origin.len();
        if n == 0 || spacing.len() != n || points.len() != n {
            return Err(Error::invalid(
                "grid origin, spacing and points must share a nonzero dimension",
            ));
        }
        if spacing.iter().any(|h| !(*h > 0.0 && h.is_finite())) {
            return Err(Error::invalid("grid spacings must be positive and finite"));
        }
        if origin.iter().any(|o| !o.is_finite()) {
            return Err(Error::invalid("grid origin must be finite"));
        }
        if points.iter().any(|&p| p < 2) {
            return Err(Error::invalid("every grid axis needs at least 2 points"));
        }
        points
            .iter()
            .try_fold(1usize, |acc, &p| acc.checked_mul(p))
            .filter(|&total| total <= (isize::MAX as usize) / std::mem::size_of::<Complex64>())
            .ok_or_else(|| Error::invalid("grid point count overflows addressable memory"))?;
        Ok(Grid {
            origin,
            spacing,
            points,
        })
    }

    /// Grid of `points` per axis centred on the origin: `x = (m - N/2) h`.
    pub fn centered(spacing: Vec<f64>, points: Vec<usize>) -> Result<Self> {
        let origin = spacing
            .iter()
            .zip(&points)
            .map(|(h, &p)| -((p / 2) as f64) * h)
            .collect();
        Grid::new(origin, spacing, points)
    }

    pub fn dims(&self) -> usize {
        self.points.len()
    }

    pub fn origin(&self) -> &[f64] {
        &self.origin
    }

    pub fn spacing(&self) -> &[f64] {
        &self.spacing
    }

    pub fn points(&self) -> &[usize] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Volume element `∏ h_j`.
    pub fn cell_volume(&self) -> f64 {
        self.spacing.iter().product()
    }

    pub fn dual_spacing(&self, axis: usize) -> f64 {
        2.0 * std::f64::consts::PI / (self.spacing[axis] * self.points[axis] as f64)
    }

    pub fn axis_coords(&self, axis: usize) -> Vec<f64> {
        (0..self.points[axis])
            .map(|m| self.origin[axis] + m as f64 * self.spacing[axis])
            .collect()
    }

    /// Multi-index of a flat row-major offset.
    pub fn unravel(&self, mut flat: usize) -> Vec<usize> {
        let mut idx = vec![0; self.dims()];
        for axis in (0..self.dims()).rev() {
            idx[axis] = flat % self.points[axis];
            flat /= self.points[axis];
        }
        idx
    }

    pub fn coords(&self, flat: usize) -> Vec<f64> {
        self.unravel(flat)
            .iter()
            .enumerate()
            .map(|(j, &m)| self.origin[j] + m as f64 * self.spacing[j])
            .collect()
    }

    pub fn same_shape(&self, other: &Grid) -> bool {
        self.points == other.points
            && self
                .spacing
                .iter()
                .zip(&other.spacing)
                .all(|(a, b)| (a - b).abs() <= 1e-14 * a.abs())
            && self
                .origin
                .iter()
                .zip(&other.origin)
                .all(|(a, b)| (a - b).abs() <= 1e-12 * (1.0 + a.abs()))
    }
}

/// Whether a field lives in physical space or is a spectrum produced by
/// [`fft_nd`](super::fft_nd). A spectrum remembers the spatial origin it came
/// from so the inverse transform lands on the original grid.
#[derive(Debug, Clone, PartialEq)]
pub enum Domain {
    Space,
    Frequency { space_origin: Vec<f64> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampledField {
    grid: Grid,
    values: Vec<Complex64>,
    domain: Domain,
}

impl SampledField {
    pub fn new(grid: Grid, values: Vec<Complex64>) -> Result<Self> {
        Self::with_domain(grid, values, Domain::Space)
    }

    pub fn with_domain(grid: Grid, values: Vec<Complex64>, domain: Domain) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::invalid(format!(
                "field has {} values but grid has {} points",
                values.len(),
                grid.len()
            )));
        }
        if let Some(i) = values.iter().position(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::invalid(format!("field value at offset {i} is not finite")));
        }
        Ok(SampledField { grid, values, domain })
    }

    /// Samples `f` at every grid point.
    pub fn from_fn(grid: Grid, f: impl Fn(&[f64]) -> Complex64 + Sync + Send) -> Result<Self> {
        let values = crate::exec::map_range(grid.len(), |i| f(&grid.coords(i)));
        Self::new(grid, values)
    }

    pub fn zeros(grid: Grid) -> Self {
        let values = vec![Complex64::new(0.0, 0.0); grid.len()];
        SampledField {
            grid,
            values,
            domain: Domain::Space,
        }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn scale(&self, c: Complex64) -> SampledField {
        SampledField {
            grid: self.grid.clone(),
            values: self.values.iter().map(|v| v * c).collect(),
            domain: self.domain.clone(),
        }
    }

    pub fn add(&self, other: &SampledField) -> Result<SampledField> {
        if !self.grid.same_shape(&other.grid) {
            return Err(Error::invalid("fields live on different grids"));
        }
        Ok(SampledField {
            grid: self.grid.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
            domain: self.domain.clone(),
        })
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }
}

/// Discrete `L^p` norm `(Σ |f|^p ∏h)^{1/p}`; `p = ∞` gives `max |f|`.
pub fn lp_norm(field: &SampledField, p: f64) -> Result<f64> {
    if !(p >= 1.0) {
        return Err(Error::invalid(format!("L^p norm needs p >= 1, got {p}")));
    }
    if p.is_infinite() {
        return Ok(field.max_abs());
    }
    let dv = field.grid().cell_volume();
    let sum: f64 = if p == 2.0 {
        field.values().iter().map(|v| v.norm_sqr()).sum()
    } else {
        field.values().iter().map(|v| v.norm().powf(p)).sum()
    };
    Ok((sum * dv).powf(1.0 / p))
}

/// Fraction of `Σ|f|²` carried by points within `band` (relative width) of
/// any face of the grid.
pub fn boundary_mass_fraction(field: &SampledField, band: f64) -> f64 {
    let grid = field.grid();
    let widths: Vec<usize> = grid
        .points()
        .iter()
        .map(|&p| ((band * p as f64).ceil() as usize).max(1))
        .collect();
    let mut edge = 0.0;
    let mut total = 0.0;
    for (i, v) in field.values().iter().enumerate() {
        let w = v.norm_sqr();
        total += w;
        let idx = grid.unravel(i);
        let near = idx
            .iter()
            .zip(grid.points())
            .zip(&widths)
            .any(|((&m, &p), &b)| m < b || m >= p - b);
        if near {
            edge += w;
        }
    }
    if total == 0.0 {
        0.0
    } else {
        edge / total
    }
}
