use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

use super::dilation::DilationSpec;
use crate::numerics::{Grid, SampledField};
use crate::{Error, Result};

/// `φ(x) = ∏_j exp(i c_j x_j - x_j² / (2σ_j²))`, with closed-form transform
/// and norms so dilation identities can be checked exactly.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GaussianProfile {
    pub widths: Vec<f64>,
    pub modulation: Vec<f64>,
}

impl GaussianProfile {
    pub fn new(widths: Vec<f64>, modulation: Vec<f64>) -> Result<Self> {
        if widths.is_empty() || widths.len() != modulation.len() {
            return Err(Error::invalid("need one width and one modulation per axis"));
        }
        if widths.iter().any(|w| !(*w > 0.0) || !w.is_finite()) || modulation.iter().any(|c| !c.is_finite()) {
            return Err(Error::invalid("widths must be positive and modulations finite"));
        }
        Ok(GaussianProfile { widths, modulation })
    }

    pub fn standard(n: usize) -> Self {
        GaussianProfile {
            widths: vec![1.0; n],
            modulation: vec![0.0; n],
        }
    }

    pub fn dims(&self) -> usize {
        self.widths.len()
    }

    pub fn eval(&self, x: &[f64]) -> Complex64 {
        let mut arg = Complex64::new(0.0, 0.0);
        for ((&xj, &s), &c) in x.iter().zip(&self.widths).zip(&self.modulation) {
            arg += Complex64::new(-xj * xj / (2.0 * s * s), c * xj);
        }
        arg.exp()
    }

    /// `φ̂(ξ) = ∏_j σ_j exp(-σ_j² (ξ_j - c_j)² / 2)`, symmetric convention.
    pub fn fourier(&self, xi: &[f64]) -> Complex64 {
        let v: f64 = xi
            .iter()
            .zip(&self.widths)
            .zip(&self.modulation)
            .map(|((&k, &s), &c)| s * (-s * s * (k - c) * (k - c) / 2.0).exp())
            .product();
        Complex64::new(v, 0.0)
    }

    /// `‖φ‖_p = ∏_j (σ_j sqrt(2π/p))^{1/p}`.
    pub fn lp_norm(&self, p: f64) -> f64 {
        self.widths
            .iter()
            .map(|s| (s * (2.0 * PI / p).sqrt()).powf(1.0 / p))
            .product()
    }

    /// `d_s φ` is again Gaussian: widths shrink by `s^{e_j}`, modulations grow.
    pub fn dilated(&self, d: &DilationSpec) -> Result<GaussianProfile> {
        if d.exponents.len() != self.dims() {
            return Err(Error::invalid("dilation and profile dimensions differ"));
        }
        let f = d.factors();
        Ok(GaussianProfile {
            widths: self.widths.iter().zip(&f).map(|(w, f)| w / f).collect(),
            modulation: self.modulation.iter().zip(&f).map(|(c, f)| c * f).collect(),
        })
    }

    pub fn sample(&self, grid: Grid) -> Result<SampledField> {
        if grid.dims() != self.dims() {
            return Err(Error::invalid("grid and profile dimensions differ"));
        }
        SampledField::from_fn(grid, |x| self.eval(x))
    }
}
