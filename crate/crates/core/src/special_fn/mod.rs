//! Special functions needed by the closed forms: complex Gamma, Airy `Ai`,
//! boundary-value powers `(x + i0)^w` and the Gaussian (`k = 2`) integral.

mod airy;
mod gamma;

pub use airy::{airy_ai, airy_ai_asymptotic, airy_ai_series, AIRY_SEAM};
pub use gamma::gamma_complex;

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::{Error, Result};

/// The distribution `(x + i0)^w` at a nonzero real point: the limit from the
/// upper half-plane, so a negative base carries `arg = +π`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchPower {
    pub base: f64,
    pub exponent: Complex64,
}

impl BranchPower {
    pub fn new(base: f64, exponent: Complex64) -> Result<Self> {
        if base == 0.0 || !base.is_finite() {
            return Err(Error::Domain(format!(
                "(x + i0)^w needs a finite nonzero base, got {base}"
            )));
        }
        Ok(BranchPower { base, exponent })
    }

    pub fn eval(&self) -> Complex64 {
        let arg = if self.base > 0.0 { 0.0 } else { PI };
        (self.exponent * Complex64::new(self.base.abs().ln(), arg)).exp()
    }
}

pub fn branch_power(x: f64, w: Complex64) -> Result<Complex64> {
    BranchPower::new(x, w).map(|b| b.eval())
}

/// `∫ exp(i x ξ + i t ξ²) dξ = sqrt(π / (-it)) e^{-i x² / (4t)}`, principal root.
pub fn gaussian_closed_form(x: f64, t: f64) -> Result<Complex64> {
    if t == 0.0 || !t.is_finite() {
        return Err(Error::Domain(format!("Gaussian closed form needs t != 0, got {t}")));
    }
    let amp = (Complex64::new(PI, 0.0) / Complex64::new(0.0, -t)).sqrt();
    Ok(amp * Complex64::from_polar(1.0, -x * x / (4.0 * t)))
}
