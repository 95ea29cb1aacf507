use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

use crate::exec;
use crate::osc_core::{scaled_term, PhaseSpec};
use crate::special_fn::branch_power;
use crate::{Error, Result};

/// Parameters of `G_z(ξ) = (ξ_n - R(ξ'))_+^z / Γ(z+1)`; the offset `r` is 0.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GzSpec {
    pub phase: PhaseSpec,
    pub z: Complex64,
}

impl GzSpec {
    /// `z = -(1 + 1/q) + iη`, the line used for the bound.
    pub fn critical(phase: PhaseSpec, eta: f64) -> GzSpec {
        let z = Complex64::new(-(1.0 + phase.inv_q()), eta);
        GzSpec { phase, z }
    }

    pub fn eval(&self, x: &[f64], tol: f64) -> Result<Complex64> {
        gz_eval(&self.phase, self.z, x, tol)
    }
}

/// Inverse Fourier transform of `G_z` at `x ∈ ℝ^n` through the factorisation
/// `i(2π)^{-n/2} e^{izπ/2} (x_n + i0)^{-z-1} ∏_j ∫ e^{i x_j ξ + i a_j x_n ψ_j(ξ)} dξ`.
pub fn gz_eval(phase: &PhaseSpec, z: Complex64, x: &[f64], tol: f64) -> Result<Complex64> {
    let n = phase.dims() + 1;
    if x.len() != n {
        return Err(Error::invalid(format!("x must have {n} coordinates, got {}", x.len())));
    }
    if let Some(j) = x.iter().position(|&v| v == 0.0 || !v.is_finite()) {
        return Err(Error::Domain(format!(
            "x_{} = {} : every coordinate must be finite and nonzero",
            j + 1,
            x[j]
        )));
    }
    let xn = x[n - 1];
    let mut acc = Complex64::i()
        * (2.0 * PI).powf(-(n as f64) / 2.0)
        * (Complex64::i() * z * PI / 2.0).exp()
        * branch_power(xn, -z - 1.0)?;
    let per_factor = tol / phase.dims() as f64;
    for (term, &xj) in phase.terms().iter().zip(x) {
        acc *= scaled_term(term.exponent, xj, term.coeff * xn, per_factor)?.value;
    }
    Ok(acc)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EtaPoint {
    pub eta: f64,
    pub abs_value: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EtaScan {
    pub x: Vec<f64>,
    pub inv_q: f64,
    pub points: Vec<EtaPoint>,
    /// `max |ratio / ratio_0 - 1|` over the scan.
    pub max_rel_deviation: f64,
}

/// `|Ǧ_z(x)| e^{ηπ/2}` along `z = -(1 + 1/q) + iη`.
pub fn gz_eta_scan(phase: &PhaseSpec, x: &[f64], eta_grid: &[f64], inv_q: f64) -> Result<EtaScan> {
    match x.last() {
        Some(&xn) if xn > 0.0 => {}
        _ => return Err(Error::invalid("eta scan needs x_n > 0")),
    }
    if eta_grid.is_empty() {
        return Err(Error::invalid("eta grid is empty"));
    }
    let points = exec::try_map(eta_grid, |&eta| {
        let z = Complex64::new(-(1.0 + inv_q), eta);
        let v = gz_eval(phase, z, x, 1e-12)?.norm();
        Ok::<_, Error>(EtaPoint {
            eta,
            abs_value: v,
            ratio: v / (-eta * PI / 2.0).exp(),
        })
    })?;
    let r0 = points[0].ratio;
    let max_rel_deviation = points.iter().map(|p| (p.ratio / r0 - 1.0).abs()).fold(0.0, f64::max);
    Ok(EtaScan {
        x: x.to_vec(),
        inv_q,
        points,
        max_rel_deviation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special_fn::gaussian_closed_form;

    #[test]
    fn single_factor_matches_closed_form() {
        let p = PhaseSpec::monomials(&[1.0], &[2]).unwrap();
        let v = gz_eval(&p, Complex64::new(0.0, 0.0), &[1.0, 1.0], 1e-12).unwrap();
        let expect = Complex64::i() / (2.0 * PI) * gaussian_closed_form(1.0, 1.0).unwrap();
        assert!((v - expect).norm() < 1e-12);
        assert!(gz_eval(&p, Complex64::new(0.0, 0.0), &[0.0, 1.0], 1e-12).is_err());
        assert!(gz_eval(&p, Complex64::new(0.0, 0.0), &[1.0], 1e-12).is_err());
    }

    #[test]
    fn magnitude_bound() {
        let p = PhaseSpec::monomials(&[1.0, -2.0], &[2, 3]).unwrap();
        let inv_q = p.inv_q();
        for &xn in &[0.3, 1.0, 4.0] {
            for &eta in &[-2.0, 0.0, 3.0] {
                let z = Complex64::new(-(1.0 + inv_q), eta);
                let v = gz_eval(&p, z, &[0.7, -1.2, xn], 1e-12).unwrap().norm();
                let bound = 144.0
                    * (2.0 * PI).powf(-1.5)
                    * (-eta * PI / 2.0).exp()
                    * xn.powf(-z.re - 1.0 - inv_q)
                    * 2f64.powf(-1.0 / 3.0);
                assert!(v <= bound, "xn={xn} eta={eta}: {v} > {bound}");
            }
        }
    }

    #[test]
    fn eta_dependence() {
        let p = PhaseSpec::monomials(&[1.0, -2.0], &[2, 3]).unwrap();
        let etas: Vec<f64> = (0..=24).map(|i| -6.0 + 0.5 * i as f64).collect();
        let s = gz_eta_scan(&p, &[0.8, 1.3, 2.0], &etas, p.inv_q()).unwrap();
        assert!(s.max_rel_deviation <= 1e-6, "{}", s.max_rel_deviation);
        assert!(gz_eta_scan(&p, &[0.8, 1.3, -2.0], &etas, p.inv_q()).is_err());

        let z = |eta: f64| Complex64::new(-(1.0 + p.inv_q()), eta);
        let x = [0.8, 1.3, 2.0];
        let up = gz_eval(&p, z(2.0), &x, 1e-12).unwrap().norm();
        let down = gz_eval(&p, z(-2.0), &x, 1e-12).unwrap().norm();
        assert!((down / up / (2.0 * PI).exp() - 1.0).abs() < 1e-9);

        // For x_n < 0 the branch factor adds e^{πη}, flipping the trend.
        let xm = [0.8, 1.3, -2.0];
        let up = gz_eval(&p, z(2.0), &xm, 1e-12).unwrap().norm();
        let base = gz_eval(&p, z(0.0), &xm, 1e-12).unwrap().norm();
        assert!((up / base / PI.exp() - 1.0).abs() < 1e-9);
    }
}
