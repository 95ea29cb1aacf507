//! Brute-force check of the factorised Ǧ_z at (n=2, k=2, a=1, x=(1,1), z=-1.5).
//!
//! For -2 < Re z < -1 the pairing with (ξ_2 - ξ_1²)_+^z is read through one
//! integration by parts in ξ_2, which lowers the power to z+1 > -1:
//! ⟨w_+^z/Γ(z+1), g⟩ = -⟨w_+^{z+1}/Γ(z+2), g'⟩.
//! With w = r² the remaining weight w^{-1/2} dw = 2 dr is smooth, leaving an
//! ε-regularised double integral over (ξ_1, r) done by nested quadrature.

use num_complex::Complex64;
use oscdecay_core::exec;
use oscdecay_core::numerics::{adaptive_quad_with, richardson_limit, QuadOptions};
use oscdecay_core::special_fn::gamma_complex;
use std::f64::consts::PI;

fn regularized(eps: f64, x: [f64; 2], z: Complex64) -> Complex64 {
    let len = (20.7 / eps).sqrt();
    let panels = ((x[1] * len * len + x[0] * len) / PI).ceil() as usize + 4;
    let opts = QuadOptions {
        initial_panels: panels,
        max_subdivisions: 4_000_000,
    };
    let a = Complex64::new(-eps, x[1]);
    let inner = |xi1: f64| {
        adaptive_quad_with(
            |r| {
                let xi2 = xi1 * xi1 + r * r;
                (Complex64::new(-eps * xi1 * xi1, x[0] * xi1 + x[1] * xi2) - eps * r * r).exp()
            },
            0.0,
            len,
            1e-9,
            &opts,
        )
        .unwrap()
        .value
    };
    let outer = adaptive_quad_with(inner, -len, len, 1e-8, &opts).unwrap().value;
    let weight = -a * 2.0 / gamma_complex(z + 2.0).unwrap();
    outer * weight / (2.0 * PI)
}

/// ε ↘ 0 limit of the regularised pairing at (n=2, k=2, a=1).
pub fn gz_brute_force(x: [f64; 2], z: Complex64) -> Complex64 {
    let eps: Vec<f64> = (0..5).map(|m| 0.4 / 2f64.powi(m)).collect();
    let samples = exec::map(&eps, |&e| (e, regularized(e, x, z)));
    richardson_limit(&samples).unwrap().value
}
