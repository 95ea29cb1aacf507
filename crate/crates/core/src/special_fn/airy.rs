use std::f64::consts::PI;

use crate::{Error, Result};

/// |x| at which evaluation switches from the Maclaurin series to the
/// asymptotic expansions. Both are accurate to ~1e-11 here.
pub const AIRY_SEAM: f64 = 7.0;

const AI0: f64 = 0.355_028_053_887_817_2;
const AIP0: f64 = -0.258_819_403_792_806_8;

const SUPPORTED: (f64, f64) = (-20.0, 10.0);

/// Airy function `Ai(x)` on `[-20, 10]`, absolute error below 1e-10.
pub fn airy_ai(x: f64) -> Result<f64> {
    if !(SUPPORTED.0..=SUPPORTED.1).contains(&x) {
        return Err(Error::OutOfRange {
            what: "Airy argument",
            value: x,
            lo: SUPPORTED.0,
            hi: SUPPORTED.1,
        });
    }
    if x.abs() <= AIRY_SEAM {
        Ok(airy_ai_series(x))
    } else {
        Ok(airy_ai_asymptotic(x))
    }
}

/// Maclaurin series `Ai(x) = Ai(0) f(x) + Ai'(0) g(x)`.
pub fn airy_ai_series(x: f64) -> f64 {
    let x3 = x * x * x;
    let mut f_term = 1.0;
    let mut g_term = x;
    let mut f = f_term;
    let mut g = g_term;
    for k in 1..200 {
        let kf = k as f64;
        f_term *= x3 / ((3.0 * kf - 1.0) * (3.0 * kf));
        g_term *= x3 / ((3.0 * kf) * (3.0 * kf + 1.0));
        f += f_term;
        g += g_term;
        if f_term.abs() <= 1e-18 * f.abs().max(1.0) && g_term.abs() <= 1e-18 * g.abs().max(1.0) {
            break;
        }
    }
    AI0 * f + AIP0 * g
}

/// Large-|x| expansions, truncated at the smallest term.
pub fn airy_ai_asymptotic(x: f64) -> f64 {
    let z = x.abs();
    let zeta = 2.0 / 3.0 * z.powf(1.5);
    // u_k ζ^{-k}, u_k = u_{k-1} (6k-5)(6k-3)(6k-1) / ((2k-1) 216 k)
    let mut terms = vec![1.0];
    let mut u = 1.0;
    let mut prev = f64::INFINITY;
    for k in 1..100 {
        let kf = k as f64;
        u *= (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0) / ((2.0 * kf - 1.0) * 216.0 * kf);
        let t = u / zeta.powi(k);
        if t >= prev || t < 1e-18 {
            break;
        }
        terms.push(t);
        prev = t;
    }
    if x > 0.0 {
        let s: f64 = terms
            .iter()
            .enumerate()
            .map(|(k, t)| if k % 2 == 0 { *t } else { -*t })
            .sum();
        (-zeta).exp() / (2.0 * PI.sqrt() * z.powf(0.25)) * s
    } else {
        let mut even = 0.0;
        let mut odd = 0.0;
        for (k, t) in terms.iter().enumerate() {
            let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
            if k % 2 == 0 {
                even += sign * t;
            } else {
                odd += sign * t;
            }
        }
        let phase = zeta - PI / 4.0;
        (phase.cos() * even + phase.sin() * odd) / (PI.sqrt() * z.powf(0.25))
    }
}
