use num_complex::Complex64;
use std::f64::consts::PI;

use crate::exec;
use crate::numerics::{fft_axes, lp_norm, Direction, Domain, SampledField};
use crate::osc_core::{scaled_term, PhaseSpec};
use crate::{Error, Result};

/// `T f(x) = ∫ e^{ix·ξ} e^{iτa(ξ)} \hat f(ξ) dξ` on ℝⁿ (no periodisation), as
/// the discrete convolution `(2π)^{n/2} Σ_y K_τ(x - y) f(y) ∏h` with the
/// propagator kernel `K_τ` of [`kernel_nd`](crate::osc_core::kernel_nd).
///
/// This is `(2π)^{n/2}` times `e^{iτa(D)} f`. The sum is a faithful quadrature
/// when the kernel's local frequency at the largest offset stays below
/// `π/h` by more than the bandwidth of `f`; for `ψ = ξ^k` that frequency is
/// `(|d| / (k|a τ|))^{1/(k-1)}`.
pub fn ts_apply_freespace(f_s: &SampledField, phase: &PhaseSpec, tau: f64) -> Result<SampledField> {
    if tau == 0.0 || !tau.is_finite() {
        return Err(Error::Domain(format!("tau must be finite and nonzero, got {tau}")));
    }
    if *f_s.domain() != Domain::Space {
        return Err(Error::invalid("T_s acts on spatial fields"));
    }
    let grid = f_s.grid();
    let n = grid.dims();
    if n != phase.dims() {
        return Err(Error::invalid(format!(
            "phase has {} terms but the grid is {n}-dimensional",
            phase.dims()
        )));
    }
    let pts = grid.points().to_vec();
    let padded: Vec<usize> = pts.iter().map(|&p| 2 * p).collect();

    // 1-D kernel factors at offsets -(N-1)h..(N-1)h, stored circularly.
    let mut factors = Vec::with_capacity(n);
    for (axis, term) in phase.terms().iter().enumerate() {
        let (np, h) = (pts[axis], grid.spacing()[axis]);
        let tau_j = term.coeff * tau;
        let tol = 1e-11 * tau_j.abs().powf(-1.0 / term.exponent.value());
        let offsets: Vec<isize> = (-(np as isize - 1)..np as isize).collect();
        let vals = exec::try_map(&offsets, |&d| {
            scaled_term(term.exponent, d as f64 * h, tau_j, tol).map(|r| r.value)
        })?;
        let mut line = vec![Complex64::new(0.0, 0.0); 2 * np];
        for (&d, v) in offsets.iter().zip(vals) {
            line[d.rem_euclid(2 * np as isize) as usize] = v;
        }
        factors.push(line);
    }

    let total: usize = padded.iter().product();
    let unravel = |mut flat: usize| {
        let mut idx = vec![0usize; n];
        for a in (0..n).rev() {
            idx[a] = flat % padded[a];
            flat /= padded[a];
        }
        idx
    };
    let mut kernel: Vec<Complex64> = exec::map_range(total, |i| {
        unravel(i).iter().enumerate().map(|(a, &m)| factors[a][m]).product()
    });
    let mut data = vec![Complex64::new(0.0, 0.0); total];
    for (i, v) in f_s.values().iter().enumerate() {
        let idx = grid.unravel(i);
        let flat = idx.iter().zip(&padded).fold(0, |acc, (&m, &p)| acc * p + m);
        data[flat] = *v;
    }
    fft_axes(&mut kernel, &padded, Direction::Forward);
    fft_axes(&mut data, &padded, Direction::Forward);
    data.iter_mut().zip(&kernel).for_each(|(d, k)| *d *= k);
    fft_axes(&mut data, &padded, Direction::Inverse);

    let scale = (2.0 * PI).powf(-(n as f64) / 2.0) * grid.cell_volume() / total as f64;
    let out: Vec<Complex64> = (0..grid.len())
        .map(|i| {
            let idx = grid.unravel(i);
            let flat = idx.iter().zip(&padded).fold(0, |acc, (&m, &p)| acc * p + m);
            data[flat] * scale
        })
        .collect();
    SampledField::new(grid.clone(), out)
}

/// `‖T f‖_{p'} / (|τ|^{-2(p-1)/p} ‖f‖_p)`, the quotient in the interpolated
/// `L^p → L^{p'}` bound.
///
/// The exponent `2(p-1)/p` is the one displayed after interpolation; it equals
/// the interpolation exponent `(2/p - 1)/q` only at the critical `p`.
pub fn interpolated_bound_check(f_s: &SampledField, phase: &PhaseSpec, tau: f64, p: f64) -> Result<f64> {
    if !(p > 1.0 && p <= 2.0) {
        return Err(Error::invalid(format!("p must lie in (1, 2], got {p}")));
    }
    let tf = ts_apply_freespace(f_s, phase, tau)?;
    let denom = tau.abs().powf(-2.0 * (p - 1.0) / p) * lp_norm(f_s, p)?;
    if denom == 0.0 {
        return Err(Error::Domain("f vanishes; the quotient is undefined".into()));
    }
    Ok(lp_norm(&tf, p / (p - 1.0))? / denom)
}

/// `(2/p - 1)/q`, the exponent obtained by interpolating the `L²` and
/// `L¹ → L^∞` bounds.
pub fn interpolation_exponent(p: f64, inv_q: f64) -> f64 {
    (2.0 / p - 1.0) * inv_q
}
