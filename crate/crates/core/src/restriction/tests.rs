use super::*;
use crate::analysis::critical_exponents;
use crate::numerics::{dft_at, lp_norm, Grid, SampledField};
use crate::osc_core::PhaseSpec;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

fn parabola() -> SurfaceSpec {
    SurfaceSpec::new(PhaseSpec::monomials(&[1.0], &[2]).unwrap())
}

fn symmetric_grid(h: [f64; 2], half: [usize; 2]) -> Grid {
    Grid::new(
        vec![-(half[0] as f64) * h[0], -(half[1] as f64) * h[1]],
        h.to_vec(),
        vec![2 * half[0] + 1, 2 * half[1] + 1],
    )
    .unwrap()
}

fn xi_window(lo: f64, hi: f64, step: f64) -> Grid {
    let n = ((hi - lo) / step).round() as usize + 1;
    Grid::new(vec![lo], vec![step], vec![n]).unwrap()
}

// Sized for s ∈ [1/2, 2]: x₂ widths up to 2, ξ₁ up to 4.5 so ξ₂ up to 20.25.
fn sweep_setup() -> RestrictionSetup {
    RestrictionSetup {
        grid: symmetric_grid([0.2, 0.1], [60, 160]),
        xi_grid: xi_window(-4.5, 4.5, 0.05),
    }
}

#[test]
fn gaussian_samples_match_closed_form() {
    let g = GaussianProfile::standard(2)
        .sample(symmetric_grid([0.1, 0.1], [80, 80]))
        .unwrap();
    let xi = xi_window(-2.0, 2.0, 0.1);
    let samples = surface_samples(&g, &parabola(), &xi).unwrap();
    for (i, v) in samples.iter().enumerate() {
        let x = xi.coords(i)[0];
        let want = (-(x * x + x.powi(4)) / 2.0).exp();
        assert!((v - want).norm() < 1e-10, "ξ₁ = {x}: {v} vs {want}");
    }
}

#[test]
fn real_even_field_has_real_samples() {
    let grid = symmetric_grid([0.15, 0.1], [50, 70]);
    let f = SampledField::from_fn(grid, |x| {
        Complex64::new(
            (-x[0].powi(2) / 2.0 - x[1].powi(4) / 3.0).exp() * (1.0 + x[0].powi(2)),
            0.0,
        )
    })
    .unwrap();
    let samples = surface_samples(&f, &parabola(), &xi_window(-3.0, 3.0, 0.25)).unwrap();
    assert!(samples.iter().all(|v| v.im.abs() <= 1e-10));
}

#[test]
fn samples_match_direct_sum() {
    let grid = Grid::new(vec![-4.0, -3.0], vec![0.125, 0.1], vec![64, 61]).unwrap();
    let f = SampledField::from_fn(grid.clone(), |x| {
        Complex64::new(x[0] - 0.3 * x[1], 1.0 + x[0] * x[1]) * (-(x[0] * x[0] + 2.0 * x[1] * x[1])).exp()
    })
    .unwrap();
    let surf = parabola();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10 {
        let x1: f64 = rng.gen_range(-3.0..3.0);
        let xi = Grid::new(vec![x1], vec![0.01], vec![2]).unwrap();
        let got = surface_samples(&f, &surf, &xi).unwrap()[0];
        let mut want = Complex64::new(0.0, 0.0);
        for (i, v) in f.values().iter().enumerate() {
            let x = grid.coords(i);
            want += v * Complex64::from_polar(1.0, -(x[0] * x1 + x[1] * x1 * x1));
        }
        want *= 0.125 * 0.1 / (2.0 * PI);
        assert!((got - want).norm() < 1e-8, "ξ₁ = {x1}");
    }
}

#[test]
fn band_violation_is_an_error() {
    let g = GaussianProfile::standard(2)
        .sample(symmetric_grid([0.5, 0.5], [20, 20]))
        .unwrap();
    // 0.8π/0.5 ≈ 5.03, so ξ₂ = 9 is out of band.
    assert!(surface_samples(&g, &parabola(), &xi_window(-3.0, 3.0, 0.5)).is_err());
    assert!(surface_samples(&g, &parabola(), &xi_window(-2.0, 2.0, 0.5)).is_ok());
}

#[test]
fn graph_measure_weight_is_one() {
    let s = SurfaceSpec::new(PhaseSpec::monomials(&[1.0, -2.0], &[3, 4]).unwrap());
    for xi in [[0.0, 0.0], [1.5, -2.0], [-7.0, 3.25]] {
        assert_eq!(s.measure_weight(&xi), 1.0);
    }
}

#[test]
fn quotient_basics() {
    let surf = parabola();
    let setup = sweep_setup();
    let f = GaussianProfile::standard(2).sample(setup.grid.clone()).unwrap();
    let q = restriction_quotient(&f, &surf, 1.2, &setup.xi_grid).unwrap();
    assert!(q.is_finite() && q > 0.0);
    let q2 = restriction_quotient(&f.scale(Complex64::new(2.0, 0.0)), &surf, 1.2, &setup.xi_grid).unwrap();
    assert!((q2 / q - 1.0).abs() < 1e-13);
    assert!(restriction_quotient(&SampledField::zeros(setup.grid.clone()), &surf, 1.2, &setup.xi_grid).is_err());
    assert!(restriction_quotient(&f, &surf, 0.5, &setup.xi_grid).is_err());
}

/// For the parabola the symmetry that preserves the quotient is the Galilean
/// map `e^{i(c x₁ + c² x₂)} φ(x₁ + 2c x₂, x₂)`: it moves `φ̂` along the surface,
/// `(η, η²) ↦ (η + c, (η + c)²)`, and its modulus is a unimodular shear.
#[test]
fn galilean_modulation_leaves_quotient_unchanged() {
    let surf = parabola();
    let grid = symmetric_grid([0.1, 0.05], [200, 120]);
    let base = GaussianProfile::standard(2);
    let c = 1.0;
    let moved = SampledField::from_fn(grid.clone(), |x| {
        Complex64::from_polar(1.0, c * x[0] + c * c * x[1]) * base.eval(&[x[0] + 2.0 * c * x[1], x[1]])
    })
    .unwrap();
    let f = base.sample(grid).unwrap();
    let xi = xi_window(-3.0, 4.0, 0.05);
    for p in [1.05, 1.2, 1.35] {
        let q0 = restriction_quotient(&f, &surf, p, &xi).unwrap();
        let q1 = restriction_quotient(&moved, &surf, p, &xi).unwrap();
        assert!((q1 / q0 - 1.0).abs() < 1e-3, "p = {p}: {q0} vs {q1}");
    }
}

#[test]
fn dilation_spec_and_identity() {
    let surf = SurfaceSpec::new(PhaseSpec::monomials(&[1.0, 1.0], &[2, 4]).unwrap());
    let d = DilationSpec::new(&surf, 16.0).unwrap();
    assert_eq!(d.exponents, vec![0.5, 0.25, 1.0]);
    assert_eq!(d.factors(), vec![4.0, 2.0, 16.0]);
    assert!((d.degree() - (1.0 + surf.inv_q())).abs() < 1e-15);
    assert!(DilationSpec::new(&surf, 0.0).is_err());

    let f = GaussianProfile::standard(2)
        .sample(symmetric_grid([0.2, 0.2], [30, 30]))
        .unwrap();
    assert_eq!(dilate(&f, &parabola(), 1.0).unwrap(), f);
}

#[test]
fn gaussian_norm_scaling_is_exact() {
    let surf = parabola();
    let setup = sweep_setup();
    let base = GaussianProfile::new(vec![1.0, 0.8], vec![0.5, -0.25]).unwrap();
    let lambda = 1.0 + surf.inv_q();
    for p in [1.0, 1.2, 2.0] {
        let n1 = lp_norm(&base.sample(setup.grid.clone()).unwrap(), p).unwrap();
        assert!((n1 / base.lp_norm(p) - 1.0).abs() < 1e-10);
        for s in [0.5, 2.0] {
            let d = DilationSpec::new(&surf, s).unwrap();
            let ns = lp_norm(&base.dilated(&d).unwrap().sample(setup.grid.clone()).unwrap(), p).unwrap();
            let measured = (ns / n1).ln() / s.ln();
            assert!((measured + lambda / p).abs() < 1e-8, "p = {p}, s = {s}: {measured}");
        }
    }
}

#[test]
fn interpolated_dilation_matches_exact() {
    let surf = parabola();
    let grid = symmetric_grid([0.1, 0.1], [120, 160]);
    let base = GaussianProfile::new(vec![1.0, 0.9], vec![0.5, 0.0]).unwrap();
    let f = base.sample(grid.clone()).unwrap();
    for s in [0.5, 2.0] {
        let got = dilate(&f, &surf, s).unwrap();
        let want = base
            .dilated(&DilationSpec::new(&surf, s).unwrap())
            .unwrap()
            .sample(grid.clone())
            .unwrap();
        let err = got
            .values()
            .iter()
            .zip(want.values())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        assert!(err < 1e-6, "s = {s}: {err}");
        let lambda = 1.0 + surf.inv_q();
        let ratio = lp_norm(&got, 1.5).unwrap() / lp_norm(&f, 1.5).unwrap();
        assert!((ratio / s.powf(-lambda / 1.5) - 1.0).abs() < 1e-6);
    }
    // Spreading by 1/s = 8 along x₂ pushes the support off the grid.
    assert!(matches!(dilate(&f, &surf, 0.125), Err(crate::Error::Domain(_))));
}

#[test]
fn dilated_transform_identity() {
    let surf = parabola();
    let base = GaussianProfile::new(vec![1.0, 1.2], vec![0.3, -0.4]).unwrap();
    let grid = symmetric_grid([0.1, 0.1], [100, 200]);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for s in [0.5, 2.0] {
        let d = DilationSpec::new(&surf, s).unwrap();
        let inv = DilationSpec::new(&surf, 1.0 / s).unwrap().factors();
        let f = base.dilated(&d).unwrap().sample(grid.clone()).unwrap();
        for _ in 0..10 {
            let xi = [rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)];
            let got = dft_at(&f, &xi).unwrap();
            let want = base.fourier(&[xi[0] * inv[0], xi[1] * inv[1]]) * s.powf(-d.degree());
            assert!((got - want).norm() < 1e-6, "s = {s}, ξ = {xi:?}");
        }
    }
}

/// `Q(d_s φ) = s^{-α(p)} Q(φ)`: the quotient falls off-critical for p above
/// the critical exponent and grows below it.
#[test]
fn quotient_scales_with_minus_alpha() {
    let surf = parabola();
    let setup = sweep_setup();
    let crit = critical_exponents(&[2.0]).unwrap();
    let ps = [crit.p - 0.15, crit.p, crit.p + 0.15];
    let s_list = [0.5, 1.0, 2.0];
    let q = necessity_quotients(&GaussianProfile::standard(2), &surf, &ps, &s_list, &setup).unwrap();
    for (p, series) in ps.iter().zip(&q) {
        for w in series.windows(2) {
            let per_octave = w[1].1 / w[0].1;
            let want = 2f64.powf(-crit.alpha(*p));
            assert!(
                (per_octave / want - 1.0).abs() < 0.05,
                "p = {p}: {per_octave} vs {want}"
            );
        }
    }
    let slopes: Vec<f64> = ps
        .iter()
        .map(|&p| {
            necessity_scan(&GaussianProfile::standard(2), &surf, p, &s_list, &setup)
                .unwrap()
                .slope
        })
        .collect();
    assert!(slopes[1].abs() < 1e-6);
    // slope = -1 - 1/(2q) + (1 + 1/q)/p, affine in 1/p.
    let inv: Vec<f64> = ps.iter().map(|p| 1.0 / p).collect();
    let coef = (slopes[2] - slopes[0]) / (inv[2] - inv[0]);
    let mid = slopes[0] + coef * (inv[1] - inv[0]);
    assert!((coef - (1.0 + surf.inv_q())).abs() < 1e-2, "{coef}");
    assert!((mid - slopes[1]).abs() < 1e-2);
}
