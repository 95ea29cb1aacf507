use super::*;
use crate::special_fn::gamma_complex;
use proptest::prelude::*;

const TOL: f64 = 1e-10;

fn gamma(x: f64) -> f64 {
    gamma_complex(Complex64::new(x, 0.0)).unwrap().re
}

#[test]
fn contour_examples_at_origin() {
    let a2 = ak_contour(2, 0.0, TOL).unwrap();
    assert_eq!(a2.method, Method::Contour);
    assert!(a2.err_est <= TOL);
    let sq = PI.sqrt() * Complex64::from_polar(1.0, PI / 4.0);
    assert!((a2.value - sq).norm() < 1e-10);
    assert!((a2.value.re - 1.25331).abs() < 1e-5 && (a2.value.im - 1.25331).abs() < 1e-5);

    // A_3(0) = 2Γ(4/3)cos(π/6), read off the two rotated rays.
    let a3 = ak_contour(3, 0.0, TOL).unwrap();
    let oracle = 2.0 * gamma(4.0 / 3.0) * (PI / 6.0).cos();
    assert!((a3.value - Complex64::new(oracle, 0.0)).norm() < 1e-10);
    assert!((a3.value.re - 1.54669).abs() < 1e-5);
    assert!((oracle - 2.0 * PI / (3.0 * gamma(2.0 / 3.0))).abs() < 1e-12);

    let a4 = ak_contour(4, 0.0, TOL).unwrap();
    let expect = 2.0 * gamma(1.25) * Complex64::from_polar(1.0, PI / 8.0);
    assert!((a4.value - expect).norm() < 1e-10);
    assert!((a4.value.norm() - 1.81280).abs() < 1e-5);
}

#[test]
fn contour_matches_closed_forms() {
    for i in 0..=40 {
        let x = -10.0 + 0.5 * i as f64;
        let c = ak_contour(2, x, 1e-12).unwrap().value;
        let g = gaussian_closed_form(x, 1.0).unwrap();
        assert!((c - g).norm() <= 1e-8 * g.norm(), "k=2 x={x}: {c} vs {g}");
    }
    for i in 0..=30 {
        let x = -10.0 + 0.5 * i as f64;
        let c = ak_contour(3, x, 1e-12).unwrap().value;
        let a = ak_closed(3, x).unwrap().value;
        assert!((c - a).norm() <= 1e-6, "k=3 x={x}: {c} vs {a}");
        assert!(c.im.abs() < 1e-12);
    }
}

#[test]
fn contour_is_stable_far_out() {
    // The stationary-point base keeps the integrand bounded by 1, so large
    // |x| costs no accuracy.
    for x in [-40.0, -25.0, 25.0, 40.0] {
        let c = ak_contour(2, x, 1e-12).unwrap().value;
        let g = gaussian_closed_form(x, 1.0).unwrap();
        assert!((c - g).norm() < 1e-9, "x={x}: {c} vs {g}");
    }
    let c = ak_contour(3, -25.0, 1e-12).unwrap().value;
    let a = ak_closed(3, -25.0).unwrap().value;
    assert!((c - a).norm() < 1e-8);
}

#[test]
fn closed_form_examples() {
    let a3 = ak_closed(3, 0.0).unwrap();
    assert_eq!(a3.method, Method::ClosedForm);
    assert!((a3.value.re - 1.54669).abs() < 1e-5);
    for x in [-7.0, 0.0, 3.3] {
        assert!((ak_closed(2, x).unwrap().value.norm() - 1.772454).abs() < 1e-6);
    }
    let far = ak_closed(3, 10.0).unwrap().value.re;
    let c = 3f64.powf(-1.0 / 3.0);
    // 3.898045e-6: small, though not below 1e-6.
    assert!(far > 0.0 && (far - 3.898045e-6).abs() < 1e-10);
    assert!((far - 2.0 * PI * c * airy_ai(10.0 * c).unwrap()).abs() < 1e-18);
    assert!(ak_closed(4, 0.0).is_err());
}

#[test]
fn eps_oracle_examples() {
    let (e0, lv) = default_eps_schedule(2, 0.0);
    let o = ak_eps_oracle(2, 0.0, e0, lv).unwrap();
    assert_eq!(o.method, Method::EpsOracle);
    assert!((o.value - ak_contour(2, 0.0, TOL).unwrap().value).norm() < 1e-6);

    let (e0, lv) = default_eps_schedule(3, 1.0);
    let o = ak_eps_oracle(3, 1.0, e0, lv).unwrap();
    let c = 3f64.powf(-1.0 / 3.0);
    assert!((o.value.re - 2.0 * PI * c * airy_ai(c).unwrap()).abs() < 1e-5);

    let (e0, lv) = default_eps_schedule(5, -2.0);
    let o = ak_eps_oracle(5, -2.0, e0, lv).unwrap();
    assert!((o.value - ak_contour(5, -2.0, TOL).unwrap().value).norm() < 1e-5);
}

#[test]
fn eps_oracle_rejects_bad_input() {
    assert!(ak_eps_oracle(2, 0.0, 0.0, 5).is_err());
    assert!(ak_eps_oracle(2, 0.0, 1.5, 5).is_err());
    assert!(ak_eps_oracle(2, 0.0, 0.5, 2).is_err());
    assert!(ak_eps_oracle(1, 0.0, 0.5, 5).is_err());
}

#[test]
fn eps_oracle_refuses_unconverged_limits() {
    // Starting far outside the Taylor disc leaves a large residual.
    let r = ak_eps_oracle(2, 20.0, 1.0, 3);
    assert!(matches!(r, Err(Error::Extrapolation(_))), "{r:?}");
}

#[test]
fn split_point_examples() {
    let s = split_points(2, 0.0).unwrap();
    assert_eq!(s.regime, Regime::Even);
    assert!((s.x_star.unwrap() - 0.5).abs() < 1e-15 && (s.x_sub.unwrap() + 0.5).abs() < 1e-15);
    assert_eq!(split_points(4, 1.0).unwrap().x_star, Some(0.0));
    for k in [2u32, 4, 6, 8] {
        for i in 0..=40 {
            let x = -10.0 + 0.5 * i as f64;
            let s = split_points(k, x).unwrap();
            let (hi, lo) = (s.x_star.unwrap(), s.x_sub.unwrap());
            let kf = k as f64;
            assert!((x + kf * hi.powi(k as i32 - 1) - 1.0).abs() < 1e-12);
            assert!((x + kf * lo.powi(k as i32 - 1) + 1.0).abs() < 1e-12);
            assert!(hi - lo >= 0.0 && hi - lo <= 2.0 / kf.powf(1.0 / (kf - 1.0)) + 1e-12);
        }
    }
}

#[test]
fn split_points_odd_domains() {
    assert!(split_points(3, 1.5).is_err());
    let s = split_points(3, 0.5).unwrap();
    assert_eq!(s.regime, Regime::OddZeroToOne);
    assert!(s.x_sub.is_none());
    assert!((0.5 + 3.0 * s.x_star.unwrap().powi(2) - 1.0).abs() < 1e-14);
    let s = split_points(5, -3.0).unwrap();
    assert_eq!(s.regime, Regime::OddLeMinusOne);
    let (hi, lo) = (s.x_star.unwrap(), s.x_sub.unwrap());
    assert!((-3.0 + 5.0 * lo.powi(4) + 1.0).abs() < 1e-13);
    assert!(hi - lo >= 0.0 && hi - lo <= (2.0f64 / 5.0).powf(0.25) + 1e-14);
    assert_eq!(split_points(3, -0.5).unwrap().regime, Regime::OddMinusOneToZero);
}

#[test]
fn ibp_bound_examples() {
    assert_eq!(ibp_bound(4, 7.0), 6.0);
    assert_eq!(ibp_bound(3, 0.5), 10.0 / 3.0);
    assert_eq!(ibp_bound(5, -3.0), 12.0);
    assert_eq!(ibp_bound(5, -0.5), 6.0);
    assert_eq!(ibp_bound(7, 2.0), 2.0);
}

#[test]
fn measured_values_sit_under_regional_bounds() {
    for k in 2..=8u32 {
        for i in 0..=80 {
            let x = -20.0 + 0.5 * i as f64;
            let a = ak_contour(k, x, 1e-9).unwrap().value.norm();
            let b = ibp_bound(k, x);
            assert!(a <= b && b <= 12.0, "k={k} x={x}: {a} > {b}");
        }
    }
}

#[test]
fn scaled_integral_examples() {
    let s = scaled_integral(2, 0.0, 4.0, TOL).unwrap();
    assert!((s.value.norm() - 0.886227).abs() < 1e-6);
    let s = scaled_integral(3, 0.0, 8.0, TOL).unwrap();
    assert!((s.value.re - 0.773343).abs() < 1e-6);
    assert!(scaled_integral(2, 0.0, 0.0, TOL).is_err());
    for k in 2..=6u32 {
        for x in [-3.0, 0.4, 2.5] {
            let p = scaled_integral(k, x, 1.7, TOL).unwrap().value;
            let m = scaled_integral(k, -x, -1.7, TOL).unwrap().value;
            assert!((p - m.conj()).norm() < 1e-10, "k={k} x={x}");
        }
    }
}

#[test]
fn scaling_identity_against_direct_contour() {
    for k in 2..=6u32 {
        for &(x, t) in &[(1.3, 0.2), (-2.0, 5.0), (0.7, -3.0), (-4.0, -0.5)] {
            let direct = oscillatory_integral(Exponent::Int(k), x, t, 1e-12).unwrap().value;
            let scaled = scaled_integral(k, x, t, 1e-12).unwrap().value;
            assert!(
                (direct.norm() - scaled.norm()).abs() <= 1e-8 * scaled.norm(),
                "k={k} x={x} t={t}"
            );
            assert!((direct - scaled).norm() <= 1e-8 * scaled.norm());
        }
    }
}

#[test]
fn conjugate_phase_gives_conjugate_value() {
    for k in 2..=7u32 {
        for x in [-6.0, -1.0, 0.0, 2.0, 5.0] {
            let a = ak_contour(k, x, 1e-12).unwrap().value;
            let b = oscillatory_integral(Exponent::Int(k), -x, -1.0, 1e-12).unwrap().value;
            assert!((a - b.conj()).norm() <= 1e-10, "k={k} x={x}");
        }
    }
}

#[test]
fn abs_variant_examples() {
    let a = ak_abs(2.0, 1.7, TOL).unwrap().value;
    assert!((a - ak_contour(2, 1.7, TOL).unwrap().value).norm() < 1e-10);
    let v = ak_abs(1.5, 0.0, TOL).unwrap().value;
    let expect = 2.0 * gamma(5.0 / 3.0) * Complex64::from_polar(1.0, PI / 3.0);
    assert!((v - expect).norm() < 1e-10);
    assert!((v.norm() - 1.805491).abs() < 1e-6);
    assert!(ak_abs(PI, 3.0, TOL).unwrap().value.norm() <= 10.0);
    assert!(ak_abs(1.0, 0.0, TOL).is_err());
    for big_k in [1.5, 2.5, PI, 4.7] {
        let at0 = ak_abs(big_k, 0.0, TOL).unwrap().value;
        let expect = 2.0 * gamma(1.0 + 1.0 / big_k) * Complex64::from_polar(1.0, PI / (2.0 * big_k));
        assert!((at0 - expect).norm() < 1e-10, "K={big_k}");
        if big_k < 2.0 {
            continue;
        }
        for i in 0..=40 {
            let x = -20.0 + i as f64;
            assert!(ak_abs(big_k, x, 1e-9).unwrap().value.norm() <= 10.0, "K={big_k} x={x}");
        }
    }
}

#[test]
fn abs_variant_grows_below_two() {
    // For 1 < K < 2 the stationary-phase amplitude sqrt(2π/ψ''(s*)) grows like
    // |x|^{(2-K)/(2(K-1))}, so no uniform bound exists. At K = 1.5, x = -20 the
    // amplitude is 10.57.
    let big_k: f64 = 1.5;
    let s = (20.0 / big_k).powf(1.0 / (big_k - 1.0));
    let amp = (2.0 * PI / (big_k * (big_k - 1.0) * s.powf(big_k - 2.0))).sqrt();
    let v = ak_abs(big_k, -20.0, 1e-10).unwrap().value.norm();
    assert!((v - amp).abs() < 0.05 * amp, "{v} vs {amp}");
    assert!(v > 10.0);
    let nearer = ak_abs(big_k, -5.0, 1e-10).unwrap().value.norm();
    assert!(nearer < v);
}

#[test]
fn kernel_examples() {
    let p1 = PhaseSpec::monomials(&[1.0], &[2]).unwrap();
    let k1 = kernel_nd(&p1, &[0.0], 1.0, TOL).unwrap();
    assert!((k1 - PI.sqrt() * Complex64::from_polar(1.0, PI / 4.0) / (2.0 * PI)).norm() < 1e-11);
    assert!((k1.norm() - 0.28209).abs() < 1e-5);
    let p2 = PhaseSpec::monomials(&[1.0, 1.0], &[2, 2]).unwrap();
    let k2 = kernel_nd(&p2, &[0.0, 0.0], 1.0, TOL).unwrap();
    assert!((k2 - k1 * k1).norm() < 1e-11);
    assert!((k2.norm() - 0.0796).abs() < 1e-4);
    let p = PhaseSpec::monomials(&[1.0, -0.5], &[3, 4]).unwrap();
    let a = kernel_nd(&p, &[0.8, -1.1], 2.0, TOL).unwrap();
    let b = kernel_nd(&p.negated(), &[0.8, -1.1], -2.0, TOL).unwrap();
    assert!((a - b).norm() < 1e-14);
    assert!(kernel_nd(&p, &[0.0], 1.0, TOL).is_err());
    assert!(kernel_nd(&p, &[0.0, 0.0], 0.0, TOL).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn kernel_obeys_dispersive_bound(
        a1 in prop_oneof![-3.0..-0.2f64, 0.2..3.0f64],
        a2 in prop_oneof![-3.0..-0.2f64, 0.2..3.0f64],
        k1 in 2u32..7, k2 in 2u32..7,
        x1 in -8.0..8.0f64, x2 in -8.0..8.0f64,
        t in prop_oneof![-4.0..-0.05f64, 0.05..4.0f64],
    ) {
        let p = PhaseSpec::monomials(&[a1, a2], &[k1, k2]).unwrap();
        let v = kernel_nd(&p, &[x1, x2], t, 1e-10).unwrap();
        let bound = (12.0 / (2.0 * PI)).powi(2)
            * (a1 * t).abs().powf(-1.0 / k1 as f64)
            * (a2 * t).abs().powf(-1.0 / k2 as f64);
        prop_assert!(v.norm() <= bound);
    }

    #[test]
    fn odd_k_values_are_real(k in prop_oneof![Just(3u32), Just(5), Just(7)], x in -15.0..15.0f64) {
        let v = ak_contour(k, x, 1e-10).unwrap().value;
        prop_assert!(v.im.abs() < 1e-14);
    }
}
