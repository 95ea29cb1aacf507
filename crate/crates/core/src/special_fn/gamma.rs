use std::f64::consts::PI;

use num_complex::Complex64;

use crate::{Error, Result};

const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS_P: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Complex Gamma function: Lanczos (g = 7, 9 terms) on `Re w ≥ 1/2`,
/// reflection below.
pub fn gamma_complex(w: Complex64) -> Result<Complex64> {
    if !(w.re.is_finite() && w.im.is_finite()) {
        return Err(Error::invalid(format!("Gamma argument must be finite, got {w}")));
    }
    if w.im == 0.0 && w.re <= 0.0 && w.re == w.re.round() {
        return Err(Error::GammaPole(w));
    }
    Ok(gamma_unchecked(w))
}

fn gamma_unchecked(w: Complex64) -> Complex64 {
    if w.re < 0.5 {
        let s = (w * PI).sin();
        return Complex64::new(PI, 0.0) / (s * gamma_unchecked(Complex64::new(1.0, 0.0) - w));
    }
    let z = w - 1.0;
    let mut a = Complex64::new(LANCZOS_P[0], 0.0);
    for (i, &p) in LANCZOS_P.iter().enumerate().skip(1) {
        a += p / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    // Γ(z+1) = sqrt(2π) t^{z+1/2} e^{-t} A(z), assembled in log form.
    let log = (z + 0.5) * t.ln() - t + a.ln() + 0.5 * (2.0 * PI).ln();
    log.exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::ray_quad;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn known_values() {
        assert!((gamma_complex(re(1.0)).unwrap() - re(1.0)).norm() < 1e-14);
        let half = gamma_complex(re(0.5)).unwrap();
        assert!((half.re - PI.sqrt()).abs() < 1e-12 * PI.sqrt());
        assert!((half.re - 1.772454).abs() < 1e-6);
        assert!((gamma_complex(re(5.0)).unwrap().re - 24.0).abs() < 1e-12 * 24.0);
        // Γ(i) = -0.1549498283018106... - 0.4980156681183560...i
        let gi = gamma_complex(Complex64::new(0.0, 1.0)).unwrap();
        let exact = Complex64::new(-0.154_949_828_301_810_68, -0.498_015_668_118_356);
        assert!((gi - exact).norm() < 1e-12 * exact.norm());
    }

    #[test]
    fn two_thirds_against_quadrature_oracle() {
        // Γ(2/3) = ∫ t^{-1/3} e^{-t} dt = ∫ 3u e^{-u³} du with t = u³.
        let oracle = ray_quad(
            |u| re(3.0 * u * (-u * u * u).exp()),
            |u| (3.0 * (u + 1.0)).ln() - u * u * u + u,
            1e-14,
        )
        .unwrap()
        .value
        .re;
        let g = gamma_complex(re(2.0 / 3.0)).unwrap().re;
        assert!((g - oracle).abs() < 1e-12 * g, "{g} vs {oracle}");
        assert!((g - 1.354118).abs() < 1e-6);
    }

    #[test]
    fn poles_are_rejected() {
        for n in [0.0, -1.0, -7.0] {
            assert!(matches!(gamma_complex(re(n)), Err(Error::GammaPole(_))));
        }
        assert!(gamma_complex(re(-0.5)).is_ok());
    }

    #[test]
    fn recurrence_and_reflection() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let w = Complex64::new(rng.gen_range(0.1..5.0), rng.gen_range(-5.0..5.0));
            let g = gamma_complex(w).unwrap();
            let g1 = gamma_complex(w + 1.0).unwrap();
            assert!((g1 - w * g).norm() <= 1e-11 * g1.norm(), "recurrence at {w}");
            let refl = g * gamma_complex(Complex64::new(1.0, 0.0) - w).unwrap();
            let exact = Complex64::new(PI, 0.0) / (w * PI).sin();
            assert!((refl - exact).norm() <= 1e-10 * exact.norm(), "reflection at {w}");
        }
    }
}
