use num_complex::Complex64;
use serde::Serialize;

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Extrapolation {
    pub value: Complex64,
    /// Difference between the two highest-order diagonal entries of the table.
    pub err_est: f64,
}

/// Polynomial-in-ε extrapolation of samples `(ε_m, v_m)` to `ε = 0`.
///
/// Samples must be ordered with `ε_{m+1} = ε_m / 2`. The Neville table is
/// built with the exact factor `2^j - 1`, so data that is a polynomial in ε of
/// degree below the sample count is reproduced exactly.
pub fn richardson_limit(samples: &[(f64, Complex64)]) -> Result<Extrapolation> {
    if samples.len() < 3 {
        return Err(Error::Extrapolation(format!(
            "need at least 3 samples, got {}",
            samples.len()
        )));
    }
    for w in samples.windows(2) {
        let (e0, e1) = (w[0].0, w[1].0);
        if !(e0 > 0.0 && e1 > 0.0) || ((e1 / e0) - 0.5).abs() > 1e-9 {
            return Err(Error::Extrapolation(format!(
                "ε sequence must halve at every step ({e0} -> {e1})"
            )));
        }
    }
    if samples.iter().any(|(_, v)| !(v.re.is_finite() && v.im.is_finite())) {
        return Err(Error::Extrapolation("non-finite sample".into()));
    }

    let m = samples.len();
    let scale = samples.iter().map(|(_, v)| v.norm()).fold(0.0, f64::max);
    let d_last = (samples[m - 1].1 - samples[m - 2].1).norm();
    let d_prev = (samples[m - 2].1 - samples[m - 3].1).norm();
    if d_last > d_prev && d_last > 1e-10 * (1.0 + scale) {
        return Err(Error::Extrapolation(format!(
            "samples are not settling as ε → 0 (last differences {d_prev:.3e} -> {d_last:.3e})"
        )));
    }

    // table[i] holds T_{i,j} for the current column j.
    let mut table: Vec<Complex64> = samples.iter().map(|(_, v)| *v).collect();
    let mut diag = vec![table[0]];
    for j in 1..m {
        let factor = f64::powi(2.0, j as i32) - 1.0;
        for i in (j..m).rev() {
            table[i] = table[i] + (table[i] - table[i - 1]) / factor;
        }
        diag.push(table[j]);
    }
    let value = table[m - 1];
    let err_est = (diag[m - 1] - diag[m - 2]).norm();
    Ok(Extrapolation { value, err_est })
}
