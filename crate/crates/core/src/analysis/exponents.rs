use serde::Serialize;

use crate::{Error, Result};

/// Exponent bookkeeping for the restriction estimate with `1/q = Σ 1/k_j`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CriticalExponents {
    pub inv_q: f64,
    pub p: f64,
    pub p_dual: f64,
    pub lambda: f64,
}

impl CriticalExponents {
    /// Scaling defect `1 + 1/(2q) - (1 + 1/q)/p`; zero exactly at the critical `p`.
    pub fn alpha(&self, p: f64) -> f64 {
        1.0 + 0.5 * self.inv_q - (1.0 + self.inv_q) / p
    }
}

pub fn critical_exponents(ks: &[f64]) -> Result<CriticalExponents> {
    if ks.is_empty() {
        return Err(Error::invalid("exponent list is empty"));
    }
    if let Some(&bad) = ks.iter().find(|&&k| !(k > 1.0) || !k.is_finite()) {
        return Err(Error::invalid(format!("exponents must exceed 1, got {bad}")));
    }
    let inv_q: f64 = ks.iter().map(|k| 1.0 / k).sum();
    // 2 - 2/(2 + 1/q) written so that alpha(p) cancels to the last bit.
    let lambda = 1.0 + inv_q;
    let p = lambda / (1.0 + 0.5 * inv_q);
    Ok(CriticalExponents {
        inv_q,
        p,
        p_dual: p / (p - 1.0),
        lambda,
    })
}
