use serde::Serialize;

use crate::{Error, Result};

/// Which of the five integration-by-parts arguments applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    Even,
    OddLeMinusOne,
    OddMinusOneToZero,
    OddZeroToOne,
    OddGeOne,
}

impl Regime {
    pub fn classify(k: u32, x: f64) -> Regime {
        if k.is_multiple_of(2) {
            Regime::Even
        } else if x <= -1.0 {
            Regime::OddLeMinusOne
        } else if x <= 0.0 {
            Regime::OddMinusOneToZero
        } else if x <= 1.0 {
            Regime::OddZeroToOne
        } else {
            Regime::OddGeOne
        }
    }
}

/// Points where the derivative `x + k s^{k-1}` of the phase equals `±1`.
///
/// For odd `k` the upper point exists only for `x ≤ 1` and the lower one only
/// for `x ≤ -1`; both are then the nonnegative roots.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SplitPoints {
    pub x_star: Option<f64>,
    pub x_sub: Option<f64>,
    pub regime: Regime,
}

fn signed_root(v: f64, k: u32) -> f64 {
    v.signum() * (v.abs() / k as f64).powf(1.0 / (k as f64 - 1.0))
}

pub fn split_points(k: u32, x: f64) -> Result<SplitPoints> {
    if k < 2 {
        return Err(Error::invalid(format!("k must be >= 2, got {k}")));
    }
    if !x.is_finite() {
        return Err(Error::invalid(format!("x must be finite, got {x}")));
    }
    let regime = Regime::classify(k, x);
    if regime == Regime::Even {
        let root = |v: f64| if v == 0.0 { 0.0 } else { signed_root(v, k) };
        return Ok(SplitPoints {
            x_star: Some(root(1.0 - x)),
            x_sub: Some(root(-1.0 - x)),
            regime,
        });
    }
    if x > 1.0 {
        return Err(Error::Domain(format!(
            "odd k = {k}: split points are only defined for x <= 1, got {x}"
        )));
    }
    let x_sub = (x <= -1.0).then(|| signed_root(-1.0 - x, k).max(0.0));
    Ok(SplitPoints {
        x_star: Some(signed_root(1.0 - x, k).max(0.0)),
        x_sub,
        regime,
    })
}

/// The proof's regional upper bound for `|A_k(x)|`.
pub fn ibp_bound(k: u32, x: f64) -> f64 {
    match Regime::classify(k, x) {
        Regime::Even => 6.0,
        Regime::OddLeMinusOne => 12.0,
        Regime::OddMinusOneToZero => 6.0,
        Regime::OddZeroToOne => 10.0 / 3.0,
        Regime::OddGeOne => 2.0,
    }
}
