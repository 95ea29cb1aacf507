use serde::Serialize;

use crate::{Error, Result};

/// Least-squares power law `y ≈ e^{intercept} t^{slope}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DecayFit {
    pub slope: f64,
    pub intercept: f64,
    /// Largest |log y - fitted| over the data.
    pub max_residual: f64,
}

pub fn loglog_fit(points: &[(f64, f64)]) -> Result<DecayFit> {
    if points.len() < 3 {
        return Err(Error::invalid(format!(
            "log-log fit needs at least 3 points, got {}",
            points.len()
        )));
    }
    if let Some(&(t, y)) = points.iter().find(|(t, y)| !(*t > 0.0 && *y > 0.0)) {
        return Err(Error::invalid(format!(
            "log-log fit needs positive data, got ({t}, {y})"
        )));
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|(t, y)| (t.ln(), y.ln())).collect();
    let n = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx <= 1e-300 {
        return Err(Error::invalid("log-log fit needs distinct abscissae"));
    }
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let max_residual = logs
        .iter()
        .map(|p| (p.1 - (intercept + slope * p.0)).abs())
        .fold(0.0, f64::max);
    Ok(DecayFit {
        slope,
        intercept,
        max_residual,
    })
}
