use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Exponent of one monomial term: `ξ^k` with integer `k ≥ 2`, or `|ξ|^K`
/// with real `K > 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Exponent {
    Int(u32),
    Abs(f64),
}

impl Exponent {
    pub fn value(self) -> f64 {
        match self {
            Exponent::Int(k) => k as f64,
            Exponent::Abs(k) => k,
        }
    }

    /// `ψ(ξ)` for this exponent.
    pub fn eval(self, xi: f64) -> f64 {
        match self {
            Exponent::Int(k) => xi.powi(k as i32),
            Exponent::Abs(k) => xi.abs().powf(k),
        }
    }

    /// True when `ψ(-ξ) = ψ(ξ)`.
    pub fn is_even(self) -> bool {
        match self {
            Exponent::Int(k) => k % 2 == 0,
            Exponent::Abs(_) => true,
        }
    }

    pub fn validate(self) -> Result<()> {
        match self {
            Exponent::Int(k) if k < 2 => Err(Error::invalid(format!("integer exponent must be >= 2, got {k}"))),
            Exponent::Abs(k) if !(k > 1.0) || !k.is_finite() => {
                Err(Error::invalid(format!("|xi|^K exponent must be > 1, got {k}")))
            }
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseTerm {
    pub coeff: f64,
    pub exponent: Exponent,
}

/// Separable phase `a(ξ) = Σ_j a_j ψ_j(ξ_j)`, one term per coordinate.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhaseSpec {
    terms: Vec<PhaseTerm>,
}

impl PhaseSpec {
    pub fn new(terms: Vec<PhaseTerm>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::invalid("phase needs at least one term"));
        }
        for (j, t) in terms.iter().enumerate() {
            if t.coeff == 0.0 || !t.coeff.is_finite() {
                return Err(Error::invalid(format!(
                    "coefficient a_{} must be finite and nonzero, got {}",
                    j + 1,
                    t.coeff
                )));
            }
            t.exponent.validate()?;
        }
        Ok(PhaseSpec { terms })
    }

    /// Integer monomials `Σ a_j ξ_j^{k_j}`.
    pub fn monomials(coeffs: &[f64], ks: &[u32]) -> Result<Self> {
        if coeffs.len() != ks.len() {
            return Err(Error::invalid(format!(
                "{} coefficients for {} exponents",
                coeffs.len(),
                ks.len()
            )));
        }
        Self::new(
            coeffs
                .iter()
                .zip(ks)
                .map(|(&coeff, &k)| PhaseTerm {
                    coeff,
                    exponent: Exponent::Int(k),
                })
                .collect(),
        )
    }

    pub fn terms(&self) -> &[PhaseTerm] {
        &self.terms
    }

    pub fn dims(&self) -> usize {
        self.terms.len()
    }

    /// `Σ 1/k_j`, the `1/q` of the decay rate.
    pub fn inv_q(&self) -> f64 {
        self.terms.iter().map(|t| 1.0 / t.exponent.value()).sum()
    }

    pub fn symbol(&self, xi: &[f64]) -> f64 {
        self.terms
            .iter()
            .zip(xi)
            .map(|(t, &x)| t.coeff * t.exponent.eval(x))
            .sum()
    }

    pub fn negated(&self) -> PhaseSpec {
        PhaseSpec {
            terms: self
                .terms
                .iter()
                .map(|t| PhaseTerm {
                    coeff: -t.coeff,
                    exponent: t.exponent,
                })
                .collect(),
        }
    }
}
