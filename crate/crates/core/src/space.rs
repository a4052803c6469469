//! Space parameters `(λ, p, q)` and the vertical density `dν_λ(y) = (λ+1)(2y)^λ dy`.

use crate::error::{domain, Error, Result};
use serde::{Deserialize, Serialize};

/// The triple `(λ, p, q)` selecting the space `A^{q,p}_λ(Π)`.
///
/// `λ > -1` is the weight exponent, `p` the inner (vertical) Lebesgue exponent
/// and `q` the outer (horizontal, Fourier-side) exponent; `1 ≤ p, q < ∞`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpaceParams {
    lambda: f64,
    p: f64,
    q: f64,
}

impl SpaceParams {
    pub fn new(lambda: f64, p: f64, q: f64) -> Result<Self> {
        if !(lambda.is_finite() && lambda > -1.0) {
            return Err(Error::InvalidArgument(format!(
                "lambda must be finite and > -1, got {lambda}"
            )));
        }
        for (name, v) in [("p", p), ("q", q)] {
            if !(v.is_finite() && v >= 1.0) {
                return Err(Error::InvalidArgument(format!(
                    "{name} must be finite and >= 1, got {v}"
                )));
            }
        }
        Ok(Self { lambda, p, q })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    /// Same `λ`, `p` with a different outer exponent.
    pub fn with_q(&self, q: f64) -> Result<Self> {
        Self::new(self.lambda, self.p, q)
    }
}

/// Density of `ν_λ` with respect to Lebesgue measure: `(λ+1)(2y)^λ`.
pub fn nu_weight(params: &SpaceParams, y: f64) -> Result<f64> {
    if !(y > 0.0) || !y.is_finite() {
        return Err(domain("nu_weight", format!("y must be finite and > 0, got {y}")));
    }
    Ok(nu_density(params.lambda(), y))
}

#[inline]
pub(crate) fn nu_density(lambda: f64, y: f64) -> f64 {
    if lambda == 0.0 {
        1.0
    } else {
        (lambda + 1.0) * (2.0 * y).powf(lambda)
    }
}

/// `ν_λ((0, y]) = (2y)^{λ+1} / 2`.
#[cfg(test)]
fn nu_mass_to(lambda: f64, y: f64) -> f64 {
    0.5 * (2.0 * y).powf(lambda + 1.0)
}
