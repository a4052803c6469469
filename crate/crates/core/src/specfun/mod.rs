//! Special functions behind the weights and changes of variable:
//! the normalizer `θ_{λ,p}`, the norms `‖Φ_ξ‖` of `Φ_ξ(y) = e^{-ξy}`, and the
//! mutually inverse maps `ψ_λ(x,·)` / `β_λ(x,·)` built on the regularized
//! upper incomplete gamma function.

mod incgamma;
pub mod quadrature;

pub use incgamma::{gamma_lower_reg, gamma_upper_reg, ln_gamma, ln_gamma_upper_reg, MAX_SHAPE};

use crate::error::{domain, Error, Result};
use crate::space::SpaceParams;

/// `ln θ_{λ,p}(x)` for `x > 0`.
fn ln_theta(params: &SpaceParams, x: f64) -> f64 {
    let lam = params.lambda();
    let p = params.p();
    ((lam + 1.0) * (p.ln() + x.ln()) - lam * std::f64::consts::LN_2 - ln_gamma(lam + 2.0)) / p
}

/// `θ_{λ,p}(x) = (p^{λ+1} x^{λ+1} / (2^λ Γ(λ+2)))^{1/p}`, the factor making
/// `y ↦ θ(x) e^{-xy}` a unit vector of `L^p(ℝ₊, ν_λ)`.
pub fn theta(params: &SpaceParams, x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain("theta", format!("x must be finite and > 0, got {x}")));
    }
    Ok(ln_theta(params, x).exp())
}

/// `θ(|x|)` with the value `0` on the measure-zero node `x = 0`.
pub(crate) fn theta_abs(params: &SpaceParams, x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        ln_theta(params, x.abs()).exp()
    }
}

/// `‖Φ_ξ‖_{L^p(ν_λ)}`; `+∞` for `ξ ≤ 0` where `e^{-ξy}` is not integrable.
pub fn phi_xi_norm(params: &SpaceParams, xi: f64) -> f64 {
    if xi > 0.0 {
        (-ln_theta(params, xi)).exp()
    } else {
        f64::INFINITY
    }
}

/// Fixed `(λ, p, x)` for evaluating `ψ_λ(x, ·)` and its inverse `β_λ(x, ·)`.
#[derive(Debug, Clone, Copy)]
pub struct PsiBetaContext {
    params: SpaceParams,
    x: f64,
    px: f64,
    ln_gamma_shape: f64,
}

const BETA_MAX_ITER: usize = 200;

impl PsiBetaContext {
    pub fn new(params: SpaceParams, x: f64) -> Result<Self> {
        if !(x > 0.0) || !x.is_finite() {
            return Err(domain("PsiBetaContext", format!("x must be finite and > 0, got {x}")));
        }
        if params.lambda() + 1.0 > MAX_SHAPE {
            return Err(domain("PsiBetaContext", "lambda + 1 exceeds the incomplete gamma range"));
        }
        Ok(Self {
            params,
            x,
            px: params.p() * x,
            ln_gamma_shape: ln_gamma(params.lambda() + 1.0),
        })
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn params(&self) -> &SpaceParams {
        &self.params
    }

    fn shape(&self) -> f64 {
        self.params.lambda() + 1.0
    }

    /// `ψ_λ(x,t) = -ln Q(λ+1, pxt)`.
    pub fn psi(&self, t: f64) -> Result<f64> {
        if !(t > 0.0) || !t.is_finite() {
            return Err(domain("psi", format!("t must be finite and > 0, got {t}")));
        }
        if self.params.lambda() == 0.0 {
            return Ok(self.px * t);
        }
        Ok(-ln_gamma_upper_reg(self.shape(), self.px * t)?)
    }

    /// `∂ψ/∂t = px (pxt)^λ e^{-pxt} / Γ(λ+1, pxt)`.
    pub fn dpsi_dt(&self, t: f64) -> Result<f64> {
        if !(t > 0.0) || !t.is_finite() {
            return Err(domain("dpsi_dt", format!("t must be finite and > 0, got {t}")));
        }
        let lam = self.params.lambda();
        if lam == 0.0 {
            return Ok(self.px);
        }
        let b = self.px * t;
        let ln_q = ln_gamma_upper_reg(self.shape(), b)?;
        Ok(self.px * (lam * b.ln() - b - self.ln_gamma_shape - ln_q).exp())
    }

    /// `β_λ(x, y)`: the unique `t > 0` with `ψ_λ(x, t) = y`.
    ///
    /// Safeguarded Newton on `ln ψ` as a function of `ln t`, where the map is
    /// close to linear at both ends (slope `λ+1` near 0, slope 1 at infinity).
    pub fn beta(&self, y: f64) -> Result<f64> {
        if !(y > 0.0) || !y.is_finite() {
            return Err(domain("beta", format!("y must be finite and > 0, got {y}")));
        }
        if self.params.lambda() == 0.0 {
            return Ok(y / self.px);
        }
        let target = y.ln();
        let residual = |s: f64| -> Result<(f64, f64)> {
            let t = s.exp();
            let psi = self.psi(t)?;
            let f = psi.ln() - target;
            if f.is_nan() {
                return Err(Error::NonFinite("beta residual"));
            }
            let slope = t * self.dpsi_dt(t)? / psi;
            Ok((f, slope))
        };

        let s0 = (y / self.px).ln();
        let (f0, _) = residual(s0)?;
        if f0 == 0.0 {
            return Ok(s0.exp());
        }
        let (mut lo, mut hi);
        let mut iterations = 0;
        let mut step = std::f64::consts::LN_2;
        if f0 < 0.0 {
            lo = s0;
            hi = s0 + step;
            while residual(hi)?.0 < 0.0 {
                iterations += 1;
                if iterations >= BETA_MAX_ITER {
                    return Err(self.no_convergence(iterations, lo, hi));
                }
                lo = hi;
                step *= 2.0;
                hi += step;
            }
        } else {
            hi = s0;
            lo = s0 - step;
            while residual(lo)?.0 > 0.0 {
                iterations += 1;
                if iterations >= BETA_MAX_ITER {
                    return Err(self.no_convergence(iterations, lo, hi));
                }
                hi = lo;
                step *= 2.0;
                lo -= step;
            }
        }

        let mut s = if s0 > lo && s0 < hi { s0 } else { 0.5 * (lo + hi) };
        let f_tol = 4.0 * f64::EPSILON * target.abs().max(1.0);
        while iterations < BETA_MAX_ITER {
            iterations += 1;
            let (f, slope) = residual(s)?;
            if f.abs() <= f_tol {
                return Ok(s.exp());
            }
            if f < 0.0 {
                lo = s;
            } else {
                hi = s;
            }
            let mut next = s - f / slope;
            if !(next > lo && next < hi) {
                next = 0.5 * (lo + hi);
            }
            if (next - s).abs() <= 1e-15 * s.abs().max(1.0) || hi - lo <= 1e-15 * s.abs().max(1.0)
            {
                return Ok(next.exp());
            }
            s = next;
        }
        Err(self.no_convergence(iterations, lo.exp(), hi.exp()))
    }

    fn no_convergence(&self, iterations: usize, lo: f64, hi: f64) -> Error {
        Error::NoConvergence {
            func: "beta",
            iterations,
            lo,
            hi,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(lambda: f64, p: f64) -> SpaceParams {
        SpaceParams::new(lambda, p, 2.0).unwrap()
    }

    #[test]
    fn theta_examples() {
        assert!((theta(&params(0.0, 1.0), 2.0).unwrap() - 2.0).abs() < 1e-14);
        assert!((theta(&params(0.0, 2.0), 3.0).unwrap() - 6f64.sqrt()).abs() < 1e-14);
        assert!((theta(&params(1.0, 1.0), 1.0).unwrap() - 0.25).abs() < 1e-15);
        assert!(theta(&params(0.0, 1.0), 0.0).is_err());
    }

    #[test]
    fn phi_xi_norm_at_one_matches_display() {
        for &(lam, p) in &[(0.0, 1.0), (1.0, 2.0), (-0.5, 3.0), (2.5, 1.5)] {
            let pr = params(lam, p);
            let expected = (2f64.powf(lam) * libm::tgamma(lam + 2.0) / p.powf(lam + 1.0)).powf(1.0 / p);
            assert!((phi_xi_norm(&pr, 1.0) - expected).abs() < 1e-14 * expected);
        }
    }

    #[test]
    fn phi_xi_norm_infinite_off_the_positive_axis() {
        assert_eq!(phi_xi_norm(&params(0.0, 2.0), -3.0), f64::INFINITY);
        assert_eq!(phi_xi_norm(&params(0.0, 2.0), 0.0), f64::INFINITY);
    }

    #[test]
    fn psi_beta_lambda_zero_closed_forms() {
        let ctx = PsiBetaContext::new(params(0.0, 2.0), 3.0).unwrap();
        assert_eq!(ctx.psi(1.0).unwrap(), 6.0);
        assert_eq!(ctx.beta(6.0).unwrap(), 1.0);
    }

    #[test]
    fn psi_beta_lambda_one_golden() {
        let ctx = PsiBetaContext::new(params(1.0, 1.0), 1.0).unwrap();
        let golden = 0.306_852_819_440_054_7;
        assert!((ctx.psi(1.0).unwrap() - golden).abs() < 1e-15);
        assert!((ctx.beta(golden).unwrap() - 1.0).abs() < 1e-13);
    }

    #[test]
    fn dpsi_matches_finite_difference() {
        let ctx = PsiBetaContext::new(params(1.5, 2.0), 0.7).unwrap();
        for &t in &[0.05, 0.5, 3.0] {
            let h = 1e-6 * t;
            let fd = (ctx.psi(t + h).unwrap() - ctx.psi(t - h).unwrap()) / (2.0 * h);
            let d = ctx.dpsi_dt(t).unwrap();
            assert!(((fd - d) / d).abs() < 1e-7, "t={t}: {fd} vs {d}");
        }
    }

    #[test]
    fn psi_is_strictly_increasing() {
        let ctx = PsiBetaContext::new(params(-0.5, 1.0), 2.0).unwrap();
        let ts: Vec<f64> = (0..200).map(|k| 1e-4 * 1.08f64.powi(k)).collect();
        let vals: Vec<f64> = ts.iter().map(|&t| ctx.psi(t).unwrap()).collect();
        assert!(vals.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn beta_handles_extreme_targets() {
        let ctx = PsiBetaContext::new(params(2.5, 3.0), 1e-3).unwrap();
        for &y in &[1e-25, 1e-8, 1.0, 1e3, 1e5] {
            let t = ctx.beta(y).unwrap();
            let back = ctx.psi(t).unwrap();
            assert!(((back - y) / y).abs() < 1e-12, "y={y}: psi(beta)={back}");
        }
    }

    #[test]
    fn domain_errors() {
        assert!(PsiBetaContext::new(params(0.0, 1.0), 0.0).is_err());
        let ctx = PsiBetaContext::new(params(1.0, 1.0), 1.0).unwrap();
        assert!(ctx.psi(0.0).is_err());
        assert!(ctx.beta(-1.0).is_err());
    }
}
