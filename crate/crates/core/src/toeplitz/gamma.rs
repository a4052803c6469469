//! The spectral function
//!
//! ```text
//! γ_{a,λ}(x) = x^{λ+1}/Γ(λ+1) ∫₀^∞ a(t/p) e^{-tx} t^λ dt
//!            = 1/Γ(λ+1) ∫₀^∞ a(u/(px)) u^λ e^{-u} du,
//! ```
//!
//! i.e. the mean of `a` under the Gamma(λ+1, rate px) law.

use super::symbol::VerticalSymbol;
use crate::error::{domain, Result};
use crate::space::SpaceParams;
use crate::specfun::quadrature::{gauss_laguerre, gauss_legendre, QuadratureRule};
use crate::specfun::{gamma_lower_reg, gamma_upper_reg, ln_gamma, ln_gamma_upper_reg};
use rayon::prelude::*;

/// Samples of `γ_{a,λ}` on a set of positive nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralFunction {
    pub params: SpaceParams,
    pub x_nodes: Vec<f64>,
    pub values: Vec<f64>,
    /// Whether the values came from a closed form rather than quadrature.
    pub closed_form: bool,
}

/// `γ_{a,λ}(x)`, in closed form for every symbol form (sampled symbols are
/// integrated exactly piece by piece, with the exponential tail in closed
/// form).
pub fn gamma_of_symbol(a: &VerticalSymbol, params: &SpaceParams, x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain("gamma_of_symbol", format!("x must be finite and > 0, got {x}")));
    }
    a.check_integrability(params)?;
    let shape = params.lambda() + 1.0;
    let px = params.p() * x;
    let v = match a {
        VerticalSymbol::Const(c) => *c,
        VerticalSymbol::Exp { sigma, c } => c * (-shape * (sigma / px).ln_1p()).exp(),
        VerticalSymbol::Indicator { a, b } => gamma_mass(shape, px * a, px * b)?,
        VerticalSymbol::Power(s) => (ln_gamma(shape + s) - ln_gamma(shape) - s * px.ln()).exp(),
        VerticalSymbol::PolyExp { coeffs, sigma } => {
            let base = -shape * (sigma / px).ln_1p();
            let rate = px + sigma;
            coeffs
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0.0)
                .map(|(k, &c)| {
                    let k = k as f64;
                    c * (base + ln_gamma(shape + k) - ln_gamma(shape) - k * rate.ln()).exp()
                })
                .sum()
        }
        VerticalSymbol::Sampled { y_nodes, values, tail } => sampled_gamma(y_nodes, values, *tail, shape, px)?,
    };
    if !v.is_finite() {
        return Err(crate::Error::NonFinite("gamma_of_symbol"));
    }
    Ok(v)
}

/// `γ` on many nodes, in parallel.
pub fn spectral_function(a: &VerticalSymbol, params: &SpaceParams, x_nodes: &[f64]) -> Result<SpectralFunction> {
    let values = x_nodes
        .par_iter()
        .map(|&x| gamma_of_symbol(a, params, x))
        .collect::<Result<Vec<_>>>()?;
    Ok(SpectralFunction {
        params: *params,
        x_nodes: x_nodes.to_vec(),
        values,
        closed_form: true,
    })
}

/// `P(s, hi) - P(s, lo)` evaluated on the side of the distribution where it
/// does not cancel.
fn gamma_mass(shape: f64, lo: f64, hi: f64) -> Result<f64> {
    if hi <= lo {
        return Ok(0.0);
    }
    if lo >= shape {
        let q_hi = if hi.is_finite() { gamma_upper_reg(shape, hi)? } else { 0.0 };
        Ok(gamma_upper_reg(shape, lo)? - q_hi)
    } else {
        let p_hi = if hi.is_finite() { gamma_lower_reg(shape, hi)? } else { 1.0 };
        Ok(p_hi - gamma_lower_reg(shape, lo)?)
    }
}

fn sampled_gamma(y: &[f64], v: &[f64], tail: f64, shape: f64, px: f64) -> Result<f64> {
    let n = y.len();
    // constant extension below the first node
    let mut total = v[0] * gamma_mass(shape, 0.0, px * y[0])?;
    for k in 0..n - 1 {
        let (y0, y1) = (y[k], y[k + 1]);
        let h = y1 - y0;
        if h < 0.1 * y0 {
            // short segment far from the origin: the closed form below would
            // cancel, while the density is smooth here
            total += narrow_segment(y0, y1, v[k], v[k + 1], shape, px)?;
            continue;
        }
        let slope = (v[k + 1] - v[k]) / h;
        // ∫ (v_k + β(y - y_k)) dG = v_k ΔP(s) + β (s/(px) ΔP(s+1) - y_k ΔP(s))
        let m0 = gamma_mass(shape, px * y0, px * y1)?;
        let m1 = if slope != 0.0 {
            shape / px * gamma_mass(shape + 1.0, px * y0, px * y1)? - y0 * m0
        } else {
            0.0
        };
        total += v[k] * m0 + slope * m1;
    }
    let last = v[n - 1];
    if last != 0.0 {
        let yn = y[n - 1];
        let ln_tail = tail * yn - shape * (tail / px).ln_1p() + ln_gamma_upper_reg(shape, (px + tail) * yn)?;
        total += last * ln_tail.exp();
    }
    Ok(total)
}

fn narrow_segment(y0: f64, y1: f64, v0: f64, v1: f64, shape: f64, px: f64) -> Result<f64> {
    let rule = gauss_legendre(16)?;
    let (mid, half) = (0.5 * (y0 + y1), 0.5 * (y1 - y0));
    let ln_c = shape * px.ln() - ln_gamma(shape);
    Ok(rule
        .nodes
        .iter()
        .zip(&rule.weights)
        .map(|(&t, &w)| {
            let yy = mid + half * t;
            let a = v0 + (v1 - v0) * (1.0 + t) * 0.5;
            w * half * a * (ln_c + (shape - 1.0) * yy.ln() - px * yy).exp()
        })
        .sum())
}

/// The quadrature path: a fixed generalized Gauss–Laguerre rule with weight
/// `u^λ e^{-u}` applied after the substitution `u = p x t`. Independent of the
/// closed forms and used to cross-check them.
#[derive(Debug, Clone)]
pub struct LaguerreGamma {
    rule: QuadratureRule,
    ln_norm: f64,
    lambda: f64,
}

pub const LAGUERRE_POINTS: usize = 64;

impl LaguerreGamma {
    pub fn new(lambda: f64) -> Result<Self> {
        Ok(Self {
            rule: gauss_laguerre(LAGUERRE_POINTS, lambda)?,
            ln_norm: ln_gamma(lambda + 1.0),
            lambda,
        })
    }

    pub fn eval(&self, a: &VerticalSymbol, params: &SpaceParams, x: f64) -> Result<f64> {
        if params.lambda() != self.lambda {
            return Err(crate::Error::InvalidArgument(format!(
                "rule built for lambda={}, called with lambda={}",
                self.lambda,
                params.lambda()
            )));
        }
        if !(x > 0.0) || !x.is_finite() {
            return Err(domain("gamma_quadrature", format!("x must be finite and > 0, got {x}")));
        }
        a.check_integrability(params)?;
        let px = params.p() * x;
        let sum: f64 = self
            .rule
            .nodes
            .iter()
            .zip(&self.rule.weights)
            .map(|(&u, &w)| w * a.eval(u / px))
            .sum();
        Ok(sum * (-self.ln_norm).exp())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sweep() -> Vec<f64> {
        (0..=60).map(|k| 10f64.powf(-3.0 + 0.1 * k as f64)).collect()
    }

    fn params(lambda: f64, p: f64) -> SpaceParams {
        SpaceParams::new(lambda, p, 2.0).unwrap()
    }

    #[test]
    fn constant_symbol_gives_constant() {
        for &lam in &[-0.5, 0.0, 1.0, 2.5] {
            let pr = params(lam, 1.5);
            let quad = LaguerreGamma::new(lam).unwrap();
            for x in sweep() {
                assert_eq!(gamma_of_symbol(&VerticalSymbol::Const(1.0), &pr, x).unwrap(), 1.0);
                let q = quad.eval(&VerticalSymbol::Const(1.0), &pr, x).unwrap();
                assert!((q - 1.0).abs() < 1e-12, "lam={lam}: {q}");
            }
        }
    }

    #[test]
    fn exponential_matches_quadrature() {
        for &lam in &[-0.5, 0.0, 1.0, 2.5] {
            let pr = params(lam, 2.0);
            let quad = LaguerreGamma::new(lam).unwrap();
            let a = VerticalSymbol::Exp { sigma: 1.0, c: 1.0 };
            for x in [0.3, 1.0, 4.0, 30.0] {
                let closed = gamma_of_symbol(&a, &pr, x).unwrap();
                let want = (2.0 * x / (2.0 * x + 1.0)).powf(lam + 1.0);
                assert!((closed - want).abs() < 1e-14);
                let q = quad.eval(&a, &pr, x).unwrap();
                assert!((q - want).abs() < 1e-8, "lam={lam} x={x}: {q} vs {want}");
            }
        }
    }

    #[test]
    fn indicator_and_power_closed_forms() {
        let pr = params(1.0, 2.0);
        let ind = VerticalSymbol::Indicator { a: 0.0, b: 0.7 };
        let pw = VerticalSymbol::Power(1.0);
        for x in sweep() {
            let g = gamma_of_symbol(&ind, &pr, x).unwrap();
            let q = gamma_upper_reg(2.0, 2.0 * 0.7 * x).unwrap();
            assert!((g + q - 1.0).abs() < 1e-14);
            let g = gamma_of_symbol(&pw, &pr, x).unwrap();
            assert!((g - 2.0 / (2.0 * x)).abs() < 1e-13 * g);
        }
    }

    #[test]
    fn poly_exp_reduces_to_exp_and_power() {
        let pr = params(0.5, 3.0);
        let a = VerticalSymbol::PolyExp { coeffs: vec![2.0], sigma: 0.7 };
        let b = VerticalSymbol::Exp { sigma: 0.7, c: 2.0 };
        let c = VerticalSymbol::PolyExp { coeffs: vec![0.0, 1.0], sigma: 0.0 };
        for x in sweep() {
            let (ga, gb) = (gamma_of_symbol(&a, &pr, x).unwrap(), gamma_of_symbol(&b, &pr, x).unwrap());
            assert!((ga - gb).abs() < 1e-13 * gb.abs().max(1e-300));
            let gc = gamma_of_symbol(&c, &pr, x).unwrap();
            let gp = gamma_of_symbol(&VerticalSymbol::Power(1.0), &pr, x).unwrap();
            assert!((gc - gp).abs() < 1e-12 * gp);
        }
    }

    #[test]
    fn sampled_symbol_reproduces_piecewise_linear_and_tail() {
        // a(y) = e^{-y} sampled finely: linear pieces converge at second order
        let pr = params(1.0, 2.0);
        let ys: Vec<f64> = (0..=2000).map(|k| k as f64 * 0.005).collect();
        let vs: Vec<f64> = ys.iter().map(|y| (-y).exp()).collect();
        let a = VerticalSymbol::sampled(ys, vs, 1.0).unwrap();
        let exact = VerticalSymbol::Exp { sigma: 1.0, c: 1.0 };
        for x in [0.01, 0.1, 1.0, 10.0] {
            let g = gamma_of_symbol(&a, &pr, x).unwrap();
            let want = gamma_of_symbol(&exact, &pr, x).unwrap();
            assert!((g - want).abs() < 1e-5 * want, "x={x}: {g} vs {want}");
        }
        // a step is integrated exactly
        let step = VerticalSymbol::sampled(vec![0.0, 1.0, 1.0 + 1e-12], vec![1.0, 1.0, 0.0], 0.0).unwrap();
        let ind = VerticalSymbol::Indicator { a: 0.0, b: 1.0 };
        for x in [0.01, 1.0, 10.0] {
            let d = gamma_of_symbol(&step, &pr, x).unwrap() - gamma_of_symbol(&ind, &pr, x).unwrap();
            assert!(d.abs() < 1e-10);
        }
    }

    #[test]
    fn bounded_nonnegative_symbols_give_bounded_gamma() {
        let pr = params(-0.5, 1.0);
        let a = VerticalSymbol::PolyExp { coeffs: vec![0.5, 1.0], sigma: 2.0 };
        // 0 <= a <= 1/2, attained at y = 0
        for x in sweep() {
            let g = gamma_of_symbol(&a, &pr, x).unwrap();
            assert!((0.0..=0.5 + 1e-15).contains(&g));
        }
    }

    #[test]
    fn rejects_bad_input() {
        let pr = params(0.0, 2.0);
        assert!(gamma_of_symbol(&VerticalSymbol::Const(1.0), &pr, 0.0).is_err());
        assert!(gamma_of_symbol(&VerticalSymbol::Power(-1.0), &pr, 1.0).is_err());
    }
}
