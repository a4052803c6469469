//! Weighted mixed norms on the grid and `L^q(ℝ₊)` norms of boundary densities.
//!
//! Vertical integrals `∫₀^Y g(y) w(y) dy` (with `w = ν_λ` or `w ≡ 1`) use a
//! product rule: `g` is replaced by its piecewise-cubic Lagrange interpolant
//! through the four nearest nodes and integrated exactly against `w`. On
//! `[0, y₁]` the interpolant is the extrapolation of the first four nodes and
//! the moments of `y^λ` are taken in closed form, so the `y^λ` singularity
//! at the origin costs nothing for `λ ∈ (-1, 0)`.

use crate::error::{Error, Result};
use crate::grid::{BoundaryDensity, GridFunction, HalfPlaneGrid};
use crate::space::SpaceParams;
use crate::specfun::quadrature::{gauss_legendre, QuadratureRule};
use std::sync::OnceLock;

/// Weights `W_k` with `Σ_k W_k g(y_k) ≈ ∫₀^Y g(y) w(y) dy`.
#[derive(Debug, Clone, PartialEq)]
pub struct VerticalRule {
    weights: Vec<f64>,
}

const STENCIL: usize = 4;

fn legendre16() -> &'static QuadratureRule {
    static RULE: OnceLock<QuadratureRule> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(16).expect("16-point rule"))
}

impl VerticalRule {
    /// Rule for `∫ g dν_λ`.
    pub fn weighted(grid: &HalfPlaneGrid, lambda: f64) -> Self {
        Self::build(grid.y_nodes(), lambda)
    }

    /// Rule for `∫ g dy`.
    pub fn lebesgue(grid: &HalfPlaneGrid) -> Self {
        Self::build(grid.y_nodes(), 0.0)
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn apply<I>(&self, values: I) -> f64
    where
        I: IntoIterator<Item = f64>,
    {
        self.weights.iter().zip(values).map(|(w, v)| w * v).sum()
    }

    fn build(y: &[f64], lambda: f64) -> Self {
        let n = y.len();
        assert!(n >= STENCIL, "vertical rule needs at least {STENCIL} nodes");
        let mut weights = vec![0.0; n];
        let c = (lambda + 1.0) * 2f64.powf(lambda);

        // [0, y_0]: substitute y = y_0 s; basis polynomials in s are
        // integrated against s^λ exactly.
        let y0 = y[0];
        let scaled: Vec<f64> = y[..STENCIL].iter().map(|v| v / y0).collect();
        for i in 0..STENCIL {
            let coeffs = lagrange_coefficients(&scaled, i);
            let moment: f64 = coeffs
                .iter()
                .enumerate()
                .map(|(k, a)| a / (lambda + 1.0 + k as f64))
                .sum();
            weights[i] += c * y0.powf(lambda + 1.0) * moment;
        }

        let gl = legendre16();
        for j in 1..n {
            let (a, b) = (y[j - 1], y[j]);
            let s = j.saturating_sub(2).min(n - STENCIL);
            let stencil = &y[s..s + STENCIL];
            let half = 0.5 * (b - a);
            let mid = 0.5 * (a + b);
            for (&t, &w) in gl.nodes.iter().zip(&gl.weights) {
                let yy = mid + half * t;
                let dens = if lambda == 0.0 { 1.0 } else { c * yy.powf(lambda) };
                for i in 0..STENCIL {
                    weights[s + i] += half * w * dens * lagrange_basis(stencil, i, yy);
                }
            }
        }
        Self { weights }
    }
}

fn lagrange_basis(nodes: &[f64], i: usize, y: f64) -> f64 {
    nodes
        .iter()
        .enumerate()
        .filter(|&(m, _)| m != i)
        .map(|(_, &ym)| (y - ym) / (nodes[i] - ym))
        .product()
}

/// Monomial coefficients (ascending) of the `i`-th Lagrange basis polynomial.
fn lagrange_coefficients(nodes: &[f64], i: usize) -> Vec<f64> {
    let mut poly = vec![1.0];
    let mut denom = 1.0;
    for (m, &ym) in nodes.iter().enumerate() {
        if m == i {
            continue;
        }
        let mut next = vec![0.0; poly.len() + 1];
        for (k, &a) in poly.iter().enumerate() {
            next[k] -= a * ym;
            next[k + 1] += a;
        }
        poly = next;
        denom *= nodes[i] - ym;
    }
    poly.iter().map(|a| a / denom).collect()
}

/// `‖f‖_{L^{q,p}_λ} = ( Σ_x w_x ( Σ_y W_y |f(x,y)|^p )^{q/p} )^{1/q}` with
/// `W` the `ν_λ`-weighted vertical rule.
///
/// Applied to a Fourier-side function this is the `ℒ^{q,p}_λ` norm of its
/// physical preimage; applied to any other representation it is the raw
/// mixed norm of the samples.
pub fn mixed_norm(f: &GridFunction, params: &SpaceParams) -> Result<f64> {
    let rule = VerticalRule::weighted(f.grid(), params.lambda());
    mixed_norm_with(f, params, &rule)
}

/// [`mixed_norm`] with a caller-supplied vertical rule.
pub fn mixed_norm_with(f: &GridFunction, params: &SpaceParams, rule: &VerticalRule) -> Result<f64> {
    if rule.weights.len() != f.grid().n_y() {
        return Err(Error::GridMismatch("vertical rule does not match the grid".into()));
    }
    let (p, q) = (params.p(), params.q());
    let mut total = 0.0;
    for (row, &wx) in f.values().rows().into_iter().zip(f.grid().x_weights()) {
        let inner = rule.apply(row.iter().map(|v| pow_abs(v.norm(), p)));
        if inner.is_nan() {
            return Err(Error::NonFinite("mixed_norm"));
        }
        total += wx * pow_abs(inner.max(0.0), q / p);
    }
    if !total.is_finite() {
        return Err(Error::NonFinite("mixed_norm"));
    }
    Ok(pow_abs(total, 1.0 / q))
}

#[inline]
fn pow_abs(v: f64, e: f64) -> f64 {
    if e == 1.0 {
        v
    } else if e == 2.0 {
        v * v
    } else {
        v.powf(e)
    }
}

/// Trapezoid approximation of `(∫ |φ|^q dξ)^{1/q}` over the density's nodes.
pub fn lq_norm(phi: &BoundaryDensity, q: f64) -> Result<f64> {
    if !(q >= 1.0) || !q.is_finite() {
        return Err(Error::InvalidArgument(format!("q must be in [1, inf), got {q}")));
    }
    let xi = phi.xi_nodes();
    let v: Vec<f64> = phi.values().iter().map(|z| pow_abs(z.norm(), q)).collect();
    let sum: f64 = xi
        .windows(2)
        .zip(v.windows(2))
        .map(|(x, f)| 0.5 * (x[1] - x[0]) * (f[0] + f[1]))
        .sum();
    if !sum.is_finite() {
        return Err(Error::NonFinite("lq_norm"));
    }
    Ok(pow_abs(sum, 1.0 / q))
}
