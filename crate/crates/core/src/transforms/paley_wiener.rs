//! The Paley–Wiener pair between `L^q(ℝ₊)` and `A^{q,p}_λ(Π)`:
//!
//! ```text
//! (R_λ⁻¹φ)(z) = 2^{-1/2} ∫₀^∞ θ(ξ) φ(ξ) e^{iξz} dξ
//! (R_λ f)(ξ)  = θ(ξ)^{p-1} ∫₀^∞ e^{-(p-1)ξη} (U₁f)(ξ, η) dν_λ(η)
//! ```
//!
//! The second line is the area integral against `e^{-iξ ω̄}` with the inner
//! `x` integral recognised as `π√2 · U₁`; the exponent carries `η = Im ω`.

use super::fourier::{expect_repr, u1_forward, u1_inverse};
use super::profile::TAIL_WARNING;
use super::Diagnostics;
use crate::error::{Error, Result};
use crate::grid::{BoundaryDensity, GridFunction, HalfPlaneGrid, Repr};
use crate::norm::VerticalRule;
use crate::space::SpaceParams;
use crate::specfun::theta;
use ndarray::Array2;
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::FRAC_1_SQRT_2;

/// `R_λ⁻¹φ` sampled on the physical grid, by the trapezoid rule over φ's nodes.
///
/// When φ lives on the positive frequencies paired with `grid` the sum is
/// evaluated with one inverse FFT per `y` row; otherwise directly.
pub fn pw_synthesize(phi: &BoundaryDensity, params: &SpaceParams, grid: &HalfPlaneGrid) -> Result<GridFunction> {
    let xi = phi.xi_nodes();
    let weights = trapezoid(xi);
    let amp: Vec<Complex64> = xi
        .iter()
        .zip(phi.values())
        .zip(&weights)
        .map(|((&x, v), w)| Ok(v * (w * theta(params, x)?)))
        .collect::<Result<_>>()?;

    let dual = grid.dual();
    let f = if on_lattice(xi, &dual) {
        let dxi = dual.x_step();
        let offset = dual.positive_x_range().start;
        let values = Array2::from_shape_fn((dual.n_x(), dual.n_y()), |(i, k)| {
            if i < offset {
                return Complex64::new(0.0, 0.0);
            }
            let m = i - offset;
            amp[m] * ((-xi[m] * dual.y_nodes()[k]).exp() / dxi)
        });
        let g = GridFunction::from_parts(dual, values, Repr::FourierSide, true);
        u1_inverse(&g)?
    } else {
        let rows: Vec<Vec<Complex64>> = grid
            .x_nodes()
            .par_iter()
            .map(|&x| {
                let phase: Vec<Complex64> = xi
                    .iter()
                    .zip(&amp)
                    .map(|(&s, a)| a * Complex64::from_polar(FRAC_1_SQRT_2, s * x))
                    .collect();
                grid.y_nodes()
                    .iter()
                    .map(|&y| xi.iter().zip(&phase).map(|(&s, a)| a * (-s * y).exp()).sum())
                    .collect()
            })
            .collect();
        let values = Array2::from_shape_fn((grid.n_x(), grid.n_y()), |(i, k)| rows[i][k]);
        GridFunction::from_parts(grid.clone(), values, Repr::Physical, true)
    };
    if !f.values().iter().all(|v| v.re.is_finite() && v.im.is_finite()) {
        return Err(Error::NonFinite("pw_synthesize"));
    }
    Ok(f)
}

/// `R_λ f` at the positive frequencies of `f`'s grid.
pub fn pw_analyze(f: &GridFunction, params: &SpaceParams) -> Result<(BoundaryDensity, Diagnostics)> {
    expect_repr(f, Repr::Physical, "pw_analyze")?;
    let g = u1_forward(f)?;
    let grid = g.grid();
    let p = params.p();
    let rule = VerticalRule::weighted(grid, params.lambda());
    let last = grid.n_y() - 1;

    let per_node: Vec<(Complex64, f64, f64)> = grid
        .positive_x_range()
        .into_par_iter()
        .map(|i| {
            let xi = grid.x_nodes()[i];
            let row = g.values().row(i);
            let (mut acc, mut peak) = (Complex64::new(0.0, 0.0), 0.0f64);
            for ((v, w), &y) in row.iter().zip(rule.weights()).zip(grid.y_nodes()) {
                let k = (-(p - 1.0) * xi * y).exp();
                acc += v * (w * k);
                peak = peak.max(v.norm() * k);
            }
            let tail = row[last].norm() * (-(p - 1.0) * xi * grid.y_nodes()[last]).exp();
            let th = theta(params, xi)?;
            Ok((acc * th.powf(p - 1.0), peak, tail))
        })
        .collect::<Result<_>>()?;

    let peak = per_node.iter().map(|r| r.1).fold(0.0, f64::max);
    let tail = per_node.iter().map(|r| r.2).fold(0.0, f64::max);
    let tail_ratio = if peak > 0.0 { tail / peak } else { 0.0 };
    let mut diagnostics = Diagnostics {
        tail_ratio,
        ..Diagnostics::default()
    };
    if tail_ratio > TAIL_WARNING {
        diagnostics.warnings.push(format!(
            "integrand at y_max is {tail_ratio:.3e} of its peak; the y range may be too short"
        ));
    }
    let values = per_node.into_iter().map(|r| r.0).collect();
    Ok((BoundaryDensity::new(grid.positive_x_nodes().to_vec(), values)?, diagnostics))
}

fn trapezoid(x: &[f64]) -> Vec<f64> {
    let n = x.len();
    let mut w = vec![0.0; n];
    for k in 0..n.saturating_sub(1) {
        let half = 0.5 * (x[k + 1] - x[k]);
        w[k] += half;
        w[k + 1] += half;
    }
    w
}

fn on_lattice(xi: &[f64], dual: &HalfPlaneGrid) -> bool {
    let nodes = dual.positive_x_nodes();
    let tol = 1e-12 * dual.x_step();
    xi.len() == nodes.len() && xi.iter().zip(nodes).all(|(a, b)| (a - b).abs() <= tol)
}
