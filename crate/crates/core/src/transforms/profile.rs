//! The one-dimensional model space spanned by `ℓ_{0,p}(y) = e^{-y/p}`, the
//! embedding `R₀`, its left inverse and the projection `B_p = R₀R₀⁻¹`.

use super::fourier::expect_repr;
use super::Diagnostics;
use crate::error::{Error, Result};
use crate::grid::{BoundaryDensity, GridFunction, HalfPlaneGrid, Repr};
use crate::norm::VerticalRule;
use crate::space::SpaceParams;
use ndarray::Array2;
use num_complex::Complex64;

/// Tail ratio above which a truncation warning is issued.
pub const TAIL_WARNING: f64 = 1e-12;

/// `ℓ_{0,p}` sampled on a set of `y` nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct GroundStateProfile {
    p: f64,
    values: Vec<f64>,
}

impl GroundStateProfile {
    pub fn new(p: f64, y_nodes: &[f64]) -> Self {
        Self {
            p,
            values: y_nodes.iter().map(|y| (-y / p).exp()).collect(),
        }
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// `(R₀f)(x,y) = χ₊(x) f(x) e^{-y/p}` on `grid` (a frequency grid); `f` is
/// read off by linear interpolation at the positive nodes.
pub fn r0_embed(f: &BoundaryDensity, params: &SpaceParams, grid: &HalfPlaneGrid) -> GridFunction {
    let profile = GroundStateProfile::new(params.p(), grid.y_nodes());
    let values = Array2::from_shape_fn((grid.n_x(), grid.n_y()), |(i, k)| {
        let x = grid.x_nodes()[i];
        if x > 0.0 {
            f.interpolate(x) * profile.values[k]
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    GridFunction::from_parts(grid.clone(), values, Repr::U2Side, true)
}

/// `(R₀⁻¹g)(x) = χ₊(x) ∫ g(x,η) ℓ_{0,p}^{p-1}(η) dη` at the positive nodes.
///
/// The quadrature is divided by its own value on `ℓ_{0,p}^p = e^{-η}` (which
/// is `1 - e^{-Y}` in exact arithmetic) so that `R₀⁻¹R₀ = I` holds to
/// rounding on the grid.
pub fn r0_left_inverse(g: &GridFunction, params: &SpaceParams) -> Result<(BoundaryDensity, Diagnostics)> {
    expect_repr(g, Repr::U2Side, "r0_left_inverse")?;
    let grid = g.grid();
    let p = params.p();
    let rule = VerticalRule::lebesgue(grid);
    let kernel: Vec<f64> = grid.y_nodes().iter().map(|y| (-y * (p - 1.0) / p).exp()).collect();
    let norm = rule.apply(grid.y_nodes().iter().map(|y| (-y).exp()));

    let mut values = Vec::with_capacity(grid.positive_x_range().len());
    let (mut peak, mut tail): (f64, f64) = (0.0, 0.0);
    let last = grid.n_y() - 1;
    for i in grid.positive_x_range() {
        let row = g.values().row(i);
        let mut acc = Complex64::new(0.0, 0.0);
        for ((v, w), k) in row.iter().zip(rule.weights()).zip(&kernel) {
            acc += v * (w * k);
            peak = peak.max(v.norm() * k);
        }
        tail = tail.max(row[last].norm() * kernel[last]);
        values.push(acc / norm);
    }
    if values.iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
        return Err(Error::NonFinite("r0_left_inverse"));
    }
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
    let density = BoundaryDensity::new(grid.positive_x_nodes().to_vec(), values)?;
    Ok((density, diagnostics))
}

/// `B_p = R₀R₀⁻¹`, the projection onto `χ₊ ⊗ span{ℓ_{0,p}}`.
pub fn bp_project(g: &GridFunction, params: &SpaceParams) -> Result<(GridFunction, Diagnostics)> {
    let (f, diagnostics) = r0_left_inverse(g, params)?;
    Ok((r0_embed(&f, params, g.grid()), diagnostics))
}
