//! `U₂` and its inverse: the change of variable `y ↦ β(|ξ|, y)` that carries
//! every Fourier-side column `θ(ξ) f(ξ) e^{-ξy}` to `f(ξ) e^{-y/p}`.
//!
//! Values at transported points come from linear interpolation in `y` after
//! factoring out the column's model exponential (`e^{-|ξ|y}` on the Fourier
//! side, `e^{-y/p}` on the `U₂` side). For analytic elements the factored
//! column is constant, so the interpolation is exact and the transported
//! points beyond `y_max` extrapolate along the same exponential.

use super::fourier::expect_repr;
use super::Diagnostics;
use crate::error::Result;
use crate::grid::{GridFunction, Repr};
use crate::space::SpaceParams;
use crate::specfun::{theta_abs, PsiBetaContext};
use ndarray::Array2;
use num_complex::Complex64;
use rayon::prelude::*;

/// `(U₂g)(ξ,y) = θ(|ξ|)⁻¹ e^{-y/p + |ξ|β} g(ξ, β)`, `β = β_λ(|ξ|, y)`.
pub fn u2_forward(g: &GridFunction, params: &SpaceParams) -> Result<(GridFunction, Diagnostics)> {
    expect_repr(g, Repr::FourierSide, "u2_forward")?;
    let p = params.p();
    let rows = transport(g, |xi, y, column| {
        let ctx = PsiBetaContext::new(*params, xi)?;
        let t = ctx.beta(y)?;
        let (v, clamped) = column.at(t, xi);
        let scale = (-y / p + xi * t).exp() / theta_abs(params, xi);
        Ok((v * scale, clamped))
    })?;
    Ok(finish(g, rows, Repr::U2Side))
}

/// `(U₂⁻¹h)(ξ,y) = θ(|ξ|) e^{ψ/p - |ξ|y} h(ξ, ψ)`, `ψ = ψ_λ(|ξ|, y)`.
pub fn u2_inverse(h: &GridFunction, params: &SpaceParams) -> Result<(GridFunction, Diagnostics)> {
    expect_repr(h, Repr::U2Side, "u2_inverse")?;
    let p = params.p();
    let rows = transport(h, |xi, y, column| {
        let ctx = PsiBetaContext::new(*params, xi)?;
        let s = ctx.psi(y)?;
        let (v, clamped) = column.at(s, 1.0 / p);
        let scale = theta_abs(params, xi) * (s / p - xi * y).exp();
        Ok((v * scale, clamped))
    })?;
    Ok(finish(h, rows, Repr::FourierSide))
}

type Row = (Vec<Complex64>, usize);

fn transport<F>(f: &GridFunction, point: F) -> Result<Vec<Row>>
where
    F: Fn(f64, f64, &Column) -> Result<(Complex64, bool)> + Sync,
{
    let grid = f.grid();
    let n_x = grid.n_x();
    let analytic = f.is_analytic();
    (0..n_x)
        .into_par_iter()
        .map(|i| {
            let xi = grid.x_nodes()[i].abs();
            let mut out = vec![Complex64::new(0.0, 0.0); grid.n_y()];
            if xi == 0.0 {
                return Ok((out, 0));
            }
            let values = f.values().row(i);
            let column = Column {
                y: grid.y_nodes(),
                v: values.as_slice().expect("standard layout"),
                analytic,
            };
            let mut clamped = 0;
            for (slot, &y) in out.iter_mut().zip(grid.y_nodes()) {
                let (v, c) = point(xi, y, &column)?;
                *slot = v;
                clamped += c as usize;
            }
            Ok((out, clamped))
        })
        .collect()
}

fn finish(f: &GridFunction, rows: Vec<Row>, repr: Repr) -> (GridFunction, Diagnostics) {
    let grid = f.grid().clone();
    let (n_x, n_y) = (grid.n_x(), grid.n_y());
    let clamped_points = rows.iter().map(|r| r.1).sum();
    let mut flat = Vec::with_capacity(n_x * n_y);
    for (row, _) in rows {
        flat.extend(row);
    }
    let values = Array2::from_shape_vec((n_x, n_y), flat).expect("row lengths match the grid");
    let out = GridFunction::from_parts(grid, values, repr, f.is_analytic());
    (
        out,
        Diagnostics {
            clamped_points,
            ..Diagnostics::default()
        },
    )
}

struct Column<'a> {
    y: &'a [f64],
    v: &'a [Complex64],
    analytic: bool,
}

impl Column<'_> {
    /// Value at `t` with `e^{-rate·y}` factored out of the interpolation.
    /// The flag reports a point beyond `y_max` that had to be set to zero.
    fn at(&self, t: f64, rate: f64) -> (Complex64, bool) {
        let n = self.y.len();
        let last = self.y[n - 1];
        if t > last {
            if self.analytic {
                return (self.v[n - 1] * (-rate * (t - last)).exp(), false);
            }
            return (Complex64::new(0.0, 0.0), true);
        }
        // below y_0 the first segment is extended
        let k = self.y.partition_point(|&yk| yk < t).clamp(1, n - 1);
        let (y0, y1) = (self.y[k - 1], self.y[k]);
        let s = (t - y0) / (y1 - y0);
        let v = self.v[k - 1] * ((1.0 - s) * (-rate * (t - y0)).exp())
            + self.v[k] * (s * (rate * (y1 - t)).exp());
        (v, false)
    }
}
