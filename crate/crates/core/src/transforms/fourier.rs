//! `U₁ = π^{-1/2} F_{x→ξ}` on uniform grids.
//!
//! With `x_j = (j - N/2)h` and `ξ_m = (m - N/2)Δξ`, `hΔξ = 2π/N`, the kernel
//! factors as `e^{-iξ_m x_j} = (-1)^{N/2} (-1)^m (-1)^j e^{-2πimj/N}`, so
//!
//! ```text
//! (U₁f)_m = h/(π√2) · (-1)^{N/2} (-1)^m · DFT[(-1)^j f_j]_m
//! (U₁⁻¹g)_j = Δξ/√2 · (-1)^{N/2} (-1)^j · IDFT[(-1)^m g_m]_j
//! ```
//!
//! and the two constants multiply to exactly `1/N`, the unnormalized DFT pair.

use crate::error::{Error, Result};
use crate::grid::{GridFunction, HalfPlaneGrid, Repr};
use ndarray::Array2;
use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::{FftDirection, FftPlanner};
use std::f64::consts::{PI, SQRT_2};

/// Physical → Fourier side. The output lives on `f.grid().dual()`.
pub fn u1_forward(f: &GridFunction) -> Result<GridFunction> {
    expect_repr(f, Repr::Physical, "u1_forward")?;
    let scale = f.grid().x_step() / (PI * SQRT_2);
    let values = transform(f, FftDirection::Forward, scale);
    Ok(GridFunction::from_parts(f.grid().dual(), values, Repr::FourierSide, f.is_analytic()))
}

/// Fourier side → physical. The output lives on `g.grid().dual()`.
pub fn u1_inverse(g: &GridFunction) -> Result<GridFunction> {
    expect_repr(g, Repr::FourierSide, "u1_inverse")?;
    let scale = g.grid().x_step() / SQRT_2;
    let values = transform(g, FftDirection::Inverse, scale);
    Ok(GridFunction::from_parts(g.grid().dual(), values, Repr::Physical, g.is_analytic()))
}

pub(crate) fn expect_repr(f: &GridFunction, repr: Repr, op: &str) -> Result<()> {
    if f.repr() != repr {
        return Err(Error::GridMismatch(format!(
            "{op} expects a {repr:?} function, got {:?}",
            f.repr()
        )));
    }
    Ok(())
}

fn transform(f: &GridFunction, direction: FftDirection, scale: f64) -> Array2<Complex64> {
    let grid: &HalfPlaneGrid = f.grid();
    let (n, n_y) = (grid.n_x(), grid.n_y());
    let fft = FftPlanner::new().plan_fft(n, direction);
    let global = if (n / 2) % 2 == 0 { scale } else { -scale };
    let sign = |j: usize| if j % 2 == 0 { 1.0 } else { -1.0 };
    let values = f.values();

    let columns: Vec<Vec<Complex64>> = (0..n_y)
        .into_par_iter()
        .map(|k| {
            let mut buf: Vec<Complex64> = (0..n).map(|j| values[[j, k]] * sign(j)).collect();
            fft.process(&mut buf);
            for (m, v) in buf.iter_mut().enumerate() {
                *v *= global * sign(m);
            }
            buf
        })
        .collect();
    Array2::from_shape_fn((n, n_y), |(m, k)| columns[k][m])
}
