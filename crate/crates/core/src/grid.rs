//! Discretization of `Π = ℝ × ℝ₊` and the sampled objects living on it.

use crate::density::DensityForm;
use crate::error::{Error, Result};
use ndarray::Array2;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Tensor grid on `[-X, X) × (0, Y]`.
///
/// The `x` axis is uniform (FFT-compatible, `x = 0` is a node); the `y` axis
/// is graded toward `0` as `y_k = Y (k/n)^g`. Trapezoid weights are attached to
/// both axes. On `y` the rule runs over `[0, Y]`, with the unknown value at
/// `y = 0` replaced by the value at the first node.
#[derive(Debug, Clone, PartialEq)]
pub struct HalfPlaneGrid {
    x_nodes: Vec<f64>,
    y_nodes: Vec<f64>,
    x_weights: Vec<f64>,
    y_weights: Vec<f64>,
    x_step: f64,
    // kept so that dual().dual() reproduces x_step bit for bit
    dual_step: f64,
}

impl HalfPlaneGrid {
    /// Builds the standard grid. `n_x` must be a power of two `≥ 8`.
    pub fn new(x_halfwidth: f64, n_x: usize, y_max: f64, n_y: usize, grading: f64) -> Result<Self> {
        if !(x_halfwidth > 0.0 && x_halfwidth.is_finite()) {
            return Err(Error::InvalidArgument(format!("x_halfwidth must be > 0, got {x_halfwidth}")));
        }
        if !(y_max > 0.0 && y_max.is_finite()) {
            return Err(Error::InvalidArgument(format!("y_max must be > 0, got {y_max}")));
        }
        if n_x < 8 || !n_x.is_power_of_two() {
            return Err(Error::InvalidArgument(format!(
                "n_x must be a power of two >= 8, got {n_x}"
            )));
        }
        if n_y < 8 {
            return Err(Error::InvalidArgument(format!("n_y must be >= 8, got {n_y}")));
        }
        if !(grading >= 1.0 && grading.is_finite()) {
            return Err(Error::InvalidArgument(format!("grading must be >= 1, got {grading}")));
        }
        let x_step = 2.0 * x_halfwidth / n_x as f64;
        let y_nodes = (1..=n_y)
            .map(|k| y_max * (k as f64 / n_y as f64).powf(grading))
            .collect();
        Ok(Self::assemble(uniform_nodes(n_x, x_step), x_step, y_nodes))
    }

    /// Rebuilds a grid from explicit nodes, e.g. after reading a file.
    pub fn from_nodes(x_nodes: Vec<f64>, y_nodes: Vec<f64>) -> Result<Self> {
        let n = x_nodes.len();
        if n < 8 || n % 2 != 0 {
            return Err(Error::GridMismatch(format!(
                "need an even number (>= 8) of x nodes, got {n}"
            )));
        }
        let x_step = (x_nodes[n - 1] - x_nodes[0]) / (n - 1) as f64;
        if !(x_step > 0.0) {
            return Err(Error::GridMismatch("x nodes must be increasing".into()));
        }
        let max_dev = x_nodes
            .windows(2)
            .map(|w| ((w[1] - w[0]) - x_step).abs())
            .fold(0.0, f64::max);
        if max_dev > 1e-12 * x_step {
            return Err(Error::GridMismatch(format!(
                "x nodes are not uniform (deviation {max_dev:e} vs step {x_step:e})"
            )));
        }
        if (x_nodes[n / 2]).abs() > 1e-9 * x_step {
            return Err(Error::GridMismatch(
                "x nodes must be symmetric [-X, X) with x = 0 at index n/2".into(),
            ));
        }
        if y_nodes.len() < 4 {
            return Err(Error::GridMismatch("need at least 4 y nodes".into()));
        }
        if !(y_nodes[0] > 0.0) || y_nodes.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::GridMismatch(
                "y nodes must be positive and strictly increasing".into(),
            ));
        }
        Ok(Self::assemble(uniform_nodes(n, x_step), x_step, y_nodes))
    }

    fn assemble(x_nodes: Vec<f64>, x_step: f64, y_nodes: Vec<f64>) -> Self {
        let x_weights = vec![x_step; x_nodes.len()];
        let y_weights = trapezoid_from_origin(&y_nodes);
        let dual_step = 2.0 * PI / (x_nodes.len() as f64 * x_step);
        Self {
            x_nodes,
            y_nodes,
            x_weights,
            y_weights,
            x_step,
            dual_step,
        }
    }

    /// The frequency grid paired with this one by the discrete Fourier
    /// transform: step `2π/(n h)`, half-width `π/h`, same `y` nodes.
    /// Taking the dual twice returns the original grid.
    pub fn dual(&self) -> Self {
        let n = self.n_x();
        let step = self.dual_step;
        Self {
            x_nodes: uniform_nodes(n, step),
            y_nodes: self.y_nodes.clone(),
            x_weights: vec![step; n],
            y_weights: self.y_weights.clone(),
            x_step: step,
            dual_step: self.x_step,
        }
    }

    pub fn x_nodes(&self) -> &[f64] {
        &self.x_nodes
    }

    pub fn y_nodes(&self) -> &[f64] {
        &self.y_nodes
    }

    pub fn x_weights(&self) -> &[f64] {
        &self.x_weights
    }

    pub fn y_weights(&self) -> &[f64] {
        &self.y_weights
    }

    pub fn x_step(&self) -> f64 {
        self.x_step
    }

    pub fn x_halfwidth(&self) -> f64 {
        0.5 * self.x_step * self.n_x() as f64
    }

    pub fn y_max(&self) -> f64 {
        *self.y_nodes.last().expect("grid has y nodes")
    }

    pub fn n_x(&self) -> usize {
        self.x_nodes.len()
    }

    pub fn n_y(&self) -> usize {
        self.y_nodes.len()
    }

    /// Index range of the nodes with `x > 0`.
    pub fn positive_x_range(&self) -> std::ops::Range<usize> {
        self.n_x() / 2 + 1..self.n_x()
    }

    /// Nodes with `x > 0`.
    pub fn positive_x_nodes(&self) -> &[f64] {
        &self.x_nodes[self.positive_x_range()]
    }

    pub(crate) fn same_nodes(&self, other: &Self) -> bool {
        self.x_step == other.x_step && self.n_x() == other.n_x() && self.y_nodes == other.y_nodes
    }
}

fn uniform_nodes(n: usize, step: f64) -> Vec<f64> {
    let half = (n / 2) as f64;
    (0..n).map(|j| (j as f64 - half) * step).collect()
}

fn trapezoid_from_origin(y: &[f64]) -> Vec<f64> {
    let n = y.len();
    let mut w = vec![0.0; n];
    // segment [0, y_0] carries the first value
    w[0] += y[0];
    for k in 0..n - 1 {
        let half = 0.5 * (y[k + 1] - y[k]);
        w[k] += half;
        w[k + 1] += half;
    }
    w
}

/// Which representation a [`GridFunction`]'s samples are in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Repr {
    /// `f(x, y)` on the half-plane.
    Physical,
    /// `(U₁f)(ξ, y)`: normalized partial Fourier transform in `x`.
    FourierSide,
    /// `(U₂U₁f)(ξ, y)`: after the vertical change of variables.
    U2Side,
}

/// Complex samples on a [`HalfPlaneGrid`], indexed `(x_index, y_index)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    grid: HalfPlaneGrid,
    values: Array2<Complex64>,
    repr: Repr,
    analytic: bool,
}

impl GridFunction {
    pub fn new(grid: HalfPlaneGrid, values: Array2<Complex64>, repr: Repr) -> Result<Self> {
        if values.dim() != (grid.n_x(), grid.n_y()) {
            return Err(Error::GridMismatch(format!(
                "values have shape {:?}, grid is {}x{}",
                values.dim(),
                grid.n_x(),
                grid.n_y()
            )));
        }
        if values.iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::NonFinite("GridFunction values"));
        }
        Ok(Self {
            grid,
            values,
            repr,
            analytic: false,
        })
    }

    pub fn zeros(grid: HalfPlaneGrid, repr: Repr) -> Self {
        let values = Array2::zeros((grid.n_x(), grid.n_y()));
        Self {
            grid,
            values,
            repr,
            analytic: false,
        }
    }

    pub fn from_fn<F>(grid: HalfPlaneGrid, repr: Repr, mut f: F) -> Result<Self>
    where
        F: FnMut(f64, f64) -> Complex64,
    {
        let values = Array2::from_shape_fn((grid.n_x(), grid.n_y()), |(i, k)| {
            f(grid.x_nodes[i], grid.y_nodes[k])
        });
        Self::new(grid, values, repr)
    }

    pub(crate) fn from_parts(grid: HalfPlaneGrid, values: Array2<Complex64>, repr: Repr, analytic: bool) -> Self {
        debug_assert_eq!(values.dim(), (grid.n_x(), grid.n_y()));
        Self {
            grid,
            values,
            repr,
            analytic,
        }
    }

    pub fn grid(&self) -> &HalfPlaneGrid {
        &self.grid
    }

    pub fn values(&self) -> &Array2<Complex64> {
        &self.values
    }

    pub fn repr(&self) -> Repr {
        self.repr
    }

    /// Whether the samples are known to come from an analytic element
    /// (set by synthesis, carried through the transform chain). Used to pick
    /// the tail model when the vertical change of variables leaves the grid.
    pub fn is_analytic(&self) -> bool {
        self.analytic
    }

    pub fn with_analytic(mut self, analytic: bool) -> Self {
        self.analytic = analytic;
        self
    }

    pub fn get(&self, ix: usize, iy: usize) -> Complex64 {
        self.values[(ix, iy)]
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            grid: self.grid.clone(),
            values: self.values.mapv(|v| v * c),
            repr: self.repr,
            analytic: self.analytic,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(Self {
            grid: self.grid.clone(),
            values: &self.values + &other.values,
            repr: self.repr,
            analytic: self.analytic && other.analytic,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(Self {
            grid: self.grid.clone(),
            values: &self.values - &other.values,
            repr: self.repr,
            analytic: self.analytic && other.analytic,
        })
    }

    /// Multiplies every sample by `m(y)`.
    pub fn multiply_by_column(&self, m: &[f64]) -> Result<Self> {
        if m.len() != self.grid.n_y() {
            return Err(Error::GridMismatch(format!(
                "multiplier has {} entries, grid has {} y nodes",
                m.len(),
                self.grid.n_y()
            )));
        }
        let mut values = self.values.clone();
        for mut row in values.rows_mut() {
            for (v, &a) in row.iter_mut().zip(m) {
                *v *= a;
            }
        }
        Ok(Self {
            grid: self.grid.clone(),
            values,
            repr: self.repr,
            analytic: false,
        })
    }

    /// Largest modulus over all samples.
    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if !self.grid.same_nodes(&other.grid) {
            return Err(Error::GridMismatch("functions live on different grids".into()));
        }
        if self.repr != other.repr {
            return Err(Error::GridMismatch(format!(
                "representations differ: {:?} vs {:?}",
                self.repr, other.repr
            )));
        }
        Ok(())
    }
}

/// A function on `ℝ₊`: the `L^q(ℝ₊)` side of the Paley–Wiener isomorphism.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryDensity {
    xi_nodes: Vec<f64>,
    values: Vec<Complex64>,
    closed_form: Option<DensityForm>,
}

impl BoundaryDensity {
    pub fn new(xi_nodes: Vec<f64>, values: Vec<Complex64>) -> Result<Self> {
        if xi_nodes.len() != values.len() {
            return Err(Error::InvalidArgument(format!(
                "{} nodes but {} values",
                xi_nodes.len(),
                values.len()
            )));
        }
        if xi_nodes.is_empty() {
            return Err(Error::InvalidArgument("density needs at least one node".into()));
        }
        if !(xi_nodes[0] > 0.0) || xi_nodes.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidArgument(
                "xi nodes must be positive and strictly increasing".into(),
            ));
        }
        if xi_nodes.iter().any(|x| !x.is_finite())
            || values.iter().any(|v| !(v.re.is_finite() && v.im.is_finite()))
        {
            return Err(Error::NonFinite("BoundaryDensity"));
        }
        Ok(Self {
            xi_nodes,
            values,
            closed_form: None,
        })
    }

    /// Samples a closed-form density on the given nodes.
    pub fn sample(form: DensityForm, xi_nodes: Vec<f64>) -> Result<Self> {
        let values = xi_nodes.iter().map(|&x| Complex64::new(form.eval(x), 0.0)).collect();
        let mut d = Self::new(xi_nodes, values)?;
        d.closed_form = Some(form);
        Ok(d)
    }

    /// Samples a closed-form density on the positive frequencies of the grid
    /// paired with `physical` (the nodes synthesis and analysis work on).
    pub fn on_lattice(form: DensityForm, physical: &HalfPlaneGrid) -> Result<Self> {
        Self::sample(form, physical.dual().positive_x_nodes().to_vec())
    }

    pub fn zeros(xi_nodes: Vec<f64>) -> Result<Self> {
        let n = xi_nodes.len();
        Self::new(xi_nodes, vec![Complex64::new(0.0, 0.0); n])
    }

    pub fn xi_nodes(&self) -> &[f64] {
        &self.xi_nodes
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn closed_form(&self) -> Option<&DensityForm> {
        self.closed_form.as_ref()
    }

    pub fn len(&self) -> usize {
        self.xi_nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xi_nodes.is_empty()
    }

    /// Same nodes, new values.
    pub fn with_values(&self, values: Vec<Complex64>) -> Result<Self> {
        Self::new(self.xi_nodes.clone(), values)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            xi_nodes: self.xi_nodes.clone(),
            values: self.values.iter().map(|v| v * c).collect(),
            closed_form: None,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.xi_nodes != other.xi_nodes {
            return Err(Error::GridMismatch("densities live on different nodes".into()));
        }
        self.with_values(self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    /// Linear interpolation, zero outside the node range.
    pub fn interpolate(&self, xi: f64) -> Complex64 {
        let n = self.xi_nodes.len();
        if !(xi >= self.xi_nodes[0] && xi <= self.xi_nodes[n - 1]) {
            return Complex64::new(0.0, 0.0);
        }
        let k = self.xi_nodes.partition_point(|&x| x <= xi);
        if k == 0 {
            return self.values[0];
        }
        if k >= n {
            return self.values[n - 1];
        }
        let (x0, x1) = (self.xi_nodes[k - 1], self.xi_nodes[k]);
        let s = (xi - x0) / (x1 - x0);
        self.values[k - 1] * (1.0 - s) + self.values[k] * s
    }

    /// Resamples onto new nodes by linear interpolation.
    pub fn resample(&self, xi_nodes: &[f64]) -> Result<Self> {
        Self::new(xi_nodes.to_vec(), xi_nodes.iter().map(|&x| self.interpolate(x)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn make_grid_uniform_example() {
        let g = HalfPlaneGrid::new(1.0, 8, 1.0, 8, 1.0).unwrap();
        assert_eq!(g.x_step(), 0.25);
        assert_eq!(g.x_nodes()[0], -1.0);
        assert_eq!(g.x_nodes()[4], 0.0);
        let expected: Vec<f64> = (1..=8).map(|k| k as f64 / 8.0).collect();
        assert_eq!(g.y_nodes(), expected.as_slice());
    }

    #[test]
    fn make_grid_graded_example() {
        let g = HalfPlaneGrid::new(1.0, 8, 1.0, 8, 2.0).unwrap();
        let y = g.y_nodes();
        assert!((y[1] - 0.0625).abs() < 1e-16);
        assert!((y[3] - 0.25).abs() < 1e-16);
        assert!((y[5] - 0.5625).abs() < 1e-16);
        assert_eq!(y[7], 1.0);
    }

    #[test]
    fn weights_positive_and_integrate_constants() {
        let g = HalfPlaneGrid::new(3.0, 64, 7.0, 33, 2.5).unwrap();
        assert!(g.x_weights().iter().all(|&w| w > 0.0));
        assert!(g.y_weights().iter().all(|&w| w > 0.0));
        assert!((g.y_weights().iter().sum::<f64>() - 7.0).abs() < 1e-13);
        assert!((g.x_weights().iter().sum::<f64>() - 6.0).abs() < 1e-13);
    }

    #[test]
    fn make_grid_rejects_bad_input() {
        assert!(HalfPlaneGrid::new(0.0, 8, 1.0, 8, 1.0).is_err());
        assert!(HalfPlaneGrid::new(1.0, 12, 1.0, 8, 1.0).is_err());
        assert!(HalfPlaneGrid::new(1.0, 4, 1.0, 8, 1.0).is_err());
        assert!(HalfPlaneGrid::new(1.0, 8, -1.0, 8, 1.0).is_err());
        assert!(HalfPlaneGrid::new(1.0, 8, 1.0, 7, 1.0).is_err());
        assert!(HalfPlaneGrid::new(1.0, 8, 1.0, 8, 0.5).is_err());
    }

    #[test]
    fn dual_is_an_involution() {
        let g = HalfPlaneGrid::new(40.0, 1024, 40.0, 16, 2.0).unwrap();
        let d = g.dual();
        assert!((d.x_halfwidth() - PI / g.x_step()).abs() < 1e-12);
        let dd = d.dual();
        assert!((dd.x_step() - g.x_step()).abs() < 1e-15);
        assert_eq!(dd.x_nodes()[dd.n_x() / 2], 0.0);
    }

    #[test]
    fn from_nodes_validates() {
        let g = HalfPlaneGrid::new(2.0, 16, 3.0, 8, 2.0).unwrap();
        let r = HalfPlaneGrid::from_nodes(g.x_nodes().to_vec(), g.y_nodes().to_vec()).unwrap();
        assert_eq!(r, g);
        let mut bad = g.x_nodes().to_vec();
        bad[3] += 1e-3;
        assert!(HalfPlaneGrid::from_nodes(bad, g.y_nodes().to_vec()).is_err());
        let mut ybad = g.y_nodes().to_vec();
        ybad.swap(1, 2);
        assert!(HalfPlaneGrid::from_nodes(g.x_nodes().to_vec(), ybad).is_err());
    }

    #[test]
    fn grid_function_rejects_nan_and_shape() {
        let g = HalfPlaneGrid::new(1.0, 8, 1.0, 8, 1.0).unwrap();
        let mut v = Array2::zeros((8, 8));
        v[(1, 1)] = Complex64::new(f64::NAN, 0.0);
        assert!(matches!(
            GridFunction::new(g.clone(), v, Repr::Physical),
            Err(Error::NonFinite(_))
        ));
        assert!(GridFunction::new(g, Array2::zeros((8, 7)), Repr::Physical).is_err());
    }

    #[test]
    fn density_validation_and_interpolation() {
        assert!(BoundaryDensity::new(vec![0.0, 1.0], vec![Complex64::new(1.0, 0.0); 2]).is_err());
        assert!(BoundaryDensity::new(vec![1.0, 1.0], vec![Complex64::new(1.0, 0.0); 2]).is_err());
        let d = BoundaryDensity::new(
            vec![1.0, 2.0, 3.0],
            vec![Complex64::new(0.0, 0.0), Complex64::new(2.0, 0.0), Complex64::new(4.0, 0.0)],
        )
        .unwrap();
        assert_eq!(d.interpolate(1.5).re, 1.0);
        assert_eq!(d.interpolate(3.0).re, 4.0);
        assert_eq!(d.interpolate(3.5).re, 0.0);
        assert_eq!(d.interpolate(0.5).re, 0.0);
    }
}
