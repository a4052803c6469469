//! Gauss–Legendre and generalized Gauss–Laguerre rules.
//!
//! Laguerre nodes come from the Golub–Welsch eigenproblem and are then polished
//! by Newton iteration on the three-term recurrence; weights use the closed form
//! `w_i = Γ(n+α+1) / (n! x_i L_n^{(α)}'(x_i)²)`, which keeps full relative
//! precision for the tiny weights at large nodes.

use crate::error::{Error, Result};
use nalgebra::{DMatrix, SymmetricEigen};

/// Nodes and weights of an `n`-point rule.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// Gauss–Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> Result<QuadratureRule> {
    if n == 0 {
        return Err(Error::InvalidArgument("gauss_legendre needs n >= 1".into()));
    }
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() <= 1e-16 * x.abs().max(1.0) {
                let (_, d) = legendre_with_derivative(n, x);
                dp = d;
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    Ok(QuadratureRule { nodes, weights })
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Generalized Gauss–Laguerre rule for `∫₀^∞ f(t) t^α e^{-t} dt`, `α > -1`.
pub fn gauss_laguerre(n: usize, alpha: f64) -> Result<QuadratureRule> {
    if n == 0 {
        return Err(Error::InvalidArgument("gauss_laguerre needs n >= 1".into()));
    }
    if !(alpha > -1.0) || !alpha.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "gauss_laguerre needs alpha > -1, got {alpha}"
        )));
    }
    let jacobi = DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            2.0 * i as f64 + alpha + 1.0
        } else if i + 1 == j || j + 1 == i {
            let k = i.max(j) as f64;
            (k * (k + alpha)).sqrt()
        } else {
            0.0
        }
    });
    let mut nodes: Vec<f64> = SymmetricEigen::new(jacobi).eigenvalues.iter().copied().collect();
    nodes.sort_by(|a, b| a.total_cmp(b));

    let log_scale = libm::lgamma(n as f64 + alpha + 1.0) - libm::lgamma(n as f64 + 1.0);
    let mut weights = Vec::with_capacity(n);
    for x in nodes.iter_mut() {
        for _ in 0..8 {
            let (l, d) = laguerre_with_derivative(n, alpha, *x);
            let dx = l / d;
            *x -= dx;
            if dx.abs() <= 4.0 * f64::EPSILON * x.abs() {
                break;
            }
        }
        let (_, d) = laguerre_with_derivative(n, alpha, *x);
        // w = exp(log_scale) / (x d²), assembled in logs to dodge overflow of d²
        let lw = log_scale - x.ln() - 2.0 * d.abs().ln();
        weights.push(lw.exp());
    }
    Ok(QuadratureRule { nodes, weights })
}

fn laguerre_with_derivative(n: usize, alpha: f64, x: f64) -> (f64, f64) {
    let mut l0 = 1.0;
    let mut l1 = 1.0 + alpha - x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 1..n {
        let kf = k as f64;
        let l2 = ((2.0 * kf + 1.0 + alpha - x) * l1 - (kf + alpha) * l0) / (kf + 1.0);
        l0 = l1;
        l1 = l2;
    }
    let nf = n as f64;
    let d = (nf * l1 - (nf + alpha) * l0) / x;
    (l1, d)
}
