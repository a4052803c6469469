//! Toeplitz operators with vertical symbols, as multipliers on the boundary
//! side and by brute force on the half-plane.

use super::gamma::gamma_of_symbol;
use super::symbol::VerticalSymbol;
use crate::error::{Error, Result};
use crate::grid::{BoundaryDensity, HalfPlaneGrid};
use crate::space::SpaceParams;
use crate::transforms::{bergman_project, pw_analyze, pw_synthesize, Diagnostics};
use num_complex::Complex64;
use rayon::prelude::*;

/// `γ_{a,λ}(ξ) φ(ξ)` on the nodes of `phi`.
pub fn apply_toeplitz(a: &VerticalSymbol, phi: &BoundaryDensity, params: &SpaceParams) -> Result<BoundaryDensity> {
    let values = phi
        .xi_nodes()
        .par_iter()
        .zip(phi.values())
        .map(|(&xi, &v)| {
            if v == Complex64::new(0.0, 0.0) {
                // skip γ at nodes where it is not needed (and may not be defined)
                a.check_integrability(params).map(|_| v)
            } else {
                gamma_of_symbol(a, params, xi).map(|g| v * g)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    phi.with_values(values)
}

/// Symbol averaged over the cells of the `y` grid, each cell bounded by the
/// midpoints between nodes, the first one starting at 0.
pub fn symbol_column(a: &VerticalSymbol, y_nodes: &[f64]) -> Vec<f64> {
    let n = y_nodes.len();
    (0..n)
        .map(|k| {
            let lo = if k == 0 { 0.0 } else { 0.5 * (y_nodes[k - 1] + y_nodes[k]) };
            let hi = if k + 1 == n { y_nodes[k] } else { 0.5 * (y_nodes[k] + y_nodes[k + 1]) };
            a.cell_average(lo, hi)
        })
        .collect()
}

/// `T_a` realized on the half-plane: synthesize, multiply by `a(y)`, project,
/// analyze. Only defined for `p = q = 2`. The result lives on the nodes of
/// `phi`.
pub fn toeplitz_direct_p2q2(
    a: &VerticalSymbol,
    phi: &BoundaryDensity,
    params: &SpaceParams,
    grid: &HalfPlaneGrid,
) -> Result<(BoundaryDensity, Diagnostics)> {
    if params.p() != 2.0 || params.q() != 2.0 {
        return Err(Error::InvalidArgument(format!(
            "toeplitz_direct_p2q2 needs p = q = 2, got p = {}, q = {}",
            params.p(),
            params.q()
        )));
    }
    a.check_integrability(params)?;
    let f = pw_synthesize(phi, params, grid)?;
    let af = f.multiply_by_column(&symbol_column(a, grid.y_nodes()))?;
    let (pf, d1) = bergman_project(&af, params)?;
    let (out, d2) = pw_analyze(&pf, params)?;
    let out = if out.xi_nodes() == phi.xi_nodes() {
        out
    } else {
        out.resample(phi.xi_nodes())?
    };
    Ok((out, d1.merge(d2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::DensityForm;

    fn rel_l2(a: &BoundaryDensity, b: &BoundaryDensity) -> f64 {
        let num: f64 = a.values().iter().zip(b.values()).map(|(x, y)| (x - y).norm_sqr()).sum();
        let den: f64 = b.values().iter().map(|y| y.norm_sqr()).sum();
        (num / den).sqrt()
    }

    #[test]
    fn multiplier_on_indicator() {
        let pr = SpaceParams::new(1.0, 2.0, 2.0).unwrap();
        let nodes: Vec<f64> = (1..400).map(|k| k as f64 * 0.01).collect();
        let phi = BoundaryDensity::sample(DensityForm::indicator(1.0, 2.0).unwrap(), nodes).unwrap();
        let out = apply_toeplitz(&VerticalSymbol::Exp { sigma: 0.5, c: 1.0 }, &phi, &pr).unwrap();
        for ((&xi, v), w) in phi.xi_nodes().iter().zip(out.values()).zip(phi.values()) {
            let want = w.re * (2.0 * xi / (2.0 * xi + 0.5)).powi(2);
            assert!((v.re - want).abs() < 1e-15 && v.im == 0.0);
        }
    }

    #[test]
    fn cell_columns() {
        let y = [0.5, 1.5, 2.5];
        let col = symbol_column(&VerticalSymbol::Indicator { a: 0.0, b: 1.5 }, &y);
        assert_eq!(col, vec![1.0, 0.5, 0.0]);
    }

    #[test]
    fn direct_realization_of_identity_and_zero() {
        let grid = HalfPlaneGrid::new(40.0, 512, 40.0, 256, 2.0).unwrap();
        let pr = SpaceParams::new(0.0, 2.0, 2.0).unwrap();
        let phi = BoundaryDensity::on_lattice(DensityForm::bump(1.0, 4.0).unwrap(), &grid).unwrap();
        let (id, _) = toeplitz_direct_p2q2(&VerticalSymbol::Const(1.0), &phi, &pr, &grid).unwrap();
        assert!(rel_l2(&id, &phi) < 1e-3, "{}", rel_l2(&id, &phi));
        let (z, _) = toeplitz_direct_p2q2(&VerticalSymbol::Const(0.0), &phi, &pr, &grid).unwrap();
        assert!(z.values().iter().all(|v| v.norm() == 0.0));
        let bad = SpaceParams::new(0.0, 3.0, 2.0).unwrap();
        assert!(toeplitz_direct_p2q2(&VerticalSymbol::Const(1.0), &phi, &bad, &grid).is_err());
    }

    #[test]
    fn direct_matches_multiplier_for_exponential() {
        let grid = HalfPlaneGrid::new(40.0, 512, 40.0, 256, 2.0).unwrap();
        let pr = SpaceParams::new(1.0, 2.0, 2.0).unwrap();
        let phi = BoundaryDensity::on_lattice(DensityForm::bump(1.0, 4.0).unwrap(), &grid).unwrap();
        let a = VerticalSymbol::Exp { sigma: 1.0, c: 1.0 };
        let (direct, _) = toeplitz_direct_p2q2(&a, &phi, &pr, &grid).unwrap();
        let mult = apply_toeplitz(&a, &phi, &pr).unwrap();
        let e = rel_l2(&direct, &mult);
        assert!(e < 1e-3, "{e:e}");
    }
}
