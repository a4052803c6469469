//! Projection onto `A^{q,p}_λ` through the unitary chain
//! `U₁⁻¹ U₂⁻¹ B_p U₂ U₁`.

use super::fourier::{expect_repr, u1_forward, u1_inverse};
use super::parabolic::{u2_forward, u2_inverse};
use super::profile::bp_project;
use super::Diagnostics;
use crate::error::Result;
use crate::grid::{GridFunction, Repr};
use crate::space::SpaceParams;

pub fn bergman_project(f: &GridFunction, params: &SpaceParams) -> Result<(GridFunction, Diagnostics)> {
    expect_repr(f, Repr::Physical, "bergman_project")?;
    let g = u1_forward(f)?;
    let (h, d1) = u2_forward(&g, params)?;
    let (b, d2) = bp_project(&h, params)?;
    let (back, d3) = u2_inverse(&b, params)?;
    let out = u1_inverse(&back)?;
    Ok((out, d1.merge(d2).merge(d3)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::DensityForm;
    use crate::grid::{BoundaryDensity, HalfPlaneGrid};
    use crate::transforms::pw_synthesize;
    use num_complex::Complex64;

    fn grid() -> HalfPlaneGrid {
        HalfPlaneGrid::new(20.0, 128, 20.0, 128, 2.0).unwrap()
    }

    #[test]
    fn fixes_analytic_elements_and_is_idempotent() {
        let g = grid();
        for &(lam, p) in &[(0.0, 2.0), (1.0, 3.0)] {
            let params = SpaceParams::new(lam, p, 2.0).unwrap();
            let phi = BoundaryDensity::on_lattice(DensityForm::bump(1.0, 3.0).unwrap(), &g).unwrap();
            let f = pw_synthesize(&phi, &params, &g).unwrap();
            let (b, diag) = bergman_project(&f, &params).unwrap();
            assert_eq!(diag.clamped_points, 0);
            assert!(b.sub(&f).unwrap().max_abs() < 1e-10 * f.max_abs());

            let rough = GridFunction::from_fn(g.clone(), Repr::Physical, |x, y| {
                Complex64::new((-x * x).exp() * (-y).exp(), 0.0)
            })
            .unwrap();
            let (once, _) = bergman_project(&rough, &params).unwrap();
            let (twice, _) = bergman_project(&once, &params).unwrap();
            assert!(twice.sub(&once).unwrap().max_abs() < 1e-10 * once.max_abs().max(1e-300));
        }
    }

    #[test]
    fn zero_maps_to_zero() {
        let params = SpaceParams::new(0.5, 2.0, 2.0).unwrap();
        let (b, _) = bergman_project(&GridFunction::zeros(grid(), Repr::Physical), &params).unwrap();
        assert_eq!(b.max_abs(), 0.0);
    }
}
