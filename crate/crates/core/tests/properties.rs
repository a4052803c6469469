use mfbergman::specfun::{gamma_upper_reg, PsiBetaContext};
use mfbergman::toeplitz::{apply_toeplitz, boundedness_and_spectrum, gamma_of_symbol, LogSweep, VerticalSymbol};
use mfbergman::transforms::{u1_forward, u1_inverse};
use mfbergman::{lq_norm, mixed_norm, BoundaryDensity, GridFunction, HalfPlaneGrid, Repr, SpaceParams};
use num_complex::Complex64;
use proptest::prelude::*;
use std::sync::OnceLock;

fn small_grid() -> &'static HalfPlaneGrid {
    static G: OnceLock<HalfPlaneGrid> = OnceLock::new();
    G.get_or_init(|| HalfPlaneGrid::new(10.0, 64, 20.0, 48, 2.0).unwrap())
}

fn gaussian_bump(cx: f64, w: f64, rate: f64, phase: f64) -> GridFunction {
    GridFunction::from_fn(small_grid().clone(), Repr::Physical, |x, y| {
        Complex64::from_polar((-(x - cx).powi(2) / (w * w) - rate * y).exp(), phase * x)
    })
    .unwrap()
}

fn params() -> impl Strategy<Value = SpaceParams> {
    (-0.9f64..3.0, 1.0f64..4.0, 1.0f64..5.0).prop_map(|(l, p, q)| SpaceParams::new(l, p, q).unwrap())
}

fn density(seed: &[f64]) -> BoundaryDensity {
    let nodes: Vec<f64> = (1..=seed.len()).map(|k| k as f64 * 0.25).collect();
    let values = seed.iter().map(|&v| Complex64::new(v, 0.5 * v.sin())).collect();
    BoundaryDensity::new(nodes, values).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn mixed_norm_is_homogeneous(pr in params(), c in -5.0f64..5.0, cx in -3.0f64..3.0, w in 0.5f64..3.0) {
        let f = gaussian_bump(cx, w, 0.7, 0.3);
        let n = mixed_norm(&f, &pr).unwrap();
        let m = mixed_norm(&f.scale(Complex64::new(c, 0.0)), &pr).unwrap();
        prop_assert!((m - c.abs() * n).abs() <= 1e-12 * n.max(1e-300));
    }

    #[test]
    fn mixed_norm_triangle_inequality(pr in params(), a in -3.0f64..3.0, b in -3.0f64..3.0, r in 0.2f64..2.0) {
        let f = gaussian_bump(a, 1.0, r, 0.0);
        let g = gaussian_bump(b, 2.0, 1.0, 1.0);
        let s = mixed_norm(&f.add(&g).unwrap(), &pr).unwrap();
        let bound = mixed_norm(&f, &pr).unwrap() + mixed_norm(&g, &pr).unwrap();
        prop_assert!(s <= bound * (1.0 + 1e-12));
    }

    #[test]
    fn lq_norm_homogeneity_and_triangle(q in 1.0f64..6.0, s1 in prop::collection::vec(-2.0f64..2.0, 8), s2 in prop::collection::vec(-2.0f64..2.0, 8), c in -4.0f64..4.0) {
        let (f, g) = (density(&s1), density(&s2));
        let nf = lq_norm(&f, q).unwrap();
        prop_assert!((lq_norm(&f.scale(Complex64::new(c, 0.0)), q).unwrap() - c.abs() * nf).abs() <= 1e-12 * nf.max(1e-300));
        prop_assert!(lq_norm(&f.add(&g).unwrap(), q).unwrap() <= (nf + lq_norm(&g, q).unwrap()) * (1.0 + 1e-12));
    }

    #[test]
    fn fourier_roundtrip(cx in -4.0f64..4.0, w in 0.5f64..3.0, phase in -2.0f64..2.0) {
        let f = gaussian_bump(cx, w, 0.5, phase);
        let back = u1_inverse(&u1_forward(&f).unwrap()).unwrap();
        prop_assert!(back.sub(&f).unwrap().max_abs() <= 1e-12 * f.max_abs());
    }

    #[test]
    fn psi_beta_are_inverse(pr in params(), lx in -3.0f64..3.0, lt in -3.0f64..1.0) {
        let (x, t) = (10f64.powf(lx), 10f64.powf(lt));
        let ctx = PsiBetaContext::new(pr, x).unwrap();
        let y = ctx.psi(t).unwrap();
        prop_assert!(((ctx.beta(y).unwrap() - t) / t).abs() <= 1e-10);
        prop_assert!(((-y).exp() - gamma_upper_reg(pr.lambda() + 1.0, pr.p() * x * t).unwrap()).abs() <= 1e-12);
    }

    #[test]
    fn gamma_is_positive_and_bounded_by_the_symbol(pr in params(), sigma in 0.0f64..5.0, c in 0.0f64..3.0, a in 0.0f64..2.0, len in 0.01f64..5.0, lx in -3.0f64..3.0) {
        let x = 10f64.powf(lx);
        let e = gamma_of_symbol(&VerticalSymbol::Exp { sigma, c }, &pr, x).unwrap();
        prop_assert!(e >= 0.0 && e <= c * (1.0 + 1e-15));
        let i = gamma_of_symbol(&VerticalSymbol::Indicator { a, b: a + len }, &pr, x).unwrap();
        prop_assert!((0.0..=1.0 + 1e-15).contains(&i));
    }

    #[test]
    fn indicator_gamma_matches_psi(pr in params(), h in 0.01f64..10.0, lx in -3.0f64..3.0) {
        let x = 10f64.powf(lx);
        let g = gamma_of_symbol(&VerticalSymbol::Indicator { a: 0.0, b: h }, &pr, x).unwrap();
        let psi = PsiBetaContext::new(pr, x).unwrap().psi(h).unwrap();
        prop_assert!((g + (-psi).exp() - 1.0).abs() <= 1e-10);
    }

    #[test]
    fn symbol_text_roundtrips(sigma in 0.0f64..5.0, c in -3.0f64..3.0, a in 0.0f64..2.0, s in -0.5f64..3.0) {
        for sym in [
            VerticalSymbol::Exp { sigma, c },
            VerticalSymbol::Indicator { a, b: a + 1.0 },
            VerticalSymbol::Power(s),
            VerticalSymbol::Const(c),
            VerticalSymbol::PolyExp { coeffs: vec![c, sigma, a], sigma },
        ] {
            let back: VerticalSymbol = sym.to_string().parse().unwrap();
            prop_assert_eq!(back, sym);
        }
    }

    #[test]
    fn toeplitz_multiplier_is_linear(pr in params(), alpha in -3.0f64..3.0, s1 in prop::collection::vec(-2.0f64..2.0, 8), s2 in prop::collection::vec(-2.0f64..2.0, 8)) {
        let a = VerticalSymbol::Exp { sigma: 1.0, c: 1.0 };
        let (f, g) = (density(&s1), density(&s2));
        let al = Complex64::new(alpha, 0.0);
        let lhs = apply_toeplitz(&a, &f.scale(al).add(&g).unwrap(), &pr).unwrap();
        let rhs = apply_toeplitz(&a, &f, &pr).unwrap().scale(al).add(&apply_toeplitz(&a, &g, &pr).unwrap()).unwrap();
        for (u, v) in lhs.values().iter().zip(rhs.values()) {
            prop_assert!((u - v).norm() <= 1e-13 * (1.0 + v.norm()));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn exponential_spectrum_is_zero_to_c(lam in -0.9f64..3.0, p in 1.0f64..4.0, sigma in 0.1f64..5.0, c in 0.1f64..3.0) {
        let pr = SpaceParams::new(lam, p, 2.0).unwrap();
        let r = boundedness_and_spectrum(&VerticalSymbol::Exp { sigma, c }, &pr, LogSweep::default()).unwrap();
        prop_assert!(r.bounded);
        prop_assert_eq!(r.range_components.len(), 1);
        let (lo, hi) = r.range_components[0];
        prop_assert!(lo.abs() <= 1e-6 * c && (hi - c).abs() <= 1e-6 * c, "{:?}", r);
    }
}
