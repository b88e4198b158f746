//! Randomised invariants of the operators and functionals.

use proptest::prelude::*;

use rlfrac::fracops::rl_integral_with;
use rlfrac::normfun::{DEFAULT_R_MAX, DEFAULT_TOL};
use rlfrac::{
    bmo_seminorm, k_gamma_norm, lp_norm, rl_integral, weak_lr_quasinorm, BmoStrategy, Execution, Grid, GridFunction,
    Reconstruction, VectorNorm,
};

/// Scalar or vector function on a uniform grid of a random interval.
fn grid_function(max_dim: usize) -> impl Strategy<Value = GridFunction> {
    (
        -2.0f64..2.0,
        0.25f64..4.0,
        4usize..48,
        1usize..=max_dim,
        any::<bool>(),
        prop::sample::select(vec![VectorNorm::Euclidean, VectorNorm::Max, VectorNorm::Abs]),
    )
        .prop_flat_map(|(t0, len, n, d, nodal, norm)| {
            let count = if nodal { n + 1 } else { n };
            prop::collection::vec(-10.0f64..10.0, count * d).prop_map(move |values| {
                let grid = Grid::uniform(t0, t0 + len, n).unwrap();
                let mode = if nodal { Reconstruction::NodalLinear } else { Reconstruction::CellConstant };
                GridFunction::new(grid, d, mode, values, norm).unwrap()
            })
        })
}

/// Two functions sharing grid, dimension and reconstruction.
fn paired() -> impl Strategy<Value = (GridFunction, GridFunction)> {
    grid_function(2).prop_flat_map(|f| {
        let len = f.values().len();
        let f2 = f.clone();
        prop::collection::vec(-10.0f64..10.0, len).prop_map(move |v| {
            let g = GridFunction::new(f2.grid_arc().clone(), f2.dim(), f2.mode(), v, f2.vector_norm()).unwrap();
            (f2.clone(), g)
        })
    })
}

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(1e-300)
}

fn value(x: rlfrac::ExtendedReal) -> f64 {
    x.to_f64()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn integral_is_linear((f, g) in paired(), a in -3.0f64..3.0, b in -3.0f64..3.0, alpha in 0.05f64..2.5) {
        let lhs = rl_integral(&GridFunction::linear_combination(a, &f, b, &g).unwrap(), alpha).unwrap();
        let jf = rl_integral(&f, alpha).unwrap();
        let jg = rl_integral(&g, alpha).unwrap();
        let rhs = GridFunction::linear_combination(a, &jf, b, &jg).unwrap();
        let scale = rhs.values().iter().fold(1.0f64, |m, v| m.max(v.abs()));
        for (x, y) in lhs.values().iter().zip(rhs.values()) {
            prop_assert!((x - y).abs() <= 1e-10 * scale);
        }
    }

    #[test]
    fn integral_preserves_sign(f in grid_function(1), alpha in 0.05f64..2.5) {
        let pos = GridFunction::new(
            f.grid_arc().clone(), 1, f.mode(), f.values().iter().map(|v| v.abs()).collect(), f.vector_norm(),
        ).unwrap();
        let j = rl_integral(&pos, alpha).unwrap();
        prop_assert!(j.values().iter().all(|&v| v >= 0.0));
    }

    #[test]
    fn norms_are_homogeneous(f in grid_function(3), c in -50.0f64..50.0, p in 1.0f64..8.0) {
        let g = f.scale(c);
        let k = c.abs();
        prop_assert!(close(lp_norm(&g, p).unwrap(), k * lp_norm(&f, p).unwrap(), 1e-10));
        prop_assert!(close(
            value(weak_lr_quasinorm(&g, p).unwrap().value),
            k * value(weak_lr_quasinorm(&f, p).unwrap().value),
            1e-9,
        ));
        prop_assert!(close(
            value(bmo_seminorm(&g, BmoStrategy::Exhaustive).unwrap().value),
            k * value(bmo_seminorm(&f, BmoStrategy::Exhaustive).unwrap().value),
            1e-9,
        ));
    }

    #[test]
    fn k_norm_decreases_in_gamma(f in grid_function(2), g1 in 0.1f64..2.0, dg in 0.0f64..2.0) {
        let lo = value(k_gamma_norm(&f, g1, DEFAULT_R_MAX, DEFAULT_TOL).unwrap().value);
        let hi = value(k_gamma_norm(&f, g1 + dg, DEFAULT_R_MAX, DEFAULT_TOL).unwrap().value);
        prop_assert!(hi <= lo * (1.0 + 1e-10));
    }

    #[test]
    fn holder_between_exponents(f in grid_function(3), r1 in 1.0f64..6.0, dr in 0.0f64..10.0) {
        let r2 = r1 + dr;
        let len = f.grid().length();
        let lhs = lp_norm(&f, r1).unwrap();
        let rhs = lp_norm(&f, r2).unwrap() * len.powf(1.0 / r1 - 1.0 / r2);
        prop_assert!(lhs <= rhs * (1.0 + 1e-10));
    }

    #[test]
    fn bmo_at_most_twice_sup(f in grid_function(3)) {
        let b = value(bmo_seminorm(&f, BmoStrategy::Exhaustive).unwrap().value);
        let sup = lp_norm(&f, f64::INFINITY).unwrap();
        prop_assert!(b <= 2.0 * sup * (1.0 + 1e-10));
    }

    #[test]
    fn reflection_keeps_norms(f in grid_function(3), p in 1.0f64..8.0) {
        let r = f.reflect();
        prop_assert!(close(lp_norm(&r, p).unwrap(), lp_norm(&f, p).unwrap(), 1e-10));
        prop_assert!(close(
            value(bmo_seminorm(&r, BmoStrategy::Exhaustive).unwrap().value),
            value(bmo_seminorm(&f, BmoStrategy::Exhaustive).unwrap().value),
            1e-9,
        ));
    }

    #[test]
    fn weak_below_strong(f in grid_function(3), r in 1.0f64..8.0) {
        let weak = value(weak_lr_quasinorm(&f, r).unwrap().value);
        prop_assert!(weak <= lp_norm(&f, r).unwrap() * (1.0 + 1e-10));
    }

    #[test]
    fn execution_policy_is_invisible(f in grid_function(2), alpha in 0.05f64..2.5) {
        let par = rl_integral_with(&f, alpha, Execution::Parallel).unwrap();
        let seq = rl_integral_with(&f, alpha, Execution::Sequential).unwrap();
        prop_assert_eq!(par.values(), seq.values());
        prop_assert_eq!(rl_integral(&f, alpha).unwrap(), rl_integral(&f, alpha).unwrap());
    }
}
