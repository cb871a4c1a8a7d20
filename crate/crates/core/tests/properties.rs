//! Property tests over random permutations, gluing tables, relabellings and shapes.

mod common;

use std::f64::consts::PI;

use common::{brute_force_orientable, small_fixtures};
use cusptri_core::bounds::{
    cusp_constants, intersection_bounds, pachner_bound, r_of_t, thickness_radii, ThicknessParams, DEFAULT_EPSILON,
};
use cusptri_core::logreal::LogReal;
use cusptri_core::moves::apply_with_inverse;
use cusptri_core::shape::angles_from_shape;
use cusptri_core::volume::{ball_volume, dist_to_vertical, lobachevsky, tet_volume};
use cusptri_core::{
    applicable_moves, apply, canonical_signature, is_isomorphic, Gluing, Move, Perm4, Triangulation,
};
use num_complex::Complex64;
use proptest::prelude::*;

fn perm() -> impl Strategy<Value = Perm4> {
    (0usize..24).prop_map(|r| Perm4::from_rank(r).unwrap())
}

/// A closed gluing table on `n` tetrahedra: a random matching of faces with random permutations.
fn closed_table(max_tets: usize) -> impl Strategy<Value = Triangulation> {
    (1..=max_tets)
        .prop_flat_map(|n| {
            let faces = 4 * n;
            (Just(n), Just((0..faces).collect::<Vec<_>>()).prop_shuffle(), prop::collection::vec(0usize..6, faces / 2))
        })
        .prop_filter_map("identity self-gluing", |(n, order, choices)| {
            let mut gluings = vec![[None; 4]; n];
            for (pair, choice) in order.chunks(2).zip(choices) {
                let (a, b) = (pair[0], pair[1]);
                let (ta, fa, tb, fb) = (a / 4, a % 4, b / 4, b % 4);
                // The six permutations sending fa to fb.
                let p = Perm4::all().filter(|p| p.apply(fa) == fb).nth(choice).unwrap();
                gluings[ta][fa] = Some(Gluing::new(tb, p));
                gluings[tb][fb] = Some(Gluing::new(ta, p.inverse()));
            }
            Triangulation::new(gluings).ok()
        })
}

fn relabelling(n: usize) -> impl Strategy<Value = (Vec<usize>, Vec<Perm4>)> {
    (Just((0..n).collect::<Vec<_>>()).prop_shuffle(), prop::collection::vec(perm(), n))
}

fn upper_half_plane() -> impl Strategy<Value = Complex64> {
    (-20.0f64..20.0, 1e-3f64..20.0).prop_map(|(re, im)| Complex64::new(re, im))
}

proptest! {
    #[test]
    fn perm_group_laws(a in perm(), b in perm(), c in perm()) {
        prop_assert_eq!(a.compose(b).compose(c), a.compose(b.compose(c)));
        prop_assert!(a.compose(a.inverse()).is_identity());
        prop_assert_eq!(a.compose(b).sign(), a.sign() * b.sign());
        prop_assert_eq!(Perm4::from_rank(a.rank()), Some(a));
        for v in 0..4 {
            prop_assert_eq!(a.compose(b).apply(v), a.apply(b.apply(v)));
        }
    }

    #[test]
    fn random_tables_satisfy_skeleton_invariants(tri in closed_table(6)) {
        let n = tri.tet_count();
        prop_assert_eq!(tri.edge_classes().iter().map(|e| e.degree()).sum::<usize>(), 6 * n);
        prop_assert_eq!(tri.vertex_classes().iter().map(|v| v.incidences.len()).sum::<usize>(), 4 * n);
        let (_, p2, p3) = tri.skeleton_counts();
        prop_assert_eq!(p2, 2 * p3);
        for t in 0..n {
            for f in 0..4 {
                let g = tri.gluing(t, f).unwrap();
                let back = tri.gluing(g.tet, g.perm.apply(f)).unwrap();
                prop_assert_eq!((back.tet, back.perm), (t, g.perm.inverse()));
            }
        }
        prop_assert_eq!(tri.is_orientable(), brute_force_orientable(&tri));
    }

    #[test]
    fn orientability_on_larger_tables(tri in closed_table(12)) {
        prop_assert_eq!(tri.is_orientable(), brute_force_orientable(&tri));
    }

    #[test]
    fn signature_is_relabelling_invariant(
        (tri, (tet_map, maps)) in closed_table(5)
            .prop_filter("connected", |t| t.is_connected())
            .prop_flat_map(|t| { let n = t.tet_count(); (Just(t), relabelling(n)) })
    ) {
        let relabelled = tri.relabel(&tet_map, &maps);
        prop_assert_eq!(canonical_signature(&tri).unwrap(), canonical_signature(&relabelled).unwrap());
        let iso = is_isomorphic(&tri, &relabelled).unwrap();
        prop_assert!(iso.is_some_and(|i| i.verify(&tri, &relabelled)));
        prop_assert_eq!(tri.is_orientable(), relabelled.is_orientable());
    }

    #[test]
    fn moves_are_undone_by_their_inverses(index in 0usize..1000, pick in 0usize..1000) {
        let fixtures = small_fixtures();
        let (_, tri) = &fixtures[index % fixtures.len()];
        let moves = applicable_moves(tri);
        prop_assume!(!moves.is_empty());
        let mv = moves[pick % moves.len()];
        let (after, inverse) = apply_with_inverse(tri, mv).unwrap();
        prop_assert_eq!(after.tet_count() as isize, tri.tet_count() as isize + mv.kind().tet_delta());
        let back = apply(&after, inverse).unwrap();
        prop_assert_eq!(canonical_signature(&back).unwrap(), canonical_signature(tri).unwrap());
        prop_assert_eq!(after.is_orientable(), tri.is_orientable());
    }

    #[test]
    fn one_four_then_four_one(index in 0usize..1000, tet in 0usize..3) {
        let fixtures = small_fixtures();
        let (_, tri) = &fixtures[index % fixtures.len()];
        let mv = Move::OneFour { tet: tet % tri.tet_count() };
        let (after, inverse) = apply_with_inverse(tri, mv).unwrap();
        let is_four_one = matches!(inverse, Move::FourOne { .. });
        prop_assert!(is_four_one);
        let back = apply(&after, inverse).unwrap();
        prop_assert!(is_isomorphic(&back, tri).unwrap().is_some());
    }

    #[test]
    fn angle_sum_and_volume_symmetry(z in upper_half_plane()) {
        let angles = angles_from_shape(z).unwrap();
        prop_assert!((angles.alpha + angles.beta + angles.gamma - PI).abs() < 1e-12);
        prop_assert!(angles.as_array().iter().all(|&a| a > 0.0 && a < PI));
        let one = Complex64::new(1.0, 0.0);
        let v = tet_volume(z).unwrap();
        prop_assert!(v > 0.0 && v <= cusptri_core::volume::regular_tet_volume() + 1e-12);
        prop_assert!((tet_volume(one / (one - z)).unwrap() - v).abs() < 1e-10);
        prop_assert!((tet_volume((z - one) / z).unwrap() - v).abs() < 1e-10);
    }

    #[test]
    fn ball_volume_at_half_radius(r in 0.0f64..8.0) {
        let direct = PI * (r.sinh() - r);
        let half = ball_volume(r / 2.0).unwrap();
        prop_assert!((half - direct).abs() <= 1e-12 * direct.max(1.0));
        prop_assert!(ball_volume(r / 2.0 + 0.01).unwrap() > half);
    }

    #[test]
    fn lobachevsky_is_odd_and_periodic(theta in -10.0f64..10.0) {
        prop_assert!((lobachevsky(-theta) + lobachevsky(theta)).abs() < 1e-9);
        prop_assert!((lobachevsky(theta + PI) - lobachevsky(theta)).abs() < 1e-9);
    }

    #[test]
    fn distance_is_scale_invariant(x in 0.0f64..10.0, y in 1e-3f64..10.0, scale in 1e-3f64..1e3) {
        let d = dist_to_vertical(x, y).unwrap();
        prop_assert!((dist_to_vertical(scale * x, scale * y).unwrap() - d).abs() < 1e-12 * d.max(1.0));
        prop_assert!(dist_to_vertical(x + 0.1, y).unwrap() > d);
    }

    #[test]
    fn log_space_arithmetic(a in 1e-3f64..1e3, b in 1e-3f64..1e3) {
        let (la, lb) = (LogReal::new(a).unwrap(), LogReal::new(b).unwrap());
        prop_assert!(((la + lb).to_f64().unwrap() - (a + b)).abs() < 1e-12 * (a + b));
        prop_assert!(((la * lb).to_f64().unwrap() - a * b).abs() < 1e-12 * a * b);
        prop_assert!(((la / lb).to_f64().unwrap() - a / b).abs() < 1e-12 * a / b);
    }
}

/// 32 angles spaced evenly in (0, π/3].
fn theta_grid() -> Vec<f64> {
    (1..=32).map(|k| k as f64 * PI / 96.0).collect()
}

#[test]
fn bounds_inequalities_on_the_grid() {
    let eps = LogReal::new(DEFAULT_EPSILON).unwrap();
    for m in 1..=64u64 {
        for theta0 in theta_grid() {
            let params = ThicknessParams::new(m, theta0, DEFAULT_EPSILON).unwrap();
            let c = cusp_constants(&params);
            assert!(c.z0 > c.h0_max, "z0 > 1/eps at m = {m}, theta0 = {theta0}");
            let r = thickness_radii(&params);
            // a0 < sinh(a0): the gap is below f64 resolution of ln(a0) for tiny a0, so test it directly.
            assert!(!cusptri_core::logreal::sinh_minus_identity(r.a0).is_zero());
            assert!(r.a0 <= r.sinh_a0 && r.sinh_a0 < eps);
            for t in [0.25, 0.5, 1.0] {
                let scaled = r.a0 * LogReal::new(t).unwrap();
                assert!(r_of_t(scaled, theta0).unwrap() < scaled);
            }
            assert!(r.r0 < r.a0 / LogReal::new(2.0).unwrap());
            assert!(r.s0 < r.a0 / LogReal::new(4.0).unwrap());
            let (exact, simplified) = cusptri_core::bounds::systole_bounds(&params);
            assert!(simplified <= exact, "systole at m = {m}, theta0 = {theta0}");
            let inter = intersection_bounds(&params);
            assert!(inter.f >= LogReal::from_count(m));
            // Sector accounting: n (θ0 / 2π) vol B(r0/2) <= v_tet, with equality up to rounding.
            let ball = LogReal::new(PI).unwrap() * cusptri_core::logreal::sinh_minus_identity(r.r0);
            let sectors = inter.n_components * LogReal::new(theta0 / (2.0 * PI)).unwrap() * ball;
            assert!(sectors.ln() <= params.v_tet().ln() + 1e-12);
            if m >= 2 {
                let p = pachner_bound(&params).unwrap();
                if m >= 4 {
                    assert!(p.n_exact <= p.n_simplified.unwrap(), "N at m = {m}, theta0 = {theta0}");
                }
            }
        }
    }
}

#[test]
fn bounds_are_monotone_on_the_grid() {
    let grid = theta_grid();
    let fields = |m: u64, theta0: f64| {
        let params = ThicknessParams::new(m, theta0, DEFAULT_EPSILON).unwrap();
        let r = thickness_radii(&params);
        let (_, simplified) = cusptri_core::bounds::systole_bounds(&params);
        [cusp_constants(&params).l0, r.a0, r.r0, r.s0, simplified]
    };
    for m in 1..=64u64 {
        for (k, &theta0) in grid.iter().enumerate() {
            let here = fields(m, theta0);
            if m < 64 {
                let bigger = fields(m + 1, theta0);
                for (a, b) in here.iter().zip(&bigger) {
                    assert!(b < a, "decreasing in m at m = {m}, theta0 = {theta0}");
                }
                let params = ThicknessParams::new(m, theta0, DEFAULT_EPSILON).unwrap();
                let next = ThicknessParams::new(m + 1, theta0, DEFAULT_EPSILON).unwrap();
                assert!(intersection_bounds(&next).f > intersection_bounds(&params).f);
            }
            if k > 0 {
                let smaller = fields(m, grid[k - 1]);
                for (a, b) in here.iter().zip(&smaller) {
                    assert!(b < a, "decreasing as theta0 shrinks at m = {m}, theta0 = {theta0}");
                }
            }
        }
    }
}
