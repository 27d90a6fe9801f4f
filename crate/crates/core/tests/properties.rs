use std::f64::consts::PI;

use proptest::prelude::*;

use sl2_synthesis::automorphisms::{
    aut_matrix_from_group, factorize, h_matrix, i_matrix, o_matrix, realize, Branch, SO12Matrix,
};
use sl2_synthesis::family::{
    lift, lift_with, optimal_horizon, planar_geodesic, radius_sq, right_geodesic_with, s_int,
    GeodesicParam,
};
use sl2_synthesis::lie::{adjoint_matrix, bracket, exp2, A0, A1, A2};
use sl2_synthesis::quotient::{project, recover_rotation};
use sl2_synthesis::su2::{c_of_omega, su2_planar_geodesic};
use sl2_synthesis::synthesis::{classify_point, distance_to_class, solve, CutLocusClass};
use sl2_synthesis::{Mat2, QuotientPoint, Sl2Coord};

fn algebra() -> impl Strategy<Value = Mat2> {
    (-2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64)
        .prop_map(|(a, b, c)| A0.scale(a) + A1.scale(b) + A2.scale(c))
}

/// Group elements of moderate size, as products of exponentials.
fn group() -> impl Strategy<Value = Mat2> {
    (algebra(), algebra()).prop_map(|(a, b)| exp2(a) * exp2(b))
}

fn branch() -> impl Strategy<Value = Branch> {
    prop_oneof![Just(Branch::I0), Just(Branch::I1), Just(Branch::I2)]
}

fn speed(v: Mat2) -> (f64, f64) {
    let c = Sl2Coord::from_matrix(v);
    (c.v0, c.v1.hypot(c.v2))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn exp_is_unimodular(m in algebra(), t in -2.0..2.0f64) {
        let e = exp2(m.scale(t));
        prop_assert!((e.det() - 1.0).abs() <= 1e-11 * e.frobenius_norm().powi(2).max(1.0));
        let back = e * exp2(m.scale(-t));
        prop_assert!(back.max_abs_diff(Mat2::IDENTITY) <= 1e-11 * e.frobenius_norm().powi(2));
    }

    #[test]
    fn adjoint_is_a_representation(a in algebra(), b in algebra()) {
        let lhs = adjoint_matrix(bracket(a, b));
        let (x, y) = (adjoint_matrix(a), adjoint_matrix(b));
        prop_assert!((lhs - (x * y - y * x)).abs().max() <= 1e-12);
    }

    #[test]
    fn projection_is_conjugation_invariant(x in group(), theta in -PI..PI) {
        let k = Mat2::rotation(theta);
        let p = project(x).unwrap();
        let q = project(k * x * k.transpose()).unwrap();
        prop_assert!(p.dist(q) <= 1e-12 * (1.0 + p.radius_sq()));
    }

    #[test]
    fn inverse_reflects_class(x in group()) {
        let p = project(x).unwrap();
        let q = project(x.sl2_inverse()).unwrap();
        prop_assert!((p.x - q.x).abs() <= 1e-12 * (1.0 + p.x.abs()));
        prop_assert!((p.y + q.y).abs() <= 1e-12 * (1.0 + p.y.abs()));
    }

    #[test]
    fn rotation_is_recovered(x in group(), theta in -PI..PI) {
        let p = project(x).unwrap();
        prop_assume!(p.radius_sq() > 1.0 + 1e-3);
        let y = Mat2::rotation(theta) * x * Mat2::rotation(theta).transpose();
        let r = recover_rotation(x, y).unwrap();
        prop_assert!(r.unique);
        let err = (r.k * x * r.k.transpose()).max_abs_diff(y);
        prop_assert!(err <= 1e-9 * x.frobenius_norm().max(1.0));
    }

    #[test]
    fn planar_family_is_reflection_symmetric(c in -3.0..3.0f64, s in 0.0..6.0f64) {
        let p = planar_geodesic(c, s);
        let q = planar_geodesic(-c, s);
        let tol = 1e-12 * (1.0 + p.radius_sq());
        prop_assert!((p.x - q.x).abs() <= tol && (p.y + q.y).abs() <= tol);
    }

    #[test]
    fn radius_grows_for_small_c(c in -1.0..1.0f64, s in 0.0..5.0f64, ds in 1e-3..1.0f64) {
        prop_assert!(radius_sq(c, s + ds) >= radius_sq(c, s));
    }

    #[test]
    fn lift_projection_ignores_phi(c in -2.0..2.0f64, phi in -PI..PI, t in 0.0..6.0f64) {
        let p = project(lift(GeodesicParam::new(c, phi), t)).unwrap();
        let q = planar_geodesic(c, t / 2.0);
        prop_assert!(p.dist(q) <= 1e-9 * (1.0 + q.radius_sq()));
    }

    #[test]
    fn lift_has_unit_left_speed(c in -2.0..2.0f64, phi in -PI..PI, t in 0.1..4.0f64) {
        let p = GeodesicParam::new(c, phi).p_matrix();
        let h = 1e-5;
        let x = lift_with(c, p, t);
        let d = (lift_with(c, p, t + h) - lift_with(c, p, t - h)).scale(0.5 / h);
        let (vertical, horizontal) = speed(x.sl2_inverse() * d);
        prop_assert!(vertical.abs() <= 1e-7 && (horizontal - 1.0).abs() <= 1e-7);
    }

    #[test]
    fn right_geodesic_has_unit_right_speed(c in -2.0..2.0f64, phi in -PI..PI, t in 0.1..4.0f64) {
        let p = GeodesicParam::new(c, phi).p_matrix();
        let h = 1e-5;
        let x = right_geodesic_with(c, p, t);
        let d = (right_geodesic_with(c, p, t + h) - right_geodesic_with(c, p, t - h)).scale(0.5 / h);
        let (vertical, horizontal) = speed(d * x.sl2_inverse());
        prop_assert!(vertical.abs() <= 1e-7 && (horizontal - 1.0).abs() <= 1e-7);
    }

    #[test]
    fn solve_is_right_invariant(xi in group(), c in 0.3..2.5f64, phi in -PI..PI, u in 0.1..0.9f64) {
        let t = 2.0 * optimal_horizon(c) * u;
        let y = lift(GeodesicParam::new(c, phi), t);
        let xf = y * xi;
        let a = solve(xi, xf).unwrap();
        let b = solve(Mat2::IDENTITY, xf * xi.sl2_inverse()).unwrap();
        prop_assert!((a.c - b.c).abs() <= 1e-9 && (a.t_f - b.t_f).abs() <= 1e-9);
        prop_assert!(a.at(xi, a.t_f).max_abs_diff(xf) <= 1e-6 * xf.frobenius_norm().max(1.0));
    }

    #[test]
    fn distance_stays_within_cut_time(x in 1.0..4.0f64, y in 0.05..4.0f64) {
        let p = QuotientPoint::new(x - 2.5, y * if x > 2.0 { 1.0 } else { -1.0 });
        prop_assume!(p.radius_sq() > 1.0 + 1e-3);
        let d = distance_to_class(p).unwrap();
        prop_assert!(d.t_f <= 2.0 * optimal_horizon(d.c) + 1e-6);
        prop_assert!(planar_geodesic(d.c, d.t_f / 2.0).dist(p) <= 1e-8 * (1.0 + p.radius_sq()));
        prop_assert_eq!(classify_point(p), CutLocusClass::Regular);
    }

    #[test]
    fn automorphism_action_is_multiplicative(a in group(), b in group()) {
        let ab = aut_matrix_from_group(a * b).unwrap().into_inner();
        let prod = aut_matrix_from_group(a).unwrap().into_inner()
            * aut_matrix_from_group(b).unwrap().into_inner();
        prop_assert!((ab - prod).abs().max() <= 1e-9 * prod.abs().max().max(1.0));
    }

    #[test]
    fn factorization_round_trips(t1 in -PI..PI, b in branch(), z in -3.0..3.0f64, t2 in -PI..PI) {
        let m = o_matrix(t1) * i_matrix(b) * h_matrix(z) * o_matrix(t2);
        let f = factorize(&SO12Matrix::new(m).unwrap()).unwrap();
        prop_assert!((f.compose() - m).abs().max() <= 1e-9 * m.abs().max());
        let back = aut_matrix_from_group(realize(&f)).unwrap().into_inner();
        prop_assert!((back - m).abs().max() <= 1e-9 * m.abs().max());
    }

    #[test]
    fn su2_reflection(omega in -5.0..5.0f64, s in 0.0..3.0f64) {
        let p = su2_planar_geodesic(omega, s);
        let q = su2_planar_geodesic(-omega, s);
        prop_assert!((p.x - q.x).abs() <= 1e-12 && (p.y + q.y).abs() <= 1e-12);
        prop_assert!(p.radius_sq() <= 1.0 + 1e-12);
    }

    #[test]
    fn c_of_omega_is_odd(omega in 1e-6..50.0f64) {
        prop_assert!((c_of_omega(omega) + c_of_omega(-omega)).abs() <= 1e-12 * c_of_omega(omega).abs());
    }

    #[test]
    fn s_int_continuous_at_one(h in 1e-9..1e-7f64) {
        let (lo, hi, mid) = (s_int(1.0 - h).unwrap(), s_int(1.0 + h).unwrap(), s_int(1.0).unwrap());
        prop_assert!((lo - mid).abs() <= 1e-6 && (hi - mid).abs() <= 1e-6);
    }
}
