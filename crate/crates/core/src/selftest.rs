//! Quick invariant checks across all modules, runnable from the binary.
//!
//! Sample counts are small so the whole run stays well under a minute.
//! Inputs come from a fixed-seed generator, so the outcome is reproducible.
//! The connection used by the geodesic-equation suite is injectable, which
//! lets a test verify that a corrupted implementation is caught.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::automorphisms::{
    aut_matrix_from_group, factorize, h_matrix, i_matrix, is_lie_automorphism, is_so12, o_matrix,
    realize, Branch, SO12Matrix,
};
use crate::error::Result;
use crate::family::{
    c_landing_threshold, c_orthogonal, lift, optimal_horizon, planar_geodesic, planar_jet, s_int,
    GeodesicParam,
};
use crate::lie::{bracket, exp2, Mat2, A0, A1, A2};
use crate::quotient::{christoffel, project, Christoffel, QuotientPoint, TangentVec2};
use crate::su2::landing_match_error;
use crate::synthesis::solve;

pub type ChristoffelFn = fn(QuotientPoint) -> Result<Christoffel>;

#[derive(Debug, Clone, Copy)]
pub struct Hooks {
    pub christoffel: ChristoffelFn,
    pub seed: u64,
}

impl Default for Hooks {
    fn default() -> Self {
        Self {
            christoffel,
            seed: 0x5eed,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn report(name: &'static str, worst: f64, bound: f64) -> SuiteReport {
    SuiteReport {
        name,
        passed: worst <= bound,
        detail: format!("worst {worst:.3e} (bound {bound:.0e})"),
    }
}

pub fn run(hooks: &Hooks) -> Vec<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(hooks.seed);
    vec![
        lie_suite(&mut rng),
        connection_suite(hooks.christoffel),
        family_suite(),
        synthesis_suite(&mut rng),
        su2_suite(&mut rng),
        automorphism_suite(&mut rng),
    ]
}

pub fn all_passed(reports: &[SuiteReport]) -> bool {
    reports.iter().all(|r| r.passed)
}

fn lie_suite(rng: &mut ChaCha8Rng) -> SuiteReport {
    let mut worst = (bracket(A0, A1) + A2).frobenius_norm()
        + (bracket(A0, A2) - A1).frobenius_norm()
        + (bracket(A1, A2) - A0).frobenius_norm();
    for _ in 0..200 {
        let m = A0.scale(rng.gen_range(-3.0..3.0))
            + A1.scale(rng.gen_range(-3.0..3.0))
            + A2.scale(rng.gen_range(-3.0..3.0));
        let e = exp2(m);
        worst = worst.max((e.det() - 1.0).abs() / e.frobenius_norm().powi(2).max(1.0));
        // exp(M) exp(-M) = I
        worst =
            worst.max((e * exp2(-m)).frobenius_dist(Mat2::IDENTITY) / e.frobenius_norm().powi(2));
    }
    report("lie", worst, 1e-12)
}

/// The closed-form curves against the geodesic equations built from `gamma`.
fn connection_suite(gamma: ChristoffelFn) -> SuiteReport {
    let mut worst: f64 = 0.0;
    for c in [0.3, 0.9, 1.0, 1.1, 1.5, 3.0] {
        let end = optimal_horizon(c).min(6.0);
        for i in 1..20 {
            let s = end * i as f64 / 20.0;
            let jet = planar_jet(c, s);
            let Ok(g) = gamma(jet.point) else { continue };
            let a = g.acceleration(jet.velocity);
            let err = TangentVec2::new(a.dx - jet.acceleration.dx, a.dy - jet.acceleration.dy);
            worst = worst.max(err.norm() / (1.0 + jet.acceleration.norm()));
        }
    }
    report("connection", worst, 1e-8)
}

fn family_suite() -> SuiteReport {
    let pi = std::f64::consts::PI;
    let mut worst: f64 = 0.0;
    let q = planar_geodesic(c_landing_threshold(), 3f64.sqrt() * pi);
    worst = worst.max(q.dist(QuotientPoint::new(-1.0, 0.0)));
    worst = worst.max((s_int(c_orthogonal()).unwrap_or(f64::NAN) - 2f64.sqrt() * pi).abs());
    worst = worst.max((s_int(1.0).unwrap_or(f64::NAN) - 4.493_409_457_909_064).abs());
    for c in [0.2, 0.8, 1.3, 2.0] {
        for phi in [0.0, 1.0, -2.0] {
            let t = optimal_horizon(c).min(4.0);
            let p = project(lift(GeodesicParam::new(c, phi), t)).map_or(f64::NAN, |p| {
                p.dist(planar_geodesic(c, t / 2.0)) / (1.0 + p.radius_sq())
            });
            worst = worst.max(p);
        }
    }
    report(
        "family",
        if worst.is_nan() { f64::INFINITY } else { worst },
        1e-9,
    )
}

fn synthesis_suite(rng: &mut ChaCha8Rng) -> SuiteReport {
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let c = rng.gen_range(0.3..3.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let phi = rng.gen_range(-3.0..3.0);
        let t = 2.0 * optimal_horizon(c) * rng.gen_range(0.05..0.95);
        let xf = lift(GeodesicParam::new(c, phi), t);
        worst = worst.max(match solve(Mat2::IDENTITY, xf) {
            Ok(sol) => (sol.c - c).abs().max((sol.t_f - t).abs()),
            Err(_) => f64::INFINITY,
        });
    }
    report("synthesis", worst, 1e-6)
}

fn su2_suite(rng: &mut ChaCha8Rng) -> SuiteReport {
    let worst = (0..50)
        .map(|_| landing_match_error(rng.gen_range(-5.0..5.0)))
        .fold(landing_match_error(0.0), f64::max);
    report("su2", worst, 1e-9)
}

fn automorphism_suite(rng: &mut ChaCha8Rng) -> SuiteReport {
    let mut worst: f64 = 0.0;
    let mut agree = true;
    for i in 0..50 {
        let branch = Branch::from_index(i % 3).unwrap_or(Branch::I0);
        let m = o_matrix(rng.gen_range(-3.0..3.0))
            * i_matrix(branch)
            * h_matrix(rng.gen_range(-2.0..2.0))
            * o_matrix(rng.gen_range(-3.0..3.0));
        let Ok(so) = SO12Matrix::new(m) else {
            return report("automorphisms", f64::INFINITY, 1e-9);
        };
        let back = factorize(&so)
            .and_then(|f| aut_matrix_from_group(realize(&f)))
            .map_or(f64::INFINITY, |b| (b.into_inner() - m).abs().max());
        worst = worst.max(back);
        let bad = m + nalgebra::Matrix3::from_fn(|_, _| rng.gen_range(-1e-3..1e-3));
        agree &= is_lie_automorphism(&m) == Ok(true) && is_so12(&m);
        agree &= is_lie_automorphism(&bad) == Ok(false) && !is_so12(&bad);
    }
    report(
        "automorphisms",
        if agree { worst } else { f64::INFINITY },
        1e-9,
    )
}
