//! Endpoint solver: from a pair of matrices to the minimizing geodesic.
//!
//! Right invariance moves the start to the identity. The target class is
//! located in the fan of planar geodesics by bisection on `c`, and the
//! lifted endpoint is rotated onto the target by the conjugating rotation
//! recovered from the two orbit offsets.
//!
//! For `c > 0` the optimal arcs fill the upper half plane without crossing,
//! ordered so that larger `c` stays closer to the unit circle. A point at
//! radius `R` is enclosed by the arc of `c` (meaning the minimizing
//! parameter is larger than `c`) when its polar angle lies past the arc's
//! crossings of the circle of radius `R`. This predicate is monotone in `c`
//! and drives the bisection.

use std::f64::consts::{FRAC_PI_2, PI};
#[cfg(debug_assertions)]
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::family::{
    c_landing_threshold, landing_time, lift_with, planar_geodesic, planar_jet, right_geodesic_with,
    s_int_with_tol, x_int,
};
use crate::lie::{exp2, Mat2, A0, A2};
use crate::quotient::{check_unimodular, project, rotation_between, QuotientPoint, EPS_Q};
use crate::roots::{bisect_predicate, EPS_ROOT};

/// Endpoint tolerance, relative to `max(1, |X_f|)`.
pub const EPS_SYNTH: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Root and bisection tolerance.
    pub root: f64,
    /// Accepted endpoint residual, relative to `max(1, |X_f|)`.
    pub synth: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            root: EPS_ROOT,
            synth: EPS_SYNTH,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutLocusClass {
    Regular,
    SingularCircle,
    NegativeAxisSegment,
    StartPoint,
}

impl CutLocusClass {
    pub fn is_cut(self) -> bool {
        matches!(self, Self::SingularCircle | Self::NegativeAxisSegment)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Regular => "regular",
            Self::SingularCircle => "singular-circle",
            Self::NegativeAxisSegment => "negative-axis",
            Self::StartPoint => "start",
        }
    }
}

/// Tags a class point. The checks run in order, so the tags never overlap.
pub fn classify_point(p: QuotientPoint) -> CutLocusClass {
    if p.dist(QuotientPoint::START) <= EPS_Q {
        CutLocusClass::StartPoint
    } else if (p.radius_sq() - 1.0).abs() <= EPS_Q {
        CutLocusClass::SingularCircle
    } else if p.y.abs() <= EPS_Q && p.x <= -1.0 + EPS_Q {
        CutLocusClass::NegativeAxisSegment
    } else {
        CutLocusClass::Regular
    }
}

pub fn classify_cut_locus(x: Mat2) -> Result<CutLocusClass> {
    Ok(classify_point(project(x)?))
}

/// Minimizing geodesic to a class point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassDistance {
    /// Sub-Riemannian distance, `2 s`.
    pub t_f: f64,
    pub c: f64,
    pub s: f64,
    /// Set on the cut locus, where this is one of several minimizers.
    pub cut: bool,
}

impl ClassDistance {
    fn new(c: f64, s: f64, cut: bool) -> Self {
        Self {
            t_f: 2.0 * s,
            c,
            s,
            cut,
        }
    }
}

pub fn distance_to_class(p: QuotientPoint) -> Result<ClassDistance> {
    distance_to_class_with(p, &Tolerances::default())
}

pub fn distance_to_class_with(p: QuotientPoint, tol: &Tolerances) -> Result<ClassDistance> {
    if !(p.x.is_finite() && p.y.is_finite()) {
        return Err(Error::Unreachable { x: p.x, y: p.y });
    }
    if p.radius_sq() < 1.0 - EPS_Q {
        return Err(Error::Unreachable { x: p.x, y: p.y });
    }
    #[cfg(debug_assertions)]
    debug_assert!(fan_checked(), "fan ordering pre-check failed");

    let class = classify_point(p);
    if class == CutLocusClass::StartPoint {
        return Err(Error::StartPoint);
    }
    // work in the upper half plane, the lower one is its mirror image
    let sign = if p.y < 0.0 { -1.0 } else { 1.0 };
    let q = QuotientPoint::new(p.x, p.y.abs());
    let d = match class {
        CutLocusClass::SingularCircle => on_circle(q),
        CutLocusClass::NegativeAxisSegment => on_negative_axis(q, tol)?,
        _ if q.y <= EPS_Q => ClassDistance::new(0.0, q.x.acosh(), false),
        _ => regular(q, tol)?,
    };
    Ok(ClassDistance { c: sign * d.c, ..d })
}

/// Landing points: the polar angle is `pi (q - 1)` with `q = c / sqrt(c^2 - 1)`.
fn on_circle(q: QuotientPoint) -> ClassDistance {
    let theta = q.y.atan2(q.x);
    let qq = 1.0 + theta / PI;
    let c = qq / (qq * qq - 1.0).sqrt();
    ClassDistance::new(c, PI / (c * c - 1.0).sqrt(), true)
}

/// `y = 0, x <= -1`: `x_int` is increasing on `(0, 2/sqrt(3)]`, the `c > 0`
/// representative is returned.
fn on_negative_axis(q: QuotientPoint, tol: &Tolerances) -> Result<ClassDistance> {
    let c_max = c_landing_threshold();
    if (q.x + 1.0).abs() <= EPS_Q {
        return Ok(ClassDistance::new(c_max, landing_time(c_max)?, true));
    }
    let c = bisect_predicate(
        |c| x_int(c).map_or(true, |xi| xi < q.x),
        0.0,
        c_max,
        tol.root * 1e-3,
    );
    Ok(ClassDistance::new(c, s_int_with_tol(c, tol.root)?, true))
}

fn regular(q: QuotientPoint, tol: &Tolerances) -> Result<ClassDistance> {
    let rho = radius_excess_of(q).sqrt();
    let theta = q.y.atan2(q.x);
    let w = bisect_predicate(
        |w| encloses(w.tan(), rho, theta, tol.root),
        0.0,
        FRAC_PI_2,
        0.0,
    );
    let c = w.tan();
    let horizon = horizon(c, tol.root);
    let s = crossings(c, rho, horizon)
        .into_iter()
        .map(|s| (angle_gap(planar_geodesic(c, s), theta), s))
        .min_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)))
        .map(|(_, s)| s)
        .ok_or(Error::Unreachable { x: q.x, y: q.y })?;
    let (c, s) = polish(q, c, s);
    Ok(ClassDistance::new(c, s, false))
}

fn radius_excess_of(q: QuotientPoint) -> f64 {
    // (x - 1)(x + 1) + y^2 keeps the digits near the circle
    ((q.x - 1.0) * (q.x + 1.0) + q.y * q.y).max(0.0)
}

fn angle_gap(p: QuotientPoint, theta: f64) -> f64 {
    let d = (p.y.atan2(p.x) - theta).rem_euclid(2.0 * PI);
    d.min(2.0 * PI - d)
}

fn horizon(c: f64, tol: f64) -> f64 {
    s_int_with_tol(c, tol).unwrap_or(f64::INFINITY)
}

/// Values of `s` in `[0, s_end]` with `r_c(s)^2 - 1 = rho^2`, in increasing order.
pub fn crossings(c: f64, rho: f64, s_end: f64) -> Vec<f64> {
    let w = (1.0 - c) * (1.0 + c);
    let a = w.abs().sqrt();
    let z = a * rho;
    let mut out = Vec::with_capacity(2);
    if w >= 0.0 {
        let s = if z < 1e-8 {
            rho * (1.0 - z * z / 6.0)
        } else {
            z.asinh() / a
        };
        out.push(s);
    } else if z <= 1.0 {
        let s1 = if z < 1e-8 {
            rho * (1.0 + z * z / 6.0)
        } else {
            z.asin() / a
        };
        out.push(s1);
        out.push(PI / a - s1);
    }
    let slack = 1e-12 * s_end.max(1.0);
    out.retain(|&s| s.is_finite() && s <= s_end + slack);
    out
}

/// Is the point at radius `sqrt(1 + rho^2)` and angle `theta` enclosed by the
/// optimal arc of `c`?
fn encloses(c: f64, rho: f64, theta: f64, tol: f64) -> bool {
    let xs = crossings(c, rho, horizon(c, tol));
    let angle = |s: f64| {
        let p = planar_geodesic(c, s);
        p.y.atan2(p.x)
    };
    match xs.as_slice() {
        [] => false,
        [s] => theta > angle(*s),
        [s1, s2, ..] => theta > angle(*s1) && theta < angle(*s2),
    }
}

/// Two Newton steps on `planar_geodesic(c, s) = q`, kept only if they help.
fn polish(q: QuotientPoint, mut c: f64, mut s: f64) -> (f64, f64) {
    let err = |c: f64, s: f64| planar_geodesic(c, s).dist(q);
    let mut e = err(c, s);
    for _ in 0..2 {
        let jet = planar_jet(c, s);
        let h = 1e-7 * c.abs().max(1e-3);
        let pp = planar_geodesic(c + h, s);
        let pm = planar_geodesic(c - h, s);
        let (xc, yc) = ((pp.x - pm.x) / (2.0 * h), (pp.y - pm.y) / (2.0 * h));
        let (xs, ys) = (jet.velocity.dx, jet.velocity.dy);
        let det = xc * ys - xs * yc;
        if det == 0.0 || !det.is_finite() {
            break;
        }
        let (fx, fy) = (jet.point.x - q.x, jet.point.y - q.y);
        let dc = (fx * ys - xs * fy) / det;
        let ds = (xc * fy - fx * yc) / det;
        let (c2, s2) = (c - dc, s - ds);
        let e2 = err(c2, s2);
        if !(e2 < e) {
            break;
        }
        (c, s, e) = (c2, s2, e2);
    }
    (c, s)
}

/// Checks that the enclosure predicate flips at most once along a `c` grid
/// for a few probe points.
pub fn fan_is_monotone(cs: &[f64], probes: &[QuotientPoint]) -> bool {
    probes.iter().all(|p| {
        let rho = radius_excess_of(*p).sqrt();
        let theta = p.y.atan2(p.x);
        let flags: Vec<bool> = cs
            .iter()
            .map(|&c| encloses(c, rho, theta, EPS_ROOT))
            .collect();
        flags.windows(2).all(|w| w[0] || !w[1])
    })
}

#[cfg(debug_assertions)]
fn fan_checked() -> bool {
    static CHECK: OnceLock<bool> = OnceLock::new();
    *CHECK.get_or_init(|| {
        let cs: Vec<f64> = (1..40)
            .map(|i| (i as f64 * FRAC_PI_2 / 40.0).tan())
            .collect();
        let probes = [
            QuotientPoint::new(0.0, 1.5),
            QuotientPoint::new(-2.0, 0.5),
            QuotientPoint::new(1.2, 0.3),
            QuotientPoint::new(-0.9, 0.6),
            QuotientPoint::new(3.0, 3.0),
        ];
        fan_is_monotone(&cs, &probes)
    })
}

/// The bisection midpoints in `c` for target `p` from an initial bracket.
///
/// `p` must lie in the upper half plane.
pub fn bisection_iterates(p: QuotientPoint, mut lo: f64, mut hi: f64, n: usize) -> Vec<f64> {
    let rho = radius_excess_of(p).sqrt();
    let theta = p.y.atan2(p.x);
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let mid = 0.5 * (lo + hi);
        out.push(mid);
        if encloses(mid, rho, theta, EPS_ROOT) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SynthesisSolution {
    pub c: f64,
    pub t_f: f64,
    /// Unit horizontal direction of the lift.
    pub p: Mat2,
    /// Rotation with `K Y_f K^T` equal to the reduced target.
    pub k: Mat2,
    /// `|lift(t_f) X_i - X_f|` in the Frobenius norm.
    pub residual: f64,
    /// Target on the cut locus; this is one of several minimizers.
    pub cut: bool,
}

impl SynthesisSolution {
    /// `lift_with(c, P, t) X_i`. Reaches `X_f` at `t_f` but is horizontal for
    /// right-translated fields only when `X_i` is a rotation.
    pub fn lift_at(&self, xi: Mat2, t: f64) -> Mat2 {
        lift_with(self.c, self.p, t) * xi
    }

    /// Direction of the right-horizontal geodesic with the same endpoints.
    pub fn right_direction(&self) -> Mat2 {
        let r = exp2(A0.scale(self.c * self.t_f));
        r * self.p * r.transpose()
    }

    /// Point at arclength `t` on the minimizing geodesic from `xi`, horizontal
    /// for the right-translated frame.
    pub fn at(&self, xi: Mat2, t: f64) -> Mat2 {
        right_geodesic_with(self.c, self.right_direction(), t) * xi
    }
}

pub fn solve(xi: Mat2, xf: Mat2) -> Result<SynthesisSolution> {
    solve_with(xi, xf, &Tolerances::default())
}

pub fn solve_with(xi: Mat2, xf: Mat2, tol: &Tolerances) -> Result<SynthesisSolution> {
    check_unimodular(xi)?;
    check_unimodular(xf)?;
    let target = xf * xi.sl2_inverse();
    let p = project(target)?;
    let d = distance_to_class_with(p, tol)?;
    let yf = lift_with(d.c, A2, d.t_f);
    let rot = rotation_between(yf, target);
    let k = rot.k;
    let pm = k * A2 * k.transpose();
    let mut sol = SynthesisSolution {
        c: d.c,
        t_f: d.t_f,
        p: pm,
        k,
        residual: 0.0,
        cut: d.cut,
    };
    sol.residual = verify_solution(&sol, xi, xf);
    let allowed = tol.synth * xf.frobenius_norm().max(1.0);
    if !(sol.residual <= allowed) {
        return Err(Error::ResidualTooLarge {
            residual: sol.residual,
            tol: allowed,
        });
    }
    Ok(sol)
}

/// Frobenius distance between the reconstructed endpoint and `xf`.
pub fn verify_solution(sol: &SynthesisSolution, xi: Mat2, xf: Mat2) -> f64 {
    sol.lift_at(xi, sol.t_f).frobenius_dist(xf)
}
