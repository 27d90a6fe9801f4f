//! The closed-form family of projected geodesics and their lifts.
//!
//! With `s = t/2` and `u = (1 - c^2) s^2`, the projection of the geodesic of
//! parameter `c` is
//!
//! ```text
//! x = k1 cos(cs) + k2 sin(cs)      y = k1 sin(cs) - k2 cos(cs)
//! k1 = cosh_sqrt(u)                k2 = c s sinhc_sqrt(u)
//! ```
//!
//! which is `cosh / sinh` for `|c| < 1`, `cos / sin` for `|c| > 1` and
//! `(1, sign(c) s)` at `|c| = 1`. All three regimes go through the same
//! kernel, so there is no `0/0` at `|c| = 1`.
//!
//! Optimality ends at `s_int(c)`: the first crossing of the negative x-axis
//! for `0 < |c| <= 2/sqrt(3)`, the landing on the unit circle at
//! `pi / sqrt(c^2 - 1)` beyond that.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::lie::{cosh_sqrt, exp2, sinhc_sqrt, Mat2, A0, A1, A2, DELTA_EXP};
use crate::quotient::{QuotientPoint, TangentVec2};
use crate::roots::{bisect_newton, EPS_ROOT};

/// `2/sqrt(3)`: largest `|c|` whose geodesic ends on the x-axis. It reaches
/// `(-1, 0)` exactly when it lands on the circle.
pub fn c_landing_threshold() -> f64 {
    2.0 / 3f64.sqrt()
}

/// `3/(2 sqrt(2))`: the geodesic that meets the x-axis orthogonally and
/// minimizes `s_int` on `(1, 2/sqrt(3)]`.
pub fn c_orthogonal() -> f64 {
    3.0 / (2.0 * 2f64.sqrt())
}

/// Band around `|c| = 1` in which the crossing root is taken on the
/// `|c| = 1` bracket.
pub const DELTA_C: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// `c = 0`, the positive x-axis.
    Axis,
    /// `0 < |c| < 1`.
    Spiral,
    /// `|c| = 1`.
    Critical,
    /// `1 < |c| <= 2/sqrt(3)`, ends on the negative x-axis.
    Crossing,
    /// `|c| > 2/sqrt(3)`, lands on the unit circle.
    Landing,
}

pub fn regime(c: f64) -> Regime {
    let a = c.abs();
    if a == 0.0 {
        Regime::Axis
    } else if a == 1.0 {
        Regime::Critical
    } else if a < 1.0 {
        Regime::Spiral
    } else if a <= c_landing_threshold() {
        Regime::Crossing
    } else {
        Regime::Landing
    }
}

/// Family parameter `c` plus the direction `P = cos(phi) A1 + sin(phi) A2`
/// of the lift.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeodesicParam {
    pub c: f64,
    pub phi: f64,
}

impl GeodesicParam {
    pub const fn new(c: f64, phi: f64) -> Self {
        Self { c, phi }
    }

    /// Unit-norm horizontal direction.
    pub fn p_matrix(&self) -> Mat2 {
        let (s, c) = self.phi.sin_cos();
        A1.scale(c) + A2.scale(s)
    }
}

/// Inverse of [`GeodesicParam::p_matrix`] for a matrix in `span{A1, A2}`.
pub fn phi_of(p: Mat2) -> f64 {
    // P = 1/2 [[sin, cos], [cos, -sin]]
    let sin = p.a - p.d;
    let cos = p.b + p.c;
    sin.atan2(cos)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathSample {
    pub s: f64,
    pub x: f64,
    pub y: f64,
}

fn u_of(c: f64, s: f64) -> f64 {
    (1.0 - c * c) * s * s
}

/// `tanh(sqrt(u)) / sqrt(u)` continued like [`sinhc_sqrt`]; bounded for all `u`.
fn tanhc_sqrt(u: f64) -> f64 {
    if u.abs() < DELTA_EXP {
        1.0 - u / 3.0 + 2.0 * u * u / 15.0
    } else if u > 0.0 {
        let r = u.sqrt();
        r.tanh() / r
    } else {
        let r = (-u).sqrt();
        r.tan() / r
    }
}

/// The pair `(k1, k2)`.
pub fn k1k2(c: f64, s: f64) -> (f64, f64) {
    let u = u_of(c, s);
    (cosh_sqrt(u), c * s * sinhc_sqrt(u))
}

/// Projected geodesic at half-arclength `s`.
pub fn planar_geodesic(c: f64, s: f64) -> QuotientPoint {
    let (k1, k2) = k1k2(c, s);
    let (sn, cs) = (c * s).sin_cos();
    QuotientPoint::new(k1 * cs + k2 * sn, k1 * sn - k2 * cs)
}

/// Position with first and second derivatives in `s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanarJet {
    pub point: QuotientPoint,
    pub velocity: TangentVec2,
    pub acceleration: TangentVec2,
}

/// Differentiates the closed form term by term:
/// `k1' = (1 - c^2) s sinhc_sqrt(u)`, `k1'' = (1 - c^2) k1`, `k2' = c k1`,
/// `k2'' = c k1'`.
pub fn planar_jet(c: f64, s: f64) -> PlanarJet {
    let u = u_of(c, s);
    let w = 1.0 - c * c;
    let k1 = cosh_sqrt(u);
    let k2 = c * s * sinhc_sqrt(u);
    let dk1 = w * s * sinhc_sqrt(u);
    let ddk1 = w * k1;
    let dk2 = c * k1;
    let ddk2 = c * dk1;
    let (sn, cs) = (c * s).sin_cos();

    let x = k1 * cs + k2 * sn;
    let y = k1 * sn - k2 * cs;
    let dx = dk1 * cs - c * k1 * sn + dk2 * sn + c * k2 * cs;
    let dy = dk1 * sn + c * k1 * cs - dk2 * cs + c * k2 * sn;
    let ddx = ddk1 * cs - 2.0 * c * dk1 * sn - c * c * k1 * cs + ddk2 * sn + 2.0 * c * dk2 * cs
        - c * c * k2 * sn;
    let ddy = ddk1 * sn + 2.0 * c * dk1 * cs - c * c * k1 * sn - ddk2 * cs
        + 2.0 * c * dk2 * sn
        + c * c * k2 * cs;
    PlanarJet {
        point: QuotientPoint::new(x, y),
        velocity: TangentVec2::new(dx, dy),
        acceleration: TangentVec2::new(ddx, ddy),
    }
}

/// `r_c^2(s) = k1^2 + k2^2 = 1 + (s sinhc_sqrt(u))^2`.
pub fn radius_sq(c: f64, s: f64) -> f64 {
    1.0 + radius_excess(c, s)
}

/// `r_c^2(s) - 1`, computed without cancellation.
pub fn radius_excess(c: f64, s: f64) -> f64 {
    let h = s * sinhc_sqrt(u_of(c, s));
    h * h
}

fn check_landing_regime(c: f64) -> Result<f64> {
    let a = c.abs();
    // the boundary value itself is accepted: it lands exactly at (-1, 0)
    if a >= c_landing_threshold() * (1.0 - 4.0 * f64::EPSILON) {
        Ok(a)
    } else {
        Err(Error::OutOfRegime { c })
    }
}

/// `pi / sqrt(c^2 - 1)`, first return to the unit circle, for `|c| >= 2/sqrt(3)`.
pub fn landing_time(c: f64) -> Result<f64> {
    let a = check_landing_regime(c)?;
    Ok(PI / (a * a - 1.0).sqrt())
}

/// Landing point `(-cos(c pi / sqrt(c^2-1)), -sin(c pi / sqrt(c^2-1)))`.
pub fn landing_point(c: f64) -> Result<QuotientPoint> {
    check_landing_regime(c)?;
    let q = c * PI / (c * c - 1.0).sqrt();
    Ok(QuotientPoint::new(-q.cos(), -q.sin()))
}

/// Half-arclength at which the geodesic stops being optimal.
///
/// `Unbounded` for `c = 0`, which runs along the positive x-axis forever.
pub fn s_int(c: f64) -> Result<f64> {
    s_int_with_tol(c, EPS_ROOT)
}

pub fn s_int_with_tol(c: f64, tol: f64) -> Result<f64> {
    let a = c.abs();
    if a == 0.0 {
        return Err(Error::Unbounded);
    }
    if !a.is_finite() {
        return Err(Error::OutOfRegime { c });
    }
    if a >= c_landing_threshold() {
        return landing_time(a);
    }
    if a < 1.0 - DELTA_C {
        // y / k1 on cs in (pi, 3 pi / 2)
        let f = |s: f64| {
            let (sn, cs) = (a * s).sin_cos();
            sn - a * s * tanhc_sqrt(u_of(a, s)) * cs
        };
        let df = |s: f64| s * tanhc_sqrt(u_of(a, s)) * (a * s).sin();
        bisect_newton(f, df, PI / a, 1.5 * PI / a, tol)
    } else {
        // y itself on cs in (pi, 2 pi)
        let f = |s: f64| {
            let u = u_of(a, s);
            let (sn, cs) = (a * s).sin_cos();
            cosh_sqrt(u) * sn - a * s * sinhc_sqrt(u) * cs
        };
        let df = |s: f64| s * sinhc_sqrt(u_of(a, s)) * (a * s).sin();
        let hi = if a < 1.0 { 1.5 * PI / a } else { 2.0 * PI / a };
        bisect_newton(f, df, PI / a, hi, tol)
    }
}

/// End of the optimal segment; `+inf` on the axis geodesic.
pub fn optimal_horizon(c: f64) -> f64 {
    s_int(c).unwrap_or(f64::INFINITY)
}

/// Abscissa of the first crossing of the negative x-axis, `0 < |c| <= 2/sqrt(3)`.
pub fn x_int(c: f64) -> Result<f64> {
    let a = c.abs();
    if a > c_landing_threshold() {
        return Err(Error::OutOfRegime { c });
    }
    let s = s_int(a)?;
    Ok(-radius_sq(a, s).sqrt())
}

/// `exp((c A0 + P) t) exp(-c A0 t)` for an arbitrary horizontal `P`.
pub fn lift_with(c: f64, p: Mat2, t: f64) -> Mat2 {
    exp2((A0.scale(c) + p).scale(t)) * exp2(A0.scale(-c * t))
}

/// Arclength-parametrized sub-Riemannian geodesic from the identity.
///
/// `X^{-1} X'` stays in the plane spanned by `A1, A2` with unit norm, so this
/// curve is horizontal for the left-translated frame.
pub fn lift(g: GeodesicParam, t: f64) -> Mat2 {
    lift_with(g.c, g.p_matrix(), t)
}

/// `exp(-c A0 t) exp((c A0 + P) t)`, horizontal for the right-translated frame
/// (`X' X^{-1}` is a unit vector in the span of `A1, A2`).
///
/// It is `lift_with` conjugated by the rotation `exp(c A0 t)`, so both curves
/// have the same projection, and at time `t_f` it meets
/// `lift_with(c, P, t_f)` once `P` is replaced by `R P R^T`, `R = exp(c A0 t_f)`.
pub fn right_geodesic_with(c: f64, p: Mat2, t: f64) -> Mat2 {
    exp2(A0.scale(-c * t)) * exp2((A0.scale(c) + p).scale(t))
}

/// `n` evenly spaced samples of the projected geodesic on `[0, s_max]`.
pub fn sample_path(c: f64, s_max: f64, n: usize) -> Result<Vec<PathSample>> {
    if n < 2 || !(s_max > 0.0) || !s_max.is_finite() {
        return Err(Error::BadGrid { n });
    }
    Ok((0..n)
        .map(|i| {
            let s = if i == n - 1 {
                s_max
            } else {
                s_max * i as f64 / (n - 1) as f64
            };
            let p = planar_geodesic(c, s);
            PathSample { s, x: p.x, y: p.y }
        })
        .collect())
}
