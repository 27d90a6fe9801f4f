//! The compact real form: planar geodesics of the same problem on `SU(2)`.
//!
//! They follow from the `SL(2)` family by `c -> i omega`, `t -> -i s`, live
//! in the closed unit disc and end on the unit circle at
//! `s = pi / sqrt(1 + omega^2)`. A map `omega -> c` pairs each of them with
//! the `SL(2)` geodesic landing at the same point.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};
use crate::family::landing_point;
use crate::quotient::QuotientPoint;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OmegaParam {
    pub omega: f64,
}

fn beta(omega: f64) -> f64 {
    omega.hypot(1.0)
}

pub fn su2_planar_geodesic(omega: f64, s: f64) -> QuotientPoint {
    let b = beta(omega);
    let (k1, k2) = ((b * s).cos(), omega / b * (b * s).sin());
    let (sn, cs) = (omega * s).sin_cos();
    QuotientPoint::new(k1 * cs + k2 * sn, k1 * sn - k2 * cs)
}

pub fn su2_landing_time(omega: f64) -> f64 {
    PI / beta(omega)
}

pub fn su2_landing_point(omega: f64) -> QuotientPoint {
    let q = omega * PI / beta(omega);
    QuotientPoint::new(-q.cos(), -q.sin())
}

/// The `SL(2)` parameter whose geodesic lands where the `SU(2)` geodesic of
/// `omega` does. Decreasing, with `c(0) = -2/sqrt(3)` taken from the
/// `omega >= 0` branch.
pub fn c_of_omega(omega: f64) -> f64 {
    let b = beta(omega);
    if omega >= 0.0 {
        // 4 w (w - b) = -4 w / (w + b), avoiding the cancellation
        let t = 4.0 * omega / (omega + b);
        let num = omega * omega + 4.0 - t;
        let den = 3.0 - t;
        -(num / den).sqrt()
    } else {
        let t = 4.0 * omega / (b - omega);
        let num = (omega + 2.0 * b).powi(2);
        let den = 3.0 + t;
        (num / den).sqrt()
    }
}

/// Distance between the two landing points.
pub fn landing_match_error(omega: f64) -> f64 {
    match landing_point(c_of_omega(omega)) {
        Ok(p) => p.dist(su2_landing_point(omega)),
        Err(_) => f64::INFINITY,
    }
}

/// Points reached at time `s`, over an `omega` grid uniform in `atan(omega)`.
/// Geodesics that have already landed contribute their landing point.
pub fn reachable_boundary(s: f64, n: usize) -> Result<Vec<QuotientPoint>> {
    if n < 2 || !(s > 0.0) || !s.is_finite() {
        return Err(Error::BadGrid { n });
    }
    Ok(boundary_omegas(n)
        .map(|omega| {
            if s >= su2_landing_time(omega) {
                su2_landing_point(omega)
            } else {
                su2_planar_geodesic(omega, s)
            }
        })
        .collect())
}

/// `n` values `tan(w)` at the midpoints of `n` equal cells of `(-pi/2, pi/2)`.
pub fn boundary_omegas(n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| (-FRAC_PI_2 + PI * (i as f64 + 0.5) / n as f64).tan())
}
