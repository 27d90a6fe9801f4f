//! The orbit space `SL(2)/SO(2)` of the conjugation action `X -> K X K^T`.
//!
//! A class is the point `(x, y) = ((a + d)/2, (b - c)/2)` of the plane with
//! `x^2 + y^2 >= 1`. The unit circle is the singular stratum (isotropy the whole
//! of `SO(2)`); everything strictly outside is regular, with isotropy `{+1, -1}`.
//!
//! Each `X` splits as `[[x, y], [-y, x]] + [[m, k], [k, -m]]` with
//! `m^2 + k^2 = x^2 + y^2 - 1`; conjugation by a rotation through `theta`
//! rotates `(m, k)` through `-2 theta`.

use nalgebra::Matrix2;

use crate::error::{Error, Result};
use crate::family;
use crate::lie::{Mat2, EPS_DET};

/// Width of the band around the unit circle treated as singular.
pub const EPS_Q: f64 = 1e-9;
/// Relative tolerance for matching two conjugacy classes.
pub const EPS_MATCH: f64 = 1e-8;

/// Conjugacy class coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuotientPoint {
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stratum {
    Regular,
    Singular,
    /// Strictly inside the unit disc; not the image of any `SL(2)` matrix.
    Interior,
}

impl QuotientPoint {
    pub const START: QuotientPoint = QuotientPoint { x: 1.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn radius_sq(self) -> f64 {
        self.x * self.x + self.y * self.y
    }

    /// Polar angle in `(-pi, pi]`.
    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    pub fn stratum(self) -> Stratum {
        let excess = self.radius_sq() - 1.0;
        if excess.abs() <= EPS_Q {
            Stratum::Singular
        } else if excess > 0.0 {
            Stratum::Regular
        } else {
            Stratum::Interior
        }
    }

    pub fn is_regular(self) -> bool {
        self.stratum() == Stratum::Regular
    }

    pub fn dist(self, other: QuotientPoint) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    /// `x^2 + y^2 - 1`, or `SingularPoint` when not strictly regular.
    fn regular_excess(self) -> Result<f64> {
        let e = self.radius_sq() - 1.0;
        if e > EPS_Q {
            Ok(e)
        } else {
            Err(Error::SingularPoint {
                x: self.x,
                y: self.y,
            })
        }
    }
}

/// Tangent vector in the `(d/dx, d/dy)` frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangentVec2 {
    pub dx: f64,
    pub dy: f64,
}

impl TangentVec2 {
    pub const ZERO: TangentVec2 = TangentVec2 { dx: 0.0, dy: 0.0 };

    pub const fn new(dx: f64, dy: f64) -> Self {
        Self { dx, dy }
    }

    pub fn norm(self) -> f64 {
        self.dx.hypot(self.dy)
    }
}

/// Determinant check with a tolerance scaled to the size of the entries, so
/// that products of large group elements are not rejected for rounding.
pub fn check_unimodular(x: Mat2) -> Result<()> {
    let det = x.det();
    let scale = 1f64.max((x.a * x.d).abs() + (x.b * x.c).abs());
    if x.is_finite() && (det - 1.0).abs() <= EPS_DET * scale {
        Ok(())
    } else {
        Err(Error::NotUnimodular { det })
    }
}

/// The natural projection `pi : SL(2) -> SL(2)/SO(2)`.
pub fn project(x: Mat2) -> Result<QuotientPoint> {
    check_unimodular(x)?;
    Ok(project_unchecked(x))
}

pub(crate) fn project_unchecked(x: Mat2) -> QuotientPoint {
    QuotientPoint::new(0.5 * (x.a + x.d), 0.5 * (x.b - x.c))
}

/// The symmetric traceless part `(m, k)` of `X = [[x, y], [-y, x]] + [[m, k], [k, -m]]`.
fn orbit_offset(x: Mat2) -> (f64, f64) {
    (0.5 * (x.a - x.d), 0.5 * (x.b + x.c))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationRecovery {
    /// `K = [[cos t, sin t], [-sin t, cos t]]` with `K X1 K^T = X2`.
    pub k: Mat2,
    /// The angle `t`, in `(-pi/2, pi/2]`.
    pub theta: f64,
    /// `false` on the singular stratum, where every rotation works and the
    /// identity is returned.
    pub unique: bool,
}

/// Finds the rotation conjugating `x1` onto `x2`.
///
/// The isotropy of a regular class is `{+1, -1}`, so `t` and `t + pi` both
/// work; the representative in `(-pi/2, pi/2]` is returned.
pub fn recover_rotation(x1: Mat2, x2: Mat2) -> Result<RotationRecovery> {
    let p1 = project(x1)?;
    let p2 = project(x2)?;
    let scale = 1f64.max(p1.x.abs().max(p1.y.abs()));
    if (p1.x - p2.x).abs() > EPS_MATCH * scale || (p1.y - p2.y).abs() > EPS_MATCH * scale {
        return Err(Error::ClassMismatch {
            first: (p1.x, p1.y),
            second: (p2.x, p2.y),
        });
    }
    Ok(rotation_between(x1, x2))
}

/// [`recover_rotation`] without the class check; the caller has already
/// matched the classes to its own tolerance.
pub(crate) fn rotation_between(x1: Mat2, x2: Mat2) -> RotationRecovery {
    let (m1, k1) = orbit_offset(x1);
    let (m2, k2) = orbit_offset(x2);
    if m1 * m1 + k1 * k1 <= EPS_Q || m2 * m2 + k2 * k2 <= EPS_Q {
        return RotationRecovery {
            k: Mat2::IDENTITY,
            theta: 0.0,
            unique: false,
        };
    }
    let two_theta = k1.atan2(m1) - k2.atan2(m2);
    let theta = wrap_half_turn(0.5 * two_theta);
    RotationRecovery {
        k: Mat2::rotation(theta),
        theta,
        unique: true,
    }
}

/// Reduces an angle modulo `pi` into `(-pi/2, pi/2]`.
fn wrap_half_turn(t: f64) -> f64 {
    use std::f64::consts::{FRAC_PI_2, PI};
    let mut r = t.rem_euclid(PI);
    if r > FRAC_PI_2 {
        r -= PI;
    }
    r
}

/// Pushforwards of the horizontal frame `f1(X) = A1 X`, `f2(X) = A2 X`.
pub fn pushforward_frame(x: Mat2) -> (TangentVec2, TangentVec2) {
    let f1 = TangentVec2::new(0.25 * (x.b + x.c), 0.25 * (x.d - x.a));
    let f2 = TangentVec2::new(0.25 * (x.a - x.d), 0.25 * (x.b + x.c));
    (f1, f2)
}

/// The conformal metric `4 / (x^2 + y^2 - 1) * I` on the regular part.
pub fn quotient_metric(p: QuotientPoint) -> Result<Matrix2<f64>> {
    let w = 4.0 / p.regular_excess()?;
    Ok(Matrix2::new(w, 0.0, 0.0, w))
}

/// Evaluates `g_Q(u, v)` at `p`.
pub fn metric_product(p: QuotientPoint, u: TangentVec2, v: TangentVec2) -> Result<f64> {
    let g = quotient_metric(p)?;
    Ok(g[(0, 0)] * u.dx * v.dx + g[(1, 1)] * u.dy * v.dy)
}

/// Levi-Civita connection coefficients, `gamma[i][j][k]` = `Γ^i_{jk}` with
/// index 0 for `x` and 1 for `y`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Christoffel {
    pub gamma: [[[f64; 2]; 2]; 2],
}

impl Christoffel {
    /// Geodesic acceleration `-Γ^i_{jk} v^j v^k`.
    pub fn acceleration(&self, v: TangentVec2) -> TangentVec2 {
        let vv = [v.dx, v.dy];
        let mut acc = [0.0; 2];
        for (i, a) in acc.iter_mut().enumerate() {
            for j in 0..2 {
                for k in 0..2 {
                    *a -= self.gamma[i][j][k] * vv[j] * vv[k];
                }
            }
        }
        TangentVec2::new(acc[0], acc[1])
    }
}

pub fn christoffel(p: QuotientPoint) -> Result<Christoffel> {
    let e = p.regular_excess()?;
    let (gx, gy) = (p.x / e, p.y / e);
    let mut gamma = [[[0.0; 2]; 2]; 2];
    gamma[0][0][0] = -gx;
    gamma[0][1][1] = gx;
    gamma[0][0][1] = -gy;
    gamma[0][1][0] = -gy;
    gamma[1][0][0] = gy;
    gamma[1][1][1] = -gy;
    gamma[1][0][1] = -gx;
    gamma[1][1][0] = -gx;
    Ok(Christoffel { gamma })
}

/// Geodesic equations written as a first-order system: returns
/// `(velocity, acceleration)` for unit-speed (arclength `t`) curves.
pub fn geodesic_ode_rhs(p: QuotientPoint, v: TangentVec2) -> Result<(TangentVec2, TangentVec2)> {
    let e = p.regular_excess()?;
    let n = geodesic_ode_numerator(p, v);
    Ok((v, TangentVec2::new(n.dx / e, n.dy / e)))
}

/// The geodesic acceleration multiplied by `x^2 + y^2 - 1`; defined everywhere.
pub fn geodesic_ode_numerator(p: QuotientPoint, v: TangentVec2) -> TangentVec2 {
    let (vx, vy) = (v.dx, v.dy);
    TangentVec2::new(
        p.x * (vx * vx - vy * vy) + 2.0 * p.y * vx * vy,
        p.y * (vy * vy - vx * vx) + 2.0 * p.x * vx * vy,
    )
}

/// Largest deviation of the closed-form geodesic of parameter `c` from the
/// geodesic equations over `s_grid` (half-arclength values).
///
/// Velocities and accelerations come from differentiating the closed form.
/// At regular points the residual is `|a_ode - a_closed| / (1 + |a_closed|)`;
/// points in the singular band, where the equations degenerate, are checked
/// in the multiplied form `(x^2 + y^2 - 1) a_closed = numerator`.
pub fn ode_residual(c: f64, s_grid: &[f64]) -> f64 {
    s_grid
        .iter()
        .map(|&s| {
            let jet = family::planar_jet(c, s);
            let p = jet.point;
            // d/dt = 1/2 d/ds
            let v = TangentVec2::new(0.5 * jet.velocity.dx, 0.5 * jet.velocity.dy);
            let a = TangentVec2::new(0.25 * jet.acceleration.dx, 0.25 * jet.acceleration.dy);
            match geodesic_ode_rhs(p, v) {
                Ok((_, a_ode)) => {
                    let err = TangentVec2::new(a_ode.dx - a.dx, a_ode.dy - a.dy).norm();
                    err / (1.0 + a.norm())
                }
                Err(_) => {
                    let e = p.radius_sq() - 1.0;
                    let n = geodesic_ode_numerator(p, v);
                    TangentVec2::new(e * a.dx - n.dx, e * a.dy - n.dy).norm()
                }
            }
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{exp2, A1};

    #[test]
    fn project_examples() {
        assert_eq!(
            project(Mat2::IDENTITY).unwrap(),
            QuotientPoint::new(1.0, 0.0)
        );
        let p = project(Mat2::new(-1.0, 2.0, -1.0, 1.0)).unwrap();
        assert_eq!(p, QuotientPoint::new(0.0, 1.5));
        let (ch, sh) = (0.5f64.cosh(), 0.5f64.sinh());
        let p = project(Mat2::new(ch, sh, sh, ch)).unwrap();
        assert_eq!(p, QuotientPoint::new(ch, 0.0));
    }

    #[test]
    fn project_rejects_non_unimodular() {
        let e = project(Mat2::new(1.0, 0.0, 0.0, 0.5));
        assert!(matches!(e, Err(Error::NotUnimodular { .. })));
    }

    #[test]
    fn strata() {
        assert_eq!(QuotientPoint::new(1.0, 0.0).stratum(), Stratum::Singular);
        assert_eq!(QuotientPoint::new(0.0, 1.5).stratum(), Stratum::Regular);
        assert_eq!(QuotientPoint::new(0.2, 0.1).stratum(), Stratum::Interior);
    }

    #[test]
    fn recover_identity_rotation() {
        let x = Mat2::new(2.0, 1.0, 1.0, 1.0);
        let r = recover_rotation(x, x).unwrap();
        assert!(r.unique);
        assert_eq!(r.theta, 0.0);
        assert_eq!(r.k, Mat2::IDENTITY);
    }

    #[test]
    fn recover_on_singular_circle_flags() {
        let x = Mat2::new(0.6, 0.8, -0.8, 0.6);
        let r = recover_rotation(x, x).unwrap();
        assert!(!r.unique);
        assert_eq!(r.k, Mat2::IDENTITY);
    }

    #[test]
    fn recover_rejects_mismatch() {
        let e = recover_rotation(Mat2::IDENTITY, Mat2::new(2.0, 1.0, 1.0, 1.0));
        assert!(matches!(e, Err(Error::ClassMismatch { .. })));
    }

    #[test]
    fn recover_generated_rotation() {
        let x = Mat2::new(2.0, 3.0, 1.0, 2.0);
        for theta in [-1.4, -0.3, 0.0, 0.9, 1.5] {
            let k = Mat2::rotation(theta);
            let x2 = k * x * k.transpose();
            let r = recover_rotation(x, x2).unwrap();
            assert!((r.theta - theta).abs() < 1e-12, "theta={theta}");
            let back = r.k * x * r.k.transpose();
            assert!(back.max_abs_diff(x2) < 1e-12);
        }
        // theta outside (-pi/2, pi/2] comes back as theta - pi, i.e. -K
        let k = Mat2::rotation(2.5);
        let r = recover_rotation(x, k * x * k.transpose()).unwrap();
        assert!((r.theta - (2.5 - std::f64::consts::PI)).abs() < 1e-12);
        assert!(r.k.max_abs_diff(-k) < 1e-12);
    }

    #[test]
    fn pushforward_examples() {
        let (f1, f2) = pushforward_frame(Mat2::IDENTITY);
        assert_eq!(f1, TangentVec2::ZERO);
        assert_eq!(f2, TangentVec2::ZERO);

        let x = exp2(A1);
        let (f1, f2) = pushforward_frame(x);
        let h = 0.5f64.sinh() / 2.0;
        assert!((f1.dx - h).abs() < 1e-15 && f1.dy.abs() < 1e-15);
        assert!(f2.dx.abs() < 1e-15 && (f2.dy - h).abs() < 1e-15);

        let sym = Mat2::new(3.0, 2.0, 2.0, 5.0 / 3.0);
        assert_eq!(pushforward_frame(sym).0.dy, 0.25 * (sym.d - sym.a));
        assert_eq!(pushforward_frame(Mat2::new(2.0, 1.0, 1.0, 2.0)).0.dy, 0.0);
    }

    #[test]
    fn metric_examples() {
        let g = quotient_metric(QuotientPoint::new(5f64.sqrt(), 0.0)).unwrap();
        assert!((g[(0, 0)] - 1.0).abs() < 1e-15 && (g[(1, 1)] - 1.0).abs() < 1e-15);
        assert_eq!(g[(0, 1)], 0.0);
        let g = quotient_metric(QuotientPoint::new(1.0, 1.0)).unwrap();
        assert_eq!(g, Matrix2::new(4.0, 0.0, 0.0, 4.0));
        assert!(matches!(
            quotient_metric(QuotientPoint::new(1.0, 0.0)),
            Err(Error::SingularPoint { .. })
        ));
    }

    #[test]
    fn frame_is_orthonormal_at_exp_a1() {
        let x = exp2(A1);
        let p = project(x).unwrap();
        let (f1, f2) = pushforward_frame(x);
        assert!((metric_product(p, f1, f1).unwrap() - 1.0).abs() < 1e-12);
        assert!((metric_product(p, f2, f2).unwrap() - 1.0).abs() < 1e-12);
        assert!(metric_product(p, f1, f2).unwrap().abs() < 1e-12);
    }

    #[test]
    fn christoffel_examples() {
        let r2 = 2f64.sqrt();
        let g = christoffel(QuotientPoint::new(r2, 0.0)).unwrap().gamma;
        assert!((g[0][0][0] + r2).abs() < 1e-12);
        assert_eq!(g[1][0][0], 0.0);
        let g = christoffel(QuotientPoint::new(0.0, r2)).unwrap().gamma;
        assert!((g[1][1][1] + r2).abs() < 1e-12);
        assert_eq!(g[0][0][0], 0.0);
        let g = christoffel(QuotientPoint::new(1.7, -2.3)).unwrap().gamma;
        for row in g {
            assert_eq!(row[0][1], row[1][0]);
        }
    }

    #[test]
    fn ode_rhs_examples() {
        let p = QuotientPoint::new(2.0, 0.0);
        let (_, a) = geodesic_ode_rhs(p, TangentVec2::new(1.0, 0.0)).unwrap();
        assert!((a.dx - 2.0 / 3.0).abs() < 1e-15 && a.dy == 0.0);
        let (_, a) = geodesic_ode_rhs(p, TangentVec2::new(0.0, 1.0)).unwrap();
        assert!((a.dx + 2.0 / 3.0).abs() < 1e-15 && a.dy == 0.0);
        assert!(geodesic_ode_rhs(QuotientPoint::new(0.0, 1.0), TangentVec2::ZERO).is_err());
    }

    #[test]
    fn christoffel_matches_ode_rhs() {
        let p = QuotientPoint::new(-1.3, 0.9);
        let v = TangentVec2::new(0.4, -0.7);
        let a1 = christoffel(p).unwrap().acceleration(v);
        let (_, a2) = geodesic_ode_rhs(p, v).unwrap();
        assert!((a1.dx - a2.dx).abs() < 1e-14 && (a1.dy - a2.dy).abs() < 1e-14);
    }

    #[test]
    fn closed_form_solves_geodesic_equation() {
        let grid = |hi: f64| -> Vec<f64> {
            (0..100)
                .map(|i| 0.1 + (hi - 0.1) * i as f64 / 99.0)
                .collect()
        };
        assert!(ode_residual(0.5, &grid(family::s_int(0.5).unwrap())) <= 1e-8);
        assert!(ode_residual(1.2, &grid(family::landing_time(1.2).unwrap())) <= 1e-8);
        assert!(ode_residual(1.0, &grid(family::s_int(1.0).unwrap())) <= 1e-8);
    }

    #[test]
    fn residual_detects_wrong_curve() {
        // a Euclidean straight line is not a geodesic of g_Q
        let p = QuotientPoint::new(2.0, 0.5);
        let (_, a) = geodesic_ode_rhs(p, TangentVec2::new(0.3, 0.2)).unwrap();
        assert!(a.norm() > 1e-3);
    }
}
