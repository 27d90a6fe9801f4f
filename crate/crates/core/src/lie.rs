//! Small-matrix algebra for `sl(2)` and `SL(2)`.
//!
//! Everything here is a plain value type. The basis `{A0, A1, A2}` is
//!
//! ```text
//! A0 = 1/2 [[0, -1], [1, 0]]    A1 = 1/2 [[0, 1], [1, 0]]    A2 = 1/2 [[1, 0], [0, -1]]
//! ```
//!
//! with `[A0, A1] = -A2`, `[A0, A2] = A1`, `[A1, A2] = A0`. `A0` spans the
//! compact part, `A1, A2` span the horizontal distribution.

use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::Matrix3;

/// Determinant tolerance for group elements.
pub const EPS_DET: f64 = 1e-12;
/// Tolerance for algebra-level identities (trace, brackets, orthogonality).
pub const EPS_ALG: f64 = 1e-12;
/// Below this magnitude the closed-form exponential switches to its series.
pub const DELTA_EXP: f64 = 1e-8;

/// A real 2x2 matrix `[[a, b], [c, d]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2::new(1.0, 0.0, 0.0, 1.0);
    pub const ZERO: Mat2 = Mat2::new(0.0, 0.0, 0.0, 0.0);

    pub const fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Self { a, b, c, d }
    }

    /// Row-major `[a, b, c, d]`.
    pub fn from_row_major(v: [f64; 4]) -> Self {
        Self::new(v[0], v[1], v[2], v[3])
    }

    pub fn to_row_major(self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    /// The planar rotation `[[cos t, sin t], [-sin t, cos t]]` used to act on
    /// `SL(2)` by conjugation.
    pub fn rotation(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self::new(c, s, -s, c)
    }

    pub fn det(self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(self) -> f64 {
        self.a + self.d
    }

    pub fn transpose(self) -> Self {
        Self::new(self.a, self.c, self.b, self.d)
    }

    pub fn scale(self, k: f64) -> Self {
        Self::new(k * self.a, k * self.b, k * self.c, k * self.d)
    }

    /// Inverse, or `None` when the determinant vanishes.
    pub fn inverse(self) -> Option<Self> {
        let det = self.det();
        if det == 0.0 || !det.is_finite() {
            return None;
        }
        Some(Self::new(self.d, -self.b, -self.c, self.a).scale(1.0 / det))
    }

    /// Inverse of a unimodular matrix (adjugate, no division).
    pub fn sl2_inverse(self) -> Self {
        Self::new(self.d, -self.b, -self.c, self.a)
    }

    pub fn frobenius_norm(self) -> f64 {
        (self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d).sqrt()
    }

    pub fn frobenius_dist(self, other: Mat2) -> f64 {
        (self - other).frobenius_norm()
    }

    pub fn max_abs_diff(self, other: Mat2) -> f64 {
        let d = self - other;
        d.a.abs().max(d.b.abs()).max(d.c.abs()).max(d.d.abs())
    }

    pub fn is_finite(self) -> bool {
        self.a.is_finite() && self.b.is_finite() && self.c.is_finite() && self.d.is_finite()
    }

    pub fn is_unimodular(self, tol: f64) -> bool {
        (self.det() - 1.0).abs() <= tol
    }

    pub fn is_traceless(self, tol: f64) -> bool {
        self.trace().abs() <= tol
    }

    pub fn is_rotation(self, tol: f64) -> bool {
        let g = self.transpose() * self;
        g.max_abs_diff(Mat2::IDENTITY) <= tol && (self.det() - 1.0).abs() <= tol
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, o: Mat2) -> Mat2 {
        Mat2::new(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, o: Mat2) -> Mat2 {
        Mat2::new(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        self.scale(-1.0)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        Mat2::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }
}

impl Mul<Mat2> for f64 {
    type Output = Mat2;
    fn mul(self, m: Mat2) -> Mat2 {
        m.scale(self)
    }
}

/// Coordinates of a traceless matrix in the basis `{A0, A1, A2}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sl2Coord {
    pub v0: f64,
    pub v1: f64,
    pub v2: f64,
}

impl Sl2Coord {
    pub const fn new(v0: f64, v1: f64, v2: f64) -> Self {
        Self { v0, v1, v2 }
    }

    /// Coordinates of the traceless part of `m`.
    ///
    /// `v0 A0 + v1 A1 + v2 A2 = 1/2 [[v2, v1 - v0], [v1 + v0, -v2]]`.
    pub fn from_matrix(m: Mat2) -> Self {
        Self::new(m.c - m.b, m.b + m.c, m.a - m.d)
    }

    pub fn to_matrix(self) -> Mat2 {
        Mat2::new(
            0.5 * self.v2,
            0.5 * (self.v1 - self.v0),
            0.5 * (self.v1 + self.v0),
            -0.5 * self.v2,
        )
    }

    pub fn as_array(self) -> [f64; 3] {
        [self.v0, self.v1, self.v2]
    }

    pub fn from_array(v: [f64; 3]) -> Self {
        Self::new(v[0], v[1], v[2])
    }
}

pub const A0: Mat2 = Mat2::new(0.0, -0.5, 0.5, 0.0);
pub const A1: Mat2 = Mat2::new(0.0, 0.5, 0.5, 0.0);
pub const A2: Mat2 = Mat2::new(0.5, 0.0, 0.0, -0.5);

/// The basis `(A0, A1, A2)` of `sl(2)`.
pub fn basis() -> (Mat2, Mat2, Mat2) {
    (A0, A1, A2)
}

/// Commutator `AB - BA`.
pub fn bracket(a: Mat2, b: Mat2) -> Mat2 {
    a * b - b * a
}

/// The inner product `2 tr(B C^T)`, for which `A0, A1, A2` are orthonormal.
pub fn metric_g(b: Mat2, c: Mat2) -> f64 {
    2.0 * (b * c.transpose()).trace()
}

/// `cosh(sqrt(u))`, continued to `cos(sqrt(-u))` for negative `u`.
pub fn cosh_sqrt(u: f64) -> f64 {
    if u.abs() < DELTA_EXP {
        // 1 + u/2! + u^2/4! + u^3/6! + u^4/8!
        1.0 + u * (1.0 / 2.0 + u * (1.0 / 24.0 + u * (1.0 / 720.0 + u / 40320.0)))
    } else if u > 0.0 {
        u.sqrt().cosh()
    } else {
        (-u).sqrt().cos()
    }
}

/// `sinh(sqrt(u)) / sqrt(u)`, continued to `sin(sqrt(-u)) / sqrt(-u)` for
/// negative `u` and to `1` at `u = 0`.
pub fn sinhc_sqrt(u: f64) -> f64 {
    if u.abs() < DELTA_EXP {
        1.0 + u * (1.0 / 6.0 + u * (1.0 / 120.0 + u * (1.0 / 5040.0 + u / 362880.0)))
    } else if u > 0.0 {
        let r = u.sqrt();
        r.sinh() / r
    } else {
        let r = (-u).sqrt();
        r.sin() / r
    }
}

/// Closed-form exponential of a traceless 2x2 matrix.
///
/// A traceless `M` satisfies `M^2 = -det(M) I`, so
/// `exp(M) = cosh_sqrt(-det M) I + sinhc_sqrt(-det M) M`, which is the
/// trigonometric form for `det M > 0`, the hyperbolic form for `det M < 0`
/// and `I + M` at `det M = 0`.
pub fn exp2(m: Mat2) -> Mat2 {
    let q = -m.det();
    let c = cosh_sqrt(q);
    let s = sinhc_sqrt(q);
    Mat2::new(c + s * m.a, s * m.b, s * m.c, c + s * m.d)
}

/// Matrix of `ad_A` acting on coordinates in the `{A0, A1, A2}` basis.
///
/// Column `j` holds the coordinates of `[A, A_j]`, so for coordinate column
/// vectors `ad_A * coords(B) = coords([A, B])`.
pub fn adjoint_matrix(a: Mat2) -> Matrix3<f64> {
    let cols = [A0, A1, A2].map(|e| Sl2Coord::from_matrix(bracket(a, e)).as_array());
    Matrix3::from_fn(|i, j| cols[j][i])
}

/// `ad` of an element given directly by its coordinates.
pub fn adjoint_of_coords(v: Sl2Coord) -> Matrix3<f64> {
    adjoint_matrix(v.to_matrix())
}
