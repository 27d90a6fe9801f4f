//! Automorphisms of `sl(2)` as `3x3` matrices in the `{A0, A1, A2}` basis.
//!
//! They form `SO0(1,2)`: determinant one and preserving the form
//! `diag(-1, 1, 1)`. Every element factors as `O(t1) I^b H(z) O(t2)` and is
//! realized as `A -> K A K^{-1}` for some `K` with `det K = +-1`.
//!
//! Realizations of the generators, in the column convention used here
//! (column `j` holds the coordinates of the image of `A_j`):
//!
//! * `O(t)`: `[[cos t/2, -sin t/2], [sin t/2, cos t/2]]`
//! * `H(z)`: `[[cosh z/2, sinh z/2], [sinh z/2, cosh z/2]]`
//! * `I1 = diag(-1, -1, 1)`: `diag(1, -1)`
//! * `I2 = diag(-1, 1, -1)`: `[[0, 1], [1, 0]]`

use std::f64::consts::PI;

use nalgebra::Matrix3;

use crate::error::{Error, Result};
use crate::lie::{adjoint_of_coords, Mat2, Sl2Coord, A0, A1, A2, EPS_ALG, EPS_DET};

/// Reassembly tolerance of [`factorize`].
pub const EPS_FACT: f64 = 1e-9;
/// Below this norm the first column is taken to be `(+-1, 0, 0)`.
const AXIS_TOL: f64 = 1e-12;

/// The Lorentz form `diag(-1, 1, 1)`.
pub fn lorentz_form() -> Matrix3<f64> {
    Matrix3::from_diagonal(&nalgebra::Vector3::new(-1.0, 1.0, 1.0))
}

/// An element of `SO0(1,2)`. Construct through [`SO12Matrix::new`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SO12Matrix(Matrix3<f64>);

impl SO12Matrix {
    pub fn new(m: Matrix3<f64>) -> Result<Self> {
        if is_so12(&m) {
            Ok(Self(m))
        } else {
            Err(Error::NotInGroup)
        }
    }

    pub fn matrix(&self) -> &Matrix3<f64> {
        &self.0
    }

    pub fn into_inner(self) -> Matrix3<f64> {
        self.0
    }
}

fn scale_of(m: &Matrix3<f64>) -> f64 {
    let n = m.abs().max();
    1f64.max(n * n)
}

/// `det M = 1` and `M^T J M = J` with `J = diag(-1, 1, 1)`.
pub fn is_so12(m: &Matrix3<f64>) -> bool {
    if !m.iter().all(|v| v.is_finite()) {
        return false;
    }
    let j = lorentz_form();
    let tol = EPS_ALG * scale_of(m);
    let form = (m.transpose() * j * m - j).abs().max();
    form <= tol && (m.determinant() - 1.0).abs() <= tol * scale_of(m)
}

/// A `3x3` matrix from its entries in row-major order.
pub fn from_rows(v: [f64; 9]) -> Matrix3<f64> {
    Matrix3::from_row_slice(&v)
}

/// Rotation block on the `(A1, A2)` plane.
pub fn o_matrix(theta: f64) -> Matrix3<f64> {
    let (s, c) = theta.sin_cos();
    Matrix3::new(1.0, 0.0, 0.0, 0.0, c, s, 0.0, -s, c)
}

/// Boost mixing `A0` and `A2`.
pub fn h_matrix(z: f64) -> Matrix3<f64> {
    let (ch, sh) = (z.cosh(), z.sinh());
    Matrix3::new(ch, 0.0, sh, 0.0, 1.0, 0.0, sh, 0.0, ch)
}

/// `I^0 = 1`, `I^1 = diag(-1, -1, 1)`, `I^2 = diag(-1, 1, -1)`.
pub fn i_matrix(branch: Branch) -> Matrix3<f64> {
    let d = match branch {
        Branch::I0 => [1.0, 1.0, 1.0],
        Branch::I1 => [-1.0, -1.0, 1.0],
        Branch::I2 => [-1.0, 1.0, -1.0],
    };
    Matrix3::from_diagonal(&d.into())
}

/// Matrix of `A -> K A K^{-1}`.
pub fn aut_matrix_from_group(k: Mat2) -> Result<SO12Matrix> {
    let det = k.det();
    let scale = 1f64.max((k.a * k.d).abs() + (k.b * k.c).abs());
    if !k.is_finite() || (det.abs() - 1.0).abs() > EPS_DET * scale {
        return Err(Error::NotUnitDeterminant { det });
    }
    let kinv = Mat2::new(k.d, -k.b, -k.c, k.a).scale(1.0 / det);
    let cols = [A0, A1, A2].map(|e| Sl2Coord::from_matrix(k * e * kinv).as_array());
    Ok(SO12Matrix(Matrix3::from_fn(|i, j| cols[j][i])))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    I0,
    I1,
    I2,
}

impl Branch {
    pub fn index(self) -> u8 {
        match self {
            Self::I0 => 0,
            Self::I1 => 1,
            Self::I2 => 2,
        }
    }

    pub fn from_index(i: u8) -> Option<Self> {
        match i {
            0 => Some(Self::I0),
            1 => Some(Self::I1),
            2 => Some(Self::I2),
            _ => None,
        }
    }
}

/// `O(theta1) I^branch H(z) O(theta2)`, angles in `(-pi, pi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Factorization {
    pub theta1: f64,
    pub branch: Branch,
    pub z: f64,
    pub theta2: f64,
}

impl Factorization {
    pub fn compose(&self) -> Matrix3<f64> {
        o_matrix(self.theta1) * i_matrix(self.branch) * h_matrix(self.z) * o_matrix(self.theta2)
    }
}

fn wrap_turn(t: f64) -> f64 {
    let r = (t + PI).rem_euclid(2.0 * PI) - PI;
    if r <= -PI {
        r + 2.0 * PI
    } else {
        r
    }
}

/// Constructive factorization.
///
/// `O(a1)` from the left clears entry `(1, 0)`, `O(a2)` from the right clears
/// `(0, 1)`, both leaving the remaining off-diagonal entry nonnegative. The
/// reduced matrix is then `H(z)` or `I2 H(-z)`, or, when the first column is
/// already `(+-1, 0, 0)`, a rotation possibly preceded by `I1`.
pub fn factorize(m: &SO12Matrix) -> Result<Factorization> {
    let a = m.0;
    if !is_so12(&a) {
        return Err(Error::NotInGroup);
    }
    let n = a[(1, 0)].hypot(a[(2, 0)]);
    let f = if n <= AXIS_TOL * scale_of(&a).sqrt() {
        // a = diag(+-1, Q): no boost
        let (q11, q12) = (a[(1, 1)], a[(1, 2)]);
        if a[(0, 0)] > 0.0 {
            Factorization {
                theta1: wrap_turn(q12.atan2(q11)),
                branch: Branch::I0,
                z: 0.0,
                theta2: 0.0,
            }
        } else {
            Factorization {
                theta1: 0.0,
                branch: Branch::I1,
                z: 0.0,
                theta2: wrap_turn((-q12).atan2(-q11)),
            }
        }
    } else {
        let a1 = (-a[(1, 0)]).atan2(a[(2, 0)]);
        let b = o_matrix(a1) * a;
        let a2 = b[(0, 1)].atan2(b[(0, 2)]);
        let h = b * o_matrix(a2);
        let z = h[(2, 0)].max(0.0).asinh();
        let (branch, z) = if h[(0, 0)] > 0.0 {
            (Branch::I0, z)
        } else {
            (Branch::I2, -z)
        };
        Factorization {
            theta1: wrap_turn(-a1),
            branch,
            z,
            theta2: wrap_turn(-a2),
        }
    };
    Ok(f)
}

/// Rotation realizing `O(theta)`.
pub fn realize_o(theta: f64) -> Mat2 {
    let (s, c) = (0.5 * theta).sin_cos();
    Mat2::new(c, -s, s, c)
}

/// Boost realizing `H(z)`.
pub fn realize_h(z: f64) -> Mat2 {
    let (ch, sh) = ((0.5 * z).cosh(), (0.5 * z).sinh());
    Mat2::new(ch, sh, sh, ch)
}

/// Reflection realizing `I^branch`.
pub fn realize_i(branch: Branch) -> Mat2 {
    match branch {
        Branch::I0 => Mat2::IDENTITY,
        Branch::I1 => Mat2::new(1.0, 0.0, 0.0, -1.0),
        Branch::I2 => Mat2::new(0.0, 1.0, 1.0, 0.0),
    }
}

/// A `K` with `det K = +-1` whose conjugation action is the factored matrix.
pub fn realize(f: &Factorization) -> Mat2 {
    realize_o(f.theta1) * realize_i(f.branch) * realize_h(f.z) * realize_o(f.theta2)
}

/// `M ad_{A_j} = ad_{M A_j} M` for each basis element.
pub fn is_lie_automorphism(m: &Matrix3<f64>) -> Result<bool> {
    let det = m.determinant();
    if !det.is_finite() || det.abs() < 1e-300 || m.try_inverse().is_none() {
        return Err(Error::Singular);
    }
    let tol = EPS_ALG * scale_of(m);
    let ok = (0..3).all(|j| {
        let e = Sl2Coord::from_array(std::array::from_fn(|i| (i == j) as u8 as f64));
        let img = Sl2Coord::from_array([m[(0, j)], m[(1, j)], m[(2, j)]]);
        let lhs = m * adjoint_of_coords(e);
        let rhs = adjoint_of_coords(img) * m;
        (lhs - rhs).abs().max() <= tol
    });
    Ok(ok)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Structure {
    /// The form is positive definite on the span.
    Elliptic,
    /// Indefinite.
    Hyperbolic,
    /// Degenerate.
    Degenerate,
}

/// Type of the rank-2 structure spanned by `b1, b2` under the form
/// `diag(-1, 1, 1)`. A uniform rescaling of the metric does not change it.
pub fn classify_structure(b1: Sl2Coord, b2: Sl2Coord) -> Result<Structure> {
    let (u, v) = (
        nalgebra::Vector3::from(b1.as_array()),
        nalgebra::Vector3::from(b2.as_array()),
    );
    let scale = u.norm() * v.norm();
    if !(u.cross(&v).norm() > 1e-12 * scale) {
        return Err(Error::DependentFrame);
    }
    let j = lorentz_form();
    let g11 = u.dot(&(j * u));
    let g12 = u.dot(&(j * v));
    let g22 = v.dot(&(j * v));
    let det = g11 * g22 - g12 * g12;
    let tol = EPS_ALG * scale * scale;
    Ok(if det > tol && g11 > 0.0 {
        Structure::Elliptic
    } else if det < -tol {
        Structure::Hyperbolic
    } else {
        Structure::Degenerate
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &Matrix3<f64>, b: &Matrix3<f64>, tol: f64) -> bool {
        (a - b).abs().max() <= tol
    }

    #[test]
    fn membership() {
        assert!(is_so12(&Matrix3::identity()));
        assert!(is_so12(&o_matrix(0.7)));
        assert!(is_so12(&h_matrix(-1.4)));
        assert!(is_so12(&i_matrix(Branch::I1)));
        assert!(is_so12(&i_matrix(Branch::I2)));
        assert!(!is_so12(&Matrix3::from_diagonal(&[-1.0, 1.0, 1.0].into())));
        assert!(!is_so12(&Matrix3::from_diagonal(&[1.0, 2.0, 0.5].into())));
    }

    #[test]
    fn generator_realizations() {
        for t in [-2.0, 0.3, 0.7, 3.0] {
            let m = aut_matrix_from_group(realize_o(t)).unwrap();
            assert!(close(m.matrix(), &o_matrix(t), 1e-12));
        }
        for z in [-1.0, 0.5, 2.0] {
            let m = aut_matrix_from_group(realize_h(z)).unwrap();
            assert!(close(m.matrix(), &h_matrix(z), 1e-12));
        }
        for b in [Branch::I0, Branch::I1, Branch::I2] {
            let m = aut_matrix_from_group(realize_i(b)).unwrap();
            assert!(close(m.matrix(), &i_matrix(b), 1e-15));
        }
        // the swap is I2, not I1
        let swap = aut_matrix_from_group(Mat2::new(0.0, 1.0, 1.0, 0.0)).unwrap();
        assert!(close(swap.matrix(), &i_matrix(Branch::I2), 0.0));
        let i2 = o_matrix(PI / 2.0) * i_matrix(Branch::I1) * o_matrix(-PI / 2.0);
        assert!(close(&i2, &i_matrix(Branch::I2), 1e-15));
    }

    #[test]
    fn rejects_bad_determinant() {
        assert!(matches!(
            aut_matrix_from_group(Mat2::new(2.0, 0.0, 0.0, 1.0)),
            Err(Error::NotUnitDeterminant { .. })
        ));
    }

    #[test]
    fn factorize_examples() {
        let id = SO12Matrix::new(Matrix3::identity()).unwrap();
        let f = factorize(&id).unwrap();
        assert_eq!(
            f,
            Factorization {
                theta1: 0.0,
                branch: Branch::I0,
                z: 0.0,
                theta2: 0.0
            }
        );
        let f = factorize(&SO12Matrix::new(h_matrix(1.3)).unwrap()).unwrap();
        assert_eq!(f.branch, Branch::I0);
        assert!(f.theta1.abs() < 1e-15 && f.theta2.abs() < 1e-15);
        assert!((f.z - 1.3).abs() < 1e-14);
        let m = o_matrix(0.4) * i_matrix(Branch::I2) * h_matrix(-0.9) * o_matrix(2.1);
        let f = factorize(&SO12Matrix::new(m).unwrap()).unwrap();
        assert!(close(&f.compose(), &m, 1e-10));
    }

    #[test]
    fn factorize_all_branches() {
        for b in [Branch::I0, Branch::I1, Branch::I2] {
            for z in [0.0, -1.7, 0.6] {
                for (t1, t2) in [(0.0, 0.0), (2.5, -1.0), (-3.0, 0.4)] {
                    let m = o_matrix(t1) * i_matrix(b) * h_matrix(z) * o_matrix(t2);
                    let f = factorize(&SO12Matrix::new(m).unwrap()).unwrap();
                    assert!(close(&f.compose(), &m, 1e-10), "{b:?} {z} {t1} {t2}: {f:?}");
                    assert!(f.theta1 > -PI && f.theta1 <= PI);
                    assert!(f.theta2 > -PI && f.theta2 <= PI);
                    let k = realize(&f);
                    let back = aut_matrix_from_group(k).unwrap();
                    assert!(close(back.matrix(), &m, 1e-9));
                }
            }
        }
    }

    #[test]
    fn realize_examples() {
        let f = Factorization {
            theta1: 0.0,
            branch: Branch::I0,
            z: 0.0,
            theta2: 0.0,
        };
        assert_eq!(realize(&f), Mat2::IDENTITY);
        let f = Factorization { theta1: 0.8, ..f };
        assert!(realize(&f).max_abs_diff(realize_o(0.8)) < 1e-16);
    }

    #[test]
    fn automorphism_condition() {
        assert!(is_lie_automorphism(&o_matrix(0.3)).unwrap());
        assert!(is_lie_automorphism(&i_matrix(Branch::I2)).unwrap());
        assert!(!is_lie_automorphism(&Matrix3::from_diagonal(&[1.0, 2.0, 1.0].into())).unwrap());
        assert!(!is_lie_automorphism(&Matrix3::from_diagonal(&[-1.0, 1.0, 1.0].into())).unwrap());
        assert_eq!(is_lie_automorphism(&Matrix3::zeros()), Err(Error::Singular));
    }

    #[test]
    fn structures() {
        let a = |v: [f64; 3]| Sl2Coord::from_array(v);
        assert_eq!(
            classify_structure(a([0., 1., 0.]), a([0., 0., 1.])),
            Ok(Structure::Elliptic)
        );
        assert_eq!(
            classify_structure(a([1., 0., 0.]), a([0., 1., 0.])),
            Ok(Structure::Hyperbolic)
        );
        assert_eq!(
            classify_structure(a([1., 1., 0.]), a([0., 0., 1.])),
            Ok(Structure::Degenerate)
        );
        assert_eq!(
            classify_structure(a([0., 1., 0.]), a([0., 2., 0.])),
            Err(Error::DependentFrame)
        );
        for z in [-2.0, 0.5, 3.0] {
            let h = h_matrix(z);
            let b1 = a([h[(0, 1)], h[(1, 1)], h[(2, 1)]]);
            let b2 = a([h[(0, 2)], h[(1, 2)], h[(2, 2)]]);
            assert_eq!(classify_structure(b1, b2), Ok(Structure::Elliptic));
        }
    }

    #[test]
    fn homomorphism() {
        let k1 = realize_o(0.9) * realize_h(0.4);
        let k2 = realize_i(Branch::I2) * realize_h(-1.1);
        let lhs = aut_matrix_from_group(k1 * k2).unwrap();
        let rhs = aut_matrix_from_group(k1).unwrap().into_inner()
            * aut_matrix_from_group(k2).unwrap().into_inner();
        assert!(close(lhs.matrix(), &rhs, 1e-12));
    }
}
