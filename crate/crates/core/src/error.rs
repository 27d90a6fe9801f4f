use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not in SL(2): det = {det}")]
    NotUnimodular { det: f64 },
    #[error("matrix determinant is not +-1: det = {det}")]
    NotUnitDeterminant { det: f64 },
    #[error("matrices lie in different conjugacy classes: {first:?} vs {second:?}")]
    ClassMismatch {
        first: (f64, f64),
        second: (f64, f64),
    },
    #[error("point ({x}, {y}) is not in the regular part of the quotient")]
    SingularPoint { x: f64, y: f64 },
    #[error("point ({x}, {y}) lies inside the unit disc and is not reachable")]
    Unreachable { x: f64, y: f64 },
    #[error("target is the start point: zero-length geodesic")]
    StartPoint,
    #[error("c = {c} is outside the regime of this operation")]
    OutOfRegime { c: f64 },
    #[error("c = 0 never crosses the negative x-axis")]
    Unbounded,
    #[error("no root in the bracket [{lo}, {hi}]")]
    NoRoot { lo: f64, hi: f64 },
    #[error("grid needs at least 2 samples and a positive span (n = {n})")]
    BadGrid { n: usize },
    #[error("3x3 matrix is not in SO0(1,2)")]
    NotInGroup,
    #[error("3x3 matrix is singular")]
    Singular,
    #[error("frame vectors are linearly dependent")]
    DependentFrame,
    #[error("endpoint residual {residual:e} exceeds tolerance {tol:e}")]
    ResidualTooLarge { residual: f64, tol: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
