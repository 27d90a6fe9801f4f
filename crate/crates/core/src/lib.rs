//! Length-minimizing sub-Riemannian geodesics on `SL(2,R)`.
//!
//! The problem is reduced by the `SO(2)` conjugation action to a Riemannian
//! one on the plane outside the unit circle, solved there in closed form,
//! and lifted back to the group.

pub mod automorphisms;
pub mod error;
pub mod family;
pub mod figures;
pub mod lie;
pub mod quotient;
pub mod roots;
pub mod selftest;
pub mod su2;
pub mod sweep;
pub mod synthesis;

pub use error::{Error, Result};
pub use family::GeodesicParam;
pub use lie::{Mat2, Sl2Coord};
pub use quotient::QuotientPoint;
pub use synthesis::{solve, SynthesisSolution};
