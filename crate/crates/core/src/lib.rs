//! Exact algebra behind the irreducible SO(3) structure on five-manifolds.
//!
//! Everything is computed over ℚ(√3) with multivariate polynomials, so each
//! identity check is a comparison of canonical forms with zero tolerance.

pub mod chern_weil;
pub mod error;
pub mod matrix;
pub mod obstruction;
pub mod poly;
pub mod representations;
pub mod scalar;
pub mod upsilon;

mod linalg;

pub use error::{AlgebraError, Result};
pub use matrix::PolyMatrix;
pub use poly::{MultiPoly, VarEnv};
pub use scalar::{QSqrt3, Rational};
