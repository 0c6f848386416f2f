//! Exact linear algebra over prime fields and the rationals.

pub mod field;
pub mod matrix;
pub mod subspace;

pub use field::{Field, Scalar};
pub use matrix::{Matrix, Rref};
pub use subspace::Subspace;
