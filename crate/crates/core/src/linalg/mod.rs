//! Exact field arithmetic and sparse linear algebra kernels.

pub mod field;
pub mod matrix;
pub mod sparse;

pub use field::{Field, Scalar};
pub use matrix::{Echelon, Matrix};
pub use sparse::SVec;
