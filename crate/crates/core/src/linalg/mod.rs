//! Exact linear algebra over the rationals and over polynomial rings.

mod matrix;
mod poly_matrix;
mod sparse;

pub use matrix::RationalMatrix;
pub use poly_matrix::PolyMatrix;
