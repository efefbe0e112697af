//! Exact computations with Macaulay inverse systems.
//!
//! A homogeneous form `f` in `R = K[x_0, ..., x_n]` determines the Artinian
//! Gorenstein algebra `A_f = S / Ann_S(f)`, where `S` acts on `R` by
//! differentiation. This crate computes the Hilbert function of `A_f`,
//! higher Hessians, weak and strong Lefschetz verdicts, and the special
//! machinery for Perazzo threefolds `f = p0 x0 + p1 x1 + p2 x2 + g(u, v)`.
//!
//! Everything is exact over the rationals; nothing uses floating point.

pub mod error;
pub mod inverse;
pub mod lefschetz;
pub mod linalg;
pub mod perazzo;
pub mod poly;

pub use error::{Error, Result};

/// Arbitrary precision reduced fraction.
pub type Rational = num_rational::BigRational;

/// Default bound for sampled integer coefficients.
pub const DEFAULT_BOUND: u64 = 100;
