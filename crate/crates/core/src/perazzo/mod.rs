//! Perazzo threefolds `f = p0 x0 + p1 x1 + p2 x2 + g` in four-dimensional
//! projective space: block catalecticants, extremal Hilbert functions,
//! binary Waring ranks, and the classification of the minimal case.

mod blocks;
mod form;
mod geometry;
mod relation;
mod waring;

pub use blocks::{blocks, h_via_ranks, hankel, max_hvector, min_hvector, BlockMatrices, RankProfile};
pub use form::PerazzoForm;
pub use geometry::{
    classify, classify_poly, curve_parameters, intersection_divisor, is_cone, multiplicity_pattern,
    Case, Normalization, PerazzoClass,
};
pub use relation::algebraic_relation;
pub use waring::{border_rank, secant_membership, waring_rank, WaringResult};
