//! Sparse homogeneous polynomials over the rationals and the apolarity
//! action of the dual ring.

mod binary;
mod homogeneous;
mod monomial;
mod parse;
mod vars;

pub use binary::{
    binary_from_coeffs, binary_gcd, coeff_vector, is_squarefree, random_binary_form,
    rational_roots, BinaryForm,
};
pub(crate) use binary::random_binary_form_with;
pub use homogeneous::{apolar_apply, HomogeneousPoly};
pub use monomial::{monomials_of_degree, Monomial};
pub use parse::{parse_poly, parse_poly_with_degree};
pub use vars::{VarRole, VariableSet};
