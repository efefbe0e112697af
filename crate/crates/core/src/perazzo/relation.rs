//! Algebraic relations among three binary forms.

use crate::error::out_of_range;
use crate::linalg::RationalMatrix;
use crate::poly::{coeff_vector, monomials_of_degree, BinaryForm, HomogeneousPoly, VariableSet};
use crate::{Error, Rational, Result};

/// The least-degree nonzero form `F(z0, z1, z2)` with `F(p0, p1, p2) = 0`,
/// searching degrees `1..=max_degree` (default: the degree of the forms).
///
/// In the first degree with a nontrivial relation space, the relation
/// attached to the first free column of the reduced substitution matrix is
/// returned, with coprime integer coefficients and positive leading term.
pub fn algebraic_relation(
    p: [&BinaryForm; 3],
    max_degree: Option<u32>,
) -> Result<Option<HomogeneousPoly>> {
    let e = p[0].degree();
    if p.iter().any(|q| q.degree() != e && !q.is_zero()) {
        return Err(Error::NotBinary("forms of different degrees".into()));
    }
    let cap = max_degree.unwrap_or(e.max(1));
    if cap < 1 {
        return Err(out_of_range("max_degree", cap, "1.."));
    }
    let forms: Vec<BinaryForm> = p
        .iter()
        .map(|q| coeff_vector(q, false).map(|c| crate::poly::binary_from_coeffs(&c, false)))
        .collect::<Result<_>>()?;
    let z = VariableSet::relation();
    for k in 1..=cap {
        let monomials = monomials_of_degree(3, k);
        let columns: Vec<Vec<Rational>> = monomials
            .iter()
            .map(|m| {
                let mut acc = HomogeneousPoly::constant(VariableSet::binary(), Rational::from_integer(1.into()));
                for (q, &x) in forms.iter().zip(m.exponents()) {
                    acc = &acc * &q.pow(x);
                }
                coeff_vector(&acc.with_degree_tag(k * e), false)
            })
            .collect::<Result<_>>()?;
        let rows = (k * e) as usize + 1;
        let kernel = RationalMatrix::from_columns(rows, &columns).kernel_basis();
        if let Some(v) = kernel.into_iter().next() {
            let rel = HomogeneousPoly::from_coefficients(z.clone(), k, &monomials, &v);
            return Ok(Some(rel.primitive()));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn bf(s: &str) -> BinaryForm {
        parse_poly(s, &VariableSet::binary()).unwrap()
    }

    #[test]
    fn conic() {
        let r = algebraic_relation([&bf("u^2"), &bf("u*v"), &bf("v^2")], None)
            .unwrap()
            .unwrap();
        assert_eq!(r.to_string(), "z0*z2 - z1^2");
    }

    #[test]
    fn capped_search_can_fail() {
        let r = algebraic_relation([&bf("u^4"), &bf("u^3*v"), &bf("v^4")], Some(2)).unwrap();
        assert!(r.is_none());
    }
}
