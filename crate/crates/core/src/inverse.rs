//! Macaulay duality: catalecticant maps, annihilators, Hilbert functions,
//! and the Macaulay/Green growth bounds.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::out_of_range;
use crate::linalg::RationalMatrix;
use crate::poly::{monomials_of_degree, HomogeneousPoly, Monomial};
use crate::{Error, Rational, Result};

/// Hilbert function `(h_0, ..., h_e)` of a graded Artinian algebra.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HVector(Vec<usize>);

impl HVector {
    pub fn new(entries: Vec<usize>) -> Self {
        HVector(entries)
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn socle_degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn get(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn is_symmetric(&self) -> bool {
        self.0.iter().eq(self.0.iter().rev())
    }

    /// Termwise `self <= other`; vectors of different lengths are not
    /// comparable.
    pub fn le_termwise(&self, other: &HVector) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn is_osequence(&self) -> bool {
        is_osequence(&self.0)
    }
}

impl fmt::Display for HVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Size limits for inverse-system computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    pub max_degree: u32,
    pub max_vars: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_degree: 32,
            max_vars: 8,
        }
    }
}

impl Limits {
    pub fn check(&self, f: &HomogeneousPoly) -> Result<()> {
        if f.degree() > self.max_degree {
            return Err(Error::Guard(format!(
                "degree {} exceeds the limit {}",
                f.degree(),
                self.max_degree
            )));
        }
        if f.vars().len() > self.max_vars {
            return Err(Error::Guard(format!(
                "{} variables exceed the limit {}",
                f.vars().len(),
                self.max_vars
            )));
        }
        Ok(())
    }
}

/// The map `S_t -> R_{d-t}`, `w -> w(f)`, in the canonical monomial bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalecticantMap {
    pub source_degree: u32,
    /// Monomials of `S_t`, indexing columns.
    pub columns: Vec<Monomial>,
    /// Monomials of `R_{d-t}`, indexing rows.
    pub rows: Vec<Monomial>,
    pub matrix: RationalMatrix,
}

pub fn catalecticant(f: &HomogeneousPoly, t: u32) -> Result<CatalecticantMap> {
    let d = f.degree();
    if t > d {
        return Err(out_of_range("t", t, format!("0..={d}")));
    }
    let n = f.vars().len();
    let columns = monomials_of_degree(n, t);
    let rows = monomials_of_degree(n, d - t);
    let row_index: HashMap<&Monomial, usize> = rows.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut matrix = RationalMatrix::zeros(rows.len(), columns.len());
    for (j, op) in columns.iter().enumerate() {
        for (m, c) in f.terms() {
            if let Some(q) = op.quotient_of(m) {
                let k = Rational::from_integer(op.apolar_factor(m));
                matrix[(row_index[&q], j)] += c * k;
            }
        }
    }
    Ok(CatalecticantMap {
        source_degree: t,
        columns,
        rows,
        matrix,
    })
}

/// Hilbert function of `A_f`, one catalecticant rank per degree, under the
/// default size limits.
pub fn h_vector(f: &HomogeneousPoly) -> Result<HVector> {
    h_vector_with(f, &Limits::default())
}

pub fn h_vector_with(f: &HomogeneousPoly, limits: &Limits) -> Result<HVector> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    limits.check(f)?;
    let ranks = (0..=f.degree())
        .map(|t| catalecticant(f, t).map(|c| c.matrix.rank()))
        .collect::<Result<Vec<_>>>()?;
    Ok(HVector(ranks))
}

/// Basis of `Ann_S(f)_t` as operator polynomials over the dual variables.
/// Every degree above `deg f` is all of `S_t`.
pub fn ann_basis(f: &HomogeneousPoly, t: u32) -> Result<Vec<HomogeneousPoly>> {
    let dual = f.vars().dual();
    if t > f.degree() {
        return Ok(monomials_of_degree(dual.len(), t)
            .into_iter()
            .map(|m| HomogeneousPoly::monomial(dual.clone(), m, Rational::from_integer(1.into())))
            .collect());
    }
    let cat = catalecticant(f, t)?;
    Ok(cat
        .matrix
        .kernel_basis()
        .into_iter()
        .map(|v| HomogeneousPoly::from_coefficients(dual.clone(), t, &cat.columns, &v))
        .collect())
}

fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
    }
    acc
}

/// The `d`-binomial expansion `n = C(eta_d, d) + C(eta_{d-1}, d-1) + ...`
/// with `eta_d > eta_{d-1} > ... >= j >= 1`, as `(eta_j, j)` pairs.
pub fn binomial_expansion(n: u64, d: u64) -> Vec<(u64, u64)> {
    let mut rest = u128::from(n);
    let mut out = Vec::new();
    let mut k = d;
    while rest > 0 && k >= 1 {
        // largest eta with C(eta, k) <= rest
        let mut eta = k;
        while binomial(eta + 1, k) <= rest {
            eta += 1;
        }
        rest -= binomial(eta, k);
        out.push((eta, k));
        k -= 1;
    }
    out
}

/// `n^{<d>}`: every term `C(eta, j)` of the expansion shifted to `C(eta+1, j+1)`.
pub fn macaulay_upper(n: u64, d: u64) -> u64 {
    binomial_expansion(n, d)
        .iter()
        .map(|&(eta, j)| binomial(eta + 1, j + 1) as u64)
        .sum()
}

/// `n_{<d>}`: every term `C(eta, j)` of the expansion shifted to `C(eta-1, j)`.
pub fn macaulay_lower(n: u64, d: u64) -> u64 {
    binomial_expansion(n, d)
        .iter()
        .map(|&(eta, j)| binomial(eta - 1, j) as u64)
        .sum()
}

/// Green's bound on `h_t` of the quotient by a general linear form.
pub fn green_bound(h_t: u64, t: u64) -> u64 {
    macaulay_lower(h_t, t)
}

/// Macaulay's characterization: `h_0 = 1` and `h_{t+1} <= h_t^{<t>}` for
/// `t >= 1`.
pub fn is_osequence(h: &[usize]) -> bool {
    if h.first() != Some(&1) {
        return false;
    }
    h.windows(2)
        .enumerate()
        .skip(1)
        .all(|(t, w)| w[1] as u64 <= macaulay_upper(w[0] as u64, t as u64))
}

/// Dimension of the degree-`t` piece of a polynomial ring in `n` variables.
pub fn dim_graded(n: usize, t: u32) -> usize {
    if n == 0 {
        return usize::from(t == 0);
    }
    binomial(u64::from(t) + n as u64 - 1, n as u64 - 1) as usize
}

/// Dimension of the annihilating operators of `f` in degree `t` that only involve the
/// variables in `subset` (indices into the dual ring).
pub fn ann_in_subring(f: &HomogeneousPoly, t: u32, subset: &[usize]) -> Result<usize> {
    let cat = catalecticant(f, t)?;
    let cols: Vec<usize> = cat
        .columns
        .iter()
        .enumerate()
        .filter(|(_, m)| {
            m.exponents()
                .iter()
                .enumerate()
                .all(|(i, &e)| e == 0 || subset.contains(&i))
        })
        .map(|(j, _)| j)
        .collect();
    let rows: Vec<usize> = (0..cat.matrix.rows()).collect();
    let sub = cat.matrix.select(&rows, &cols);
    Ok(cols.len() - sub.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{apolar_apply, parse_poly, VariableSet};

    #[test]
    fn catalecticant_edges() {
        let vs = VariableSet::binary();
        let f = parse_poly("u^3*v + 2*v^4", &vs).unwrap();
        let c0 = catalecticant(&f, 0).unwrap();
        assert_eq!(c0.matrix.cols(), 1);
        assert_eq!(c0.matrix.column(0), f.dense_coefficients());
        let c4 = catalecticant(&f, 4).unwrap();
        assert_eq!(c4.matrix.rows(), 1);
        assert_eq!(c4.matrix.rank(), 1);
        assert!(catalecticant(&f, 5).is_err());
    }

    #[test]
    fn catalecticant_columns_are_derivatives() {
        let vs = VariableSet::binary();
        let f = parse_poly("u^3*v", &vs).unwrap();
        let cat = catalecticant(&f, 2).unwrap();
        let dual = vs.dual();
        for (j, m) in cat.columns.iter().enumerate() {
            let op = HomogeneousPoly::monomial(dual.clone(), m.clone(), Rational::from_integer(1.into()));
            let image = apolar_apply(&op, &f).unwrap();
            let col: Vec<Rational> = cat.rows.iter().map(|r| image.coeff(r)).collect();
            assert_eq!(col, cat.matrix.column(j));
        }
        let ker = ann_basis(&f, 2).unwrap();
        assert_eq!(ker.len(), 1);
        assert_eq!(ker[0].primitive().to_string(), "V^2");
    }

    #[test]
    fn cubic_perazzo_hvector() {
        let vs = VariableSet::perazzo();
        let f = parse_poly("x0*u^2 + x1*u*v + x2*v^2", &vs).unwrap();
        assert_eq!(h_vector(&f).unwrap().entries(), &[1, 5, 5, 1]);
        assert_eq!(h_vector(&HomogeneousPoly::zero(vs, 3)), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn ann_above_degree_is_everything() {
        let vs = VariableSet::binary();
        let f = parse_poly("u^2", &vs).unwrap();
        assert_eq!(ann_basis(&f, 3).unwrap().len(), 4);
    }

    #[test]
    fn expansions() {
        assert_eq!(binomial_expansion(6, 2), vec![(4, 2)]);
        assert_eq!(
            binomial_expansion(6, 6),
            vec![(6, 6), (5, 5), (4, 4), (3, 3), (2, 2), (1, 1)]
        );
        assert_eq!(binomial_expansion(10, 3), vec![(5, 3)]);
        assert_eq!(macaulay_upper(6, 2), 10);
        assert_eq!(macaulay_lower(6, 6), 0);
        assert_eq!(macaulay_lower(6, 2), 3);
        assert_eq!(green_bound(1, 4), 0);
        assert_eq!(macaulay_upper(2, 1), 3);
    }

    #[test]
    fn osequences() {
        assert!(is_osequence(&[1, 5, 6, 6, 5, 1]));
        assert!(!is_osequence(&[1, 2, 5]));
        assert!(is_osequence(&[1]));
        assert!(!is_osequence(&[2, 1]));
    }

    #[test]
    fn guard() {
        let vs = VariableSet::binary();
        let f = parse_poly("u^33", &vs).unwrap();
        assert!(matches!(h_vector(&f), Err(Error::Guard(_))));
        let loose = Limits {
            max_degree: 40,
            max_vars: 8,
        };
        assert_eq!(h_vector_with(&f, &loose).unwrap().socle_degree(), 33);
    }

    #[test]
    fn dims() {
        assert_eq!(dim_graded(5, 2), 15);
        assert_eq!(dim_graded(2, 7), 8);
        assert_eq!(dim_graded(0, 0), 1);
    }
}
