//! Incidence of the plane `<p0, p1, p2>` with the rational normal curve of
//! `(d-1)`-th powers, the classification of minimal Hilbert functions, and
//! cone detection.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::out_of_range;
use crate::inverse::{ann_basis, h_vector, HVector};
use crate::linalg::RationalMatrix;
use crate::poly::{
    binary_gcd, coeff_vector, rational_roots, BinaryForm, HomogeneousPoly, Monomial,
    VariableSet,
};
use crate::{Error, Rational, Result};

use super::blocks::min_hvector;
use super::form::{linear, PerazzoForm};

/// Ring `s, t` of the parameter line of the rational normal curve
/// `(s:t) -> (s u + t v)^(d-1)`.
pub fn curve_parameters() -> Arc<VariableSet> {
    VariableSet::new(["s", "t"]).expect("static variable set")
}

/// Binary form in `s, t` whose roots are the points `(s u + t v)^(d-1)` of
/// the curve lying in the plane spanned by `p0, p1, p2`, with multiplicity.
///
/// Computed as the gcd of the forms `sum_i z_i binom(d-1, i) s^(d-1-i) t^i`
/// over a basis `z` of the relations among the raw coefficient columns;
/// these span the same space as the 4x4 minors of the coefficient matrix
/// extended by the row of `(s u + t v)^(d-1)`.
pub fn intersection_divisor(pf: &PerazzoForm) -> Result<BinaryForm> {
    let d = pf.degree();
    if d < 5 {
        return Err(out_of_range("d", d, "5.."));
    }
    let rows: Vec<Vec<Rational>> = pf
        .ps()
        .iter()
        .map(|p| coeff_vector(p, false))
        .collect::<Result<_>>()?;
    let e = d - 1;
    let params = curve_parameters();
    let mut acc = HomogeneousPoly::zero(params.clone(), 0);
    for z in RationalMatrix::from_rows(rows).kernel_basis() {
        let terms = z.iter().enumerate().map(|(i, c)| {
            let k = Rational::from_integer(binomial(BigInt::from(e), BigInt::from(i)));
            (Monomial::new(vec![e - i as u32, i as u32]), c * k)
        });
        let form = HomogeneousPoly::from_terms(params.clone(), e, terms)?;
        acc = binary_gcd(&acc, &form)?;
    }
    Ok(acc)
}

/// Root multiplicities of a nonzero binary form, largest first, from the
/// chain of gcds with the partial derivatives.
pub fn multiplicity_pattern(form: &BinaryForm) -> Result<Vec<u32>> {
    if form.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    // counts[k] = number of distinct roots of multiplicity > k
    let mut counts = Vec::new();
    let mut g = form.clone();
    while g.degree() > 0 {
        let next = binary_gcd(&binary_gcd(&g, &g.derivative(0))?, &g.derivative(1))?;
        counts.push(g.degree() - next.degree());
        g = next;
    }
    let mut out = Vec::new();
    for k in (0..counts.len()).rev() {
        let exact = counts[k] - counts.get(k + 1).copied().unwrap_or(0);
        out.extend(std::iter::repeat(k as u32 + 1).take(exact as usize));
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Case {
    /// The plane osculates the curve at one point.
    CaseI,
    /// The plane is tangent at one point and meets the curve at another.
    CaseII,
    /// The plane meets the curve at three distinct points.
    CaseIII,
    NonMinimal,
    NotPerazzo,
}

impl Case {
    pub fn is_minimal(self) -> bool {
        matches!(self, Case::CaseI | Case::CaseII | Case::CaseIII)
    }
}

/// Linear forms realizing the normal form, when the contact points are
/// rational: the points of the curve in the plane are `l1^(d-1)` (and
/// `l2^(d-1)`, and `(lambda l1 + mu l2)^(d-1)` in case III).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normalization {
    pub l1: BinaryForm,
    pub l2: BinaryForm,
    pub lambda_mu: Option<(Rational, Rational)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerazzoClass {
    pub case: Case,
    pub divisor: Option<BinaryForm>,
    pub divisor_pattern: Option<Vec<u32>>,
    pub normalization: Option<Normalization>,
    /// The degree-3 condition on `g`: `Ann(f)_3` and `Ann(f - g)_3` have
    /// the same dimension. Unlike an equality of the operator spaces, this
    /// is unchanged by the shifts `x_i -> x_i + l_i(u, v)`, which move `g`
    /// by `sum p_i l_i` without changing the algebra.
    pub g_compatible: bool,
    pub h_vector: Option<HVector>,
    pub reason: Option<String>,
}

fn cubic_annihilators(f: &HomogeneousPoly) -> Result<usize> {
    Ok(ann_basis(f, 3)?.len())
}

/// Classifies a Perazzo form of degree at least 5 by the incidence of its
/// plane with the rational normal curve and the condition on `g`, and
/// cross-checks the verdict against the Hilbert function.
pub fn classify(pf: &PerazzoForm) -> Result<PerazzoClass> {
    let d = pf.degree();
    if d < 5 {
        return Err(out_of_range("d", d, "5.."));
    }
    let divisor = intersection_divisor(pf)?;
    let pattern = multiplicity_pattern(&divisor)?;
    let f = pf.to_poly();
    let mut without_g = pf.clone();
    if pf.has_g() {
        without_g = PerazzoForm::new(pf.p(0), pf.p(1), pf.p(2), &HomogeneousPoly::zero(VariableSet::binary(), d))?;
    }
    let g_compatible = cubic_annihilators(&f)? == cubic_annihilators(&without_g.to_poly())?;
    let geometric = match (divisor.degree(), pattern.as_slice()) {
        (3, [3]) => Some(Case::CaseI),
        (3, [2, 1]) => Some(Case::CaseII),
        (3, [1, 1, 1]) => Some(Case::CaseIII),
        _ => None,
    };
    let (case, reason) = match geometric {
        Some(c) if g_compatible => (c, None),
        Some(_) => (
            Case::NonMinimal,
            Some("g changes the apolar operators of degree 3".to_string()),
        ),
        None => (
            Case::NonMinimal,
            Some(format!(
                "the plane meets the curve in a divisor of degree {}",
                divisor.degree()
            )),
        ),
    };
    let h = h_vector(&f)?;
    let minimal_h = h == min_hvector(d)?;
    if minimal_h != case.is_minimal() {
        return Err(Error::Invariant(format!(
            "classification {case:?} disagrees with the h-vector {h} of {f}"
        )));
    }
    let normalization = if case.is_minimal() {
        normalize(&divisor, case)?
    } else {
        None
    };
    Ok(PerazzoClass {
        case,
        divisor: Some(divisor),
        divisor_pattern: Some(pattern),
        normalization,
        g_compatible,
        h_vector: Some(h),
        reason,
    })
}

/// Classifies an arbitrary form; anything that is not a Perazzo form
/// (wrong ring, not linear in `x`, dependent `p_i`) is reported as such.
pub fn classify_poly(f: &HomogeneousPoly) -> Result<PerazzoClass> {
    match PerazzoForm::from_poly(f) {
        Ok(pf) => classify(&pf),
        Err(Error::NotPerazzo(why)) => Ok(PerazzoClass {
            case: Case::NotPerazzo,
            divisor: None,
            divisor_pattern: None,
            normalization: None,
            g_compatible: false,
            h_vector: None,
            reason: Some(why),
        }),
        Err(e) => Err(e),
    }
}

fn normalize(divisor: &BinaryForm, case: Case) -> Result<Option<Normalization>> {
    let Some(roots) = rational_roots(divisor)? else {
        return Ok(None);
    };
    let binary = VariableSet::binary();
    let as_form = |(s, t): &(Rational, Rational)| linear(&binary, s, t);
    let multiplicity = |root: &(Rational, Rational)| -> Result<u32> {
        // order of vanishing of the divisor along the root
        let mut g = divisor.clone();
        let mut m = 0;
        while !g.is_zero() && g.degree() > 0 && g.evaluate(&[root.0.clone(), root.1.clone()]).is_zero() {
            m += 1;
            g = binary_gcd(&g.derivative(0), &g.derivative(1))?;
        }
        Ok(m)
    };
    match case {
        Case::CaseI => {
            let [r] = roots.as_slice() else { return Ok(None) };
            let l1 = as_form(r);
            let l2 = if r.1.is_zero() {
                linear(&binary, &Rational::zero(), &Rational::one())
            } else {
                linear(&binary, &Rational::one(), &Rational::zero())
            };
            Ok(Some(Normalization {
                l1,
                l2,
                lambda_mu: None,
            }))
        }
        Case::CaseII => {
            let [a, b] = roots.as_slice() else { return Ok(None) };
            let (double, simple) = if multiplicity(a)? == 2 { (a, b) } else { (b, a) };
            Ok(Some(Normalization {
                l1: as_form(double),
                l2: as_form(simple),
                lambda_mu: None,
            }))
        }
        Case::CaseIII => {
            let [a, b, c] = roots.as_slice() else { return Ok(None) };
            // (c.0, c.1) = lambda (a.0, a.1) + mu (b.0, b.1)
            let det = &a.0 * &b.1 - &a.1 * &b.0;
            let lambda = (&c.0 * &b.1 - &c.1 * &b.0) / &det;
            let mu = (&a.0 * &c.1 - &a.1 * &c.0) / &det;
            Ok(Some(Normalization {
                l1: as_form(a),
                l2: as_form(b),
                lambda_mu: Some((lambda, mu)),
            }))
        }
        _ => Ok(None),
    }
}

/// A form is a cone iff its first partial derivatives are linearly
/// dependent.
pub fn is_cone(f: &HomogeneousPoly) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let n = f.vars().len();
    let rows: Vec<Vec<Rational>> = (0..n)
        .map(|i| f.derivative(i).with_degree_tag(f.degree().saturating_sub(1)).dense_coefficients())
        .collect();
    Ok(RationalMatrix::from_rows(rows).rank() < n)
}
