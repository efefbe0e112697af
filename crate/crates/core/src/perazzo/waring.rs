//! Waring rank of binary forms (Sylvester's algorithm) and membership in
//! secant varieties of the rational normal curve.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::inverse::{ann_basis, catalecticant};
use crate::linalg::RationalMatrix;
use crate::poly::{coeff_vector, is_squarefree, rational_roots, BinaryForm, HomogeneousPoly, VariableSet};
use crate::{Error, Rational, Result};

use super::form::linear;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WaringResult {
    pub rank: usize,
    /// Largest rank of a catalecticant of the form; the least `r` whose
    /// secant variety contains it.
    pub border_rank: usize,
    /// `p = sum c_i l_i^e` as `(l_i, c_i)` pairs over `u, v`, when the
    /// points of a decomposition are rational.
    pub decomposition: Option<Vec<(BinaryForm, Rational)>>,
}

fn check_binary(p: &BinaryForm) -> Result<Vec<Rational>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.degree() == 0 {
        return Err(Error::NotBinary("constant forms have no Waring rank".into()));
    }
    coeff_vector(p, false)
}

/// `p` over the ring `u, v`, whatever its original pair of variables.
fn normalize(p: &BinaryForm) -> Result<BinaryForm> {
    let raw = check_binary(p)?;
    Ok(crate::poly::binary_from_coeffs(&raw, false))
}

/// Largest catalecticant rank of `p`, attained at the balanced degree
/// `(deg + 1) / 2`.
pub fn border_rank(p: &BinaryForm) -> Result<usize> {
    let p = normalize(p)?;
    let e = p.degree();
    Ok(catalecticant(&p, (e + 1) / 2)?.matrix.rank())
}

/// True iff `[p]` lies on the `r`-th secant variety of the rational normal
/// curve: the balanced catalecticant has rank at most `r`.
pub fn secant_membership(p: &BinaryForm, r: usize) -> Result<bool> {
    Ok(border_rank(p)? <= r)
}

/// Sylvester's algorithm. For increasing `r`, the apolar operators of
/// degree `r` are examined; the rank is the first `r` at which a squarefree
/// one exists.
pub fn waring_rank(p: &BinaryForm) -> Result<WaringResult> {
    let p = normalize(p)?;
    let e = p.degree();
    let border = border_rank(&p)?;
    // degree and dimension of the first nonzero kernel
    let mut first: Option<(u32, usize)> = None;
    for r in 1..=e + 1 {
        let kernel = ann_basis(&p, r)?;
        if kernel.is_empty() {
            continue;
        }
        let candidate = match first {
            None if kernel.len() == 1 => {
                first = Some((r, 1));
                Some(kernel[0].clone())
            }
            // Until the kernel outgrows the multiples of a unique first
            // generator, every operator shares its repeated factors.
            Some((r1, 1)) if kernel.len() == (r - r1 + 1) as usize => None,
            _ => {
                first.get_or_insert((r, kernel.len()));
                squarefree_member(&kernel, r)
            }
        };
        if let Some(op) = candidate {
            if is_squarefree(&op)? {
                let decomposition = decompose(&p, &op)?;
                return Ok(WaringResult {
                    rank: r as usize,
                    border_rank: border,
                    decomposition,
                });
            }
        }
    }
    Err(Error::Invariant(format!("no squarefree apolar operator found for {p}")))
}

/// A squarefree element of the span of `kernel`: the basis elements first,
/// then seeded random combinations. Beyond the first generator's multiples
/// the general element is squarefree, so this terminates quickly.
fn squarefree_member(kernel: &[HomogeneousPoly], r: u32) -> Option<HomogeneousPoly> {
    for k in kernel {
        if is_squarefree(k).unwrap_or(false) {
            return Some(k.clone());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5175_e57e + u64::from(r));
    for _ in 0..256 {
        let mut acc = HomogeneousPoly::zero(kernel[0].vars().clone(), r);
        for k in kernel {
            let c = Rational::from_integer(rng.gen_range(-50i64..=50).into());
            acc = &acc + &k.scale(&c);
        }
        if is_squarefree(&acc).unwrap_or(false) {
            return Some(acc);
        }
    }
    None
}

/// Solves `p = sum c_i l_i^e` for the points of a squarefree apolar
/// operator, when its roots are all rational.
fn decompose(p: &BinaryForm, op: &HomogeneousPoly) -> Result<Option<Vec<(BinaryForm, Rational)>>> {
    let Some(roots) = rational_roots(op)? else {
        return Ok(None);
    };
    if roots.len() != op.degree() as usize {
        return Ok(None);
    }
    let binary = VariableSet::binary();
    let e = p.degree();
    let forms: Vec<BinaryForm> = roots.iter().map(|(a, b)| linear(&binary, a, b)).collect();
    let columns: Vec<Vec<Rational>> = forms
        .iter()
        .map(|l| coeff_vector(&l.pow(e), false))
        .collect::<Result<_>>()?;
    let target = coeff_vector(p, false)?;
    let system = RationalMatrix::from_columns(target.len(), &columns)
        .hstack(&RationalMatrix::from_columns(target.len(), &[target]));
    let (rref, pivots) = system.rref();
    let n = forms.len();
    if pivots.contains(&n) {
        return Err(Error::Invariant("apolar points do not span the form".into()));
    }
    let mut out = Vec::with_capacity(n);
    for (row, &col) in pivots.iter().enumerate() {
        let c = rref[(row, n)].clone();
        if !c.is_zero() {
            out.push((forms[col].clone(), c));
        }
    }
    Ok(Some(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn bf(s: &str) -> BinaryForm {
        parse_poly(s, &VariableSet::binary()).unwrap()
    }

    #[test]
    fn small_ranks() {
        let r = waring_rank(&bf("u^4")).unwrap();
        assert_eq!((r.rank, r.border_rank), (1, 1));
        let r = waring_rank(&bf("u^4 + v^4")).unwrap();
        assert_eq!((r.rank, r.border_rank), (2, 2));
        let r = waring_rank(&bf("u^3*v")).unwrap();
        assert_eq!((r.rank, r.border_rank), (4, 2));
        // even degree, full balanced catalecticant: the first kernel is a pencil
        let r = waring_rank(&bf("u^2*v^2")).unwrap();
        assert_eq!((r.rank, r.border_rank), (3, 3));
    }

    #[test]
    fn decomposition_reconstructs() {
        let p = bf("(u + 2*v)^5 - 3*(u - v)^5 + v^5");
        let r = waring_rank(&p).unwrap();
        assert_eq!(r.rank, 3);
        let parts = r.decomposition.unwrap();
        let mut acc = HomogeneousPoly::zero(VariableSet::binary(), 5);
        for (l, c) in &parts {
            acc = &acc + &l.pow(5).scale(c);
        }
        assert_eq!(acc, p);
    }

    #[test]
    fn secants() {
        assert!(secant_membership(&bf("u^3*v"), 2).unwrap());
        assert!(!secant_membership(&bf("u^4 + v^4"), 1).unwrap());
        assert!(secant_membership(&bf("u^4 + 3*u*v^3 - v^4"), 3).unwrap());
    }

    #[test]
    fn linear_forms_have_rank_one() {
        let r = waring_rank(&bf("2*u - 3*v")).unwrap();
        assert_eq!(r.rank, 1);
    }
}
