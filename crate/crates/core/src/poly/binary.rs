//! Binary forms `p(u, v)`: coefficient vectors, gcds and sampling.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::{binomial, Integer};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::homogeneous::HomogeneousPoly;
use super::monomial::Monomial;
use super::vars::{VarRole, VariableSet};
use crate::{Error, Rational, Result};

/// A homogeneous polynomial in exactly two variables.
pub type BinaryForm = HomogeneousPoly;

/// Positions of the two binary variables of `p`'s ring, and a check that
/// nothing else occurs.
fn binary_axes(p: &HomogeneousPoly) -> Result<(usize, usize)> {
    let vars = p.vars();
    let (a, b) = if vars.len() == 2 {
        (0, 1)
    } else {
        match vars.indices_with_role(VarRole::UvBlock)[..] {
            [a, b] => (a, b),
            _ => {
                return Err(Error::NotBinary(format!(
                    "ring {vars} has no distinguished u, v pair"
                )))
            }
        }
    };
    if let Some(i) = p.support_vars().into_iter().find(|&i| i != a && i != b) {
        return Err(Error::NotBinary(format!(
            "`{}` occurs in {}",
            vars.name(i),
            p
        )));
    }
    Ok((a, b))
}

/// Coefficients of `p = sum c_i u^(e-i) v^i`, i = 0..=e. With `descale`, entry
/// `i` is divided by `binom(e, i)`, giving the `a_i` of
/// `p = sum binom(e, i) a_i u^(e-i) v^i`.
pub fn coeff_vector(p: &HomogeneousPoly, descale: bool) -> Result<Vec<Rational>> {
    let (a, b) = binary_axes(p)?;
    let e = p.degree();
    let mut out = vec![Rational::zero(); e as usize + 1];
    for (m, c) in p.terms() {
        let i = m.exponents()[b] as usize;
        debug_assert_eq!(m.exponents()[a] as usize, e as usize - i);
        out[i] = c.clone();
    }
    if descale {
        for (i, c) in out.iter_mut().enumerate() {
            *c /= Rational::from_integer(binomial(BigInt::from(e), BigInt::from(i)));
        }
    }
    Ok(out)
}

/// Inverse of [`coeff_vector`], over the `u, v` ring.
pub fn binary_from_coeffs(coeffs: &[Rational], descaled: bool) -> BinaryForm {
    binary_from_coeffs_in(&VariableSet::binary(), coeffs, descaled)
}

pub(crate) fn binary_from_coeffs_in(
    vars: &Arc<VariableSet>,
    coeffs: &[Rational],
    descaled: bool,
) -> BinaryForm {
    assert_eq!(vars.len(), 2);
    assert!(!coeffs.is_empty(), "a binary form of degree e has e + 1 coefficients");
    let e = coeffs.len() as u32 - 1;
    let terms = coeffs.iter().enumerate().map(|(i, c)| {
        let mut c = c.clone();
        if descaled {
            c *= Rational::from_integer(binomial(BigInt::from(e), BigInt::from(i)));
        }
        (Monomial::new(vec![e - i as u32, i as u32]), c)
    });
    HomogeneousPoly::from_terms(vars.clone(), e, terms).expect("terms have degree e")
}

/// Binary form over `u, v` with integer coefficients uniform in
/// `[-bound, bound]`, reproducible from `seed`.
pub fn random_binary_form(degree: u32, bound: u64, seed: u64) -> BinaryForm {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_binary_form_with(&mut rng, degree, bound)
}

pub(crate) fn random_binary_form_with<R: Rng>(rng: &mut R, degree: u32, bound: u64) -> BinaryForm {
    let b = bound.max(1) as i64;
    let coeffs: Vec<Rational> = (0..=degree)
        .map(|_| Rational::from_integer(BigInt::from(rng.gen_range(-b..=b))))
        .collect();
    binary_from_coeffs(&coeffs, false)
}

/// Univariate polynomial, coefficients from low to high degree.
type Univariate = Vec<Rational>;

fn trim(p: &mut Univariate) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn univariate_rem(a: &Univariate, b: &Univariate) -> Univariate {
    let mut r = a.clone();
    trim(&mut r);
    let db = b.len() - 1;
    let lead = b[db].clone();
    while r.len() > db {
        let k = r.len() - 1 - db;
        let q = &r[r.len() - 1] / &lead;
        for (i, c) in b.iter().enumerate() {
            r[k + i] -= &q * c;
        }
        r.pop();
        trim(&mut r);
    }
    r
}

fn univariate_gcd(a: &Univariate, b: &Univariate) -> Univariate {
    let (mut a, mut b) = (a.clone(), b.clone());
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = univariate_rem(&a, &b);
        a = b;
        b = r;
    }
    if let Some(lead) = a.last().cloned() {
        for c in a.iter_mut() {
            *c /= &lead;
        }
    }
    a
}

/// Multiplicity of the root at `(1 : 0)`, i.e. the power of the second
/// variable dividing the form; together with the dehomogenised polynomial.
fn split_form(coeffs: &[Rational]) -> (usize, Univariate) {
    let e = coeffs.len() - 1;
    let mult = coeffs.iter().position(|c| !c.is_zero()).unwrap_or(e + 1);
    // p(s, 1) = sum c_i s^(e - i)
    let mut uni: Univariate = (0..=e).map(|k| coeffs[e - k].clone()).collect();
    trim(&mut uni);
    (mult, uni)
}

/// Monic gcd of binary forms over a common two-variable ring. The gcd of two
/// zero forms is the zero form of degree 0.
pub fn binary_gcd(p: &BinaryForm, q: &BinaryForm) -> Result<BinaryForm> {
    if p.vars() != q.vars() {
        return Err(Error::VariableMismatch(format!("{} vs {}", p.vars(), q.vars())));
    }
    let vars = p.vars().clone();
    if vars.len() != 2 {
        return Err(Error::NotBinary(format!("ring {vars} has {} variables", vars.len())));
    }
    if p.is_zero() {
        return Ok(normalize_monic(q));
    }
    if q.is_zero() {
        return Ok(normalize_monic(p));
    }
    let (mp, up) = split_form(&coeff_vector(p, false)?);
    let (mq, uq) = split_form(&coeff_vector(q, false)?);
    let m = mp.min(mq);
    let g = univariate_gcd(&up, &uq);
    let k = g.len() - 1;
    let deg = m + k;
    // coefficient of s^(deg - i) t^i: from t^m * sum g_j s^j t^(k - j)
    let mut coeffs = vec![Rational::zero(); deg + 1];
    for (j, c) in g.iter().enumerate() {
        coeffs[deg - j] = c.clone();
    }
    Ok(binary_from_coeffs_in(&vars, &coeffs, false))
}

fn normalize_monic(p: &BinaryForm) -> BinaryForm {
    match p.leading_term() {
        Some((_, c)) => p.scale(&(Rational::one() / c)),
        None => p.clone(),
    }
}

/// A binary form is squarefree when it has no repeated linear factor,
/// including factors at infinity.
pub fn is_squarefree(p: &BinaryForm) -> Result<bool> {
    if p.is_zero() {
        return Ok(false);
    }
    let g = binary_gcd(p, &p.derivative(0))?;
    let g = binary_gcd(&g, &p.derivative(1))?;
    Ok(g.degree() == 0)
}

/// Distinct rational roots `(a : b)` of a nonzero binary form, as points with
/// `p(a, b) = 0`. Returns `None` when the search is abandoned because the
/// integer coefficients are too large to enumerate divisors.
pub fn rational_roots(p: &BinaryForm) -> Result<Option<Vec<(Rational, Rational)>>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let coeffs = coeff_vector(p, false)?;
    let (mult, uni) = split_form(&coeffs);
    let mut roots = Vec::new();
    if mult > 0 {
        roots.push((Rational::one(), Rational::zero()));
    }
    // strip roots at s = 0 as well, then use the rational root theorem
    let lcm = uni.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = uni.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    let low = ints.iter().position(|c| !c.is_zero()).unwrap_or(0);
    if low > 0 {
        roots.push((Rational::zero(), Rational::one()));
    }
    let ints = &ints[low..];
    if ints.len() > 1 {
        let (Some(c0), Some(cn)) = (divisors(&ints[0]), divisors(&ints[ints.len() - 1])) else {
            return Ok(None);
        };
        let mut found: Vec<Rational> = Vec::new();
        for num in &c0 {
            for den in &cn {
                for sign in [1, -1] {
                    let r = Rational::new(BigInt::from(sign) * num, den.clone());
                    if found.contains(&r) {
                        continue;
                    }
                    let mut acc = Rational::zero();
                    for c in ints.iter().rev() {
                        acc = acc * &r + Rational::from_integer(c.clone());
                    }
                    if acc.is_zero() {
                        found.push(r);
                    }
                }
            }
        }
        for r in found {
            roots.push((r, Rational::one()));
        }
    }
    Ok(Some(roots))
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64().filter(|&n| n <= 1_000_000_000_000)?;
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn bin(s: &str) -> BinaryForm {
        parse_poly(s, &VariableSet::binary()).unwrap()
    }

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn descaled_vectors() {
        assert_eq!(
            coeff_vector(&bin("u^3 + 3*u^2*v"), true).unwrap(),
            vec![q(1), q(1), q(0), q(0)]
        );
        assert_eq!(coeff_vector(&bin("(u+v)^3"), true).unwrap(), vec![q(1); 4]);
        assert_eq!(
            coeff_vector(&bin("v^5"), true).unwrap(),
            vec![q(0), q(0), q(0), q(0), q(0), q(1)]
        );
    }

    #[test]
    fn coeff_vector_rejects_other_variables() {
        let f = parse_poly("x0*u", &VariableSet::perazzo()).unwrap();
        assert!(matches!(coeff_vector(&f, false), Err(Error::NotBinary(_))));
        let g = parse_poly("u^2 - v^2", &VariableSet::perazzo()).unwrap();
        assert_eq!(coeff_vector(&g, false).unwrap(), vec![q(1), q(0), q(-1)]);
    }

    #[test]
    fn sampling_is_deterministic() {
        let a = random_binary_form(4, 100, 7);
        assert_eq!(a, random_binary_form(4, 100, 7));
        assert_eq!(a.degree(), 4);
        let c = random_binary_form(0, 1, 3);
        assert!(c.coeff(&Monomial::new(vec![0, 0])).abs() <= q(1));
    }

    #[test]
    fn gcd_keeps_roots_at_infinity() {
        let g = binary_gcd(&bin("u*v^2"), &bin("v^2*(u+v)")).unwrap();
        assert_eq!(g, bin("v^2"));
        let g = binary_gcd(&bin("u^2*v - u*v^2"), &bin("u^3 - u*v^2")).unwrap();
        assert_eq!(g, bin("u^2 - u*v"));
    }

    #[test]
    fn squarefree() {
        assert!(is_squarefree(&bin("u*v")).unwrap());
        assert!(!is_squarefree(&bin("v^2*u")).unwrap());
        assert!(!is_squarefree(&bin("u^3")).unwrap());
        assert!(is_squarefree(&bin("u^3 - u*v^2")).unwrap());
        assert!(is_squarefree(&bin("u^2 + v^2")).unwrap());
    }

    #[test]
    fn rational_roots_found() {
        let roots = rational_roots(&bin("u^3 - u*v^2")).unwrap().unwrap();
        assert_eq!(roots.len(), 3);
        for (a, b) in roots {
            assert!(bin("u^3 - u*v^2").evaluate(&[a, b]).is_zero());
        }
        let roots = rational_roots(&bin("u^2 + v^2")).unwrap().unwrap();
        assert!(roots.is_empty());
    }
}
