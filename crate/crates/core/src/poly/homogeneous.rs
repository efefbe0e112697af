use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::monomial::{monomials_of_degree, Monomial};
use super::vars::VariableSet;
use crate::{Error, Rational, Result};

/// A homogeneous polynomial with rational coefficients.
///
/// Every stored monomial has total degree `degree` and a nonzero
/// coefficient. The zero polynomial keeps its degree tag, so graded maps
/// always have a well defined target degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogeneousPoly {
    vars: Arc<VariableSet>,
    degree: u32,
    terms: BTreeMap<Monomial, Rational>,
}

impl HomogeneousPoly {
    pub fn zero(vars: Arc<VariableSet>, degree: u32) -> Self {
        HomogeneousPoly {
            vars,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: Arc<VariableSet>, c: Rational) -> Self {
        let n = vars.len();
        Self::monomial(vars, Monomial::one(n), c)
    }

    pub fn var(vars: Arc<VariableSet>, i: usize) -> Self {
        let n = vars.len();
        Self::monomial(vars, Monomial::var(n, i), Rational::one())
    }

    pub fn monomial(vars: Arc<VariableSet>, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.nvars(), vars.len(), "monomial arity");
        let degree = m.degree();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        HomogeneousPoly {
            vars,
            degree,
            terms,
        }
    }

    /// Builds a polynomial from terms, summing repeated monomials.
    pub fn from_terms<I>(vars: Arc<VariableSet>, degree: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut map: BTreeMap<Monomial, Rational> = BTreeMap::new();
        let mut bad = Vec::new();
        for (m, c) in terms {
            if m.nvars() != vars.len() {
                return Err(Error::VariableMismatch(format!(
                    "monomial with {} exponents in a ring of {} variables",
                    m.nvars(),
                    vars.len()
                )));
            }
            if c.is_zero() {
                continue;
            }
            if m.degree() != degree {
                bad.push(m.degree());
                continue;
            }
            *map.entry(m).or_insert_with(Rational::zero) += c;
        }
        if !bad.is_empty() {
            bad.push(degree);
            bad.sort_unstable();
            bad.dedup();
            return Err(Error::NonHomogeneous { found: bad });
        }
        map.retain(|_, c| !c.is_zero());
        Ok(HomogeneousPoly {
            vars,
            degree,
            terms: map,
        })
    }

    /// Polynomial whose coefficients on `basis` (all of one degree) are `coeffs`.
    pub fn from_coefficients(
        vars: Arc<VariableSet>,
        degree: u32,
        basis: &[Monomial],
        coeffs: &[Rational],
    ) -> Self {
        assert_eq!(basis.len(), coeffs.len());
        let terms = basis
            .iter()
            .zip(coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        HomogeneousPoly {
            vars,
            degree,
            terms,
        }
    }

    pub fn vars(&self) -> &Arc<VariableSet> {
        &self.vars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical (graded-lex) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// First term in canonical order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next()
    }

    /// Coefficients on the canonical monomial basis of this degree.
    pub fn dense_coefficients(&self) -> Vec<Rational> {
        monomials_of_degree(self.vars.len(), self.degree)
            .iter()
            .map(|m| self.coeff(m))
            .collect()
    }

    /// Indices of variables that occur with a positive exponent.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.vars.len())
            .filter(|&i| self.terms.keys().any(|m| m.exponents()[i] > 0))
            .collect()
    }

    pub fn with_degree_tag(mut self, degree: u32) -> Self {
        if self.is_zero() {
            self.degree = degree;
        }
        self
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars.clone(), self.degree);
        }
        HomogeneousPoly {
            vars: self.vars.clone(),
            degree: self.degree,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    fn check_compatible(&self, other: &Self) {
        assert!(
            self.vars == other.vars,
            "polynomials over different variable sets ({} vs {})",
            self.vars,
            other.vars
        );
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.vars != other.vars {
            return Err(Error::VariableMismatch(format!("{} vs {}", self.vars, other.vars)));
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.degree != other.degree {
            return Err(Error::NonHomogeneous {
                found: vec![self.degree.min(other.degree), self.degree.max(other.degree)],
            });
        }
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let e = terms.entry(m.clone()).or_insert_with(Rational::zero);
            *e += c;
            if e.is_zero() {
                terms.remove(m);
            }
        }
        Ok(HomogeneousPoly {
            vars: self.vars.clone(),
            degree: self.degree,
            terms,
        })
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(self.vars.clone(), Rational::one());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Self {
        let degree = self.degree.saturating_sub(1);
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exponents()[i];
            if e == 0 {
                continue;
            }
            let mut ex = m.exponents().to_vec();
            ex[i] -= 1;
            terms.insert(Monomial::new(ex), c * Rational::from_integer(BigInt::from(e)));
        }
        HomogeneousPoly {
            vars: self.vars.clone(),
            degree,
            terms,
        }
    }

    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.vars.len());
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                for _ in 0..e {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitutes variable `i` by `images[i]`; all images must be forms of
    /// one common degree over one common variable set.
    pub fn substitute(&self, images: &[HomogeneousPoly]) -> Result<Self> {
        if images.len() != self.vars.len() {
            return Err(Error::VariableMismatch(format!(
                "{} images for {} variables",
                images.len(),
                self.vars.len()
            )));
        }
        let target = images
            .first()
            .map(|p| p.vars.clone())
            .ok_or_else(|| Error::VariableMismatch("empty substitution".into()))?;
        let img_deg = images[0].degree;
        if images.iter().any(|p| p.vars != target || p.degree != img_deg) {
            return Err(Error::VariableMismatch(
                "substitution images must share a ring and a degree".into(),
            ));
        }
        let out_deg = self.degree * img_deg;
        // Cache powers per variable.
        let mut powers: Vec<Vec<HomogeneousPoly>> = images
            .iter()
            .map(|p| vec![HomogeneousPoly::constant(target.clone(), Rational::one()), p.clone()])
            .collect();
        let mut acc = HomogeneousPoly::zero(target.clone(), out_deg);
        for (m, c) in &self.terms {
            let mut t = HomogeneousPoly::constant(target.clone(), c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                let e = e as usize;
                while powers[i].len() <= e {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e];
            }
            acc = acc.checked_add(&t.with_degree_tag(out_deg))?;
        }
        Ok(acc.with_degree_tag(out_deg))
    }

    /// Same coefficients over another variable set with the same arity.
    pub fn rename(&self, vars: Arc<VariableSet>) -> Result<Self> {
        if vars.len() != self.vars.len() {
            return Err(Error::VariableMismatch(format!("{} vs {}", self.vars, vars)));
        }
        Ok(HomogeneousPoly {
            vars,
            degree: self.degree,
            terms: self.terms.clone(),
        })
    }

    /// Re-embeds into `target`, mapping each used variable by name.
    pub fn embed(&self, target: Arc<VariableSet>) -> Result<Self> {
        let map: Vec<Option<usize>> = self
            .vars
            .names()
            .iter()
            .map(|n| target.index_of(n))
            .collect();
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut ex = vec![0; target.len()];
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let j = map[i].ok_or_else(|| {
                    Error::VariableMismatch(format!(
                        "`{}` does not exist in {}",
                        self.vars.name(i),
                        target
                    ))
                })?;
                ex[j] += e;
            }
            terms.insert(Monomial::new(ex), c.clone());
        }
        Ok(HomogeneousPoly {
            vars: target,
            degree: self.degree,
            terms,
        })
    }

    /// Divides by the gcd of the numerators (after clearing denominators) so
    /// the coefficients are coprime integers with a positive leading one.
    pub fn primitive(&self) -> Self {
        use num_integer::Integer;
        if self.is_zero() {
            return self.clone();
        }
        let mut lcm = BigInt::one();
        for c in self.terms.values() {
            lcm = lcm.lcm(c.denom());
        }
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            let n = c.numer() * (&lcm / c.denom());
            g = g.gcd(&n);
        }
        let mut scale = Rational::new(lcm, g);
        if self.leading_term().map(|(_, c)| c.is_negative()).unwrap_or(false) {
            scale = -scale;
        }
        self.scale(&scale)
    }
}

impl Add for &HomogeneousPoly {
    type Output = HomogeneousPoly;

    fn add(self, rhs: &HomogeneousPoly) -> HomogeneousPoly {
        self.checked_add(rhs).expect("adding incompatible polynomials")
    }
}

impl Neg for &HomogeneousPoly {
    type Output = HomogeneousPoly;

    fn neg(self) -> HomogeneousPoly {
        self.scale(&-Rational::one())
    }
}

impl Sub for &HomogeneousPoly {
    type Output = HomogeneousPoly;

    fn sub(self, rhs: &HomogeneousPoly) -> HomogeneousPoly {
        self + &(-rhs)
    }
}

impl Mul for &HomogeneousPoly {
    type Output = HomogeneousPoly;

    fn mul(self, rhs: &HomogeneousPoly) -> HomogeneousPoly {
        self.check_compatible(rhs);
        let mut terms: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                *terms.entry(a.mul(b)).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        HomogeneousPoly {
            vars: self.vars.clone(),
            degree: self.degree + rhs.degree,
            terms,
        }
    }
}

/// Applies the differential operator `op` (a form over the dual variables)
/// to `f`: each `y_i` acts as `d/dx_i`.
pub fn apolar_apply(op: &HomogeneousPoly, f: &HomogeneousPoly) -> Result<HomogeneousPoly> {
    if !op.vars.is_dual_of(&f.vars) {
        return Err(Error::VariableMismatch(format!(
            "operator ring {} is not dual to {}",
            op.vars, f.vars
        )));
    }
    let degree = f.degree.saturating_sub(op.degree);
    let mut out = HomogeneousPoly::zero(f.vars.clone(), degree);
    if op.degree > f.degree {
        return Ok(out);
    }
    for (a, ca) in &op.terms {
        for (b, cb) in &f.terms {
            if let Some(q) = a.quotient_of(b) {
                let k = Rational::from_integer(a.apolar_factor(b));
                let e = out.terms.entry(q).or_insert_with(Rational::zero);
                *e += ca * cb * k;
            }
        }
    }
    out.terms.retain(|_, c| !c.is_zero());
    Ok(out)
}

impl fmt::Display for HomogeneousPoly {
    /// Canonical rendering: graded-lex term order, explicit `*` and `^`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors = Vec::new();
            if !abs.is_one() || m.degree() == 0 {
                factors.push(abs.to_string());
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.vars.name(i).to_string()),
                    _ => factors.push(format!("{}^{}", self.vars.name(i), e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn bin(s: &str) -> HomogeneousPoly {
        parse_poly(s, &VariableSet::binary()).unwrap()
    }

    fn op(s: &str) -> HomogeneousPoly {
        parse_poly(s, &VariableSet::binary().dual()).unwrap()
    }

    #[test]
    fn uv_on_u2v2() {
        let r = apolar_apply(&op("U*V"), &bin("u^2*v^2")).unwrap();
        assert_eq!(r, bin("4*u*v"));
    }

    #[test]
    fn operator_of_higher_degree_gives_zero() {
        let r = apolar_apply(&op("U^3"), &bin("u^2")).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn mismatched_rings_are_rejected() {
        let f = bin("u^2");
        assert!(matches!(apolar_apply(&f, &f), Err(Error::VariableMismatch(_))));
    }

    #[test]
    fn rendering() {
        let vs = VariableSet::perazzo();
        let f = parse_poly("x2*v^2 + x0*u^2 - 1/2*x1*u*v", &vs).unwrap();
        assert_eq!(f.to_string(), "x0*u^2 - 1/2*x1*u*v + x2*v^2");
        assert_eq!(bin("-u^2 + 3*v^2").to_string(), "-u^2 + 3*v^2");
    }

    #[test]
    fn substitution_of_linear_forms() {
        let p = bin("u^2");
        let img = [bin("u + v"), bin("u - v")];
        assert_eq!(p.substitute(&img).unwrap(), bin("u^2 + 2*u*v + v^2"));
    }

    #[test]
    fn primitive_normalises_sign_and_content() {
        let p = bin("-2/3*u^2 + 4/3*v^2");
        assert_eq!(p.primitive(), bin("u^2 - 2*v^2"));
    }
}
