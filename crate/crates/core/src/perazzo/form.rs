use std::sync::Arc;

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::out_of_range;
use crate::linalg::RationalMatrix;
use crate::poly::{
    binary_from_coeffs, coeff_vector, random_binary_form_with, BinaryForm, HomogeneousPoly,
    Monomial, VarRole, VariableSet,
};
use crate::{Error, Rational, Result};

/// `f = p0 x0 + p1 x1 + p2 x2 + g` with `p_i` binary forms of degree `d - 1`
/// spanning a 3-dimensional space and `g` a binary form of degree `d`.
///
/// The forms are stored over the ring `u, v`; `a`, `b`, `c`, `gcoef` are
/// their descaled coefficient vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerazzoForm {
    d: u32,
    p: [BinaryForm; 3],
    g: BinaryForm,
    coef: [Vec<Rational>; 3],
    gcoef: Vec<Rational>,
}

fn rebase(p: &BinaryForm, degree: u32, what: &str) -> Result<BinaryForm> {
    if p.is_zero() {
        return Ok(HomogeneousPoly::zero(VariableSet::binary(), degree));
    }
    if p.degree() != degree {
        return Err(Error::NotPerazzo(format!(
            "{what} has degree {}, expected {degree}",
            p.degree()
        )));
    }
    Ok(binary_from_coeffs(&coeff_vector(p, false)?, false))
}

impl PerazzoForm {
    pub fn new(p0: &BinaryForm, p1: &BinaryForm, p2: &BinaryForm, g: &BinaryForm) -> Result<Self> {
        let d = p0.degree().max(p1.degree()).max(p2.degree()) + 1;
        if d < 3 {
            return Err(out_of_range("d", d, "3.."));
        }
        let p = [
            rebase(p0, d - 1, "p0")?,
            rebase(p1, d - 1, "p1")?,
            rebase(p2, d - 1, "p2")?,
        ];
        let g = rebase(g, d, "g")?;
        let coef = [
            coeff_vector(&p[0], true)?,
            coeff_vector(&p[1], true)?,
            coeff_vector(&p[2], true)?,
        ];
        let raw = RationalMatrix::from_rows(
            p.iter()
                .map(|q| coeff_vector(q, false))
                .collect::<Result<_>>()?,
        );
        if raw.rank() < 3 {
            return Err(Error::NotPerazzo("p0, p1, p2 are linearly dependent".into()));
        }
        let gcoef = coeff_vector(&g, true)?;
        Ok(PerazzoForm {
            d,
            p,
            g,
            coef,
            gcoef,
        })
    }

    /// Splits a form over a ring with three `x`-block and two `uv`-block
    /// variables into its Perazzo pieces.
    pub fn from_poly(f: &HomogeneousPoly) -> Result<Self> {
        let vars = f.vars();
        let xs = vars.indices_with_role(VarRole::XBlock);
        let uv = vars.indices_with_role(VarRole::UvBlock);
        if xs.len() != 3 || uv.len() != 2 {
            return Err(Error::NotPerazzo(format!(
                "ring {vars} needs three x variables and u, v"
            )));
        }
        let d = f.degree();
        if d < 3 {
            return Err(Error::NotPerazzo(format!("degree {d} is below 3")));
        }
        let binary = VariableSet::binary();
        let mut parts: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); 4];
        for (m, c) in f.terms() {
            let e = m.exponents();
            if let Some(i) = (0..vars.len()).find(|i| e[*i] > 0 && !xs.contains(i) && !uv.contains(i)) {
                return Err(Error::NotPerazzo(format!("`{}` occurs in f", vars.name(i))));
            }
            let xdeg: u32 = xs.iter().map(|&i| e[i]).sum();
            let uvm = Monomial::new(vec![e[uv[0]], e[uv[1]]]);
            match xdeg {
                0 => parts[3].push((uvm, c.clone())),
                1 => {
                    let k = xs.iter().position(|&i| e[i] == 1).expect("one x variable");
                    parts[k].push((uvm, c.clone()));
                }
                _ => {
                    return Err(Error::NotPerazzo(
                        "f is not linear in the x variables".into(),
                    ))
                }
            }
        }
        let mut forms = parts.into_iter().enumerate().map(|(k, terms)| {
            let deg = if k == 3 { d } else { d - 1 };
            HomogeneousPoly::from_terms(binary.clone(), deg, terms)
        });
        let p0 = forms.next().expect("four parts")?;
        let p1 = forms.next().expect("four parts")?;
        let p2 = forms.next().expect("four parts")?;
        let g = forms.next().expect("four parts")?;
        Self::new(&p0, &p1, &p2, &g)
    }

    /// Seeded random form with integer coefficients in `[-bound, bound]`;
    /// `g` is zero unless `with_g` is set.
    pub fn random(d: u32, bound: u64, seed: u64, with_g: bool) -> Result<Self> {
        if d < 3 {
            return Err(out_of_range("d", d, "3.."));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        loop {
            let p0 = random_binary_form_with(&mut rng, d - 1, bound);
            let p1 = random_binary_form_with(&mut rng, d - 1, bound);
            let p2 = random_binary_form_with(&mut rng, d - 1, bound);
            let g = if with_g {
                random_binary_form_with(&mut rng, d, bound)
            } else {
                HomogeneousPoly::zero(VariableSet::binary(), d)
            };
            match Self::new(&p0, &p1, &p2, &g) {
                Err(Error::NotPerazzo(_)) => continue,
                other => return other,
            }
        }
    }

    /// `f` over the ring `x0, x1, x2, u, v`.
    pub fn to_poly(&self) -> HomogeneousPoly {
        let vars = VariableSet::perazzo();
        let mut acc = self.g.embed(vars.clone()).expect("u, v embed");
        for (i, p) in self.p.iter().enumerate() {
            let term = &HomogeneousPoly::var(vars.clone(), i) * &p.embed(vars.clone()).expect("u, v embed");
            acc = &acc + &term;
        }
        acc.with_degree_tag(self.d)
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn p(&self, i: usize) -> &BinaryForm {
        &self.p[i]
    }

    pub fn ps(&self) -> &[BinaryForm; 3] {
        &self.p
    }

    pub fn g(&self) -> &BinaryForm {
        &self.g
    }

    pub fn has_g(&self) -> bool {
        !self.g.is_zero()
    }

    /// Descaled coefficients `a_i` of `p0`.
    pub fn a(&self) -> &[Rational] {
        &self.coef[0]
    }

    pub fn b(&self) -> &[Rational] {
        &self.coef[1]
    }

    pub fn c(&self) -> &[Rational] {
        &self.coef[2]
    }

    pub fn gcoef(&self) -> &[Rational] {
        &self.gcoef
    }

    pub(crate) fn coef(&self, i: usize) -> &[Rational] {
        &self.coef[i]
    }

    /// Same `g`, new `p` triple; used for coordinate-free comparisons.
    pub fn with_ps(&self, ps: [BinaryForm; 3]) -> Result<Self> {
        Self::new(&ps[0], &ps[1], &ps[2], &self.g)
    }

    /// The pieces after the linear substitution `u -> m00 u + m01 v`,
    /// `v -> m10 u + m11 v`.
    pub fn transform(&self, m: [[Rational; 2]; 2]) -> Result<Self> {
        let binary = VariableSet::binary();
        let images = [
            linear(&binary, &m[0][0], &m[0][1]),
            linear(&binary, &m[1][0], &m[1][1]),
        ];
        let sub = |p: &BinaryForm| -> Result<BinaryForm> {
            if p.is_zero() {
                return Ok(p.clone());
            }
            p.substitute(&images)
        };
        Self::new(&sub(&self.p[0])?, &sub(&self.p[1])?, &sub(&self.p[2])?, &sub(&self.g)?)
    }
}

pub(crate) fn linear(vars: &Arc<VariableSet>, a: &Rational, b: &Rational) -> HomogeneousPoly {
    let terms = [
        (Monomial::new(vec![1, 0]), a.clone()),
        (Monomial::new(vec![0, 1]), b.clone()),
    ]
    .into_iter()
    .filter(|(_, c)| !c.is_zero());
    HomogeneousPoly::from_terms(vars.clone(), 1, terms).expect("linear terms")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    #[test]
    fn roundtrip_through_poly() {
        let vs = VariableSet::perazzo();
        let f = parse_poly("x0*u^3 + x1*u^2*v + x2*v^3 + 2*u^2*v^2", &vs).unwrap();
        let pf = PerazzoForm::from_poly(&f).unwrap();
        assert_eq!(pf.degree(), 4);
        assert_eq!(pf.to_poly(), f);
        assert_eq!(pf.a()[0], Rational::from_integer(1.into()));
        assert_eq!(pf.gcoef()[2], Rational::new(1.into(), 3.into()));
    }

    #[test]
    fn rejects_dependence_and_quadratic_x() {
        let vs = VariableSet::perazzo();
        let f = parse_poly("x0*u^2 + x1*u^2 + x2*v^2", &vs).unwrap();
        assert!(matches!(PerazzoForm::from_poly(&f), Err(Error::NotPerazzo(_))));
        let f = parse_poly("x0^2*u + x1*u*v + x2*v^2", &vs).unwrap();
        assert!(matches!(PerazzoForm::from_poly(&f), Err(Error::NotPerazzo(_))));
    }

    #[test]
    fn random_is_reproducible() {
        let a = PerazzoForm::random(6, 100, 11, true).unwrap();
        let b = PerazzoForm::random(6, 100, 11, true).unwrap();
        assert_eq!(a, b);
        assert!(a.has_g());
    }
}
