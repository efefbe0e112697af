//! Higher Hessians, the strong Lefschetz property via Watanabe's criterion,
//! and the weak Lefschetz property via generic ranks of multiplication maps.

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::out_of_range;
use crate::inverse::{catalecticant, Limits};
use crate::linalg::{PolyMatrix, RationalMatrix};
use crate::poly::{apolar_apply, HomogeneousPoly, Monomial, VariableSet};
use crate::{Error, Rational, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Property {
    Wlp,
    Slp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certificate {
    /// A multiplication map has maximal rank for some (hence general) `L`.
    GenericRankMaximal,
    /// A multiplication map is rank deficient over the function field of
    /// the coefficients of `L`, so for every specialization.
    AllSpecializationsDeficient,
    HessianVanishes,
    HessianNonzero,
}

/// Rank of one multiplication stage `[A]_i -> [A]_{i+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageRank {
    pub degree: usize,
    pub rank: usize,
    pub max: usize,
}

impl StageRank {
    pub fn is_maximal(&self) -> bool {
        self.rank == self.max
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LefschetzVerdict {
    pub property: Property,
    pub holds: bool,
    /// First degree where the property fails: the target degree `i + 1` of
    /// a deficient stage for WLP, the order of the first vanishing Hessian
    /// for SLP.
    pub failing_degree: Option<usize>,
    pub certificate: Certificate,
    /// A linear form (coefficients on the dual variables) of maximal rank in
    /// every stage, when one was found.
    pub witness: Option<Vec<Rational>>,
    /// Per-stage ranks for WLP (generic ranks where they were computed);
    /// empty for SLP.
    pub stages: Vec<StageRank>,
    /// Hessian orders that were examined, with their vanishing status; SLP only.
    pub hessians: Vec<(usize, bool)>,
}

#[derive(Debug, Clone)]
pub struct HessianReport {
    pub order: usize,
    pub basis: Vec<Monomial>,
    pub matrix: PolyMatrix,
    pub det: HomogeneousPoly,
    pub vanishes: bool,
}

/// Multiplier for [`mult_map_matrix`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Multiplier {
    /// `L = a_0 y_0 + ... + a_n y_n` with fresh parameters `a_i`.
    Symbolic,
    /// Rational coefficients on the dual variables.
    Concrete(Vec<Rational>),
}

/// Degree-`t` data of `A_f`: the greedy monomial basis and the reduced
/// catalecticant, whose column `k` holds the coordinates of the `k`-th
/// monomial of `S_t` in that basis.
struct Level {
    basis: Vec<Monomial>,
    rref: RationalMatrix,
    index: HashMap<Monomial, usize>,
}

impl Level {
    fn new(f: &HomogeneousPoly, t: u32) -> Result<Self> {
        let cat = catalecticant(f, t)?;
        let (rref, pivots) = cat.matrix.rref();
        let basis = pivots.iter().map(|&j| cat.columns[j].clone()).collect();
        let index = cat
            .columns
            .into_iter()
            .enumerate()
            .map(|(j, m)| (m, j))
            .collect();
        Ok(Level { basis, rref, index })
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }

    fn coordinate(&self, row: usize, m: &Monomial) -> &Rational {
        &self.rref[(row, self.index[m])]
    }
}

fn check_nonzero(f: &HomogeneousPoly) -> Result<()> {
    if f.is_zero() {
        Err(Error::ZeroPolynomial)
    } else {
        Ok(())
    }
}

/// Greedy graded-lex monomial basis of `[A_f]_t`.
#[allow(non_snake_case)]
pub fn monomial_basis_of_A(f: &HomogeneousPoly, t: u32) -> Result<Vec<Monomial>> {
    Ok(Level::new(f, t)?.basis)
}

/// The `t`-th Hessian of `f` with respect to the greedy monomial basis.
pub fn hessian(f: &HomogeneousPoly, t: u32) -> Result<HessianReport> {
    check_order(f, t)?;
    let basis = monomial_basis_of_A(f, t)?;
    hessian_in_basis(f, t, basis)
}

/// The `t`-th Hessian with respect to a caller-chosen basis of `[A_f]_t`,
/// given by monomial representatives.
pub fn hessian_with_basis(f: &HomogeneousPoly, t: u32, basis: &[Monomial]) -> Result<HessianReport> {
    check_order(f, t)?;
    let level = Level::new(f, t)?;
    if basis.len() != level.dim() {
        return Err(Error::Invariant(format!(
            "{} monomials given for a space of dimension {}",
            basis.len(),
            level.dim()
        )));
    }
    let mut coords = RationalMatrix::zeros(level.dim(), basis.len());
    for (c, m) in basis.iter().enumerate() {
        if m.nvars() != f.vars().len() || m.degree() != t {
            return Err(Error::Invariant(format!("{m:?} is not a monomial of degree {t}")));
        }
        for r in 0..level.dim() {
            coords[(r, c)] = level.coordinate(r, m).clone();
        }
    }
    if coords.rank() != basis.len() {
        return Err(Error::Invariant("monomials are dependent in A_f".into()));
    }
    hessian_in_basis(f, t, basis.to_vec())
}

fn check_order(f: &HomogeneousPoly, t: u32) -> Result<()> {
    check_nonzero(f)?;
    let top = f.degree() / 2;
    if t < 1 || t > top {
        return Err(out_of_range("t", t, format!("1..={top}")));
    }
    Ok(())
}

fn hessian_in_basis(f: &HomogeneousPoly, t: u32, basis: Vec<Monomial>) -> Result<HessianReport> {
    let dual = f.vars().dual();
    let ops: Vec<HomogeneousPoly> = basis
        .iter()
        .map(|m| HomogeneousPoly::monomial(dual.clone(), m.clone(), Rational::one()))
        .collect();
    let mut rows = Vec::with_capacity(ops.len());
    for a in &ops {
        let mut row = Vec::with_capacity(ops.len());
        for b in &ops {
            row.push(apolar_apply(&(a * b), f)?);
        }
        rows.push(row);
    }
    let matrix = PolyMatrix::from_rows(f.vars().clone(), rows)?;
    let det = matrix.det_poly()?;
    let vanishes = det.is_zero();
    Ok(HessianReport {
        order: t as usize,
        basis,
        matrix,
        det,
        vanishes,
    })
}

/// Strong Lefschetz property in the narrow sense: holds iff no Hessian of
/// order `1..=deg f / 2` vanishes identically. Stops at the first vanishing
/// order.
pub fn has_slp(f: &HomogeneousPoly) -> Result<LefschetzVerdict> {
    has_slp_with(f, &Limits::default())
}

pub fn has_slp_with(f: &HomogeneousPoly, limits: &Limits) -> Result<LefschetzVerdict> {
    check_nonzero(f)?;
    limits.check(f)?;
    let mut hessians = Vec::new();
    for t in 1..=f.degree() / 2 {
        let vanishes = hessian(f, t)?.vanishes;
        hessians.push((t as usize, vanishes));
        if vanishes {
            return Ok(LefschetzVerdict {
                property: Property::Slp,
                holds: false,
                failing_degree: Some(t as usize),
                certificate: Certificate::HessianVanishes,
                witness: None,
                stages: Vec::new(),
                hessians,
            });
        }
    }
    Ok(LefschetzVerdict {
        property: Property::Slp,
        holds: true,
        failing_degree: None,
        certificate: Certificate::HessianNonzero,
        witness: None,
        stages: Vec::new(),
        hessians,
    })
}

/// Parameters `a0, a1, ...` for the coefficients of a symbolic `L`.
pub fn multiplier_parameters(n: usize) -> Arc<VariableSet> {
    VariableSet::parameters("a", n)
}

/// Matrix of `x L : [A]_i -> [A]_{i+1}` in the greedy monomial bases (rows
/// index the target basis). Entries live in the ring of
/// [`multiplier_parameters`]; they are constants for a concrete `L`.
pub fn mult_map_matrix(f: &HomogeneousPoly, i: u32, l: &Multiplier) -> Result<PolyMatrix> {
    check_nonzero(f)?;
    if i >= f.degree() {
        return Err(out_of_range("i", i, format!("0..{}", f.degree())));
    }
    let source = Level::new(f, i)?;
    let target = Level::new(f, i + 1)?;
    let n = f.vars().len();
    let params = multiplier_parameters(n);
    match l {
        Multiplier::Concrete(a) => {
            check_len(a, n)?;
            Ok(PolyMatrix::from_rational(params, &concrete_stage(&source, &target, a)))
        }
        Multiplier::Symbolic => symbolic_stage(&source, &target, &params),
    }
}

fn check_len(a: &[Rational], n: usize) -> Result<()> {
    if a.len() != n {
        return Err(Error::VariableMismatch(format!(
            "linear form with {} coefficients in a ring of {n} variables",
            a.len()
        )));
    }
    Ok(())
}

fn concrete_stage(source: &Level, target: &Level, a: &[Rational]) -> RationalMatrix {
    let n = a.len();
    let mut m = RationalMatrix::zeros(target.dim(), source.dim());
    for (c, b) in source.basis.iter().enumerate() {
        for (j, aj) in a.iter().enumerate() {
            if aj.is_zero() {
                continue;
            }
            let w = b.mul(&Monomial::var(n, j));
            for r in 0..target.dim() {
                let x = target.coordinate(r, &w);
                if !x.is_zero() {
                    m[(r, c)] += aj * x;
                }
            }
        }
    }
    m
}

fn symbolic_stage(source: &Level, target: &Level, params: &Arc<VariableSet>) -> Result<PolyMatrix> {
    let n = params.len();
    let mut rows = Vec::with_capacity(target.dim());
    for r in 0..target.dim() {
        let mut row = Vec::with_capacity(source.dim());
        for b in &source.basis {
            let terms = (0..n).map(|j| {
                let w = b.mul(&Monomial::var(n, j));
                (Monomial::var(n, j), target.coordinate(r, &w).clone())
            });
            row.push(HomogeneousPoly::from_terms(params.clone(), 1, terms)?);
        }
        rows.push(row);
    }
    PolyMatrix::from_rows(params.clone(), rows)
}

/// Coefficients of a linear operator over the dual variables of `f`.
pub fn linear_form_coefficients(f: &HomogeneousPoly, l: &HomogeneousPoly) -> Result<Vec<Rational>> {
    if !l.vars().is_dual_of(f.vars()) {
        return Err(Error::VariableMismatch(format!(
            "{} is not the dual ring of {}",
            l.vars(),
            f.vars()
        )));
    }
    if !l.is_zero() && l.degree() != 1 {
        return Err(Error::Invariant(format!("L has degree {}, expected 1", l.degree())));
    }
    let n = f.vars().len();
    Ok((0..n).map(|j| l.coeff(&Monomial::var(n, j))).collect())
}

/// Rank of `x L` in every degree, against the maximum `min(h_i, h_{i+1})`.
pub fn check_lefschetz_element(f: &HomogeneousPoly, l: &HomogeneousPoly) -> Result<Vec<StageRank>> {
    check_nonzero(f)?;
    let a = linear_form_coefficients(f, l)?;
    let levels = levels(f)?;
    Ok(stage_ranks(&levels, &a))
}

fn levels(f: &HomogeneousPoly) -> Result<Vec<Level>> {
    (0..=f.degree()).map(|t| Level::new(f, t)).collect()
}

fn stage_ranks(levels: &[Level], a: &[Rational]) -> Vec<StageRank> {
    levels
        .windows(2)
        .enumerate()
        .map(|(i, w)| StageRank {
            degree: i,
            rank: concrete_stage(&w[0], &w[1], a).rank(),
            max: w[0].dim().min(w[1].dim()),
        })
        .collect()
}

/// Random `L` tried before a stage is handed to symbolic elimination.
pub const WLP_ATTEMPTS: u64 = 3;

/// Coefficients of the `k`-th random linear form for `seed`, drawn from
/// `[1, 997]`.
pub fn random_multiplier(n: usize, seed: u64, k: u64) -> Vec<Rational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(k.wrapping_mul(0x9e37_79b9)));
    (0..n)
        .map(|_| Rational::from_integer(rng.gen_range(1..=997).into()))
        .collect()
}

/// Weak Lefschetz property: every `x L` has maximal rank for general `L`.
///
/// Up to [`WLP_ATTEMPTS`] seeded random forms are tried; a stage that none
/// of them brings to maximal rank is decided by the generic rank of the
/// symbolic multiplication matrix.
pub fn has_wlp(f: &HomogeneousPoly, seed: u64) -> Result<LefschetzVerdict> {
    has_wlp_with(f, seed, &Limits::default())
}

pub fn has_wlp_with(f: &HomogeneousPoly, seed: u64, limits: &Limits) -> Result<LefschetzVerdict> {
    check_nonzero(f)?;
    limits.check(f)?;
    let levels = levels(f)?;
    let n = f.vars().len();
    let mut best: Option<Vec<StageRank>> = None;
    let mut witness = None;
    for k in 0..WLP_ATTEMPTS {
        let a = random_multiplier(n, seed, k);
        let ranks = stage_ranks(&levels, &a);
        if ranks.iter().all(StageRank::is_maximal) {
            witness = Some(a);
            best = Some(ranks);
            break;
        }
        best = Some(match best {
            None => ranks,
            Some(b) => b
                .into_iter()
                .zip(ranks)
                .map(|(x, y)| if y.rank > x.rank { y } else { x })
                .collect(),
        });
    }
    let mut stages = best.unwrap_or_default();
    let params = multiplier_parameters(n);
    for (i, stage) in stages.iter_mut().enumerate() {
        if stage.is_maximal() {
            continue;
        }
        let m = symbolic_stage(&levels[i], &levels[i + 1], &params)?;
        stage.rank = m.generic_rank();
    }
    let failing = stages.iter().find(|s| !s.is_maximal()).map(|s| s.degree + 1);
    Ok(LefschetzVerdict {
        property: Property::Wlp,
        holds: failing.is_none(),
        failing_degree: failing,
        certificate: if failing.is_some() {
            Certificate::AllSpecializationsDeficient
        } else {
            Certificate::GenericRankMaximal
        },
        witness,
        stages,
        hessians: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn perazzo(text: &str) -> HomogeneousPoly {
        parse_poly(text, &VariableSet::perazzo()).unwrap()
    }

    #[test]
    fn basis_in_degree_zero() {
        let f = perazzo("x0*u^2 + x1*u*v + x2*v^2");
        assert_eq!(monomial_basis_of_A(&f, 0).unwrap(), vec![Monomial::one(5)]);
        assert_eq!(monomial_basis_of_A(&f, 1).unwrap().len(), 5);
    }

    #[test]
    fn cubic_perazzo_first_hessian_vanishes() {
        let f = perazzo("x0*u^2 + x1*u*v + x2*v^2");
        let h = hessian(&f, 1).unwrap();
        assert!(h.vanishes);
        assert_eq!(h.matrix.rows(), 5);
        let slp = has_slp(&f).unwrap();
        assert!(!slp.holds);
        assert_eq!(slp.failing_degree, Some(1));
        assert!(hessian(&f, 2).is_err());
    }

    #[test]
    fn pure_power_has_slp() {
        let vs = VariableSet::binary();
        let f = parse_poly("(u+v)^6", &vs).unwrap();
        let v = has_slp(&f).unwrap();
        assert!(v.holds);
        assert_eq!(v.certificate, Certificate::HessianNonzero);
        assert!(has_wlp(&f, 1).unwrap().holds);
    }

    #[test]
    fn stage_zero_is_the_coefficient_column() {
        let f = perazzo("x0*u^2 + x1*u*v + x2*v^2");
        let a: Vec<Rational> = (1..=5).map(|k| Rational::from_integer(k.into())).collect();
        let m = mult_map_matrix(&f, 0, &Multiplier::Concrete(a.clone())).unwrap();
        assert!(m.is_constant());
        let e = m.evaluate(&vec![Rational::zero(); 5]);
        assert_eq!(e.column(0), a);
    }

    #[test]
    fn zero_multiplier_has_zero_ranks() {
        let f = perazzo("x0*u^3 + x1*u^2*v + x2*v^3");
        let l = HomogeneousPoly::zero(f.vars().dual(), 1);
        let ranks = check_lefschetz_element(&f, &l).unwrap();
        assert_eq!(ranks.len(), 4);
        assert!(ranks.iter().all(|s| s.rank == 0));
    }
}
