use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::matrix::RationalMatrix;
use super::sparse::{pack, unpack, IntPoly, MAX_VARS};
use crate::poly::{HomogeneousPoly, Monomial, VariableSet};
use crate::{Error, Rational, Result};

/// Dense matrix whose entries are homogeneous polynomials over one
/// variable set (the parameters).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    vars: Arc<VariableSet>,
    rows: usize,
    cols: usize,
    entries: Vec<HomogeneousPoly>,
}

/// Seed of the random points used for the lower bound of a generic rank.
const PROBE_SEED: u64 = 0x0a70_1a5e;
const PROBES: u64 = 3;

impl PolyMatrix {
    pub fn from_rows(vars: Arc<VariableSet>, rows: Vec<Vec<HomogeneousPoly>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Invariant("ragged polynomial matrix".into()));
        }
        let entries: Vec<HomogeneousPoly> = rows.into_iter().flatten().collect();
        if let Some(bad) = entries.iter().find(|p| **p.vars() != *vars) {
            return Err(Error::VariableMismatch(format!(
                "entry over {} in a matrix over {}",
                bad.vars(),
                vars
            )));
        }
        Ok(PolyMatrix {
            vars,
            rows: r,
            cols: c,
            entries,
        })
    }

    /// Constant matrix over `vars`.
    pub fn from_rational(vars: Arc<VariableSet>, m: &RationalMatrix) -> Self {
        let entries = (0..m.rows())
            .flat_map(|i| (0..m.cols()).map(move |j| (i, j)))
            .map(|(i, j)| HomogeneousPoly::constant(vars.clone(), m[(i, j)].clone()))
            .collect();
        PolyMatrix {
            vars,
            rows: m.rows(),
            cols: m.cols(),
            entries,
        }
    }

    pub fn vars(&self) -> &Arc<VariableSet> {
        &self.vars
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &HomogeneousPoly {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[HomogeneousPoly] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let entries = (0..self.cols)
            .flat_map(|j| (0..self.rows).map(move |i| (i, j)))
            .map(|(i, j)| self.entry(i, j).clone())
            .collect();
        PolyMatrix {
            vars: self.vars.clone(),
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    /// Submatrix on the given rows and columns.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let entries = rows
            .iter()
            .flat_map(|&i| cols.iter().map(move |&j| (i, j)))
            .map(|(i, j)| self.entry(i, j).clone())
            .collect();
        PolyMatrix {
            vars: self.vars.clone(),
            rows: rows.len(),
            cols: cols.len(),
            entries,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.entries.iter().all(|p| p.is_zero() || p.degree() == 0)
    }

    /// Specializes every entry at `point`.
    pub fn evaluate(&self, point: &[Rational]) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let p = self.entry(i, j);
                if !p.is_zero() {
                    m[(i, j)] = p.evaluate(point);
                }
            }
        }
        m
    }

    /// Rank at a few seeded random integer points; a lower bound for the
    /// generic rank.
    pub fn probe_rank(&self) -> usize {
        let full = self.rows.min(self.cols);
        let mut best = 0;
        for k in 0..PROBES {
            let mut rng = ChaCha8Rng::seed_from_u64(PROBE_SEED + k);
            let point: Vec<Rational> = (0..self.vars.len())
                .map(|_| Rational::from_integer(rng.gen_range(1..=997).into()))
                .collect();
            best = best.max(self.evaluate(&point).rank());
            if best == full {
                break;
            }
        }
        best
    }

    /// Rank over the field of rational functions in the parameters.
    ///
    /// A seeded random specialization gives a lower bound; if that is not
    /// already full, the rank is decided by fraction-free elimination over
    /// the polynomial ring.
    pub fn generic_rank(&self) -> usize {
        if self.is_constant() {
            return self.evaluate(&vec![Rational::zero(); self.vars.len()]).rank();
        }
        let full = self.rows.min(self.cols);
        if self.probe_rank() == full {
            return full;
        }
        self.symbolic_rank()
    }

    /// Generic rank by symbolic elimination only, with no random probing.
    pub fn symbolic_rank(&self) -> usize {
        let (mut a, _) = self.to_int_rows(self.uniform_degree().is_some_and(|e| e > 0));
        bareiss_poly(&mut a, false).0
    }

    /// Exact determinant. Matrices up to 4x4 are expanded along the first
    /// row; larger ones use fraction-free elimination.
    pub fn det_poly(&self) -> Result<HomogeneousPoly> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let tag: u32 = (0..self.rows).map(|i| self.entry(i, i).degree()).sum();
        if self.rows <= 4 {
            let idx: Vec<usize> = (0..self.rows).collect();
            let d = self.laplace(&idx, &idx);
            return Ok(d.with_degree_tag(tag));
        }
        if self.vars.len() > MAX_VARS {
            return Err(Error::Guard(format!(
                "symbolic elimination supports at most {MAX_VARS} variables"
            )));
        }
        let (mut a, scale) = self.to_int_rows(false);
        let (_, det) = bareiss_poly(&mut a, true);
        let n = self.vars.len();
        let terms = det.terms().iter().map(|(m, c)| {
            (
                Monomial::new(unpack(*m, n)),
                Rational::from_integer(c.clone()) / &scale,
            )
        });
        let degree = det
            .leading_monomial()
            .map(|m| unpack(m, n).iter().sum())
            .unwrap_or(tag);
        HomogeneousPoly::from_terms(self.vars.clone(), degree, terms)
    }

    fn laplace(&self, rows: &[usize], cols: &[usize]) -> HomogeneousPoly {
        if rows.is_empty() {
            return HomogeneousPoly::constant(self.vars.clone(), Rational::one());
        }
        if rows.len() == 1 {
            return self.entry(rows[0], cols[0]).clone();
        }
        let mut acc: Option<HomogeneousPoly> = None;
        for (k, &c) in cols.iter().enumerate() {
            let a = self.entry(rows[0], c);
            if a.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let minor = self.laplace(&rows[1..], &rest);
            if minor.is_zero() {
                continue;
            }
            let mut term = a * &minor;
            if k % 2 == 1 {
                term = -&term;
            }
            acc = Some(match acc {
                None => term,
                Some(s) => s
                    .checked_add(&term)
                    .expect("determinant terms share a degree"),
            });
        }
        acc.unwrap_or_else(|| HomogeneousPoly::zero(self.vars.clone(), 0))
    }

    /// Common degree of all nonzero entries, if there is one.
    fn uniform_degree(&self) -> Option<u32> {
        let mut degs = self.entries.iter().filter(|p| !p.is_zero()).map(|p| p.degree());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// Integer rows (each row multiplied by the lcm of its denominators) and
    /// the product of those multipliers. With `dehomogenize`, the first
    /// parameter is set to 1; this keeps the generic rank when all entries
    /// share one degree.
    fn to_int_rows(&self, dehomogenize: bool) -> (Vec<Vec<IntPoly>>, Rational) {
        assert!(
            self.vars.len() <= MAX_VARS,
            "symbolic elimination supports at most {MAX_VARS} variables"
        );
        let mut scale = BigInt::one();
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let row = self.row(i);
            let lcm = row
                .iter()
                .flat_map(|p| p.terms().map(|(_, c)| c.denom().clone()))
                .fold(BigInt::one(), |acc, d| acc.lcm(&d));
            scale *= &lcm;
            out.push(
                row.iter()
                    .map(|p| {
                        IntPoly::from_terms(p.terms().map(|(m, c)| {
                            let mut e = m.exponents().to_vec();
                            if dehomogenize && !e.is_empty() {
                                e[0] = 0;
                            }
                            (pack(&e), c.numer() * (&lcm / c.denom()))
                        }))
                    })
                    .collect(),
            );
        }
        (out, Rational::from_integer(scale))
    }
}

fn lead_key(p: &IntPoly) -> (u32, std::cmp::Reverse<u128>) {
    let m = p.leading_monomial().expect("nonzero pivot");
    let degree = (0..8).map(|k| ((m >> (16 * k)) & 0xffff) as u32).sum();
    (degree, std::cmp::Reverse(m))
}

/// Fraction-free elimination over the integer polynomial ring. Returns the
/// rank and, when `square` is set, the determinant (zero if singular).
fn bareiss_poly(a: &mut [Vec<IntPoly>], square: bool) -> (usize, IntPoly) {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = IntPoly::from_terms([(0u128, BigInt::one())]);
    let mut negate = false;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let pivot = (r..rows)
            .filter(|&i| !a[i][c].is_zero())
            .min_by_key(|&i| (lead_key(&a[i][c]), i));
        let Some(p) = pivot else {
            if square {
                return (r, IntPoly::zero());
            }
            continue;
        };
        if p != r {
            a.swap(p, r);
            negate = !negate;
        }
        let (top, bottom) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in bottom.iter_mut() {
            let lead = std::mem::take(&mut row[c]);
            for j in c + 1..cols {
                let v = if lead.is_zero() {
                    pivot_row[c].mul(&row[j])
                } else {
                    IntPoly::cross(&pivot_row[c], &row[j], &lead, &pivot_row[j])
                };
                row[j] = if v.is_zero() { v } else { v.div_exact(&prev) };
            }
        }
        prev = a[r][c].clone();
        r += 1;
    }
    let det = if square && r == rows && rows > 0 {
        let d = a[rows - 1][cols - 1].clone();
        if negate {
            IntPoly::from_terms(d.terms().iter().map(|(m, c)| (*m, -c.clone())))
        } else {
            d
        }
    } else if square && rows == 0 {
        IntPoly::from_terms([(0u128, BigInt::one())])
    } else {
        IntPoly::zero()
    };
    (r, det)
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}
