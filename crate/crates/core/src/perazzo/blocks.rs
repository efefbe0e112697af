//! Hankel blocks of the descaled coefficient vectors and the rank formulas
//! for the Hilbert function of a Perazzo threefold.

use crate::error::out_of_range;
use crate::inverse::HVector;
use crate::linalg::RationalMatrix;
use crate::Result;

use super::form::PerazzoForm;

/// `rows x cols` Hankel matrix `H[r][c] = v[r + c]`.
pub fn hankel(v: &[crate::Rational], rows: usize, cols: usize) -> RationalMatrix {
    assert!(rows + cols <= v.len() + 1, "Hankel window exceeds the vector");
    let mut m = RationalMatrix::zeros(rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            m[(r, c)] = v[r + c].clone();
        }
    }
    m
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockMatrices {
    pub k: u32,
    pub a: RationalMatrix,
    pub b: RationalMatrix,
    pub c: RationalMatrix,
    pub g: RationalMatrix,
    pub m: RationalMatrix,
    pub n: RationalMatrix,
    pub n_prime: RationalMatrix,
}

impl PerazzoForm {
    /// `(d - k + 1) x k` Hankel block of `p_i` (`i = 0, 1, 2` gives the
    /// blocks usually called A, B, C), for `1 <= k <= d`.
    pub fn p_block(&self, i: usize, k: u32) -> RationalMatrix {
        let d = self.degree() as usize;
        let k = k as usize;
        hankel(self.coef(i), d - k + 1, k)
    }

    /// `(d - k + 1) x (k + 1)` Hankel block of `g`, for `0 <= k <= d`.
    pub fn g_block(&self, k: u32) -> RationalMatrix {
        let d = self.degree() as usize;
        let k = k as usize;
        hankel(self.gcoef(), d - k + 1, k + 1)
    }

    fn check_k(&self, k: u32) -> Result<()> {
        let d = self.degree();
        if k < 1 || k + 1 > d {
            return Err(out_of_range("k", k, format!("1..={}", d - 1)));
        }
        Ok(())
    }

    /// `M_k = (A_k | B_k | C_k)`, for `1 <= k <= d - 1`.
    pub fn m_matrix(&self, k: u32) -> Result<RationalMatrix> {
        self.check_k(k)?;
        Ok(self
            .p_block(0, k)
            .hstack(&self.p_block(1, k))
            .hstack(&self.p_block(2, k)))
    }

    /// `N_k`: `A_{k+1}`, `B_{k+1}`, `C_{k+1}` stacked, for `1 <= k <= d - 1`.
    pub fn n_matrix(&self, k: u32) -> Result<RationalMatrix> {
        self.check_k(k)?;
        Ok(self
            .p_block(0, k + 1)
            .vstack(&self.p_block(1, k + 1))
            .vstack(&self.p_block(2, k + 1)))
    }

    /// `N'_k`: `N_k` with the `g` block `G_k` stacked below.
    pub fn n_prime_matrix(&self, k: u32) -> Result<RationalMatrix> {
        Ok(self.n_matrix(k)?.vstack(&self.g_block(k)))
    }
}

/// All blocks of index `k`, for `2 <= k <= (d + 1) / 2`.
pub fn blocks(pf: &PerazzoForm, k: u32) -> Result<BlockMatrices> {
    let top = (pf.degree() + 1) / 2;
    if k < 2 || k > top {
        return Err(out_of_range("k", k, format!("2..={top}")));
    }
    Ok(BlockMatrices {
        k,
        a: pf.p_block(0, k),
        b: pf.p_block(1, k),
        c: pf.p_block(2, k),
        g: pf.g_block(k),
        m: pf.m_matrix(k)?,
        n: pf.n_matrix(k)?,
        n_prime: pf.n_prime_matrix(k)?,
    })
}

/// Rank bounds on the Hilbert function: `lower_i = rank M_i + rank N_i`,
/// `upper_i = rank M_i + rank N'_i` for `2 <= i <= d - 2`; the ends are
/// `1, 5, ..., 5, 1`. When `g = 0` the lower vector is exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankProfile {
    pub lower: Vec<usize>,
    pub upper: Vec<usize>,
    pub exact: Option<HVector>,
}

pub fn h_via_ranks(pf: &PerazzoForm) -> Result<RankProfile> {
    let d = pf.degree();
    if d == 3 {
        let h = vec![1, 5, 5, 1];
        return Ok(RankProfile {
            lower: h.clone(),
            upper: h.clone(),
            exact: Some(HVector::new(h)),
        });
    }
    let n = d as usize + 1;
    let mut lower = vec![0; n];
    let mut upper = vec![0; n];
    for v in [&mut lower, &mut upper] {
        v[0] = 1;
        v[n - 1] = 1;
        v[1] = 5;
        v[n - 2] = 5;
    }
    for i in 2..=d - 2 {
        let m = pf.m_matrix(i)?.rank();
        lower[i as usize] = m + pf.n_matrix(i)?.rank();
        upper[i as usize] = m + pf.n_prime_matrix(i)?.rank();
    }
    let exact = (!pf.has_g()).then(|| HVector::new(lower.clone()));
    Ok(RankProfile {
        lower,
        upper,
        exact,
    })
}

fn check_degree(d: u32) -> Result<()> {
    if d < 4 {
        return Err(out_of_range("d", d, "4.."));
    }
    Ok(())
}

fn symmetric(d: u32, first_half: impl Fn(u32) -> usize) -> HVector {
    HVector::new(
        (0..=d)
            .map(|i| first_half(i.min(d - i)))
            .collect(),
    )
}

/// Largest Hilbert function of a Perazzo threefold of degree `d`: `4i + 1`
/// up to `i = (d + 1) / 4`, then the plateau `d + 2`, then symmetric. (The
/// four residues of `d` modulo 4 differ only in where the plateau starts.)
pub fn max_hvector(d: u32) -> Result<HVector> {
    check_degree(d)?;
    let t = (d + 1) / 4;
    Ok(symmetric(d, |i| {
        if i <= t {
            4 * i as usize + 1
        } else {
            d as usize + 2
        }
    }))
}

/// Smallest Hilbert function: `(1, 5, 6, ..., 6, 5, 1)`.
pub fn min_hvector(d: u32) -> Result<HVector> {
    check_degree(d)?;
    Ok(symmetric(d, |i| match i {
        0 => 1,
        1 => 5,
        _ => 6,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, VariableSet};

    fn pf(text: &str) -> PerazzoForm {
        PerazzoForm::from_poly(&parse_poly(text, &VariableSet::perazzo()).unwrap()).unwrap()
    }

    #[test]
    fn extremal_vectors() {
        assert_eq!(max_hvector(5).unwrap().entries(), &[1, 5, 7, 7, 5, 1]);
        assert_eq!(max_hvector(7).unwrap().entries(), &[1, 5, 9, 9, 9, 9, 5, 1]);
        assert_eq!(max_hvector(4).unwrap(), min_hvector(4).unwrap());
        assert_eq!(min_hvector(4).unwrap().entries(), &[1, 5, 6, 5, 1]);
        assert!(max_hvector(3).is_err());
    }

    #[test]
    fn block_shapes() {
        let f = pf("x0*u^4 + x1*u^3*v + x2*v^4");
        let b = blocks(&f, 2).unwrap();
        assert_eq!((b.a.rows(), b.a.cols()), (4, 2));
        assert_eq!((b.g.rows(), b.g.cols()), (4, 3));
        assert_eq!((b.m.rows(), b.m.cols()), (4, 6));
        assert_eq!((b.n.rows(), b.n.cols()), (9, 3));
        assert_eq!(b.m.rank(), 3);
        assert!(b.g.is_zero());
        assert_eq!(b.n_prime.rank(), b.n.rank());
        assert!(blocks(&f, 4).is_err());
        assert!(blocks(&f, 1).is_err());
    }

    #[test]
    fn minimal_witness_profile() {
        let f = pf("x0*u^7 + x1*u^6*v + x2*v^7");
        let r = h_via_ranks(&f).unwrap();
        assert_eq!(r.exact.unwrap(), min_hvector(8).unwrap());
        assert_eq!(r.lower.len(), 9);
    }
}
