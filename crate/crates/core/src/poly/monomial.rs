use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::One;

/// Exponent vector, one entry per variable of the owning `VariableSet`.
///
/// `Ord` is the canonical enumeration order used everywhere: lower total
/// degree first, then lexicographic with larger powers of earlier variables
/// first (so `x0^2 < x0*x1 < x1^2`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        self.divides(other)
            .then(|| Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect()))
    }

    /// Coefficient picked up by `x^other` under the operator `y^self`:
    /// the product of falling factorials `b! / (b - a)!`.
    pub fn apolar_factor(&self, other: &Monomial) -> BigInt {
        let mut acc = BigInt::one();
        for (&a, &b) in self.0.iter().zip(&other.0) {
            for k in 0..a {
                acc *= b - k;
            }
        }
        acc
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of total degree `degree` in `nvars` variables, in the
/// canonical order.
pub fn monomials_of_degree(nvars: usize, degree: u32) -> Vec<Monomial> {
    fn rec(nvars: usize, pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if pos + 1 == nvars {
            cur[pos] = left;
            out.push(Monomial(cur.clone()));
            return;
        }
        for e in (0..=left).rev() {
            cur[pos] = e;
            rec(nvars, pos + 1, left - e, cur, out);
        }
        cur[pos] = 0;
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if degree == 0 {
            out.push(Monomial(Vec::new()));
        }
        return out;
    }
    rec(nvars, 0, degree, &mut vec![0; nvars], &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_is_sorted_and_complete() {
        let ms = monomials_of_degree(3, 2);
        assert_eq!(ms.len(), 6);
        assert_eq!(ms[0].exponents(), [2, 0, 0]);
        assert_eq!(ms[1].exponents(), [1, 1, 0]);
        assert_eq!(ms[5].exponents(), [0, 0, 2]);
        assert!(ms.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(monomials_of_degree(5, 4).len(), 70);
    }

    #[test]
    fn apolar_factor_is_falling_factorial() {
        let op = Monomial::new(vec![1, 1]);
        let m = Monomial::new(vec![2, 2]);
        assert_eq!(op.apolar_factor(&m), BigInt::from(4));
        let op = Monomial::new(vec![3, 0]);
        let m = Monomial::new(vec![3, 1]);
        assert_eq!(op.apolar_factor(&m), BigInt::from(6));
    }
}
