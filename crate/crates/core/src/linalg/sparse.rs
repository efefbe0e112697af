//! Sparse integer polynomials with packed exponents, used as the ring for
//! fraction-free symbolic elimination.
//!
//! A monomial in at most eight variables is packed into a `u128`, sixteen
//! bits per variable with variable 0 in the most significant field, so that
//! comparing packed keys is lexicographic comparison of exponent vectors and
//! multiplying monomials is integer addition.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::Zero;

pub(crate) const MAX_VARS: usize = 8;
const BITS: u32 = 16;
const MASK: u128 = (1 << BITS) - 1;

fn shift(nvars: usize, i: usize) -> u32 {
    BITS * (nvars - 1 - i) as u32
}

pub(crate) fn pack(exponents: &[u32]) -> u128 {
    debug_assert!(exponents.len() <= MAX_VARS);
    let n = exponents.len();
    exponents.iter().enumerate().fold(0u128, |acc, (i, &e)| {
        assert!(u128::from(e) <= MASK, "exponent overflow");
        acc | (u128::from(e) << shift(n, i))
    })
}

pub(crate) fn unpack(key: u128, nvars: usize) -> Vec<u32> {
    (0..nvars)
        .map(|i| ((key >> shift(nvars, i)) & MASK) as u32)
        .collect()
}

fn divides(a: u128, b: u128) -> bool {
    let mut x = a;
    let mut y = b;
    while x != 0 {
        if x & MASK > y & MASK {
            return false;
        }
        x >>= BITS;
        y >>= BITS;
    }
    true
}

/// Polynomial with integer coefficients, terms sorted by decreasing
/// packed monomial.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub(crate) struct IntPoly {
    terms: Vec<(u128, BigInt)>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { terms: Vec::new() }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (u128, BigInt)>) -> Self {
        let mut map: HashMap<u128, BigInt> = HashMap::new();
        for (m, c) in terms {
            *map.entry(m).or_default() += c;
        }
        Self::from_map(map)
    }

    fn from_map(map: HashMap<u128, BigInt>) -> Self {
        let mut terms: Vec<_> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        IntPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> &[(u128, BigInt)] {
        &self.terms
    }

    pub fn leading_monomial(&self) -> Option<u128> {
        self.terms.first().map(|t| t.0)
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut map: HashMap<u128, BigInt> = HashMap::with_capacity(self.len() * other.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let slot = map.entry(ma + mb).or_default();
                *slot += ca * cb;
            }
        }
        Self::from_map(map)
    }

    /// `self * a - other * b` in one pass.
    pub fn cross(a: &IntPoly, x: &IntPoly, b: &IntPoly, y: &IntPoly) -> IntPoly {
        let mut map: HashMap<u128, BigInt> = HashMap::new();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &x.terms {
                *map.entry(ma + mb).or_default() += ca * cb;
            }
        }
        for (ma, ca) in &b.terms {
            for (mb, cb) in &y.terms {
                *map.entry(ma + mb).or_default() -= ca * cb;
            }
        }
        Self::from_map(map)
    }

    /// Exact quotient `self / divisor`; panics if the division is not exact,
    /// which would mean a broken elimination invariant.
    pub fn div_exact(&self, divisor: &IntPoly) -> IntPoly {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        if divisor.len() == 1 {
            let (m, c) = &divisor.terms[0];
            let terms = self
                .terms
                .iter()
                .map(|(a, x)| {
                    assert!(divides(*m, *a), "inexact monomial division");
                    debug_assert!((x % c).is_zero());
                    (a - m, x / c)
                })
                .collect();
            return IntPoly { terms };
        }
        let (lm, lc) = divisor.terms[0].clone();
        let mut rem: BTreeMap<u128, BigInt> = self.terms.iter().cloned().collect();
        let mut quotient = Vec::new();
        while let Some((&m, c)) = rem.iter().next_back() {
            assert!(divides(lm, m), "inexact polynomial division");
            assert!((c % &lc).is_zero(), "inexact coefficient division");
            let qm = m - lm;
            let qc = c / &lc;
            for (dm, dc) in &divisor.terms {
                let key = dm + qm;
                let v = rem.entry(key).or_default();
                *v -= &qc * dc;
                if v.is_zero() {
                    rem.remove(&key);
                }
            }
            quotient.push((qm, qc));
        }
        IntPoly { terms: quotient }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(&[u32], i64)]) -> IntPoly {
        IntPoly::from_terms(terms.iter().map(|(e, c)| (pack(e), BigInt::from(*c))))
    }

    #[test]
    fn pack_roundtrip_and_order() {
        let a = pack(&[2, 0, 1]);
        assert_eq!(unpack(a, 3), vec![2, 0, 1]);
        assert!(pack(&[1, 0, 0]) > pack(&[0, 5, 5]));
        assert!(divides(pack(&[1, 0, 1]), pack(&[2, 3, 1])));
        assert!(!divides(pack(&[0, 0, 2]), pack(&[2, 3, 1])));
    }

    #[test]
    fn multiply_and_divide() {
        // (s + t)(s - t) = s^2 - t^2
        let a = p(&[(&[1, 0], 1), (&[0, 1], 1)]);
        let b = p(&[(&[1, 0], 1), (&[0, 1], -1)]);
        let c = a.mul(&b);
        assert_eq!(c, p(&[(&[2, 0], 1), (&[0, 2], -1)]));
        assert_eq!(c.div_exact(&a), b);
        assert_eq!(c.div_exact(&b), a);
        let cross = IntPoly::cross(&a, &a, &b, &b);
        assert_eq!(cross, p(&[(&[1, 1], 4)]));
    }

    #[test]
    #[should_panic]
    fn inexact_division_panics() {
        let a = p(&[(&[1, 0], 1), (&[0, 1], 1)]);
        let b = p(&[(&[2, 0], 1), (&[0, 2], 1)]);
        b.div_exact(&a);
    }
}
