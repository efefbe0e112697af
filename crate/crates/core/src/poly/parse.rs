//! Parser for the polynomial text format.
//!
//! ```text
//! expression := term { ("+" | "-") term }
//! term       := [sign] factor { "*" factor }
//! factor     := atom [ "^" nat ]
//! atom       := int [ "/" posint ] | var | "(" expression ")"
//! ```
//!
//! Whitespace is ignored. Parenthesised groups and powers of them are
//! accepted on top of the flat `coefficient*var^k` form produced by
//! `Display`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::homogeneous::HomogeneousPoly;
use super::monomial::Monomial;
use super::vars::VariableSet;
use crate::{Error, Rational, Result};

type Sparse = BTreeMap<Vec<u32>, Rational>;

/// Parses a homogeneous polynomial. The zero polynomial gets degree tag 0;
/// use [`parse_poly_with_degree`] to choose another.
pub fn parse_poly(text: &str, vars: &Arc<VariableSet>) -> Result<HomogeneousPoly> {
    parse_poly_with_degree(text, vars, None)
}

/// Parses a homogeneous polynomial; when `degree` is given, a nonzero result
/// must have exactly that degree and a zero result is tagged with it.
pub fn parse_poly_with_degree(
    text: &str,
    vars: &Arc<VariableSet>,
    degree: Option<u32>,
) -> Result<HomogeneousPoly> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        vars,
    };
    let sparse = p.expression()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    let mut degrees: Vec<u32> = sparse.keys().map(|e| e.iter().sum()).collect();
    degrees.sort_unstable();
    degrees.dedup();
    if let Some(d) = degree {
        if degrees.iter().any(|&x| x != d) {
            degrees.push(d);
            degrees.sort_unstable();
            degrees.dedup();
            return Err(Error::NonHomogeneous { found: degrees });
        }
    }
    if degrees.len() > 1 {
        return Err(Error::NonHomogeneous { found: degrees });
    }
    let deg = degrees.first().copied().or(degree).unwrap_or(0);
    HomogeneousPoly::from_terms(
        vars.clone(),
        deg,
        sparse.into_iter().map(|(e, c)| (Monomial::new(e), c)),
    )
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a Arc<VariableSet>,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Syntax {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expression(&mut self) -> Result<Sparse> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    add_into(&mut acc, t, false);
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    add_into(&mut acc, t, true);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Sparse> {
        let mut negate = false;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            if c == b'-' {
                negate = !negate;
            }
            self.pos += 1;
        }
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = mul(&acc, &f);
        }
        if negate {
            for c in acc.values_mut() {
                *c = -c.clone();
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Sparse> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let k = self.natural()?;
            let k: u32 = k
                .try_into()
                .map_err(|_| Error::Syntax {
                    position: start,
                    message: "exponent too large".into(),
                })?;
            let mut acc = unit(self.vars.len());
            for _ in 0..k {
                acc = mul(&acc, &base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Sparse> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expression()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.natural()?;
                let mut value = Rational::from_integer(num);
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    let at = self.pos;
                    let den = self.natural()?;
                    if den.is_zero() {
                        return Err(Error::Syntax {
                            position: at,
                            message: "zero denominator".into(),
                        });
                    }
                    value /= Rational::from_integer(den);
                }
                let mut s = Sparse::new();
                if !value.is_zero() {
                    s.insert(vec![0; self.vars.len()], value);
                }
                Ok(s)
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                let i = self.vars.index_of(name).ok_or_else(|| Error::UnknownVariable {
                    name: name.to_string(),
                    position: start,
                })?;
                let mut e = vec![0; self.vars.len()];
                e[i] = 1;
                let mut s = Sparse::new();
                s.insert(e, Rational::one());
                Ok(s)
            }
            Some(_) => Err(self.error("expected a number, a variable or `(`")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn natural(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a natural number"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        Ok(digits.parse().expect("digits"))
    }
}

fn unit(n: usize) -> Sparse {
    let mut s = Sparse::new();
    s.insert(vec![0; n], Rational::one());
    s
}

fn add_into(acc: &mut Sparse, other: Sparse, negate: bool) {
    for (e, c) in other {
        let slot = acc.entry(e.clone()).or_insert_with(Rational::zero);
        if negate {
            *slot -= c;
        } else {
            *slot += c;
        }
        if slot.is_zero() {
            acc.remove(&e);
        }
    }
}

fn mul(a: &Sparse, b: &Sparse) -> Sparse {
    let mut out = Sparse::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry(e).or_insert_with(Rational::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perazzo_cubic() {
        let vs = VariableSet::perazzo();
        let f = parse_poly("x0*u^2 + x1*u*v + x2*v^2", &vs).unwrap();
        assert_eq!(f.degree(), 3);
        assert_eq!(f.num_terms(), 3);
        assert_eq!(f.to_string(), "x0*u^2 + x1*u*v + x2*v^2");
    }

    #[test]
    fn zero_with_tag() {
        let vs = VariableSet::binary();
        let z = parse_poly_with_degree("0", &vs, Some(4)).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.degree(), 4);
        let z = parse_poly("u - u", &vs).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn non_homogeneous_is_rejected() {
        let vs = VariableSet::binary();
        assert_eq!(
            parse_poly("u^2 + v", &vs),
            Err(Error::NonHomogeneous { found: vec![1, 2] })
        );
    }

    #[test]
    fn errors_carry_positions() {
        let vs = VariableSet::binary();
        assert_eq!(
            parse_poly("u + w", &vs),
            Err(Error::UnknownVariable {
                name: "w".into(),
                position: 4
            })
        );
        match parse_poly("u^2 + *v^2", &vs) {
            Err(Error::Syntax { position, .. }) => assert_eq!(position, 6),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_poly("1/0*u", &vs), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("u v", &vs), Err(Error::Syntax { .. })));
    }

    #[test]
    fn rationals_signs_and_groups() {
        let vs = VariableSet::binary();
        let p = parse_poly("-3/6*u^2 - -v^2", &vs).unwrap();
        assert_eq!(p.to_string(), "-1/2*u^2 + v^2");
        let q = parse_poly("(u+v)^3", &vs).unwrap();
        assert_eq!(q.to_string(), "u^3 + 3*u^2*v + 3*u*v^2 + v^3");
    }
}
