//! Text format for polynomials: `coeff*T<i>_<j>^e*...*S<k>^e` terms joined by
//! `+`/`-`. Coefficients with both a real and an imaginary part print in
//! parentheses so that every printed polynomial parses back to itself.

use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use super::{Monomial, Poly, Var};
use crate::scalar::{gq_parse, GaussianRational, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyParseError {
    #[error("unexpected `{found}` at offset {offset} in `{text}`")]
    Unexpected { found: String, offset: usize, text: String },
    #[error("unexpected end of input in `{0}`")]
    Eof(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms().rev().enumerate() {
            let negative = c.is_negative_like();
            let body = if negative { -c } else { c.clone() };
            match (idx, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            write_term(f, &body, m)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, c: &GaussianRational, m: &Monomial) -> fmt::Result {
    let mixed = !c.re().is_zero() && !c.im().is_zero();
    if m.is_one() {
        return if mixed { write!(f, "({c})") } else { write!(f, "{c}") };
    }
    if c.is_one() {
        return write!(f, "{m}");
    }
    if mixed {
        write!(f, "({c})*{m}")
    } else {
        write!(f, "{c}*{m}")
    }
}

struct Cursor<'a> {
    text: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while matches!(self.bytes.get(self.pos), Some(b' ' | b'\t' | b'\n' | b'\r')) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn unexpected(&self) -> PolyParseError {
        match self.text[self.pos..].chars().next() {
            Some(ch) => PolyParseError::Unexpected {
                found: ch.to_string(),
                offset: self.pos,
                text: self.text.to_string(),
            },
            None => PolyParseError::Eof(self.text.to_string()),
        }
    }

    fn uint(&mut self) -> Result<u64, PolyParseError> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.bytes.get(self.pos), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.unexpected());
        }
        self.text[start..self.pos].parse().map_err(|_| self.unexpected())
    }

    fn factor(&mut self) -> Result<Poly, PolyParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let start = self.pos;
                let close = self.text[start..]
                    .find(')')
                    .ok_or_else(|| PolyParseError::Eof(self.text.to_string()))?;
                let c = gq_parse(&self.text[start..start + close])?;
                self.pos = start + close + 1;
                Ok(Poly::constant(c))
            }
            Some(b'i') => {
                self.pos += 1;
                Ok(Poly::constant(GaussianRational::i()))
            }
            Some(b'0'..=b'9') => {
                let start = self.pos;
                while matches!(self.bytes.get(self.pos), Some(b'0'..=b'9' | b'/')) {
                    self.pos += 1;
                }
                if self.bytes.get(self.pos) == Some(&b'i') {
                    self.pos += 1;
                }
                Ok(Poly::constant(gq_parse(&self.text[start..self.pos])?))
            }
            Some(b'T') => {
                self.pos += 1;
                let i = self.uint()? as u32;
                if self.bytes.get(self.pos) != Some(&b'_') {
                    return Err(self.unexpected());
                }
                self.pos += 1;
                let j = self.uint()? as u32;
                self.power(Var::T(i, j))
            }
            Some(b'S') => {
                self.pos += 1;
                let k = self.uint()? as u32;
                self.power(Var::S(k))
            }
            _ => Err(self.unexpected()),
        }
    }

    fn power(&mut self, v: Var) -> Result<Poly, PolyParseError> {
        let e = if self.peek() == Some(b'^') {
            self.pos += 1;
            self.uint()? as u32
        } else {
            1
        };
        Ok(Poly::monomial(Monomial::var_pow(v, e)))
    }

    fn term(&mut self) -> Result<Poly, PolyParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }
}

/// Parses the polynomial text format.
pub fn parse_poly(text: &str) -> Result<Poly, PolyParseError> {
    let mut cur = Cursor {
        text,
        bytes: text.as_bytes(),
        pos: 0,
    };
    let mut acc = Poly::zero();
    let mut first = true;
    loop {
        let negative = match cur.peek() {
            Some(b'+') => {
                cur.pos += 1;
                false
            }
            Some(b'-') => {
                cur.pos += 1;
                true
            }
            None if !first => break,
            _ if first => false,
            _ => return Err(cur.unexpected()),
        };
        let t = cur.term()?;
        acc = if negative { &acc - &t } else { &acc + &t };
        first = false;
        if cur.peek().is_none() {
            break;
        }
    }
    Ok(acc)
}

impl std::str::FromStr for Poly {
    type Err = PolyParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_poly(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn rational(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn prints_and_parses_simple_forms() {
        let p = parse_poly("T0_1^2 + T1_1^2 + T2_1^3").unwrap();
        assert_eq!(p.to_string(), "T2_1^3 + T1_1^2 + T0_1^2");
        let q = parse_poly("-i*T0_1 + (1/2+2/3i)*S1 - 3").unwrap();
        assert_eq!(q.to_string(), "-i*T0_1 + (1/2+2/3i)*S1 - 3");
        assert_eq!(parse_poly("0").unwrap(), Poly::zero());
        assert_eq!(parse_poly(" 2 * T0_1 * T0_1 ").unwrap().to_string(), "2*T0_1^2");
        assert_eq!(parse_poly("3i*T1_2").unwrap().to_string(), "3i*T1_2");
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "T0", "T0_1^", "x+y", "2**T0_1", "T0_1 T1_1", "(1+i", "+", "T0_1 +"] {
            assert!(parse_poly(bad).is_err(), "{bad}");
        }
    }

    fn arb_scalar() -> impl Strategy<Value = GaussianRational> {
        (-6i64..=6, 1i64..=4, -6i64..=6, 1i64..=4).prop_map(|(a, b, c, d)| {
            GaussianRational::new(rational(a, b), rational(c, d))
        })
    }

    fn arb_var() -> impl Strategy<Value = Var> {
        prop_oneof![(0u32..3, 1u32..3).prop_map(|(i, j)| Var::T(i, j)), (1u32..3).prop_map(Var::S)]
    }

    fn arb_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec(
            (arb_scalar(), prop::collection::vec((arb_var(), 0u32..4), 0..3)),
            0..5,
        )
        .prop_map(|terms| Poly::from_terms(terms.into_iter().map(|(c, m)| (Monomial::from_pairs(m), c))))
    }

    proptest! {
        #[test]
        fn text_round_trip(p in arb_poly()) {
            prop_assert_eq!(parse_poly(&p.to_string()).unwrap(), p);
        }
    }
}
