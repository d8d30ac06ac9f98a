//! Sparse multivariate polynomials over `Q(i)`.
//!
//! Generators are the block variables `T<i>_<j>` and the free variables
//! `S<k>`. Monomials are sorted exponent lists; polynomials map monomials to
//! non-zero coefficients.

mod rewrite;
mod text;

pub use rewrite::{RewriteRule, RewriteStrategy, RewriteSystem};
pub use text::{parse_poly, PolyParseError};

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::scalar::GaussianRational;

/// A generator of the ambient polynomial ring.
///
/// The derived order puts every `S` below every `T`, and orders the `T` by
/// block then column, so later blocks are heavier.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    S(u32),
    T(u32, u32),
}

impl Var {
    pub fn t(block: u32, col: u32) -> Var {
        Var::T(block, col)
    }

    pub fn s(k: u32) -> Var {
        Var::S(k)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::T(i, j) => write!(f, "T{i}_{j}"),
            Var::S(k) => write!(f, "S{k}"),
        }
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for Var {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A monomial as a sorted list of `(variable, exponent)` pairs with positive
/// exponents. The empty list is the unit monomial.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn var_pow(v: Var, e: u32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(v, e)])
        }
    }

    pub fn from_pairs<I: IntoIterator<Item = (Var, u32)>>(pairs: I) -> Self {
        let mut acc: BTreeMap<Var, u32> = BTreeMap::new();
        for (v, e) in pairs {
            *acc.entry(v).or_default() += e;
        }
        Monomial(acc.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.0
            .binary_search_by(|(w, _)| w.cmp(&v))
            .map(|idx| self.0[idx].1)
            .unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.0.iter().map(|&(v, _)| v)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    pub fn pow(&self, e: u32) -> Monomial {
        if e == 0 {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|&(v, x)| (v, x * e)).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().all(|&(v, e)| other.degree_in(v) >= e)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial(
            other
                .0
                .iter()
                .filter_map(|&(v, e)| {
                    let rest = e - self.degree_in(v);
                    (rest > 0).then_some((v, rest))
                })
                .collect(),
        ))
    }

    /// Formal partial derivative: `(coefficient, monomial)`, or `None` when the
    /// variable does not occur.
    pub fn derivative(&self, v: Var) -> Option<(u32, Monomial)> {
        let idx = self.0.binary_search_by(|(w, _)| w.cmp(&v)).ok()?;
        let e = self.0[idx].1;
        let mut out = self.0.clone();
        if e == 1 {
            out.remove(idx);
        } else {
            out[idx].1 = e - 1;
        }
        Some((e, Monomial(out)))
    }
}

/// Lexicographic order in which the heaviest variable decides first.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (a.len(), b.len());
        loop {
            match (i, j) {
                (0, 0) => return Ordering::Equal,
                (0, _) => return Ordering::Less,
                (_, 0) => return Ordering::Greater,
                _ => {
                    let (va, ea) = a[i - 1];
                    let (vb, eb) = b[j - 1];
                    if va != vb {
                        return va.cmp(&vb);
                    }
                    if ea != eb {
                        return ea.cmp(&eb);
                    }
                    i -= 1;
                    j -= 1;
                }
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        // heaviest variable first, matching the term order
        for (idx, (v, e)) in self.0.iter().rev().enumerate() {
            if idx > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("term {term} of the dividend is not divisible by {divisor}")]
    NotDivisible { term: Monomial, divisor: Monomial },
}

/// Sparse polynomial with exact coefficients. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Poly::term(c, Monomial::one())
    }

    pub fn var(v: Var) -> Self {
        Poly::term(GaussianRational::one(), Monomial::var(v))
    }

    pub fn monomial(m: Monomial) -> Self {
        Poly::term(GaussianRational::one(), m)
    }

    pub fn term(c: GaussianRational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, GaussianRational)>>(terms: I) -> Self {
        let mut p = Poly::zero();
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> GaussianRational {
        self.terms.get(m).cloned().unwrap_or_else(GaussianRational::zero)
    }

    /// The constant value when the polynomial has no non-constant terms.
    pub fn as_constant(&self) -> Option<GaussianRational> {
        match self.terms.len() {
            0 => Some(GaussianRational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &GaussianRational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::total_degree).max().unwrap_or(0)
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut out: Vec<Var> = self.terms.keys().flat_map(|m| m.vars()).collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn add_term(&mut self, m: Monomial, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub(crate) fn pop_last(&mut self) -> Option<(Monomial, GaussianRational)> {
        self.terms.pop_last()
    }

    pub fn add_scaled(&mut self, other: &Poly, scale: &GaussianRational, shift: &Monomial) {
        if scale.is_zero() {
            return;
        }
        for (m, c) in &other.terms {
            self.add_term(m.mul(shift), &(c * scale));
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn partial_derivative(&self, v: Var) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            if let Some((e, dm)) = m.derivative(v) {
                out.add_term(dm, &(c * &GaussianRational::from_int(e as i64)));
            }
        }
        out
    }

    /// Divides every term by `m`; fails unless each term is divisible.
    pub fn exact_divide(&self, m: &Monomial) -> Result<Poly, PolyError> {
        let mut terms = BTreeMap::new();
        for (t, c) in &self.terms {
            let q = m.quotient_of(t).ok_or_else(|| PolyError::NotDivisible {
                term: t.clone(),
                divisor: m.clone(),
            })?;
            terms.insert(q, c.clone());
        }
        Ok(Poly { terms })
    }

    /// Divides by a monomial with a scalar coefficient, e.g. `2*T0_1`.
    pub fn exact_divide_term(&self, c: &GaussianRational, m: &Monomial) -> Result<Poly, PolyError> {
        let inv = c.inv().expect("division by a zero coefficient");
        Ok(self.exact_divide(m)?.scale(&inv))
    }

    /// Substitutes polynomials for variables; unlisted variables are kept.
    pub fn substitute(&self, map: &BTreeMap<Var, Poly>) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut term = Poly::constant(c.clone());
            for &(v, e) in m.factors() {
                let factor = match map.get(&v) {
                    Some(p) => p.pow(e),
                    None => Poly::monomial(Monomial::var_pow(v, e)),
                };
                term = &term * &factor;
            }
            out = &out + &term;
        }
        out
    }

    /// Scalar `c` with `self = c * other`, if the two are proportional and `other` is non-zero.
    pub fn proportionality(&self, other: &Poly) -> Option<GaussianRational> {
        let (m, c) = other.leading_term()?;
        let ratio = &self.coefficient(m) / c;
        (other.scale(&ratio) == *self).then_some(ratio)
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c);
        }
        out
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), &-c);
        }
        out
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            out.add_scaled(rhs, c, m);
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&GaussianRational::from_int(-1))
    }
}

macro_rules! forward_poly_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly { (&self).$m(rhs) }
        }
    )*};
}
forward_poly_owned!(Add add, Sub sub, Mul mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl From<GaussianRational> for Poly {
    fn from(c: GaussianRational) -> Self {
        Poly::constant(c)
    }
}

impl From<Var> for Poly {
    fn from(v: Var) -> Self {
        Poly::var(v)
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Poly {
        Poly::var(Var::t(0, 1))
    }
    fn y() -> Poly {
        Poly::var(Var::t(1, 1))
    }
    fn z() -> Poly {
        Poly::var(Var::t(2, 1))
    }
    fn p(s: &str) -> Poly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let lhs = &(&x() + &y()) * &(&x() - &y());
        assert_eq!(lhs, &x().pow(2) - &y().pow(2));
        assert_eq!(&lhs + &Poly::zero(), lhs);
    }

    #[test]
    fn i_times_i_x() {
        let ix = x().scale(&GaussianRational::i());
        assert_eq!(ix.scale(&GaussianRational::i()), -x());
    }

    #[test]
    fn partial_derivatives() {
        let m = p("T0_1^2*T0_2^3");
        assert_eq!(m.partial_derivative(Var::t(0, 2)), p("3*T0_1^2*T0_2^2"));
        assert_eq!(p("T0_1^2*T1_1").partial_derivative(Var::t(0, 1)), p("2*T0_1*T1_1"));
        assert!(p("7/3").partial_derivative(Var::t(0, 1)).is_zero());
    }

    #[test]
    fn exact_division() {
        let q = p("T0_1^2*T1_1")
            .exact_divide(&Monomial::from_pairs([(Var::t(0, 1), 1), (Var::t(1, 1), 1)]))
            .unwrap();
        assert_eq!(q, x());
        let err = (&x().pow(2) + &y().pow(2)).exact_divide(&Monomial::var(Var::t(0, 1)));
        assert!(matches!(err, Err(PolyError::NotDivisible { .. })));
        let q = p("2*T0_1*T1_1 + 4*T0_1*T2_1")
            .exact_divide_term(&GaussianRational::from_int(2), &Monomial::var(Var::t(0, 1)))
            .unwrap();
        assert_eq!(q, &y() + &z().scale(&GaussianRational::from_int(2)));
        assert_eq!(q.mul_monomial(&Monomial::var(Var::t(0, 1))).scale(&2.into()), p("2*T0_1*T1_1 + 4*T0_1*T2_1"));
    }

    #[test]
    fn monomial_order_is_block_lex() {
        let s = Monomial::var_pow(Var::s(1), 5);
        let t0 = Monomial::var(Var::t(0, 1));
        let t1 = Monomial::var(Var::t(1, 1));
        assert!(s < t0 && t0 < t1);
        assert!(Monomial::one() < s);
        assert!(Monomial::var_pow(Var::t(0, 1), 9) < t1);
        let a = Monomial::from_pairs([(Var::t(1, 1), 1), (Var::t(0, 1), 2)]);
        let b = Monomial::from_pairs([(Var::t(1, 1), 1), (Var::t(0, 1), 1)]);
        assert!(b < a);
    }

    #[test]
    fn proportionality() {
        let a = p("2*T0_1 - 4*T1_1");
        let b = p("T0_1 - 2*T1_1");
        assert_eq!(a.proportionality(&b), Some(GaussianRational::from_int(2)));
        assert_eq!(p("T0_1").proportionality(&p("T1_1")), None);
    }
}
