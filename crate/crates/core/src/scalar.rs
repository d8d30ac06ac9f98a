//! Exact scalars in the Gaussian rationals `Q(i)`.
//!
//! Every coefficient the library manipulates lives here: the relation
//! constants, the derivation parameters and the polynomial coefficients.
//! Arithmetic never rounds.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("malformed scalar `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("root search for degree {degree} exceeds the search limit")]
    RootSearchLimit { degree: u32 },
}

/// An element `re + im*i` of `Q(i)`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

/// Upper bound on the Gaussian-integer candidates examined by [`GaussianRational::nth_root`].
const ROOT_SEARCH_LIMIT: u64 = 4_000_000;

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        GaussianRational::new(BigRational::from_integer(n.into()), BigRational::zero())
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        GaussianRational::new(
            BigRational::new(num.into(), den.into()),
            BigRational::zero(),
        )
    }

    pub fn from_rational(re: BigRational) -> Self {
        GaussianRational::new(re, BigRational::zero())
    }

    /// Gaussian integer `re + im*i`.
    pub fn gaussian(re: i64, im: i64) -> Self {
        GaussianRational::new(
            BigRational::from_integer(re.into()),
            BigRational::from_integer(im.into()),
        )
    }

    /// The square root of -1.
    pub fn i() -> Self {
        GaussianRational::gaussian(0, 1)
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -self.im.clone())
    }

    /// `re^2 + im^2`.
    pub fn norm(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(GaussianRational::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = GaussianRational::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// True when the printed form starts with a minus sign, i.e. the value is a
    /// negative rational or a negative multiple of `i`.
    pub fn is_negative_like(&self) -> bool {
        (self.im.is_zero() && self.re.is_negative()) || (self.re.is_zero() && self.im.is_negative())
    }

    /// Principal square root in `Q(i)`, if one exists.
    ///
    /// The returned root has non-negative real part, and non-negative
    /// imaginary part when the real part vanishes.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(GaussianRational::zero());
        }
        let m = rational_sqrt(&self.norm())?;
        let two = BigRational::from_integer(2.into());
        let p = rational_sqrt(&((&self.re + &m) / &two))?;
        let q = if p.is_zero() {
            rational_sqrt(&((&m - &self.re) / &two))?
        } else {
            &self.im / (&two * &p)
        };
        let root = GaussianRational::new(p, q);
        debug_assert_eq!(&(&root * &root), self);
        Some(root)
    }

    /// Some `n`-th root in `Q(i)`, found by a bounded search over Gaussian
    /// integers of the right norm.
    pub fn nth_root(&self, n: u32) -> Result<Option<Self>, ScalarError> {
        match n {
            0 => return Ok(None),
            1 => return Ok(Some(self.clone())),
            2 => return Ok(self.sqrt()),
            _ => {}
        }
        if self.is_zero() {
            return Ok(Some(GaussianRational::zero()));
        }
        // x^n = g/D with g in Z[i]; then (xD)^n = g D^(n-1) and xD is integral.
        let den = num_integer::Integer::lcm(self.re.denom(), self.im.denom());
        let g_re = self.re.numer() * (&den / self.re.denom());
        let g_im = self.im.numer() * (&den / self.im.denom());
        let scale = num_traits::pow(den.clone(), (n - 1) as usize);
        let target_re = g_re * &scale;
        let target_im = g_im * &scale;
        let target_norm = &target_re * &target_re + &target_im * &target_im;
        let root_norm = target_norm.nth_root(n);
        if num_traits::pow(root_norm.clone(), n as usize) != target_norm {
            return Ok(None);
        }
        let bound = root_norm.sqrt();
        if bound > BigInt::from(ROOT_SEARCH_LIMIT) {
            return Err(ScalarError::RootSearchLimit { degree: n });
        }
        let target = GaussianRational::new(
            BigRational::from_integer(target_re),
            BigRational::from_integer(target_im),
        );
        let mut a = bound.clone();
        let neg_bound = -bound;
        while a >= neg_bound {
            let rest = &root_norm - &a * &a;
            if !rest.is_negative() {
                let b = rest.sqrt();
                if &b * &b == rest {
                    for cand_b in [b.clone(), -b.clone()] {
                        let cand = GaussianRational::new(
                            BigRational::from_integer(a.clone()),
                            BigRational::from_integer(cand_b),
                        );
                        if cand.pow(n) == target {
                            let d = GaussianRational::from_rational(BigRational::from_integer(den));
                            return Ok(Some(&cand / &d));
                        }
                    }
                }
            }
            a -= 1;
        }
        Ok(None)
    }
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        GaussianRational::new(BigRational::zero(), BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        GaussianRational::from_int(1)
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        GaussianRational::from_int(n)
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussianRational::from_rational(&self.re * &rhs.re);
        }
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl<'a> Div<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    /// Panics on division by zero, like the rational types it wraps.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &GaussianRational) -> GaussianRational {
        let inv = rhs.inv().expect("division by zero in Q(i)");
        self * &inv
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: GaussianRational) -> GaussianRational { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: &GaussianRational) -> GaussianRational { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re, -self.im)
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&GaussianRational> for GaussianRational {
    fn mul_assign(&mut self, rhs: &GaussianRational) {
        *self = &*self * rhs;
    }
}

fn write_imag(f: &mut fmt::Formatter<'_>, im: &BigRational) -> fmt::Result {
    if im.is_one() {
        write!(f, "i")
    } else if *im == -BigRational::one() {
        write!(f, "-i")
    } else {
        write!(f, "{im}i")
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.re.is_zero() {
            return write_imag(f, &self.im);
        }
        write!(f, "{}", self.re)?;
        if !self.im.is_negative() {
            write!(f, "+")?;
        }
        write_imag(f, &self.im)
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Cursor over the scalar grammar
/// `SIGNED_RAT (('+'|'-') RAT? 'i')? | SIGN? RAT? 'i'` with `RAT = INT ('/' INT)?`.
struct ScalarCursor<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> ScalarCursor<'a> {
    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn sign(&mut self) -> Option<bool> {
        match self.peek() {
            Some(b'+') => {
                self.pos += 1;
                Some(false)
            }
            Some(b'-') => {
                self.pos += 1;
                Some(true)
            }
            _ => None,
        }
    }

    fn int(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        BigInt::parse_bytes(&self.bytes[start..self.pos], 10)
    }

    fn rat(&mut self) -> Result<Option<BigRational>, ScalarError> {
        let Some(num) = self.int() else {
            return Ok(None);
        };
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let den = self
                .int()
                .ok_or_else(|| ScalarError::Malformed(self.src.to_string()))?;
            if den.is_zero() {
                return Err(ScalarError::ZeroDenominator(self.src.to_string()));
            }
            Ok(Some(BigRational::new(num, den)))
        } else {
            Ok(Some(BigRational::from_integer(num)))
        }
    }
}

/// Parses a scalar written in the grammar accepted by the presentation and
/// derivation file formats, e.g. `3/4`, `-i`, `1/2+2/3i`.
pub fn gq_parse(text: &str) -> Result<GaussianRational, ScalarError> {
    let src = text.trim();
    let malformed = || ScalarError::Malformed(text.to_string());
    let mut cur = ScalarCursor {
        src,
        bytes: src.as_bytes(),
        pos: 0,
    };
    let neg = cur.sign().unwrap_or(false);
    let first = cur.rat()?;
    let apply_sign = |q: BigRational, neg: bool| if neg { -q } else { q };
    let value = match (first, cur.peek()) {
        (first, Some(b'i')) => {
            cur.pos += 1;
            let im = apply_sign(first.unwrap_or_else(BigRational::one), neg);
            GaussianRational::new(BigRational::zero(), im)
        }
        (Some(re), _) => {
            let re = apply_sign(re, neg);
            match cur.sign() {
                None => GaussianRational::from_rational(re),
                Some(im_neg) => {
                    let im = cur.rat()?.unwrap_or_else(BigRational::one);
                    if cur.peek() != Some(b'i') {
                        return Err(malformed());
                    }
                    cur.pos += 1;
                    GaussianRational::new(re, apply_sign(im, im_neg))
                }
            }
        }
        (None, _) => return Err(malformed()),
    };
    if cur.pos != src.len() {
        return Err(malformed());
    }
    Ok(value)
}

impl FromStr for GaussianRational {
    type Err = ScalarError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        gq_parse(s)
    }
}

/// `2x2` determinant of two column vectors.
pub fn det2(a: &[GaussianRational; 2], b: &[GaussianRational; 2]) -> GaussianRational {
    &(&a[0] * &b[1]) - &(&a[1] * &b[0])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> GaussianRational {
        gq_parse(s).unwrap()
    }

    #[test]
    fn parses_grammar_examples() {
        assert_eq!(q("3/4"), GaussianRational::from_ratio(3, 4));
        assert_eq!(q("-i"), GaussianRational::gaussian(0, -1));
        assert_eq!(
            q("1/2+2/3i"),
            GaussianRational::new(BigRational::new(1.into(), 2.into()), BigRational::new(2.into(), 3.into()))
        );
        assert_eq!(q("i"), GaussianRational::i());
        assert_eq!(q("+5"), GaussianRational::from_int(5));
        assert_eq!(q("-2/4-i"), GaussianRational::gaussian(-1, -2) / GaussianRational::from_int(2));
        assert_eq!(q("4/6"), GaussianRational::from_ratio(2, 3));
    }

    #[test]
    fn rejects_malformed_input() {
        for bad in ["", "1/", "/2", "1+2", "ii", "1/2i+3", "x", "1 2", "--1"] {
            assert!(gq_parse(bad).is_err(), "{bad}");
        }
        assert!(matches!(gq_parse("1/0"), Err(ScalarError::ZeroDenominator(_))));
    }

    #[test]
    fn display_round_trips() {
        for s in ["0", "3/4", "-i", "i", "1/2+2/3i", "1/2-i", "-7", "-2/3i", "5+i"] {
            let v = q(s);
            assert_eq!(v.to_string(), s);
            assert_eq!(q(&v.to_string()), v);
        }
    }

    #[test]
    fn i_squared_is_minus_one() {
        let i = GaussianRational::i();
        assert_eq!(&i * &i, GaussianRational::from_int(-1));
        let z = q("3-4i");
        assert_eq!(&z * &z.conj(), GaussianRational::from_int(25));
        assert_eq!(&z * &z.inv().unwrap(), GaussianRational::one());
    }

    #[test]
    fn square_roots() {
        assert_eq!(q("-1").sqrt(), Some(GaussianRational::i()));
        assert_eq!(q("2i").sqrt(), Some(q("1+i")));
        assert_eq!(q("9/4").sqrt(), Some(q("3/2")));
        assert_eq!(q("2").sqrt(), None);
        assert_eq!(q("-4").sqrt(), Some(q("2i")));
        for s in ["3+4i", "-5+12i", "-7/4-6i"] {
            let r = q(s).sqrt().unwrap();
            assert_eq!(&r * &r, q(s));
        }
    }

    #[test]
    fn nth_roots() {
        let r = q("-8").nth_root(3).unwrap().unwrap();
        assert_eq!(r.pow(3), q("-8"));
        let r = q("-4").nth_root(4).unwrap().unwrap();
        assert_eq!(r.pow(4), q("-4"));
        let r = q("1/27").nth_root(3).unwrap().unwrap();
        assert_eq!(r.pow(3), q("1/27"));
        assert_eq!(q("2").nth_root(3).unwrap(), None);
        let r = q("i").nth_root(5).unwrap().unwrap();
        assert_eq!(r.pow(5), q("i"));
    }
}
