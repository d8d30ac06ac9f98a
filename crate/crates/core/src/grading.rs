//! The torus grading in the ambient lattice `Z^{n+d-r}`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::Serialize;
use thiserror::Error;

use crate::derivation::Derivation;
use crate::poly::{Monomial, Poly, Var};
use crate::presentation::{AlgebraType, Presentation};

/// Integer weight vector; ordered lexicographically along the basis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct WeightVector(pub Vec<i64>);

impl WeightVector {
    pub fn zero(len: usize) -> Self {
        WeightVector(vec![0; len])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn scaled(&self, k: i64) -> Self {
        WeightVector(self.0.iter().map(|x| x * k).collect())
    }
}

impl Add for &WeightVector {
    type Output = WeightVector;
    fn add(self, rhs: &WeightVector) -> WeightVector {
        WeightVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &WeightVector {
    type Output = WeightVector;
    fn sub(self, rhs: &WeightVector) -> WeightVector {
        WeightVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &WeightVector {
    type Output = WeightVector;
    fn neg(self) -> WeightVector {
        self.scaled(-1)
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GradingError {
    #[error("the zero polynomial has no weight")]
    ZeroPolynomial,
    #[error("not homogeneous: {first} has weight {first_weight}, {second} has weight {second_weight}")]
    NonHomogeneous {
        first: Monomial,
        first_weight: WeightVector,
        second: Monomial,
        second_weight: WeightVector,
    },
    #[error("the zero derivation has no degree")]
    ZeroDerivation,
    #[error("derivation not homogeneous: shift {first_shift} at {first}, {second_shift} at {second}")]
    NotHomogeneous {
        first: Var,
        first_shift: WeightVector,
        second: Var,
        second_shift: WeightVector,
    },
    #[error("image of {var} is not homogeneous: {source}")]
    ImageNotHomogeneous {
        var: Var,
        #[source]
        source: Box<GradingError>,
    },
    #[error("unknown generator {0}")]
    UnknownGenerator(Var),
}

/// Weights of every generator, with the names of the basis vectors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Grading {
    pub basis: Vec<String>,
    pub weights: BTreeMap<Var, WeightVector>,
}

impl Grading {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn zero(&self) -> WeightVector {
        WeightVector::zero(self.rank())
    }

    pub fn weight(&self, v: Var) -> Result<&WeightVector, GradingError> {
        self.weights.get(&v).ok_or(GradingError::UnknownGenerator(v))
    }

    pub fn monomial_weight(&self, m: &Monomial) -> Result<WeightVector, GradingError> {
        let mut acc = self.zero();
        for &(v, e) in m.factors() {
            acc = &acc + &self.weight(v)?.scaled(e as i64);
        }
        Ok(acc)
    }

    /// The common weight of all terms of `p`.
    pub fn weight_of(&self, p: &Poly) -> Result<WeightVector, GradingError> {
        let mut iter = p.terms();
        let (m0, _) = iter.next().ok_or(GradingError::ZeroPolynomial)?;
        let w0 = self.monomial_weight(m0)?;
        for (m, _) in iter {
            let w = self.monomial_weight(m)?;
            if w != w0 {
                return Err(GradingError::NonHomogeneous {
                    first: m0.clone(),
                    first_weight: w0,
                    second: m.clone(),
                    second_weight: w,
                });
            }
        }
        Ok(w0)
    }

    /// Splits `p` into homogeneous pieces, ordered by weight.
    pub fn homogeneous_parts(&self, p: &Poly) -> Result<BTreeMap<WeightVector, Poly>, GradingError> {
        let mut out: BTreeMap<WeightVector, Poly> = BTreeMap::new();
        for (m, c) in p.terms() {
            out.entry(self.monomial_weight(m)?).or_default().add_term(m.clone(), c);
        }
        Ok(out)
    }

    /// Degree of a derivation: the common `weight(δ(x)) - weight(x)`.
    pub fn derivation_degree(&self, d: &Derivation) -> Result<WeightVector, GradingError> {
        let mut found: Option<(Var, WeightVector)> = None;
        for (&v, img) in d.images() {
            if img.is_zero() {
                continue;
            }
            let w = self.weight_of(img).map_err(|e| GradingError::ImageNotHomogeneous {
                var: v,
                source: Box::new(e),
            })?;
            let shift = &w - self.weight(v)?;
            match &found {
                None => found = Some((v, shift)),
                Some((v0, s0)) if *s0 != shift => {
                    return Err(GradingError::NotHomogeneous {
                        first: *v0,
                        first_shift: s0.clone(),
                        second: v,
                        second_shift: shift,
                    })
                }
                Some(_) => {}
            }
        }
        found.map(|(_, s)| s).ok_or(GradingError::ZeroDerivation)
    }

    pub fn describe(&self, w: &WeightVector) -> String {
        let terms: Vec<String> = w
            .0
            .iter()
            .zip(&self.basis)
            .filter(|(c, _)| **c != 0)
            .map(|(c, b)| match c {
                1 => b.clone(),
                -1 => format!("-{b}"),
                _ => format!("{c}{b}"),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ").replace("+ -", "- ")
        }
    }
}

/// Builds the grading from the block exponents and anchors.
pub fn weight_assignment(p: &Presentation) -> Grading {
    let mut basis = Vec::new();
    let type2 = p.kind() == AlgebraType::Type2;
    if type2 {
        basis.push("e".to_string());
    }
    let mut index = BTreeMap::new();
    for i in p.block_indices() {
        for j in 1..=p.block(i).len() as u32 {
            if j != p.anchor(i) {
                index.insert((i, j), basis.len());
                basis.push(format!("e{i}_{j}"));
            }
        }
    }
    let s_offset = basis.len();
    for k in 1..=p.free_vars() {
        basis.push(format!("eS{k}"));
    }
    let rank = basis.len();

    let anchor_product: i64 = p
        .block_indices()
        .map(|i| p.exponent(i, p.anchor(i)) as i64)
        .product();

    let mut weights = BTreeMap::new();
    for i in p.block_indices() {
        let row = p.block(i);
        let b = p.anchor(i);
        let prod_except = |j: u32| -> i64 {
            row.iter()
                .enumerate()
                .filter(|(k, _)| *k as u32 + 1 != j)
                .map(|(_, &l)| l as i64)
                .product()
        };
        let mut anchor_w = WeightVector::zero(rank);
        for j in 1..=row.len() as u32 {
            if j == b {
                continue;
            }
            let mut w = WeightVector::zero(rank);
            w.0[index[&(i, j)]] = prod_except(j);
            weights.insert(Var::T(i, j), w);
            anchor_w.0[index[&(i, j)]] = -prod_except(b);
        }
        if type2 {
            anchor_w.0[0] = anchor_product / p.exponent(i, b) as i64;
        }
        weights.insert(Var::T(i, b), anchor_w);
    }
    for k in 1..=p.free_vars() {
        let mut w = WeightVector::zero(rank);
        w.0[s_offset + k as usize - 1] = 1;
        weights.insert(Var::S(k), w);
    }
    Grading { basis, weights }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn p(s: &str) -> Poly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn surface_weights() {
        let g = weight_assignment(&Presentation::surface(2, 2, 2));
        assert_eq!(g.basis, vec!["e"]);
        for v in [Var::T(0, 1), Var::T(1, 1), Var::T(2, 1)] {
            assert_eq!(g.weight(v).unwrap().0, vec![4]);
        }
        let g = weight_assignment(&Presentation::surface(2, 2, 3));
        let w: Vec<i64> = [Var::T(0, 1), Var::T(1, 1), Var::T(2, 1)]
            .iter()
            .map(|&v| g.weight(v).unwrap().0[0])
            .collect();
        assert_eq!(w, vec![6, 6, 4]);
    }

    #[test]
    fn type1_weights() {
        let pres = Presentation::type1(&[&[2, 3], &[5]], 0).unwrap();
        let g = weight_assignment(&pres);
        assert_eq!(g.rank(), 1);
        assert_eq!(g.weight(Var::T(1, 2)).unwrap().0, vec![2]);
        assert_eq!(g.weight(Var::T(1, 1)).unwrap().0, vec![-3]);
        assert_eq!(g.weight(Var::T(2, 1)).unwrap().0, vec![0]);
    }

    #[test]
    fn relations_are_homogeneous() {
        for pres in [
            Presentation::type1(&[&[2, 3, 1], &[1, 4], &[2]], 2).unwrap(),
            Presentation::type2(&[&[2, 3], &[1, 4], &[2], &[3, 3]], 1).unwrap(),
        ] {
            let g = weight_assignment(&pres);
            assert_eq!(g.rank() as i64, pres.n() as i64 + pres.free_vars() as i64 - pres.r() as i64);
            for rel in pres.relations() {
                let w = g.weight_of(rel).unwrap();
                assert_eq!(w.is_zero(), pres.kind() == AlgebraType::Type1);
            }
        }
    }

    #[test]
    fn weight_queries() {
        let g = weight_assignment(&Presentation::surface(2, 2, 2));
        assert_eq!(g.weight_of(&p("T0_1^2 + T1_1^2")).unwrap().0, vec![8]);
        assert!(matches!(
            g.weight_of(&p("T0_1 + T1_1^2")),
            Err(GradingError::NonHomogeneous { .. })
        ));
        assert!(g.weight_of(&p("5")).unwrap().is_zero());
        assert_eq!(g.weight_of(&Poly::zero()), Err(GradingError::ZeroPolynomial));
    }
}
