//! Derivations of a trinomial algebra, given by the images of the generators.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::grading::{Grading, GradingError, WeightVector};
use crate::poly::{parse_poly, Monomial, Poly, Var};
use crate::presentation::Presentation;
use crate::scalar::GaussianRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DerivationError {
    #[error("unknown generator {0}")]
    UnknownGenerator(Var),
    #[error("{0} is not in the kernel")]
    NotInKernel(Poly),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Grading(#[from] GradingError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NilpotencyLimits {
    /// Maximum number of applications per generator.
    pub cap: u32,
    /// Give up once an iterate has more terms than this.
    pub max_terms: usize,
}

impl Default for NilpotencyLimits {
    fn default() -> Self {
        NilpotencyLimits {
            cap: 64,
            max_terms: 50_000,
        }
    }
}

impl NilpotencyLimits {
    pub fn with_cap(cap: u32) -> Self {
        NilpotencyLimits {
            cap,
            ..NilpotencyLimits::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict")]
pub enum Nilpotency {
    /// `δ^m` kills every generator; `m` is minimal.
    Verified {
        max_index: u32,
        per_generator: BTreeMap<Var, u32>,
    },
    Inconclusive {
        cap: u32,
        generator: Var,
        reason: String,
    },
}

impl Nilpotency {
    pub fn is_verified(&self) -> bool {
        matches!(self, Nilpotency::Verified { .. })
    }
}

/// A relation whose image does not reduce to zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationWitness {
    pub relation_index: usize,
    pub relation: Poly,
    pub image: Poly,
}

#[derive(Clone)]
pub struct Derivation {
    pres: Arc<Presentation>,
    images: BTreeMap<Var, Poly>,
}

impl PartialEq for Derivation {
    fn eq(&self, other: &Self) -> bool {
        self.images == other.images
    }
}

impl Eq for Derivation {}

impl Derivation {
    /// Builds a derivation; images are reduced and zero images dropped.
    pub fn new<I>(pres: Arc<Presentation>, images: I) -> Result<Derivation, DerivationError>
    where
        I: IntoIterator<Item = (Var, Poly)>,
    {
        let mut map = BTreeMap::new();
        for (v, img) in images {
            if !pres.has_generator(v) {
                return Err(DerivationError::UnknownGenerator(v));
            }
            if let Some(bad) = img.vars().into_iter().find(|w| !pres.has_generator(*w)) {
                return Err(DerivationError::UnknownGenerator(bad));
            }
            let img = pres.normal_form(&img);
            if !img.is_zero() {
                map.insert(v, img);
            }
        }
        Ok(Derivation { pres, images: map })
    }

    pub fn zero(pres: Arc<Presentation>) -> Derivation {
        Derivation {
            pres,
            images: BTreeMap::new(),
        }
    }

    /// `∂/∂v`.
    pub fn partial(pres: Arc<Presentation>, v: Var) -> Result<Derivation, DerivationError> {
        Derivation::new(pres, [(v, Poly::one())])
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.pres
    }

    /// Non-zero images, by generator.
    pub fn images(&self) -> &BTreeMap<Var, Poly> {
        &self.images
    }

    pub fn image(&self, v: Var) -> Poly {
        self.images.get(&v).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.images.is_empty()
    }

    /// Leibniz extension to an arbitrary polynomial, without reduction.
    pub fn apply_raw(&self, p: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in p.terms() {
            for &(v, e) in m.factors() {
                let Some(img) = self.images.get(&v) else {
                    continue;
                };
                let (_, rest) = m.derivative(v).expect("variable occurs in its monomial");
                out.add_scaled(img, &(c * &GaussianRational::from_int(e as i64)), &rest);
            }
        }
        out
    }

    pub fn apply(&self, p: &Poly) -> Result<Poly, DerivationError> {
        if let Some(bad) = p.vars().into_iter().find(|w| !self.pres.has_generator(*w)) {
            return Err(DerivationError::UnknownGenerator(bad));
        }
        Ok(self.pres.normal_form(&self.apply_raw(p)))
    }

    fn apply_known(&self, p: &Poly) -> Poly {
        self.pres.normal_form(&self.apply_raw(p))
    }

    /// The first relation whose image is non-zero, if any.
    pub fn well_definedness_witness(&self) -> Option<RelationWitness> {
        self.pres.relations().iter().enumerate().find_map(|(idx, rel)| {
            let image = self.apply_known(rel);
            (!image.is_zero()).then(|| RelationWitness {
                relation_index: idx,
                relation: rel.clone(),
                image,
            })
        })
    }

    pub fn is_well_defined(&self) -> bool {
        self.well_definedness_witness().is_none()
    }

    /// Iterates `δ` on every generator.
    pub fn nilpotency_check(&self, limits: NilpotencyLimits) -> Nilpotency {
        let mut per_generator = BTreeMap::new();
        for v in self.pres.generators() {
            let mut cur = Poly::var(v);
            let mut index = 0;
            loop {
                if cur.is_zero() {
                    break;
                }
                if index == limits.cap {
                    return Nilpotency::Inconclusive {
                        cap: limits.cap,
                        generator: v,
                        reason: format!("δ^{} of {v} is still non-zero", limits.cap),
                    };
                }
                cur = self.apply_known(&cur);
                index += 1;
                if cur.len() > limits.max_terms {
                    return Nilpotency::Inconclusive {
                        cap: limits.cap,
                        generator: v,
                        reason: format!(
                            "δ^{index} of {v} has {} terms, above the limit {}",
                            cur.len(),
                            limits.max_terms
                        ),
                    };
                }
            }
            per_generator.insert(v, index);
        }
        let max_index = per_generator.values().copied().max().unwrap_or(0);
        Nilpotency::Verified {
            max_index,
            per_generator,
        }
    }

    pub fn kernel_member(&self, p: &Poly) -> bool {
        self.apply_known(p).is_zero()
    }

    /// `h·δ`; requires `h` in the kernel.
    pub fn replica(&self, h: &Poly) -> Result<Derivation, DerivationError> {
        if !self.kernel_member(h) {
            return Err(DerivationError::NotInKernel(h.clone()));
        }
        Ok(self.scale_by(h))
    }

    /// `h·δ` without the kernel check.
    pub fn scale_by(&self, h: &Poly) -> Derivation {
        let images = self
            .images
            .iter()
            .map(|(&v, img)| (v, self.pres.normal_form(&(img * h))))
            .filter(|(_, img)| !img.is_zero())
            .collect();
        Derivation {
            pres: self.pres.clone(),
            images,
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Derivation {
        self.scale_by(&Poly::constant(c.clone()))
    }

    pub fn add(&self, other: &Derivation) -> Derivation {
        let mut images = self.images.clone();
        for (&v, img) in &other.images {
            let sum = &images.remove(&v).unwrap_or_default() + img;
            if !sum.is_zero() {
                images.insert(v, sum);
            }
        }
        Derivation {
            pres: self.pres.clone(),
            images,
        }
    }

    /// Linear combination `Σ c_k δ_k` over derivations of the same presentation.
    pub fn combination(pres: Arc<Presentation>, terms: &[(GaussianRational, &Derivation)]) -> Derivation {
        terms
            .iter()
            .filter(|(c, _)| !c.is_zero())
            .fold(Derivation::zero(pres), |acc, (c, d)| acc.add(&d.scale(c)))
    }

    /// Homogeneous components, ordered by degree.
    pub fn decompose(&self, grading: &Grading) -> Result<Vec<(WeightVector, Derivation)>, DerivationError> {
        let mut parts: BTreeMap<WeightVector, BTreeMap<Var, Poly>> = BTreeMap::new();
        for (&v, img) in &self.images {
            let wv = grading.weight(v)?.clone();
            for (w, piece) in grading.homogeneous_parts(img)? {
                parts.entry(&w - &wv).or_default().insert(v, piece);
            }
        }
        Ok(parts
            .into_iter()
            .map(|(w, images)| {
                (
                    w,
                    Derivation {
                        pres: self.pres.clone(),
                        images,
                    },
                )
            })
            .collect())
    }

    /// Parses `generator = polynomial` lines; `#` starts a comment.
    pub fn parse(pres: Arc<Presentation>, text: &str) -> Result<Derivation, DerivationError> {
        let mut images: BTreeMap<Var, Poly> = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| DerivationError::Parse {
                line: line_no,
                message,
            };
            let (lhs, rhs) = line
                .split_once('=')
                .ok_or_else(|| err(format!("expected `generator = polynomial`, got `{line}`")))?;
            let lhs_poly = parse_poly(lhs.trim()).map_err(|e| err(e.to_string()))?;
            let v = match lhs_poly.leading_term() {
                Some((m, c)) if lhs_poly.len() == 1 && c == &GaussianRational::from_int(1) => {
                    match m.factors() {
                        [(v, 1)] => *v,
                        _ => return Err(err(format!("`{}` is not a generator", lhs.trim()))),
                    }
                }
                _ => return Err(err(format!("`{}` is not a generator", lhs.trim()))),
            };
            if !pres.has_generator(v) {
                return Err(err(format!("unknown generator {v}")));
            }
            let img = parse_poly(rhs.trim()).map_err(|e| err(e.to_string()))?;
            if images.insert(v, img).is_some() {
                return Err(err(format!("generator {v} assigned twice")));
            }
        }
        Derivation::new(pres, images)
    }

    /// The file form read by [`Derivation::parse`]; lists every generator.
    pub fn to_file_string(&self) -> String {
        let mut out = String::new();
        for v in self.pres.generators() {
            out.push_str(&format!("{v} = {}\n", self.image(v)));
        }
        out
    }

    /// Largest total degree among the images.
    pub fn image_degree(&self) -> u32 {
        self.images.values().map(Poly::total_degree).max().unwrap_or(0)
    }

    pub fn monomial_count(&self) -> usize {
        self.images.values().map(Poly::len).sum()
    }

    /// Scalar `c` with `self = c·other`, if any.
    pub fn proportionality(&self, other: &Derivation) -> Option<GaussianRational> {
        if self.images.keys().ne(other.images.keys()) {
            return None;
        }
        let (v, img) = other.images.iter().next()?;
        let ratio = self.images[v].proportionality(img)?;
        self.images
            .iter()
            .all(|(w, p)| other.images[w].scale(&ratio) == *p)
            .then_some(ratio)
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.images.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.images.iter().map(|(v, img)| format!("{v} ↦ {img}")).collect();
        write!(f, "{}", parts.join(", "))
    }
}

impl fmt::Debug for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for Derivation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let map: BTreeMap<String, String> = self
            .pres
            .generators()
            .into_iter()
            .map(|v| (v.to_string(), self.image(v).to_string()))
            .collect();
        map.serialize(s)
    }
}

/// Monomial with the given variables to the first power; a small helper for tests and tools.
pub fn monomial_of(vars: &[Var]) -> Monomial {
    Monomial::from_pairs(vars.iter().map(|&v| (v, 1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grading::weight_assignment;

    fn p(s: &str) -> Poly {
        parse_poly(s).unwrap()
    }

    fn surface(a: u32, b: u32, c: u32) -> Arc<Presentation> {
        Arc::new(Presentation::surface(a, b, c))
    }

    fn d(pres: &Arc<Presentation>, text: &str) -> Derivation {
        Derivation::parse(pres.clone(), text).unwrap()
    }

    // δ_0 on x^2 + y^2 + z^3 (x = T0_1, y = T1_1, z = T2_1)
    const DELTA0_CUBIC: &str = "T0_1 = 3i*T2_1^2\nT1_1 = 3*T2_1^2\nT2_1 = -2i*T0_1 - 2*T1_1";

    #[test]
    fn apply_examples() {
        let s = surface(2, 2, 3);
        let d0 = d(&s, DELTA0_CUBIC);
        assert!(d0.apply(&p("T0_1^2 + T1_1^2 + T2_1^3")).unwrap().is_zero());
        assert!(d0.apply(&p("7")).unwrap().is_zero());
        let free = Arc::new(Presentation::type1(&[&[2], &[3]], 1).unwrap());
        let ds = Derivation::partial(free.clone(), Var::S(1)).unwrap();
        assert_eq!(ds.apply(&p("S1^2")).unwrap(), p("2*S1"));
        assert_eq!(ds.apply(&p("S7")), Err(DerivationError::UnknownGenerator(Var::S(7))));
    }

    #[test]
    fn well_definedness() {
        let s = surface(2, 2, 2);
        let bad = d(&s, "T0_1 = 1");
        let w = bad.well_definedness_witness().unwrap();
        assert_eq!(w.image, p("2*T0_1"));
        let delta2 = d(&s, "T0_1 = 4*T1_1 + 5i*T2_1\nT1_1 = -4*T0_1 - 3*T2_1\nT2_1 = -5i*T0_1 + 3*T1_1");
        assert!(delta2.is_well_defined());
        assert!(d(&surface(2, 2, 3), DELTA0_CUBIC).is_well_defined());
    }

    #[test]
    fn nilpotency_examples() {
        let d0 = d(&surface(2, 2, 3), DELTA0_CUBIC);
        let Nilpotency::Verified { per_generator, .. } = d0.nilpotency_check(NilpotencyLimits::default()) else {
            panic!("δ_0 must be nilpotent");
        };
        assert!(per_generator[&Var::T(0, 1)] <= 4);
        assert!(d0.kernel_member(&p("i*T0_1 + T1_1")));

        let free = Arc::new(Presentation::type1(&[&[2], &[3]], 1).unwrap());
        let ds = Derivation::partial(free.clone(), Var::S(1)).unwrap();
        assert!(matches!(ds.nilpotency_check(NilpotencyLimits::default()), Nilpotency::Verified { max_index: 2, .. }));
        let euler = Derivation::new(free, [(Var::S(1), p("S1"))]).unwrap();
        assert!(matches!(
            euler.nilpotency_check(NilpotencyLimits::default()),
            Nilpotency::Inconclusive { cap: 64, .. }
        ));
    }

    #[test]
    fn kernel_and_replica() {
        let s = surface(2, 2, 2);
        let dinf = d(&s, "T0_1 = -i*T2_1\nT1_1 = T2_1\nT2_1 = i*T0_1 - T1_1");
        assert!(dinf.is_well_defined());
        assert!(dinf.kernel_member(&p("i*T0_1 - T1_1")));
        assert!(!dinf.kernel_member(&p("T2_1")));
        assert!(dinf.kernel_member(&p("3")));
        assert_eq!(dinf.replica(&Poly::one()).unwrap(), dinf);
        let rep = dinf.replica(&p("i*T0_1 - T1_1")).unwrap();
        assert!(rep.nilpotency_check(NilpotencyLimits::default()).is_verified());

        let free = Arc::new(Presentation::type1(&[&[2], &[3]], 1).unwrap());
        let ds = Derivation::partial(free, Var::S(1)).unwrap();
        assert!(matches!(ds.replica(&p("S1")), Err(DerivationError::NotInKernel(_))));
    }

    #[test]
    fn decomposition_of_free_variable_sum() {
        let pres = Arc::new(Presentation::type1(&[&[2], &[3]], 2).unwrap());
        let g = weight_assignment(&pres);
        let delta = Derivation::new(pres.clone(), [(Var::S(2), p("1 + S1"))]).unwrap();
        let parts = delta.decompose(&g).unwrap();
        assert_eq!(parts.len(), 2);
        let sum = parts.iter().fold(Derivation::zero(pres), |acc, (_, c)| acc.add(c));
        assert_eq!(sum, delta);
        for (w, c) in &parts {
            assert_eq!(&g.derivation_degree(c).unwrap(), w);
            assert!(c.nilpotency_check(NilpotencyLimits::default()).is_verified());
        }
        // weights: S1 -> e_S1, S2 -> e_S2; degrees -e_S2 and e_S1 - e_S2
        let degrees: Vec<&WeightVector> = parts.iter().map(|(w, _)| w).collect();
        assert_eq!(degrees[0].0, vec![0, -1]);
        assert_eq!(degrees[1].0, vec![1, -1]);
    }

    #[test]
    fn file_round_trip() {
        let s = surface(2, 2, 3);
        let d0 = d(&s, DELTA0_CUBIC);
        assert_eq!(Derivation::parse(s.clone(), &d0.to_file_string()).unwrap(), d0);
        assert!(matches!(
            Derivation::parse(s.clone(), "T0_1 = 1\nT0_1 = 2"),
            Err(DerivationError::Parse { line: 2, .. })
        ));
        assert!(matches!(Derivation::parse(s.clone(), "T9_1 = 1"), Err(DerivationError::Parse { .. })));
        assert!(matches!(Derivation::parse(s, "2*T0_1 = 1"), Err(DerivationError::Parse { .. })));
    }
}
