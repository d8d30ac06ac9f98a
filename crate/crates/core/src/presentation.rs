//! Trinomial presentations: blocks of exponents, free variables and relation
//! constants, plus the queries that only depend on that data.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::poly::{Monomial, Poly, RewriteStrategy, RewriteSystem, Var};
use crate::scalar::{det2, gq_parse, GaussianRational, ScalarError};

type GQ = GaussianRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("bad shape: {0}")]
    BadShape(String),
    #[error("exponent l_{{{block},{col}}} = {value} is not positive")]
    NonPositiveExponent { block: u32, col: u32, value: i64 },
    #[error("constants a_{0} and a_{1} coincide; Type 1 constants must be pairwise distinct")]
    DuplicateConstants(u32, u32),
    #[error("columns a_{0} and a_{1} are linearly dependent; Type 2 columns must be pairwise independent")]
    DependentColumns(u32, u32),
    #[error("bad scalar: {0}")]
    BadScalar(#[from] ScalarError),
    #[error("assumption violated: {0}")]
    AssumptionViolated(String),
    #[error("invalid presentation file: {0}")]
    Json(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum AlgebraType {
    Type1,
    Type2,
}

impl AlgebraType {
    /// Index of the first monomial block.
    pub fn first_block(self) -> u32 {
        match self {
            AlgebraType::Type1 => 1,
            AlgebraType::Type2 => 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Constants {
    Type1(Vec<GQ>),
    Type2(Vec<[GQ; 2]>),
}

/// Raw input record, as read from a presentation file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationInput {
    #[serde(rename = "type")]
    pub kind: u8,
    pub blocks: Vec<Vec<i64>>,
    #[serde(default)]
    pub free_vars: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constants: Option<Vec<Value>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub anchors: Option<Vec<i64>>,
}

/// A validated trinomial presentation.
#[derive(Debug, Clone)]
pub struct Presentation {
    kind: AlgebraType,
    blocks: Vec<Vec<u32>>,
    free_vars: u32,
    constants: Constants,
    anchors: Vec<u32>,
    relations: Vec<Poly>,
    rewrite: RewriteSystem,
}

fn scalar_from_json(v: &Value) -> Result<GQ, PresentationError> {
    match v {
        Value::String(s) => Ok(gq_parse(s)?),
        Value::Number(n) => n
            .as_i64()
            .map(GQ::from_int)
            .ok_or_else(|| PresentationError::BadScalar(ScalarError::Malformed(n.to_string()))),
        other => Err(PresentationError::BadScalar(ScalarError::Malformed(other.to_string()))),
    }
}

impl Presentation {
    pub fn from_json(text: &str) -> Result<Presentation, PresentationError> {
        let input: PresentationInput =
            serde_json::from_str(text).map_err(|e| PresentationError::Json(e.to_string()))?;
        Presentation::validate(&input)
    }

    pub fn validate(input: &PresentationInput) -> Result<Presentation, PresentationError> {
        let kind = match input.kind {
            1 => AlgebraType::Type1,
            2 => AlgebraType::Type2,
            k => return Err(PresentationError::BadShape(format!("type must be 1 or 2, got {k}"))),
        };
        let first = kind.first_block();
        let min_blocks = match kind {
            AlgebraType::Type1 => 2,
            AlgebraType::Type2 => 3,
        };
        if input.blocks.len() < min_blocks {
            return Err(PresentationError::BadShape(format!(
                "need at least {min_blocks} blocks (r >= 2), got {}",
                input.blocks.len()
            )));
        }
        let mut blocks = Vec::with_capacity(input.blocks.len());
        for (idx, row) in input.blocks.iter().enumerate() {
            let label = first + idx as u32;
            if row.is_empty() {
                return Err(PresentationError::BadShape(format!("block {label} is empty")));
            }
            let mut out = Vec::with_capacity(row.len());
            for (j, &l) in row.iter().enumerate() {
                if l <= 0 {
                    return Err(PresentationError::NonPositiveExponent {
                        block: label,
                        col: j as u32 + 1,
                        value: l,
                    });
                }
                let l = u32::try_from(l)
                    .map_err(|_| PresentationError::BadShape(format!("exponent {l} too large")))?;
                out.push(l);
            }
            blocks.push(out);
        }
        if input.free_vars < 0 {
            return Err(PresentationError::BadShape("free_vars must be non-negative".into()));
        }
        let free_vars = input.free_vars as u32;

        let anchors = match &input.anchors {
            None => vec![1; blocks.len()],
            Some(a) => {
                if a.len() != blocks.len() {
                    return Err(PresentationError::BadShape(format!(
                        "{} anchors for {} blocks",
                        a.len(),
                        blocks.len()
                    )));
                }
                a.iter()
                    .zip(&blocks)
                    .enumerate()
                    .map(|(idx, (&b, row))| {
                        if b < 1 || b as usize > row.len() {
                            Err(PresentationError::BadShape(format!(
                                "anchor {b} out of range for block {}",
                                first + idx as u32
                            )))
                        } else {
                            Ok(b as u32)
                        }
                    })
                    .collect::<Result<_, _>>()?
            }
        };

        let constants = match (&input.constants, kind) {
            (None, AlgebraType::Type1) => Constants::Type1(default_type1_constants(blocks.len())),
            (None, AlgebraType::Type2) => Constants::Type2(default_type2_constants(blocks.len())),
            (Some(vals), _) if vals.len() != blocks.len() => {
                return Err(PresentationError::BadShape(format!(
                    "{} constants for {} blocks",
                    vals.len(),
                    blocks.len()
                )))
            }
            (Some(vals), AlgebraType::Type1) => {
                Constants::Type1(vals.iter().map(scalar_from_json).collect::<Result<_, _>>()?)
            }
            (Some(vals), AlgebraType::Type2) => Constants::Type2(
                vals.iter()
                    .map(|v| match v {
                        Value::Array(pair) if pair.len() == 2 => {
                            Ok([scalar_from_json(&pair[0])?, scalar_from_json(&pair[1])?])
                        }
                        other => Err(PresentationError::BadShape(format!(
                            "Type 2 constants must be 2-element arrays, got {other}"
                        ))),
                    })
                    .collect::<Result<_, _>>()?,
            ),
        };

        match &constants {
            Constants::Type1(a) => {
                for i in 0..a.len() {
                    for j in i + 1..a.len() {
                        if a[i] == a[j] {
                            return Err(PresentationError::DuplicateConstants(first + i as u32, first + j as u32));
                        }
                    }
                }
            }
            Constants::Type2(a) => {
                for i in 0..a.len() {
                    for j in i + 1..a.len() {
                        if det2(&a[i], &a[j]).is_zero() {
                            return Err(PresentationError::DependentColumns(first + i as u32, first + j as u32));
                        }
                    }
                }
            }
        }

        let mut p = Presentation {
            kind,
            blocks,
            free_vars,
            constants,
            anchors,
            relations: Vec::new(),
            rewrite: RewriteSystem::default(),
        };
        p.relations = p.build_relations();
        p.rewrite = RewriteSystem::from_relations(&p.relations);
        debug_assert!(p.rewrite.leads_pairwise_coprime());
        Ok(p)
    }

    /// Type 1 presentation with default constants.
    pub fn type1(blocks: &[&[u32]], free_vars: u32) -> Result<Presentation, PresentationError> {
        Presentation::validate(&PresentationInput::plain(1, blocks, free_vars))
    }

    /// Type 2 presentation with default constants.
    pub fn type2(blocks: &[&[u32]], free_vars: u32) -> Result<Presentation, PresentationError> {
        Presentation::validate(&PresentationInput::plain(2, blocks, free_vars))
    }

    /// The surface `x^a + y^b + z^c = 0`.
    pub fn surface(a: u32, b: u32, c: u32) -> Presentation {
        Presentation::type2(&[&[a], &[b], &[c]], 0).expect("surface exponents are positive")
    }

    pub fn to_input(&self) -> PresentationInput {
        let constants = match &self.constants {
            Constants::Type1(a) => a.iter().map(|c| Value::String(c.to_string())).collect(),
            Constants::Type2(a) => a
                .iter()
                .map(|[x, y]| Value::Array(vec![Value::String(x.to_string()), Value::String(y.to_string())]))
                .collect(),
        };
        PresentationInput {
            kind: match self.kind {
                AlgebraType::Type1 => 1,
                AlgebraType::Type2 => 2,
            },
            blocks: self.blocks.iter().map(|b| b.iter().map(|&l| l as i64).collect()).collect(),
            free_vars: self.free_vars as i64,
            constants: Some(constants),
            anchors: Some(self.anchors.iter().map(|&b| b as i64).collect()),
        }
    }

    pub fn kind(&self) -> AlgebraType {
        self.kind
    }

    pub fn first_block(&self) -> u32 {
        self.kind.first_block()
    }

    /// Block indices in order.
    pub fn block_indices(&self) -> impl Iterator<Item = u32> + '_ {
        let first = self.first_block();
        (0..self.blocks.len() as u32).map(move |k| first + k)
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// The exponent row `l_i`.
    pub fn block(&self, i: u32) -> &[u32] {
        &self.blocks[(i - self.first_block()) as usize]
    }

    pub fn exponent(&self, i: u32, j: u32) -> u32 {
        self.block(i)[(j - 1) as usize]
    }

    pub fn anchor(&self, i: u32) -> u32 {
        self.anchors[(i - self.first_block()) as usize]
    }

    pub fn constants(&self) -> &Constants {
        &self.constants
    }

    /// `r` as in the relation count `r - 1`.
    pub fn r(&self) -> u32 {
        match self.kind {
            AlgebraType::Type1 => self.blocks.len() as u32,
            AlgebraType::Type2 => self.blocks.len() as u32 - 1,
        }
    }

    /// Total number of block variables.
    pub fn n(&self) -> u32 {
        self.blocks.iter().map(|b| b.len() as u32).sum()
    }

    pub fn free_vars(&self) -> u32 {
        self.free_vars
    }

    pub fn dimension(&self) -> i64 {
        self.n() as i64 + self.free_vars as i64 - self.r() as i64 + 1
    }

    /// All generators: block variables in block order, then free variables.
    pub fn generators(&self) -> Vec<Var> {
        let mut out: Vec<Var> = self
            .block_indices()
            .flat_map(|i| (1..=self.block(i).len() as u32).map(move |j| Var::T(i, j)))
            .collect();
        out.extend((1..=self.free_vars).map(Var::S));
        out
    }

    pub fn has_generator(&self, v: Var) -> bool {
        match v {
            Var::T(i, j) => {
                i >= self.first_block()
                    && ((i - self.first_block()) as usize) < self.blocks.len()
                    && j >= 1
                    && j as usize <= self.block(i).len()
            }
            Var::S(k) => k >= 1 && k <= self.free_vars,
        }
    }

    /// The block monomial `T_i^{l_i}`.
    pub fn block_monomial(&self, i: u32) -> Monomial {
        self.block_power(i, 1)
    }

    /// `T_i^{l_i / q}`; `q` must divide every exponent of the block.
    pub fn block_power(&self, i: u32, q: u32) -> Monomial {
        Monomial::from_pairs(self.block(i).iter().enumerate().map(|(j, &l)| {
            debug_assert_eq!(l % q, 0);
            (Var::T(i, j as u32 + 1), l / q)
        }))
    }

    /// `gcd(l_{i1}, ..., l_{in_i})`.
    pub fn block_gcd(&self, i: u32) -> u32 {
        self.block(i).iter().fold(0, |g, &l| g.gcd(&l))
    }

    /// Coefficients `(c0, c1, c2)` with `c0*T_p^{l_p} + c1*T_q^{l_q} + c2*T_s^{l_s}`
    /// in the relation ideal of a Type 2 presentation.
    pub fn triple_coefficients(&self, p: u32, q: u32, s: u32) -> [GQ; 3] {
        let Constants::Type2(a) = &self.constants else {
            panic!("triple coefficients are only defined for Type 2");
        };
        let f = self.first_block();
        let (ap, aq, as_) = (&a[(p - f) as usize], &a[(q - f) as usize], &a[(s - f) as usize]);
        [det2(aq, as_), -det2(ap, as_), det2(ap, aq)]
    }

    fn build_relations(&self) -> Vec<Poly> {
        let idx: Vec<u32> = self.block_indices().collect();
        match &self.constants {
            Constants::Type1(a) => idx
                .windows(2)
                .enumerate()
                .map(|(k, w)| {
                    let shift = &a[k + 1] - &a[k];
                    &(&Poly::monomial(self.block_monomial(w[0])) - &Poly::monomial(self.block_monomial(w[1])))
                        - &Poly::constant(shift)
                })
                .collect(),
            Constants::Type2(_) => idx
                .windows(3)
                .map(|w| self.triple_relation(w[0], w[1], w[2]))
                .collect(),
        }
    }

    /// `c0*T_p^{l_p} + c1*T_q^{l_q} + c2*T_s^{l_s}`, a member of the relation ideal.
    pub fn triple_relation(&self, p: u32, q: u32, s: u32) -> Poly {
        let [c0, c1, c2] = self.triple_coefficients(p, q, s);
        Poly::from_terms([
            (self.block_monomial(p), c0),
            (self.block_monomial(q), c1),
            (self.block_monomial(s), c2),
        ])
    }

    pub fn relations(&self) -> &[Poly] {
        &self.relations
    }

    pub fn rewrite_system(&self) -> &RewriteSystem {
        &self.rewrite
    }

    pub fn normal_form(&self, p: &Poly) -> Poly {
        self.rewrite.normal_form(p)
    }

    pub fn normal_form_with(&self, p: &Poly, strategy: RewriteStrategy) -> Poly {
        self.rewrite.normal_form_with(p, strategy)
    }

    pub fn is_reduced(&self, p: &Poly) -> bool {
        p.terms().all(|(m, _)| self.rewrite.is_reduced(m))
    }

    /// Factoriality test. Requires that no variable occurs linearly as a whole block.
    pub fn is_factorial(&self) -> Result<(bool, String), PresentationError> {
        for i in self.block_indices() {
            let row = self.block(i);
            if row.len() == 1 && row[0] == 1 {
                return Err(PresentationError::AssumptionViolated(format!(
                    "n_{i} * l_{i}1 = 1: block {i} is a single linear variable; eliminate it first"
                )));
            }
        }
        match self.kind {
            AlgebraType::Type1 => {
                for i in self.block_indices() {
                    let g = self.block_gcd(i);
                    if g != 1 {
                        return Ok((false, format!("gcd of block {i} is {g}")));
                    }
                }
                Ok((true, "every block has gcd 1".into()))
            }
            AlgebraType::Type2 => {
                let d: Vec<(u32, u32)> = self.block_indices().map(|i| (i, self.block_gcd(i))).collect();
                for (a, &(i, di)) in d.iter().enumerate() {
                    for &(j, dj) in &d[a + 1..] {
                        let g = di.gcd(&dj);
                        if g != 1 {
                            return Ok((false, format!("d_{i} = {di} and d_{j} = {dj} share the factor {g}")));
                        }
                    }
                }
                let list: Vec<String> = d.iter().map(|(_, g)| g.to_string()).collect();
                Ok((true, format!("d = ({}) pairwise coprime", list.join(","))))
            }
        }
    }

    /// Generators of the field of rational invariants as `(numerator, denominator)` monomials.
    pub fn invariant_field_generators(&self) -> Vec<(Monomial, Monomial)> {
        match self.kind {
            AlgebraType::Type1 => self
                .block_indices()
                .map(|i| (self.block_power(i, self.block_gcd(i)), Monomial::one()))
                .collect(),
            AlgebraType::Type2 => {
                let idx: Vec<u32> = self.block_indices().collect();
                let mut out = Vec::new();
                for (a, &i) in idx.iter().enumerate() {
                    for &j in &idx[a + 1..] {
                        let g = self.block_gcd(i).gcd(&self.block_gcd(j));
                        out.push((self.block_power(i, g), self.block_power(j, g)));
                    }
                }
                out
            }
        }
    }

    /// Rescales variables so that the relation on blocks `(p, q, s)` has all
    /// coefficients equal. Returns the substitution `T -> t*T` per rescaled
    /// variable, or the obstruction when the needed root is not in `Q(i)`.
    pub fn normalization(&self, p: u32, q: u32, s: u32) -> Result<Normalization, NormalizationObstruction> {
        let [c0, c1, c2] = self.triple_coefficients(p, q, s);
        let mut scalings = BTreeMap::new();
        for (i, c) in [(p, &c0), (q, &c1)] {
            let target = &c2 / c;
            if target.is_one() {
                continue;
            }
            let mut found = None;
            // try the anchor column first
            let mut cols: Vec<u32> = (1..=self.block(i).len() as u32).collect();
            cols.sort_by_key(|&j| j != self.anchor(i));
            for j in cols {
                let l = self.exponent(i, j);
                if let Ok(Some(t)) = target.nth_root(l) {
                    found = Some((Var::T(i, j), t));
                    break;
                }
            }
            match found {
                Some((v, t)) => {
                    scalings.insert(v, t);
                }
                None => {
                    return Err(NormalizationObstruction {
                        block: i,
                        ratio: target,
                        exponents: self.block(i).to_vec(),
                    })
                }
            }
        }
        let map: BTreeMap<Var, Poly> = scalings
            .iter()
            .map(|(&v, t)| (v, Poly::term(t.clone(), Monomial::var(v))))
            .collect();
        let relation = self.triple_relation(p, q, s).substitute(&map).scale(&c2.inv().expect("nonzero minor"));
        Ok(Normalization { scalings, relation })
    }

    pub fn display_name(&self) -> String {
        format!("{self}")
    }
}

impl PresentationInput {
    pub fn plain(kind: u8, blocks: &[&[u32]], free_vars: u32) -> PresentationInput {
        PresentationInput {
            kind,
            blocks: blocks.iter().map(|b| b.iter().map(|&l| l as i64).collect()).collect(),
            free_vars: free_vars as i64,
            constants: None,
            anchors: None,
        }
    }
}

fn default_type1_constants(count: usize) -> Vec<GQ> {
    (0..count as i64).map(GQ::from_int).collect()
}

fn default_type2_constants(count: usize) -> Vec<[GQ; 2]> {
    (0..count as i64)
        .map(|i| match i {
            0 => [GQ::one(), GQ::zero()],
            1 => [GQ::zero(), GQ::one()],
            _ => [GQ::from_int(-1), GQ::from_int(1 - i)],
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normalization {
    pub scalings: BTreeMap<Var, GQ>,
    /// The rescaled relation, divided by its last coefficient.
    pub relation: Poly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizationObstruction {
    pub block: u32,
    pub ratio: GQ,
    pub exponents: Vec<u32>,
}

impl fmt::Display for NormalizationObstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ls: Vec<String> = self.exponents.iter().map(u32::to_string).collect();
        write!(
            f,
            "block {}: {} has no l-th root in Q(i) for any l in ({})",
            self.block,
            self.ratio,
            ls.join(",")
        )
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .blocks
            .iter()
            .map(|b| format!("({})", b.iter().map(u32::to_string).collect::<Vec<_>>().join(",")))
            .collect();
        let t = match self.kind {
            AlgebraType::Type1 => 1,
            AlgebraType::Type2 => 2,
        };
        write!(f, "Type {t} l=({}) d={}", rows.join(","), self.free_vars)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn p(s: &str) -> Poly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn validates_shapes() {
        let pres = Presentation::type1(&[&[1, 2], &[3]], 0).unwrap();
        assert_eq!((pres.r(), pres.n()), (2, 3));
        let dup = Presentation::from_json(r#"{"type":1,"blocks":[[1],[2]],"constants":["1","1"]}"#);
        assert_eq!(dup.unwrap_err(), PresentationError::DuplicateConstants(1, 2));
        let dep = Presentation::from_json(
            r#"{"type":2,"blocks":[[1],[2],[3]],"constants":[["1","0"],["2","0"],["0","1"]]}"#,
        );
        assert_eq!(dep.unwrap_err(), PresentationError::DependentColumns(0, 1));
        let neg = Presentation::from_json(r#"{"type":1,"blocks":[[1],[0]]}"#);
        assert!(matches!(neg, Err(PresentationError::NonPositiveExponent { block: 2, col: 1, .. })));
        assert!(matches!(
            Presentation::from_json(r#"{"type":2,"blocks":[[1],[2]]}"#),
            Err(PresentationError::BadShape(_))
        ));
        assert!(matches!(
            Presentation::from_json(r#"{"type":1,"blocks":[[1],[2]],"constants":["1/0","2"]}"#),
            Err(PresentationError::BadScalar(_))
        ));
    }

    #[test]
    fn relations_match_the_defining_equations() {
        let t1 = Presentation::from_json(r#"{"type":1,"blocks":[[2],[3]],"constants":["0","1"]}"#).unwrap();
        assert_eq!(t1.relations(), &[p("T1_1^2 - T2_1^3 - 1")]);
        let t2 = Presentation::type2(&[&[2], &[2], &[2]], 0).unwrap();
        assert_eq!(t2.relations(), &[p("T0_1^2 + T1_1^2 + T2_1^2")]);
        let t3 = Presentation::type2(&[&[2], &[2], &[2], &[3]], 0).unwrap();
        assert_eq!(t3.relations().len(), 2);
        assert_eq!(t3.relations()[1].vars(), vec![Var::T(1, 1), Var::T(2, 1), Var::T(3, 1)]);
        for rel in t3.relations() {
            assert!(t3.normal_form(rel).is_zero());
        }
        // the triple relation on non-consecutive blocks is also in the ideal
        assert!(t3.normal_form(&t3.triple_relation(0, 1, 3)).is_zero());
        assert!(t3.normal_form(&t3.triple_relation(0, 2, 3)).is_zero());
    }

    #[test]
    fn normal_form_examples() {
        let s = Presentation::surface(2, 2, 2);
        assert_eq!(s.normal_form(&p("T2_1^2")), p("-T0_1^2 - T1_1^2"));
        assert_eq!(s.normal_form(&p("T0_1*T1_1")), p("T0_1*T1_1"));
        assert_eq!(s.normal_form(&p("T2_1^3")), p("-T0_1^2*T2_1 - T1_1^2*T2_1"));
    }

    #[test]
    fn dimension_formula() {
        assert_eq!(Presentation::type1(&[&[1, 2], &[3]], 1).unwrap().dimension(), 3);
        assert_eq!(Presentation::surface(2, 2, 3).dimension(), 2);
        assert_eq!(Presentation::type1(&[&[2], &[3]], 0).unwrap().dimension(), 1);
    }

    #[test]
    fn factoriality() {
        assert!(Presentation::surface(2, 3, 5).is_factorial().unwrap().0);
        assert!(!Presentation::surface(2, 2, 2).is_factorial().unwrap().0);
        let (f, why) = Presentation::type1(&[&[2, 3], &[5]], 0).unwrap().is_factorial().unwrap();
        assert!(!f);
        assert!(why.contains("block 2 is 5"), "{why}");
        assert!(matches!(
            Presentation::surface(1, 2, 3).is_factorial(),
            Err(PresentationError::AssumptionViolated(_))
        ));
    }

    #[test]
    fn invariant_field() {
        let m = |s: &str| Monomial::from_pairs(p(s).leading_term().unwrap().0.factors().iter().copied());
        let g = Presentation::surface(2, 2, 3).invariant_field_generators();
        assert_eq!(
            g,
            vec![
                (m("T0_1"), m("T1_1")),
                (m("T0_1^2"), m("T2_1^3")),
                (m("T1_1^2"), m("T2_1^3")),
            ]
        );
        let g = Presentation::type1(&[&[2, 4], &[3]], 0).unwrap().invariant_field_generators();
        assert_eq!(g, vec![(m("T1_1*T1_2^2"), Monomial::one()), (m("T2_1"), Monomial::one())]);
    }

    #[test]
    fn normalization_helper() {
        let pres = Presentation::from_json(
            r#"{"type":2,"blocks":[[2],[2],[3]],"constants":[["1","0"],["0","1"],["-1","-4"]]}"#,
        )
        .unwrap();
        // relation: x^2 + 4y^2 + z^3
        assert_eq!(pres.relations(), &[p("T0_1^2 + 4*T1_1^2 + T2_1^3")]);
        let norm = pres.normalization(0, 1, 2).unwrap();
        assert_eq!(norm.relation, p("T0_1^2 + T1_1^2 + T2_1^3"));
        let bad = Presentation::from_json(
            r#"{"type":2,"blocks":[[2],[2],[3]],"constants":[["1","0"],["0","1"],["-1","-2"]]}"#,
        )
        .unwrap();
        let err = bad.normalization(0, 1, 2).unwrap_err();
        assert_eq!(err.block, 1);
    }
}
