//! Brute-force search for homogeneous derivations by exact linear algebra.
//!
//! For a target weight `w`, every generator `x` may map to any combination of
//! reduced monomials of weight `wt(x) + w` and bounded degree. The relations
//! give linear constraints on the coefficients; the nullspace is the space of
//! homogeneous derivations of degree `w` within the bound. Elements of that
//! space are then sampled and tested for nilpotency. Nothing here uses the
//! explicit classification formulas.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::ClassifyError;
use crate::derivation::{Derivation, Nilpotency, NilpotencyLimits};
use crate::grading::{weight_assignment, Grading, WeightVector};
use crate::linalg::nullspace;
use crate::par::Execution;
use crate::poly::{Monomial, Poly, Var};
use crate::presentation::Presentation;
use crate::scalar::GaussianRational;

type GQ = GaussianRational;

#[derive(Debug, Clone)]
pub struct OracleConfig {
    pub degree_bound: u32,
    /// Per-weight limit on the number of unknown coefficients.
    pub max_unknowns: usize,
    pub max_weights: usize,
    pub limits: NilpotencyLimits,
    /// Extra random elements tested per solution space.
    pub random_samples: usize,
    pub seed: u64,
    pub execution: Execution,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            degree_bound: 4,
            max_unknowns: 600,
            max_weights: 20_000,
            limits: NilpotencyLimits {
                cap: 16,
                max_terms: 500,
            },
            random_samples: 6,
            seed: 0x5eed,
            execution: Execution::default(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct WeightSolution {
    pub weight: WeightVector,
    pub unknowns: usize,
    pub dimension: usize,
    pub basis: Vec<Derivation>,
    /// Number of elements of the space run through the nilpotency check.
    pub sampled: usize,
    pub inconclusive: usize,
    pub witness: Option<Derivation>,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub degree_bound: u32,
    pub weights_examined: usize,
    pub solutions: Vec<WeightSolution>,
}

impl OracleReport {
    pub fn nilpotent_found(&self) -> bool {
        self.solutions.iter().any(|s| s.witness.is_some())
    }

    pub fn witnesses(&self) -> impl Iterator<Item = (&WeightVector, &Derivation)> {
        self.solutions
            .iter()
            .filter_map(|s| s.witness.as_ref().map(|w| (&s.weight, w)))
    }

    /// Solution at `w`, if the space there is non-zero.
    pub fn at(&self, w: &WeightVector) -> Option<&WeightSolution> {
        self.solutions.iter().find(|s| &s.weight == w)
    }
}

/// Every monomial in `vars` of total degree at most `bound`.
fn monomials_up_to(vars: &[Var], bound: u32) -> Vec<Monomial> {
    fn go(vars: &[Var], left: u32, acc: &mut Vec<(Var, u32)>, out: &mut Vec<Monomial>) {
        let Some((&v, rest)) = vars.split_first() else {
            out.push(Monomial::from_pairs(acc.iter().copied()));
            return;
        };
        for e in 0..=left {
            if e > 0 {
                acc.push((v, e));
            }
            go(rest, left - e, acc, out);
            if e > 0 {
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(vars, bound, &mut Vec::new(), &mut out);
    out
}

/// Reduced monomials of degree at most `bound`, grouped by weight.
fn reduced_by_weight(p: &Presentation, g: &Grading, bound: u32) -> BTreeMap<WeightVector, Vec<Monomial>> {
    let mut out: BTreeMap<WeightVector, Vec<Monomial>> = BTreeMap::new();
    for m in monomials_up_to(&p.generators(), bound) {
        if p.rewrite_system().is_reduced(&m) {
            let w = g.monomial_weight(&m).expect("generator monomial");
            out.entry(w).or_default().push(m);
        }
    }
    out
}

/// Weights `wt(m) - wt(x)` over generators `x` and reduced monomials `m` of
/// degree at most `degree_bound`, together with `extra` and zero; sorted.
pub fn induced_weight_box(p: &Presentation, degree_bound: u32, extra: &[WeightVector]) -> Vec<WeightVector> {
    let g = weight_assignment(p);
    let by_weight = reduced_by_weight(p, &g, degree_bound);
    let mut set: BTreeSet<WeightVector> = extra.iter().cloned().collect();
    set.insert(g.zero());
    for v in p.generators() {
        let wv = g.weight(v).expect("generator");
        for w in by_weight.keys() {
            set.insert(w - wv);
        }
    }
    set.into_iter().collect()
}

struct Space<'a> {
    p: &'a Arc<Presentation>,
    unknowns: Vec<(Var, Monomial)>,
}

impl Space<'_> {
    fn derivation(&self, coeffs: &[GQ]) -> Derivation {
        let mut images: BTreeMap<Var, Poly> = BTreeMap::new();
        for ((v, m), c) in self.unknowns.iter().zip(coeffs) {
            if !c.is_zero() {
                images.entry(*v).or_default().add_term(m.clone(), c);
            }
        }
        Derivation::new(self.p.clone(), images).expect("generators of the presentation")
    }
}

fn combine(basis: &[Vec<GQ>], coeffs: &[GQ]) -> Vec<GQ> {
    let len = basis.first().map_or(0, Vec::len);
    let mut out = vec![GQ::zero(); len];
    for (b, c) in basis.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(b) {
            *o += &(c * x);
        }
    }
    out
}

/// Coefficient vectors to test: each basis vector, then small unit combinations
/// (all of them up to dimension 3, pairs up to dimension 6), then random ones.
fn sample_coefficients(dim: usize, random: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<GQ>> {
    let mut out = Vec::new();
    for k in 0..dim {
        let mut v = vec![GQ::zero(); dim];
        v[k] = GQ::one();
        out.push(v);
    }
    let units = [GQ::one(), -GQ::one(), GQ::i(), -GQ::i()];
    if dim <= 3 {
        let choices: Vec<GQ> = std::iter::once(GQ::zero()).chain(units.iter().cloned()).collect();
        let total = 5usize.pow(dim as u32);
        for code in 0..total {
            let mut v = Vec::with_capacity(dim);
            let mut c = code;
            for _ in 0..dim {
                v.push(choices[c % 5].clone());
                c /= 5;
            }
            // Projective representatives: the first non-zero entry is 1.
            let first = v.iter().position(|x| !x.is_zero());
            let support = v.iter().filter(|x| !x.is_zero()).count();
            if support >= 2 && first.is_some_and(|f| v[f].is_one()) {
                out.push(v);
            }
        }
    } else if dim <= 6 {
        for a in 0..dim {
            for b in a + 1..dim {
                for u in &units {
                    let mut v = vec![GQ::zero(); dim];
                    v[a] = GQ::one();
                    v[b] = u.clone();
                    out.push(v);
                }
            }
        }
    }
    if dim >= 2 {
        for _ in 0..random {
            out.push(
                (0..dim)
                    .map(|_| GQ::gaussian(rng.gen_range(-3..=3), rng.gen_range(-3..=3)))
                    .collect(),
            );
        }
    }
    out
}

fn solve_weight(
    p: &Arc<Presentation>,
    g: &Grading,
    by_weight: &BTreeMap<WeightVector, Vec<Monomial>>,
    partials: &[Vec<(Var, Poly)>],
    w: &WeightVector,
    index: usize,
    cfg: &OracleConfig,
) -> Result<Option<WeightSolution>, ClassifyError> {
    let mut unknowns = Vec::new();
    for v in p.generators() {
        let target = g.weight(v).expect("generator") + w;
        if let Some(ms) = by_weight.get(&target) {
            unknowns.extend(ms.iter().map(|m| (v, m.clone())));
        }
    }
    if unknowns.is_empty() {
        return Ok(None);
    }
    if unknowns.len() > cfg.max_unknowns {
        return Err(ClassifyError::BoxTooLarge(format!(
            "weight {w} has {} unknowns, limit {}",
            unknowns.len(),
            cfg.max_unknowns
        )));
    }
    // Row per (relation, reduced monomial); column per unknown.
    let mut rows: BTreeMap<(usize, Monomial), Vec<GQ>> = BTreeMap::new();
    let cols = unknowns.len();
    for (ri, rel_partials) in partials.iter().enumerate() {
        for (col, (v, m)) in unknowns.iter().enumerate() {
            let Some((_, d)) = rel_partials.iter().find(|(x, _)| x == v) else {
                continue;
            };
            let image = p.normal_form(&d.mul_monomial(m));
            for (mono, c) in image.terms() {
                rows.entry((ri, mono.clone())).or_insert_with(|| vec![GQ::zero(); cols])[col] = c.clone();
            }
        }
    }
    let rows: Vec<Vec<GQ>> = rows.into_values().collect();
    let basis = nullspace(&rows, cols);
    if basis.is_empty() {
        return Ok(None);
    }
    let space = Space { p, unknowns };
    let derivations: Vec<Derivation> = basis.iter().map(|b| space.derivation(b)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(index as u64));
    let mut sampled = 0;
    let mut inconclusive = 0;
    let mut witness = None;
    for coeffs in sample_coefficients(basis.len(), cfg.random_samples, &mut rng) {
        let d = space.derivation(&combine(&basis, &coeffs));
        if d.is_zero() {
            continue;
        }
        sampled += 1;
        match d.nilpotency_check(cfg.limits) {
            Nilpotency::Verified { .. } => {
                witness = Some(d);
                break;
            }
            Nilpotency::Inconclusive { reason, .. } => {
                if reason.contains("terms") {
                    inconclusive += 1;
                }
            }
        }
    }
    Ok(Some(WeightSolution {
        weight: w.clone(),
        unknowns: space.unknowns.len(),
        dimension: basis.len(),
        basis: derivations,
        sampled,
        inconclusive,
        witness,
    }))
}

/// Solves for homogeneous derivations at every weight of `weights` and tests
/// sampled solutions for nilpotency. Weights with a zero solution space are omitted.
pub fn oracle_enumerate(
    p: &Arc<Presentation>,
    weights: &[WeightVector],
    cfg: &OracleConfig,
) -> Result<OracleReport, ClassifyError> {
    if weights.len() > cfg.max_weights {
        return Err(ClassifyError::BoxTooLarge(format!(
            "{} weights, limit {}",
            weights.len(),
            cfg.max_weights
        )));
    }
    let g = weight_assignment(p);
    let by_weight = reduced_by_weight(p, &g, cfg.degree_bound);
    let partials: Vec<Vec<(Var, Poly)>> = p
        .relations()
        .iter()
        .map(|rel| {
            rel.vars()
                .into_iter()
                .map(|v| (v, rel.partial_derivative(v)))
                .collect()
        })
        .collect();
    let indexed: Vec<(usize, &WeightVector)> = weights.iter().enumerate().collect();
    let results = cfg
        .execution
        .map(&indexed, |&(k, w)| solve_weight(p, &g, &by_weight, &partials, w, k, cfg));
    let mut solutions = Vec::new();
    for r in results {
        if let Some(s) = r? {
            solutions.push(s);
        }
    }
    Ok(OracleReport {
        degree_bound: cfg.degree_bound,
        weights_examined: weights.len(),
        solutions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn quick() -> OracleConfig {
        OracleConfig {
            execution: Execution::Sequential,
            ..OracleConfig::default()
        }
    }

    #[test]
    fn linear_derivations_of_the_quadric() {
        let p = Arc::new(Presentation::surface(2, 2, 2));
        let cfg = OracleConfig {
            degree_bound: 1,
            ..quick()
        };
        let zero = WeightVector::zero(weight_assignment(&p).rank());
        let report = oracle_enumerate(&p, std::slice::from_ref(&zero), &cfg).unwrap();
        let sol = report.at(&zero).unwrap();
        // Three rotations of the quadric plus the Euler derivation.
        assert_eq!(sol.dimension, 4);
        assert!(sol.witness.is_some());
    }

    #[test]
    fn contains_the_cubic_surface_lnd() {
        let p = Arc::new(Presentation::surface(2, 2, 3));
        let g = weight_assignment(&p);
        let text = "T0_1 = 3i*T2_1^2\nT1_1 = 3*T2_1^2\nT2_1 = -2i*T0_1 - 2*T1_1";
        let d = Derivation::parse(p.clone(), text).unwrap();
        let w = g.derivation_degree(&d).unwrap();
        let report = oracle_enumerate(&p, std::slice::from_ref(&w), &quick()).unwrap();
        let sol = report.at(&w).unwrap();
        // Membership: appending δ to the basis does not raise the rank.
        let gens = p.generators();
        let coords = |d: &Derivation| -> Vec<GQ> {
            let mut v = Vec::new();
            for x in &gens {
                let img = d.image(*x);
                for m in monomials_up_to(&gens, 4) {
                    v.push(img.coefficient(&m));
                }
            }
            v
        };
        let mut rows: Vec<Vec<GQ>> = sol.basis.iter().map(coords).collect();
        let width = rows[0].len();
        let before = crate::linalg::rref(&mut rows.clone(), width).len();
        rows.push(coords(&d));
        let after = crate::linalg::rref(&mut rows, width).len();
        assert_eq!(before, after);
        assert!(sol.witness.is_some());
        assert!(parse_poly("T0_1").is_ok());
    }

    #[test]
    fn rigid_surface_has_no_nilpotent_solution() {
        let p = Arc::new(Presentation::surface(2, 3, 7));
        let weights = induced_weight_box(&p, 3, &[]);
        let report = oracle_enumerate(&p, &weights, &OracleConfig { degree_bound: 3, ..quick() }).unwrap();
        assert!(!report.nilpotent_found());
    }

    #[test]
    fn box_limit() {
        let p = Arc::new(Presentation::surface(2, 2, 2));
        let weights = induced_weight_box(&p, 2, &[]);
        let cfg = OracleConfig {
            max_weights: 1,
            ..quick()
        };
        assert!(matches!(
            oracle_enumerate(&p, &weights, &cfg),
            Err(ClassifyError::BoxTooLarge(_))
        ));
    }
}
