//! Seeded presentation corpus and the construction soundness sweep run over it.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::classify::{admissible_tuples, base_descriptors, build_lnd, free_variable_lnd, kernel_generators, ClassifyError, LndDescriptor};
use crate::derivation::NilpotencyLimits;
use crate::grading::weight_assignment;
use crate::par::Execution;
use crate::presentation::Presentation;
use crate::scalar::GaussianRational;

#[derive(Debug, Clone, Copy)]
pub struct CorpusShape {
    pub max_r: u32,
    pub max_block_len: u32,
    pub max_exponent: u32,
    pub max_free: u32,
    /// Upper bound on `n + d`, to keep nilpotency checks cheap.
    pub max_generators: u32,
}

impl Default for CorpusShape {
    fn default() -> Self {
        CorpusShape {
            max_r: 4,
            max_block_len: 3,
            max_exponent: 4,
            max_free: 2,
            max_generators: 8,
        }
    }
}

fn exponent(rng: &mut ChaCha8Rng, max: u32) -> u32 {
    // Small exponents dominate so that many instances are non-rigid.
    let roll = rng.gen_range(0..100);
    let e = match roll {
        0..=34 => 1,
        35..=69 => 2,
        70..=84 => 3,
        _ => 4,
    };
    e.min(max)
}

fn random_presentation(rng: &mut ChaCha8Rng, shape: &CorpusShape) -> Presentation {
    loop {
        let kind: u8 = if rng.gen_bool(0.5) { 1 } else { 2 };
        let r = rng.gen_range(2..=shape.max_r);
        let blocks_count = if kind == 1 { r } else { r + 1 };
        let blocks: Vec<Vec<u32>> = (0..blocks_count)
            .map(|_| {
                let len = rng.gen_range(1..=shape.max_block_len);
                (0..len).map(|_| exponent(rng, shape.max_exponent)).collect()
            })
            .collect();
        let d = rng.gen_range(0..=shape.max_free);
        let n: u32 = blocks.iter().map(|b| b.len() as u32).sum();
        if n + d > shape.max_generators {
            continue;
        }
        let refs: Vec<&[u32]> = blocks.iter().map(Vec::as_slice).collect();
        let built = if kind == 1 {
            Presentation::type1(&refs, d)
        } else {
            Presentation::type2(&refs, d)
        };
        if let Ok(p) = built {
            return p;
        }
    }
}

/// Fixed instances followed by `random` seeded ones.
pub fn corpus(seed: u64, random: usize, shape: &CorpusShape) -> Vec<Arc<Presentation>> {
    let t1 = |b: &[&[u32]], d| Presentation::type1(b, d).expect("fixed instance");
    let t2 = |b: &[&[u32]], d| Presentation::type2(b, d).expect("fixed instance");
    let mut out = vec![
        Presentation::surface(2, 2, 2),
        Presentation::surface(2, 2, 3),
        Presentation::surface(2, 2, 4),
        Presentation::surface(1, 2, 3),
        Presentation::surface(1, 2, 4),
        Presentation::surface(2, 3, 4),
        t1(&[&[3], &[1, 2]], 0),
        t1(&[&[2, 3], &[3, 4]], 0),
        t1(&[&[1, 2], &[3]], 1),
        t1(&[&[1], &[1], &[2]], 0),
        t2(&[&[2, 4], &[2], &[2, 2]], 0),
        t2(&[&[2], &[2], &[3], &[1]], 0),
        t2(&[&[1, 2], &[2], &[3]], 1),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    out.extend((0..random).map(|_| random_presentation(&mut rng, shape)));
    out.into_iter().map(Arc::new).collect()
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct SweepReport {
    pub instances: usize,
    pub derivations: usize,
    pub kernel_elements: usize,
    pub needs_normalization: usize,
    pub exact_division_failures: usize,
    pub failures: Vec<String>,
}

impl SweepReport {
    fn merge(&mut self, other: SweepReport) {
        self.instances += other.instances;
        self.derivations += other.derivations;
        self.kernel_elements += other.kernel_elements;
        self.needs_normalization += other.needs_normalization;
        self.exact_division_failures += other.exact_division_failures;
        self.failures.extend(other.failures);
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.exact_division_failures == 0
    }
}

fn check_descriptor(p: &Arc<Presentation>, desc: &LndDescriptor, limits: NilpotencyLimits, out: &mut SweepReport) {
    let fail = |out: &mut SweepReport, why: String| out.failures.push(format!("{}: {desc}: {why}", p.display_name()));
    let d = match build_lnd(p, desc) {
        Ok(d) => d,
        Err(ClassifyError::NeedsNormalization(_)) => {
            out.needs_normalization += 1;
            return;
        }
        Err(e @ ClassifyError::ExactDivisionFailed(_)) => {
            out.exact_division_failures += 1;
            fail(out, e.to_string());
            return;
        }
        Err(e) => return fail(out, e.to_string()),
    };
    out.derivations += 1;
    if let Some(w) = d.well_definedness_witness() {
        fail(out, format!("relation {} maps to {}", w.relation_index, w.image));
    }
    if let Err(e) = weight_assignment(p).derivation_degree(&d) {
        fail(out, format!("no degree: {e}"));
    }
    if !d.nilpotency_check(limits).is_verified() {
        fail(out, "nilpotency not verified".into());
    }
    match kernel_generators(p, desc) {
        Ok(gens) => {
            out.kernel_elements += gens.len();
            if let Some(h) = gens.iter().find(|h| !d.kernel_member(h)) {
                fail(out, format!("kernel element {h} is not annihilated"));
            }
        }
        Err(e) => fail(out, format!("kernel: {e}")),
    }
}

fn sweep_one(p: &Arc<Presentation>, lambdas: &[GaussianRational], limits: NilpotencyLimits) -> SweepReport {
    let mut out = SweepReport {
        instances: 1,
        ..SweepReport::default()
    };
    for t in admissible_tuples(p) {
        match base_descriptors(p, &t, lambdas) {
            Ok(descs) => {
                for desc in &descs {
                    check_descriptor(p, desc, limits, &mut out);
                }
            }
            Err(ClassifyError::NeedsNormalization(_)) => out.needs_normalization += 1,
            Err(e) => out.failures.push(format!("{}: {}: {e}", p.display_name(), t.columns)),
        }
    }
    for k in 1..=p.free_vars() {
        match free_variable_lnd(p, k) {
            Ok(_) => check_descriptor(p, &LndDescriptor::FreeVariable(k), limits, &mut out),
            Err(e) => out.failures.push(format!("{}: S{k}: {e}", p.display_name())),
        }
    }
    out
}

/// Builds and verifies every base derivation of every instance.
pub fn soundness_sweep(
    corpus: &[Arc<Presentation>],
    lambdas: &[GaussianRational],
    limits: NilpotencyLimits,
    execution: Execution,
) -> SweepReport {
    let parts = execution.map(corpus, |p| sweep_one(p, lambdas, limits));
    let mut total = SweepReport::default();
    for part in parts {
        total.merge(part);
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_seeded_and_bounded() {
        let shape = CorpusShape::default();
        let a = corpus(7, 20, &shape);
        let b = corpus(7, 20, &shape);
        let names = |c: &[Arc<Presentation>]| c.iter().map(|p| p.display_name()).collect::<Vec<_>>();
        assert_eq!(names(&a), names(&b));
        for p in &a {
            assert!(p.n() + p.free_vars() <= shape.max_generators, "{}", p.display_name());
            assert!(p.r() <= shape.max_r && p.free_vars() <= shape.max_free);
            assert!(p
                .block_indices()
                .all(|i| p.block(i).len() as u32 <= shape.max_block_len && p.block(i).iter().all(|&l| l <= shape.max_exponent)));
        }
    }
}
