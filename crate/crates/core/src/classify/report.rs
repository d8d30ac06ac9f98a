use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use super::construct::{build_lnd, lambda_family_text};
use super::kernel::kernel_generators;
use super::rigidity::{is_rigid, is_semirigid, makar_limanov, MlInvariant, Semirigidity};
use super::tuples::{admissible_tuples, base_descriptors, class_count};
use super::{LndDescriptor, TupleC};
use crate::derivation::{Derivation, Nilpotency, NilpotencyLimits};
use crate::grading::{weight_assignment, Grading};
use crate::par::Execution;
use crate::presentation::{AlgebraType, Presentation};
use crate::scalar::GaussianRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ClassCount {
    ExactlyTwo,
    InfiniteFamily,
    SingleFamily,
}

impl ClassCount {
    /// Number of equivalence classes, `None` for an infinite family.
    pub fn finite(self) -> Option<u64> {
        match self {
            ClassCount::ExactlyTwo => Some(2),
            ClassCount::SingleFamily => Some(1),
            ClassCount::InfiniteFamily => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ReportConfig {
    /// Sample values for the λ-families of cases (b) and (d).
    pub lambdas: Vec<GaussianRational>,
    /// Re-verify every emitted formula (well-definedness, nilpotency, kernel membership).
    pub verify: bool,
    pub limits: NilpotencyLimits,
    pub execution: Execution,
}

impl ReportConfig {
    pub fn default_lambdas() -> Vec<GaussianRational> {
        let g = GaussianRational::from_int;
        vec![
            g(0),
            g(1),
            g(-1),
            GaussianRational::i(),
            -GaussianRational::i(),
            g(2),
            GaussianRational::gaussian(1, 1),
        ]
    }
}

impl Default for ReportConfig {
    fn default() -> Self {
        ReportConfig {
            lambdas: ReportConfig::default_lambdas(),
            verify: true,
            limits: NilpotencyLimits::default(),
            execution: Execution::default(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FormulaVerdict {
    pub well_defined: bool,
    pub nilpotency: Nilpotency,
    pub kernel_verified: bool,
}

impl FormulaVerdict {
    pub fn passed(&self) -> bool {
        self.well_defined && self.nilpotency.is_verified() && self.kernel_verified
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FormulaEntry {
    pub name: String,
    #[serde(skip)]
    pub descriptor: LndDescriptor,
    pub images: Derivation,
    pub degree: Option<Vec<i64>>,
    pub kernel: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<FormulaVerdict>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassEntry {
    /// Column tuple, or the free variable for a free-variable class.
    pub tuple: String,
    pub case: String,
    pub count: ClassCount,
    pub formulas: Vec<FormulaEntry>,
    pub kernel: Vec<String>,
    /// The sampled λ-family with λ kept symbolic.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<String>,
    #[serde(skip)]
    pub source: Option<TupleC>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Factoriality {
    pub value: Option<bool>,
    pub reason: String,
}

/// Total number of equivalence classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassTotal {
    Finite(u64),
    Infinite,
}

impl Serialize for ClassTotal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ClassTotal::Finite(n) => s.serialize_u64(*n),
            ClassTotal::Infinite => s.serialize_str("infinite"),
        }
    }
}

impl std::fmt::Display for ClassTotal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ClassTotal::Finite(n) => write!(f, "{n}"),
            ClassTotal::Infinite => write!(f, "infinite"),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LndClassReport {
    pub rigid: bool,
    pub semirigid: Semirigidity,
    pub dimension: i64,
    pub factorial: Factoriality,
    pub classes: Vec<ClassEntry>,
    pub ml_invariant: MlInvariant,
    pub presentation: String,
    pub rigidity_witness: Option<String>,
    pub class_total: ClassTotal,
}

impl LndClassReport {
    /// Every formula across all classes.
    pub fn formulas(&self) -> impl Iterator<Item = &FormulaEntry> {
        self.classes.iter().flat_map(|c| c.formulas.iter())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "presentation: {}", self.presentation);
        let _ = writeln!(s, "dimension: {}", self.dimension);
        let _ = writeln!(
            s,
            "factorial: {} ({})",
            self.factorial.value.map_or("unknown".into(), |v| v.to_string()),
            self.factorial.reason
        );
        let _ = match &self.rigidity_witness {
            Some(w) => writeln!(s, "rigid: {} (witness: {w})", self.rigid),
            None => writeln!(s, "rigid: {}", self.rigid),
        };
        let _ = writeln!(s, "semirigid: {} ({})", self.semirigid.semirigid, self.semirigid.reason);
        let _ = match &self.ml_invariant {
            MlInvariant::Generators(g) => {
                let names: Vec<String> = g.iter().map(|v| v.to_string()).collect();
                writeln!(s, "ML invariant: k[{}]", names.join(", "))
            }
            MlInvariant::NotApplicable(why) => writeln!(s, "ML invariant: not applicable ({why})"),
            MlInvariant::NotComputed => writeln!(s, "ML invariant: not computed"),
        };
        let _ = writeln!(s, "equivalence classes: {}", self.class_total);
        for class in &self.classes {
            let _ = writeln!(s, "\n[{} {}] {:?}", class.case, class.tuple, class.count);
            if let Some(d) = &class.diagnostic {
                let _ = writeln!(s, "  diagnostic: {d}");
            }
            for f in &class.formulas {
                let _ = writeln!(s, "  {}", f.name);
                for line in f.images.to_file_string().lines() {
                    let _ = writeln!(s, "    {line}");
                }
                if let Some(deg) = &f.degree {
                    let _ = writeln!(s, "    degree: {deg:?}");
                }
                let _ = writeln!(s, "    kernel: k[{}]", f.kernel.join(", "));
                if let Some(v) = &f.verdict {
                    let nil = match &v.nilpotency {
                        Nilpotency::Verified { max_index, .. } => format!("nilpotent (index {max_index})"),
                        Nilpotency::Inconclusive { reason, .. } => format!("inconclusive: {reason}"),
                    };
                    let _ = writeln!(
                        s,
                        "    verified: well-defined {}, {nil}, kernel {}",
                        v.well_defined, v.kernel_verified
                    );
                }
            }
            if let Some(fam) = &class.family {
                let _ = writeln!(s, "  family:");
                for line in fam.lines() {
                    let _ = writeln!(s, "    {line}");
                }
            }
        }
        s
    }
}

fn formula_entry(
    p: &Arc<Presentation>,
    grading: &Grading,
    desc: &LndDescriptor,
    cfg: &ReportConfig,
) -> Result<FormulaEntry, String> {
    let d = build_lnd(p, desc).map_err(|e| e.to_string())?;
    let kernel = kernel_generators(p, desc).map_err(|e| e.to_string())?;
    let degree = grading.derivation_degree(&d).ok().map(|w| w.0);
    let verdict = cfg.verify.then(|| FormulaVerdict {
        well_defined: d.is_well_defined(),
        nilpotency: d.nilpotency_check(cfg.limits),
        kernel_verified: kernel.iter().all(|h| d.kernel_member(h)),
    });
    Ok(FormulaEntry {
        name: desc.name(),
        descriptor: desc.clone(),
        images: d,
        degree,
        kernel: kernel.iter().map(|h| h.to_string()).collect(),
        verdict,
    })
}

fn tuple_entry(p: &Arc<Presentation>, grading: &Grading, t: &TupleC, cfg: &ReportConfig) -> ClassEntry {
    let count = class_count(p, t);
    let mut entry = ClassEntry {
        tuple: t.columns.to_string(),
        case: t.case_name(),
        count,
        formulas: Vec::new(),
        kernel: Vec::new(),
        family: None,
        diagnostic: None,
        source: Some(t.clone()),
    };
    let descriptors = match base_descriptors(p, t, &cfg.lambdas) {
        Ok(d) => d,
        Err(e) => {
            entry.diagnostic = Some(e.to_string());
            return entry;
        }
    };
    entry.family = descriptors
        .iter()
        .find(|d| matches!(d, LndDescriptor::T2b { .. } | LndDescriptor::T2d { .. }))
        .and_then(|d| lambda_family_text(p, d));
    let mut problems = Vec::new();
    for desc in &descriptors {
        match formula_entry(p, grading, desc, cfg) {
            Ok(f) => entry.formulas.push(f),
            Err(e) => problems.push(format!("{desc}: {e}")),
        }
    }
    if !problems.is_empty() {
        entry.diagnostic = Some(format!("construction failed on an admissible tuple: {}", problems.join("; ")));
    }
    if let Some(first) = entry.formulas.first() {
        entry.kernel = first.kernel.clone();
    }
    entry
}

fn free_entry(p: &Arc<Presentation>, grading: &Grading, k: u32, cfg: &ReportConfig) -> ClassEntry {
    let desc = LndDescriptor::FreeVariable(k);
    let (formulas, diagnostic) = match formula_entry(p, grading, &desc, cfg) {
        Ok(f) => (vec![f], None),
        Err(e) => (Vec::new(), Some(e)),
    };
    ClassEntry {
        tuple: format!("S{k}"),
        case: "FreeVariable".into(),
        count: ClassCount::SingleFamily,
        kernel: formulas.first().map(|f| f.kernel.clone()).unwrap_or_default(),
        formulas,
        family: None,
        diagnostic,
        source: None,
    }
}

/// Rigidity, semirigidity, ML invariant and the per-tuple classes with explicit formulas.
pub fn class_report(p: &Arc<Presentation>, cfg: &ReportConfig) -> LndClassReport {
    let grading = weight_assignment(p);
    let tuples = admissible_tuples(p);
    let mut classes = cfg.execution.map(&tuples, |t| tuple_entry(p, &grading, t, cfg));
    let free: Vec<u32> = (1..=p.free_vars()).collect();
    classes.extend(cfg.execution.map(&free, |&k| free_entry(p, &grading, k, cfg)));
    let (rigid, witness) = is_rigid(p);
    let factorial = match p.is_factorial() {
        Ok((value, reason)) => Factoriality {
            value: Some(value),
            reason,
        },
        Err(e) => Factoriality {
            value: None,
            reason: e.to_string(),
        },
    };
    let ml_invariant = match p.kind() {
        AlgebraType::Type1 => makar_limanov(p).unwrap_or(MlInvariant::NotComputed),
        AlgebraType::Type2 => MlInvariant::NotApplicable("defined for Type 1 only".into()),
    };
    let class_total = classes
        .iter()
        .try_fold(0u64, |acc, c| c.count.finite().map(|n| acc + n))
        .map_or(ClassTotal::Infinite, ClassTotal::Finite);
    LndClassReport {
        rigid,
        semirigid: is_semirigid(p),
        dimension: p.dimension(),
        factorial,
        classes,
        ml_invariant,
        presentation: p.display_name(),
        rigidity_witness: witness.map(|w| w.to_string()),
        class_total,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    #[test]
    fn quartic_surface_has_two_classes() {
        let p = Arc::new(Presentation::surface(2, 2, 4));
        let r = class_report(&p, &ReportConfig::default());
        assert!(!r.rigid);
        assert_eq!(r.class_total, ClassTotal::Finite(2));
        assert_eq!(r.classes.len(), 1);
        assert_eq!(r.classes[0].formulas.len(), 2);
        assert!(r.formulas().all(|f| f.verdict.as_ref().unwrap().passed()));
        let kernels: Vec<_> = r.formulas().map(|f| f.kernel.last().cloned().unwrap()).collect();
        assert_ne!(kernels[0], kernels[1]);
    }

    #[test]
    fn quadric_is_infinite_with_symbolic_family() {
        let p = Arc::new(Presentation::surface(2, 2, 2));
        let r = class_report(&p, &ReportConfig::default());
        assert_eq!(r.class_total, ClassTotal::Infinite);
        assert!(r.classes[0].family.as_deref().unwrap().contains('λ'));
        assert!(r.formulas().all(|f| f.verdict.as_ref().unwrap().passed()));
    }

    #[test]
    fn rigid_report_is_empty() {
        let p = Arc::new(Presentation::surface(2, 3, 7));
        let r = class_report(&p, &ReportConfig::default());
        assert!(r.rigid);
        assert!(r.classes.is_empty());
        assert_eq!(r.class_total, ClassTotal::Finite(0));
    }

    #[test]
    fn json_is_deterministic_and_formulas_reparse() {
        let p = Arc::new(Presentation::type1(&[&[3], &[1, 2]], 1).unwrap());
        let a = class_report(&p, &ReportConfig::default());
        let b = class_report(
            &p,
            &ReportConfig {
                execution: Execution::Sequential,
                ..ReportConfig::default()
            },
        );
        assert_eq!(a.to_json(), b.to_json());
        for f in a.formulas() {
            let back = Derivation::parse(p.clone(), &f.images.to_file_string()).unwrap();
            assert_eq!(back, f.images);
        }
        assert_eq!(a.classes.last().unwrap().tuple, "S1");
        let _ = parse_poly(&a.classes[0].kernel[0]).unwrap();
    }
}
