//! Command-line front end. [`run`] does all the work and returns the exit code
//! together with the rendered report, so it can be tested without a process.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::classify::{
    class_report, induced_weight_box, is_rigid, is_semirigid, makar_limanov, oracle_enumerate, ClassifyError,
    LndClassReport, MlInvariant, OracleConfig, ReportConfig,
};
use crate::derivation::{Derivation, Nilpotency, NilpotencyLimits};
use crate::grading::{weight_assignment, WeightVector};
use crate::par::Execution;
use crate::presentation::Presentation;
use crate::scalar::{gq_parse, GaussianRational};
use crate::toric::{demazure_roots, root_derivation_uvz, toric_derivation, Cone2D};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_VERIFICATION: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Analyze,
    Lnds,
    Kernel,
    Verify { derivation: PathBuf },
    Oracle { weights: Vec<WeightVector> },
    Demazure { rays: [[i64; 2]; 2], ray: u8, materialize: Vec<i64> },
    Normalize { triple: Option<[u32; 3]> },
}

#[derive(Debug, Clone)]
pub struct Caps {
    pub nilpotency_cap: u32,
    pub degree_bound: u32,
    pub lambdas: Vec<GaussianRational>,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            nilpotency_cap: NilpotencyLimits::default().cap,
            degree_bound: OracleConfig::default().degree_bound,
            lambdas: ReportConfig::default_lambdas(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    /// Presentation file; unused by `demazure`.
    pub input: Option<PathBuf>,
    pub format: Format,
    pub caps: Caps,
    pub execution: Execution,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutcome {
    pub code: i32,
    pub report: String,
}

impl RunOutcome {
    fn input_error(msg: impl std::fmt::Display) -> RunOutcome {
        RunOutcome {
            code: EXIT_INPUT,
            report: format!("error: {msg}\n"),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "trilnd", version, about = "Locally nilpotent derivations of trinomial algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Maximal number of derivation applications per generator.
    #[arg(long, default_value_t = 64, global = true)]
    pub cap: u32,
    /// Oracle bound on the total degree of image monomials.
    #[arg(long, default_value_t = 4, global = true)]
    pub degree_bound: u32,
    /// Comma-separated parameter samples, e.g. `0,1,-1,i,1+i`.
    #[arg(long, global = true)]
    pub lambdas: Option<String>,
    /// Disable internal parallelism.
    #[arg(long, global = true)]
    pub sequential: bool,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Dimension, factoriality, grading, rigidity, semirigidity and ML invariant.
    Analyze { input: PathBuf },
    /// Equivalence classes of homogeneous LNDs with explicit formulas.
    Lnds { input: PathBuf },
    /// Kernel generators of every emitted LND.
    Kernel { input: PathBuf },
    /// Check a derivation file against a presentation.
    Verify { input: PathBuf, derivation: PathBuf },
    /// Brute-force search for homogeneous LNDs of bounded degree.
    Oracle {
        input: PathBuf,
        /// Weight to examine, comma separated; repeatable. Defaults to the induced box.
        #[arg(long = "weight", allow_hyphen_values = true)]
        weights: Vec<String>,
    },
    /// Demazure roots of a two-dimensional cone.
    Demazure {
        /// Ray generators as `x1,y1:x2,y2`.
        #[arg(long, allow_hyphen_values = true)]
        rays: String,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        ray: u8,
        /// Root parameter to write out explicitly; repeatable.
        #[arg(long)]
        materialize: Vec<i64>,
    },
    /// Rescale a three-block relation to all-ones coefficients.
    Normalize {
        input: PathBuf,
        /// Blocks `p,q,s` of the relation; defaults to the first three.
        #[arg(long)]
        triple: Option<String>,
    },
}

fn parse_ints(text: &str) -> Result<Vec<i64>, String> {
    text.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|e| format!("bad integer `{}`: {e}", t.trim())))
        .collect()
}

pub fn parse_rays(text: &str) -> Result<[[i64; 2]; 2], String> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 2 {
        return Err(format!("rays must look like x1,y1:x2,y2, got `{text}`"));
    }
    let mut out = [[0; 2]; 2];
    for (slot, part) in out.iter_mut().zip(parts) {
        match parse_ints(part)?.as_slice() {
            [x, y] => *slot = [*x, *y],
            _ => return Err(format!("ray `{part}` needs two coordinates")),
        }
    }
    Ok(out)
}

pub fn parse_lambdas(text: &str) -> Result<Vec<GaussianRational>, String> {
    let mut out: Vec<GaussianRational> = Vec::new();
    for t in text.split(',') {
        let l = gq_parse(t.trim()).map_err(|e| format!("bad λ sample `{}`: {e}", t.trim()))?;
        if !out.contains(&l) {
            out.push(l);
        }
    }
    if out.is_empty() {
        return Err("the λ sample set is empty".into());
    }
    Ok(out)
}

impl Cli {
    pub fn into_config(self) -> Result<RunConfig, String> {
        if self.cap == 0 {
            return Err("caps must be strictly positive: --cap is 0".into());
        }
        if self.degree_bound == 0 {
            return Err("caps must be strictly positive: --degree-bound is 0".into());
        }
        let lambdas = match &self.lambdas {
            Some(t) => parse_lambdas(t)?,
            None => ReportConfig::default_lambdas(),
        };
        let (command, input) = match self.command {
            CliCommand::Analyze { input } => (Command::Analyze, Some(input)),
            CliCommand::Lnds { input } => (Command::Lnds, Some(input)),
            CliCommand::Kernel { input } => (Command::Kernel, Some(input)),
            CliCommand::Verify { input, derivation } => (Command::Verify { derivation }, Some(input)),
            CliCommand::Oracle { input, weights } => {
                let weights = weights
                    .iter()
                    .map(|w| parse_ints(w).map(WeightVector))
                    .collect::<Result<_, _>>()?;
                (Command::Oracle { weights }, Some(input))
            }
            CliCommand::Demazure { rays, ray, materialize } => (
                Command::Demazure {
                    rays: parse_rays(&rays)?,
                    ray,
                    materialize,
                },
                None,
            ),
            CliCommand::Normalize { input, triple } => {
                let triple = match triple {
                    None => None,
                    Some(t) => match parse_ints(&t)?.as_slice() {
                        [p, q, s] if *p >= 0 && *q >= 0 && *s >= 0 => Some([*p as u32, *q as u32, *s as u32]),
                        _ => return Err(format!("--triple needs three block indices, got `{t}`")),
                    },
                };
                (Command::Normalize { triple }, Some(input))
            }
        };
        Ok(RunConfig {
            command,
            input,
            format: self.format,
            caps: Caps {
                nilpotency_cap: self.cap,
                degree_bound: self.degree_bound,
                lambdas,
            },
            execution: if self.sequential {
                Execution::Sequential
            } else {
                Execution::Parallel
            },
        })
    }
}

fn load_presentation(cfg: &RunConfig) -> Result<Arc<Presentation>, RunOutcome> {
    let path = cfg
        .input
        .as_ref()
        .ok_or_else(|| RunOutcome::input_error("no presentation file given"))?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| RunOutcome::input_error(format!("cannot read {}: {e}", path.display())))?;
    Presentation::from_json(&text)
        .map(Arc::new)
        .map_err(|e| RunOutcome::input_error(format!("{}: {e}", path.display())))
}

fn limits(cfg: &RunConfig) -> NilpotencyLimits {
    NilpotencyLimits {
        cap: cfg.caps.nilpotency_cap,
        ..NilpotencyLimits::default()
    }
}

fn report_config(cfg: &RunConfig, verify: bool) -> ReportConfig {
    ReportConfig {
        lambdas: cfg.caps.lambdas.clone(),
        verify,
        limits: limits(cfg),
        execution: cfg.execution,
    }
}

fn json_string<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

pub fn run(cfg: &RunConfig) -> RunOutcome {
    let result = match &cfg.command {
        Command::Demazure { rays, ray, materialize } => demazure(cfg, *rays, *ray, materialize),
        command => match load_presentation(cfg) {
            Err(out) => Err(out),
            Ok(p) => match command {
                Command::Analyze => Ok(analyze(cfg, &p)),
                Command::Lnds => Ok(lnds(cfg, &p)),
                Command::Kernel => Ok(kernel(cfg, &p)),
                Command::Verify { derivation } => verify(cfg, &p, derivation),
                Command::Oracle { weights } => oracle(cfg, &p, weights),
                Command::Normalize { triple } => normalize(cfg, &p, *triple),
                Command::Demazure { .. } => unreachable!(),
            },
        },
    };
    result.unwrap_or_else(|e| e)
}

fn ok(report: String) -> RunOutcome {
    RunOutcome { code: EXIT_OK, report }
}

fn analyze(cfg: &RunConfig, p: &Arc<Presentation>) -> RunOutcome {
    let grading = weight_assignment(p);
    let (rigid, witness) = is_rigid(p);
    let semi = is_semirigid(p);
    let factorial = p.is_factorial();
    let ml = makar_limanov(p).unwrap_or_else(|_| MlInvariant::NotApplicable("defined for Type 1 only".into()));
    let table: Vec<(String, String)> = p
        .generators()
        .into_iter()
        .map(|v| {
            let w = grading.weight(v).expect("every generator is graded");
            (v.to_string(), grading.describe(w))
        })
        .collect();
    let report = match cfg.format {
        Format::Json => json_string(&json!({
            "presentation": p.display_name(),
            "dimension": p.dimension(),
            "factorial": match &factorial {
                Ok((v, why)) => json!({"value": v, "reason": why}),
                Err(e) => json!({"value": null, "reason": e.to_string()}),
            },
            "grading": {
                "basis": grading.basis,
                "weights": grading.weights,
            },
            "relations": p.relations().iter().map(|r| r.to_string()).collect::<Vec<_>>(),
            "rigid": rigid,
            "rigidity_witness": witness.map(|w| w.to_string()),
            "semirigid": semi,
            "ml_invariant": ml,
        })),
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "presentation: {}", p.display_name());
            for (k, r) in p.relations().iter().enumerate() {
                let _ = writeln!(s, "relation {k}: {r} = 0");
            }
            let _ = writeln!(s, "dimension: {}", p.dimension());
            let _ = match &factorial {
                Ok((v, why)) => writeln!(s, "factorial: {v} ({why})"),
                Err(e) => writeln!(s, "factorial: unknown ({e})"),
            };
            let _ = writeln!(s, "grading basis: {}", grading.basis.join(", "));
            for (v, w) in &table {
                let _ = writeln!(s, "  deg {v} = {w}");
            }
            let _ = match &witness {
                Some(w) => writeln!(s, "rigid: {rigid} (witness: {w})"),
                None => writeln!(s, "rigid: {rigid}"),
            };
            let _ = writeln!(s, "semirigid: {} ({})", semi.semirigid, semi.reason);
            let _ = match &ml {
                MlInvariant::Generators(g) => {
                    let names: Vec<String> = g.iter().map(|v| v.to_string()).collect();
                    writeln!(s, "ML invariant: k[{}]", names.join(", "))
                }
                MlInvariant::NotApplicable(why) => writeln!(s, "ML invariant: not applicable ({why})"),
                MlInvariant::NotComputed => writeln!(s, "ML invariant: not computed"),
            };
            s
        }
    };
    ok(report)
}

/// Exit code for a verified report: 2 on a failed check, 3 on a cap hit.
fn report_code(report: &LndClassReport) -> i32 {
    let mut code = EXIT_OK;
    for f in report.formulas() {
        if let Some(v) = &f.verdict {
            if !v.well_defined || !v.kernel_verified {
                return EXIT_VERIFICATION;
            }
            if !v.nilpotency.is_verified() {
                code = EXIT_INCONCLUSIVE;
            }
        }
    }
    code
}

fn lnds(cfg: &RunConfig, p: &Arc<Presentation>) -> RunOutcome {
    let report = class_report(p, &report_config(cfg, true));
    RunOutcome {
        code: report_code(&report),
        report: match cfg.format {
            Format::Json => {
                let mut s = report.to_json();
                s.push('\n');
                s
            }
            Format::Text => report.to_text(),
        },
    }
}

fn kernel(cfg: &RunConfig, p: &Arc<Presentation>) -> RunOutcome {
    let report = class_report(p, &report_config(cfg, true));
    let rows: Vec<_> = report
        .formulas()
        .map(|f| {
            json!({
                "name": f.name,
                "kernel": f.kernel,
                "verified": f.verdict.as_ref().map(|v| v.kernel_verified),
            })
        })
        .collect();
    let text = match cfg.format {
        Format::Json => json_string(&json!({ "presentation": report.presentation, "descriptors": rows })),
        Format::Text => {
            let mut s = format!("presentation: {}\n", report.presentation);
            for f in report.formulas() {
                let checked = f.verdict.as_ref().is_some_and(|v| v.kernel_verified);
                let _ = writeln!(s, "{}: k[{}] (verified: {checked})", f.name, f.kernel.join(", "));
            }
            s
        }
    };
    let code = if report.formulas().all(|f| f.verdict.as_ref().is_some_and(|v| v.kernel_verified)) {
        EXIT_OK
    } else {
        EXIT_VERIFICATION
    };
    RunOutcome { code, report: text }
}

fn verify(cfg: &RunConfig, p: &Arc<Presentation>, path: &PathBuf) -> Result<RunOutcome, RunOutcome> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| RunOutcome::input_error(format!("cannot read {}: {e}", path.display())))?;
    let d = Derivation::parse(p.clone(), &text)
        .map_err(|e| RunOutcome::input_error(format!("{}: {e}", path.display())))?;
    let witness = d.well_definedness_witness();
    let grading = weight_assignment(p);
    let degree = grading.derivation_degree(&d);
    let nilpotency = witness.is_none().then(|| d.nilpotency_check(limits(cfg)));
    let code = match (&witness, &nilpotency) {
        (Some(_), _) => EXIT_VERIFICATION,
        (None, Some(Nilpotency::Inconclusive { .. })) => EXIT_INCONCLUSIVE,
        _ => EXIT_OK,
    };
    let report = match cfg.format {
        Format::Json => json_string(&json!({
            "presentation": p.display_name(),
            "derivation": d,
            "well_defined": witness.is_none(),
            "witness": witness,
            "homogeneous": degree.is_ok(),
            "degree": degree.as_ref().ok().map(|w| w.0.clone()),
            "degree_error": degree.as_ref().err().map(|e| e.to_string()),
            "nilpotency": nilpotency,
        })),
        Format::Text => {
            let mut s = format!("presentation: {}\nderivation: {d}\n", p.display_name());
            let _ = match &witness {
                None => writeln!(s, "well-defined: true"),
                Some(w) => writeln!(
                    s,
                    "well-defined: false (relation {} = {} maps to {})",
                    w.relation_index, w.relation, w.image
                ),
            };
            let _ = match &degree {
                Ok(w) => writeln!(s, "homogeneous: true, degree {w} = {}", grading.describe(w)),
                Err(e) => writeln!(s, "homogeneous: false ({e})"),
            };
            let _ = match &nilpotency {
                None => writeln!(s, "nilpotency: skipped"),
                Some(Nilpotency::Verified { max_index, .. }) => {
                    writeln!(s, "nilpotency: verified, δ^{max_index} kills every generator")
                }
                Some(Nilpotency::Inconclusive { reason, .. }) => writeln!(s, "nilpotency: inconclusive ({reason})"),
            };
            s
        }
    };
    Ok(RunOutcome { code, report })
}

fn oracle(cfg: &RunConfig, p: &Arc<Presentation>, weights: &[WeightVector]) -> Result<RunOutcome, RunOutcome> {
    let rank = weight_assignment(p).rank();
    if let Some(w) = weights.iter().find(|w| w.0.len() != rank) {
        return Err(RunOutcome::input_error(format!(
            "weight {w} has {} entries, the grading has rank {rank}",
            w.0.len()
        )));
    }
    let weights = if weights.is_empty() {
        let emitted = class_report(p, &report_config(cfg, false));
        let degrees: Vec<WeightVector> = emitted.formulas().filter_map(|f| f.degree.clone()).map(WeightVector).collect();
        induced_weight_box(p, cfg.caps.degree_bound, &degrees)
    } else {
        weights.to_vec()
    };
    let ocfg = OracleConfig {
        degree_bound: cfg.caps.degree_bound,
        execution: cfg.execution,
        ..OracleConfig::default()
    };
    let report = oracle_enumerate(p, &weights, &ocfg).map_err(|e| match e {
        ClassifyError::BoxTooLarge(why) => RunOutcome::input_error(format!("oracle limits exceeded: {why}")),
        other => RunOutcome::input_error(other),
    })?;
    let (rigid, _) = is_rigid(p);
    let text = match cfg.format {
        Format::Json => json_string(&json!({
            "presentation": p.display_name(),
            "degree_bound": report.degree_bound,
            "weights_examined": report.weights_examined,
            "nilpotent_found": report.nilpotent_found(),
            "rigid": rigid,
            "solutions": report.solutions.iter().map(|s| json!({
                "weight": s.weight.0,
                "dimension": s.dimension,
                "unknowns": s.unknowns,
                "sampled": s.sampled,
                "inconclusive": s.inconclusive,
                "witness": s.witness,
            })).collect::<Vec<_>>(),
        })),
        Format::Text => {
            let mut s = format!(
                "presentation: {}\ndegree bound: {}\nweights examined: {}\n",
                p.display_name(),
                report.degree_bound,
                report.weights_examined
            );
            for sol in &report.solutions {
                let _ = writeln!(
                    s,
                    "weight {}: dimension {} ({} unknowns, {} sampled)",
                    sol.weight, sol.dimension, sol.unknowns, sol.sampled
                );
                if let Some(w) = &sol.witness {
                    let _ = writeln!(s, "  nilpotent: {w}");
                }
            }
            let _ = writeln!(s, "nilpotent solution found: {} (rigid: {rigid})", report.nilpotent_found());
            s
        }
    };
    Ok(ok(text))
}

/// `γ` when the cone is the standard `cone((0,1),(γ,-1))`.
fn quadric_gamma(rays: [[i64; 2]; 2]) -> Option<u32> {
    match rays {
        [[0, 1], [g, -1]] if g >= 1 => u32::try_from(g).ok(),
        _ => None,
    }
}

fn demazure(cfg: &RunConfig, rays: [[i64; 2]; 2], ray: u8, materialize: &[i64]) -> Result<RunOutcome, RunOutcome> {
    let cone = Cone2D::new(rays[0], rays[1]).map_err(RunOutcome::input_error)?;
    let normal = cone.normal(ray).map_err(RunOutcome::input_error)?;
    let family = demazure_roots(&cone, ray).map_err(RunOutcome::input_error)?;
    let gamma = quadric_gamma(rays);
    let mut explicit = Vec::new();
    for &p in materialize {
        let e = family.at(p).map_err(RunOutcome::input_error)?;
        let mut entry = json!({
            "p": p,
            "root": e,
            "formula": format!("χ^m ↦ <({},{}), m> χ^(m + ({},{}))", normal[0], normal[1], e[0], e[1]),
        });
        if let Some(g) = gamma {
            let uvz = root_derivation_uvz(g, ray, p).map_err(RunOutcome::input_error)?;
            let d = toric_derivation(g, ray, p).map_err(RunOutcome::input_error)?;
            entry["uvz"] = json!(uvz.to_string());
            entry["surface"] = json!(format!("x^2 + y^2 + z^{g}"));
            entry["derivation"] = json!(d);
        }
        explicit.push(entry);
    }
    let report = match cfg.format {
        Format::Json => json_string(&json!({
            "rays": rays,
            "ray": ray,
            "normal": normal,
            "roots": family.to_string(),
            "base": family.base,
            "direction": family.direction,
            "p_min": family.p_min,
            "materialized": explicit,
        })),
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "cone: ({},{}), ({},{})",
                rays[0][0], rays[0][1], rays[1][0], rays[1][1]
            );
            let _ = writeln!(s, "ray {ray}: normal ({},{})", normal[0], normal[1]);
            let _ = writeln!(s, "roots: {family}");
            for e in &explicit {
                let _ = writeln!(s, "p = {}: root {}", e["p"], e["root"]);
                let _ = writeln!(s, "  {}", e["formula"].as_str().unwrap_or_default());
                if let Some(uvz) = e.get("uvz").and_then(|v| v.as_str()) {
                    let _ = writeln!(s, "  u = ix - y, v = ix + y: {uvz}");
                }
                if let Some(d) = e.get("derivation").and_then(|v| v.as_object()) {
                    let _ = writeln!(s, "  on {}:", e["surface"].as_str().unwrap_or_default());
                    for (v, img) in d {
                        let _ = writeln!(s, "    {v} = {}", img.as_str().unwrap_or_default());
                    }
                }
            }
            s
        }
    };
    Ok(ok(report))
}

fn normalize(cfg: &RunConfig, p: &Arc<Presentation>, triple: Option<[u32; 3]>) -> Result<RunOutcome, RunOutcome> {
    let indices: Vec<u32> = p.block_indices().collect();
    let [a, b, c] = match triple {
        Some(t) => t,
        None if indices.len() >= 3 => [indices[0], indices[1], indices[2]],
        None => return Err(RunOutcome::input_error("the presentation has fewer than three blocks")),
    };
    if [a, b, c].iter().any(|i| !indices.contains(i)) || a == b || b == c || a == c {
        return Err(RunOutcome::input_error(format!(
            "triple ({a},{b},{c}) must name three distinct blocks among {indices:?}"
        )));
    }
    let result = p.normalization(a, b, c);
    let report = match (&result, cfg.format) {
        (Ok(n), Format::Json) => json_string(&json!({
            "triple": [a, b, c],
            "normalizable": true,
            "scalings": n.scalings.iter().map(|(v, t)| (v.to_string(), t.to_string())).collect::<std::collections::BTreeMap<_, _>>(),
            "relation": n.relation.to_string(),
        })),
        (Err(o), Format::Json) => json_string(&json!({
            "triple": [a, b, c],
            "normalizable": false,
            "obstruction": o.to_string(),
        })),
        (Ok(n), Format::Text) => {
            let mut s = format!("blocks ({a},{b},{c}): normalizable\n");
            if n.scalings.is_empty() {
                s.push_str("  coefficients already equal\n");
            }
            for (v, t) in &n.scalings {
                let _ = writeln!(s, "  {v} -> ({t})*{v}");
            }
            let _ = writeln!(s, "relation: {} = 0", n.relation);
            s
        }
        (Err(o), Format::Text) => format!("blocks ({a},{b},{c}): not normalizable over Q(i)\n  {o}\n"),
    };
    Ok(ok(report))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cli(args: &[&str]) -> RunConfig {
        let mut full = vec!["trilnd"];
        full.extend_from_slice(args);
        Cli::try_parse_from(full).unwrap().into_config().unwrap()
    }

    #[test]
    fn parses_rays_and_lambdas() {
        assert_eq!(parse_rays("0,1:3,-1").unwrap(), [[0, 1], [3, -1]]);
        assert!(parse_rays("0,1").is_err());
        assert_eq!(parse_lambdas("0, 1, 1, i").unwrap().len(), 3);
        assert!(parse_lambdas("1,x").is_err());
    }

    #[test]
    fn zero_caps_rejected() {
        let c = Cli::try_parse_from(["trilnd", "--cap", "0", "analyze", "x.json"]).unwrap();
        assert!(c.into_config().unwrap_err().contains("--cap"));
    }

    #[test]
    fn demazure_quadric() {
        let out = run(&cli(&["demazure", "--rays", "0,1:3,-1", "--ray", "2", "--materialize", "1"]));
        assert_eq!(out.code, EXIT_OK);
        assert!(out.report.contains("{(3p-1, -p) : p >= 1}"), "{}", out.report);
        assert!(out.report.contains("T0_1 ="), "{}", out.report);
    }

    #[test]
    fn missing_input_is_an_input_error() {
        let out = run(&cli(&["analyze", "/nonexistent/p.json"]));
        assert_eq!(out.code, EXIT_INPUT);
    }
}
