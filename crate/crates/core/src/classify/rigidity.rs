use serde::Serialize;

use super::tuples::admissible_tuples;
use super::{ClassifyError, TupleC};
use crate::poly::Var;
use crate::presentation::{AlgebraType, Presentation};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum RigidityWitness {
    FreeVariable(Var),
    Tuple(TupleC),
}

impl std::fmt::Display for RigidityWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RigidityWitness::FreeVariable(v) => write!(f, "free variable {v}"),
            RigidityWitness::Tuple(t) => write!(f, "tuple {} ({})", t.columns, t.case_name()),
        }
    }
}

/// `(rigid, witness)`; the witness is a free variable or an admissible tuple.
pub fn is_rigid(p: &Presentation) -> (bool, Option<RigidityWitness>) {
    if p.free_vars() > 0 {
        return (false, Some(RigidityWitness::FreeVariable(Var::S(1))));
    }
    match admissible_tuples(p).into_iter().next() {
        Some(t) => (false, Some(RigidityWitness::Tuple(t))),
        None => (true, None),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Semirigidity {
    pub semirigid: bool,
    /// `a`, `b` or `c` when semirigid.
    pub clause: Option<char>,
    pub reason: String,
}

fn no_tuples(p: &Presentation) -> bool {
    admissible_tuples(p).is_empty()
}

pub fn is_semirigid(p: &Presentation) -> Semirigidity {
    let yes = |clause, reason: &str| Semirigidity {
        semirigid: true,
        clause: Some(clause),
        reason: reason.into(),
    };
    let no = |reason: String| Semirigidity {
        semirigid: false,
        clause: None,
        reason,
    };
    let d = p.free_vars();
    if d >= 2 {
        return no(format!("d = {d} >= 2: ∂/∂S1 and ∂/∂S2 have different kernels"));
    }
    if d == 0 && no_tuples(p) {
        return yes('a', "rigid");
    }
    if d == 1 {
        return if no_tuples(p) {
            yes('b', "d = 1 and the algebra without S1 is rigid")
        } else {
            no("d = 1 but the algebra without S1 is not rigid".into())
        };
    }
    match p.kind() {
        AlgebraType::Type1 => match ml_hypotheses(p) {
            Ok((i0, _)) => yes('c', &format!("d = 0 and the Makar-Limanov hypotheses hold with i0 = {i0}")),
            Err(why) => no(format!("not rigid and the Makar-Limanov hypotheses fail: {why}")),
        },
        AlgebraType::Type2 => no("d = 0 and not rigid".into()),
    }
}

/// `i0` and the columns `c_i`, `i != i0`, when the hypotheses hold; otherwise
/// the first failing hypothesis.
fn ml_hypotheses(p: &Presentation) -> Result<(u32, Vec<(u32, u32)>), String> {
    if p.free_vars() != 0 {
        return Err(format!("hypothesis (a) fails: d = {} > 0", p.free_vars()));
    }
    let candidates: Vec<u32> = p
        .block_indices()
        .filter(|&i| p.block(i).len() == 1 && p.block(i)[0] > 1)
        .collect();
    if candidates.is_empty() {
        return Err("hypothesis (b) fails: no block is a single variable with exponent > 1".into());
    }
    let mut first_failure = None;
    for &i0 in &candidates {
        let mut cols = Vec::new();
        let mut failed = None;
        for i in p.block_indices().filter(|&i| i != i0) {
            let ones: Vec<u32> = (1..=p.block(i).len() as u32).filter(|&j| p.exponent(i, j) == 1).collect();
            if ones.len() == 1 {
                cols.push((i, ones[0]));
            } else {
                failed = Some(format!(
                    "hypothesis (c) fails: block {i} has {} exponents equal to 1 (i0 = {i0})",
                    ones.len()
                ));
                break;
            }
        }
        match failed {
            None => return Ok((i0, cols)),
            Some(why) => {
                first_failure.get_or_insert(why);
            }
        }
    }
    Err(first_failure.expect("at least one candidate was examined"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MlInvariant {
    Generators(Vec<Var>),
    NotApplicable(String),
    NotComputed,
}

/// The Makar-Limanov invariant when the sufficient hypotheses hold (Type 1 only).
pub fn makar_limanov(p: &Presentation) -> Result<MlInvariant, ClassifyError> {
    if p.kind() != AlgebraType::Type1 {
        return Err(ClassifyError::WrongType { expected: 1 });
    }
    Ok(match ml_hypotheses(p) {
        Ok((i0, cols)) => MlInvariant::Generators(
            cols.into_iter()
                .filter(|(i, _)| *i != i0)
                .flat_map(|(i, c)| {
                    (1..=p.block(i).len() as u32)
                        .filter(move |&j| j != c)
                        .map(move |j| Var::T(i, j))
                })
                .collect(),
        ),
        Err(why) => MlInvariant::NotApplicable(why),
    })
}
