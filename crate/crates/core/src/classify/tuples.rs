use num_traits::Zero;

use super::report::ClassCount;
use super::{ClassifyError, Columns, LndDescriptor, TupleC, TupleCase};
use crate::presentation::{AlgebraType, Presentation};
use crate::scalar::GaussianRational;

fn all_column_choices(p: &Presentation) -> Vec<Columns> {
    let mut out = vec![Vec::new()];
    for i in p.block_indices() {
        let n = p.block(i).len() as u32;
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (1..=n).map(move |c| {
                    let mut next = prefix.clone();
                    next.push(c);
                    next
                })
            })
            .collect();
    }
    out.into_iter().map(Columns).collect()
}

pub(crate) fn col(p: &Presentation, c: &Columns, i: u32) -> u32 {
    c.0[(i - p.first_block()) as usize]
}

fn l_at(p: &Presentation, c: &Columns, i: u32) -> u32 {
    p.exponent(i, col(p, c, i))
}

fn all_even(p: &Presentation, i: u32) -> bool {
    p.block(i).iter().all(|l| l % 2 == 0)
}

/// Checks one column choice against the case predicates.
pub fn tuple_is_admissible(p: &Presentation, c: &Columns) -> Option<TupleC> {
    if c.0.len() != p.num_blocks() {
        return None;
    }
    for i in p.block_indices() {
        let ci = col(p, c, i);
        if ci == 0 || ci as usize > p.block(i).len() {
            return None;
        }
    }
    let exceptional: Vec<u32> = p.block_indices().filter(|&i| l_at(p, c, i) != 1).collect();
    let case = match p.kind() {
        AlgebraType::Type1 => match exceptional.as_slice() {
            [] => TupleCase::Type1 { i0: None },
            [i0] => TupleCase::Type1 { i0: Some(*i0) },
            _ => return None,
        },
        AlgebraType::Type2 if exceptional.len() <= 2 => {
            let blocks: Vec<u32> = p.block_indices().collect();
            let mut labelings = Vec::new();
            for (a, &i1) in blocks.iter().enumerate() {
                for &i2 in &blocks[a + 1..] {
                    if exceptional.iter().all(|e| *e == i1 || *e == i2) {
                        labelings.push((i1, i2));
                    }
                }
            }
            TupleCase::T2CaseA { labelings }
        }
        AlgebraType::Type2 if exceptional.len() == 3 => {
            let good = |i: u32| l_at(p, c, i) == 2 && all_even(p, i);
            let e = &exceptional;
            let mut labelings = Vec::new();
            for (i1, i2, i3) in [(e[0], e[1], e[2]), (e[0], e[2], e[1]), (e[1], e[2], e[0])] {
                if good(i1) && good(i2) {
                    labelings.push((i1, i2, i3));
                }
            }
            if labelings.is_empty() {
                return None;
            }
            TupleCase::T2CaseB { labelings }
        }
        AlgebraType::Type2 => return None,
    };
    Some(TupleC {
        columns: c.clone(),
        case,
    })
}

/// Every admissible tuple, in lexicographic column order.
pub fn admissible_tuples(p: &Presentation) -> Vec<TupleC> {
    all_column_choices(p)
        .iter()
        .filter_map(|c| tuple_is_admissible(p, c))
        .collect()
}

/// A labeling `(i1, i2)` and a `k` in it whose column exponent divides every exponent of both blocks.
fn case_a_divisor(p: &Presentation, t: &TupleC, labelings: &[(u32, u32)]) -> Option<(u32, u32)> {
    for &(i1, i2) in labelings {
        for (k, other) in [(i1, i2), (i2, i1)] {
            let l = l_at(p, &t.columns, k);
            if p.block(i1).iter().chain(p.block(i2)).all(|x| x % l == 0) {
                return Some((k, other));
            }
        }
    }
    None
}

fn case_b_infinite(p: &Presentation, t: &TupleC, labelings: &[(u32, u32, u32)]) -> Option<(u32, u32, u32)> {
    labelings
        .iter()
        .copied()
        .find(|&(_, _, i3)| l_at(p, &t.columns, i3) == 2 && all_even(p, i3))
}

pub(crate) fn class_count(p: &Presentation, t: &TupleC) -> ClassCount {
    match &t.case {
        TupleCase::Type1 { .. } => ClassCount::SingleFamily,
        TupleCase::T2CaseA { labelings } => match case_a_divisor(p, t, labelings) {
            Some(_) => ClassCount::InfiniteFamily,
            None => ClassCount::ExactlyTwo,
        },
        TupleCase::T2CaseB { labelings } => match case_b_infinite(p, t, labelings) {
            Some(_) => ClassCount::InfiniteFamily,
            None => ClassCount::ExactlyTwo,
        },
    }
}

fn first_outside(p: &Presentation, used: &[u32]) -> u32 {
    p.block_indices()
        .find(|i| !used.contains(i))
        .expect("a Type 2 presentation has at least three blocks")
}

/// Base derivations for an admissible tuple. Parameter families are sampled at
/// `lambdas`; zero is skipped where the formula requires a unit.
pub fn base_descriptors(
    p: &Presentation,
    t: &TupleC,
    lambdas: &[GaussianRational],
) -> Result<Vec<LndDescriptor>, ClassifyError> {
    let columns = t.columns.clone();
    match &t.case {
        TupleCase::Type1 { .. } => Ok(vec![LndDescriptor::Type1(columns)]),
        TupleCase::T2CaseA { labelings } => {
            let (i1, i2, family) = match case_a_divisor(p, t, labelings) {
                Some((k, other)) => (k, other, true),
                None => (labelings[0].0, labelings[0].1, false),
            };
            let s = first_outside(p, &[i1, i2]);
            let mut out = vec![
                LndDescriptor::T2a {
                    columns: columns.clone(),
                    roles: [i1, i2, s],
                },
                LndDescriptor::T2a {
                    columns: columns.clone(),
                    roles: [i2, i1, s],
                },
            ];
            if family {
                out.extend(lambdas.iter().filter(|l| !l.is_zero()).map(|l| LndDescriptor::T2b {
                    columns: columns.clone(),
                    roles: [i1, i2, s],
                    lambda: l.clone(),
                }));
            }
            Ok(out)
        }
        TupleCase::T2CaseB { labelings } => {
            let (roles, family) = match case_b_infinite(p, t, labelings) {
                Some((a, b, c)) => ([a, b, c], true),
                None => {
                    let (a, b, c) = labelings[0];
                    ([a, b, c], false)
                }
            };
            let [c0, c1, _] = p.triple_coefficients(roles[0], roles[1], roles[2]);
            let mu = (-&c0 / &c1).sqrt().ok_or_else(|| {
                ClassifyError::NeedsNormalization(format!(
                    "{} has no square root in Q(i) (blocks {}, {})",
                    -&c0 / &c1,
                    roles[0],
                    roles[1]
                ))
            })?;
            let mut out = vec![
                LndDescriptor::T2c {
                    columns: columns.clone(),
                    roles,
                    mu: mu.clone(),
                },
                LndDescriptor::T2c {
                    columns: columns.clone(),
                    roles,
                    mu: -mu,
                },
            ];
            if family {
                out.extend(lambdas.iter().map(|l| LndDescriptor::T2d {
                    columns: columns.clone(),
                    roles,
                    lambda: l.clone(),
                }));
            }
            Ok(out)
        }
    }
}
