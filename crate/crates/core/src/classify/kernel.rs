use num_traits::One;

use super::construct::{block_root, check_columns, check_type2};
use super::tuples::col;
use super::{ClassifyError, LndDescriptor};
use crate::poly::{Poly, Var};
use crate::presentation::{AlgebraType, Presentation};
use crate::scalar::GaussianRational;

type GQ = GaussianRational;

fn off_tuple_vars(p: &Presentation, c: &super::Columns) -> Vec<Poly> {
    p.block_indices()
        .flat_map(|i| {
            let ci = col(p, c, i);
            (1..=p.block(i).len() as u32)
                .filter(move |&j| j != ci)
                .map(move |j| Poly::var(Var::T(i, j)))
        })
        .collect()
}

fn free_vars_except(p: &Presentation, skip: Option<u32>) -> Vec<Poly> {
    (1..=p.free_vars())
        .filter(|&k| Some(k) != skip)
        .map(|k| Poly::var(Var::S(k)))
        .collect()
}

/// Generators of the kernel of the base derivation named by `desc`.
pub fn kernel_generators(p: &Presentation, desc: &LndDescriptor) -> Result<Vec<Poly>, ClassifyError> {
    let wrong = |why: &str| ClassifyError::InadmissibleDescriptor(format!("{desc}: {why}"));
    match desc {
        LndDescriptor::FreeVariable(k) => {
            if *k == 0 || *k > p.free_vars() {
                return Err(wrong("no such free variable"));
            }
            let mut out: Vec<Poly> = p
                .generators()
                .into_iter()
                .filter(|v| matches!(v, Var::T(..)))
                .map(Poly::var)
                .collect();
            out.extend(free_vars_except(p, Some(*k)));
            Ok(out)
        }
        LndDescriptor::Type1(c) => {
            if p.kind() != AlgebraType::Type1 {
                return Err(wrong("Type 1 descriptor on a Type 2 presentation"));
            }
            check_columns(p, c).map_err(|e| wrong(&e.to_string()))?;
            let mut out = off_tuple_vars(p, c);
            out.extend(free_vars_except(p, None));
            Ok(out)
        }
        _ => {
            if p.kind() != AlgebraType::Type2 {
                return Err(wrong("Type 2 descriptor on a Type 1 presentation"));
            }
            check_type2(p, desc).map_err(|e| wrong(&e.to_string()))?;
            let c = desc.columns().expect("type 2 descriptor");
            let [r0, r1, r2] = desc.roles().expect("roles");
            let mut out = off_tuple_vars(p, c);
            out.extend(free_vars_except(p, None));
            let extra = match desc {
                LndDescriptor::T2a { .. } => Poly::var(Var::T(r1, col(p, c, r1))),
                LndDescriptor::T2b { lambda, .. } => {
                    let q = p.exponent(r0, col(p, c, r0));
                    &block_root(p, r0, q).scale(lambda) - &block_root(p, r1, q)
                }
                LndDescriptor::T2c { mu, .. } => &block_root(p, r0, 2).scale(mu) + &block_root(p, r1, 2),
                LndDescriptor::T2d { lambda, .. } => {
                    let [c0, c1, c2] = p.triple_coefficients(r0, r1, r2);
                    let inv = c2.inv().expect("independent columns");
                    let root = |x: GQ| {
                        x.sqrt().ok_or_else(|| ClassifyError::NeedsNormalization(format!("{x} has no square root in Q(i)")))
                    };
                    let (s0, s1) = (root(&c0 * &inv)?, root(&c1 * &inv)?);
                    let one = GQ::one();
                    let l2 = lambda * lambda;
                    let a = (&one - &l2) * s0;
                    let b = -(&(&one + &l2) * &GQ::i()) * s1;
                    let c = GQ::from_int(2) * lambda;
                    &(&block_root(p, r0, 2).scale(&a) + &block_root(p, r1, 2).scale(&b)) + &block_root(p, r2, 2).scale(&c)
                }
                _ => unreachable!("type 2 descriptor"),
            };
            out.push(p.normal_form(&extra));
            Ok(out)
        }
    }
}
