use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::tuples::col;
use super::{ClassifyError, Columns, LndDescriptor};
use crate::derivation::Derivation;
use crate::poly::{Poly, Var};
use crate::presentation::{AlgebraType, Presentation};
use crate::scalar::GaussianRational;

type GQ = GaussianRational;

/// `∂(T_i^{l_i/q}) / ∂T_{ic}`.
fn d_block(p: &Presentation, i: u32, q: u32, c: u32) -> Poly {
    Poly::monomial(p.block_power(i, q)).partial_derivative(Var::T(i, c))
}

pub(super) fn block_root(p: &Presentation, i: u32, q: u32) -> Poly {
    Poly::monomial(p.block_power(i, q))
}

pub(super) fn check_columns(p: &Presentation, c: &Columns) -> Result<(), ClassifyError> {
    let ok = c.0.len() == p.num_blocks()
        && p.block_indices().all(|i| {
            let ci = col(p, c, i);
            ci >= 1 && ci as usize <= p.block(i).len()
        });
    if ok {
        Ok(())
    } else {
        Err(ClassifyError::InadmissibleTuple(format!("{c} does not match the block shape")))
    }
}

pub fn free_variable_lnd(p: &Arc<Presentation>, k: u32) -> Result<Derivation, ClassifyError> {
    if k == 0 || k > p.free_vars() {
        return Err(ClassifyError::NoSuchFreeVariable(k));
    }
    Ok(Derivation::partial(p.clone(), Var::S(k))?)
}

/// `δ_C(T_{ic_i}) = ∏_{k≠i} ∂T_k^{l_k}/∂T_{kc_k}`, zero elsewhere.
pub fn build_lnd_type1(p: &Arc<Presentation>, c: &Columns) -> Result<Derivation, ClassifyError> {
    if p.kind() != AlgebraType::Type1 {
        return Err(ClassifyError::WrongType { expected: 1 });
    }
    check_columns(p, c)?;
    let exceptional = p.block_indices().filter(|&i| p.exponent(i, col(p, c, i)) != 1).count();
    if exceptional > 1 {
        return Err(ClassifyError::InadmissibleTuple(format!(
            "{c}: {exceptional} blocks have l_(i,c_i) != 1"
        )));
    }
    let partials: BTreeMap<u32, Poly> = p
        .block_indices()
        .map(|i| (i, d_block(p, i, 1, col(p, c, i))))
        .collect();
    let images = p.block_indices().map(|i| {
        let img = partials
            .iter()
            .filter(|(k, _)| **k != i)
            .fold(Poly::one(), |acc, (_, d)| &acc * d);
        (Var::T(i, col(p, c, i)), img)
    });
    Ok(Derivation::new(p.clone(), images.collect::<Vec<_>>())?)
}

fn inadmissible(desc: &LndDescriptor, why: &str) -> ClassifyError {
    ClassifyError::InadmissibleTuple(format!("{desc}: {why}"))
}

pub(super) fn check_type2(p: &Presentation, desc: &LndDescriptor) -> Result<(), ClassifyError> {
    let (c, [r0, r1, r2]) = (desc.columns().expect("type 2 descriptor"), desc.roles().expect("roles"));
    check_columns(p, c)?;
    let blocks: Vec<u32> = p.block_indices().collect();
    if ![r0, r1, r2].iter().all(|r| blocks.contains(r)) || r0 == r1 || r1 == r2 || r0 == r2 {
        return Err(ClassifyError::InadmissibleDescriptor(format!(
            "roles ({r0},{r1},{r2}) must be three distinct blocks"
        )));
    }
    let l = |i: u32| p.exponent(i, col(p, c, i));
    if let Some(i) = blocks.iter().find(|&&i| ![r0, r1, r2].contains(&i) && l(i) != 1) {
        return Err(inadmissible(desc, &format!("block {i} outside the triple has l_(i,c_i) != 1")));
    }
    let even = |i: u32| p.block(i).iter().all(|x| x % 2 == 0);
    match desc {
        LndDescriptor::T2a { .. } => {
            if l(r2) != 1 {
                return Err(inadmissible(desc, "needs l = 1 on the third block"));
            }
        }
        LndDescriptor::T2b { lambda, .. } => {
            let q = l(r0);
            if l(r2) != 1 || !p.block(r0).iter().chain(p.block(r1)).all(|x| x % q == 0) {
                return Err(inadmissible(desc, "needs l = 1 on the third block and l_(0,c_0) dividing the first two blocks"));
            }
            if lambda.is_zero() {
                return Err(ClassifyError::InadmissibleDescriptor("λ must be non-zero in case (b)".into()));
            }
        }
        LndDescriptor::T2c { mu, .. } => {
            if l(r0) != 2 || l(r1) != 2 || l(r2) < 2 || !even(r0) || !even(r1) {
                return Err(inadmissible(desc, "needs l = 2 and even blocks on the first two, l >= 2 on the third"));
            }
            let [c0, c1, _] = p.triple_coefficients(r0, r1, r2);
            if &(mu * mu) * &c1 != -c0 {
                return Err(ClassifyError::InadmissibleDescriptor(format!(
                    "μ = {mu} does not satisfy μ² = {}",
                    -&p.triple_coefficients(r0, r1, r2)[0] / &p.triple_coefficients(r0, r1, r2)[1]
                )));
            }
        }
        LndDescriptor::T2d { .. } => {
            if [r0, r1, r2].iter().any(|&i| l(i) != 2 || !even(i)) {
                return Err(inadmissible(desc, "needs l = 2 and even blocks on all three"));
            }
        }
        _ => unreachable!("not a type 2 descriptor"),
    }
    Ok(())
}

/// Images of the three distinguished column variables, before the extension to other blocks.
fn triple_images(p: &Presentation, desc: &LndDescriptor) -> Result<[Poly; 3], ClassifyError> {
    let c = desc.columns().expect("type 2 descriptor");
    let [r0, r1, r2] = desc.roles().expect("roles");
    let (k0, k1, k2) = (col(p, c, r0), col(p, c, r1), col(p, c, r2));
    let [c0, c1, c2] = p.triple_coefficients(r0, r1, r2);
    let inv_c2 = c2.inv().expect("columns are independent");
    Ok(match desc {
        LndDescriptor::T2a { .. } => [
            d_block(p, r2, 1, k2).scale(&c2),
            Poly::zero(),
            -d_block(p, r0, 1, k0).scale(&c0),
        ],
        LndDescriptor::T2b { lambda, .. } => {
            let q = p.exponent(r0, k0);
            let ds = d_block(p, r2, 1, k2);
            let d0q = d_block(p, r0, q, k0);
            let d1q = d_block(p, r1, q, k1);
            let tail = &(&d_block(p, r0, 1, k0) * &d1q).scale(&c0) + &(&d0q * &d_block(p, r1, 1, k1)).scale(&(lambda * &c1));
            [&d1q * &ds, (&d0q * &ds).scale(lambda), -tail.scale(&inv_c2)]
        }
        LndDescriptor::T2c { mu, .. } => {
            let ds = d_block(p, r2, 1, k2);
            let d0h = d_block(p, r0, 2, k0);
            let d1h = d_block(p, r1, 2, k1);
            let inner = &(&d_block(p, r0, 1, k0) * &d1h).scale(mu) + &(&d0h * &d_block(p, r1, 1, k1));
            [
                (&d1h * &ds).scale(&(&c1 * mu)),
                (&d0h * &ds).scale(&c0),
                -inner.scale(&(&(&c0 * &c1) * &inv_c2)),
            ]
        }
        LndDescriptor::T2d { lambda, .. } => {
            let need = |x: GQ, i: u32| {
                x.sqrt().ok_or_else(|| {
                    ClassifyError::NeedsNormalization(format!(
                        "coefficient ratio {x} for block {i} has no square root in Q(i)"
                    ))
                })
            };
            let sigma = [need(&c0 * &inv_c2, r0)?, need(&c1 * &inv_c2, r1)?, GQ::one()];
            let roles = [r0, r1, r2];
            let cols = [k0, k1, k2];
            let x: Vec<Poly> = (0..3).map(|t| block_root(p, roles[t], 2).scale(&sigma[t])).collect();
            let dh: Vec<Poly> = (0..3).map(|t| d_block(p, roles[t], 2, cols[t])).collect();
            let one = GQ::one();
            let two = GQ::from_int(2);
            let i = GQ::i();
            let l2 = lambda * lambda;
            let plus = &one + &l2;
            let minus = &one - &l2;
            let f = [
                &x[1].scale(&(&two * lambda)) + &x[2].scale(&(&plus * &i)),
                &x[0].scale(&-(&two * lambda)) + &x[2].scale(&minus),
                -(&x[0].scale(&(&plus * &i)) + &x[1].scale(&minus)),
            ];
            let mut out: Vec<Poly> = Vec::with_capacity(3);
            for t in 0..3 {
                let prod = (0..3).filter(|&k| k != t).fold(Poly::one(), |acc, k| &acc * &dh[k]);
                let inv_sigma = sigma[t].inv().expect("non-zero root");
                out.push((&prod * &f[t]).scale(&inv_sigma));
            }
            let [a, b, c] = <[Poly; 3]>::try_from(out).expect("three images");
            [a, b, c]
        }
        _ => unreachable!("not a type 2 descriptor"),
    })
}

/// Raw polynomial-ring images of every block column variable, extended to all blocks.
fn type2_raw_images(p: &Presentation, desc: &LndDescriptor) -> Result<Vec<(Var, Poly)>, ClassifyError> {
    let c = desc.columns().expect("type 2 descriptor");
    let roles = desc.roles().expect("roles");
    let base = triple_images(p, desc)?;
    let outside: Vec<u32> = p.block_indices().filter(|i| !roles.contains(i)).collect();
    let pi = outside
        .iter()
        .fold(Poly::one(), |acc, &i| &acc * &d_block(p, i, 1, col(p, c, i)));
    let scaled: Vec<Poly> = base.iter().map(|img| img * &pi).collect();
    let mut out: Vec<(Var, Poly)> = roles
        .iter()
        .zip(&scaled)
        .map(|(&i, img)| (Var::T(i, col(p, c, i)), img.clone()))
        .collect();
    let (r0, r1) = (roles[0], roles[1]);
    let num_base = [
        &d_block(p, r0, 1, col(p, c, r0)) * &scaled[0],
        &d_block(p, r1, 1, col(p, c, r1)) * &scaled[1],
    ];
    for &i in &outside {
        let ci = col(p, c, i);
        let [a0, a1, a2] = p.triple_coefficients(r0, r1, i);
        let num = &num_base[0].scale(&a0) + &num_base[1].scale(&a1);
        let d = d_block(p, i, 1, ci);
        let (m, coeff) = d.leading_term().expect("block variable occurs in its block");
        let img = num
            .exact_divide_term(&(&-a2 * coeff), m)
            .map_err(|e| ClassifyError::ExactDivisionFailed(format!("{desc}, block {i}: {e}")))?;
        out.push((Var::T(i, ci), img));
    }
    Ok(out)
}

pub fn build_lnd_type2(p: &Arc<Presentation>, desc: &LndDescriptor) -> Result<Derivation, ClassifyError> {
    if p.kind() != AlgebraType::Type2 {
        return Err(ClassifyError::WrongType { expected: 2 });
    }
    if desc.roles().is_none() {
        return Err(ClassifyError::InadmissibleDescriptor(format!("{desc} is not a Type 2 descriptor")));
    }
    check_type2(p, desc)?;
    Ok(Derivation::new(p.clone(), type2_raw_images(p, desc)?)?)
}

pub fn build_lnd(p: &Arc<Presentation>, desc: &LndDescriptor) -> Result<Derivation, ClassifyError> {
    match desc {
        LndDescriptor::FreeVariable(k) => free_variable_lnd(p, *k),
        LndDescriptor::Type1(c) => build_lnd_type1(p, c),
        _ => build_lnd_type2(p, desc),
    }
}

fn with_lambda(desc: &LndDescriptor, lambda: GQ) -> LndDescriptor {
    match desc.clone() {
        LndDescriptor::T2b { columns, roles, .. } => LndDescriptor::T2b { columns, roles, lambda },
        LndDescriptor::T2d { columns, roles, .. } => LndDescriptor::T2d { columns, roles, lambda },
        other => other,
    }
}

/// The λ-family of a case (b) or (d) descriptor with λ kept symbolic:
/// one `generator = A + λ*(B) + λ^2*(C)` line per non-zero image.
pub fn lambda_family_text(p: &Presentation, desc: &LndDescriptor) -> Option<String> {
    let points: Vec<i64> = match desc {
        LndDescriptor::T2b { .. } => vec![1, 2],
        LndDescriptor::T2d { .. } => vec![0, 1, -1],
        _ => return None,
    };
    let mut samples = Vec::new();
    for &t in &points {
        let imgs = type2_raw_images(p, &with_lambda(desc, GQ::from_int(t))).ok()?;
        let map: BTreeMap<Var, Poly> = imgs.into_iter().map(|(v, img)| (v, p.normal_form(&img))).collect();
        samples.push(map);
    }
    let vars: Vec<Var> = samples[0].keys().copied().collect();
    let half = GQ::from_ratio(1, 2);
    let mut lines = Vec::new();
    for v in vars {
        let at = |k: usize| samples[k].get(&v).cloned().unwrap_or_default();
        let coeffs: Vec<Poly> = if points.len() == 2 {
            let b = &at(1) - &at(0);
            vec![&at(0) - &b, b]
        } else {
            let a = at(0);
            let b = (&at(1) - &at(2)).scale(&half);
            let c = &(&at(1) + &at(2)).scale(&half) - &a;
            vec![a, b, c]
        };
        let parts: Vec<String> = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("{c}"),
                1 => format!("λ*({c})"),
                _ => format!("λ^{k}*({c})"),
            })
            .collect();
        if !parts.is_empty() {
            lines.push(format!("{v} = {}", parts.join(" + ")));
        }
    }
    Some(lines.join("\n"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derivation::NilpotencyLimits;
    use crate::poly::parse_poly;

    fn p(s: &str) -> Poly {
        parse_poly(s).unwrap()
    }

    fn cols(v: &[u32]) -> Columns {
        Columns(v.to_vec())
    }

    #[test]
    fn type1_examples() {
        let pres = Arc::new(Presentation::type1(&[&[1], &[1, 2]], 0).unwrap());
        let d = build_lnd_type1(&pres, &cols(&[1, 1])).unwrap();
        assert_eq!(d.image(Var::T(1, 1)), p("T2_2^2"));
        assert_eq!(d.image(Var::T(2, 1)), p("1"));
        assert!(d.image(Var::T(2, 2)).is_zero());

        let pres = Arc::new(Presentation::type1(&[&[1], &[1], &[2]], 0).unwrap());
        let d = build_lnd_type1(&pres, &cols(&[1, 1, 1])).unwrap();
        assert_eq!(d.image(Var::T(3, 1)), p("1"));
        assert_eq!(d.image(Var::T(1, 1)), p("2*T3_1"));
        assert!(d.is_well_defined());

        let pres = Arc::new(Presentation::type1(&[&[2], &[3]], 0).unwrap());
        assert!(matches!(
            build_lnd_type1(&pres, &cols(&[1, 1])),
            Err(ClassifyError::InadmissibleTuple(_))
        ));
    }

    #[test]
    fn case_a_on_a_plane() {
        // x^2 + y^3 + z: blocks permuted so that the linear block plays the third role
        let pres = Arc::new(Presentation::surface(2, 3, 1));
        let desc = LndDescriptor::T2a {
            columns: cols(&[1, 1, 1]),
            roles: [0, 1, 2],
        };
        let d = build_lnd_type2(&pres, &desc).unwrap();
        assert_eq!(d.image(Var::T(0, 1)), p("1"));
        assert_eq!(d.image(Var::T(2, 1)), p("-2*T0_1"));
        assert!(d.image(Var::T(1, 1)).is_zero());
        assert!(d.is_well_defined());
    }

    #[test]
    fn case_c_and_d_on_quadric_cones() {
        let pres = Arc::new(Presentation::surface(2, 2, 3));
        let desc = LndDescriptor::T2c {
            columns: cols(&[1, 1, 1]),
            roles: [0, 1, 2],
            mu: GQ::i(),
        };
        let d = build_lnd_type2(&pres, &desc).unwrap();
        assert_eq!(d.image(Var::T(0, 1)), p("3i*T2_1^2"));
        assert_eq!(d.image(Var::T(1, 1)), p("3*T2_1^2"));
        assert_eq!(d.image(Var::T(2, 1)), p("-2i*T0_1 - 2*T1_1"));

        let pres = Arc::new(Presentation::surface(2, 2, 2));
        let desc = LndDescriptor::T2d {
            columns: cols(&[1, 1, 1]),
            roles: [0, 1, 2],
            lambda: GQ::one(),
        };
        let d = build_lnd_type2(&pres, &desc).unwrap();
        assert_eq!(d.image(Var::T(0, 1)), p("2*T1_1 + 2i*T2_1"));
        assert_eq!(d.image(Var::T(1, 1)), p("-2*T0_1"));
        assert_eq!(d.image(Var::T(2, 1)), p("-2i*T0_1"));

        let bad_mu = LndDescriptor::T2c {
            columns: cols(&[1, 1, 1]),
            roles: [0, 1, 2],
            mu: GQ::one(),
        };
        assert!(matches!(
            build_lnd_type2(&pres, &bad_mu),
            Err(ClassifyError::InadmissibleDescriptor(_))
        ));
    }

    #[test]
    fn general_coefficients_and_longer_chains() {
        let pres = Arc::new(
            Presentation::from_json(
                r#"{"type":2,"blocks":[[2,4],[2],[2,2],[1,3]],"constants":[["1","0"],["0","1"],["-1","-1"],["2","-3"]]}"#,
            )
            .unwrap(),
        );
        let [c0, c1, _] = pres.triple_coefficients(0, 1, 2);
        let mu = (-&c0 / &c1).sqrt().unwrap();
        for desc in [
            LndDescriptor::T2c {
                columns: cols(&[1, 1, 1, 1]),
                roles: [0, 1, 2],
                mu: mu.clone(),
            },
            LndDescriptor::T2c {
                columns: cols(&[1, 1, 1, 1]),
                roles: [0, 1, 2],
                mu: -mu.clone(),
            },
            LndDescriptor::T2d {
                columns: cols(&[1, 1, 1, 1]),
                roles: [0, 1, 2],
                lambda: GQ::from_int(3),
            },
        ] {
            match build_lnd_type2(&pres, &desc) {
                Ok(d) => {
                    assert!(d.is_well_defined(), "{desc}");
                    assert!(d.nilpotency_check(NilpotencyLimits::default()).is_verified(), "{desc}");
                }
                Err(ClassifyError::NeedsNormalization(_)) => {}
                Err(e) => panic!("{desc}: {e}"),
            }
        }
    }

    #[test]
    fn family_text_is_symbolic() {
        let pres = Presentation::surface(2, 2, 2);
        let desc = LndDescriptor::T2d {
            columns: cols(&[1, 1, 1]),
            roles: [0, 1, 2],
            lambda: GQ::one(),
        };
        let text = lambda_family_text(&pres, &desc).unwrap();
        assert!(text.contains("T0_1 = i*T2_1 + λ*(2*T1_1) + λ^2*(i*T2_1)"), "{text}");
    }
}
