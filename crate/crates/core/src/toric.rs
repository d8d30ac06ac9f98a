//! Plane cones, Demazure roots and the surface LNDs built from them.
//!
//! A cone is given by the two lattice vectors spanning it. For a ray `ρ` the
//! pairing vector `n_ρ` is the primitive vector orthogonal to `ρ` that is
//! non-negative on the other ray. Roots of `ρ` are the `e` with
//! `⟨n_ρ, e⟩ = -1` and `⟨n_ρ', e⟩ >= 0`, and the root derivation sends
//! `χ^m` to `⟨n_ρ, m⟩ χ^(m+e)`.
//!
//! The quadric-cone surfaces use `cone((0,1), (γ,-1))` with generators
//! `u = χ^(γ,-1)`, `v = χ^(0,1)`, `z = χ^(1,0)`, so `uv = z^γ`, and pass to
//! `x, y, z` through `u = ix - y`, `v = ix + y`. At `γ = 2` the other common
//! normalization `cone((1,0),(1,2))` is the image of this cone under the
//! unimodular map `(s, t) ↦ (s + t, s)`.

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

use crate::derivation::Derivation;
use crate::poly::{parse_poly, Poly, Var};
use crate::presentation::Presentation;
use crate::scalar::GaussianRational;

type GQ = GaussianRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ToricError {
    #[error("ray {0:?} is not primitive")]
    NotPrimitive([i64; 2]),
    #[error("rays {0:?} and {1:?} are linearly dependent")]
    Dependent([i64; 2], [i64; 2]),
    #[error("ray index must be 1 or 2, got {0}")]
    BadRayIndex(u8),
    #[error("p = {p} is outside the root family (p >= {min})")]
    RootOutOfRange { p: i64, min: i64 },
    #[error("γ must be at least 2, got {0}")]
    BadGamma(u32),
}

fn dot(a: [i64; 2], b: [i64; 2]) -> i64 {
    a[0] * b[0] + a[1] * b[1]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Cone2D {
    pub rays: [[i64; 2]; 2],
}

impl Cone2D {
    pub fn new(v1: [i64; 2], v2: [i64; 2]) -> Result<Cone2D, ToricError> {
        for v in [v1, v2] {
            if v[0].gcd(&v[1]) != 1 {
                return Err(ToricError::NotPrimitive(v));
            }
        }
        if v1[0] * v2[1] - v1[1] * v2[0] == 0 {
            return Err(ToricError::Dependent(v1, v2));
        }
        Ok(Cone2D { rays: [v1, v2] })
    }

    /// `cone((0,1), (γ,-1))`.
    pub fn quadric(gamma: u32) -> Cone2D {
        Cone2D::new([0, 1], [gamma as i64, -1]).expect("primitive and independent")
    }

    fn index(ray: u8) -> Result<usize, ToricError> {
        match ray {
            1 | 2 => Ok(ray as usize - 1),
            _ => Err(ToricError::BadRayIndex(ray)),
        }
    }

    /// The pairing vector `n_ρ` of ray `ray` (1 or 2).
    pub fn normal(&self, ray: u8) -> Result<[i64; 2], ToricError> {
        let k = Cone2D::index(ray)?;
        let [a, b] = self.rays[k];
        let other = self.rays[1 - k];
        let n = [-b, a];
        Ok(if dot(n, other) > 0 { n } else { [b, -a] })
    }
}

/// `{ base + p·direction : p >= p_min }`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootFamily {
    pub base: [i64; 2],
    pub direction: [i64; 2],
    pub p_min: i64,
}

impl RootFamily {
    pub fn at(&self, p: i64) -> Result<[i64; 2], ToricError> {
        if p < self.p_min {
            return Err(ToricError::RootOutOfRange { p, min: self.p_min });
        }
        Ok([self.base[0] + p * self.direction[0], self.base[1] + p * self.direction[1]])
    }

    /// The first `count` roots.
    pub fn first(&self, count: usize) -> Vec<[i64; 2]> {
        (0..count as i64)
            .map(|k| self.at(self.p_min + k).expect("in range"))
            .collect()
    }

    pub fn contains(&self, e: [i64; 2]) -> bool {
        // e - base must be a multiple p·direction with p >= p_min.
        let d = [e[0] - self.base[0], e[1] - self.base[1]];
        let w = self.direction;
        if d[0] * w[1] - d[1] * w[0] != 0 {
            return false;
        }
        let p = if w[0] != 0 { d[0] / w[0] } else { d[1] / w[1] };
        p * w[0] == d[0] && p * w[1] == d[1] && p >= self.p_min
    }
}

fn affine(c: i64, k: i64) -> String {
    let lin = match k {
        0 => String::new(),
        1 => "p".into(),
        -1 => "-p".into(),
        _ => format!("{k}p"),
    };
    match (lin.is_empty(), c) {
        (true, _) => c.to_string(),
        (false, 0) => lin,
        (false, c) if c > 0 => format!("{lin}+{c}"),
        (false, c) => format!("{lin}{c}"),
    }
}

impl fmt::Display for RootFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = if self.p_min == 0 { "p >= 0".to_string() } else { format!("p >= {}", self.p_min) };
        write!(
            f,
            "{{({}, {}) : {rel}}}",
            affine(self.base[0], self.direction[0]),
            affine(self.base[1], self.direction[1])
        )
    }
}

/// Demazure roots of the given ray, solved on the lattice line `⟨n_ρ, e⟩ = -1`.
pub fn demazure_roots(cone: &Cone2D, ray: u8) -> Result<RootFamily, ToricError> {
    let n = cone.normal(ray)?;
    let n_other = cone.normal(if ray == 1 { 2 } else { 1 })?;
    let eg = n[0].extended_gcd(&n[1]);
    debug_assert_eq!(eg.gcd.abs(), 1);
    // n·(x, y) = gcd = ±1, so -(x, y)·gcd solves n·e = -1.
    let particular = [-eg.x * eg.gcd, -eg.y * eg.gcd];
    let mut w = [-n[1], n[0]];
    if dot(n_other, w) < 0 {
        w = [-w[0], -w[1]];
    }
    let step = dot(n_other, w);
    // Shift to the point with ⟨n_other, base⟩ in (-step, 0].
    let k = (-dot(n_other, particular)).div_euclid(step);
    let base = [particular[0] + k * w[0], particular[1] + k * w[1]];
    let p_min = if dot(n_other, base) == 0 { 0 } else { 1 };
    Ok(RootFamily {
        base,
        direction: w,
        p_min,
    })
}

/// One term `coeff · u^a v^b z^c` of a root derivation on the quadric cone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct UvzTerm {
    pub coeff: i64,
    pub u: u32,
    pub v: u32,
    pub z: u32,
}

impl fmt::Display for UvzTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeff == 0 {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (name, e) in [("u", self.u), ("v", self.v), ("z", self.z)] {
            match e {
                0 => {}
                1 => parts.push(name.to_string()),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        match (self.coeff, parts.is_empty()) {
            (c, true) => write!(f, "{c}"),
            (1, false) => write!(f, "{}", parts.join("*")),
            (-1, false) => write!(f, "-{}", parts.join("*")),
            (c, false) => write!(f, "{c}*{}", parts.join("*")),
        }
    }
}

/// Images of `u, v, z` under a root derivation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UvzDerivation {
    pub root: [i64; 2],
    pub u: UvzTerm,
    pub v: UvzTerm,
    pub z: UvzTerm,
}

impl fmt::Display for UvzDerivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "u ↦ {}, v ↦ {}, z ↦ {}", self.u, self.v, self.z)
    }
}

/// Writes a lattice point of the quadric cone as `u^a v^b z^c` without `uv`.
fn lattice_monomial(gamma: i64, m: [i64; 2]) -> Option<(u32, u32, u32)> {
    let [s, t] = m;
    if s < 0 || s + gamma * t < 0 {
        return None;
    }
    Some(if t >= 0 {
        (0, t as u32, s as u32)
    } else {
        let a = -t;
        (a as u32, 0, (s - gamma * a) as u32)
    })
}

pub fn root_derivation_uvz(gamma: u32, ray: u8, p: i64) -> Result<UvzDerivation, ToricError> {
    if gamma < 2 {
        return Err(ToricError::BadGamma(gamma));
    }
    let cone = Cone2D::quadric(gamma);
    let e = demazure_roots(&cone, ray)?.at(p)?;
    let n = cone.normal(ray)?;
    let g = gamma as i64;
    let term = |m: [i64; 2]| -> UvzTerm {
        let coeff = dot(n, m);
        if coeff == 0 {
            return UvzTerm { coeff: 0, u: 0, v: 0, z: 0 };
        }
        let (u, v, z) = lattice_monomial(g, [m[0] + e[0], m[1] + e[1]]).expect("root keeps the semigroup");
        UvzTerm { coeff, u, v, z }
    };
    Ok(UvzDerivation {
        root: e,
        u: term([g, -1]),
        v: term([0, 1]),
        z: term([1, 0]),
    })
}

fn xyz(text: &str) -> Poly {
    parse_poly(text).expect("fixed polynomial text")
}

fn uvz_poly(t: &UvzTerm) -> Poly {
    if t.coeff == 0 {
        return Poly::zero();
    }
    let u = xyz("i*T0_1 - T1_1");
    let v = xyz("i*T0_1 + T1_1");
    let z = Poly::var(Var::T(2, 1));
    (&(&u.pow(t.u) * &v.pow(t.v)) * &z.pow(t.z)).scale(&GQ::from_int(t.coeff))
}

/// The root derivation on `x² + y² + z^γ`, in the generators `x = T0_1`,
/// `y = T1_1`, `z = T2_1`.
pub fn toric_derivation(gamma: u32, ray: u8, p: i64) -> Result<Derivation, ToricError> {
    let d = root_derivation_uvz(gamma, ray, p)?;
    let pres = Arc::new(Presentation::surface(2, 2, gamma));
    let (du, dv, dz) = (uvz_poly(&d.u), uvz_poly(&d.v), uvz_poly(&d.z));
    // x = (u + v)/(2i), y = (v - u)/2.
    let dx = (&du + &dv).scale(&GQ::gaussian(0, 2).inv().expect("non-zero"));
    let dy = (&dv - &du).scale(&GQ::from_ratio(1, 2));
    Ok(Derivation::new(pres, [(Var::T(0, 1), dx), (Var::T(1, 1), dy), (Var::T(2, 1), dz)])
        .expect("surface generators"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SurfaceCase {
    /// Some exponent is 1.
    CaseA,
    /// `x² + y² + z^γ` with `γ > 2`.
    CaseB(u32),
    /// `x² + y² + z²`.
    CaseC,
    Rigid,
}

pub fn surface_case(alpha: u32, beta: u32, gamma: u32) -> SurfaceCase {
    let mut e = [alpha, beta, gamma];
    if e.contains(&1) {
        return SurfaceCase::CaseA;
    }
    e.sort_unstable();
    match e {
        [2, 2, 2] => SurfaceCase::CaseC,
        [2, 2, g] => SurfaceCase::CaseB(g),
        _ => SurfaceCase::Rigid,
    }
}

/// A family of homogeneous LNDs of `k[x, y]`; `λ` is a formal parameter.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlaneFamily {
    pub label: String,
    pub x_image: String,
    pub y_image: String,
    pub kernel: String,
    /// The family is `λ`-parametrized, `λ != 0`.
    pub parametrized: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlaneClassification {
    /// Torus weights of `x` and `y`.
    pub weights: [u32; 2],
    pub families: Vec<PlaneFamily>,
}

fn power(var: &str, e: u32) -> String {
    match e {
        0 => "1".into(),
        1 => var.into(),
        _ => format!("{var}^{e}"),
    }
}

fn scaled(c: u32, rest: &str) -> String {
    match (c, rest) {
        (_, "1") => c.to_string(),
        (1, _) => rest.into(),
        _ => format!("{c}*{rest}"),
    }
}

/// Homogeneous LND families of `k[x, y]` with `x` of weight `b` and `y` of weight `a`.
pub fn weighted_plane_lnds(a: u32, b: u32) -> PlaneClassification {
    let mut families = vec![
        PlaneFamily {
            label: "(i)".into(),
            x_image: "1".into(),
            y_image: "0".into(),
            kernel: "y".into(),
            parametrized: false,
        },
        PlaneFamily {
            label: "(ii)".into(),
            x_image: "0".into(),
            y_image: "1".into(),
            kernel: "x".into(),
            parametrized: false,
        },
    ];
    if a == 1 {
        families.push(PlaneFamily {
            label: "(iii)".into(),
            x_image: scaled(b, &power("y", b - 1)),
            y_image: "λ".into(),
            kernel: format!("λ*x - {}", power("y", b)),
            parametrized: true,
        });
    }
    if b == 1 {
        families.push(PlaneFamily {
            label: "(iv)".into(),
            x_image: "λ".into(),
            y_image: scaled(a, &power("x", a - 1)),
            kernel: format!("{} - λ*y", power("x", a)),
            parametrized: true,
        });
    }
    PlaneClassification {
        weights: [b, a],
        families,
    }
}

/// Substitutes a value for `λ` and reads `x, y` as `S1, S2`.
pub fn plane_family_polys(f: &PlaneFamily, lambda: &GQ) -> [Poly; 3] {
    let sub = |s: &str| {
        let text = s.replace('λ', &format!("({lambda})")).replace('x', "S1").replace('y', "S2");
        parse_poly(&text).expect("family text")
    };
    [sub(&f.x_image), sub(&f.y_image), sub(&f.kernel)]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SurfaceLndCase {
    CaseB(u32),
    CaseC,
}

#[derive(Debug, Clone, Serialize)]
pub struct NamedLnd {
    pub name: String,
    pub derivation: Derivation,
    pub kernel: Poly,
}

/// The default λ samples for `x² + y² + z²`.
pub fn default_lambda_samples() -> Vec<GQ> {
    let g = GQ::from_int;
    vec![g(0), g(1), g(-1), GQ::i(), -GQ::i(), g(2), GQ::gaussian(1, 1)]
}

/// `δ_λ` on `x² + y² + z²`.
pub fn quadric_delta_lambda(lambda: &GQ) -> NamedLnd {
    let pres = Arc::new(Presentation::surface(2, 2, 2));
    let (x, y, z) = (Poly::var(Var::T(0, 1)), Poly::var(Var::T(1, 1)), Poly::var(Var::T(2, 1)));
    let one = GQ::from_int(1);
    let two = GQ::from_int(2);
    let i = GQ::i();
    let l2 = lambda * lambda;
    let plus = &one + &l2;
    let minus = &one - &l2;
    let dx = &y.scale(&(&two * lambda)) + &z.scale(&(&i * &plus));
    let dy = &x.scale(&-(&two * lambda)) + &z.scale(&minus);
    let dz = -(&x.scale(&(&i * &plus)) + &y.scale(&minus));
    let kernel = &(&x.scale(&minus) - &y.scale(&(&i * &plus))) + &z.scale(&(&two * lambda));
    NamedLnd {
        name: format!("δ_λ, λ={lambda}"),
        derivation: Derivation::new(pres, [(Var::T(0, 1), dx), (Var::T(1, 1), dy), (Var::T(2, 1), dz)])
            .expect("surface generators"),
        kernel,
    }
}

/// Base LNDs of the non-rigid quadric-cone surfaces.
pub fn surface_lnds(case: SurfaceLndCase, lambdas: &[GQ]) -> Vec<NamedLnd> {
    match case {
        SurfaceLndCase::CaseB(gamma) => {
            let pres = Arc::new(Presentation::surface(2, 2, gamma));
            let g = gamma;
            let d0 = format!("T0_1 = {g}i*T2_1^{}\nT1_1 = {g}*T2_1^{}\nT2_1 = -2i*T0_1 - 2*T1_1", g - 1, g - 1);
            let dinf = format!("T0_1 = -{g}i*T2_1^{}\nT1_1 = {g}*T2_1^{}\nT2_1 = 2i*T0_1 - 2*T1_1", g - 1, g - 1);
            vec![
                NamedLnd {
                    name: "δ_0".into(),
                    derivation: Derivation::parse(pres.clone(), &d0).expect("fixed formula"),
                    kernel: xyz("i*T0_1 + T1_1"),
                },
                NamedLnd {
                    name: "δ_∞".into(),
                    derivation: Derivation::parse(pres, &dinf).expect("fixed formula"),
                    kernel: xyz("i*T0_1 - T1_1"),
                },
            ]
        }
        SurfaceLndCase::CaseC => {
            let pres = Arc::new(Presentation::surface(2, 2, 2));
            let dinf = "T0_1 = -i*T2_1\nT1_1 = T2_1\nT2_1 = i*T0_1 - T1_1";
            let mut out = vec![NamedLnd {
                name: "δ_∞".into(),
                derivation: Derivation::parse(pres, dinf).expect("fixed formula"),
                kernel: xyz("i*T0_1 - T1_1"),
            }];
            out.extend(lambdas.iter().map(quadric_delta_lambda));
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derivation::NilpotencyLimits;

    #[test]
    fn quadric_roots() {
        let cone = Cone2D::quadric(3);
        let r1 = demazure_roots(&cone, 1).unwrap();
        assert_eq!(r1.first(3), vec![[-1, 1], [-1, 2], [-1, 3]]);
        assert_eq!(r1.to_string(), "{(-1, p) : p >= 1}");
        let r2 = demazure_roots(&cone, 2).unwrap();
        assert_eq!(r2.first(2), vec![[2, -1], [5, -2]]);
        assert_eq!(r2.to_string(), "{(3p-1, -p) : p >= 1}");
        assert!(r2.contains([8, -3]) && !r2.contains([-1, 0]));
    }

    #[test]
    fn identity_cone_roots() {
        let cone = Cone2D::new([1, 0], [0, 1]).unwrap();
        let r = demazure_roots(&cone, 1).unwrap();
        assert_eq!(r.first(3), vec![[0, -1], [1, -1], [2, -1]]);
        assert!(Cone2D::new([2, 0], [0, 1]).is_err());
        assert!(Cone2D::new([1, 1], [-1, -1]).is_err());
    }

    #[test]
    fn uvz_forms() {
        let d = root_derivation_uvz(3, 1, 1).unwrap();
        assert_eq!(d.to_string(), "u ↦ 3*z^2, v ↦ 0, z ↦ v");
        let d = root_derivation_uvz(3, 2, 1).unwrap();
        assert_eq!(d.to_string(), "u ↦ 0, v ↦ 3*z^2, z ↦ u");
        let d = root_derivation_uvz(3, 1, 2).unwrap();
        assert_eq!(d.to_string(), "u ↦ 3*v*z^2, v ↦ 0, z ↦ v^2");
        assert!(matches!(root_derivation_uvz(3, 1, 0), Err(ToricError::RootOutOfRange { .. })));
    }

    #[test]
    fn surface_cases() {
        assert_eq!(surface_case(1, 3, 5), SurfaceCase::CaseA);
        assert_eq!(surface_case(2, 4, 2), SurfaceCase::CaseB(4));
        assert_eq!(surface_case(2, 3, 4), SurfaceCase::Rigid);
        assert_eq!(surface_case(2, 2, 2), SurfaceCase::CaseC);
    }

    #[test]
    fn plane_families() {
        assert_eq!(weighted_plane_lnds(2, 3).families.len(), 2);
        let c = weighted_plane_lnds(1, 2);
        assert_eq!(c.families.len(), 3);
        assert_eq!(c.families[2].x_image, "2*y");
        assert_eq!(c.families[2].kernel, "λ*x - y^2");
        assert_eq!(weighted_plane_lnds(1, 1).families.len(), 4);
    }

    #[test]
    fn quadric_lnds_verify() {
        for n in surface_lnds(SurfaceLndCase::CaseC, &default_lambda_samples()) {
            assert!(n.derivation.is_well_defined(), "{}", n.name);
            assert!(n.derivation.nilpotency_check(NilpotencyLimits::default()).is_verified());
            assert!(n.derivation.kernel_member(&n.kernel), "{}", n.name);
        }
        let d0 = quadric_delta_lambda(&GQ::from_int(0)).derivation;
        assert_eq!(d0.image(Var::T(0, 1)), xyz("i*T2_1"));
        assert_eq!(d0.image(Var::T(2, 1)), xyz("-i*T0_1 - T1_1"));
    }
}
