#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use trinomial_lnd::poly::{Monomial, Poly, Var};
use trinomial_lnd::presentation::Presentation;
use trinomial_lnd::scalar::GaussianRational;

pub fn gq(text: &str) -> GaussianRational {
    trinomial_lnd::scalar::gq_parse(text).unwrap()
}

pub fn poly(text: &str) -> Poly {
    trinomial_lnd::poly::parse_poly(text).unwrap()
}

/// Random polynomial in the generators of `p` with small Gaussian integer coefficients.
pub fn random_poly(rng: &mut ChaCha8Rng, p: &Presentation, terms: usize, max_degree: u32) -> Poly {
    let vars: Vec<Var> = p.generators();
    let mut out = Poly::zero();
    for _ in 0..terms {
        let degree = rng.gen_range(0..=max_degree);
        let m = Monomial::from_pairs((0..degree).map(|_| (vars[rng.gen_range(0..vars.len())], 1)));
        let c = GaussianRational::gaussian(rng.gen_range(-3..=3), rng.gen_range(-2..=2));
        out = &out + &Poly::term(c, m);
    }
    out
}
