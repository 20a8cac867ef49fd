#![allow(dead_code)]

use std::path::PathBuf;

use janet::monomials::{Monomial, VariableContext};
use janet::polynomials::{Polynomial, Q};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn fixture(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    std::fs::read_to_string(p).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn monomial(rng: &mut ChaCha8Rng, n: usize, max_deg: u32) -> Monomial {
    let d = rng.gen_range(0..=max_deg);
    let mut exps = vec![0u32; n];
    for _ in 0..d {
        exps[rng.gen_range(0..n)] += 1;
    }
    Monomial::new(exps)
}

/// `k` monomials of degree at most `max_deg`, none equal to 1.
pub fn monomial_set(rng: &mut ChaCha8Rng, n: usize, k: usize, max_deg: u32) -> Vec<Monomial> {
    (0..k)
        .map(|_| loop {
            let m = monomial(rng, n, max_deg);
            if !m.is_one() {
                break m;
            }
        })
        .collect()
}

pub fn polynomial(rng: &mut ChaCha8Rng, n: usize, max_deg: u32, terms: usize) -> Polynomial {
    let mut p = Polynomial::zero(n);
    for _ in 0..terms {
        let c: i64 = rng.gen_range(-3..=3);
        p.add_term(monomial(rng, n, max_deg), Q::from_integer(c.into()));
    }
    p
}

pub fn nonzero_polynomial(rng: &mut ChaCha8Rng, n: usize, max_deg: u32, terms: usize) -> Polynomial {
    loop {
        let p = polynomial(rng, n, max_deg, terms);
        if !p.is_zero() {
            return p;
        }
    }
}

fn homogeneous(rng: &mut ChaCha8Rng, n: usize, deg: u32, terms: usize) -> Polynomial {
    loop {
        let mut p = Polynomial::zero(n);
        for _ in 0..terms {
            let mut exps = vec![0u32; n];
            for _ in 0..deg {
                exps[rng.gen_range(0..n)] += 1;
            }
            let c: i64 = rng.gen_range(-3..=3);
            p.add_term(Monomial::new(exps), Q::from_integer(c.into()));
        }
        if !p.is_zero() {
            return p;
        }
    }
}

/// A random ideal: `n <= 3` variables, generators of degree `<= 4`, at most five of them.
/// Half of the ideals are homogeneous, hence proper.
pub fn ideal(rng: &mut ChaCha8Rng) -> (VariableContext, Vec<Polynomial>) {
    let n = rng.gen_range(1..=3);
    let k = rng.gen_range(1..=5);
    let graded = rng.gen_bool(0.5);
    let gens = (0..k)
        .map(|_| {
            let terms = rng.gen_range(1..=3);
            if graded {
                let d = rng.gen_range(1..=4);
                homogeneous(rng, n, d, terms)
            } else {
                nonzero_polynomial(rng, n, 4, terms)
            }
        })
        .collect();
    (VariableContext::standard(n), gens)
}

/// `Σ h_i f_i` with small random multipliers.
pub fn combination(rng: &mut ChaCha8Rng, fs: &[Polynomial]) -> Polynomial {
    let n = fs[0].arity();
    let mut out = Polynomial::zero(n);
    for f in fs {
        let h = polynomial(rng, n, 2, 2);
        out = &out + &h.mul(f);
    }
    out
}
