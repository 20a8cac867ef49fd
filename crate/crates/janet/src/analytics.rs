//! Characteristic functions `χ(p)`, their stabilised polynomial with `(λ, μ)`, and the
//! characters `σ_h` with the involution test.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::monomials::{cone_contains, gamma, monomials_of_degree, Monomial, VariableContext};
use crate::polynomials::{q, Polynomial, Q};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalyticsError {
    #[error("generator is not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("no stabilisation detected in degrees {from}..={to}")]
    RangeTooSmall { from: u64, to: u64 },
    #[error("generators do not match the {0} declared variables")]
    Arity(usize),
    #[error("degree must be at least 1")]
    DegreeZero,
}

/// Generators of a homogeneous ideal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Generators {
    Monomials(Vec<Monomial>),
    Polynomials(Vec<Polynomial>),
}

impl Generators {
    /// Monomial generators when every polynomial is a single term.
    pub fn from_polynomials(ps: Vec<Polynomial>) -> Generators {
        if ps.iter().all(|p| p.len() == 1) {
            Generators::Monomials(ps.iter().map(|p| p.terms().next().expect("one term").0.clone()).collect())
        } else {
            Generators::Polynomials(ps)
        }
    }

    fn check(&self, n: usize) -> Result<(), AnalyticsError> {
        match self {
            Generators::Monomials(ms) => {
                if ms.iter().any(|m| m.arity() != n) {
                    return Err(AnalyticsError::Arity(n));
                }
            }
            Generators::Polynomials(ps) => {
                for p in ps {
                    if p.arity() != n {
                        return Err(AnalyticsError::Arity(n));
                    }
                    if !p.is_homogeneous() {
                        return Err(AnalyticsError::NotHomogeneous(p.to_string()));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Independent rows in echelon form, computed by fraction-free elimination over the integers.
#[derive(Clone, Debug, Default)]
struct Echelon {
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in &mut v {
            *x /= &g;
        }
    }
    v
}

impl Echelon {
    fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the current rows and keeps it when something is left.
    fn insert(&mut self, mut v: Vec<BigInt>) -> bool {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let a = row[p].clone();
            let b = v[p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                *x = &*x * &a - &b * y;
            }
            v = primitive(v);
        }
        match v.iter().position(|x| !x.is_zero()) {
            None => false,
            Some(p) => {
                self.rows.push(v);
                self.pivots.push(p);
                true
            }
        }
    }
}

/// Dense coordinates over the degree-`p` monomials.
struct Basis {
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl Basis {
    fn new(n: usize, p: u32) -> Self {
        let monomials = monomials_of_degree(n, p);
        let index = monomials.iter().enumerate().map(|(k, m)| (m.clone(), k)).collect();
        Basis { monomials, index }
    }

    fn vector(&self, f: &Polynomial) -> Vec<BigInt> {
        let den = f.terms().fold(BigInt::one(), |l, (_, c)| l.lcm(c.denom()));
        let mut v = vec![BigInt::zero(); self.monomials.len()];
        for (m, c) in f.terms() {
            v[self.index[m]] = (c * Q::from_integer(den.clone())).to_integer();
        }
        v
    }
}

/// Span of `K[x]_{p-d}·g` over the generators `g` of degree `d ≤ p`, as an echelon basis.
fn component(gens: &[Polynomial], n: usize, p: u32, basis: &Basis) -> Echelon {
    let mut e = Echelon::default();
    for g in gens {
        let Some(d) = g.total_degree() else { continue };
        if d > p as u64 {
            continue;
        }
        for m in monomials_of_degree(n, p - d as u32) {
            e.insert(basis.vector(&g.mul_monomial(&m)));
        }
    }
    e
}

/// `dim I_p` for the ideal generated by `gens`.
pub fn dim_component(gens: &Generators, n: usize, p: u32) -> Result<u128, AnalyticsError> {
    gens.check(n)?;
    Ok(match gens {
        Generators::Monomials(ms) => monomials_of_degree(n, p).iter().filter(|w| cone_contains(ms, w)).count() as u128,
        Generators::Polynomials(ps) => component(ps, n, p, &Basis::new(n, p)).rank() as u128,
    })
}

/// A polynomial in `p` with rational coefficients, lowest power first.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PPolynomial {
    pub coeffs: Vec<Q>,
}

impl PPolynomial {
    fn trimmed(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        PPolynomial { coeffs }
    }

    pub fn eval(&self, p: i64) -> Q {
        self.coeffs.iter().rev().fold(Q::zero(), |acc, c| acc * q(p) + c)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn format(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let var = match k {
                0 => String::new(),
                1 => "p".to_string(),
                _ => format!("p^{k}"),
            };
            if k == 0 {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&var);
            } else {
                out.push_str(&format!("{a}*{var}"));
            }
        }
        out
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CharacteristicProfile {
    pub n: usize,
    /// `(p, χ(p))` for every computed degree.
    pub values: Vec<(u64, u128)>,
    /// First degree from which `stabilized` reproduces every computed value.
    pub stable_from: u64,
    pub stabilized: PPolynomial,
    /// `1 + deg`, or 0 when `χ` is eventually zero.
    pub lambda: u64,
    /// Leading coefficient times `(λ-1)!`.
    pub mu: BigInt,
}

fn binomial(n: u64, k: u64) -> BigInt {
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, k| a * BigInt::from(k))
}

/// `Δ^k f(s)` for integer samples starting at `s`.
fn forward_difference(vals: &[BigInt], k: usize) -> BigInt {
    (0..=k)
        .map(|j| {
            let sign = if (k - j).is_multiple_of(2) {
                BigInt::one()
            } else {
                -BigInt::one()
            };
            sign * binomial(k as u64, j as u64) * &vals[j]
        })
        .sum()
}

/// Newton interpolation through `vals` at `s, s+1, …`, expanded in powers of `p`.
fn newton(vals: &[BigInt], s: u64, degree: usize) -> PPolynomial {
    let mut coeffs = vec![Q::zero(); degree + 1];
    for k in 0..=degree {
        let d = forward_difference(vals, k);
        if d.is_zero() {
            continue;
        }
        // C(p - s, k) = Π_{j<k} (p - s - j) / k!
        let mut basis = vec![Q::one()];
        for j in 0..k {
            let root = q(s as i64 + j as i64);
            let mut next = vec![Q::zero(); basis.len() + 1];
            for (i, b) in basis.iter().enumerate() {
                next[i + 1] += b;
                next[i] -= b * &root;
            }
            basis = next;
        }
        let scale = Q::from_integer(d) / Q::from_integer(factorial(k as u64));
        for (i, b) in basis.iter().enumerate() {
            coeffs[i] += b * &scale;
        }
    }
    PPolynomial::trimmed(coeffs)
}

/// Fits the eventual polynomial of a sequence of `χ` values in `n` variables. The `n`-th
/// differences must vanish on at least three consecutive points.
fn stabilize(n: usize, values: &[(u64, u128)]) -> Option<(u64, PPolynomial)> {
    let ints: Vec<BigInt> = values.iter().map(|(_, v)| BigInt::from(*v)).collect();
    let diffs: Vec<BigInt> = (0..ints.len().saturating_sub(n))
        .map(|s| forward_difference(&ints[s..], n))
        .collect();
    let mut start = diffs.len();
    while start > 0 && diffs[start - 1].is_zero() {
        start -= 1;
    }
    if diffs.len() - start < 3 {
        return None;
    }
    let s = values[start].0;
    let poly = newton(&ints[start..], s, n.saturating_sub(1));
    let exact = values[start..]
        .iter()
        .all(|(p, v)| poly.eval(*p as i64) == Q::from_integer(BigInt::from(*v)));
    exact.then_some((s, poly))
}

pub fn characteristic_function(gens: &Generators, n: usize, from: u64, to: u64) -> Result<CharacteristicProfile, AnalyticsError> {
    gens.check(n)?;
    let mut values = Vec::new();
    for p in from..=to {
        let dim = dim_component(gens, n, p as u32)?;
        values.push((p, gamma(n, p) - dim));
    }
    let (stable_from, stabilized) = stabilize(n, &values).ok_or(AnalyticsError::RangeTooSmall { from, to })?;
    let (lambda, mu) = match stabilized.degree() {
        None => (0, BigInt::zero()),
        Some(d) => {
            let lc = stabilized.coeffs[d].clone() * Q::from_integer(factorial(d as u64));
            (d as u64 + 1, lc.to_integer())
        }
    };
    Ok(CharacteristicProfile {
        n,
        values,
        stable_from,
        stabilized,
        lambda,
        mu,
    })
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CharacterVector {
    pub degree: u64,
    /// Variable indices in the order they were adjoined.
    pub variables: Vec<usize>,
    pub sigma: Vec<u64>,
    pub sigma_prime: Vec<u64>,
    pub sigma_second: Vec<u64>,
}

/// Characters of the span `rows` of degree `deg`: the rank gained by adjoining
/// `x_v·K[x]_{deg-1}` for each `v` of `vars` in turn.
fn span_characters(rows: &Echelon, n: usize, deg: u32, basis: &Basis, vars: &[usize]) -> Vec<u64> {
    let mut e = rows.clone();
    let mut out = Vec::new();
    for &v in vars {
        let before = e.rank();
        for m in monomials_of_degree(n, deg - 1) {
            let w = m.mul_var(v);
            let mut row = vec![BigInt::zero(); basis.monomials.len()];
            row[basis.index[&w]] = BigInt::one();
            e.insert(row);
        }
        out.push((e.rank() - before) as u64);
    }
    out
}

/// `K[x]_k · span(rows)` at degree `from + k`.
fn derived(rows: &Echelon, from: &Basis, n: usize, k: u32, to: &Basis) -> Echelon {
    let mut e = Echelon::default();
    for row in &rows.rows {
        let f = Polynomial::from_terms(
            n,
            row.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(j, c)| (from.monomials[j].clone(), Q::from_integer(c.clone()))),
        );
        for m in monomials_of_degree(n, k) {
            e.insert(to.vector(&f.mul_monomial(&m)));
        }
    }
    e
}

fn as_polynomials(gens: &Generators) -> Vec<Polynomial> {
    match gens {
        Generators::Monomials(ms) => ms.iter().map(|m| Polynomial::monomial(m.clone())).collect(),
        Generators::Polynomials(ps) => ps.clone(),
    }
}

/// `σ`, `σ′` and `σ″` of `I_p`, adjoining variables from the lowest precedence up.
pub fn characters(gens: &Generators, ctx: &VariableContext, p: u64) -> Result<CharacterVector, AnalyticsError> {
    let n = ctx.n();
    gens.check(n)?;
    if p == 0 {
        return Err(AnalyticsError::DegreeZero);
    }
    let p = p as u32;
    let polys = as_polynomials(gens);
    let vars = ctx.lowest_first();
    let b0 = Basis::new(n, p);
    let b1 = Basis::new(n, p + 1);
    let b2 = Basis::new(n, p + 2);
    let ip = component(&polys, n, p, &b0);
    let j1 = derived(&ip, &b0, n, 1, &b1);
    let j2 = derived(&ip, &b0, n, 2, &b2);
    Ok(CharacterVector {
        degree: p as u64,
        sigma: span_characters(&ip, n, p, &b0, &vars),
        sigma_prime: span_characters(&j1, n, p + 1, &b1, &vars),
        sigma_second: span_characters(&j2, n, p + 2, &b2, &vars),
        variables: vars,
    })
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InvolutionTest {
    pub characters: CharacterVector,
    /// `σ′_1 + … + σ′_n`.
    pub lhs: u64,
    /// `σ_1 + 2σ_2 + … + nσ_n`.
    pub rhs: u64,
    pub involutive: bool,
    /// On involution: `σ′_h = σ_h + … + σ_n` and `Σσ″ = Σ hσ′_h`.
    pub propagation: Option<bool>,
}

pub fn is_in_involution(gens: &Generators, ctx: &VariableContext, p: u64) -> Result<InvolutionTest, AnalyticsError> {
    let c = characters(gens, ctx, p)?;
    let weighted = |s: &[u64]| s.iter().enumerate().map(|(h, v)| (h as u64 + 1) * v).sum::<u64>();
    let lhs: u64 = c.sigma_prime.iter().sum();
    let rhs = weighted(&c.sigma);
    let involutive = lhs == rhs;
    let propagation = involutive.then(|| {
        let tails = (0..c.sigma.len()).all(|h| c.sigma_prime[h] == c.sigma[h..].iter().sum::<u64>());
        tails && c.sigma_second.iter().sum::<u64>() == weighted(&c.sigma_prime)
    });
    Ok(InvolutionTest {
        characters: c,
        lhs,
        rhs,
        involutive,
        propagation,
    })
}

/// `Σ_i binom(P - p + i - 1, i - 1) σ_i`, the value of `χ(P)` predicted from characters at `p`.
pub fn chi_from_characters(sigma: &[u64], p: u64, big_p: u64) -> u128 {
    sigma
        .iter()
        .enumerate()
        .map(|(i, s)| binomial(big_p - p + i as u64, i as u64) * BigInt::from(*s))
        .sum::<BigInt>()
        .to_u128()
        .expect("non-negative")
}
