//! Sparse polynomials with exact rational coefficients, classical reduction and a
//! plain Buchberger engine.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::monomials::{Monomial, MonomialError, MonomialOrder, VariableContext};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("zero polynomial where a non-zero one is required")]
    ZeroInput,
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    #[error("cannot parse polynomial `{text}`: {reason}")]
    Parse { text: String, reason: String },
    #[error(transparent)]
    Monomial(#[from] MonomialError),
}

/// Terms keyed by monomial; no zero coefficients are ever stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial {
    n: usize,
    terms: BTreeMap<Monomial, Q>,
}

impl Polynomial {
    pub fn zero(n: usize) -> Self {
        Polynomial {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: Q) -> Self {
        Self::term(Monomial::one(n), c)
    }

    pub fn term(m: Monomial, c: Q) -> Self {
        let n = m.arity();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { n, terms }
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, Q::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Q)>>(n: usize, it: I) -> Self {
        let mut p = Polynomial::zero(n);
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c * m * g`
    pub fn add_scaled(&mut self, c: &Q, m: &Monomial, g: &Polynomial) {
        for (gm, gc) in &g.terms {
            self.add_term(gm.mul(m), c * gc);
        }
    }

    pub fn scale(&self, c: &Q) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.n);
        }
        Polynomial {
            n: self.n,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            n: self.n,
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a.clone())).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Q) -> Polynomial {
        let mut out = Polynomial::zero(self.n);
        out.add_scaled(c, m, self);
        out
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.n);
        for (m, c) in &other.terms {
            out.add_scaled(c, m, self);
        }
        out
    }

    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(&Monomial, &Q)> {
        self.terms.iter().max_by(|a, b| order.compare(a.0, b.0))
    }

    pub fn lm(&self, order: &MonomialOrder) -> Option<&Monomial> {
        self.leading_term(order).map(|(m, _)| m)
    }

    pub fn lc(&self, order: &MonomialOrder) -> Option<&Q> {
        self.leading_term(order).map(|(_, c)| c)
    }

    /// Terms in descending order.
    pub fn sorted_terms(&self, order: &MonomialOrder) -> Vec<(Monomial, Q)> {
        let mut v: Vec<(Monomial, Q)> = self.terms.iter().map(|(m, c)| (m.clone(), c.clone())).collect();
        v.sort_by(|a, b| order.compare(&b.0, &a.0));
        v
    }

    pub fn monic(&self, order: &MonomialOrder) -> Polynomial {
        match self.lc(order) {
            None => self.clone(),
            Some(c) => self.scale(&c.recip()),
        }
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The constant coefficient when the polynomial is constant.
    pub fn as_constant(&self) -> Option<Q> {
        if self.is_constant() {
            Some(self.coeff(&Monomial::one(self.n)))
        } else {
            None
        }
    }

    /// Partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.n);
        for (m, c) in &self.terms {
            let e = m.deg(i);
            if e == 0 {
                continue;
            }
            let mut exps = m.exps().to_vec();
            exps[i] -= 1;
            out.add_term(Monomial::new(exps), c * q(e as i64));
        }
        out
    }

    pub fn format(&self, ctx: &VariableContext, order: &MonomialOrder) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.sorted_terms(order).iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = ctx.format_monomial(m);
            if m.is_one() {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{a}*{mono}"));
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ctx = VariableContext::standard(self.n.max(1));
        write!(f, "{}", self.format(&ctx, &MonomialOrder::deglex(&ctx)))
    }
}

impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Q::one())
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::mul(self, rhs)
    }
}

/// Parses `x2^2 - 2*x1*x2 + 1`, with rational coefficients written `p/q`.
pub fn parse_polynomial(ctx: &VariableContext, text: &str) -> Result<Polynomial, PolyError> {
    let err = |reason: &str| PolyError::Parse {
        text: text.to_string(),
        reason: reason.to_string(),
    };
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(err("empty input"));
    }
    let mut out = Polynomial::zero(ctx.n());
    let bytes = s.as_bytes();
    let mut pos = 0;
    while pos < bytes.len() {
        let mut sign = Q::one();
        if bytes[pos] == b'+' || bytes[pos] == b'-' {
            if bytes[pos] == b'-' {
                sign = -sign;
            }
            pos += 1;
        } else if pos > 0 {
            return Err(err("expected + or -"));
        }
        let end = s[pos..].find(['+', '-']).map(|k| pos + k).unwrap_or(s.len());
        let term = &s[pos..end];
        if term.is_empty() {
            return Err(err("missing term"));
        }
        let mut coeff = sign;
        let mut exps = vec![0u32; ctx.n()];
        for factor in term.split('*') {
            if factor.is_empty() {
                return Err(err("empty factor"));
            }
            if factor.as_bytes()[0].is_ascii_digit() {
                coeff *= parse_rational(factor).ok_or_else(|| err("bad number"))?;
            } else {
                let (name, e) = match factor.split_once('^') {
                    Some((name, e)) => (name, e.parse::<u32>().map_err(|_| err("bad exponent"))?),
                    None => (factor, 1),
                };
                let i = ctx
                    .index_of(name)
                    .ok_or_else(|| PolyError::Monomial(MonomialError::UnknownVariable(name.to_string())))?;
                exps[i] = exps[i].checked_add(e).ok_or(PolyError::Monomial(MonomialError::Overflow))?;
            }
        }
        out.add_term(Monomial::new(exps), coeff);
        pos = end;
    }
    Ok(out)
}

/// `123` or `p/q`.
pub fn parse_rational(s: &str) -> Option<Q> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Q::new(n, d))
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ReductionStep {
    pub reducer: usize,
    pub cofactor: Monomial,
    pub coeff: Q,
}

/// `input = remainder + Σ coeff * cofactor * reducers[reducer]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ReductionTrace {
    pub steps: Vec<ReductionStep>,
    pub remainder: Polynomial,
}

impl ReductionTrace {
    pub fn replay(&self, reducers: &[Polynomial]) -> Polynomial {
        let mut out = self.remainder.clone();
        for s in &self.steps {
            out.add_scaled(&s.coeff, &s.cofactor, &reducers[s.reducer]);
        }
        out
    }
}

fn term_list_cmp(order: &MonomialOrder, a: &Polynomial, b: &Polynomial) -> Ordering {
    let ta = a.sorted_terms(order);
    let tb = b.sorted_terms(order);
    for (x, y) in ta.iter().zip(&tb) {
        let o = order.compare(&x.0, &y.0).then_with(|| x.1.cmp(&y.1));
        if o != Ordering::Equal {
            return o;
        }
    }
    ta.len().cmp(&tb.len())
}

/// Indices of `gs` sorted by leading monomial ascending, then by the full term list.
pub fn reducer_order(gs: &[Polynomial], order: &MonomialOrder) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..gs.len()).filter(|&k| !gs[k].is_zero()).collect();
    idx.sort_by(|&a, &b| {
        order
            .compare(gs[a].lm(order).unwrap(), gs[b].lm(order).unwrap())
            .then_with(|| term_list_cmp(order, &gs[a], &gs[b]))
            .then(a.cmp(&b))
    });
    idx
}

/// Full classical reduction of `f` modulo `gs`, reducing the greatest reducible term first.
pub fn classical_reduce(f: &Polynomial, gs: &[Polynomial], order: &MonomialOrder) -> ReductionTrace {
    let idx = reducer_order(gs, order);
    let leads: Vec<(usize, Monomial, Q)> = idx
        .iter()
        .map(|&k| {
            let (m, c) = gs[k].leading_term(order).unwrap();
            (k, m.clone(), c.clone())
        })
        .collect();
    let mut p = f.clone();
    let mut remainder = Polynomial::zero(f.arity());
    let mut steps = Vec::new();
    while let Some((m, c)) = p.leading_term(order).map(|(m, c)| (m.clone(), c.clone())) {
        match leads.iter().find(|(_, lm, _)| lm.divides(&m)) {
            Some((k, lm, lc)) => {
                let cofactor = lm.quotient(&m).expect("divides");
                let coeff = &c / lc;
                p.add_scaled(&-coeff.clone(), &cofactor, &gs[*k]);
                steps.push(ReductionStep {
                    reducer: *k,
                    cofactor,
                    coeff,
                });
            }
            None => {
                p.add_term(m.clone(), -c.clone());
                remainder.add_term(m, c);
            }
        }
    }
    ReductionTrace { steps, remainder }
}

pub fn s_polynomial(g1: &Polynomial, g2: &Polynomial, order: &MonomialOrder) -> Result<Polynomial, PolyError> {
    let (m1, c1) = g1.leading_term(order).ok_or(PolyError::ZeroInput)?;
    let (m2, c2) = g2.leading_term(order).ok_or(PolyError::ZeroInput)?;
    let mu = m1.lcm(m2);
    let a = g1.mul_term(&m1.quotient(&mu).unwrap(), &c1.recip());
    let b = g2.mul_term(&m2.quotient(&mu).unwrap(), &c2.recip());
    Ok(&a - &b)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct GroebnerCap {
    pub max_pairs: usize,
    pub max_degree: u64,
}

impl Default for GroebnerCap {
    fn default() -> Self {
        GroebnerCap {
            max_pairs: 100_000,
            max_degree: 50,
        }
    }
}

/// A reduced Gröbner basis together with, for each element, cofactors over the input.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroebnerCertificate {
    pub basis: Vec<Polynomial>,
    /// `basis[k] = Σ_j cofactors[k][j] * input[j]`.
    pub cofactors: Vec<Vec<Polynomial>>,
}

/// Reduced, monic Gröbner basis sorted by leading monomial descending.
pub fn buchberger_oracle(fs: &[Polynomial], order: &MonomialOrder, cap: GroebnerCap) -> Result<Vec<Polynomial>, PolyError> {
    buchberger(fs, order, cap, false).map(|c| c.basis)
}

/// As [`buchberger_oracle`], also expressing every output element over the input.
pub fn buchberger_certified(
    fs: &[Polynomial],
    order: &MonomialOrder,
    cap: GroebnerCap,
) -> Result<GroebnerCertificate, PolyError> {
    buchberger(fs, order, cap, true)
}

fn combine(base: &[Polynomial], trace: &ReductionTrace, reps: &[Vec<Polynomial>]) -> Vec<Polynomial> {
    let mut out = base.to_vec();
    for s in &trace.steps {
        for (j, r) in reps[s.reducer].iter().enumerate() {
            let t = r.mul_term(&s.cofactor, &-s.coeff.clone());
            out[j] = &out[j] + &t;
        }
    }
    out
}

fn buchberger(fs: &[Polynomial], order: &MonomialOrder, cap: GroebnerCap, track: bool) -> Result<GroebnerCertificate, PolyError> {
    let n = fs.first().map(Polynomial::arity).ok_or(PolyError::ZeroInput)?;
    if fs.iter().any(Polynomial::is_zero) {
        return Err(PolyError::ZeroInput);
    }
    let m = fs.len();
    let unit = |j: usize, c: Q| -> Vec<Polynomial> {
        (0..m)
            .map(|k| {
                if k == j {
                    Polynomial::constant(n, c.clone())
                } else {
                    Polynomial::zero(n)
                }
            })
            .collect()
    };
    let mut gs: Vec<Polynomial> = Vec::new();
    let mut reps: Vec<Vec<Polynomial>> = Vec::new();
    for (j, f) in fs.iter().enumerate() {
        let lc = f.lc(order).unwrap().clone();
        gs.push(f.monic(order));
        if track {
            reps.push(unit(j, lc.recip()));
        }
    }
    let lm = |g: &Polynomial| g.lm(order).unwrap().clone();
    let mut pairs: Vec<(usize, usize)> = (0..gs.len()).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let mut processed = 0usize;
    while !pairs.is_empty() {
        let best = (0..pairs.len())
            .min_by(|&a, &b| {
                let la = lm(&gs[pairs[a].0]).lcm(&lm(&gs[pairs[a].1]));
                let lb = lm(&gs[pairs[b].0]).lcm(&lm(&gs[pairs[b].1]));
                order
                    .compare(&la, &lb)
                    .then((pairs[a].1, pairs[a].0).cmp(&(pairs[b].1, pairs[b].0)))
            })
            .unwrap();
        let (i, j) = pairs.swap_remove(best);
        processed += 1;
        if processed > cap.max_pairs {
            return Err(PolyError::CapExceeded(format!("more than {} pairs", cap.max_pairs)));
        }
        let (li, lj) = (lm(&gs[i]), lm(&gs[j]));
        if li.gcd(&lj).is_one() {
            continue;
        }
        let s = s_polynomial(&gs[i], &gs[j], order)?;
        let tr = classical_reduce(&s, &gs, order);
        if tr.remainder.is_zero() {
            continue;
        }
        let h = &tr.remainder;
        if h.total_degree().unwrap_or(0) > cap.max_degree {
            return Err(PolyError::CapExceeded(format!("degree above {}", cap.max_degree)));
        }
        let lc = h.lc(order).unwrap().recip();
        if track {
            // s = x_i-multiple of g_i minus x_j-multiple of g_j, both with monic leads
            let mu = li.lcm(&lj);
            let mut base = vec![Polynomial::zero(n); m];
            for (k, r) in reps[i].iter().enumerate() {
                base[k] = &base[k] + &r.mul_monomial(&li.quotient(&mu).unwrap());
            }
            for (k, r) in reps[j].iter().enumerate() {
                base[k] = &base[k] - &r.mul_monomial(&lj.quotient(&mu).unwrap());
            }
            let rep = combine(&base, &tr, &reps);
            reps.push(rep.iter().map(|r| r.scale(&lc)).collect());
        }
        gs.push(h.scale(&lc));
        let k = gs.len() - 1;
        pairs.extend((0..k).map(|i| (i, k)));
    }

    // minimal basis: drop elements whose leading monomial is a multiple of another's
    let mut keep: Vec<usize> = Vec::new();
    for k in 0..gs.len() {
        let lk = lm(&gs[k]);
        let redundant = (0..gs.len()).any(|o| {
            let lo = lm(&gs[o]);
            o != k && lo.divides(&lk) && (lo != lk || o < k)
        });
        if !redundant {
            keep.push(k);
        }
    }
    let mut basis: Vec<Polynomial> = keep.iter().map(|&k| gs[k].clone()).collect();
    let mut brep: Vec<Vec<Polynomial>> = if track {
        keep.iter().map(|&k| reps[k].clone()).collect()
    } else {
        Vec::new()
    };

    // interreduce tails
    for k in 0..basis.len() {
        let others: Vec<Polynomial> = (0..basis.len())
            .map(|o| if o == k { Polynomial::zero(n) } else { basis[o].clone() })
            .collect();
        let tr = classical_reduce(&basis[k], &others, order);
        if track {
            brep[k] = combine(&brep[k], &tr, &brep);
        }
        basis[k] = tr.remainder;
    }
    let mut idx: Vec<usize> = (0..basis.len()).collect();
    idx.sort_by(|&a, &b| order.compare(basis[b].lm(order).unwrap(), basis[a].lm(order).unwrap()));
    Ok(GroebnerCertificate {
        basis: idx.iter().map(|&k| basis[k].clone()).collect(),
        cofactors: if track {
            idx.iter().map(|&k| brep[k].clone()).collect()
        } else {
            Vec::new()
        },
    })
}

/// True when every S-polynomial of `gs` reduces to zero modulo `gs`.
pub fn passes_s_criterion(gs: &[Polynomial], order: &MonomialOrder) -> bool {
    for j in 0..gs.len() {
        for i in 0..j {
            let s = s_polynomial(&gs[i], &gs[j], order).expect("non-zero basis");
            if !classical_reduce(&s, gs, order).remainder.is_zero() {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup() -> (VariableContext, MonomialOrder) {
        let ctx = VariableContext::standard(2);
        let o = MonomialOrder::deglex(&ctx);
        (ctx, o)
    }

    fn p(ctx: &VariableContext, s: &str) -> Polynomial {
        parse_polynomial(ctx, s).unwrap()
    }

    #[test]
    fn parse_and_print() {
        let (ctx, o) = setup();
        let f = p(&ctx, "x2^2 - 2*x1*x2 + 1");
        assert_eq!(f.format(&ctx, &o), "x2^2 - 2*x2*x1 + 1");
        let g = p(&ctx, "2/3*x1 + 1/3*x2 + x1^3");
        assert_eq!(g.format(&ctx, &o), "x1^3 + 1/3*x2 + 2/3*x1");
        assert_eq!(p(&ctx, "x1 - x1").format(&ctx, &o), "0");
        assert!(parse_polynomial(&ctx, "x1 +").is_err());
        assert!(parse_polynomial(&ctx, "x3").is_err());
        assert!(parse_polynomial(&ctx, "1/0").is_err());
    }

    #[test]
    fn reduce_member_of_set() {
        let (ctx, o) = setup();
        let g = vec![p(&ctx, "x1"), p(&ctx, "x2")];
        assert!(classical_reduce(&p(&ctx, "x1*x2"), &g, &o).remainder.is_zero());
        assert!(classical_reduce(&g[1], &g, &o).remainder.is_zero());
    }

    #[test]
    fn trace_replays() {
        let (ctx, o) = setup();
        let g = vec![p(&ctx, "x2^2 - 2*x1*x2 + 1"), p(&ctx, "x1*x2 - 3*x1^2 - 1")];
        let f = p(&ctx, "x2^3*x1 + 5*x1^2 - 7/2");
        let tr = classical_reduce(&f, &g, &o);
        assert_eq!(tr.replay(&g), f);
    }

    #[test]
    fn s_polynomial_of_the_two_generators() {
        let (ctx, o) = setup();
        let g1 = p(&ctx, "x2^2 - 2*x1*x2 + 1");
        let g2 = p(&ctx, "x1*x2 - 3*x1^2 - 1");
        let s = s_polynomial(&g1, &g2, &o).unwrap();
        assert_eq!(s, p(&ctx, "x1^2*x2 + x1 + x2"));
        assert!(s_polynomial(&g1, &g1, &o).unwrap().is_zero());
        assert_eq!(s_polynomial(&g1, &Polynomial::zero(2), &o), Err(PolyError::ZeroInput));
    }

    #[test]
    fn reduced_basis_of_the_worked_example() {
        let (ctx, o) = setup();
        let fs = vec![p(&ctx, "x2^2 - 2*x1*x2 + 1"), p(&ctx, "x1*x2 - 3*x1^2 - 1")];
        let gb = buchberger_oracle(&fs, &o, GroebnerCap::default()).unwrap();
        let want = vec![
            p(&ctx, "x1^3 + 2/3*x1 + 1/3*x2"),
            p(&ctx, "x2^2 - 6*x1^2 - 1"),
            p(&ctx, "x1*x2 - 3*x1^2 - 1"),
        ];
        assert_eq!(gb, want);
        assert!(passes_s_criterion(&gb, &o));
    }

    #[test]
    fn certificate_expresses_basis_over_input() {
        let (ctx, o) = setup();
        let fs = vec![p(&ctx, "x2^2 - 2*x1*x2 + 1"), p(&ctx, "x1*x2 - 3*x1^2 - 1")];
        let cert = buchberger_certified(&fs, &o, GroebnerCap::default()).unwrap();
        for (g, rep) in cert.basis.iter().zip(&cert.cofactors) {
            let mut sum = Polynomial::zero(2);
            for (h, f) in rep.iter().zip(&fs) {
                sum = &sum + &h.mul(f);
            }
            assert_eq!(&sum, g);
        }
        for f in &fs {
            assert!(classical_reduce(f, &cert.basis, &o).remainder.is_zero());
        }
    }

    #[test]
    fn monomial_input_gives_minimal_generators() {
        let (ctx, o) = setup();
        let fs = vec![p(&ctx, "3*x1"), p(&ctx, "x1*x2"), p(&ctx, "-x2^2")];
        let gb = buchberger_oracle(&fs, &o, GroebnerCap::default()).unwrap();
        assert_eq!(gb, vec![p(&ctx, "x2^2"), p(&ctx, "x1")]);
    }

    #[test]
    fn derivative_and_constants() {
        let (ctx, _) = setup();
        let f = p(&ctx, "x1^3*x2 + 2*x2 + 5");
        assert_eq!(f.derivative(0), p(&ctx, "3*x1^2*x2"));
        assert_eq!(p(&ctx, "7/2").as_constant(), Some(q_frac(7, 2)));
        assert!(f.as_constant().is_none());
    }
}
