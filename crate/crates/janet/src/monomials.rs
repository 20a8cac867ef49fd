//! Monomials over a fixed variable context, variable precedence and monomial orders.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonomialError {
    #[error("{divisor} does not divide {dividend}")]
    NotDivisible { divisor: String, dividend: String },
    #[error("exponent overflow")]
    Overflow,
    #[error("arity mismatch: expected {expected} exponents, found {found}")]
    Arity { expected: usize, found: usize },
    #[error("duplicate variable name `{0}`")]
    DuplicateName(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("precedence is not a permutation of the variables")]
    BadPrecedence,
    #[error("a variable context needs at least one variable")]
    NoVariables,
    #[error("weight matrix must have at least one row of {0} entries")]
    BadWeights(usize),
    #[error("cannot parse monomial `{0}`")]
    Parse(String),
}

/// Exponent vector indexed by variable `0..n` (variable `x_{i+1}` lives at index `i`).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn one(n: usize) -> Self {
        Monomial { exps: vec![0; n] }
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut exps = vec![0; n];
        exps[i] = 1;
        Monomial { exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn arity(&self) -> usize {
        self.exps.len()
    }

    pub fn deg(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Indices of the variables with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }

    pub fn divides(&self, w: &Monomial) -> bool {
        debug_assert_eq!(self.arity(), w.arity());
        self.exps.iter().zip(&w.exps).all(|(a, b)| a <= b)
    }

    /// The monomial `v` with `w = self * v`.
    pub fn quotient(&self, w: &Monomial) -> Result<Monomial, MonomialError> {
        if self.arity() != w.arity() {
            return Err(MonomialError::Arity {
                expected: self.arity(),
                found: w.arity(),
            });
        }
        if !self.divides(w) {
            return Err(MonomialError::NotDivisible {
                divisor: format!("{:?}", self.exps),
                dividend: format!("{:?}", w.exps),
            });
        }
        Ok(Monomial {
            exps: self.exps.iter().zip(&w.exps).map(|(a, b)| b - a).collect(),
        })
    }

    pub fn try_mul(&self, other: &Monomial) -> Result<Monomial, MonomialError> {
        if self.arity() != other.arity() {
            return Err(MonomialError::Arity {
                expected: self.arity(),
                found: other.arity(),
            });
        }
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a.checked_add(*b).ok_or(MonomialError::Overflow))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Monomial { exps })
    }

    /// Product; exponent overflow is a hard error and panics.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.try_mul(other).expect("monomial exponent overflow")
    }

    pub fn mul_var(&self, i: usize) -> Monomial {
        let mut exps = self.exps.clone();
        exps[i] = exps[i].checked_add(1).expect("monomial exponent overflow");
        Monomial { exps }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect(),
        }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| *a.min(b)).collect(),
        }
    }

    /// True when every variable occurring in `self` belongs to `vars`.
    pub fn only_in(&self, vars: &VarSet) -> bool {
        self.support().all(|i| vars.contains(i))
    }
}

/// A subset of the variables, stored as a bit mask (at most 64 variables).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct VarSet(u64);

impl VarSet {
    pub const MAX_VARS: usize = 64;

    pub fn empty() -> Self {
        VarSet(0)
    }

    pub fn all(n: usize) -> Self {
        if n >= 64 {
            VarSet(u64::MAX)
        } else {
            VarSet((1u64 << n) - 1)
        }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        let mut s = VarSet(0);
        for i in it {
            s.insert(i);
        }
        s
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1 << i);
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn union(&self, other: &VarSet) -> VarSet {
        VarSet(self.0 | other.0)
    }

    pub fn intersection(&self, other: &VarSet) -> VarSet {
        VarSet(self.0 & other.0)
    }

    pub fn is_subset(&self, other: &VarSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Complement inside the first `n` variables.
    pub fn complement(&self, n: usize) -> VarSet {
        VarSet(!self.0 & VarSet::all(n).0)
    }

    /// Members in increasing index order.
    pub fn indices(&self) -> Vec<usize> {
        (0..64).filter(|&i| self.contains(i)).collect()
    }
}

/// Variable names together with a strict ranking of the variables.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VariableContext {
    names: Vec<String>,
    /// Variable indices from highest to lowest precedence.
    desc: Vec<usize>,
}

impl VariableContext {
    /// Names in index order; the last variable has the highest precedence.
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self, MonomialError> {
        let n = names.len();
        Self::with_precedence(names, (0..n).rev().collect())
    }

    /// `desc` lists variable indices from highest to lowest precedence.
    pub fn with_precedence<S: AsRef<str>>(names: &[S], desc: Vec<usize>) -> Result<Self, MonomialError> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        if names.is_empty() {
            return Err(MonomialError::NoVariables);
        }
        if names.len() > VarSet::MAX_VARS {
            return Err(MonomialError::Arity {
                expected: VarSet::MAX_VARS,
                found: names.len(),
            });
        }
        let mut seen = HashSet::new();
        for name in &names {
            if !seen.insert(name.clone()) {
                return Err(MonomialError::DuplicateName(name.clone()));
            }
        }
        let mut hit = vec![false; names.len()];
        if desc.len() != names.len() {
            return Err(MonomialError::BadPrecedence);
        }
        for &i in &desc {
            if i >= names.len() || hit[i] {
                return Err(MonomialError::BadPrecedence);
            }
            hit[i] = true;
        }
        Ok(VariableContext { names, desc })
    }

    /// Variables `x1..xn` with `xn > … > x1`.
    pub fn standard(n: usize) -> Self {
        let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        Self::new(&names).expect("standard context")
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|s| s == name)
    }

    /// Variable indices from highest to lowest precedence.
    pub fn highest_first(&self) -> &[usize] {
        &self.desc
    }

    /// Variable indices from lowest to highest precedence.
    pub fn lowest_first(&self) -> Vec<usize> {
        self.desc.iter().rev().copied().collect()
    }

    /// Position of variable `i` counted from the bottom: the lowest variable has rank 0.
    pub fn rank(&self, i: usize) -> usize {
        let pos = self.desc.iter().position(|&v| v == i).expect("variable index");
        self.desc.len() - 1 - pos
    }

    pub fn one(&self) -> Monomial {
        Monomial::one(self.n())
    }

    pub fn var(&self, i: usize) -> Monomial {
        Monomial::var(self.n(), i)
    }

    pub fn monomial(&self, exps: Vec<u32>) -> Result<Monomial, MonomialError> {
        if exps.len() != self.n() {
            return Err(MonomialError::Arity {
                expected: self.n(),
                found: exps.len(),
            });
        }
        Ok(Monomial::new(exps))
    }

    /// Renders `x3^3*x1^2`, highest-precedence variables first; `1` for the unit.
    pub fn format_monomial(&self, m: &Monomial) -> String {
        let parts: Vec<String> = self
            .desc
            .iter()
            .filter(|&&i| m.deg(i) > 0)
            .map(|&i| match m.deg(i) {
                1 => self.names[i].clone(),
                e => format!("{}^{}", self.names[i], e),
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    pub fn format_varset(&self, s: &VarSet) -> Vec<String> {
        self.desc
            .iter()
            .filter(|&&i| s.contains(i))
            .map(|&i| self.names[i].clone())
            .collect()
    }

    pub fn parse_monomial(&self, text: &str) -> Result<Monomial, MonomialError> {
        let text = text.trim();
        let mut exps = vec![0u32; self.n()];
        if text == "1" {
            return Ok(Monomial::new(exps));
        }
        if text.is_empty() {
            return Err(MonomialError::Parse(text.to_string()));
        }
        for factor in text.split('*') {
            let factor = factor.trim();
            let (name, e) = match factor.split_once('^') {
                Some((name, e)) => {
                    let e: u32 = e.trim().parse().map_err(|_| MonomialError::Parse(text.to_string()))?;
                    (name.trim(), e)
                }
                None => (factor, 1),
            };
            let i = self
                .index_of(name)
                .ok_or_else(|| MonomialError::UnknownVariable(name.to_string()))?;
            exps[i] = exps[i].checked_add(e).ok_or(MonomialError::Overflow)?;
        }
        Ok(Monomial::new(exps))
    }
}

/// Rows of non-negative weights, one entry per variable.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeightMatrix {
    rows: Vec<Vec<u64>>,
}

impl WeightMatrix {
    pub fn new(rows: Vec<Vec<u64>>, n: usize) -> Result<Self, MonomialError> {
        if rows.is_empty() || rows.iter().any(|r| r.len() != n) {
            return Err(MonomialError::BadWeights(n));
        }
        Ok(WeightMatrix { rows })
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    /// The weighted degrees `Σ_i α_i C_{i,k}` of `m`, one per row.
    pub fn weights(&self, m: &Monomial) -> Vec<u128> {
        self.rows
            .iter()
            .map(|row| row.iter().zip(m.exps()).map(|(&c, &a)| c as u128 * a as u128).sum())
            .collect()
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum OrderKind {
    Lex,
    DegLex,
    Weight(WeightMatrix),
}

/// A monomial order bound to a variable precedence.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MonomialOrder {
    kind: OrderKind,
    desc: Vec<usize>,
}

impl MonomialOrder {
    pub fn new(kind: OrderKind, ctx: &VariableContext) -> Self {
        MonomialOrder {
            kind,
            desc: ctx.highest_first().to_vec(),
        }
    }

    pub fn lex(ctx: &VariableContext) -> Self {
        Self::new(OrderKind::Lex, ctx)
    }

    pub fn deglex(ctx: &VariableContext) -> Self {
        Self::new(OrderKind::DegLex, ctx)
    }

    pub fn weight(weights: WeightMatrix, ctx: &VariableContext) -> Self {
        Self::new(OrderKind::Weight(weights), ctx)
    }

    pub fn kind(&self) -> &OrderKind {
        &self.kind
    }

    fn lex_cmp(&self, u: &Monomial, v: &Monomial) -> Ordering {
        for &i in &self.desc {
            match u.deg(i).cmp(&v.deg(i)) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }

    pub fn compare(&self, u: &Monomial, v: &Monomial) -> Ordering {
        match &self.kind {
            OrderKind::Lex => self.lex_cmp(u, v),
            OrderKind::DegLex => u.degree().cmp(&v.degree()).then_with(|| self.lex_cmp(u, v)),
            OrderKind::Weight(w) => u
                .degree()
                .cmp(&v.degree())
                .then_with(|| w.weights(u).cmp(&w.weights(v)))
                .then_with(|| self.lex_cmp(u, v)),
        }
    }

    pub fn sort_desc(&self, ms: &mut [Monomial]) {
        ms.sort_by(|a, b| self.compare(b, a));
    }

    pub fn sort_asc(&self, ms: &mut [Monomial]) {
        ms.sort_by(|a, b| self.compare(a, b));
    }
}

/// `Γ_n^p`: the number of monomials of degree `p` in `n` variables.
pub fn gamma(n: usize, p: u64) -> u128 {
    assert!(n >= 1, "gamma needs at least one variable");
    let mut acc: u128 = 1;
    for k in 1..n as u128 {
        acc = acc * (p as u128 + k) / k;
    }
    acc
}

/// All monomials of total degree `p` in `n` variables, in a fixed enumeration order.
pub fn monomials_of_degree(n: usize, p: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(Monomial::new(cur.clone()));
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, p, &mut cur, &mut out);
    out
}

pub fn monomials_up_to_degree(n: usize, p: u32) -> Vec<Monomial> {
    (0..=p).flat_map(|d| monomials_of_degree(n, d)).collect()
}

/// Removes duplicates, keeping first occurrences.
pub fn dedup(us: &[Monomial]) -> Vec<Monomial> {
    let mut seen = HashSet::new();
    us.iter().filter(|u| seen.insert((*u).clone())).cloned().collect()
}

/// Elements of `us` that are not proper multiples of another element.
pub fn minimal_generators(us: &[Monomial]) -> Vec<Monomial> {
    let us = dedup(us);
    us.iter()
        .filter(|u| !us.iter().any(|v| v != *u && v.divides(u)))
        .cloned()
        .collect()
}

pub fn cone_contains(us: &[Monomial], w: &Monomial) -> bool {
    us.iter().any(|u| u.divides(w))
}

pub fn max_degree(us: &[Monomial]) -> u64 {
    us.iter().map(Monomial::degree).max().unwrap_or(0)
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = (0..self.arity())
            .rev()
            .filter(|&i| self.deg(i) > 0)
            .map(|i| match self.deg(i) {
                1 => format!("x{}", i + 1),
                e => format!("x{}^{}", i + 1, e),
            })
            .collect();
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn quotient_cases() {
        assert_eq!(m(&[1, 0]).quotient(&m(&[1, 1])).unwrap(), m(&[0, 1]));
        assert!(m(&[2, 3]).quotient(&m(&[2, 3])).unwrap().is_one());
        assert!(matches!(
            m(&[0, 2]).quotient(&m(&[1, 1])),
            Err(MonomialError::NotDivisible { .. })
        ));
    }

    #[test]
    fn overflow_is_an_error() {
        let big = m(&[u32::MAX, 0]);
        assert_eq!(big.try_mul(&m(&[1, 0])), Err(MonomialError::Overflow));
    }

    #[test]
    fn deglex_ranks_x2_squared_above_x1x2() {
        let ctx = VariableContext::standard(2);
        let o = MonomialOrder::deglex(&ctx);
        assert_eq!(o.compare(&m(&[0, 2]), &m(&[1, 1])), Ordering::Greater);
        assert_eq!(o.compare(&m(&[1, 1]), &m(&[1, 1])), Ordering::Equal);
    }

    #[test]
    fn weight_rows_break_degree_ties() {
        let ctx = VariableContext::standard(5);
        let w = WeightMatrix::new(vec![vec![1, 0, 1, 1, 2], vec![0, 0, 0, 1, 1]], 5).unwrap();
        let o = MonomialOrder::weight(w, &ctx);
        let p44 = m(&[0, 0, 0, 2, 0]);
        let p52 = m(&[0, 1, 0, 0, 1]);
        assert_eq!(o.compare(&p44, &p52), Ordering::Greater);
        // plain deglex disagrees
        assert_eq!(MonomialOrder::deglex(&ctx).compare(&p44, &p52), Ordering::Less);
    }

    #[test]
    fn precedence_changes_lex() {
        let ctx = VariableContext::with_precedence(&["x1", "x2"], vec![0, 1]).unwrap();
        let o = MonomialOrder::lex(&ctx);
        assert_eq!(o.compare(&m(&[1, 0]), &m(&[0, 5])), Ordering::Greater);
        assert_eq!(ctx.rank(0), 1);
        assert_eq!(ctx.format_monomial(&m(&[2, 1])), "x1^2*x2");
    }

    #[test]
    fn gamma_small_values() {
        assert_eq!(gamma(1, 7), 1);
        assert_eq!(gamma(3, 2), 6);
        assert_eq!(gamma(4, 0), 1);
        for n in 1..=5 {
            for p in 0..=8u32 {
                assert_eq!(gamma(n, p as u64), monomials_of_degree(n, p).len() as u128);
            }
        }
    }

    #[test]
    fn minimal_generators_drop_multiples() {
        let got = minimal_generators(&[m(&[1, 0]), m(&[1, 1]), m(&[2, 0])]);
        assert_eq!(got, vec![m(&[1, 0])]);
        let anti = vec![m(&[0, 2, 1]), m(&[2, 0, 3])];
        assert_eq!(minimal_generators(&anti), anti);
    }

    #[test]
    fn parse_and_format_round_trip() {
        let ctx = VariableContext::standard(3);
        let u = ctx.parse_monomial("x3^3*x1^2").unwrap();
        assert_eq!(u, m(&[2, 0, 3]));
        assert_eq!(ctx.format_monomial(&u), "x3^3*x1^2");
        assert!(ctx.parse_monomial("1").unwrap().is_one());
        assert!(matches!(ctx.parse_monomial("y2"), Err(MonomialError::UnknownVariable(_))));
        assert!(ctx.parse_monomial("x1^").is_err());
    }

    #[test]
    fn cone_membership() {
        let us = vec![m(&[0, 2, 1]), m(&[2, 0, 3])];
        assert!(cone_contains(&us, &m(&[0, 3, 2])));
        assert!(!cone_contains(&[], &m(&[0, 0, 0])));
    }

    #[test]
    fn varset_ops() {
        let s = VarSet::from_indices([0, 2]);
        assert!(s.contains(2) && !s.contains(1));
        assert_eq!(s.complement(3), VarSet::from_indices([1]));
        assert_eq!(s.len(), 2);
    }
}
