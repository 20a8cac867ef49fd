//! Linear differential expressions with polynomial coefficients, differential operators
//! acting on them, and linear traces over a family of expressions.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::derivative::{DerivativeKey, DerivativeOrder};
use crate::monomials::{Monomial, MonomialOrder, VariableContext};
use crate::polynomials::{Polynomial, Q};

/// `Σ c_k(x) · k` over derivative keys `k`, coefficients polynomial in the variables.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearExpr {
    n: usize,
    terms: BTreeMap<DerivativeKey, Polynomial>,
}

impl LinearExpr {
    pub fn zero(n: usize) -> Self {
        LinearExpr {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn key(k: DerivativeKey) -> Self {
        let n = k.alpha.arity();
        Self::term(k, Polynomial::constant(n, Q::one()))
    }

    pub fn term(k: DerivativeKey, c: Polynomial) -> Self {
        let mut e = Self::zero(k.alpha.arity());
        e.add_term(k, &c);
        e
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

    pub fn terms(&self) -> impl Iterator<Item = (&DerivativeKey, &Polynomial)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &DerivativeKey> {
        self.terms.keys()
    }

    pub fn coeff(&self, k: &DerivativeKey) -> Polynomial {
        self.terms.get(k).cloned().unwrap_or_else(|| Polynomial::zero(self.n))
    }

    pub fn add_term(&mut self, k: DerivativeKey, c: &Polynomial) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.get(&k) {
            Some(old) => old + c,
            None => c.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&k);
        } else {
            self.terms.insert(k, sum);
        }
    }

    /// `self += c · other`.
    pub fn add_mul(&mut self, c: &Polynomial, other: &LinearExpr) {
        for (k, d) in &other.terms {
            self.add_term(k.clone(), &c.mul(d));
        }
    }

    pub fn add(&self, other: &LinearExpr) -> LinearExpr {
        let mut out = self.clone();
        out.add_mul(&Polynomial::constant(self.n, Q::one()), other);
        out
    }

    pub fn sub(&self, other: &LinearExpr) -> LinearExpr {
        let mut out = self.clone();
        out.add_mul(&Polynomial::constant(self.n, -Q::one()), other);
        out
    }

    pub fn scale(&self, c: &Q) -> LinearExpr {
        self.mul_poly(&Polynomial::constant(self.n, c.clone()))
    }

    pub fn mul_poly(&self, c: &Polynomial) -> LinearExpr {
        let mut out = LinearExpr::zero(self.n);
        out.add_mul(c, self);
        out
    }

    /// `∂/∂x_i` by the product rule.
    pub fn derive(&self, i: usize) -> LinearExpr {
        let mut out = LinearExpr::zero(self.n);
        for (k, c) in &self.terms {
            out.add_term(k.shift(&Monomial::var(self.n, i)), c);
            out.add_term(k.clone(), &c.derivative(i));
        }
        out
    }

    /// `D^γ` applied to the expression.
    pub fn apply(&self, gamma: &Monomial) -> LinearExpr {
        let mut out = self.clone();
        for i in 0..self.n {
            for _ in 0..gamma.deg(i) {
                out = out.derive(i);
            }
        }
        out
    }

    pub fn lead(&self, order: &DerivativeOrder) -> Option<(&DerivativeKey, &Polynomial)> {
        self.terms.iter().max_by(|a, b| order.compare(a.0, b.0))
    }

    pub fn lead_key(&self, order: &DerivativeOrder) -> Option<&DerivativeKey> {
        self.lead(order).map(|(k, _)| k)
    }

    /// Terms sorted from the greatest key down.
    pub fn sorted(&self, order: &DerivativeOrder) -> Vec<(DerivativeKey, Polynomial)> {
        let mut v: Vec<_> = self.terms.iter().map(|(k, c)| (k.clone(), c.clone())).collect();
        v.sort_by(|a, b| order.compare(&b.0, &a.0));
        v
    }

    /// Divides by the leading coefficient when it is a non-zero constant.
    pub fn normalize(&self, order: &DerivativeOrder) -> Option<(LinearExpr, Q)> {
        let (_, c) = self.lead(order)?;
        let c = c.as_constant().filter(|c| !c.is_zero())?;
        Some((self.scale(&(Q::one() / &c)), c))
    }

    pub fn max_order(&self) -> u64 {
        self.terms.keys().map(DerivativeKey::order).max().unwrap_or(0)
    }

    pub fn has_constant_coefficients(&self) -> bool {
        self.terms.values().all(Polynomial::is_constant)
    }

    /// Text such as `p33 - x2*p11` (greatest key first).
    pub fn format(&self, ctx: &VariableContext, unknowns: &[String], order: &DerivativeOrder) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mono = MonomialOrder::deglex(ctx);
        let mut out = String::new();
        for (pos, (k, c)) in self.sorted(order).iter().enumerate() {
            let key = format_key(ctx, unknowns, k);
            let (neg, body) = match c.as_constant() {
                Some(q) if q.is_one() => (false, key),
                Some(q) if (-q.clone()).is_one() => (true, key),
                Some(q) if q < Q::zero() => (true, format!("{}*{key}", -q)),
                Some(q) => (false, format!("{q}*{key}")),
                None if c.len() == 1 && c.terms().all(|(_, q)| *q < Q::zero()) => {
                    (true, format!("{}*{key}", (-c).format(ctx, &mono)))
                }
                None if c.len() == 1 => (false, format!("{}*{key}", c.format(ctx, &mono))),
                None => (false, format!("({})*{key}", c.format(ctx, &mono))),
            };
            match (pos, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            out.push_str(&body);
        }
        out
    }
}

/// `p211`-style names when there is one unknown and at most nine variables,
/// the unknown's name at order zero, `d[a1,..,an] u` otherwise.
pub fn format_key(ctx: &VariableContext, unknowns: &[String], k: &DerivativeKey) -> String {
    let name = unknowns.get(k.r).cloned().unwrap_or_else(|| format!("u{}", k.r + 1));
    if k.alpha.is_one() {
        return name;
    }
    if unknowns.len() == 1 && ctx.n() <= 9 {
        let mut s = String::from("p");
        for i in (0..ctx.n()).rev() {
            for _ in 0..k.alpha.deg(i) {
                s.push_str(&(i + 1).to_string());
            }
        }
        return s;
    }
    let idx: Vec<String> = k.alpha.exps().iter().map(u32::to_string).collect();
    format!("d[{}] {name}", idx.join(","))
}

/// A differential operator `Σ c_γ(x) ∂^γ`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Operator {
    n: usize,
    terms: BTreeMap<Monomial, Polynomial>,
}

impl Operator {
    pub fn zero(n: usize) -> Self {
        Operator {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::term(Monomial::one(n), Polynomial::constant(n, Q::one()))
    }

    pub fn term(gamma: Monomial, c: Polynomial) -> Self {
        let mut op = Operator::zero(gamma.arity());
        op.add_term(gamma, &c);
        op
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Polynomial)> {
        self.terms.iter()
    }

    fn add_term(&mut self, gamma: Monomial, c: &Polynomial) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.get(&gamma) {
            Some(old) => old + c,
            None => c.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&gamma);
        } else {
            self.terms.insert(gamma, sum);
        }
    }

    /// `self += c ∘ other` with `c` a multiplication operator.
    pub fn add_mul(&mut self, c: &Polynomial, other: &Operator) {
        for (g, d) in &other.terms {
            self.add_term(g.clone(), &c.mul(d));
        }
    }

    /// `∂_i ∘ self`.
    pub fn derive(&self, i: usize) -> Operator {
        let mut out = Operator::zero(self.n);
        for (g, c) in &self.terms {
            out.add_term(g.mul_var(i), c);
            out.add_term(g.clone(), &c.derivative(i));
        }
        out
    }

    /// `D^γ ∘ self`.
    pub fn compose(&self, gamma: &Monomial) -> Operator {
        let mut out = self.clone();
        for i in 0..self.n {
            for _ in 0..gamma.deg(i) {
                out = out.derive(i);
            }
        }
        out
    }

    pub fn apply(&self, e: &LinearExpr) -> LinearExpr {
        let mut out = LinearExpr::zero(e.arity());
        for (g, c) in &self.terms {
            out.add_mul(c, &e.apply(g));
        }
        out
    }
}

/// `Σ_id Op_id(E_id)`: a certified linear consequence of the expressions indexed by `id`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Trace {
    pub parts: BTreeMap<usize, Operator>,
}

impl Trace {
    pub fn empty() -> Self {
        Trace::default()
    }

    pub fn single(id: usize, n: usize) -> Self {
        let mut t = Trace::empty();
        t.parts.insert(id, Operator::identity(n));
        t
    }

    pub fn add_mul(&mut self, c: &Polynomial, other: &Trace) {
        for (id, op) in &other.parts {
            let n = c.arity();
            let entry = self.parts.entry(*id).or_insert_with(|| Operator::zero(n));
            entry.add_mul(c, op);
        }
        self.parts.retain(|_, op| !op.is_zero());
    }

    pub fn derive(&self, i: usize) -> Trace {
        let mut t = Trace::empty();
        for (id, op) in &self.parts {
            let d = op.derive(i);
            if !d.is_zero() {
                t.parts.insert(*id, d);
            }
        }
        t
    }

    pub fn compose(&self, gamma: &Monomial) -> Trace {
        let mut t = self.clone();
        for i in 0..gamma.arity() {
            for _ in 0..gamma.deg(i) {
                t = t.derive(i);
            }
        }
        t
    }

    /// Evaluates the trace against `exprs(id)`.
    pub fn replay<'a, F: Fn(usize) -> &'a LinearExpr>(&self, n: usize, exprs: F) -> LinearExpr {
        let mut out = LinearExpr::zero(n);
        for (id, op) in &self.parts {
            out = out.add(&op.apply(exprs(*id)));
        }
        out
    }

    /// Substitutes every `id` that has a definition in `defs`, recursively.
    pub fn substitute(&self, defs: &BTreeMap<usize, Trace>, n: usize) -> Trace {
        let mut out = Trace::empty();
        for (id, op) in &self.parts {
            match defs.get(id) {
                Some(def) => {
                    let inner = def.substitute(defs, n);
                    for (g, c) in &op.terms {
                        out.add_mul(c, &inner.compose(g));
                    }
                }
                None => {
                    let mut t = Trace::empty();
                    t.parts.insert(*id, op.clone());
                    out.add_mul(&Polynomial::constant(n, Q::one()), &t);
                }
            }
        }
        out
    }
}
