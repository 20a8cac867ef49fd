//! Derivatives `D^α φ^r`, orders on them and the monomial/operator correspondence.

use std::cmp::Ordering;

use crate::monomials::{Monomial, MonomialError, VariableContext};

/// `D^α φ^r` with `r` a 0-based unknown index.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct DerivativeKey {
    pub alpha: Monomial,
    pub r: usize,
}

impl DerivativeKey {
    pub fn new(alpha: Monomial, r: usize) -> Self {
        DerivativeKey { alpha, r }
    }

    pub fn order(&self) -> u64 {
        self.alpha.degree()
    }

    pub fn shift(&self, gamma: &Monomial) -> DerivativeKey {
        DerivativeKey::new(self.alpha.mul(gamma), self.r)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum DerivativeOrderSpec {
    /// Order, then the first non-zero exponent difference from the highest variable down, then the unknown index.
    JanetDeglex,
    /// Rows `C` (one weight per variable) and per-unknown offsets `T` (`T[r][0]` shifts the order
    /// row, `T[r][k]` the `k`-th weight row). Ties fall back to [`DerivativeOrderSpec::JanetDeglex`].
    Weight { rows: Vec<Vec<u64>>, offsets: Vec<Vec<u64>> },
    /// Order row, unknown-index row, then one unit row per variable from the highest down.
    CanonicalWeight,
}

/// A total, multiplication-compatible, well-founded order on derivative keys.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DerivativeOrder {
    spec: DerivativeOrderSpec,
    desc: Vec<usize>,
    m: usize,
}

impl DerivativeOrder {
    pub fn new(spec: DerivativeOrderSpec, ctx: &VariableContext, m: usize) -> Self {
        DerivativeOrder {
            spec,
            desc: ctx.highest_first().to_vec(),
            m,
        }
    }

    pub fn janet_deglex(ctx: &VariableContext, m: usize) -> Self {
        Self::new(DerivativeOrderSpec::JanetDeglex, ctx, m)
    }

    pub fn canonical(ctx: &VariableContext, m: usize) -> Self {
        Self::new(DerivativeOrderSpec::CanonicalWeight, ctx, m)
    }

    /// Weight rows with zero offsets for every unknown.
    pub fn weight(rows: Vec<Vec<u64>>, ctx: &VariableContext, m: usize) -> Self {
        let offsets = vec![vec![0; rows.len() + 1]; m];
        Self::new(DerivativeOrderSpec::Weight { rows, offsets }, ctx, m)
    }

    pub fn spec(&self) -> &DerivativeOrderSpec {
        &self.spec
    }

    pub fn unknowns(&self) -> usize {
        self.m
    }

    fn janet(&self, a: &DerivativeKey, b: &DerivativeKey) -> Ordering {
        a.order()
            .cmp(&b.order())
            .then_with(|| {
                for &i in &self.desc {
                    match a.alpha.deg(i).cmp(&b.alpha.deg(i)) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            })
            .then(a.r.cmp(&b.r))
    }

    /// The weight vector `(Γ_0, Γ_1, …)` of a key.
    pub fn gammas(&self, k: &DerivativeKey) -> Vec<u128> {
        match &self.spec {
            DerivativeOrderSpec::JanetDeglex => vec![k.order() as u128],
            DerivativeOrderSpec::Weight { rows, offsets } => {
                let t = offsets.get(k.r).cloned().unwrap_or_default();
                let off = |j: usize| t.get(j).copied().unwrap_or(0) as u128;
                let mut g = vec![k.order() as u128 + off(0)];
                for (j, row) in rows.iter().enumerate() {
                    let s: u128 = row.iter().zip(k.alpha.exps()).map(|(&c, &a)| c as u128 * a as u128).sum();
                    g.push(s + off(j + 1));
                }
                g
            }
            DerivativeOrderSpec::CanonicalWeight => {
                let mut g = vec![k.order() as u128, k.r as u128 + 1];
                g.extend(self.desc.iter().map(|&i| k.alpha.deg(i) as u128));
                g
            }
        }
    }

    pub fn compare(&self, a: &DerivativeKey, b: &DerivativeKey) -> Ordering {
        match &self.spec {
            DerivativeOrderSpec::JanetDeglex => self.janet(a, b),
            _ => self.gammas(a).cmp(&self.gammas(b)).then_with(|| self.janet(a, b)),
        }
    }

    pub fn max<'a>(&self, keys: impl Iterator<Item = &'a DerivativeKey>) -> Option<&'a DerivativeKey> {
        keys.max_by(|a, b| self.compare(a, b))
    }
}

const SUPERSCRIPTS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];

fn superscript(n: u64) -> String {
    n.to_string()
        .chars()
        .map(|c| SUPERSCRIPTS[c.to_digit(10).unwrap() as usize])
        .collect()
}

fn denominators(ctx: &VariableContext, alpha: &Monomial) -> String {
    (0..ctx.n())
        .filter(|&i| alpha.deg(i) > 0)
        .map(|i| match alpha.deg(i) {
            1 => format!("∂{}", ctx.name(i)),
            e => format!("∂{}{}", ctx.name(i), superscript(e as u64)),
        })
        .collect()
}

/// The operator `∂^{|α|}/∂x^α` corresponding to `x^α`; `id` for the unit.
pub fn phi(ctx: &VariableContext, alpha: &Monomial) -> String {
    match alpha.degree() {
        0 => "id".to_string(),
        1 => format!("∂/{}", denominators(ctx, alpha)),
        d => format!("∂{}/{}", superscript(d), denominators(ctx, alpha)),
    }
}

/// `D^α` applied to a named function, e.g. `∂²φ/∂x2∂x3`; the bare name for the unit.
pub fn derivative_text(ctx: &VariableContext, alpha: &Monomial, name: &str) -> String {
    match alpha.degree() {
        0 => name.to_string(),
        1 => format!("∂{name}/{}", denominators(ctx, alpha)),
        d => format!("∂{}{name}/{}", superscript(d), denominators(ctx, alpha)),
    }
}

fn parse_exponent(s: &str) -> Option<(u32, usize)> {
    let sup: String = s.chars().take_while(|c| SUPERSCRIPTS.contains(c)).collect();
    if !sup.is_empty() {
        let digits: String = sup
            .chars()
            .map(|c| char::from_digit(SUPERSCRIPTS.iter().position(|&d| d == c).unwrap() as u32, 10).unwrap())
            .collect();
        return Some((digits.parse().ok()?, sup.len()));
    }
    if let Some(rest) = s.strip_prefix('^') {
        let digits: String = rest.chars().take_while(|c| c.is_ascii_digit()).collect();
        if digits.is_empty() {
            return None;
        }
        return Some((digits.parse().ok()?, 1 + digits.len()));
    }
    None
}

/// Inverse of [`phi`]; accepts superscript or `^k` exponents.
pub fn phi_inv(ctx: &VariableContext, text: &str) -> Result<Monomial, MonomialError> {
    let bad = || MonomialError::Parse(text.to_string());
    let t = text.trim();
    if t == "id" || t == "1" {
        return Ok(ctx.one());
    }
    let (num, den) = t.split_once('/').ok_or_else(bad)?;
    let num = num.strip_prefix('∂').ok_or_else(bad)?;
    let total = if num.is_empty() {
        1
    } else {
        let (e, used) = parse_exponent(num).ok_or_else(bad)?;
        if used != num.len() {
            return Err(bad());
        }
        e as u64
    };
    let mut exps = vec![0u32; ctx.n()];
    for part in den.split('∂').skip(1) {
        let name_end = part
            .find(|c: char| c == '^' || SUPERSCRIPTS.contains(&c))
            .unwrap_or(part.len());
        let name = &part[..name_end];
        let i = ctx
            .index_of(name)
            .ok_or_else(|| MonomialError::UnknownVariable(name.to_string()))?;
        let e = if name_end == part.len() {
            1
        } else {
            let (e, used) = parse_exponent(&part[name_end..]).ok_or_else(bad)?;
            if name_end + used != part.len() {
                return Err(bad());
            }
            e
        };
        exps[i] += e;
    }
    if !den.starts_with('∂') {
        return Err(bad());
    }
    let m = Monomial::new(exps);
    if m.degree() != total {
        return Err(bad());
    }
    Ok(m)
}
