//! Involutive divisions on finite monomial sets.
//!
//! All set-dependent rules read the variable precedence from a [`VariableContext`];
//! "highest" always means highest in that precedence.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::monomials::{dedup, max_degree, monomials_up_to_degree, Monomial, MonomialOrder, VarSet, VariableContext};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DivisionError {
    #[error("monomial {0} is not in the reference set")]
    NotInSet(String),
    #[error("empty monomial set")]
    EmptyInput,
    #[error("degree cap {cap} exceeded while adding {monomial} of degree {degree}")]
    CapExceeded { cap: u64, degree: u64, monomial: String },
}

/// Multiplicative variables fixed per monomial, independent of the reference set.
/// Monomials missing from the table get `default`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TableDivision {
    entries: Vec<(Monomial, VarSet)>,
    default: VarSet,
}

impl TableDivision {
    pub fn new(entries: Vec<(Monomial, VarSet)>, default: VarSet) -> Self {
        TableDivision { entries, default }
    }

    pub fn mult(&self, u: &Monomial) -> VarSet {
        self.entries
            .iter()
            .find(|(m, _)| m == u)
            .map(|(_, s)| *s)
            .unwrap_or(self.default)
    }

    /// Three variables: `x1 -> {x1,x3}`, `x2 -> {x1,x2}`, `x3 -> {x2,x3}`, `1 -> all`,
    /// nothing multiplicative in degree two and above. `{x1,x2,x3}` is locally
    /// involutive for it but `x1*x2*x3` has no involutive divisor.
    pub fn non_continuous_example() -> Self {
        let v = |i| Monomial::var(3, i);
        TableDivision::new(
            vec![
                (Monomial::one(3), VarSet::all(3)),
                (v(0), VarSet::from_indices([0, 2])),
                (v(1), VarSet::from_indices([0, 1])),
                (v(2), VarSet::from_indices([1, 2])),
            ],
            VarSet::empty(),
        )
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum DivisionScheme {
    Janet,
    Thomas,
    Pommaret,
    Table(TableDivision),
}

impl DivisionScheme {
    pub fn name(&self) -> &'static str {
        match self {
            DivisionScheme::Janet => "janet",
            DivisionScheme::Thomas => "thomas",
            DivisionScheme::Pommaret => "pommaret",
            DivisionScheme::Table(_) => "table",
        }
    }

    /// Whether the local completeness test is known to decide involutivity.
    pub fn is_continuous(&self) -> bool {
        !matches!(self, DivisionScheme::Table(_))
    }

    fn set_dependent(&self) -> bool {
        matches!(self, DivisionScheme::Janet | DivisionScheme::Thomas)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiplicativePartition {
    pub monomial: Monomial,
    pub mult: VarSet,
    pub nonmult: VarSet,
}

impl MultiplicativePartition {
    fn new(monomial: Monomial, mult: VarSet) -> Self {
        let nonmult = mult.complement(monomial.arity());
        MultiplicativePartition { monomial, mult, nonmult }
    }
}

/// Janet multiplicative variables of every element of `us`, in input order.
/// Walks the precedence from the top, splitting `us` into the groups `[α_{i+1},…,α_n]`.
pub fn janet_mult_all(ctx: &VariableContext, us: &[Monomial]) -> Vec<VarSet> {
    let mut out = vec![VarSet::empty(); us.len()];
    let idx: Vec<usize> = (0..us.len()).collect();
    janet_split(ctx, us, &idx, 0, VarSet::empty(), &mut out);
    out
}

fn janet_split(ctx: &VariableContext, us: &[Monomial], group: &[usize], level: usize, acc: VarSet, out: &mut [VarSet]) {
    if level == ctx.n() {
        for &k in group {
            out[k] = acc;
        }
        return;
    }
    let v = ctx.highest_first()[level];
    let top = group.iter().map(|&k| us[k].deg(v)).max().unwrap_or(0);
    let degrees: BTreeSet<u32> = group.iter().map(|&k| us[k].deg(v)).collect();
    for d in degrees {
        let sub: Vec<usize> = group.iter().copied().filter(|&k| us[k].deg(v) == d).collect();
        let mut next = acc;
        if d == top {
            next.insert(v);
        }
        janet_split(ctx, us, &sub, level + 1, next, out);
    }
}

fn thomas_mult(us: &[Monomial], u: &Monomial) -> VarSet {
    VarSet::from_indices((0..u.arity()).filter(|&i| us.iter().all(|w| w.deg(i) <= u.deg(i))))
}

/// Pommaret: the class of `u` is its lowest-ranked variable with positive exponent;
/// the variables ranked at or below the class are multiplicative. `1` gets all.
pub fn pommaret_mult(ctx: &VariableContext, u: &Monomial) -> VarSet {
    let low = ctx.lowest_first();
    match low.iter().position(|&i| u.deg(i) > 0) {
        None => VarSet::all(ctx.n()),
        Some(pos) => VarSet::from_indices(low[..=pos].iter().copied()),
    }
}

/// Multiplicative variables of every element of `us` with respect to `us`.
pub fn mult_all(scheme: &DivisionScheme, ctx: &VariableContext, us: &[Monomial]) -> Vec<VarSet> {
    match scheme {
        DivisionScheme::Janet => janet_mult_all(ctx, us),
        DivisionScheme::Thomas => us.iter().map(|u| thomas_mult(us, u)).collect(),
        DivisionScheme::Pommaret => us.iter().map(|u| pommaret_mult(ctx, u)).collect(),
        DivisionScheme::Table(t) => us.iter().map(|u| t.mult(u)).collect(),
    }
}

pub fn multiplicative_variables(
    scheme: &DivisionScheme,
    ctx: &VariableContext,
    us: &[Monomial],
    u: &Monomial,
) -> Result<MultiplicativePartition, DivisionError> {
    let mult = match scheme {
        DivisionScheme::Pommaret => pommaret_mult(ctx, u),
        DivisionScheme::Table(t) => t.mult(u),
        _ => {
            let k = us
                .iter()
                .position(|w| w == u)
                .ok_or_else(|| DivisionError::NotInSet(ctx.format_monomial(u)))?;
            mult_all(scheme, ctx, us)[k]
        }
    };
    Ok(MultiplicativePartition::new(u.clone(), mult))
}

/// True when `w = u * v` with `v` built from `mult` only.
pub fn divides_with(u: &Monomial, mult: &VarSet, w: &Monomial) -> bool {
    u.divides(w) && (0..u.arity()).all(|i| w.deg(i) == u.deg(i) || mult.contains(i))
}

/// Janet divisor by descent along the precedence: at each level only one group can host it.
fn janet_divisor(ctx: &VariableContext, us: &[Monomial], w: &Monomial) -> Option<usize> {
    let mut cand: Vec<usize> = (0..us.len()).collect();
    for &v in ctx.highest_first() {
        let top = cand.iter().map(|&k| us[k].deg(v)).max()?;
        let wv = w.deg(v);
        let want = if wv >= top { top } else { wv };
        cand.retain(|&k| us[k].deg(v) == want);
        if cand.is_empty() {
            return None;
        }
    }
    cand.first().copied()
}

/// Index of the involutive divisor of `w` in `us`, given precomputed multiplicative sets.
/// Ties (possible only for non-autoreduced sets) go to the deglex-least candidate.
pub fn divisor_index(
    scheme: &DivisionScheme,
    ctx: &VariableContext,
    us: &[Monomial],
    mults: &[VarSet],
    w: &Monomial,
) -> Option<usize> {
    if let DivisionScheme::Janet = scheme {
        return janet_divisor(ctx, us, w);
    }
    let order = MonomialOrder::deglex(ctx);
    (0..us.len())
        .filter(|&k| divides_with(&us[k], &mults[k], w))
        .min_by(|&a, &b| order.compare(&us[a], &us[b]).then(a.cmp(&b)))
}

pub fn involutive_divisor(scheme: &DivisionScheme, ctx: &VariableContext, us: &[Monomial], w: &Monomial) -> Option<Monomial> {
    let us = dedup(us);
    let mults = mult_all(scheme, ctx, &us);
    divisor_index(scheme, ctx, &us, &mults, w).map(|k| us[k].clone())
}

pub fn in_involutive_cone(scheme: &DivisionScheme, ctx: &VariableContext, us: &[Monomial], w: &Monomial) -> bool {
    involutive_divisor(scheme, ctx, us, w).is_some()
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ComplementaryMonomial {
    pub monomial: Monomial,
    /// Variable whose stratum `ℂ_i` contains the monomial.
    pub stratum: usize,
    pub partition: MultiplicativePartition,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ComplementarySet {
    /// `strata[i]` is `ℂ_i` for variable index `i`.
    pub strata: Vec<Vec<ComplementaryMonomial>>,
}

impl ComplementarySet {
    pub fn all(&self) -> impl Iterator<Item = &ComplementaryMonomial> {
        self.strata.iter().flatten()
    }

    pub fn len(&self) -> usize {
        self.strata.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// True when `w` lies in the multiplicative cone of some complementary monomial.
    pub fn cone_contains(&self, w: &Monomial) -> bool {
        self.all().any(|c| divides_with(&c.monomial, &c.partition.mult, w))
    }
}

/// Complementary monomials of `us` for the Janet division.
pub fn complementary_monomials(ctx: &VariableContext, us: &[Monomial]) -> Result<ComplementarySet, DivisionError> {
    if us.is_empty() {
        return Err(DivisionError::EmptyInput);
    }
    let us = dedup(us);
    let mut strata = vec![Vec::new(); ctx.n()];
    let idx: Vec<usize> = (0..us.len()).collect();
    comp_split(ctx, &us, &idx, 0, &ctx.one(), VarSet::empty(), &mut strata);
    let order = MonomialOrder::deglex(ctx);
    for s in &mut strata {
        s.sort_by(|a: &ComplementaryMonomial, b| order.compare(&b.monomial, &a.monomial));
    }
    Ok(ComplementarySet { strata })
}

fn comp_split(
    ctx: &VariableContext,
    us: &[Monomial],
    group: &[usize],
    level: usize,
    prefix: &Monomial,
    acc: VarSet,
    strata: &mut [Vec<ComplementaryMonomial>],
) {
    if level == ctx.n() {
        return;
    }
    let order = ctx.highest_first();
    let v = order[level];
    let lower = VarSet::from_indices(order[level + 1..].iter().copied());
    let degrees: BTreeSet<u32> = group.iter().map(|&k| us[k].deg(v)).collect();
    let top = *degrees.iter().next_back().expect("non-empty group");
    for beta in 0..top {
        if degrees.contains(&beta) {
            continue;
        }
        let mut exps = prefix.exps().to_vec();
        exps[v] = beta;
        let monomial = Monomial::new(exps);
        let mult = lower.union(&acc);
        strata[v].push(ComplementaryMonomial {
            partition: MultiplicativePartition::new(monomial.clone(), mult),
            monomial,
            stratum: v,
        });
    }
    for d in degrees {
        let sub: Vec<usize> = group.iter().copied().filter(|&k| us[k].deg(v) == d).collect();
        let mut exps = prefix.exps().to_vec();
        exps[v] = d;
        let mut next = acc;
        if d == top {
            next.insert(v);
        }
        comp_split(ctx, us, &sub, level + 1, &Monomial::new(exps), next, strata);
    }
}

/// Drops elements that are involutively divisible by another element until none is.
pub fn autoreduce_monomials(scheme: &DivisionScheme, ctx: &VariableContext, us: &[Monomial]) -> Vec<Monomial> {
    let mut cur = dedup(us);
    loop {
        let mults = mult_all(scheme, ctx, &cur);
        let hit = (0..cur.len()).find(|&a| (0..cur.len()).any(|b| b != a && divides_with(&cur[b], &mults[b], &cur[a])));
        match hit {
            Some(a) => {
                cur.remove(a);
            }
            None => return cur,
        }
    }
}

/// `u * x = divisor * cofactor` with `cofactor` multiplicative for `divisor`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Identity {
    pub u: Monomial,
    pub var: usize,
    pub divisor: Monomial,
    pub cofactor: Monomial,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Completeness {
    pub complete: bool,
    /// First non-multiplicative prolongation `(u, x)` without an involutive divisor.
    pub witness: Option<(Monomial, usize)>,
    /// For divisions without continuity, a monomial of the cone outside the involutive cone.
    pub global_witness: Option<Monomial>,
    /// One identity per non-multiplicative prolongation that does have a divisor.
    pub identities: Vec<Identity>,
}

/// Local test: every non-multiplicative prolongation has an involutive divisor.
pub fn local_completeness(scheme: &DivisionScheme, ctx: &VariableContext, us: &[Monomial]) -> Completeness {
    let us = dedup(us);
    let mults = mult_all(scheme, ctx, &us);
    let mut witness = None;
    let mut identities = Vec::new();
    for (k, u) in us.iter().enumerate() {
        for &x in ctx.highest_first() {
            if mults[k].contains(x) {
                continue;
            }
            let ux = u.mul_var(x);
            match divisor_index(scheme, ctx, &us, &mults, &ux) {
                Some(d) => identities.push(Identity {
                    u: u.clone(),
                    var: x,
                    divisor: us[d].clone(),
                    cofactor: us[d].quotient(&ux).expect("divisor divides"),
                }),
                None => {
                    if witness.is_none() {
                        witness = Some((u.clone(), x));
                    }
                }
            }
        }
    }
    Completeness {
        complete: witness.is_none(),
        witness,
        global_witness: None,
        identities,
    }
}

/// First monomial of degree at most `max_deg` lying in the cone of `us` but outside its involutive cone.
pub fn involutivity_gap(scheme: &DivisionScheme, ctx: &VariableContext, us: &[Monomial], max_deg: u32) -> Option<Monomial> {
    let us = dedup(us);
    let mults = mult_all(scheme, ctx, &us);
    monomials_up_to_degree(ctx.n(), max_deg)
        .into_iter()
        .find(|w| us.iter().any(|u| u.divides(w)) && divisor_index(scheme, ctx, &us, &mults, w).is_none())
}

/// Completeness of `us`. For the built-in (continuous) divisions this is the local test;
/// for table divisions the involutive cone is also compared with the cone up to degree `deg(U)+4`.
pub fn is_complete(scheme: &DivisionScheme, ctx: &VariableContext, us: &[Monomial]) -> Completeness {
    let mut c = local_completeness(scheme, ctx, us);
    if !scheme.is_continuous() {
        let horizon = (max_degree(us) + 4) as u32;
        c.global_witness = involutivity_gap(scheme, ctx, us, horizon);
        c.complete = c.complete && c.global_witness.is_none();
    }
    c
}

/// Janet completeness through the layers of the highest variable: each layer, read in the
/// remaining variables, must be complete and contained in the cone of the next layer up,
/// with no gaps between the lowest occupied layer and the top one.
pub fn inductive_completeness(ctx: &VariableContext, us: &[Monomial]) -> bool {
    let us = dedup(us);
    let order = ctx.highest_first().to_vec();
    inductive_rec(&us, &order)
}

fn inductive_rec(us: &[Monomial], vars: &[usize]) -> bool {
    if us.len() <= 1 || vars.is_empty() {
        return true;
    }
    let v = vars[0];
    let top = us.iter().map(|u| u.deg(v)).max().unwrap_or(0);
    let low = us.iter().map(|u| u.deg(v)).min().unwrap_or(0);
    let strip = |u: &Monomial| {
        let mut e = u.exps().to_vec();
        e[v] = 0;
        Monomial::new(e)
    };
    let layers: Vec<Vec<Monomial>> = (low..=top)
        .map(|d| us.iter().filter(|u| u.deg(v) == d).map(strip).collect())
        .collect();
    for (k, layer) in layers.iter().enumerate() {
        if layer.is_empty() || !inductive_rec(layer, &vars[1..]) {
            return false;
        }
        if k > 0 && !layers[k - 1].iter().all(|w| layer.iter().any(|u| u.divides(w))) {
            return false;
        }
    }
    true
}

/// Completes `us` by repeatedly adding the order-smallest non-multiplicative prolongation
/// that has no involutive divisor.
pub fn complete_set(
    scheme: &DivisionScheme,
    ctx: &VariableContext,
    us: &[Monomial],
    order: &MonomialOrder,
    degree_cap: u64,
) -> Result<Vec<Monomial>, DivisionError> {
    Ok(complete_set_traced(scheme, ctx, us, order, degree_cap)?
        .into_iter()
        .map(|(m, _)| m)
        .collect())
}

/// A monomial of a completed set with the `(parent index, variable)` prolongation that produced it.
pub type TracedMonomial = (Monomial, Option<(usize, usize)>);

/// [`complete_set`], recording for each added monomial the `(parent index, variable)`
/// prolongation that produced it. Input elements carry `None`.
pub fn complete_set_traced(
    scheme: &DivisionScheme,
    ctx: &VariableContext,
    us: &[Monomial],
    order: &MonomialOrder,
    degree_cap: u64,
) -> Result<Vec<TracedMonomial>, DivisionError> {
    if us.is_empty() {
        return Err(DivisionError::EmptyInput);
    }
    let mut cur = dedup(us);
    let mut parents: Vec<Option<(usize, usize)>> = vec![None; cur.len()];
    loop {
        let mults = mult_all(scheme, ctx, &cur);
        let mut best: Option<(Monomial, usize, usize)> = None;
        for (k, u) in cur.iter().enumerate() {
            for x in mults[k].complement(ctx.n()).indices() {
                let ux = u.mul_var(x);
                if divisor_index(scheme, ctx, &cur, &mults, &ux).is_some() {
                    continue;
                }
                if best.as_ref().is_none_or(|b| order.compare(&ux, &b.0).is_lt()) {
                    best = Some((ux, k, x));
                }
            }
        }
        match best {
            None => return Ok(cur.into_iter().zip(parents).collect()),
            Some((w, k, x)) => {
                if w.degree() > degree_cap {
                    return Err(DivisionError::CapExceeded {
                        cap: degree_cap,
                        degree: w.degree(),
                        monomial: ctx.format_monomial(&w),
                    });
                }
                cur.push(w);
                parents.push(Some((k, x)));
            }
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AxiomFailure {
    pub axiom: u8,
    pub detail: String,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AxiomReport {
    pub passed: bool,
    pub checks: u64,
    pub failure: Option<AxiomFailure>,
}

/// Checks the six axioms of an involutive division on `us`, with every auxiliary
/// monomial bounded by `degree_cap`. Restriction stability is checked on all subsets
/// when `|U| <= 12`, otherwise on the subsets missing one element.
pub fn axiom_check(scheme: &DivisionScheme, ctx: &VariableContext, us: &[Monomial], degree_cap: u32) -> AxiomReport {
    let us = dedup(us);
    let n = ctx.n();
    let mults = mult_all(scheme, ctx, &us);
    let rel = |k: usize, w: &Monomial| divides_with(&us[k], &mults[k], w);
    let ws = monomials_up_to_degree(n, degree_cap);
    let mut checks = 0u64;
    let fail = |axiom: u8, detail: String, checks: u64| AxiomReport {
        passed: false,
        checks,
        failure: Some(AxiomFailure { axiom, detail }),
    };
    let f = |m: &Monomial| ctx.format_monomial(m);

    for (k, u) in us.iter().enumerate() {
        if !rel(k, u) {
            return fail(2, format!("{} does not divide itself", f(u)), checks);
        }
        checks += 1;
        for w in &ws {
            checks += 1;
            if rel(k, w) && !u.divides(w) {
                return fail(
                    1,
                    format!("{} involutively divides {} without dividing it", f(u), f(w)),
                    checks,
                );
            }
        }
    }

    for (k, u) in us.iter().enumerate() {
        let room = degree_cap.saturating_sub(u.degree() as u32);
        let small = monomials_up_to_degree(n, room);
        for v in &small {
            for w in &small {
                if v.degree() + w.degree() > room as u64 {
                    continue;
                }
                checks += 1;
                let uv = u.mul(v);
                let uw = u.mul(w);
                let uvw = uv.mul(w);
                if (rel(k, &uv) && rel(k, &uw)) != rel(k, &uvw) {
                    return fail(
                        3,
                        format!("factor splitting fails for u={} v={} w={}", f(u), f(v), f(w)),
                        checks,
                    );
                }
            }
        }
    }

    for w in &ws {
        let divs: Vec<usize> = (0..us.len()).filter(|&k| rel(k, w)).collect();
        for (a, &i) in divs.iter().enumerate() {
            for &j in &divs[a + 1..] {
                checks += 1;
                if !us[i].divides(&us[j]) && !us[j].divides(&us[i]) {
                    return fail(
                        4,
                        format!("{} and {} both divide {} but are incomparable", f(&us[i]), f(&us[j]), f(w)),
                        checks,
                    );
                }
            }
        }
    }

    for i in 0..us.len() {
        for j in 0..us.len() {
            if !rel(i, &us[j]) {
                continue;
            }
            for w in &ws {
                checks += 1;
                if rel(j, w) && !rel(i, w) {
                    return fail(
                        5,
                        format!("transitivity fails for {} | {} | {}", f(&us[i]), f(&us[j]), f(w)),
                        checks,
                    );
                }
            }
        }
    }

    if scheme.set_dependent() || matches!(scheme, DivisionScheme::Table(_)) {
        let subsets: Vec<Vec<usize>> = if us.len() <= 12 {
            (1u32..(1 << us.len()))
                .map(|mask| (0..us.len()).filter(|&k| mask >> k & 1 == 1).collect())
                .collect()
        } else {
            (0..us.len())
                .map(|skip| (0..us.len()).filter(|&k| k != skip).collect())
                .collect()
        };
        for sub in subsets {
            let sub_us: Vec<Monomial> = sub.iter().map(|&k| us[k].clone()).collect();
            let sub_mults = mult_all(scheme, ctx, &sub_us);
            for (pos, &k) in sub.iter().enumerate() {
                checks += 1;
                if !mults[k].is_subset(&sub_mults[pos]) {
                    return fail(
                        6,
                        format!("restriction loses multiplicative variables of {}", f(&us[k])),
                        checks,
                    );
                }
            }
        }
    }

    AxiomReport {
        passed: true,
        checks,
        failure: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx3() -> VariableContext {
        VariableContext::standard(3)
    }

    fn parse(ctx: &VariableContext, items: &[&str]) -> Vec<Monomial> {
        items.iter().map(|s| ctx.parse_monomial(s).unwrap()).collect()
    }

    fn names(ctx: &VariableContext, s: VarSet) -> Vec<String> {
        ctx.format_varset(&s)
    }

    #[test]
    fn janet_small_table() {
        let ctx = ctx3();
        let us = parse(&ctx, &["x2*x3", "x2^2", "x1"]);
        let m = janet_mult_all(&ctx, &us);
        assert_eq!(names(&ctx, m[0]), ["x3", "x2", "x1"]);
        assert_eq!(names(&ctx, m[1]), ["x2", "x1"]);
        assert_eq!(names(&ctx, m[2]), ["x1"]);
    }

    #[test]
    fn thomas_and_pommaret_rules() {
        let ctx = VariableContext::standard(2);
        let us = parse(&ctx, &["x1", "x2"]);
        let m = mult_all(&DivisionScheme::Thomas, &ctx, &us);
        assert_eq!(names(&ctx, m[0]), ["x1"]);
        assert_eq!(names(&ctx, m[1]), ["x2"]);

        let ctx = VariableContext::with_precedence(&["x1", "x2", "x3", "x4"], vec![0, 1, 2, 3]).unwrap();
        let u = ctx.parse_monomial("x1*x2^2").unwrap();
        let p = multiplicative_variables(&DivisionScheme::Pommaret, &ctx, &[], &u).unwrap();
        assert_eq!(p.mult, VarSet::from_indices([1, 2, 3]));
        assert_eq!(p.nonmult, VarSet::from_indices([0]));
        let one = pommaret_mult(&ctx, &ctx.one());
        assert_eq!(one, VarSet::all(4));
    }

    #[test]
    fn not_in_set_is_reported() {
        let ctx = ctx3();
        let us = parse(&ctx, &["x1"]);
        let r = multiplicative_variables(&DivisionScheme::Janet, &ctx, &us, &ctx.var(1));
        assert!(matches!(r, Err(DivisionError::NotInSet(_))));
    }

    #[test]
    fn janet_divisor_examples() {
        let ctx = ctx3();
        let us = parse(&ctx, &["x3*x2^2", "x3^3*x1^2"]);
        let w = ctx.parse_monomial("x3*x2^3").unwrap();
        assert_eq!(involutive_divisor(&DivisionScheme::Janet, &ctx, &us, &w), Some(us[0].clone()));
        let w = ctx.parse_monomial("x3^2*x2^2").unwrap();
        assert_eq!(involutive_divisor(&DivisionScheme::Janet, &ctx, &us, &w), None);
        for s in [DivisionScheme::Janet, DivisionScheme::Thomas, DivisionScheme::Pommaret] {
            assert_eq!(involutive_divisor(&s, &ctx, &us, &us[1]), Some(us[1].clone()));
        }
    }

    #[test]
    fn complementary_of_linear_forms() {
        let ctx = VariableContext::standard(2);
        let us = parse(&ctx, &["x1", "x2"]);
        let c = complementary_monomials(&ctx, &us).unwrap();
        // the unit is the only monomial outside the cone, and nothing may multiply it
        assert!(c.strata[1].is_empty());
        assert_eq!(c.strata[0].len(), 1);
        assert!(c.strata[0][0].monomial.is_one());
        assert!(c.strata[0][0].partition.mult.is_empty());
        assert_eq!(complementary_monomials(&ctx, &[]), Err(DivisionError::EmptyInput));
    }

    #[test]
    fn autoreduction_examples() {
        let ctx = VariableContext::standard(2);
        let us = parse(&ctx, &["x1", "x1*x2"]);
        assert_eq!(autoreduce_monomials(&DivisionScheme::Janet, &ctx, &us), us);
        let us = parse(&ctx, &["x1", "x1^2"]);
        assert_eq!(autoreduce_monomials(&DivisionScheme::Thomas, &ctx, &us), us);
        let us = parse(&ctx, &["x2", "x1*x2"]);
        assert_eq!(
            autoreduce_monomials(&DivisionScheme::Pommaret, &ctx, &us),
            parse(&ctx, &["x2"])
        );
    }

    #[test]
    fn completion_of_two_monomials() {
        let ctx = ctx3();
        let us = parse(&ctx, &["x3*x2^2", "x3^3*x1^2"]);
        let c = is_complete(&DivisionScheme::Janet, &ctx, &us);
        assert!(!c.complete);
        assert_eq!(c.witness, Some((us[0].clone(), 2)));
        let out = complete_set(&DivisionScheme::Janet, &ctx, &us, &MonomialOrder::deglex(&ctx), 50).unwrap();
        let want = parse(&ctx, &["x3*x2^2", "x3^3*x1^2", "x3^2*x2^2", "x3^3*x2^2", "x3^3*x2*x1^2"]);
        assert_eq!(out, want);
        assert!(is_complete(&DivisionScheme::Janet, &ctx, &out).complete);
        assert!(inductive_completeness(&ctx, &out));
        assert!(!inductive_completeness(&ctx, &us));
    }

    #[test]
    fn degree_layers_are_complete() {
        let ctx = ctx3();
        for p in 0..4 {
            let us = crate::monomials::monomials_of_degree(3, p);
            assert!(is_complete(&DivisionScheme::Janet, &ctx, &us).complete);
        }
    }

    #[test]
    fn pommaret_completion_hits_the_cap() {
        let ctx = VariableContext::standard(2);
        let us = parse(&ctx, &["x1*x2"]);
        let r = complete_set(&DivisionScheme::Pommaret, &ctx, &us, &MonomialOrder::deglex(&ctx), 6);
        assert!(matches!(r, Err(DivisionError::CapExceeded { cap: 6, .. })));
    }

    #[test]
    fn table_division_gap() {
        let ctx = ctx3();
        let scheme = DivisionScheme::Table(TableDivision::non_continuous_example());
        let us = parse(&ctx, &["x1", "x2", "x3"]);
        assert!(local_completeness(&scheme, &ctx, &us).complete);
        let c = is_complete(&scheme, &ctx, &us);
        assert!(!c.complete);
        assert_eq!(c.global_witness, Some(ctx.parse_monomial("x1*x2*x3").unwrap()));
        assert!(axiom_check(&scheme, &ctx, &us, 4).passed);
    }

    #[test]
    fn axioms_hold_for_builtin_divisions() {
        let ctx = ctx3();
        let us = parse(&ctx, &["x3*x2^2", "x3^3*x1^2", "x2*x1", "x1^3"]);
        for s in [DivisionScheme::Janet, DivisionScheme::Thomas] {
            let r = axiom_check(&s, &ctx, &us, 6);
            assert!(r.passed, "{:?}", r.failure);
        }
    }

    #[test]
    fn a_broken_division_is_caught() {
        let ctx = VariableContext::standard(2);
        // x1 and x2 both multiplicative everywhere: x1 and x2 both divide x1*x2.
        let scheme = DivisionScheme::Table(TableDivision::new(vec![], VarSet::all(2)));
        let us = parse(&ctx, &["x1", "x2"]);
        let r = axiom_check(&scheme, &ctx, &us, 3);
        assert_eq!(r.failure.map(|f| f.axiom), Some(4));
    }
}
