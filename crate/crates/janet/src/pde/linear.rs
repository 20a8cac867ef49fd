//! Linear PDE systems: autoreduction, completion, integrability conditions and the
//! procedure that brings a system to canonical form or exhibits an obstruction.
//!
//! Every equation carries a forward trace over the input equations, and every retired
//! equation a definition in terms of later ones, so both directions of the equivalence
//! can be replayed exactly.

use std::collections::BTreeMap;

use num_traits::One;

use super::derivative::{DerivativeKey, DerivativeOrder};
use super::expr::{format_key, LinearExpr, Trace};
use super::monomial_system::{initial_conditions_for, InitialConditionTemplate};
use super::PdeError;
use crate::divisions::{divides_with, divisor_index, janet_mult_all, DivisionScheme};
use crate::monomials::{Monomial, VarSet, VariableContext};
use crate::polynomials::{Polynomial, Q};

/// A system `Σ` of linear equations `expr = 0` in `m` unknowns.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearPdeSystem {
    pub ctx: VariableContext,
    pub unknowns: Vec<String>,
    pub order: DerivativeOrder,
    pub equations: Vec<LinearExpr>,
}

/// An equation normalised to leading coefficient 1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PdeEquation {
    pub lead: DerivativeKey,
    pub expr: LinearExpr,
}

impl PdeEquation {
    /// The right-hand side when the equation is solved for its leading derivative.
    pub fn rhs(&self) -> LinearExpr {
        LinearExpr::key(self.lead.clone()).sub(&self.expr)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct JanetCap {
    pub max_rounds: usize,
    pub max_additions: usize,
    pub max_order: u64,
}

impl Default for JanetCap {
    fn default() -> Self {
        JanetCap {
            max_rounds: 10,
            max_additions: 1000,
            max_order: 50,
        }
    }
}

/// An equivalent system with exact traces in both directions.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CertifiedSystem {
    /// Sorted by leading derivative, greatest first.
    pub equations: Vec<PdeEquation>,
    pub mults: Vec<VarSet>,
    /// `forward[k]` rebuilds `equations[k]` from the inputs.
    pub forward: Vec<Trace>,
    /// `backward[i]` rebuilds input `i` from `equations`.
    pub backward: Vec<Trace>,
    /// Leads of equations added by completion, in the order they were added.
    pub added: Vec<DerivativeKey>,
}

impl CertifiedSystem {
    pub fn leads(&self) -> Vec<DerivativeKey> {
        self.equations.iter().map(|e| e.lead.clone()).collect()
    }

    pub fn verify_forward(&self, inputs: &[LinearExpr]) -> bool {
        let n = inputs.first().map_or(0, LinearExpr::arity);
        self.equations
            .iter()
            .zip(&self.forward)
            .all(|(e, t)| t.replay(n, |i| &inputs[i]) == e.expr)
    }

    pub fn verify_backward(&self, inputs: &[LinearExpr]) -> bool {
        let n = inputs.first().map_or(0, LinearExpr::arity);
        inputs
            .iter()
            .zip(&self.backward)
            .all(|(f, t)| &t.replay(n, |k| &self.equations[k].expr) == f)
    }
}

/// `NF(∂_x E)` for a non-multiplicative variable `x` of the lead of `E`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntegrabilityCondition {
    pub equation: LinearExpr,
    pub lead: DerivativeKey,
    pub var: usize,
    /// Lead of the Janet divisor `v` of `lead·x`, and `γ` with `lead·x = v·γ`.
    pub divisor_lead: DerivativeKey,
    pub gamma: Monomial,
    pub normal_form: LinearExpr,
    /// Rebuilds `normal_form` from the inputs of the computation.
    pub trace: Trace,
    pub trivial: bool,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Round {
    /// The system the round started from.
    pub sigma: Vec<LinearExpr>,
    pub completed: CertifiedSystem,
    pub conditions: Vec<IntegrabilityCondition>,
    /// Normalised non-trivial conditions, without repeats.
    pub new_relations: Vec<LinearExpr>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Verdict {
    Canonical,
    /// Non-trivial relations among the unknowns themselves.
    Obstruction(Vec<LinearExpr>),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct JanetReport {
    pub rounds: Vec<Round>,
    pub verdict: Verdict,
    /// The final completed system; its traces refer to the original inputs.
    pub system: CertifiedSystem,
}

impl JanetReport {
    pub fn is_canonical(&self) -> bool {
        self.verdict == Verdict::Canonical
    }

    /// Relations added after each round, in order.
    pub fn added_relations(&self) -> Vec<LinearExpr> {
        self.rounds.iter().flat_map(|r| r.new_relations.clone()).collect()
    }
}

impl LinearPdeSystem {
    pub fn new(
        ctx: VariableContext,
        unknowns: Vec<String>,
        order: DerivativeOrder,
        equations: Vec<LinearExpr>,
    ) -> Result<Self, PdeError> {
        if unknowns.is_empty() {
            return Err(PdeError::Invalid("no unknowns".into()));
        }
        for e in &equations {
            if e.arity() != ctx.n() || e.keys().any(|k| k.r >= unknowns.len() || k.alpha.arity() != ctx.n()) {
                return Err(PdeError::Invalid("equation does not match the declared variables".into()));
            }
        }
        Ok(LinearPdeSystem {
            ctx,
            unknowns,
            order,
            equations,
        })
    }

    pub fn format_key(&self, k: &DerivativeKey) -> String {
        format_key(&self.ctx, &self.unknowns, k)
    }

    pub fn format_expr(&self, e: &LinearExpr) -> String {
        e.format(&self.ctx, &self.unknowns, &self.order)
    }

    /// `lead = rhs` text, e.g. `p33 = x2*p11`.
    pub fn format_equation(&self, e: &LinearExpr) -> String {
        match e.lead_key(&self.order) {
            None => "0 = 0".to_string(),
            Some(k) => {
                let (lead, c) = e.lead(&self.order).map(|(k, c)| (k.clone(), c.clone())).expect("non-zero");
                let mut rest = e.clone();
                rest.add_term(k.clone(), &-&c);
                let lhs = LinearExpr::term(lead, c);
                format!("{} = {}", self.format_expr(&lhs), self.format_expr(&rest.scale(&-Q::one())))
            }
        }
    }

    fn work(&self) -> Work<'_> {
        let entries = (0..self.equations.len()).map(|i| (self.equations[i].clone(), Trace::single(i, self.ctx.n())));
        Work::new(self, entries)
    }

    pub fn autoreduce(&self) -> Result<CertifiedSystem, PdeError> {
        let mut w = self.work();
        w.add_all()?;
        w.autoreduce()?;
        Ok(w.certified(self.equations.len()))
    }

    pub fn complete(&self, cap: JanetCap) -> Result<CertifiedSystem, PdeError> {
        let mut w = self.work();
        w.add_all()?;
        w.autoreduce()?;
        w.complete(cap)?;
        Ok(w.certified(self.equations.len()))
    }

    /// Conditions of the system taken as it is; fails with `Incomplete` when some
    /// non-multiplicative prolongation has no Janet divisor.
    pub fn integrability_conditions(&self) -> Result<Vec<IntegrabilityCondition>, PdeError> {
        let mut w = self.work();
        w.add_all()?;
        w.check_complete()?;
        Ok(w.integrability())
    }

    /// Autoreduce, complete, take integrability conditions, and repeat with the non-trivial
    /// ones appended until none is left or one only involves the unknowns themselves.
    pub fn janet(&self, cap: JanetCap) -> Result<JanetReport, PdeError> {
        let n = self.ctx.n();
        let mut sigma: Vec<(LinearExpr, Trace)> = (0..self.equations.len())
            .map(|i| (self.equations[i].clone(), Trace::single(i, n)))
            .collect();
        let mut rounds = Vec::new();
        for _ in 0..cap.max_rounds {
            let mut w = Work::new(self, sigma.clone().into_iter());
            w.add_all()?;
            w.autoreduce()?;
            w.complete(cap)?;
            let local = w.integrability();
            let completed = w.certified(sigma.len());
            let mut new_relations: Vec<LinearExpr> = Vec::new();
            let mut new_entries = Vec::new();
            let conditions: Vec<IntegrabilityCondition> = local
                .into_iter()
                .map(|mut c| {
                    c.trace = w.lift(&c.trace);
                    c
                })
                .collect();
            for c in conditions.iter().filter(|c| !c.trivial) {
                let (e, lc) = c.normal_form.normalize(&self.order).ok_or_else(|| {
                    PdeError::DegenerateCombine(format!(
                        "integrability condition {} has a non-constant leading coefficient",
                        self.format_expr(&c.normal_form)
                    ))
                })?;
                if new_relations.contains(&e) || sigma.iter().any(|(s, _)| s == &e) {
                    continue;
                }
                let mut t = Trace::empty();
                t.add_mul(&Polynomial::constant(n, Q::one() / lc), &c.trace);
                new_relations.push(e.clone());
                new_entries.push((e, t));
            }
            let done = new_relations.is_empty();
            let obstruction: Vec<LinearExpr> = new_relations
                .iter()
                .filter(|e| e.keys().all(|k| k.alpha.is_one()))
                .cloned()
                .collect();
            rounds.push(Round {
                sigma: sigma.iter().map(|(e, _)| e.clone()).collect(),
                completed: completed.clone(),
                conditions,
                new_relations,
            });
            if done || !obstruction.is_empty() {
                let system = w.certified(self.equations.len());
                let verdict = if done {
                    Verdict::Canonical
                } else {
                    Verdict::Obstruction(obstruction)
                };
                return Ok(JanetReport { rounds, verdict, system });
            }
            sigma.extend(new_entries);
        }
        Err(PdeError::CapExceeded(format!(
            "no canonical form after {} rounds",
            cap.max_rounds
        )))
    }

    /// Initial conditions of a complete system, from the complementary monomials of each
    /// unknown's lead set.
    pub fn initial_conditions(
        &self,
        system: &CertifiedSystem,
        base_point: Option<&[Q]>,
    ) -> Result<InitialConditionTemplate, PdeError> {
        let mut leads = vec![Vec::new(); self.unknowns.len()];
        for e in &system.equations {
            leads[e.lead.r].push(e.lead.alpha.clone());
        }
        initial_conditions_for(&self.ctx, &leads, &self.unknowns, base_point)
    }
}

/// Janet partitions of a list of leads, computed separately for each unknown.
pub fn janet_partitions(ctx: &VariableContext, leads: &[DerivativeKey], m: usize) -> Vec<VarSet> {
    let mut out = vec![VarSet::empty(); leads.len()];
    for r in 0..m {
        let idx: Vec<usize> = (0..leads.len()).filter(|&k| leads[k].r == r).collect();
        let us: Vec<Monomial> = idx.iter().map(|&k| leads[k].alpha.clone()).collect();
        for (pos, v) in janet_mult_all(ctx, &us).into_iter().enumerate() {
            out[idx[pos]] = v;
        }
    }
    out
}

/// Lookup of Janet divisors among a set of equations, one group per unknown.
struct Table {
    groups: Vec<(Vec<Monomial>, Vec<usize>, Vec<VarSet>)>,
}

impl Table {
    fn divisor(&self, ctx: &VariableContext, k: &DerivativeKey) -> Option<(usize, Monomial)> {
        let (us, ids, mults) = self.groups.get(k.r)?;
        let d = divisor_index(&DivisionScheme::Janet, ctx, us, mults, &k.alpha)?;
        Some((ids[d], us[d].quotient(&k.alpha).expect("divisor")))
    }
}

struct Work<'a> {
    sys: &'a LinearPdeSystem,
    exprs: Vec<LinearExpr>,
    fwd: Vec<Trace>,
    defs: BTreeMap<usize, Trace>,
    live: Vec<usize>,
    bases: usize,
    added: Vec<DerivativeKey>,
}

impl<'a> Work<'a> {
    fn new(sys: &'a LinearPdeSystem, entries: impl Iterator<Item = (LinearExpr, Trace)>) -> Self {
        let mut w = Work {
            sys,
            exprs: Vec::new(),
            fwd: Vec::new(),
            defs: BTreeMap::new(),
            live: Vec::new(),
            bases: 0,
            added: Vec::new(),
        };
        for (e, t) in entries {
            w.push(e, t);
        }
        w.bases = w.exprs.len();
        w
    }

    fn n(&self) -> usize {
        self.sys.ctx.n()
    }

    fn constant(&self, c: Q) -> Polynomial {
        Polynomial::constant(self.n(), c)
    }

    fn push(&mut self, e: LinearExpr, t: Trace) -> usize {
        self.exprs.push(e);
        self.fwd.push(t);
        self.exprs.len() - 1
    }

    fn lead(&self, id: usize) -> DerivativeKey {
        self.exprs[id]
            .lead_key(&self.sys.order)
            .expect("live equations are non-zero")
            .clone()
    }

    fn lift(&self, local: &Trace) -> Trace {
        let mut out = Trace::empty();
        for (id, op) in &local.parts {
            for (g, c) in op.terms() {
                out.add_mul(c, &self.fwd[*id].compose(g));
            }
        }
        out
    }

    fn retire(&mut self, id: usize, def: Trace) {
        self.defs.insert(id, def);
        self.live.retain(|&l| l != id);
    }

    fn add_all(&mut self) -> Result<(), PdeError> {
        for id in 0..self.bases {
            self.add(id)?;
        }
        Ok(())
    }

    /// Inserts equation `id`, normalising it and combining it with a live equation of the
    /// same lead until its lead is new or it vanishes.
    fn add(&mut self, mut id: usize) -> Result<(), PdeError> {
        loop {
            let e = self.exprs[id].clone();
            if e.is_zero() {
                self.retire(id, Trace::empty());
                return Ok(());
            }
            let (ne, c) = e.normalize(&self.sys.order).ok_or_else(|| {
                PdeError::DegenerateCombine(format!(
                    "leading coefficient of {} is not a non-zero constant",
                    self.sys.format_expr(&e)
                ))
            })?;
            if !c.is_one() {
                let mut t = Trace::empty();
                t.add_mul(&self.constant(Q::one() / &c), &self.fwd[id]);
                let nid = self.push(ne, t);
                let mut def = Trace::empty();
                def.add_mul(&self.constant(c), &Trace::single(nid, self.n()));
                self.retire(id, def);
                id = nid;
                continue;
            }
            let lead = self.lead(id);
            match self.live.iter().copied().find(|&l| self.lead(l) == lead) {
                None => {
                    self.live.push(id);
                    return Ok(());
                }
                Some(ex) => {
                    let comb = e.sub(&self.exprs[ex]);
                    let mut t = self.fwd[id].clone();
                    t.add_mul(&self.constant(-Q::one()), &self.fwd[ex]);
                    let cid = self.push(comb, t);
                    let mut def = Trace::single(cid, self.n());
                    def.add_mul(&self.constant(Q::one()), &Trace::single(ex, self.n()));
                    self.retire(id, def);
                    id = cid;
                }
            }
        }
    }

    fn table(&self, ids: &[usize]) -> Table {
        let m = self.sys.unknowns.len();
        let mut groups: Vec<(Vec<Monomial>, Vec<usize>, Vec<VarSet>)> = vec![(Vec::new(), Vec::new(), Vec::new()); m];
        for &id in ids {
            let k = self.lead(id);
            groups[k.r].0.push(k.alpha);
            groups[k.r].1.push(id);
        }
        for g in &mut groups {
            g.2 = janet_mult_all(&self.sys.ctx, &g.0);
        }
        Table { groups }
    }

    /// Live ids sorted by lead, greatest first.
    fn sorted_live(&self) -> Vec<usize> {
        let mut ids = self.live.clone();
        ids.sort_by(|&a, &b| self.sys.order.compare(&self.lead(b), &self.lead(a)));
        ids
    }

    /// Janet normal form: rewrites principal derivatives, greatest first, with the full
    /// live system. Returns the remainder and the local trace of what was subtracted.
    fn nf(&self, e: &LinearExpr) -> (LinearExpr, Trace) {
        let table = self.table(&self.live);
        let n = self.n();
        let mut rem = e.clone();
        let mut tr = Trace::empty();
        loop {
            let hit = rem
                .sorted(&self.sys.order)
                .into_iter()
                .find_map(|(k, c)| table.divisor(&self.sys.ctx, &k).map(|(d, g)| (c, d, g)));
            let Some((c, d, g)) = hit else { break };
            rem.add_mul(&-&c, &self.exprs[d].apply(&g));
            tr.add_mul(&c, &Trace::single(d, n).compose(&g));
        }
        (rem, tr)
    }

    /// Removes equations whose lead is a Janet multiple of another lead.
    fn left_reduce(&mut self) -> Result<bool, PdeError> {
        let table = self.table(&self.live);
        for &id in &self.live {
            let k = self.lead(id);
            let (us, ids, mults) = &table.groups[k.r];
            let hit = (0..us.len()).find(|&j| ids[j] != id && divides_with(&us[j], &mults[j], &k.alpha));
            if let Some(j) = hit {
                let other = ids[j];
                let g = us[j].quotient(&k.alpha).expect("divisor");
                let red = self.exprs[other].apply(&g);
                let new = self.exprs[id].sub(&red);
                let mut t = self.fwd[id].clone();
                t.add_mul(&self.constant(-Q::one()), &self.fwd[other].compose(&g));
                let nid = self.push(new, t);
                let mut def = Trace::single(nid, self.n());
                def.add_mul(&self.constant(Q::one()), &Trace::single(other, self.n()).compose(&g));
                self.retire(id, def);
                self.add(nid)?;
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Rewrites tail derivatives that are proper Janet multiples of smaller leads.
    fn right_reduce(&mut self) -> bool {
        let mut changed = false;
        let n = self.n();
        for id in self.sorted_live() {
            let lead = self.lead(id);
            let below: Vec<usize> = self
                .live
                .iter()
                .copied()
                .filter(|&l| self.sys.order.compare(&self.lead(l), &lead).is_lt())
                .collect();
            let table = self.table(&below);
            let mut e = self.exprs[id].clone();
            let mut tr = Trace::empty();
            loop {
                let hit = e.sorted(&self.sys.order).into_iter().find_map(|(k, c)| {
                    if k == lead {
                        return None;
                    }
                    table
                        .divisor(&self.sys.ctx, &k)
                        .filter(|(_, g)| !g.is_one())
                        .map(|(d, g)| (c, d, g))
                });
                let Some((c, d, g)) = hit else { break };
                e.add_mul(&-&c, &self.exprs[d].apply(&g));
                tr.add_mul(&c, &Trace::single(d, n).compose(&g));
            }
            if tr.parts.is_empty() {
                continue;
            }
            let mut t = self.fwd[id].clone();
            t.add_mul(&self.constant(-Q::one()), &self.lift(&tr));
            let nid = self.push(e, t);
            let mut def = Trace::single(nid, n);
            def.add_mul(&self.constant(Q::one()), &tr);
            self.defs.insert(id, def);
            for l in &mut self.live {
                if *l == id {
                    *l = nid;
                }
            }
            changed = true;
        }
        changed
    }

    fn autoreduce(&mut self) -> Result<(), PdeError> {
        loop {
            let left = self.left_reduce()?;
            let right = self.right_reduce();
            if !left && !right {
                return Ok(());
            }
        }
    }

    /// Non-multiplicative prolongations without a Janet divisor: `(key, id, var)`.
    fn missing(&self) -> Vec<(DerivativeKey, usize, usize)> {
        let table = self.table(&self.live);
        let mut out = Vec::new();
        for (us, ids, mults) in &table.groups {
            for (j, u) in us.iter().enumerate() {
                for x in mults[j].complement(self.n()).indices() {
                    let w = u.mul_var(x);
                    if divisor_index(&DivisionScheme::Janet, &self.sys.ctx, us, mults, &w).is_none() {
                        out.push((DerivativeKey::new(w, self.lead(ids[j]).r), ids[j], x));
                    }
                }
            }
        }
        out
    }

    fn check_complete(&self) -> Result<(), PdeError> {
        match self.missing().first() {
            None => Ok(()),
            Some((_, id, x)) => Err(PdeError::Incomplete {
                lead: self.sys.format_key(&self.lead(*id)),
                var: self.sys.ctx.name(*x).to_string(),
            }),
        }
    }

    fn complete(&mut self, cap: JanetCap) -> Result<(), PdeError> {
        loop {
            let mut pr = self.missing();
            if pr.is_empty() {
                return Ok(());
            }
            pr.sort_by(|a, b| self.sys.order.compare(&a.0, &b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
            let mut progressed = false;
            for (key, id, x) in pr {
                let (rem, tr) = self.nf(&self.exprs[id].derive(x));
                if rem.is_zero() {
                    continue;
                }
                if self.added.len() >= cap.max_additions || rem.max_order() > cap.max_order {
                    return Err(PdeError::CapExceeded(format!(
                        "completion stopped at {} ({} additions)",
                        self.sys.format_key(&key),
                        self.added.len()
                    )));
                }
                let mut t = self.fwd[id].derive(x);
                t.add_mul(&self.constant(-Q::one()), &self.lift(&tr));
                let nid = self.push(rem, t);
                self.added.push(self.lead(nid));
                self.add(nid)?;
                self.autoreduce()?;
                progressed = true;
                break;
            }
            if !progressed {
                return Ok(());
            }
        }
    }

    fn integrability(&self) -> Vec<IntegrabilityCondition> {
        let table = self.table(&self.live);
        let mut out = Vec::new();
        for id in self.sorted_live() {
            let lead = self.lead(id);
            let (us, ids, mults) = &table.groups[lead.r];
            let j = ids.iter().position(|&l| l == id).expect("live");
            let non = mults[j].complement(self.n());
            for &x in self.sys.ctx.highest_first() {
                if !non.contains(x) {
                    continue;
                }
                let w = DerivativeKey::new(us[j].mul_var(x), lead.r);
                let Some((d, gamma)) = table.divisor(&self.sys.ctx, &w) else {
                    continue;
                };
                let (rem, tr) = self.nf(&self.exprs[id].derive(x));
                let mut t = Trace::single(id, self.n()).derive(x);
                t.add_mul(&self.constant(-Q::one()), &tr);
                out.push(IntegrabilityCondition {
                    equation: self.exprs[id].clone(),
                    lead: lead.clone(),
                    var: x,
                    divisor_lead: self.lead(d),
                    gamma,
                    trivial: rem.is_zero(),
                    normal_form: rem,
                    trace: t,
                });
            }
        }
        out
    }

    /// The live system with forward traces and backward traces for the first `inputs`
    /// base entries.
    fn certified(&self, inputs: usize) -> CertifiedSystem {
        let ids = self.sorted_live();
        let leads: Vec<DerivativeKey> = ids.iter().map(|&id| self.lead(id)).collect();
        let mults = janet_partitions(&self.sys.ctx, &leads, self.sys.unknowns.len());
        let pos: BTreeMap<usize, usize> = ids.iter().enumerate().map(|(k, &id)| (id, k)).collect();
        let n = self.n();
        let backward = (0..inputs)
            .map(|i| {
                let resolved = Trace::single(i, n).substitute(&self.defs, n);
                Trace {
                    parts: resolved.parts.into_iter().map(|(id, op)| (pos[&id], op)).collect(),
                }
            })
            .collect();
        CertifiedSystem {
            equations: ids
                .iter()
                .map(|&id| PdeEquation {
                    lead: self.lead(id),
                    expr: self.exprs[id].clone(),
                })
                .collect(),
            mults,
            forward: ids.iter().map(|&id| self.fwd[id].clone()).collect(),
            backward,
            added: self.added.clone(),
        }
    }
}
