//! Involutive reduction, autoreduction and completion of polynomial sets.

use std::collections::BTreeMap;

use num_traits::Zero;
use thiserror::Error;

use crate::divisions::{divides_with, divisor_index, mult_all, DivisionScheme, MultiplicativePartition};
use crate::monomials::{Monomial, MonomialOrder, VarSet, VariableContext};
use crate::polynomials::{Polynomial, ReductionStep, ReductionTrace, Q};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvolutiveError {
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial is not in the set")]
    NotInSet,
    #[error("empty input")]
    EmptyInput,
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
}

/// Division, precedence and order shared by every operation on one polynomial system.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Setting {
    pub scheme: DivisionScheme,
    pub ctx: VariableContext,
    pub order: MonomialOrder,
}

impl Setting {
    pub fn new(scheme: DivisionScheme, ctx: VariableContext, order: MonomialOrder) -> Self {
        Setting { scheme, ctx, order }
    }

    /// Janet division with deglex on the context's precedence.
    pub fn janet_deglex(ctx: VariableContext) -> Self {
        let order = MonomialOrder::deglex(&ctx);
        Setting::new(DivisionScheme::Janet, ctx, order)
    }

    fn leads(&self, gs: &[Polynomial]) -> Vec<Monomial> {
        gs.iter().map(|g| g.lm(&self.order).expect("non-zero").clone()).collect()
    }

    fn mults(&self, leads: &[Monomial]) -> Vec<VarSet> {
        mult_all(&self.scheme, &self.ctx, leads)
    }
}

/// Multiplicative variables of `f` inside `fs`, read off the leading monomials.
pub fn poly_mult_vars(s: &Setting, fs: &[Polynomial], f: &Polynomial) -> Result<MultiplicativePartition, InvolutiveError> {
    if f.is_zero() || fs.iter().any(Polynomial::is_zero) {
        return Err(InvolutiveError::ZeroPolynomial);
    }
    let k = fs.iter().position(|g| g == f).ok_or(InvolutiveError::NotInSet)?;
    let leads = s.leads(fs);
    let mult = s.mults(&leads)[k];
    Ok(MultiplicativePartition {
        monomial: leads[k].clone(),
        mult,
        nonmult: mult.complement(s.ctx.n()),
    })
}

/// Involutive normal form, always rewriting the order-greatest reducible term.
pub fn inv_normal_form(s: &Setting, f: &Polynomial, gs: &[Polynomial]) -> ReductionTrace {
    inv_normal_form_by(s, f, gs, |_| 0)
}

/// Involutive normal form where `choose` picks which reducible term to rewrite next.
/// It receives the reducible monomials in descending order and returns an index into them.
pub fn inv_normal_form_by<F: FnMut(&[Monomial]) -> usize>(
    s: &Setting,
    f: &Polynomial,
    gs: &[Polynomial],
    mut choose: F,
) -> ReductionTrace {
    let live: Vec<usize> = (0..gs.len()).filter(|&k| !gs[k].is_zero()).collect();
    let live_gs: Vec<Polynomial> = live.iter().map(|&k| gs[k].clone()).collect();
    let leads = s.leads(&live_gs);
    let lcs: Vec<Q> = live_gs.iter().map(|g| g.lc(&s.order).unwrap().clone()).collect();
    let mults = s.mults(&leads);
    let mut p = f.clone();
    let mut steps = Vec::new();
    loop {
        let mut reducible: Vec<(Monomial, usize)> = p
            .terms()
            .filter_map(|(m, _)| divisor_index(&s.scheme, &s.ctx, &leads, &mults, m).map(|d| (m.clone(), d)))
            .collect();
        if reducible.is_empty() {
            break;
        }
        reducible.sort_by(|a, b| s.order.compare(&b.0, &a.0));
        let ms: Vec<Monomial> = reducible.iter().map(|(m, _)| m.clone()).collect();
        let pick = choose(&ms).min(ms.len() - 1);
        let (m, d) = &reducible[pick];
        let cofactor = leads[*d].quotient(m).expect("divisor divides");
        let coeff = p.coeff(m) / &lcs[*d];
        p.add_scaled(&-coeff.clone(), &cofactor, &live_gs[*d]);
        steps.push(ReductionStep {
            reducer: live[*d],
            cofactor,
            coeff,
        });
    }
    ReductionTrace { steps, remainder: p }
}

fn involutively_reducible_by_other(hs: &[Polynomial], leads: &[Monomial], mults: &[VarSet], a: usize) -> bool {
    hs[a]
        .terms()
        .any(|(m, _)| (0..hs.len()).any(|b| b != a && divides_with(&leads[b], &mults[b], m)))
}

/// Autoreduction: while some element has a term involutively reducible by another element,
/// replace it by its normal form modulo the rest. Output is monic, sorted by leading monomial descending.
pub fn inv_autoreduce(s: &Setting, gs: &[Polynomial]) -> Vec<Polynomial> {
    let mut hs = autoreduce_keep_order(s, gs);
    let order = s.order.clone();
    hs.sort_by(|a, b| order.compare(b.lm(&order).unwrap(), a.lm(&order).unwrap()));
    hs
}

/// Autoreduction preserving insertion order; new normal forms are appended.
fn autoreduce_keep_order(s: &Setting, gs: &[Polynomial]) -> Vec<Polynomial> {
    let mut hs: Vec<Polynomial> = Vec::new();
    for g in gs {
        if !g.is_zero() {
            let g = g.monic(&s.order);
            if !hs.contains(&g) {
                hs.push(g);
            }
        }
    }
    loop {
        let leads = s.leads(&hs);
        let mults = s.mults(&leads);
        let hit = (0..hs.len()).find(|&a| involutively_reducible_by_other(&hs, &leads, &mults, a));
        let Some(a) = hit else { break };
        let h = hs.remove(a);
        let nf = inv_normal_form(s, &h, &hs).remainder;
        if !nf.is_zero() {
            let nf = nf.monic(&s.order);
            if !hs.contains(&nf) {
                hs.push(nf);
            }
        }
    }
    hs
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CompletionCap {
    pub max_degree: u64,
    pub max_additions: usize,
}

impl Default for CompletionCap {
    fn default() -> Self {
        CompletionCap {
            max_degree: 50,
            max_additions: 10_000,
        }
    }
}

/// Reduction of the prolongation `basis[element] * x_var` to zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProlongationCertificate {
    pub element: usize,
    pub var: usize,
    pub trace: ReductionTrace,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InvolutiveBasisResult {
    pub setting: Setting,
    /// Monic, autoreduced, sorted by leading monomial descending.
    pub basis: Vec<Polynomial>,
    pub mults: Vec<VarSet>,
    pub certificates: Vec<ProlongationCertificate>,
    /// Number of polynomials added during completion.
    pub additions: usize,
}

impl InvolutiveBasisResult {
    pub fn leads(&self) -> Vec<Monomial> {
        self.setting.leads(&self.basis)
    }

    /// Replays every certificate; true when each reproduces its prolongation with zero remainder.
    pub fn certificates_replay(&self) -> bool {
        let expected: usize = self.mults.iter().map(|m| self.setting.ctx.n() - m.len()).sum();
        expected == self.certificates.len()
            && self.certificates.iter().all(|c| {
                let target = self.basis[c.element].mul_monomial(&self.setting.ctx.var(c.var));
                c.trace.remainder.is_zero() && c.trace.replay(&self.basis) == target
            })
    }
}

/// Completion to an involutive basis: repeatedly reduce the non-multiplicative prolongation
/// with the smallest leading monomial (ties by element insertion index) and adjoin the first
/// non-zero normal form.
pub fn involutive_completion(
    s: &Setting,
    fs: &[Polynomial],
    cap: CompletionCap,
) -> Result<InvolutiveBasisResult, InvolutiveError> {
    if fs.iter().all(Polynomial::is_zero) {
        return Err(InvolutiveError::EmptyInput);
    }
    let mut gs = autoreduce_keep_order(s, fs);
    let mut additions = 0usize;
    'outer: loop {
        let leads = s.leads(&gs);
        let mults = s.mults(&leads);
        let mut pro: Vec<(Monomial, usize, usize)> = Vec::new();
        for k in 0..gs.len() {
            for &x in s.ctx.highest_first() {
                if !mults[k].contains(x) {
                    pro.push((leads[k].mul_var(x), k, x));
                }
            }
        }
        pro.sort_by(|a, b| s.order.compare(&a.0, &b.0).then(a.1.cmp(&b.1)));
        for (_, k, x) in pro {
            let p = gs[k].mul_monomial(&s.ctx.var(x));
            let nf = inv_normal_form(s, &p, &gs).remainder;
            if nf.is_zero() {
                continue;
            }
            let deg = nf.total_degree().unwrap_or(0);
            if deg > cap.max_degree {
                return Err(InvolutiveError::CapExceeded(format!(
                    "normal form of degree {deg} above {}",
                    cap.max_degree
                )));
            }
            additions += 1;
            if additions > cap.max_additions {
                return Err(InvolutiveError::CapExceeded(format!(
                    "more than {} additions",
                    cap.max_additions
                )));
            }
            gs.push(nf);
            gs = autoreduce_keep_order(s, &gs);
            continue 'outer;
        }
        break;
    }
    let order = s.order.clone();
    gs.sort_by(|a, b| order.compare(b.lm(&order).unwrap(), a.lm(&order).unwrap()));
    let leads = s.leads(&gs);
    let mults = s.mults(&leads);
    let mut certificates = Vec::new();
    for k in 0..gs.len() {
        for &x in s.ctx.highest_first() {
            if mults[k].contains(x) {
                continue;
            }
            let p = gs[k].mul_monomial(&s.ctx.var(x));
            certificates.push(ProlongationCertificate {
                element: k,
                var: x,
                trace: inv_normal_form(s, &p, &gs),
            });
        }
    }
    Ok(InvolutiveBasisResult {
        setting: s.clone(),
        basis: gs,
        mults,
        certificates,
        additions,
    })
}

/// `f = Σ coeff * cofactor * basis[reducer]`, cofactors multiplicative and distinct per reducer.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Decomposition {
    pub terms: Vec<ReductionStep>,
}

impl Decomposition {
    pub fn replay(&self, gs: &[Polynomial]) -> Polynomial {
        let n = gs.first().map(Polynomial::arity).unwrap_or(0);
        let mut out = Polynomial::zero(n);
        for t in &self.terms {
            out.add_scaled(&t.coeff, &t.cofactor, &gs[t.reducer]);
        }
        out
    }
}

pub fn involutive_decomposition(s: &Setting, f: &Polynomial, gs: &[Polynomial]) -> Option<Decomposition> {
    let tr = inv_normal_form(s, f, gs);
    if !tr.remainder.is_zero() {
        return None;
    }
    let mut merged: BTreeMap<(usize, Monomial), Q> = BTreeMap::new();
    for st in tr.steps {
        *merged.entry((st.reducer, st.cofactor)).or_insert_with(Q::zero) += st.coeff;
    }
    Some(Decomposition {
        terms: merged
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((reducer, cofactor), coeff)| ReductionStep {
                reducer,
                cofactor,
                coeff,
            })
            .collect(),
    })
}

pub fn membership(f: &Polynomial, b: &InvolutiveBasisResult) -> bool {
    inv_normal_form(&b.setting, f, &b.basis).remainder.is_zero()
}
