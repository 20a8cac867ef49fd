//! Monomial PDE systems `D^α φ = f_α`: completion, compatibility conditions and
//! initial-condition templates.

use std::collections::BTreeSet;

use num_traits::Zero;

use super::derivative::derivative_text;
use super::PdeError;
use crate::divisions::{complementary_monomials, complete_set_traced, divisor_index, janet_mult_all, DivisionScheme};
use crate::monomials::{Monomial, MonomialOrder, VariableContext};
use crate::polynomials::Q;

/// `∂^deriv f_base`, a formal derivative of one of the declared right-hand sides.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SymbolTerm {
    pub base: usize,
    pub deriv: Monomial,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MonomialPdeSystem {
    pub ctx: VariableContext,
    pub unknown: String,
    pub symbols: Vec<String>,
    pub leads: Vec<Monomial>,
    pub rhs: Vec<SymbolTerm>,
}

/// `∂_x f_u = D^γ f_v` where `u·x = v·γ` and `v` is the Janet divisor of `u·x`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CompatibilityCondition {
    pub lead: Monomial,
    pub var: usize,
    pub divisor: Monomial,
    pub gamma: Monomial,
    pub left: SymbolTerm,
    pub right: SymbolTerm,
    pub trivial: bool,
}

impl MonomialPdeSystem {
    /// One equation per lead, right-hand sides `f1, f2, …` unless names are given.
    pub fn new(ctx: VariableContext, leads: Vec<Monomial>, symbols: Option<Vec<String>>) -> Result<Self, PdeError> {
        if leads.is_empty() {
            return Err(PdeError::Invalid("no equations".into()));
        }
        let distinct: BTreeSet<&Monomial> = leads.iter().collect();
        if distinct.len() != leads.len() {
            return Err(PdeError::Invalid("leading derivatives must be distinct".into()));
        }
        let symbols = symbols.unwrap_or_else(|| (1..=leads.len()).map(|i| format!("f{i}")).collect());
        if symbols.len() != leads.len() {
            return Err(PdeError::Invalid("one symbol per equation is required".into()));
        }
        let rhs = (0..leads.len())
            .map(|i| SymbolTerm {
                base: i,
                deriv: ctx.one(),
            })
            .collect();
        Ok(MonomialPdeSystem {
            ctx,
            unknown: "φ".to_string(),
            symbols,
            leads,
            rhs,
        })
    }

    pub fn format_symbol(&self, s: &SymbolTerm) -> String {
        derivative_text(&self.ctx, &s.deriv, &self.symbols[s.base])
    }

    pub fn format_condition(&self, c: &CompatibilityCondition) -> String {
        format!("{} = {}", self.format_symbol(&c.left), self.format_symbol(&c.right))
    }

    /// The factorisation `u.x = v.γ` behind a condition, e.g. `x5*x3.x4 = x5*x4.x3`.
    pub fn format_identity(&self, c: &CompatibilityCondition) -> String {
        format!(
            "{}.{} = {}.{}",
            self.ctx.format_monomial(&c.lead),
            self.ctx.name(c.var),
            self.ctx.format_monomial(&c.divisor),
            self.ctx.format_monomial(&c.gamma)
        )
    }

    /// Completes the lead set; each added lead `u·x` gets right-hand side `∂_x` of that of `u`.
    pub fn complete(&self, degree_cap: u64) -> Result<MonomialPdeSystem, PdeError> {
        let order = MonomialOrder::deglex(&self.ctx);
        let traced = complete_set_traced(&DivisionScheme::Janet, &self.ctx, &self.leads, &order, degree_cap)
            .map_err(|e| PdeError::CapExceeded(e.to_string()))?;
        let mut out = self.clone();
        out.leads.clear();
        out.rhs.clear();
        for (k, (m, parent)) in traced.into_iter().enumerate() {
            let rhs = match parent {
                None => self.rhs[k].clone(),
                Some((p, x)) => {
                    let s: &SymbolTerm = &out.rhs[p];
                    SymbolTerm {
                        base: s.base,
                        deriv: s.deriv.mul_var(x),
                    }
                }
            };
            out.leads.push(m);
            out.rhs.push(rhs);
        }
        Ok(out)
    }

    fn check_complete(&self) -> Result<(), PdeError> {
        let mults = janet_mult_all(&self.ctx, &self.leads);
        for (k, u) in self.leads.iter().enumerate() {
            for x in mults[k].complement(self.ctx.n()).indices() {
                if divisor_index(&DivisionScheme::Janet, &self.ctx, &self.leads, &mults, &u.mul_var(x)).is_none() {
                    return Err(PdeError::Incomplete {
                        lead: self.ctx.format_monomial(u),
                        var: self.ctx.name(x).to_string(),
                    });
                }
            }
        }
        Ok(())
    }

    /// One condition per lead and non-multiplicative variable, in lead order and from the
    /// highest variable down.
    pub fn compatibility(&self) -> Result<Vec<CompatibilityCondition>, PdeError> {
        self.check_complete()?;
        let mults = janet_mult_all(&self.ctx, &self.leads);
        let mut out = Vec::new();
        for (k, u) in self.leads.iter().enumerate() {
            let non = mults[k].complement(self.ctx.n());
            for &x in self.ctx.highest_first() {
                if !non.contains(x) {
                    continue;
                }
                let ux = u.mul_var(x);
                let d = divisor_index(&DivisionScheme::Janet, &self.ctx, &self.leads, &mults, &ux).expect("complete");
                let gamma = self.leads[d].quotient(&ux).expect("divisor");
                let left = SymbolTerm {
                    base: self.rhs[k].base,
                    deriv: self.rhs[k].deriv.mul_var(x),
                };
                let right = SymbolTerm {
                    base: self.rhs[d].base,
                    deriv: self.rhs[d].deriv.mul(&gamma),
                };
                out.push(CompatibilityCondition {
                    lead: u.clone(),
                    var: x,
                    divisor: self.leads[d].clone(),
                    gamma,
                    trivial: left == right,
                    left,
                    right,
                });
            }
        }
        Ok(out)
    }

    pub fn initial_conditions(&self, base_point: Option<&[Q]>) -> Result<InitialConditionTemplate, PdeError> {
        self.check_complete()?;
        initial_conditions_for(
            &self.ctx,
            std::slice::from_ref(&self.leads),
            std::slice::from_ref(&self.unknown),
            base_point,
        )
    }
}

/// `D^β φ^r |_{locus} = name(args)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InitialCondition {
    pub beta: Monomial,
    pub unknown: usize,
    pub name: String,
    pub args: Vec<usize>,
    pub locus: Vec<(usize, Q)>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InitialConditionTemplate {
    pub entries: Vec<InitialCondition>,
    /// Largest number of arguments of an initial function.
    pub degree_of_generality: usize,
    /// Number of initial functions with that many arguments.
    pub leading_count: usize,
}

impl InitialConditionTemplate {
    pub fn format_entry(&self, ctx: &VariableContext, unknowns: &[String], e: &InitialCondition) -> String {
        let lhs = derivative_text(ctx, &e.beta, &unknowns[e.unknown]);
        let locus: Vec<String> = e.locus.iter().map(|(i, v)| format!("{}={v}", ctx.name(*i))).collect();
        let args: Vec<&str> = e.args.iter().map(|&i| ctx.name(i)).collect();
        if locus.is_empty() {
            format!("{lhs} = {}({})", e.name, args.join(","))
        } else {
            format!("{lhs}|{{{}}} = {}({})", locus.join(","), e.name, args.join(","))
        }
    }
}

/// Initial-condition template for the lead sets of several unknowns. Strata are listed from
/// the highest variable down, monomials within a stratum in ascending deglex order.
pub fn initial_conditions_for(
    ctx: &VariableContext,
    leads: &[Vec<Monomial>],
    unknowns: &[String],
    base_point: Option<&[Q]>,
) -> Result<InitialConditionTemplate, PdeError> {
    let base: Vec<Q> = match base_point {
        Some(p) if p.len() == ctx.n() => p.to_vec(),
        Some(_) => return Err(PdeError::Invalid("base point has the wrong length".into())),
        None => vec![Q::zero(); ctx.n()],
    };
    let several = unknowns.len() > 1;
    let name = |r: usize, beta: &Monomial| {
        let idx: Vec<String> = beta.exps().iter().map(u32::to_string).collect();
        if several {
            format!("{}_{{{}}}", unknowns[r], idx.join(","))
        } else {
            format!("φ_{{{}}}", idx.join(","))
        }
    };
    let mut entries = Vec::new();
    for (r, us) in leads.iter().enumerate() {
        if us.is_empty() {
            let beta = ctx.one();
            entries.push(InitialCondition {
                name: name(r, &beta),
                beta,
                unknown: r,
                args: (0..ctx.n()).collect(),
                locus: Vec::new(),
            });
            continue;
        }
        let comp = complementary_monomials(ctx, us).map_err(|e| PdeError::Invalid(e.to_string()))?;
        for &v in ctx.highest_first() {
            for c in comp.strata[v].iter().rev() {
                let args = c.partition.mult.indices();
                let locus = c
                    .partition
                    .nonmult
                    .indices()
                    .into_iter()
                    .map(|i| (i, base[i].clone()))
                    .collect();
                entries.push(InitialCondition {
                    name: name(r, &c.monomial),
                    beta: c.monomial.clone(),
                    unknown: r,
                    args,
                    locus,
                });
            }
        }
    }
    let degree_of_generality = entries.iter().map(|e| e.args.len()).max().unwrap_or(0);
    let leading_count = entries.iter().filter(|e| e.args.len() == degree_of_generality).count();
    Ok(InitialConditionTemplate {
        entries,
        degree_of_generality,
        leading_count,
    })
}
