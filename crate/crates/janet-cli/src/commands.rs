use std::path::Path;

use serde_json::{json, Value};

use janet::analytics::{characteristic_function, is_in_involution, Generators};
use janet::divisions::{complementary_monomials, complete_set_traced, is_complete, mult_all, DivisionScheme};
use janet::input::{parse_ideal, parse_pde, IdealInput, PdeInput};
use janet::involutive::{
    inv_normal_form, involutive_completion, involutive_decomposition, membership, CompletionCap, InvolutiveBasisResult, Setting,
};
use janet::monomials::{Monomial, MonomialOrder, VarSet, VariableContext, WeightMatrix};
use janet::pde::{derivative_text, InitialConditionTemplate, JanetCap, LinearPdeSystem, MonomialPdeSystem, PdeError, Verdict};
use janet::polynomials::{buchberger_certified, parse_polynomial, passes_s_criterion, GroebnerCap, Polynomial};

use crate::report::CliError;

#[derive(Clone, Debug)]
pub enum OrderArg {
    Lex,
    DegLex,
    Weight(Vec<Vec<u64>>),
}

impl OrderArg {
    pub fn parse(text: &str) -> Result<OrderArg, CliError> {
        match text {
            "lex" => Ok(OrderArg::Lex),
            "deglex" => Ok(OrderArg::DegLex),
            _ => {
                let path = text
                    .strip_prefix("weight:")
                    .ok_or_else(|| CliError::input(format!("unknown order `{text}`")))?;
                let body = std::fs::read_to_string(path)?;
                let rows = body
                    .lines()
                    .map(|l| l.split('#').next().unwrap_or("").trim())
                    .filter(|l| !l.is_empty())
                    .map(|l| {
                        l.split_whitespace()
                            .map(|w| w.parse::<u64>().map_err(|_| CliError::input(format!("bad weight `{w}`"))))
                            .collect::<Result<Vec<_>, _>>()
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(OrderArg::Weight(rows))
            }
        }
    }

    fn build(&self, ctx: &VariableContext) -> Result<MonomialOrder, CliError> {
        Ok(match self {
            OrderArg::Lex => MonomialOrder::lex(ctx),
            OrderArg::DegLex => MonomialOrder::deglex(ctx),
            OrderArg::Weight(rows) => MonomialOrder::weight(WeightMatrix::new(rows.clone(), ctx.n())?, ctx),
        })
    }
}

pub struct Options {
    pub division: DivisionScheme,
    pub order: OrderArg,
    pub max_degree: u64,
}

struct Ideal {
    input: IdealInput,
    order: MonomialOrder,
}

impl Ideal {
    fn load(path: &Path, opts: &Options) -> Result<Ideal, CliError> {
        let input = parse_ideal(&std::fs::read_to_string(path)?)?;
        if input.polynomials.is_empty() {
            return Err(CliError::input("no generators"));
        }
        let order = opts.order.build(&input.ctx)?;
        Ok(Ideal { input, order })
    }

    fn ctx(&self) -> &VariableContext {
        &self.input.ctx
    }

    fn monomials(&self) -> Result<Vec<Monomial>, CliError> {
        self.input
            .monomials()
            .ok_or_else(|| CliError::input("this command expects monomial generators"))
    }

    /// Generators as monomials, reading polynomials through their leading monomials.
    fn leads(&self) -> Result<Vec<Monomial>, CliError> {
        self.input
            .polynomials
            .iter()
            .map(|p| {
                p.lm(&self.order)
                    .cloned()
                    .ok_or_else(|| CliError::domain("zero-polynomial", "zero generator", None))
            })
            .collect()
    }

    fn mono(&self, m: &Monomial) -> Value {
        json!(self.ctx().format_monomial(m))
    }

    fn poly(&self, p: &Polynomial) -> Value {
        json!(p.format(self.ctx(), &self.order))
    }

    fn vars(&self, s: &VarSet) -> Value {
        json!(self.ctx().format_varset(s))
    }

    fn setting(&self, opts: &Options) -> Setting {
        Setting::new(opts.division.clone(), self.ctx().clone(), self.order.clone())
    }
}

fn partition_table(ideal: &Ideal, us: &[Monomial], mults: &[VarSet]) -> Value {
    let n = ideal.ctx().n();
    us.iter()
        .zip(mults)
        .map(|(u, m)| {
            json!({
                "monomial": ideal.mono(u),
                "multiplicative": ideal.vars(m),
                "non_multiplicative": ideal.vars(&m.complement(n)),
            })
        })
        .collect()
}

pub fn complete(path: &Path, opts: &Options) -> Result<Value, CliError> {
    let ideal = Ideal::load(path, opts)?;
    let us = ideal.monomials()?;
    let traced = complete_set_traced(&opts.division, ideal.ctx(), &us, &ideal.order, opts.max_degree)?;
    let set: Vec<Monomial> = traced.iter().map(|(m, _)| m.clone()).collect();
    let added: Vec<Value> = traced
        .iter()
        .filter_map(|(m, parent)| {
            parent.map(|(k, x)| {
                json!({
                    "monomial": ideal.mono(m),
                    "parent": ideal.mono(&set[k]),
                    "variable": ideal.ctx().name(x),
                })
            })
        })
        .collect();
    let mults = mult_all(&opts.division, ideal.ctx(), &set);
    Ok(json!({
        "division": opts.division.name(),
        "input": us.iter().map(|u| ideal.mono(u)).collect::<Vec<_>>(),
        "added": added,
        "set": partition_table(&ideal, &set, &mults),
    }))
}

pub fn mult_vars(path: &Path, opts: &Options) -> Result<Value, CliError> {
    let ideal = Ideal::load(path, opts)?;
    let us = ideal.leads()?;
    let mults = mult_all(&opts.division, ideal.ctx(), &us);
    let c = is_complete(&opts.division, ideal.ctx(), &us);
    let witness = c
        .witness
        .as_ref()
        .map(|(u, x)| json!({ "monomial": ideal.mono(u), "variable": ideal.ctx().name(*x) }));
    Ok(json!({
        "division": opts.division.name(),
        "entries": partition_table(&ideal, &us, &mults),
        "complete": c.complete,
        "witness": witness,
    }))
}

pub fn comp_monomials(path: &Path, opts: &Options) -> Result<Value, CliError> {
    if opts.division != DivisionScheme::Janet {
        return Err(CliError::domain(
            "unsupported-division",
            "complementary monomials are defined for the Janet division only",
            Some(opts.division.name().to_string()),
        ));
    }
    let ideal = Ideal::load(path, opts)?;
    let us = ideal.monomials()?;
    let c = complementary_monomials(ideal.ctx(), &us)?;
    let strata: Vec<Value> = ideal
        .ctx()
        .highest_first()
        .iter()
        .map(|&i| {
            json!({
                "variable": ideal.ctx().name(i),
                "monomials": c.strata[i].iter().map(|m| json!({
                    "monomial": ideal.mono(&m.monomial),
                    "multiplicative": ideal.vars(&m.partition.mult),
                })).collect::<Vec<_>>(),
            })
        })
        .collect();
    Ok(json!({ "count": c.len(), "strata": strata }))
}

fn basis(ideal: &Ideal, opts: &Options) -> Result<InvolutiveBasisResult, CliError> {
    let cap = CompletionCap {
        max_degree: opts.max_degree,
        ..CompletionCap::default()
    };
    Ok(involutive_completion(&ideal.setting(opts), &ideal.input.polynomials, cap)?)
}

pub fn invbasis(path: &Path, opts: &Options) -> Result<Value, CliError> {
    let ideal = Ideal::load(path, opts)?;
    let b = basis(&ideal, opts)?;
    let entries: Vec<Value> = b
        .basis
        .iter()
        .zip(&b.mults)
        .map(|(g, m)| json!({ "polynomial": ideal.poly(g), "multiplicative": ideal.vars(m) }))
        .collect();
    Ok(json!({
        "division": opts.division.name(),
        "basis": entries,
        "additions": b.additions,
        "certificates": b.certificates.len(),
        "certificates_replay": b.certificates_replay(),
    }))
}

pub fn groebner(path: &Path, opts: &Options) -> Result<Value, CliError> {
    let ideal = Ideal::load(path, opts)?;
    let cap = GroebnerCap {
        max_degree: opts.max_degree,
        ..GroebnerCap::default()
    };
    let c = buchberger_certified(&ideal.input.polynomials, &ideal.order, cap)?;
    let entries: Vec<Value> = c
        .basis
        .iter()
        .zip(&c.cofactors)
        .map(|(g, cs)| json!({ "polynomial": ideal.poly(g), "cofactors": cs.iter().map(|p| ideal.poly(p)).collect::<Vec<_>>() }))
        .collect();
    Ok(json!({
        "basis": entries,
        "s_criterion": passes_s_criterion(&c.basis, &ideal.order),
    }))
}

pub fn member(path: &Path, poly: &str, opts: &Options) -> Result<Value, CliError> {
    let ideal = Ideal::load(path, opts)?;
    let f = parse_polynomial(ideal.ctx(), poly)?;
    let b = basis(&ideal, opts)?;
    let nf = inv_normal_form(&b.setting, &f, &b.basis).remainder;
    let decomposition = involutive_decomposition(&b.setting, &f, &b.basis).map(|d| {
        d.terms
            .iter()
            .map(|s| {
                json!({
                    "element": s.reducer,
                    "cofactor": ideal.mono(&s.cofactor),
                    "coefficient": s.coeff.to_string(),
                })
            })
            .collect::<Vec<_>>()
    });
    Ok(json!({
        "polynomial": ideal.poly(&f),
        "member": membership(&f, &b),
        "normal_form": ideal.poly(&nf),
        "decomposition": decomposition,
    }))
}

/// Integer JSON value when it fits, its decimal string otherwise.
fn big(text: String) -> Value {
    text.parse::<i64>().map(Value::from).unwrap_or(Value::String(text))
}

pub fn hilbert(path: &Path, from: u64, to: u64, opts: &Options) -> Result<Value, CliError> {
    let ideal = Ideal::load(path, opts)?;
    let gens = Generators::from_polynomials(ideal.input.polynomials.clone());
    let prof = characteristic_function(&gens, ideal.ctx().n(), from, to)?;
    Ok(json!({
        "values": prof.values.iter().map(|(p, v)| json!({ "degree": p, "chi": big(v.to_string()) })).collect::<Vec<_>>(),
        "stable_from": prof.stable_from,
        "polynomial": prof.stabilized.format(),
        "lambda": prof.lambda,
        "mu": big(prof.mu.to_string()),
    }))
}

pub fn characters(path: &Path, degree: u64, opts: &Options) -> Result<Value, CliError> {
    let ideal = Ideal::load(path, opts)?;
    let gens = Generators::from_polynomials(ideal.input.polynomials.clone());
    let t = is_in_involution(&gens, ideal.ctx(), degree)?;
    let c = &t.characters;
    Ok(json!({
        "degree": c.degree,
        "variables": c.variables.iter().map(|&i| ideal.ctx().name(i)).collect::<Vec<_>>(),
        "sigma": c.sigma,
        "sigma_prime": c.sigma_prime,
        "sigma_second": c.sigma_second,
        "lhs": t.lhs,
        "rhs": t.rhs,
        "involutive": t.involutive,
        "propagation": t.propagation,
    }))
}

fn template(ctx: &VariableContext, unknowns: &[String], t: &InitialConditionTemplate) -> Value {
    json!({
        "entries": t.entries.iter().map(|e| t.format_entry(ctx, unknowns, e)).collect::<Vec<_>>(),
        "degree_of_generality": t.degree_of_generality,
        "leading_count": t.leading_count,
    })
}

fn linear_report(s: &LinearPdeSystem, opts: &Options) -> Result<Value, CliError> {
    let cap = JanetCap {
        max_order: opts.max_degree,
        ..JanetCap::default()
    };
    let r = s.janet(cap)?;
    let eqs = |es: &[janet::pde::LinearExpr]| es.iter().map(|e| s.format_equation(e)).collect::<Vec<_>>();
    let rounds: Vec<Value> = r
        .rounds
        .iter()
        .map(|round| {
            json!({
                "sigma": eqs(&round.sigma),
                "added": round.completed.added.iter().map(|k| s.format_key(k)).collect::<Vec<_>>(),
                "conditions": round.conditions.iter().map(|c| json!({
                    "equation": s.format_equation(&c.equation),
                    "variable": s.ctx.name(c.var),
                    "normal_form": s.format_expr(&c.normal_form),
                    "trivial": c.trivial,
                })).collect::<Vec<_>>(),
                "new_relations": eqs(&round.new_relations),
            })
        })
        .collect();
    let system: Vec<Value> = r
        .system
        .equations
        .iter()
        .zip(&r.system.mults)
        .map(|(e, m)| json!({ "equation": s.format_equation(&e.expr), "multiplicative": s.ctx.format_varset(m) }))
        .collect();
    let (verdict, obstruction) = match &r.verdict {
        Verdict::Canonical => ("canonical", Vec::new()),
        Verdict::Obstruction(es) => ("obstruction", eqs(es)),
    };
    let initial = match r.verdict {
        Verdict::Canonical => template(&s.ctx, &s.unknowns, &s.initial_conditions(&r.system, None)?),
        Verdict::Obstruction(_) => Value::Null,
    };
    Ok(json!({
        "kind": "linear",
        "unknowns": s.unknowns,
        "rounds": rounds,
        "verdict": verdict,
        "obstruction": obstruction,
        "system": system,
        "added_relations": eqs(&r.added_relations()),
        "initial_conditions": initial,
    }))
}

fn monomial_report(s: &MonomialPdeSystem, opts: &Options) -> Result<Value, CliError> {
    let was_complete = !matches!(s.compatibility(), Err(PdeError::Incomplete { .. }));
    let c = if was_complete {
        s.clone()
    } else {
        s.complete(opts.max_degree)?
    };
    let equations: Vec<String> = c
        .leads
        .iter()
        .zip(&c.rhs)
        .map(|(u, f)| format!("{} = {}", derivative_text(&c.ctx, u, &c.unknown), c.format_symbol(f)))
        .collect();
    let compat: Vec<Value> = c
        .compatibility()?
        .iter()
        .map(|k| json!({ "identity": c.format_identity(k), "condition": c.format_condition(k), "trivial": k.trivial }))
        .collect();
    let t = c.initial_conditions(None)?;
    Ok(json!({
        "kind": "monomial",
        "completed": !was_complete,
        "added": c.leads[s.leads.len()..].iter().map(|u| c.ctx.format_monomial(u)).collect::<Vec<_>>(),
        "equations": equations,
        "compatibility": compat,
        "initial_conditions": template(&c.ctx, std::slice::from_ref(&c.unknown), &t),
    }))
}

pub fn pde_analyze(path: &Path, opts: &Options) -> Result<Value, CliError> {
    match parse_pde(&std::fs::read_to_string(path)?)? {
        PdeInput::Linear(s) => linear_report(&s, opts),
        PdeInput::Monomial(s) => monomial_report(&s, opts),
    }
}
