//! Text formats for ideals and PDE systems. `#` starts a comment; blank lines are ignored.
//!
//! Ideal files:
//! ```text
//! vars x1 x2 x3
//! precedence x3 x2 x1
//! x3*x2^2
//! x3^3*x1^2
//! ```
//!
//! PDE files:
//! ```text
//! vars x1 x2 x3
//! unknowns u
//! eq: d[0,0,2] u = x2 * d[2,0,0] u
//! eq: d[0,2,0] u = 0
//! ```
//! Optional lines: `precedence …`, `weight c1 … cn` (one per row), `order canonical`, and
//! `symbols f1 …` which turns the file into a monomial system whose equations read
//! `eq: d[…] u = f1`.

use thiserror::Error;

use num_traits::One;

use crate::monomials::{Monomial, VariableContext};
use crate::pde::{DerivativeKey, DerivativeOrder, DerivativeOrderSpec, LinearExpr, LinearPdeSystem, MonomialPdeSystem};
use crate::polynomials::{parse_polynomial, Polynomial, Q};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct InputError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> InputError {
    InputError {
        line,
        message: message.into(),
    }
}

/// Non-empty lines with comments stripped, numbered from 1.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(k, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((k + 1, l))
    })
}

fn keyword<'a>(line: &'a str, word: &str) -> Option<&'a str> {
    let rest = line.strip_prefix(word)?;
    (rest.is_empty() || rest.starts_with(char::is_whitespace)).then(|| rest.trim())
}

fn context(vars: Option<(usize, Vec<String>)>, precedence: Option<(usize, Vec<String>)>) -> Result<VariableContext, InputError> {
    let (line, names) = vars.ok_or_else(|| err(1, "missing `vars` line"))?;
    match precedence {
        None => VariableContext::new(&names).map_err(|e| err(line, e.to_string())),
        Some((pl, order)) => {
            let mut desc = Vec::new();
            for name in &order {
                let i = names
                    .iter()
                    .position(|v| v == name)
                    .ok_or_else(|| err(pl, format!("unknown variable `{name}`")))?;
                desc.push(i);
            }
            VariableContext::with_precedence(&names, desc).map_err(|e| err(pl, e.to_string()))
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IdealInput {
    pub ctx: VariableContext,
    pub polynomials: Vec<Polynomial>,
}

impl IdealInput {
    /// The generators as monomials when each is a single term with coefficient 1.
    pub fn monomials(&self) -> Option<Vec<Monomial>> {
        self.polynomials
            .iter()
            .map(|p| {
                let mut t = p.terms();
                match (t.next(), t.next()) {
                    (Some((m, c)), None) if c.is_one() => Some(m.clone()),
                    _ => None,
                }
            })
            .collect()
    }
}

pub fn parse_ideal(text: &str) -> Result<IdealInput, InputError> {
    let mut vars = None;
    let mut precedence = None;
    let mut body = Vec::new();
    for (k, l) in lines(text) {
        if let Some(rest) = keyword(l, "vars") {
            vars = Some((k, rest.split_whitespace().map(String::from).collect()));
        } else if let Some(rest) = keyword(l, "precedence") {
            precedence = Some((k, rest.split_whitespace().map(String::from).collect()));
        } else {
            body.push((k, l));
        }
    }
    let ctx = context(vars, precedence)?;
    let polynomials = body
        .into_iter()
        .map(|(k, l)| parse_polynomial(&ctx, l).map_err(|e| err(k, e.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(IdealInput { ctx, polynomials })
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum PdeInput {
    Linear(LinearPdeSystem),
    Monomial(MonomialPdeSystem),
}

/// Splits at top-level `+`/`-`, keeping each sign with its term.
fn split_terms(s: &str) -> Vec<(bool, String)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut neg = false;
    let mut prev: Option<char> = None;
    for c in s.chars() {
        match c {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            _ => {}
        }
        let at_sign = depth == 0 && (c == '+' || c == '-') && !matches!(prev, Some('^') | Some('/') | Some('*'));
        if at_sign {
            if !cur.trim().is_empty() {
                out.push((neg, cur.trim().to_string()));
            }
            cur.clear();
            neg = c == '-';
        } else {
            cur.push(c);
        }
        if !c.is_whitespace() {
            prev = Some(c);
        }
    }
    if !cur.trim().is_empty() {
        out.push((neg, cur.trim().to_string()));
    }
    out
}

/// Splits a term at top-level `*`.
fn split_factors(term: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in term.char_indices() {
        match c {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            '*' if depth == 0 => {
                out.push(term[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(term[start..].trim());
    out
}

struct PdeHeader {
    ctx: VariableContext,
    unknowns: Vec<String>,
}

impl PdeHeader {
    fn key(&self, factor: &str, line: usize) -> Result<Option<DerivativeKey>, InputError> {
        if let Some(rest) = factor.strip_prefix("d[") {
            let (idx, name) = rest
                .split_once(']')
                .ok_or_else(|| err(line, format!("unclosed `[` in `{factor}`")))?;
            let exps = idx
                .split(',')
                .map(|t| t.trim().parse::<u32>().map_err(|_| err(line, format!("bad index `{t}`"))))
                .collect::<Result<Vec<_>, _>>()?;
            if exps.len() != self.ctx.n() {
                return Err(err(line, format!("`{factor}` needs {} indices", self.ctx.n())));
            }
            let name = name.trim();
            let r = self
                .unknowns
                .iter()
                .position(|u| u == name)
                .ok_or_else(|| err(line, format!("unknown function `{name}`")))?;
            return Ok(Some(DerivativeKey::new(Monomial::new(exps), r)));
        }
        Ok(self
            .unknowns
            .iter()
            .position(|u| u == factor)
            .map(|r| DerivativeKey::new(self.ctx.one(), r)))
    }

    fn expr(&self, side: &str, line: usize) -> Result<LinearExpr, InputError> {
        let n = self.ctx.n();
        let mut out = LinearExpr::zero(n);
        if side.trim() == "0" {
            return Ok(out);
        }
        for (neg, term) in split_terms(side) {
            let mut coeff = Polynomial::constant(n, if neg { -Q::one() } else { Q::one() });
            let mut key = None;
            for factor in split_factors(&term) {
                if let Some(k) = self.key(factor, line)? {
                    if key.replace(k).is_some() {
                        return Err(err(line, format!("term `{term}` has two derivatives")));
                    }
                    continue;
                }
                let f = factor.strip_prefix('(').and_then(|f| f.strip_suffix(')')).unwrap_or(factor);
                let c = parse_polynomial(&self.ctx, f).map_err(|e| err(line, e.to_string()))?;
                coeff = coeff.mul(&c);
            }
            let key = key.ok_or_else(|| err(line, format!("term `{term}` has no derivative")))?;
            out.add_term(key, &coeff);
        }
        Ok(out)
    }
}

pub fn parse_pde(text: &str) -> Result<PdeInput, InputError> {
    let mut vars = None;
    let mut precedence = None;
    let mut unknowns = None;
    let mut symbols: Option<Vec<String>> = None;
    let mut weights: Vec<Vec<u64>> = Vec::new();
    let mut canonical = false;
    let mut eqs = Vec::new();
    for (k, l) in lines(text) {
        if let Some(rest) = keyword(l, "vars") {
            vars = Some((k, rest.split_whitespace().map(String::from).collect()));
        } else if let Some(rest) = keyword(l, "precedence") {
            precedence = Some((k, rest.split_whitespace().map(String::from).collect()));
        } else if let Some(rest) = keyword(l, "unknowns") {
            unknowns = Some(rest.split_whitespace().map(String::from).collect::<Vec<_>>());
        } else if let Some(rest) = keyword(l, "symbols") {
            symbols = Some(rest.split_whitespace().map(String::from).collect());
        } else if let Some(rest) = keyword(l, "weight") {
            let row = rest
                .split_whitespace()
                .map(|t| t.parse::<u64>().map_err(|_| err(k, format!("bad weight `{t}`"))))
                .collect::<Result<Vec<_>, _>>()?;
            weights.push(row);
        } else if let Some(rest) = keyword(l, "order") {
            match rest {
                "canonical" => canonical = true,
                "janet" => canonical = false,
                other => return Err(err(k, format!("unknown order `{other}`"))),
            }
        } else if let Some(rest) = l.strip_prefix("eq:") {
            eqs.push((k, rest.trim()));
        } else {
            return Err(err(k, format!("unrecognised line `{l}`")));
        }
    }
    let ctx = context(vars, precedence)?;
    let unknowns = unknowns.ok_or_else(|| err(1, "missing `unknowns` line"))?;
    if unknowns.is_empty() {
        return Err(err(1, "no unknowns declared"));
    }
    let n = ctx.n();
    if let Some((k, row)) = weights.iter().enumerate().find(|(_, r)| r.len() != n) {
        return Err(err(k + 1, format!("weight row has {} entries, expected {n}", row.len())));
    }
    let header = PdeHeader { ctx, unknowns };
    if let Some(symbols) = symbols {
        if header.unknowns.len() != 1 {
            return Err(err(1, "monomial systems have exactly one unknown"));
        }
        let mut leads = Vec::new();
        let mut names = Vec::new();
        for (k, eq) in eqs {
            let (lhs, rhs) = eq.split_once('=').ok_or_else(|| err(k, "missing `=`"))?;
            let key = header
                .key(lhs.trim(), k)?
                .ok_or_else(|| err(k, format!("`{}` is not a derivative", lhs.trim())))?;
            let sym = rhs.trim();
            if !symbols.iter().any(|s| s == sym) {
                return Err(err(k, format!("undeclared symbol `{sym}`")));
            }
            leads.push(key.alpha);
            names.push(sym.to_string());
        }
        let mut sys = MonomialPdeSystem::new(header.ctx, leads, Some(names)).map_err(|e| err(1, e.to_string()))?;
        sys.unknown = header.unknowns[0].clone();
        return Ok(PdeInput::Monomial(sys));
    }
    let m = header.unknowns.len();
    let order = if canonical {
        DerivativeOrder::canonical(&header.ctx, m)
    } else if weights.is_empty() {
        DerivativeOrder::janet_deglex(&header.ctx, m)
    } else {
        let offsets = vec![vec![0; weights.len() + 1]; m];
        DerivativeOrder::new(DerivativeOrderSpec::Weight { rows: weights, offsets }, &header.ctx, m)
    };
    let mut exprs = Vec::new();
    for (k, eq) in eqs {
        let (lhs, rhs) = eq.split_once('=').ok_or_else(|| err(k, "missing `=`"))?;
        let e = header.expr(lhs, k)?.sub(&header.expr(rhs, k)?);
        exprs.push(e);
    }
    let sys = LinearPdeSystem::new(header.ctx, header.unknowns, order, exprs).map_err(|e| err(1, e.to_string()))?;
    Ok(PdeInput::Linear(sys))
}
