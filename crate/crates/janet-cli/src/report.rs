use serde_json::{json, Map, Value};
use thiserror::Error;

use janet::analytics::AnalyticsError;
use janet::divisions::DivisionError;
use janet::input::InputError;
use janet::involutive::InvolutiveError;
use janet::monomials::MonomialError;
use janet::pde::PdeError;
use janet::polynomials::PolyError;

#[derive(Debug, Error)]
pub enum CliError {
    /// Unreadable or malformed input. Exit code 2.
    #[error("{kind}: {message}")]
    Input { kind: &'static str, message: String },
    /// The computation itself failed. Exit code 1.
    #[error("{kind}: {message}")]
    Domain {
        kind: &'static str,
        message: String,
        witness: Option<String>,
    },
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError::Input {
            kind: "parse",
            message: message.into(),
        }
    }

    pub fn domain(kind: &'static str, message: impl Into<String>, witness: Option<String>) -> Self {
        CliError::Domain {
            kind,
            message: message.into(),
            witness,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input { .. } => 2,
            CliError::Domain { .. } => 1,
        }
    }

    pub fn to_value(&self) -> Value {
        match self {
            CliError::Input { kind, message } => json!({ "kind": kind, "message": message, "witness": null }),
            CliError::Domain { kind, message, witness } => json!({ "kind": kind, "message": message, "witness": witness }),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input {
            kind: "io",
            message: e.to_string(),
        }
    }
}

impl From<InputError> for CliError {
    fn from(e: InputError) -> Self {
        CliError::input(e.to_string())
    }
}

impl From<MonomialError> for CliError {
    fn from(e: MonomialError) -> Self {
        CliError::input(e.to_string())
    }
}

impl From<DivisionError> for CliError {
    fn from(e: DivisionError) -> Self {
        let message = e.to_string();
        match e {
            DivisionError::NotInSet(m) => CliError::domain("not-in-set", message, Some(m)),
            DivisionError::EmptyInput => CliError::domain("empty-input", message, None),
            DivisionError::CapExceeded { monomial, .. } => CliError::domain("cap-exceeded", message, Some(monomial)),
        }
    }
}

impl From<InvolutiveError> for CliError {
    fn from(e: InvolutiveError) -> Self {
        let message = e.to_string();
        match e {
            InvolutiveError::CapExceeded(w) => CliError::domain("cap-exceeded", message, Some(w)),
            InvolutiveError::EmptyInput => CliError::domain("empty-input", message, None),
            InvolutiveError::ZeroPolynomial => CliError::domain("zero-polynomial", message, None),
            InvolutiveError::NotInSet => CliError::domain("not-in-set", message, None),
        }
    }
}

impl From<PolyError> for CliError {
    fn from(e: PolyError) -> Self {
        let message = e.to_string();
        match e {
            PolyError::Parse { .. } | PolyError::Monomial(_) => CliError::input(message),
            PolyError::CapExceeded(w) => CliError::domain("cap-exceeded", message, Some(w)),
            PolyError::ZeroInput => CliError::domain("zero-polynomial", message, None),
        }
    }
}

impl From<PdeError> for CliError {
    fn from(e: PdeError) -> Self {
        let message = e.to_string();
        match e {
            PdeError::Incomplete { lead, var } => CliError::domain("incomplete", message, Some(format!("{lead}*{var}"))),
            PdeError::DegenerateCombine(w) => CliError::domain("degenerate-combine", message, Some(w)),
            PdeError::CapExceeded(w) => CliError::domain("cap-exceeded", message, Some(w)),
            PdeError::Invalid(_) => CliError::domain("invalid-system", message, None),
        }
    }
}

impl From<AnalyticsError> for CliError {
    fn from(e: AnalyticsError) -> Self {
        let message = e.to_string();
        match e {
            AnalyticsError::NotHomogeneous(p) => CliError::domain("not-homogeneous", message, Some(p)),
            AnalyticsError::RangeTooSmall { .. } => CliError::domain("range-too-small", message, None),
            AnalyticsError::Arity(_) => CliError::domain("arity", message, None),
            AnalyticsError::DegreeZero => CliError::domain("degree-zero", message, None),
        }
    }
}

pub fn envelope(command: &str, outcome: &Result<Value, CliError>) -> Value {
    let mut m = Map::new();
    m.insert("command".into(), json!(command));
    match outcome {
        Ok(v) => {
            m.insert("status".into(), json!("ok"));
            m.insert("result".into(), v.clone());
        }
        Err(e) => {
            m.insert("status".into(), json!("error"));
            m.insert("error".into(), e.to_value());
        }
    }
    Value::Object(m)
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.is_empty() => Some("[]".into()),
        Value::Array(a) if a.iter().all(|x| !x.is_array() && !x.is_object()) => {
            Some(a.iter().map(|x| scalar(x).unwrap_or_default()).collect::<Vec<_>>().join(", "))
        }
        _ => None,
    }
}

fn render_into(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_into(x, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(a) => {
            for x in a {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        render_into(x, indent + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}

/// Indented plain-text view of a report.
pub fn render_text(v: &Value) -> String {
    let mut out = String::new();
    render_into(v, 0, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_nests_objects_and_inlines_scalar_lists() {
        let v = json!({ "b": [1, 2], "a": { "x": null, "y": [{ "z": true }] } });
        assert_eq!(render_text(&v), "a:\n  x: -\n  y:\n    -\n      z: true\nb: 1, 2\n");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::input("x").exit_code(), 2);
        assert_eq!(CliError::domain("cap-exceeded", "x", None).exit_code(), 1);
    }
}
