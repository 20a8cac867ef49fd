//! Janet's formal analysis of PDE systems: monomial systems with opaque right-hand sides,
//! and linear systems reduced to canonical form.

pub mod derivative;
pub mod expr;
pub mod linear;
pub mod monomial_system;

use thiserror::Error;

pub use derivative::{derivative_text, phi, phi_inv, DerivativeKey, DerivativeOrder, DerivativeOrderSpec};
pub use expr::{format_key, LinearExpr, Operator, Trace};
pub use linear::{IntegrabilityCondition, JanetCap, JanetReport, LinearPdeSystem, PdeEquation, Round, Verdict};
pub use monomial_system::{CompatibilityCondition, InitialCondition, InitialConditionTemplate, MonomialPdeSystem, SymbolTerm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PdeError {
    #[error("lead set is not complete: {lead} times {var} has no Janet divisor")]
    Incomplete { lead: String, var: String },
    #[error("degenerate combination: {0}")]
    DegenerateCombine(String),
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    #[error("invalid system: {0}")]
    Invalid(String),
}
