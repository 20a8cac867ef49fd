//! Involutive divisions, Janet bases and Janet's formal analysis of linear PDE systems,
//! all over exact rational arithmetic.

pub mod analytics;
pub mod divisions;
pub mod input;
pub mod involutive;
pub mod monomials;
pub mod pde;
pub mod polynomials;
