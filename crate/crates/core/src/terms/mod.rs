//! Terms over the `p`/`cp`/`csp` signatures, their evaluation, the axiom
//! schemas, and a brute-force refuter.

mod algebra;
mod axioms;
mod check;
mod syntax;

pub use algebra::{eval_term, Carrier, FiniteAlgebra, UnaryOp};
pub use axioms::{boolean_basis, instantiate_axioms, instantiate_derived, Axiom, MAX_DERIVED_DIM};
pub use check::{
    check_equation, check_is_fpa, refutes, with_jobs, CheckOptions, FpaReport, Outcome, Strategy,
    Violation, DEFAULT_BUDGET, DEFAULT_SAMPLES,
};
pub use syntax::{parse_equation, parse_term, print_term, Equation, Term};
