//! Finite-dimensional polyadic set algebras and the machinery around them:
//! finite transformations and their generator words, α-ary relations with
//! the cylindrification, substitution and transposition operations, an
//! equational checker for the defining schemas, the construction that lifts
//! a substitution-free representation to a full one, and substitution in
//! finite-variable first-order logic.

pub mod cli;
pub mod error;
pub mod lifting;
pub mod logic;
pub mod relalg;
pub mod terms;
pub mod transform;

pub use error::{Error, Result};
