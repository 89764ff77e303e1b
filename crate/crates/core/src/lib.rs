//! Decision procedures for basic lattice-expansion logics.
//!
//! The crate provides a display calculus with residuated structural
//! connectives, a proof-search procedure, a refutation calculus, a tableau
//! decision procedure and a finite-lattice model checker that serves as an
//! independent oracle.

pub mod corpus;
pub mod display;
pub mod prover;
pub mod refuter;
pub mod semantics;
pub mod signature;
pub mod syntax;
pub mod tableau;
pub mod tree;

pub use signature::{Family, Signature, Tonicity};
pub use syntax::{Formula, Polarity, Position, Sequent, Side, Structure, Turnstile};
