//! Epistemic logic with unawareness.
//!
//! The crate implements three families of models for reasoning about what
//! agents know when they may be unaware of some propositions:
//!
//! * awareness structures, where each agent carries an explicit awareness
//!   set and explicit knowledge `Xᵢφ` is implicit knowledge plus awareness;
//! * generalized standard models, with objective states projected onto
//!   subjective state spaces of restricted vocabulary;
//! * HMS structures, a lattice of state spaces indexed by vocabularies with
//!   a three-valued valuation and projection maps between spaces.
//!
//! On top of the structures it provides three-valued evaluation including the
//! nonstandard implication `↪`, translations between HMS and awareness
//! structures, weak, strong, objective and classical validity, exhaustive
//! and seeded model enumeration with countermodel search, the pair-based event
//! algebra, and a Hilbert-style proof checker for the axiom systems involved.

pub mod cli;
pub mod eventalg;
pub mod proofcheck;
pub mod semantics;
pub mod structures;
pub mod syntax;
pub mod translate;
pub mod validity;

pub use syntax::{parse, Atom, AtomSet, Formula, Language, LanguageTag, Level};
