//! Evaluation and data-preparation toolkit for translating natural language
//! into first-order logic.
//!
//! - [`syntax`]: formula AST, parser, renderer and canonical form
//! - [`analysis`]: signatures and corpus statistics
//! - [`equiv`]: equivalence and entailment through an SMT solver or finite
//!   model enumeration
//! - [`align`]: predicate-name alignment
//! - [`metrics`]: exact and equivalence accuracy before and after alignment
//! - [`dataset`]: corpus loading, splits and augmentation

pub mod align;
pub mod analysis;
pub mod cli;
pub mod dataset;
pub mod equiv;
pub mod metrics;
pub mod syntax;

pub use syntax::{canonical_form, parse, render, Formula, LexemeStyle, ParseError, Term};
