//! Reasoning toolkit for a branching-time logic of conditional strong
//! historical necessity.
//!
//! The pieces, bottom to top:
//!
//! - [`syntax`]: formula AST, parser, printers, fragment classification;
//! - [`model`]: finite uniform-depth tree models, timelines, rule contexts
//!   and their JSON document formats;
//! - [`semantics`]: truth evaluation with context update;
//! - [`reduce`]: the two effective reductions (temporal-operator pushing and
//!   conditional-nesting elimination) plus the disjunctive normal form they
//!   and the decision procedure share;
//! - [`decide`]: satisfiability and validity with verified witness models,
//!   and an independent bounded brute-force oracle;
//! - [`proofkit`]: a checker for Hilbert-style derivations in the two
//!   axiomatic systems;
//! - [`testgen`]: deterministic random generators and the randomized suites
//!   the test targets run.

pub mod decide;
pub mod model;
pub mod proofkit;
pub mod reduce;
pub mod semantics;
pub mod syntax;
pub mod testgen;

pub use model::{acceptable, Context, Model, Point, Rule};
pub use semantics::{eval, eval_traced, generated_rule, update_context, Verdict};
pub use syntax::{fragment_of, parse, print, print_sugared, Formula, FragmentTag};
