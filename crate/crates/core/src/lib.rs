//! Satisfiability and implication checking for HyperLTL.
//!
//! The decidable fragments (`∃*`, `∀*`, `∃*∀*`) are reduced to plain LTL and
//! decided by an automaton-based engine; models come back as finite sets of
//! ultimately periodic traces and are re-checked by an independent evaluator.

pub mod fragments;
pub mod implication;
pub mod ltl_engine;
pub mod models;
pub mod pcp;
pub mod reductions;
pub mod solver;
pub mod syntax;

pub use fragments::{classify, FragmentClass};
pub use implication::{check_equivalence, check_implication, ImplicationVerdict};
pub use ltl_engine::{ltl_sat, LtlSat};
pub use models::{evaluate_hyperltl, evaluate_ltl, Lasso, TraceSet};
pub use solver::{hyper_sat, HyperSatResult, SatReport, SolverOptions};
pub use syntax::{parse_hyperltl, Formula, HyperFormula, Quantifier};
