//! Single entry point for HyperLTL satisfiability. Decidable inputs are
//! reduced to LTL; a witness found there is turned back into a trace set and
//! checked against the original formula.

use crate::fragments::{classify, FragmentClass};
use crate::ltl_engine::{decide, LtlSat};
use crate::models::{evaluate_hyperltl, evaluate_ltl, extract_model, EvalError, TraceSet};
use crate::reductions::{
    drop_quantifiers, unroll_universals, zip_exists, LtlReduction, ReductionError,
};
use crate::syntax::HyperFormula;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverOptions {
    /// Largest admissible number of substituted copies `nᵐ` when unrolling.
    pub unroll_limit: usize,
    /// Re-check every model with the direct evaluator.
    pub verify_models: bool,
    /// Largest aligned loop period the evaluator accepts.
    pub period_guard: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            unroll_limit: 1_000_000,
            verify_models: true,
            period_guard: 10_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HyperSatResult {
    Sat { model: TraceSet, verified: bool },
    Unsat,
    UnsupportedFragment { class: FragmentClass, message: String },
    BlowupExceeded { required: usize, limit: usize },
}

impl HyperSatResult {
    pub fn is_sat(&self) -> bool {
        matches!(self, HyperSatResult::Sat { .. })
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolverStats {
    /// Conjuncts of the body handed to the LTL engine; for `∃*∀*` the `nᵐ`
    /// substituted copies before deduplication.
    pub conjuncts: usize,
    pub automaton_states: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SatReport {
    pub result: HyperSatResult,
    pub stats: SolverStats,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolverError {
    /// Self-verification rejected a model: an engine bug, not a user error.
    #[error("internal error: {0}")]
    Internal(String),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

impl From<ReductionError> for SolverError {
    fn from(e: ReductionError) -> Self {
        SolverError::Internal(format!("reduction precondition violated: {e}"))
    }
}

pub fn hyper_sat(formula: &HyperFormula, opts: &SolverOptions) -> Result<SatReport, SolverError> {
    let class = classify(formula);
    let mut stats = SolverStats::default();
    let reduction: LtlReduction = match class {
        FragmentClass::ForallStar { .. } => {
            stats.conjuncts = formula.body().conjuncts().len();
            drop_quantifiers(formula)?
        }
        FragmentClass::ExistsStar { .. } => {
            stats.conjuncts = formula.body().conjuncts().len();
            zip_exists(formula)?
        }
        FragmentClass::ExistsForall { .. } => {
            let unrolled = match unroll_universals(formula, opts.unroll_limit) {
                Ok(u) => u,
                Err(ReductionError::BlowupExceeded { required, limit }) => {
                    return Ok(SatReport {
                        result: HyperSatResult::BlowupExceeded { required, limit },
                        stats,
                    })
                }
                Err(e) => return Err(e.into()),
            };
            stats.conjuncts = unrolled.conjuncts_before_dedup();
            zip_exists(&unrolled.formula)?
        }
        FragmentClass::ForallExists { .. } | FragmentClass::MultiAlternation { .. } => {
            let message = format!(
                "{class}: satisfiability is undecidable once a universal quantifier precedes an existential one"
            );
            return Ok(SatReport {
                result: HyperSatResult::UnsupportedFragment { class, message },
                stats,
            });
        }
    };

    let (verdict, engine) = decide(&reduction.formula);
    stats.automaton_states = engine.automaton_states;
    let witness = match verdict {
        LtlSat::Unsat => {
            return Ok(SatReport {
                result: HyperSatResult::Unsat,
                stats,
            })
        }
        LtlSat::Sat(w) => w,
    };
    let model = extract_model(&witness, &reduction)?;

    let verified = if opts.verify_models {
        if !evaluate_ltl(&witness, &reduction.formula) {
            return Err(SolverError::Internal(format!(
                "LTL witness {witness} does not satisfy the reduced formula"
            )));
        }
        if !evaluate_hyperltl(&model, formula, opts.period_guard)? {
            return Err(SolverError::Internal(format!(
                "model does not satisfy the formula:\n{model}"
            )));
        }
        true
    } else {
        false
    };
    Ok(SatReport {
        result: HyperSatResult::Sat { model, verified },
        stats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::Lasso;
    use crate::syntax::parse_hyperltl;

    fn solve(text: &str) -> SatReport {
        hyper_sat(&parse_hyperltl(text).unwrap(), &SolverOptions::default()).unwrap()
    }

    #[test]
    fn forall_example_unsat() {
        assert_eq!(
            solve("forall p1. forall p2. (G b_p1) & (G !b_p2)").result,
            HyperSatResult::Unsat
        );
    }

    #[test]
    fn exists_example_sat_with_two_witnesses() {
        let report = solve("exists p1. exists p2. a_p1 & G !b_p1 & G b_p2");
        let HyperSatResult::Sat { model, verified } = report.result else {
            panic!("expected sat")
        };
        assert!(verified);
        assert_eq!(model.len(), 2);
    }

    #[test]
    fn exists_forall_example() {
        let report = solve("exists p0. exists p1. forall p2. (X p_p0) & (G p_p1) & (F p_p2)");
        assert!(report.result.is_sat());
        assert_eq!(report.stats.conjuncts, 2);
    }

    #[test]
    fn exists_forall_unsat() {
        // every trace must satisfy both a and !a at position 0
        let report = solve("exists p. forall q. a_p & (a_q <-> !a_p)");
        assert_eq!(report.result, HyperSatResult::Unsat);
    }

    #[test]
    fn forall_exists_refused() {
        let report = solve("forall p. exists q. a_p <-> !a_q");
        assert!(matches!(
            report.result,
            HyperSatResult::UnsupportedFragment {
                class: FragmentClass::ForallExists { .. },
                ..
            }
        ));
        let report = solve("exists p. forall q. exists r. a_p & a_q & a_r");
        assert!(matches!(
            report.result,
            HyperSatResult::UnsupportedFragment {
                class: FragmentClass::MultiAlternation { .. },
                ..
            }
        ));
    }

    #[test]
    fn blowup_guard() {
        let f = parse_hyperltl("exists p. exists q. forall r. forall s. a_r & a_s & a_p & a_q")
            .unwrap();
        let opts = SolverOptions {
            unroll_limit: 3,
            ..SolverOptions::default()
        };
        assert_eq!(
            hyper_sat(&f, &opts).unwrap().result,
            HyperSatResult::BlowupExceeded {
                required: 4,
                limit: 3
            }
        );
    }

    #[test]
    fn plain_ltl_input() {
        let report = solve("G p");
        let HyperSatResult::Sat { model, .. } = report.result else {
            panic!()
        };
        assert!(model.contains(&Lasso::from_names(&[], &[&["p"]]).unwrap()));
    }

    #[test]
    fn verification_can_be_disabled() {
        let f = parse_hyperltl("exists p. a_p").unwrap();
        let opts = SolverOptions {
            verify_models: false,
            ..SolverOptions::default()
        };
        assert!(matches!(
            hyper_sat(&f, &opts).unwrap().result,
            HyperSatResult::Sat { verified: false, .. }
        ));
    }
}
