//! Implication and equivalence between alternation-free HyperLTL formulas.
//!
//! `ψ ⇒ φ` fails iff `ψ ∧ ¬φ` is satisfiable. Negating `φ` dualizes its
//! prefix; the two prefixes are then merged with existentials first, which
//! keeps the check inside the `∃*∀*` fragment:
//!
//! | ψ  | φ  | checked formula         |
//! |----|----|-------------------------|
//! | ∀* | ∀* | `∃(φ-vars) ∀(ψ-vars)`   |
//! | ∃* | ∃* | `∃(ψ-vars) ∀(φ-vars)`   |
//! | ∀* | ∃* | `∀(ψ-vars) ∀(φ-vars)`   |
//! | ∃* | ∀* | `∃(ψ-vars) ∃(φ-vars)`   |

use std::collections::BTreeSet;

use crate::fragments::{classify, FragmentClass};
use crate::models::{evaluate_hyperltl, TraceSet};
use crate::solver::{hyper_sat, HyperSatResult, SolverError, SolverOptions, SolverStats};
use crate::syntax::{Atom, Formula, HyperFormula, Quantifier, TraceVar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ImplicationVerdict {
    Holds,
    /// A trace set satisfying the antecedent but not the consequent.
    Fails(TraceSet),
    Unsupported(String),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ImplicationError {
    #[error("unrolling needs {required} substituted copies, limit is {limit}")]
    BlowupExceeded { required: usize, limit: usize },
    #[error(transparent)]
    Solver(#[from] SolverError),
}

/// Reads a quantifier-free formula as `∀π. φ(π)`.
fn lift_plain(formula: &HyperFormula, taken: &BTreeSet<TraceVar>) -> HyperFormula {
    if !formula.prefix().is_empty() {
        return formula.clone();
    }
    let var = fresh_name("pi", taken);
    let body = formula.body().map_atoms(&mut |a| {
        Formula::Atom(Atom {
            prop: a.prop.clone(),
            trace: Some(var.clone()),
        })
    });
    HyperFormula::new_unchecked(vec![(Quantifier::Forall, var)], body)
}

fn fresh_name(base: &str, taken: &BTreeSet<TraceVar>) -> TraceVar {
    (1..)
        .map(|k| TraceVar::new(format!("{base}{k}")))
        .find(|v| !taken.contains(v))
        .expect("unbounded supply of names")
}

/// Renames the variables of `formula` that clash with `avoid` by suffixing digits.
pub fn rename_apart(formula: &HyperFormula, avoid: &BTreeSet<TraceVar>) -> HyperFormula {
    let mut taken: BTreeSet<TraceVar> = avoid.iter().cloned().collect();
    taken.extend(formula.variables().cloned());
    let mut renaming = Vec::new();
    for v in formula.variables() {
        if avoid.contains(v) {
            let fresh = fresh_name(v.as_str(), &taken);
            taken.insert(fresh.clone());
            renaming.push((v.clone(), fresh));
        }
    }
    formula.rename_vars(|v| {
        renaming
            .iter()
            .find(|(from, _)| from == v)
            .map_or_else(|| v.clone(), |(_, to)| to.clone())
    })
}

/// Builds the prenex formula for `ψ ∧ ¬φ`; both inputs must be alternation-free
/// and renamed apart.
pub fn negated_implication(antecedent: &HyperFormula, consequent: &HyperFormula) -> HyperFormula {
    let negated: Vec<(Quantifier, TraceVar)> = consequent
        .prefix()
        .iter()
        .map(|(q, v)| (q.dual(), v.clone()))
        .collect();
    let mut prefix: Vec<(Quantifier, TraceVar)> = Vec::new();
    for q in [Quantifier::Exists, Quantifier::Forall] {
        prefix.extend(antecedent.prefix().iter().filter(|(x, _)| *x == q).cloned());
        prefix.extend(negated.iter().filter(|(x, _)| *x == q).cloned());
    }
    let body = Formula::and(
        antecedent.body().clone(),
        Formula::not(consequent.body().clone()),
    );
    HyperFormula::new_unchecked(prefix, body)
}

pub fn check_implication(
    antecedent: &HyperFormula,
    consequent: &HyperFormula,
    opts: &SolverOptions,
) -> Result<ImplicationVerdict, ImplicationError> {
    Ok(implication_report(antecedent, consequent, opts)?.0)
}

/// [`check_implication`] together with the statistics of the underlying
/// satisfiability check.
pub fn implication_report(
    antecedent: &HyperFormula,
    consequent: &HyperFormula,
    opts: &SolverOptions,
) -> Result<(ImplicationVerdict, SolverStats), ImplicationError> {
    let antecedent = lift_plain(antecedent, &BTreeSet::new());
    let consequent = lift_plain(consequent, &antecedent.variables().cloned().collect());
    for (side, f) in [("antecedent", &antecedent), ("consequent", &consequent)] {
        let class = classify(f);
        if !class.is_alternation_free() {
            return Ok((
                ImplicationVerdict::Unsupported(format!(
                    "{side} is {class}; implication is only decided between alternation-free formulas"
                )),
                SolverStats::default(),
            ));
        }
    }
    let consequent = rename_apart(&consequent, &antecedent.variables().cloned().collect());
    let check = negated_implication(&antecedent, &consequent);
    debug_assert!(matches!(
        classify(&check),
        FragmentClass::ExistsStar { .. }
            | FragmentClass::ForallStar { .. }
            | FragmentClass::ExistsForall { .. }
    ));

    let report = hyper_sat(&check, opts)?;
    let verdict = match report.result {
        HyperSatResult::Unsat => ImplicationVerdict::Holds,
        HyperSatResult::Sat { model, .. } => {
            if opts.verify_models {
                let sat_ante = evaluate_hyperltl(&model, &antecedent, opts.period_guard)
                    .map_err(SolverError::from)?;
                let sat_cons = evaluate_hyperltl(&model, &consequent, opts.period_guard)
                    .map_err(SolverError::from)?;
                if !sat_ante || sat_cons {
                    return Err(SolverError::Internal(format!(
                        "countermodel check failed (antecedent {sat_ante}, consequent {sat_cons}):\n{model}"
                    ))
                    .into());
                }
            }
            ImplicationVerdict::Fails(model)
        }
        HyperSatResult::BlowupExceeded { required, limit } => {
            return Err(ImplicationError::BlowupExceeded { required, limit })
        }
        HyperSatResult::UnsupportedFragment { message, .. } => {
            ImplicationVerdict::Unsupported(message)
        }
    };
    Ok((verdict, report.stats))
}

/// `(ψ ⇒ φ, φ ⇒ ψ)`
pub fn check_equivalence(
    left: &HyperFormula,
    right: &HyperFormula,
    opts: &SolverOptions,
) -> Result<(ImplicationVerdict, ImplicationVerdict), ImplicationError> {
    Ok((
        check_implication(left, right, opts)?,
        check_implication(right, left, opts)?,
    ))
}
