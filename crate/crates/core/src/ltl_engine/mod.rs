//! Plain LTL satisfiability with ultimately periodic witnesses.

mod emptiness;
mod tableau;

pub use emptiness::{find_accepting_lasso, tarjan_scc, StateLasso};
pub use tableau::{build_automaton, Closure, GeneralizedBuchiAutomaton, Node, NodeId, State};

use crate::models::{Lasso, Valuation};
use crate::syntax::Formula;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LtlSat {
    Sat(Lasso),
    Unsat,
}

impl LtlSat {
    pub fn is_sat(&self) -> bool {
        matches!(self, LtlSat::Sat(_))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EngineStats {
    pub automaton_states: usize,
    pub closure_size: usize,
}

/// Checks emptiness and converts an accepting run into a trace over the
/// formula's propositions.
pub fn check_emptiness(automaton: &GeneralizedBuchiAutomaton) -> Option<Lasso> {
    let run = find_accepting_lasso(automaton)?;
    let props = automaton.closure.props();
    let label = |s: &usize| -> Valuation {
        automaton.states[*s]
            .valuation
            .iter()
            .map(|&p| props[p].clone())
            .collect()
    };
    let lasso = Lasso::new(
        run.stem.iter().map(label).collect(),
        run.cycle.iter().map(label).collect(),
    )
    .expect("accepting cycle is non-empty");
    Some(lasso)
}

/// Decides a plain LTL formula, reporting automaton statistics.
pub fn decide(formula: &Formula) -> (LtlSat, EngineStats) {
    let nnf = formula.desugar().to_nnf();
    let automaton = build_automaton(&nnf);
    let stats = EngineStats {
        automaton_states: automaton.states.len(),
        closure_size: automaton.closure.len(),
    };
    let result = match check_emptiness(&automaton) {
        Some(lasso) => LtlSat::Sat(lasso),
        None => LtlSat::Unsat,
    };
    (result, stats)
}

pub fn ltl_sat(formula: &Formula) -> LtlSat {
    decide(formula).0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::evaluate_ltl;
    use crate::syntax::parse_hyperltl;

    fn ltl(text: &str) -> Formula {
        parse_hyperltl(text).unwrap().body().clone()
    }

    fn sat(text: &str) -> Option<Lasso> {
        let f = ltl(text);
        match ltl_sat(&f) {
            LtlSat::Sat(l) => {
                assert!(evaluate_ltl(&l, &f), "witness {l} fails {text}");
                Some(l)
            }
            LtlSat::Unsat => None,
        }
    }

    #[test]
    fn contradictions_are_unsat() {
        assert!(sat("p & !p").is_none());
        assert!(sat("G b & G !b").is_none());
        assert!(sat("false").is_none());
        assert!(sat("G F p & F G !p").is_none());
        assert!(sat("p U q & G !q").is_none());
    }

    #[test]
    fn globally_p_witness() {
        assert_eq!(sat("G p"), Some(Lasso::from_names(&[], &[&["p"]]).unwrap()));
    }

    #[test]
    fn satisfiable_examples() {
        assert!(sat("p U q").is_some());
        assert!(sat("G F p & G F !p").is_some());
        assert!(sat("X X X p & G (p -> X !p)").is_some());
        assert!(sat("(a W b) & G !b").is_some());
        assert!(sat("true").is_some());
    }

    #[test]
    fn zipped_example_is_satisfiable() {
        let f = Formula::conjunction([
            Formula::prop("a@1"),
            Formula::globally(Formula::not(Formula::prop("b@1"))),
            Formula::globally(Formula::prop("b@2")),
        ]);
        let LtlSat::Sat(l) = ltl_sat(&f) else {
            panic!("expected sat")
        };
        assert!(evaluate_ltl(&l, &f));
    }

    #[test]
    fn witness_is_deterministic() {
        let f = ltl("G F a & G F b & G !(a & b) & (c U (a & X b))");
        let w1 = ltl_sat(&f);
        let w2 = ltl_sat(&f);
        assert_eq!(w1, w2);
        assert!(w1.is_sat());
    }

    #[test]
    fn reports_stats() {
        let (_, stats) = decide(&ltl("F p"));
        assert!(stats.automaton_states >= 2);
        assert!(stats.closure_size >= 3);
    }
}
