mod common;

use common::*;
use hyperltl::fragments::classify;
use hyperltl::models::evaluate_ltl;
use hyperltl::syntax::{parse_hyperltl, HyperFormula, Quantifier, TraceVar};
use proptest::prelude::*;

fn any_prefix() -> impl Strategy<Value = Vec<Quantifier>> {
    proptest::collection::vec(
        prop_oneof![Just(Quantifier::Exists), Just(Quantifier::Forall)],
        0..4,
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn parse_inverts_render(f in any_prefix().prop_flat_map(|p| hyper(p, vec!["a", "b", "c"], 4))) {
        let text = f.to_string();
        let back = parse_hyperltl(&text).unwrap();
        prop_assert_eq!(back, f, "rendered as {}", text);
    }

    #[test]
    fn nnf_preserves_semantics(
        f in ltl(vec!["a", "b", "c"], 4),
        t in lasso(vec!["a", "b", "c"], 4, 4),
    ) {
        let nnf = f.to_nnf();
        prop_assert!(nnf.is_nnf());
        prop_assert_eq!(evaluate_ltl(&t, &f), evaluate_ltl(&t, &nnf));
    }

    #[test]
    fn evaluator_matches_naive_semantics(
        f in ltl(vec!["a", "b"], 3),
        t in lasso(vec!["a", "b"], 3, 3),
    ) {
        prop_assert_eq!(evaluate_ltl(&t, &f), naive_holds(&t, &f, 0));
        let shifted = t.suffix(2);
        prop_assert_eq!(evaluate_ltl(&shifted, &f), naive_holds(&t, &f, 2));
    }

    #[test]
    fn desugar_preserves_semantics(
        f in ltl(vec!["a", "b"], 4),
        t in lasso(vec!["a", "b"], 3, 3),
    ) {
        let core = f.desugar();
        prop_assert!(core.is_core());
        prop_assert_eq!(evaluate_ltl(&t, &f), evaluate_ltl(&t, &core));
    }
}

proptest! {
    #[test]
    fn nnf_is_idempotent(f in ltl(vec!["a", "b"], 5)) {
        let once = f.to_nnf();
        prop_assert_eq!(once.to_nnf(), once);
    }

    #[test]
    fn nnf_of_core_formula_at_most_doubles(f in ltl(vec!["a", "b"], 5)) {
        let core = f.desugar();
        prop_assert!(core.to_nnf().size() <= 2 * core.size());
    }

    #[test]
    fn classification_ignores_variable_names(
        f in any_prefix().prop_flat_map(|p| hyper(p, vec!["a"], 2)),
    ) {
        let renamed: HyperFormula = f.rename_vars(|v| TraceVar::new(format!("w{}", v.as_str())));
        prop_assert_eq!(classify(&renamed), classify(&f));
    }
}
