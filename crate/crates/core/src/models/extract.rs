use super::{Lasso, TraceSet};
use crate::reductions::{project, LtlReduction, ReductionError};

/// Rebuilds a HyperLTL model from a witness of the reduced LTL formula:
/// the projection on the `∃*` path, the singleton `{ℓ}` on the `∀*` path.
pub fn extract_model(witness: &Lasso, reduction: &LtlReduction) -> Result<TraceSet, ReductionError> {
    match &reduction.substitution {
        Some(subst) => project(witness, subst),
        None => Ok([witness.clone()].into_iter().collect()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reductions::{drop_quantifiers, zip_exists};
    use crate::syntax::parse_hyperltl;

    fn lasso(stem: &[&[&str]], cycle: &[&[&str]]) -> Lasso {
        Lasso::from_names(stem, cycle).unwrap()
    }

    #[test]
    fn exists_path_projects() {
        let f = parse_hyperltl("exists p1. exists p2. a_p1 & G !b_p1 & G b_p2").unwrap();
        let r = zip_exists(&f).unwrap();
        let model = extract_model(&lasso(&[], &[&["a@1", "b@2"]]), &r).unwrap();
        let expected: TraceSet = [lasso(&[], &[&["a"]]), lasso(&[], &[&["b"]])]
            .into_iter()
            .collect();
        assert_eq!(model, expected);
    }

    #[test]
    fn forall_path_is_singleton() {
        let f = parse_hyperltl("forall p1. forall p2. G b_p1").unwrap();
        let r = drop_quantifiers(&f).unwrap();
        let t = lasso(&[], &[&["b"]]);
        let model = extract_model(&t, &r).unwrap();
        assert_eq!(model.len(), 1);
        assert!(model.contains(&t));
    }

    #[test]
    fn identical_witnesses_collapse() {
        let f = parse_hyperltl("exists p1. exists p2. p_p1 & p_p2").unwrap();
        let r = zip_exists(&f).unwrap();
        let model = extract_model(&lasso(&[], &[&["p@1", "p@2"]]), &r).unwrap();
        assert_eq!(model.len(), 1);
        assert!(model.contains(&lasso(&[], &[&["p"]])));
    }

    #[test]
    fn foreign_props_rejected() {
        let f = parse_hyperltl("exists p1. a_p1").unwrap();
        let r = zip_exists(&f).unwrap();
        assert!(matches!(
            extract_model(&lasso(&[], &[&["z@1"]]), &r),
            Err(ReductionError::AlphabetMismatch(_))
        ));
    }
}
