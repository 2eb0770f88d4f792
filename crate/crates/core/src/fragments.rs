//! Quantifier-prefix classification into the decidable and undecidable fragments.

use std::fmt;

use serde::Serialize;

use crate::syntax::{HyperFormula, Quantifier};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "fragment", rename_all = "kebab-case")]
pub enum FragmentClass {
    /// `∃ⁿ`
    ExistsStar { n: usize },
    /// `∀ᵐ`; `m = 0` is plain LTL, read as an implicit single universal.
    ForallStar { m: usize },
    /// `∃ⁿ∀ᵐ` with `n, m ≥ 1`.
    ExistsForall { n: usize, m: usize },
    /// Some `∀` strictly precedes an `∃`; `position` is that first `∀`.
    ForallExists { position: usize },
    /// Two or more alternations starting existentially (`∃∀∃…`).
    MultiAlternation { alternations: usize },
}

impl FragmentClass {
    pub fn name(&self) -> &'static str {
        match self {
            FragmentClass::ExistsStar { .. } => "exists-star",
            FragmentClass::ForallStar { .. } => "forall-star",
            FragmentClass::ExistsForall { .. } => "exists-forall",
            FragmentClass::ForallExists { .. } => "forall-exists",
            FragmentClass::MultiAlternation { .. } => "multi-alternation",
        }
    }

    pub fn is_decidable(&self) -> bool {
        matches!(
            self,
            FragmentClass::ExistsStar { .. }
                | FragmentClass::ForallStar { .. }
                | FragmentClass::ExistsForall { .. }
        )
    }

    pub fn is_alternation_free(&self) -> bool {
        matches!(
            self,
            FragmentClass::ExistsStar { .. } | FragmentClass::ForallStar { .. }
        )
    }
}

impl fmt::Display for FragmentClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FragmentClass::ExistsStar { n } => write!(f, "exists-star (n={n})"),
            FragmentClass::ForallStar { m } => write!(f, "forall-star (m={m})"),
            FragmentClass::ExistsForall { n, m } => write!(f, "exists-forall (n={n}, m={m})"),
            FragmentClass::ForallExists { position } => {
                write!(f, "forall-exists (first universal at position {position})")
            }
            FragmentClass::MultiAlternation { alternations } => {
                write!(f, "multi-alternation ({alternations} alternations)")
            }
        }
    }
}

/// Classifies a bare quantifier sequence.
pub fn classify_prefix(prefix: &[Quantifier]) -> FragmentClass {
    if let Some(first_forall) = prefix.iter().position(|q| *q == Quantifier::Forall) {
        if prefix[first_forall..].contains(&Quantifier::Exists) {
            if first_forall == 0 {
                return FragmentClass::ForallExists { position: 0 };
            }
            // ∃…∀…∃: the ∀∃ pattern occurs, but the prefix starts existentially
            let alternations = prefix.windows(2).filter(|w| w[0] != w[1]).count();
            return FragmentClass::MultiAlternation { alternations };
        }
        if first_forall == 0 {
            return FragmentClass::ForallStar { m: prefix.len() };
        }
        return FragmentClass::ExistsForall {
            n: first_forall,
            m: prefix.len() - first_forall,
        };
    }
    if prefix.is_empty() {
        FragmentClass::ForallStar { m: 0 }
    } else {
        FragmentClass::ExistsStar { n: prefix.len() }
    }
}

pub fn classify(formula: &HyperFormula) -> FragmentClass {
    let qs: Vec<Quantifier> = formula.prefix().iter().map(|(q, _)| *q).collect();
    classify_prefix(&qs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_hyperltl;
    use Quantifier::{Exists as E, Forall as A};

    #[test]
    fn reference_prefixes() {
        let f = parse_hyperltl("forall p1. forall p2. (G b_p1) & (G !b_p2)").unwrap();
        assert_eq!(classify(&f), FragmentClass::ForallStar { m: 2 });
        let g = parse_hyperltl("exists p0. exists p1. forall p2. (X p_p0) & (G p_p1) & (F p_p2)")
            .unwrap();
        assert_eq!(classify(&g), FragmentClass::ExistsForall { n: 2, m: 1 });
        let h = parse_hyperltl("forall pi. exists pis. exists pip. a_pi & a_pis & a_pip").unwrap();
        assert_eq!(classify(&h), FragmentClass::ForallExists { position: 0 });
    }

    #[test]
    fn exhaustive_prefixes_up_to_five() {
        for len in 1..=5usize {
            for bits in 0..(1u32 << len) {
                let prefix: Vec<Quantifier> = (0..len)
                    .map(|i| if bits >> i & 1 == 1 { A } else { E })
                    .collect();
                let class = classify_prefix(&prefix);
                let alternations = prefix.windows(2).filter(|w| w[0] != w[1]).count();
                // independent characterization of each class
                let expected = if alternations == 0 && prefix[0] == E {
                    FragmentClass::ExistsStar { n: len }
                } else if alternations == 0 {
                    FragmentClass::ForallStar { m: len }
                } else if alternations == 1 && prefix[0] == E {
                    let n = prefix.iter().take_while(|q| **q == E).count();
                    FragmentClass::ExistsForall { n, m: len - n }
                } else if prefix[0] == A {
                    FragmentClass::ForallExists { position: 0 }
                } else {
                    FragmentClass::MultiAlternation { alternations }
                };
                assert_eq!(class, expected, "{prefix:?}");
            }
        }
    }

    #[test]
    fn multi_alternation() {
        assert_eq!(
            classify_prefix(&[E, A, E]),
            FragmentClass::MultiAlternation { alternations: 2 }
        );
        assert_eq!(
            classify_prefix(&[A, A, E]),
            FragmentClass::ForallExists { position: 0 }
        );
    }
}
