//! Ultimately periodic traces and finite trace sets, with a direct evaluator
//! for the LTL and HyperLTL semantics.
//!
//! The evaluator works on the finite lasso structure: positions
//! `0..stem + loop` where the last position's successor is the loop start.
//! Temporal operators are computed as fixpoints over that graph, so it shares
//! no code with the automaton-based engine and serves as its oracle.

mod eval;
mod extract;
mod text;

use std::collections::BTreeSet;

use crate::syntax::Prop;

pub use extract::extract_model;
pub use eval::{evaluate_body, evaluate_hyperltl, evaluate_ltl, EvalError, TraceAssignment};
pub use text::{parse_trace, parse_trace_set, TraceFormatError};

pub type Valuation = BTreeSet<Prop>;

/// A trace `stem · loopʷ`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lasso {
    stem: Vec<Valuation>,
    cycle: Vec<Valuation>,
}

pub type UltimatelyPeriodicTrace = Lasso;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("the loop of a lasso must be non-empty")]
pub struct EmptyLoop;

impl Lasso {
    pub fn new(stem: Vec<Valuation>, cycle: Vec<Valuation>) -> Result<Self, EmptyLoop> {
        if cycle.is_empty() {
            return Err(EmptyLoop);
        }
        Ok(Lasso { stem, cycle })
    }

    /// Convenience constructor from string slices.
    pub fn from_names(stem: &[&[&str]], cycle: &[&[&str]]) -> Result<Self, EmptyLoop> {
        let conv = |vs: &[&[&str]]| -> Vec<Valuation> {
            vs.iter()
                .map(|v| v.iter().map(|p| Prop::new(*p)).collect())
                .collect()
        };
        Lasso::new(conv(stem), conv(cycle))
    }

    pub fn stem(&self) -> &[Valuation] {
        &self.stem
    }

    pub fn cycle(&self) -> &[Valuation] {
        &self.cycle
    }

    /// Number of distinct positions, `|stem| + |loop|`.
    pub fn positions(&self) -> usize {
        self.stem.len() + self.cycle.len()
    }

    pub fn valuation(&self, i: usize) -> &Valuation {
        if i < self.stem.len() {
            &self.stem[i]
        } else {
            &self.cycle[(i - self.stem.len()) % self.cycle.len()]
        }
    }

    /// The suffix `t[1,∞]`: drops the stem head, or rotates the loop.
    pub fn tail(&self) -> Lasso {
        if self.stem.is_empty() {
            let mut cycle = self.cycle.clone();
            cycle.rotate_left(1);
            Lasso {
                stem: Vec::new(),
                cycle,
            }
        } else {
            Lasso {
                stem: self.stem[1..].to_vec(),
                cycle: self.cycle.clone(),
            }
        }
    }

    /// The suffix `t[k,∞]`.
    pub fn suffix(&self, k: usize) -> Lasso {
        (0..k).fold(self.clone(), |t, _| t.tail())
    }

    /// The shortest spelling of the same word: primitive loop, stem rolled
    /// back into the loop as far as possible.
    pub fn canonical(&self) -> Lasso {
        let n = self.cycle.len();
        let period = (1..=n)
            .find(|d| n.is_multiple_of(*d) && (*d..n).all(|i| self.cycle[i] == self.cycle[i - d]))
            .unwrap_or(n);
        let mut stem = self.stem.clone();
        let mut cycle = self.cycle[..period].to_vec();
        while stem.last().is_some_and(|v| Some(v) == cycle.last()) {
            stem.pop();
            cycle.rotate_right(1);
        }
        Lasso { stem, cycle }
    }

    /// True if both lassos denote the same infinite word.
    pub fn same_word(&self, other: &Lasso) -> bool {
        self.canonical() == other.canonical()
    }

    /// All propositions occurring anywhere in the trace.
    pub fn props(&self) -> BTreeSet<Prop> {
        self.stem
            .iter()
            .chain(&self.cycle)
            .flat_map(|v| v.iter().cloned())
            .collect()
    }
}

/// A finite set of traces; members are stored in canonical form, so two
/// spellings of the same word count once.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct TraceSet {
    traces: BTreeSet<Lasso>,
}

impl TraceSet {
    pub fn new() -> Self {
        TraceSet::default()
    }

    pub fn insert(&mut self, trace: Lasso) -> bool {
        self.traces.insert(trace.canonical())
    }

    pub fn len(&self) -> usize {
        self.traces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.traces.is_empty()
    }

    pub fn contains(&self, trace: &Lasso) -> bool {
        self.traces.contains(&trace.canonical())
    }

    pub fn iter(&self) -> impl Iterator<Item = &Lasso> {
        self.traces.iter()
    }
}

impl FromIterator<Lasso> for TraceSet {
    fn from_iter<I: IntoIterator<Item = Lasso>>(iter: I) -> Self {
        TraceSet {
            traces: iter.into_iter().map(|t| t.canonical()).collect(),
        }
    }
}

impl IntoIterator for TraceSet {
    type Item = Lasso;
    type IntoIter = std::collections::btree_set::IntoIter<Lasso>;

    fn into_iter(self) -> Self::IntoIter {
        self.traces.into_iter()
    }
}

impl<'a> IntoIterator for &'a TraceSet {
    type Item = &'a Lasso;
    type IntoIter = std::collections::btree_set::Iter<'a, Lasso>;

    fn into_iter(self) -> Self::IntoIter {
        self.traces.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuation_is_periodic_after_stem() {
        let t = Lasso::from_names(&[&[]], &[&["p"], &["q"]]).unwrap();
        assert!(t.valuation(0).is_empty());
        assert!(t.valuation(1).contains(&Prop::new("p")));
        assert!(t.valuation(2).contains(&Prop::new("q")));
        assert!(t.valuation(6).contains(&Prop::new("q")));
        assert_eq!(t.positions(), 3);
    }

    #[test]
    fn tail_pops_stem_then_rotates() {
        let t = Lasso::from_names(&[&["a"]], &[&["p"], &["q"]]).unwrap();
        let t1 = t.tail();
        assert_eq!(t1, Lasso::from_names(&[], &[&["p"], &["q"]]).unwrap());
        assert_eq!(t1.tail(), Lasso::from_names(&[], &[&["q"], &["p"]]).unwrap());
        for i in 0..10 {
            assert_eq!(t.suffix(3).valuation(i), t.valuation(i + 3));
        }
    }

    #[test]
    fn canonical_form() {
        let t = Lasso::from_names(&[&["a"], &["p"]], &[&["q"], &["p"], &["q"], &["p"]]).unwrap();
        let c = t.canonical();
        assert_eq!(c, Lasso::from_names(&[&["a"]], &[&["p"], &["q"]]).unwrap());
        for i in 0..12 {
            assert_eq!(t.valuation(i), c.valuation(i));
        }
        let set: TraceSet = [t.clone(), c].into_iter().collect();
        assert_eq!(set.len(), 1);
        assert!(set.contains(&t));
    }

    #[test]
    fn empty_loop_rejected() {
        assert_eq!(Lasso::new(vec![], vec![]), Err(EmptyLoop));
    }
}
