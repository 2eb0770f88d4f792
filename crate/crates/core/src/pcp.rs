//! Post's Correspondence Problem as `∀π ∃π_s ∃π′` HyperLTL formulas, plus
//! the witness trace set of a known solution.
//!
//! Each trace position carries exactly one pair proposition `(x, y)`: `x` is
//! a symbol of the α track, `y` of the β track. A dotted symbol marks the
//! first symbol of a stone, `#` marks the end of a track. Pair propositions
//! are named `p_<x>_<y>`, with dotted symbols prefixed by `d` and `#`
//! written `hash`, e.g. `(ȧ, b)` is `p_da_b`.
//!
//! The formula requires a solution trace `π_s` (dotted, equal components,
//! synchronous `(#,#)ʷ` ending), that every trace starts with a valid stone
//! or is `(#,#)ʷ`, and that for every trace starting with stone `i` there is
//! a trace with that stone removed: the α track shifted by `|αᵢ|` and the β
//! track by `|βᵢ|`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::models::{Lasso, TraceSet, Valuation};
use crate::syntax::{Formula, HyperFormula, Prop, Quantifier, TraceVar};

/// Variable names of the generated prefix `∀π ∃π_s ∃π′`.
pub const VAR_ALL: &str = "pi";
pub const VAR_SOLUTION: &str = "pis";
pub const VAR_SHIFTED: &str = "pip";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PcpError {
    #[error("invalid PCP instance: {0}")]
    InvalidInstance(String),
    #[error("index sequence is not a solution: α gives `{alpha}`, β gives `{beta}`")]
    NotASolution { alpha: String, beta: String },
}

/// A PCP instance; symbols are single alphanumeric characters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawInstance", into = "RawInstance")]
pub struct PcpInstance {
    alphabet: Vec<char>,
    stones: Vec<(Vec<char>, Vec<char>)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawInstance {
    alphabet: Vec<String>,
    stones: Vec<(String, String)>,
}

impl TryFrom<RawInstance> for PcpInstance {
    type Error = PcpError;

    fn try_from(raw: RawInstance) -> Result<Self, PcpError> {
        let mut alphabet = Vec::new();
        for s in &raw.alphabet {
            let mut chars = s.chars();
            match (chars.next(), chars.next()) {
                (Some(c), None) => alphabet.push(c),
                _ => {
                    return Err(PcpError::InvalidInstance(format!(
                        "symbol `{s}` is not a single character"
                    )))
                }
            }
        }
        let stones = raw
            .stones
            .iter()
            .map(|(a, b)| (a.chars().collect(), b.chars().collect()))
            .collect();
        PcpInstance::new(alphabet, stones)
    }
}

impl From<PcpInstance> for RawInstance {
    fn from(inst: PcpInstance) -> Self {
        RawInstance {
            alphabet: inst.alphabet.iter().map(|c| c.to_string()).collect(),
            stones: inst
                .stones
                .iter()
                .map(|(a, b)| (a.iter().collect(), b.iter().collect()))
                .collect(),
        }
    }
}

/// `{"indices": [3, 2, 3, 1]}`, 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PcpSolution {
    pub indices: Vec<usize>,
}

impl PcpInstance {
    pub fn new(alphabet: Vec<char>, stones: Vec<(Vec<char>, Vec<char>)>) -> Result<Self, PcpError> {
        let invalid = |m: String| Err(PcpError::InvalidInstance(m));
        if alphabet.is_empty() {
            return invalid("empty alphabet".into());
        }
        let mut seen = BTreeSet::new();
        for &c in &alphabet {
            if !c.is_ascii_alphanumeric() {
                return invalid(format!("symbol `{c}` is not alphanumeric"));
            }
            if !seen.insert(c) {
                return invalid(format!("duplicate symbol `{c}`"));
            }
        }
        if stones.is_empty() {
            return invalid("no stones".into());
        }
        for (i, (a, b)) in stones.iter().enumerate() {
            if a.is_empty() || b.is_empty() {
                return invalid(format!("stone {} has an empty word", i + 1));
            }
            if let Some(c) = a.iter().chain(b).find(|c| !seen.contains(c)) {
                return invalid(format!("stone {} uses symbol `{c}` outside the alphabet", i + 1));
            }
        }
        Ok(PcpInstance { alphabet, stones })
    }

    pub fn from_json(text: &str) -> Result<Self, String> {
        serde_json::from_str(text).map_err(|e| e.to_string())
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    pub fn stones(&self) -> &[(Vec<char>, Vec<char>)] {
        &self.stones
    }

    /// The α and β words of an index sequence (1-based).
    pub fn words(&self, indices: &[usize]) -> Result<(String, String), PcpError> {
        let mut alpha = String::new();
        let mut beta = String::new();
        for &i in indices {
            let (a, b) = self.stones.get(i.wrapping_sub(1)).ok_or_else(|| {
                PcpError::InvalidInstance(format!("stone index {i} out of range"))
            })?;
            alpha.extend(a);
            beta.extend(b);
        }
        Ok((alpha, beta))
    }

    pub fn is_solution(&self, indices: &[usize]) -> bool {
        !indices.is_empty() && matches!(self.words(indices), Ok((a, b)) if a == b)
    }
}

/// One component of a pair proposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Symbol {
    Plain(char),
    Dotted(char),
    End,
}

impl Symbol {
    fn name(self) -> String {
        match self {
            Symbol::Plain(c) => c.to_string(),
            Symbol::Dotted(c) => format!("d{c}"),
            Symbol::End => "hash".into(),
        }
    }

    fn undotted(self) -> Option<char> {
        match self {
            Symbol::Plain(c) | Symbol::Dotted(c) => Some(c),
            Symbol::End => None,
        }
    }
}

/// `Σ′ = (Σ ∪ Σ̇ ∪ {#})²`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairAlphabet {
    symbols: Vec<Symbol>,
}

impl PairAlphabet {
    pub fn new(inst: &PcpInstance) -> Self {
        let mut symbols: Vec<Symbol> = inst.alphabet.iter().map(|&c| Symbol::Plain(c)).collect();
        symbols.extend(inst.alphabet.iter().map(|&c| Symbol::Dotted(c)));
        symbols.push(Symbol::End);
        PairAlphabet { symbols }
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn prop(x: Symbol, y: Symbol) -> Prop {
        Prop::new(format!("p_{}_{}", x.name(), y.name()))
    }

    /// All `(2|Σ|+1)²` pair propositions.
    pub fn props(&self) -> Vec<Prop> {
        self.pairs().map(|(x, y)| Self::prop(x, y)).collect()
    }

    fn pairs(&self) -> impl Iterator<Item = (Symbol, Symbol)> + '_ {
        self.symbols
            .iter()
            .flat_map(move |&x| self.symbols.iter().map(move |&y| (x, y)))
    }

    /// `⋁ (x, y)_var` over `x ∈ left`, `y ∈ right`.
    fn any_of(&self, left: &dyn Fn(Symbol) -> bool, right: &dyn Fn(Symbol) -> bool, var: &str) -> Formula {
        Formula::disjunction(
            self.pairs()
                .filter(|&(x, y)| left(x) && right(y))
                .map(|(x, y)| indexed(Self::prop(x, y), var)),
        )
    }
}

fn indexed(prop: Prop, var: &str) -> Formula {
    Formula::indexed(prop.as_str(), var)
}

fn end_pair(var: &str) -> Formula {
    indexed(PairAlphabet::prop(Symbol::End, Symbol::End), var)
}

/// Constraint on one track at one position of a stone start.
#[derive(Clone, Copy)]
enum Slot {
    Any,
    Is(Symbol),
    StartOrEnd,
}

impl Slot {
    fn admits(self, s: Symbol) -> bool {
        match self {
            Slot::Any => true,
            Slot::Is(t) => s == t,
            Slot::StartOrEnd => matches!(s, Symbol::Dotted(_) | Symbol::End),
        }
    }
}

fn track_slots(word: &[char], len: usize) -> Vec<Slot> {
    (0..len)
        .map(|k| match k {
            0 => Slot::Is(Symbol::Dotted(word[0])),
            k if k < word.len() => Slot::Is(Symbol::Plain(word[k])),
            k if k == word.len() => Slot::StartOrEnd,
            _ => Slot::Any,
        })
        .collect()
}

/// The trace bound to `var` starts with stone `(alpha, beta)`.
fn stone_start(sigma: &PairAlphabet, alpha: &[char], beta: &[char], var: &str) -> Formula {
    let len = alpha.len().max(beta.len()) + 1;
    let a = track_slots(alpha, len);
    let b = track_slots(beta, len);
    Formula::conjunction((0..len).filter_map(|k| {
        if matches!((a[k], b[k]), (Slot::Any, Slot::Any)) {
            return None;
        }
        let (sa, sb) = (a[k], b[k]);
        Some(Formula::next_n(k, sigma.any_of(&|x| sa.admits(x), &|y| sb.admits(y), var)))
    }))
}

/// `π′` is `π` with its first stone removed: each track is shifted by its own
/// stone length, ignoring dots.
fn stone_delete(sigma: &PairAlphabet, alpha_len: usize, beta_len: usize) -> Formula {
    let mut classes: Vec<Option<char>> = sigma
        .symbols()
        .iter()
        .map(|s| s.undotted())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    // letters first, then #
    classes.rotate_left(1);
    let mut clauses = Vec::new();
    for (shift, first) in [(alpha_len, true), (beta_len, false)] {
        for &class in &classes {
            let in_class = move |s: Symbol| s.undotted() == class;
            let any = |_: Symbol| true;
            let (left, right): (&dyn Fn(Symbol) -> bool, &dyn Fn(Symbol) -> bool) = if first {
                (&in_class, &any)
            } else {
                (&any, &in_class)
            };
            let now = Formula::next_n(shift, sigma.any_of(left, right, VAR_ALL));
            let there = sigma.any_of(left, right, VAR_SHIFTED);
            clauses.push(Formula::globally(Formula::implies(now, there)));
        }
    }
    Formula::conjunction(clauses)
}

/// `⋀ □¬((y₁,y₂) ∧ (y,y′))` over unordered pairs of distinct pair propositions.
fn singleton_axiom(sigma: &PairAlphabet, var: &str) -> Formula {
    let props = sigma.props();
    let mut clauses = Vec::new();
    for (i, p) in props.iter().enumerate() {
        for q in &props[i + 1..] {
            clauses.push(Formula::globally(Formula::not(Formula::and(
                indexed(p.clone(), var),
                indexed(q.clone(), var),
            ))));
        }
    }
    Formula::conjunction(clauses)
}

/// `φ_reduc = ∀π ∃π_s ∃π′. φ_sol(π_s) ∧ (⋁ᵢ Stoneᵢ(π, π′) ∨ □(#,#)_π) ∧ ◇□(#,#)_π ∧ singletons(π)`
pub fn encode_pcp(inst: &PcpInstance) -> HyperFormula {
    let sigma = PairAlphabet::new(inst);

    let starts_pointed = Formula::disjunction(
        inst.alphabet
            .iter()
            .map(|&c| indexed(PairAlphabet::prop(Symbol::Dotted(c), Symbol::Dotted(c)), VAR_SOLUTION)),
    );
    let same_letter = Formula::disjunction(inst.alphabet.iter().map(|&c| {
        let letter = move |s: Symbol| s.undotted() == Some(c);
        sigma.any_of(&letter, &letter, VAR_SOLUTION)
    }));
    let solution = Formula::and(
        starts_pointed,
        Formula::until(same_letter, Formula::globally(end_pair(VAR_SOLUTION))),
    );

    let stones = Formula::disjunction(
        inst.stones
            .iter()
            .map(|(a, b)| {
                Formula::and(
                    stone_start(&sigma, a, b, VAR_ALL),
                    stone_delete(&sigma, a.len(), b.len()),
                )
            })
            .chain(std::iter::once(Formula::globally(end_pair(VAR_ALL)))),
    );

    let body = Formula::conjunction([
        solution,
        stones,
        Formula::eventually(Formula::globally(end_pair(VAR_ALL))),
        singleton_axiom(&sigma, VAR_ALL),
    ]);
    HyperFormula::new(
        vec![
            (Quantifier::Forall, TraceVar::new(VAR_ALL)),
            (Quantifier::Exists, TraceVar::new(VAR_SOLUTION)),
            (Quantifier::Exists, TraceVar::new(VAR_SHIFTED)),
        ],
        body,
    )
    .expect("generated formula is closed")
}

fn track(inst: &PcpInstance, indices: &[usize], beta: bool) -> Vec<Symbol> {
    indices
        .iter()
        .flat_map(|&i| {
            let (a, b) = &inst.stones[i - 1];
            let word = if beta { b } else { a };
            word.iter().enumerate().map(|(k, &c)| {
                if k == 0 {
                    Symbol::Dotted(c)
                } else {
                    Symbol::Plain(c)
                }
            })
        })
        .collect()
}

/// The trace spelling out `indices`, tracks padded with `#`, ending in `(#,#)ʷ`.
pub fn stone_trace(inst: &PcpInstance, indices: &[usize]) -> Lasso {
    let alpha = track(inst, indices, false);
    let beta = track(inst, indices, true);
    let len = alpha.len().max(beta.len());
    let at = |w: &[Symbol], k: usize| w.get(k).copied().unwrap_or(Symbol::End);
    let stem = (0..len)
        .map(|k| Valuation::from([PairAlphabet::prop(at(&alpha, k), at(&beta, k))]))
        .collect();
    let end = Valuation::from([PairAlphabet::prop(Symbol::End, Symbol::End)]);
    Lasso::new(stem, vec![end]).expect("non-empty loop")
}

/// The deletion chain of a solution: the solution trace, then each suffix
/// with one more leading stone removed, down to `(#,#)ʷ`.
pub fn encode_solution_traceset(inst: &PcpInstance, indices: &[usize]) -> Result<TraceSet, PcpError> {
    let (alpha, beta) = inst.words(indices)?;
    if indices.is_empty() || alpha != beta {
        return Err(PcpError::NotASolution { alpha, beta });
    }
    Ok((0..=indices.len())
        .map(|k| stone_trace(inst, &indices[k..]))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fragments::{classify, FragmentClass};
    use crate::models::evaluate_hyperltl;

    fn example() -> PcpInstance {
        PcpInstance::from_json(
            r#"{"alphabet": ["a","b"], "stones": [["a","baa"],["ab","aa"],["bba","bb"]]}"#,
        )
        .unwrap()
    }

    #[test]
    fn pair_alphabet_size_and_names() {
        let sigma = PairAlphabet::new(&example());
        let props = sigma.props();
        assert_eq!(props.len(), 25);
        assert_eq!(props.iter().collect::<BTreeSet<_>>().len(), 25);
        assert_eq!(
            PairAlphabet::prop(Symbol::Dotted('a'), Symbol::Plain('b')).as_str(),
            "p_da_b"
        );
        assert_eq!(
            PairAlphabet::prop(Symbol::End, Symbol::End).as_str(),
            "p_hash_hash"
        );
    }

    #[test]
    fn invalid_instances() {
        assert!(PcpInstance::from_json(r#"{"alphabet": ["a"], "stones": [["","a"]]}"#).is_err());
        assert!(matches!(
            PcpInstance::new(vec!['a', 'a'], vec![(vec!['a'], vec!['a'])]),
            Err(PcpError::InvalidInstance(_))
        ));
        assert!(matches!(
            PcpInstance::new(vec!['a'], vec![(vec!['a'], vec!['b'])]),
            Err(PcpError::InvalidInstance(_))
        ));
        assert!(matches!(
            PcpInstance::new(vec!['a'], vec![(vec![], vec!['a'])]),
            Err(PcpError::InvalidInstance(_))
        ));
    }

    #[test]
    fn json_round_trip() {
        let inst = example();
        let text = serde_json::to_string(&inst).unwrap();
        assert_eq!(PcpInstance::from_json(&text).unwrap(), inst);
        let sol: PcpSolution = serde_json::from_str(r#"{"indices": [3,2,3,1]}"#).unwrap();
        assert!(inst.is_solution(&sol.indices));
        assert_eq!(inst.words(&sol.indices).unwrap().0, "bbaabbbaa");
    }

    #[test]
    fn not_a_solution() {
        let inst = PcpInstance::new(vec!['a', 'b'], vec![(vec!['a'], vec!['b'])]).unwrap();
        assert!(matches!(
            encode_solution_traceset(&inst, &[1]),
            Err(PcpError::NotASolution { .. })
        ));
    }

    #[test]
    fn single_stone_fixture() {
        let inst = PcpInstance::new(vec!['a'], vec![(vec!['a'], vec!['a'])]).unwrap();
        let set = encode_solution_traceset(&inst, &[1]).unwrap();
        let dd = Valuation::from([Prop::new("p_da_da")]);
        let end = Valuation::from([Prop::new("p_hash_hash")]);
        let expected: TraceSet = [
            Lasso::new(vec![dd], vec![end.clone()]).unwrap(),
            Lasso::new(vec![], vec![end]).unwrap(),
        ]
        .into_iter()
        .collect();
        assert_eq!(set, expected);
        let f = encode_pcp(&inst);
        assert!(evaluate_hyperltl(&set, &f, 10_000).unwrap());
        // dropping the terminal trace breaks the deletion requirement
        let partial: TraceSet = set.iter().take(1).cloned().collect();
        assert!(!evaluate_hyperltl(&partial, &f, 10_000).unwrap());
    }

    #[test]
    fn encoding_is_forall_exists() {
        assert!(matches!(
            classify(&encode_pcp(&example())),
            FragmentClass::ForallExists { .. }
        ));
    }
}
