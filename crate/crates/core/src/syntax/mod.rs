//! Abstract syntax for LTL bodies and prenex HyperLTL formulas. The text
//! grammar lives in `parser` and printing in `render`; desugaring and
//! negation normal form are methods on [`Formula`].

mod parser;
mod render;

use std::collections::BTreeSet;
use std::fmt;

pub use parser::{parse_hyperltl, ParseError, SyntaxError};

/// An atomic proposition name.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Prop(String);

impl Prop {
    pub fn new(name: impl Into<String>) -> Self {
        Prop(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Prop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Prop {
    fn from(s: &str) -> Self {
        Prop::new(s)
    }
}

/// A trace variable bound by a quantifier.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TraceVar(String);

impl TraceVar {
    pub fn new(name: impl Into<String>) -> Self {
        TraceVar(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for TraceVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for TraceVar {
    fn from(s: &str) -> Self {
        TraceVar::new(s)
    }
}

/// An atomic proposition, optionally indexed by a trace variable (`a_pi`).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub prop: Prop,
    pub trace: Option<TraceVar>,
}

/// Quantifier-free (Hyper)LTL formula.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    True,
    False,
    Atom(Atom),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Next(Box<Formula>),
    Until(Box<Formula>, Box<Formula>),
    Release(Box<Formula>, Box<Formula>),
    WeakUntil(Box<Formula>, Box<Formula>),
    Eventually(Box<Formula>),
    Globally(Box<Formula>),
}

/// Alias used where a formula is known to be the body of a HyperLTL formula
/// or a plain LTL formula; both share one representation.
pub type LtlFormula = Formula;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Quantifier {
    Exists,
    Forall,
}

impl Quantifier {
    pub fn dual(self) -> Self {
        match self {
            Quantifier::Exists => Quantifier::Forall,
            Quantifier::Forall => Quantifier::Exists,
        }
    }
}

impl fmt::Display for Quantifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantifier::Exists => f.write_str("exists"),
            Quantifier::Forall => f.write_str("forall"),
        }
    }
}

/// Prenex HyperLTL formula: a quantifier prefix followed by a quantifier-free body.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HyperFormula {
    prefix: Vec<(Quantifier, TraceVar)>,
    body: Formula,
}

/// Violations of the closedness / indexing discipline of HyperLTL formulas.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WellFormednessError {
    #[error("trace variable `{0}` is bound more than once")]
    DuplicateBinder(TraceVar),
    #[error("trace variable `{0}` is not bound by the quantifier prefix")]
    FreeVariable(TraceVar),
    #[error("atomic proposition `{0}` is not indexed by a trace variable")]
    UnindexedAtom(Prop),
    #[error("atomic proposition `{0}` is indexed, but the formula has no quantifier prefix")]
    IndexedAtomInLtl(Prop),
    #[error("quantifier inside the formula body; only prenex formulas are supported")]
    NonPrenex,
    #[error("invalid name `{0}`: {1}")]
    InvalidName(String, &'static str),
}

pub(crate) const KEYWORDS: &[&str] = &[
    "X", "F", "G", "U", "W", "R", "true", "false", "forall", "exists",
];

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Checks that `name` can be used as an atomic proposition in formula text.
pub fn validate_prop_name(name: &str) -> Result<(), WellFormednessError> {
    if name.contains('@') {
        return Err(WellFormednessError::InvalidName(
            name.into(),
            "'@' is reserved for substituted propositions",
        ));
    }
    if !is_identifier(name) || KEYWORDS.contains(&name) {
        return Err(WellFormednessError::InvalidName(
            name.into(),
            "not an identifier",
        ));
    }
    Ok(())
}

/// Checks that `name` can be used as a trace variable.
pub fn validate_var_name(name: &str) -> Result<(), WellFormednessError> {
    if !is_identifier(name) || KEYWORDS.contains(&name) {
        return Err(WellFormednessError::InvalidName(
            name.into(),
            "not an identifier",
        ));
    }
    if name.contains('_') {
        return Err(WellFormednessError::InvalidName(
            name.into(),
            "trace variables may not contain '_'",
        ));
    }
    Ok(())
}

impl HyperFormula {
    /// Builds a formula after checking it is well formed; see
    /// [`WellFormednessError`]. Atoms must be indexed iff the prefix is non-empty.
    pub fn new(
        prefix: Vec<(Quantifier, TraceVar)>,
        body: Formula,
    ) -> Result<Self, WellFormednessError> {
        let mut bound = BTreeSet::new();
        for (_, v) in &prefix {
            validate_var_name(v.as_str())?;
            if !bound.insert(v.clone()) {
                return Err(WellFormednessError::DuplicateBinder(v.clone()));
            }
        }
        let mut err = None;
        body.visit_atoms(&mut |atom| {
            if err.is_some() {
                return;
            }
            match (&atom.trace, prefix.is_empty()) {
                (None, false) => err = Some(WellFormednessError::UnindexedAtom(atom.prop.clone())),
                (Some(_), true) => {
                    err = Some(WellFormednessError::IndexedAtomInLtl(atom.prop.clone()))
                }
                (Some(v), false) if !bound.contains(v) => {
                    err = Some(WellFormednessError::FreeVariable(v.clone()))
                }
                _ => {}
            }
        });
        match err {
            Some(e) => Err(e),
            None => Ok(HyperFormula { prefix, body }),
        }
    }

    pub(crate) fn new_unchecked(prefix: Vec<(Quantifier, TraceVar)>, body: Formula) -> Self {
        HyperFormula { prefix, body }
    }

    pub fn prefix(&self) -> &[(Quantifier, TraceVar)] {
        &self.prefix
    }

    pub fn body(&self) -> &Formula {
        &self.body
    }

    pub fn into_parts(self) -> (Vec<(Quantifier, TraceVar)>, Formula) {
        (self.prefix, self.body)
    }

    pub fn variables(&self) -> impl Iterator<Item = &TraceVar> {
        self.prefix.iter().map(|(_, v)| v)
    }

    /// Position (0-based) of `var` in the prefix.
    pub fn position_of(&self, var: &TraceVar) -> Option<usize> {
        self.prefix.iter().position(|(_, v)| v == var)
    }

    /// Renames bound variables; `rename` must be injective on the prefix.
    pub fn rename_vars(&self, rename: impl Fn(&TraceVar) -> TraceVar) -> HyperFormula {
        let prefix = self
            .prefix
            .iter()
            .map(|(q, v)| (*q, rename(v)))
            .collect();
        let body = self.body.map_atoms(&mut |a| {
            Formula::Atom(Atom {
                prop: a.prop.clone(),
                trace: a.trace.as_ref().map(&rename),
            })
        });
        HyperFormula { prefix, body }
    }
}

macro_rules! unary_ctor {
    ($name:ident, $variant:ident) => {
        #[allow(clippy::should_implement_trait)]
        pub fn $name(f: Formula) -> Formula {
            Formula::$variant(Box::new(f))
        }
    };
}

macro_rules! binary_ctor {
    ($name:ident, $variant:ident) => {
        pub fn $name(l: Formula, r: Formula) -> Formula {
            Formula::$variant(Box::new(l), Box::new(r))
        }
    };
}

impl Formula {
    pub fn prop(name: &str) -> Formula {
        Formula::Atom(Atom {
            prop: Prop::new(name),
            trace: None,
        })
    }

    pub fn indexed(name: &str, var: &str) -> Formula {
        Formula::Atom(Atom {
            prop: Prop::new(name),
            trace: Some(TraceVar::new(var)),
        })
    }

    unary_ctor!(not, Not);
    unary_ctor!(next, Next);
    unary_ctor!(eventually, Eventually);
    unary_ctor!(globally, Globally);
    binary_ctor!(and, And);
    binary_ctor!(or, Or);
    binary_ctor!(implies, Implies);
    binary_ctor!(iff, Iff);
    binary_ctor!(until, Until);
    binary_ctor!(release, Release);
    binary_ctor!(weak_until, WeakUntil);

    /// Left-nested conjunction; `true` for an empty iterator.
    pub fn conjunction(parts: impl IntoIterator<Item = Formula>) -> Formula {
        parts
            .into_iter()
            .reduce(Formula::and)
            .unwrap_or(Formula::True)
    }

    /// Left-nested disjunction; `false` for an empty iterator.
    pub fn disjunction(parts: impl IntoIterator<Item = Formula>) -> Formula {
        parts
            .into_iter()
            .reduce(Formula::or)
            .unwrap_or(Formula::False)
    }

    /// `X^k f`.
    pub fn next_n(k: usize, f: Formula) -> Formula {
        (0..k).fold(f, |acc, _| Formula::next(acc))
    }

    /// Splits nested top-level conjunctions into their operands, left to right.
    pub fn conjuncts(&self) -> Vec<&Formula> {
        let mut out = Vec::new();
        fn go<'a>(f: &'a Formula, out: &mut Vec<&'a Formula>) {
            match f {
                Formula::And(l, r) => {
                    go(l, out);
                    go(r, out);
                }
                other => out.push(other),
            }
        }
        go(self, &mut out);
        out
    }

    /// Number of syntax-tree nodes.
    pub fn size(&self) -> usize {
        match self {
            Formula::True | Formula::False | Formula::Atom(_) => 1,
            Formula::Not(f) | Formula::Next(f) | Formula::Eventually(f) | Formula::Globally(f) => {
                1 + f.size()
            }
            Formula::And(l, r)
            | Formula::Or(l, r)
            | Formula::Implies(l, r)
            | Formula::Iff(l, r)
            | Formula::Until(l, r)
            | Formula::Release(l, r)
            | Formula::WeakUntil(l, r) => 1 + l.size() + r.size(),
        }
    }

    pub fn visit_atoms(&self, visit: &mut impl FnMut(&Atom)) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Atom(a) => visit(a),
            Formula::Not(f) | Formula::Next(f) | Formula::Eventually(f) | Formula::Globally(f) => {
                f.visit_atoms(visit)
            }
            Formula::And(l, r)
            | Formula::Or(l, r)
            | Formula::Implies(l, r)
            | Formula::Iff(l, r)
            | Formula::Until(l, r)
            | Formula::Release(l, r)
            | Formula::WeakUntil(l, r) => {
                l.visit_atoms(visit);
                r.visit_atoms(visit);
            }
        }
    }

    /// Rebuilds the formula with every atom replaced by `f(atom)`.
    pub fn map_atoms(&self, f: &mut impl FnMut(&Atom) -> Formula) -> Formula {
        use Formula::*;
        match self {
            True => True,
            False => False,
            Atom(a) => f(a),
            Not(x) => Formula::not(x.map_atoms(f)),
            Next(x) => Formula::next(x.map_atoms(f)),
            Eventually(x) => Formula::eventually(x.map_atoms(f)),
            Globally(x) => Formula::globally(x.map_atoms(f)),
            And(l, r) => Formula::and(l.map_atoms(f), r.map_atoms(f)),
            Or(l, r) => Formula::or(l.map_atoms(f), r.map_atoms(f)),
            Implies(l, r) => Formula::implies(l.map_atoms(f), r.map_atoms(f)),
            Iff(l, r) => Formula::iff(l.map_atoms(f), r.map_atoms(f)),
            Until(l, r) => Formula::until(l.map_atoms(f), r.map_atoms(f)),
            Release(l, r) => Formula::release(l.map_atoms(f), r.map_atoms(f)),
            WeakUntil(l, r) => Formula::weak_until(l.map_atoms(f), r.map_atoms(f)),
        }
    }

    /// Exactly the trace variables indexing atoms of the formula.
    pub fn free_trace_variables(&self) -> BTreeSet<TraceVar> {
        let mut vars = BTreeSet::new();
        self.visit_atoms(&mut |a| {
            if let Some(v) = &a.trace {
                vars.insert(v.clone());
            }
        });
        vars
    }

    /// Propositions mentioned, ignoring trace indices.
    pub fn props(&self) -> BTreeSet<Prop> {
        let mut props = BTreeSet::new();
        self.visit_atoms(&mut |a| {
            props.insert(a.prop.clone());
        });
        props
    }

    /// Replaces trace variable `from` by `to` in every indexed atom.
    pub fn substitute_var(&self, from: &TraceVar, to: &TraceVar) -> Formula {
        self.map_atoms(&mut |a| {
            let trace = match &a.trace {
                Some(v) if v == from => Some(to.clone()),
                other => other.clone(),
            };
            Formula::Atom(Atom {
                prop: a.prop.clone(),
                trace,
            })
        })
    }

    /// Rewrites derived operators into the core set
    /// `{Atom, True, False, Not, And, Or, Next, Until, Release}`.
    pub fn desugar(&self) -> Formula {
        use Formula::*;
        match self {
            True => True,
            False => False,
            Atom(a) => Atom(a.clone()),
            Not(f) => Formula::not(f.desugar()),
            Next(f) => Formula::next(f.desugar()),
            And(l, r) => Formula::and(l.desugar(), r.desugar()),
            Or(l, r) => Formula::or(l.desugar(), r.desugar()),
            Until(l, r) => Formula::until(l.desugar(), r.desugar()),
            Release(l, r) => Formula::release(l.desugar(), r.desugar()),
            Implies(l, r) => Formula::or(Formula::not(l.desugar()), r.desugar()),
            Iff(l, r) => {
                let (l, r) = (l.desugar(), r.desugar());
                Formula::or(
                    Formula::and(l.clone(), r.clone()),
                    Formula::and(Formula::not(l), Formula::not(r)),
                )
            }
            Eventually(f) => Formula::until(True, f.desugar()),
            Globally(f) => Formula::release(False, f.desugar()),
            WeakUntil(l, r) => {
                let l = l.desugar();
                Formula::or(
                    Formula::until(l.clone(), r.desugar()),
                    Formula::release(False, l),
                )
            }
        }
    }

    /// Negation normal form of a desugared formula: negations only on atoms.
    ///
    /// Derived operators are desugared on the fly, so any input is accepted.
    pub fn to_nnf(&self) -> Formula {
        self.nnf(false)
    }

    fn nnf(&self, negate: bool) -> Formula {
        use Formula::*;
        match (self, negate) {
            (True, false) | (False, true) => True,
            (True, true) | (False, false) => False,
            (Atom(a), false) => Atom(a.clone()),
            (Atom(a), true) => Formula::not(Atom(a.clone())),
            (Not(f), neg) => f.nnf(!neg),
            (Next(f), neg) => Formula::next(f.nnf(neg)),
            (And(l, r), false) => Formula::and(l.nnf(false), r.nnf(false)),
            (And(l, r), true) => Formula::or(l.nnf(true), r.nnf(true)),
            (Or(l, r), false) => Formula::or(l.nnf(false), r.nnf(false)),
            (Or(l, r), true) => Formula::and(l.nnf(true), r.nnf(true)),
            (Until(l, r), false) => Formula::until(l.nnf(false), r.nnf(false)),
            (Until(l, r), true) => Formula::release(l.nnf(true), r.nnf(true)),
            (Release(l, r), false) => Formula::release(l.nnf(false), r.nnf(false)),
            (Release(l, r), true) => Formula::until(l.nnf(true), r.nnf(true)),
            (Implies(..) | Iff(..) | Eventually(_) | Globally(_) | WeakUntil(..), neg) => {
                self.desugar().nnf(neg)
            }
        }
    }

    /// True if only core connectives occur.
    pub fn is_core(&self) -> bool {
        use Formula::*;
        match self {
            True | False | Atom(_) => true,
            Not(f) | Next(f) => f.is_core(),
            And(l, r) | Or(l, r) | Until(l, r) | Release(l, r) => l.is_core() && r.is_core(),
            Implies(..) | Iff(..) | WeakUntil(..) | Eventually(_) | Globally(_) => false,
        }
    }

    /// True if the formula is in negation normal form over core connectives.
    pub fn is_nnf(&self) -> bool {
        use Formula::*;
        match self {
            True | False | Atom(_) => true,
            Not(f) => matches!(**f, Atom(_)),
            Next(f) => f.is_nnf(),
            And(l, r) | Or(l, r) | Until(l, r) | Release(l, r) => l.is_nnf() && r.is_nnf(),
            Implies(..) | Iff(..) | WeakUntil(..) | Eventually(_) | Globally(_) => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Formula {
        Formula::prop(s)
    }

    #[test]
    fn desugar_eventually_and_weak_until() {
        assert_eq!(
            Formula::eventually(p("p")).desugar(),
            Formula::until(Formula::True, p("p"))
        );
        assert_eq!(
            Formula::weak_until(p("p"), p("q")).desugar(),
            Formula::or(
                Formula::until(p("p"), p("q")),
                Formula::release(Formula::False, p("p"))
            )
        );
        let core = Formula::and(p("p"), p("q"));
        assert_eq!(core.desugar(), core);
    }

    #[test]
    fn nnf_dualities() {
        let f = Formula::not(Formula::until(p("a"), p("b")));
        assert_eq!(
            f.to_nnf(),
            Formula::release(Formula::not(p("a")), Formula::not(p("b")))
        );
        assert_eq!(
            Formula::not(Formula::next(p("a"))).to_nnf(),
            Formula::next(Formula::not(p("a")))
        );
        assert_eq!(Formula::not(Formula::not(p("a"))).to_nnf(), p("a"));
        assert_eq!(Formula::not(Formula::True).to_nnf(), Formula::False);
    }

    #[test]
    fn free_variables() {
        let f = Formula::and(Formula::indexed("a", "p1"), Formula::indexed("b", "p2"));
        let vars: Vec<_> = f.free_trace_variables().into_iter().collect();
        assert_eq!(vars, vec![TraceVar::new("p1"), TraceVar::new("p2")]);
        assert!(Formula::and(p("a"), p("b")).free_trace_variables().is_empty());
    }

    #[test]
    fn well_formedness_checks() {
        let body = Formula::indexed("a", "p");
        assert!(matches!(
            HyperFormula::new(
                vec![(Quantifier::Exists, "p".into()), (Quantifier::Forall, "p".into())],
                body.clone()
            ),
            Err(WellFormednessError::DuplicateBinder(_))
        ));
        assert!(matches!(
            HyperFormula::new(vec![(Quantifier::Exists, "q".into())], body.clone()),
            Err(WellFormednessError::FreeVariable(_))
        ));
        assert!(matches!(
            HyperFormula::new(vec![], body),
            Err(WellFormednessError::IndexedAtomInLtl(_))
        ));
        assert!(matches!(
            HyperFormula::new(vec![(Quantifier::Exists, "q".into())], p("a")),
            Err(WellFormednessError::UnindexedAtom(_))
        ));
    }

    #[test]
    fn conjunct_flattening() {
        let f = Formula::and(Formula::and(p("a"), p("b")), Formula::or(p("c"), p("d")));
        assert_eq!(f.conjuncts().len(), 3);
        assert_eq!(Formula::conjunction(f.conjuncts().into_iter().cloned()), f);
    }
}
