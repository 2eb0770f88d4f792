use std::fmt;

use super::{Atom, Formula, HyperFormula};

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.trace {
            Some(v) => write!(f, "{}_{}", self.prop, v),
            None => write!(f, "{}", self.prop),
        }
    }
}

// Binary nodes are always parenthesized, so the output reparses to the same tree.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Formula::*;
        let unary = |f: &mut fmt::Formatter<'_>, op: &str, x: &Formula| -> fmt::Result {
            match x {
                True | False | Atom(_) | Not(_) => write!(f, "{op}{x}"),
                _ => write!(f, "{op}({x})"),
            }
        };
        match self {
            True => f.write_str("true"),
            False => f.write_str("false"),
            Atom(a) => write!(f, "{a}"),
            Not(x) => unary(f, "!", x),
            Next(x) => unary(f, "X ", x),
            Eventually(x) => unary(f, "F ", x),
            Globally(x) => unary(f, "G ", x),
            And(l, r) => write!(f, "({l} & {r})"),
            Or(l, r) => write!(f, "({l} | {r})"),
            Implies(l, r) => write!(f, "({l} -> {r})"),
            Iff(l, r) => write!(f, "({l} <-> {r})"),
            Until(l, r) => write!(f, "({l} U {r})"),
            Release(l, r) => write!(f, "({l} R {r})"),
            WeakUntil(l, r) => write!(f, "({l} W {r})"),
        }
    }
}

impl fmt::Display for HyperFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (q, v) in self.prefix() {
            write!(f, "{q} {v}. ")?;
        }
        write!(f, "{}", self.body())
    }
}

#[cfg(test)]
mod tests {
    use crate::syntax::{parse_hyperltl, Formula};

    #[test]
    fn renders_constants_and_atoms() {
        assert_eq!(Formula::True.to_string(), "true");
        let f = parse_hyperltl("exists p. a_p").unwrap();
        assert_eq!(f.to_string(), "exists p. a_p");
        assert_eq!(parse_hyperltl(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn forall_example_round_trips() {
        let f = parse_hyperltl("forall p1. forall p2. (G b_p1) & (G !b_p2)").unwrap();
        assert_eq!(f.to_string(), "forall p1. forall p2. (G b_p1 & G !b_p2)");
        assert_eq!(parse_hyperltl(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn nested_unary_operators() {
        let f = parse_hyperltl("X X !!a & F (a U b)").unwrap();
        assert_eq!(parse_hyperltl(&f.to_string()).unwrap(), f);
    }
}
