//! Generators and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use hyperltl::models::{evaluate_ltl, Lasso, Valuation};
use hyperltl::syntax::{Formula, HyperFormula, Prop, Quantifier, TraceVar};
use proptest::prelude::*;

pub fn leaf(props: Vec<&'static str>, var: Option<Vec<String>>) -> BoxedStrategy<Formula> {
    let atom: BoxedStrategy<Formula> = match var {
        None => proptest::sample::select(props)
            .prop_map(Formula::prop)
            .boxed(),
        Some(vars) => (proptest::sample::select(props), proptest::sample::select(vars))
            .prop_map(|(p, v)| Formula::indexed(p, &v))
            .boxed(),
    };
    prop_oneof![
        8 => atom,
        1 => Just(Formula::True),
        1 => Just(Formula::False),
    ]
    .boxed()
}

/// Formulas over every connective of the grammar.
pub fn formula(leaves: BoxedStrategy<Formula>, depth: u32) -> BoxedStrategy<Formula> {
    leaves
        .prop_recursive(depth, 48, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(Formula::not),
                inner.clone().prop_map(Formula::next),
                inner.clone().prop_map(Formula::eventually),
                inner.clone().prop_map(Formula::globally),
                (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::and(l, r)),
                (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::or(l, r)),
                (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::implies(l, r)),
                (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::iff(l, r)),
                (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::until(l, r)),
                (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::release(l, r)),
                (inner.clone(), inner).prop_map(|(l, r)| Formula::weak_until(l, r)),
            ]
        })
        .boxed()
}

pub fn ltl(props: Vec<&'static str>, depth: u32) -> BoxedStrategy<Formula> {
    formula(leaf(props, None), depth)
}

pub fn valuation(props: Vec<&'static str>) -> impl Strategy<Value = Valuation> {
    proptest::sample::subsequence(props.clone(), 0..=props.len())
        .prop_map(|ps| ps.into_iter().map(Prop::new).collect())
}

pub fn lasso(props: Vec<&'static str>, max_stem: usize, max_loop: usize) -> BoxedStrategy<Lasso> {
    (
        proptest::collection::vec(valuation(props.clone()), 0..=max_stem),
        proptest::collection::vec(valuation(props), 1..=max_loop),
    )
        .prop_map(|(s, c)| Lasso::new(s, c).unwrap())
        .boxed()
}

/// A closed formula with the given quantifier prefix over variables `v0, v1, …`.
pub fn hyper(
    prefix: Vec<Quantifier>,
    props: Vec<&'static str>,
    depth: u32,
) -> BoxedStrategy<HyperFormula> {
    let vars: Vec<String> = (0..prefix.len()).map(|i| format!("v{i}")).collect();
    let leaves = if vars.is_empty() {
        leaf(props, None)
    } else {
        leaf(props, Some(vars.clone()))
    };
    formula(leaves, depth)
        .prop_map(move |body| {
            let prefix = prefix
                .iter()
                .zip(&vars)
                .map(|(q, v)| (*q, TraceVar::new(v.as_str())))
                .collect();
            HyperFormula::new(prefix, body).unwrap()
        })
        .boxed()
}

pub fn prefix_of(exists: usize, forall: usize) -> Vec<Quantifier> {
    let mut p = vec![Quantifier::Exists; exists];
    p.extend(vec![Quantifier::Forall; forall]);
    p
}

/// Every lasso with `|stem| <= max_stem` and `1 <= |loop| <= max_loop` over `props`.
pub fn all_lassos(props: &[&str], max_stem: usize, max_loop: usize) -> Vec<Lasso> {
    let vals: Vec<Valuation> = (0..1usize << props.len())
        .map(|mask| {
            props
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, p)| Prop::new(*p))
                .collect()
        })
        .collect();
    let words = |len: usize| -> Vec<Vec<Valuation>> {
        (0..len).fold(vec![vec![]], |acc, _| {
            acc.into_iter()
                .flat_map(|w| {
                    vals.iter().map(move |v| {
                        let mut w = w.clone();
                        w.push(v.clone());
                        w
                    })
                })
                .collect()
        })
    };
    let mut out = Vec::new();
    for s in 0..=max_stem {
        for l in 1..=max_loop {
            for stem in words(s) {
                for cycle in words(l) {
                    out.push(Lasso::new(stem.clone(), cycle).unwrap());
                }
            }
        }
    }
    out
}

/// The first lasso in `space` satisfying `f`, by direct evaluation.
pub fn brute_force_sat<'a>(f: &Formula, space: &'a [Lasso]) -> Option<&'a Lasso> {
    space.iter().find(|t| evaluate_ltl(t, f))
}

/// Textbook recursive semantics with no memoisation; shares nothing with the
/// library evaluator beyond `Lasso::valuation`.
pub fn naive_holds(t: &Lasso, f: &Formula, i: usize) -> bool {
    use Formula::*;
    let horizon = t.stem().len() + t.cycle().len();
    match f {
        True => true,
        False => false,
        Atom(a) => t.valuation(i).contains(&a.prop),
        Not(g) => !naive_holds(t, g, i),
        And(l, r) => naive_holds(t, l, i) && naive_holds(t, r, i),
        Or(l, r) => naive_holds(t, l, i) || naive_holds(t, r, i),
        Implies(l, r) => !naive_holds(t, l, i) || naive_holds(t, r, i),
        Iff(l, r) => naive_holds(t, l, i) == naive_holds(t, r, i),
        Next(g) => naive_holds(t, g, i + 1),
        Eventually(g) => (i..i + horizon).any(|j| naive_holds(t, g, j)),
        Globally(g) => (i..i + horizon).all(|j| naive_holds(t, g, j)),
        Until(l, r) => {
            for j in i..i + horizon {
                if naive_holds(t, r, j) {
                    return true;
                }
                if !naive_holds(t, l, j) {
                    return false;
                }
            }
            false
        }
        Release(l, r) => {
            for j in i..i + horizon {
                if !naive_holds(t, r, j) {
                    return false;
                }
                if naive_holds(t, l, j) {
                    return true;
                }
            }
            true
        }
        WeakUntil(l, r) => {
            for j in i..i + horizon {
                if naive_holds(t, r, j) {
                    return true;
                }
                if !naive_holds(t, l, j) {
                    return false;
                }
            }
            true
        }
    }
}

pub fn prop_names(f: &Formula) -> BTreeSet<String> {
    f.props().into_iter().map(|p| p.as_str().to_string()).collect()
}
