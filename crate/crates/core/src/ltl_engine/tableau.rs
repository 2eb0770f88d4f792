//! Tableau construction of a generalized Büchi automaton from an NNF formula.
//!
//! A state is a fully expanded node: the set of closure members that hold now
//! (`old`) and the obligations passed to the successor (`next`). Successors of
//! a state are the non-dominated expansions of its `next` set. There is one
//! acceptance set per Until `φ U ψ`: the states where it is not in `old`, or
//! where `ψ` is.

use std::collections::{BTreeMap, BTreeSet};

use crate::syntax::{Formula, Prop};

pub type NodeId = usize;

/// Interned NNF subformula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Node {
    True,
    False,
    Lit { prop: usize, positive: bool },
    And(NodeId, NodeId),
    Or(NodeId, NodeId),
    Next(NodeId),
    Until(NodeId, NodeId),
    Release(NodeId, NodeId),
}

/// The subformula closure of the input, with ids assigned in post-order.
#[derive(Debug, Clone)]
pub struct Closure {
    nodes: Vec<Node>,
    index: BTreeMap<Node, NodeId>,
    props: Vec<Prop>,
    root: NodeId,
}

impl Closure {
    /// `formula` must be plain LTL in NNF.
    pub fn new(formula: &Formula) -> Self {
        let props: Vec<Prop> = formula.props().into_iter().collect();
        let mut closure = Closure {
            nodes: Vec::new(),
            index: BTreeMap::new(),
            props,
            root: 0,
        };
        closure.root = closure.intern_formula(formula);
        closure
    }

    fn intern(&mut self, node: Node) -> NodeId {
        if let Some(&id) = self.index.get(&node) {
            return id;
        }
        let id = self.nodes.len();
        self.nodes.push(node);
        self.index.insert(node, id);
        id
    }

    fn prop_index(&self, p: &Prop) -> usize {
        self.props.binary_search(p).expect("prop collected from formula")
    }

    fn intern_formula(&mut self, f: &Formula) -> NodeId {
        use Formula::*;
        let node = match f {
            True => Node::True,
            False => Node::False,
            Atom(a) => Node::Lit {
                prop: self.prop_index(&a.prop),
                positive: true,
            },
            Not(x) => match &**x {
                Atom(a) => Node::Lit {
                    prop: self.prop_index(&a.prop),
                    positive: false,
                },
                _ => panic!("formula is not in negation normal form"),
            },
            And(l, r) => Node::And(self.intern_formula(l), self.intern_formula(r)),
            Or(l, r) => Node::Or(self.intern_formula(l), self.intern_formula(r)),
            Next(x) => Node::Next(self.intern_formula(x)),
            Until(l, r) => Node::Until(self.intern_formula(l), self.intern_formula(r)),
            Release(l, r) => Node::Release(self.intern_formula(l), self.intern_formula(r)),
            Implies(..) | Iff(..) | WeakUntil(..) | Eventually(_) | Globally(_) => {
                panic!("formula is not desugared")
            }
        };
        self.intern(node)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, id: NodeId) -> Node {
        self.nodes[id]
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn props(&self) -> &[Prop] {
        &self.props
    }

    /// Ids of all Until members, in id order.
    pub fn untils(&self) -> Vec<NodeId> {
        (0..self.nodes.len())
            .filter(|&i| matches!(self.nodes[i], Node::Until(..)))
            .collect()
    }
}

/// One fully expanded tableau node.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct State {
    pub old: BTreeSet<NodeId>,
    pub next: BTreeSet<NodeId>,
    /// Propositions true at this position; all others are false.
    pub valuation: BTreeSet<usize>,
    /// Index into the automaton's obligation list for `next`.
    pub successor_obligation: usize,
    /// `accepting[k]` iff the state is in the acceptance set of the k-th Until.
    pub accepting: Vec<bool>,
}

#[derive(Debug, Clone)]
pub struct GeneralizedBuchiAutomaton {
    pub closure: Closure,
    pub states: Vec<State>,
    /// States produced by expanding each obligation set.
    pub obligations: Vec<(BTreeSet<NodeId>, Vec<usize>)>,
    pub initial: Vec<usize>,
    /// Until members, one acceptance set each.
    pub untils: Vec<NodeId>,
}

impl GeneralizedBuchiAutomaton {
    pub fn successors(&self, state: usize) -> &[usize] {
        &self.obligations[self.states[state].successor_obligation].1
    }

    pub fn acceptance_sets(&self) -> usize {
        self.untils.len()
    }
}

#[derive(Clone)]
struct Partial {
    todo: Vec<NodeId>,
    old: BTreeSet<NodeId>,
    next: BTreeSet<NodeId>,
    pos: BTreeSet<usize>,
    neg: BTreeSet<usize>,
}

/// All consistent expansions of an obligation set, as `(old, next, valuation)`.
fn expand(
    closure: &Closure,
    obligations: &BTreeSet<NodeId>,
) -> Vec<(BTreeSet<NodeId>, BTreeSet<NodeId>, BTreeSet<usize>)> {
    let mut results = BTreeSet::new();
    let mut stack = vec![Partial {
        todo: obligations.iter().rev().copied().collect(),
        old: BTreeSet::new(),
        next: BTreeSet::new(),
        pos: BTreeSet::new(),
        neg: BTreeSet::new(),
    }];
    'branches: while let Some(mut p) = stack.pop() {
        while let Some(id) = p.todo.pop() {
            if !p.old.insert(id) {
                continue;
            }
            match closure.node(id) {
                Node::True => {}
                Node::False => continue 'branches,
                Node::Lit { prop, positive } => {
                    let (mine, other) = if positive {
                        (&mut p.pos, &p.neg)
                    } else {
                        (&mut p.neg, &p.pos)
                    };
                    if other.contains(&prop) {
                        continue 'branches;
                    }
                    mine.insert(prop);
                }
                Node::And(l, r) => {
                    p.todo.push(r);
                    p.todo.push(l);
                }
                Node::Next(x) => {
                    p.next.insert(x);
                }
                Node::Or(l, r) if p.old.contains(&l) || p.old.contains(&r) => {}
                Node::Until(_, r) if p.old.contains(&r) => {}
                Node::Or(l, r) => {
                    let mut alt = p.clone();
                    alt.todo.push(r);
                    stack.push(alt);
                    p.todo.push(l);
                }
                Node::Until(l, r) => {
                    // postpone: φ now, φ U ψ next
                    let mut alt = p.clone();
                    alt.todo.push(l);
                    alt.next.insert(id);
                    stack.push(alt);
                    // fulfil: ψ now
                    p.todo.push(r);
                }
                Node::Release(l, r) => {
                    // ψ now and (φ now, or φ R ψ next)
                    let mut alt = p.clone();
                    alt.todo.push(r);
                    alt.next.insert(id);
                    stack.push(alt);
                    p.todo.push(l);
                    p.todo.push(r);
                }
            }
        }
        results.insert((p.old, p.next, p.pos));
    }
    results.into_iter().collect()
}

struct Expansion {
    old: BTreeSet<NodeId>,
    next: BTreeSet<NodeId>,
    valuation: BTreeSet<usize>,
    accepting: Vec<bool>,
}

impl Expansion {
    fn dominates(&self, other: &Expansion) -> bool {
        self.next.is_subset(&other.next)
            && self
                .accepting
                .iter()
                .zip(&other.accepting)
                .all(|(mine, theirs)| *mine || !*theirs)
    }
}

/// Builds the automaton for a plain, desugared NNF formula. Only states
/// reachable from the initial obligation `{φ}` are constructed.
///
/// Among the expansions of one obligation set, an expansion is dropped when
/// a sibling has a subset of its `next` obligations and accepts at least
/// where it does. Any run through the dropped state can be replayed through
/// the sibling, so emptiness is unaffected.
pub fn build_automaton(formula: &Formula) -> GeneralizedBuchiAutomaton {
    let closure = Closure::new(formula);
    let untils = closure.untils();
    let mut automaton = GeneralizedBuchiAutomaton {
        closure,
        states: Vec::new(),
        obligations: Vec::new(),
        initial: Vec::new(),
        untils,
    };
    let mut index: BTreeMap<BTreeSet<NodeId>, usize> = BTreeMap::new();
    let root: BTreeSet<NodeId> = [automaton.closure.root()].into_iter().collect();
    index.insert(root.clone(), 0);
    automaton.obligations.push((root, Vec::new()));

    let mut cursor = 0;
    while cursor < automaton.obligations.len() {
        let obligation = automaton.obligations[cursor].0.clone();
        let expansions: Vec<Expansion> = expand(&automaton.closure, &obligation)
            .into_iter()
            .map(|(old, next, valuation)| {
                let accepting = automaton
                    .untils
                    .iter()
                    .map(|&u| match automaton.closure.node(u) {
                        Node::Until(_, r) => !old.contains(&u) || old.contains(&r),
                        _ => unreachable!(),
                    })
                    .collect();
                Expansion {
                    old,
                    next,
                    valuation,
                    accepting,
                }
            })
            .collect();
        let mut ids = Vec::new();
        for (k, e) in expansions.iter().enumerate() {
            // a sibling with fewer obligations and at least the same
            // acceptance simulates this one
            let dominated = expansions.iter().enumerate().any(|(j, f)| {
                j != k && f.dominates(e) && (!e.dominates(f) || j < k)
            });
            if dominated {
                continue;
            }
            let successor_obligation = match index.get(&e.next) {
                Some(&i) => i,
                None => {
                    let i = automaton.obligations.len();
                    index.insert(e.next.clone(), i);
                    automaton.obligations.push((e.next.clone(), Vec::new()));
                    i
                }
            };
            ids.push(automaton.states.len());
            automaton.states.push(State {
                old: e.old.clone(),
                next: e.next.clone(),
                valuation: e.valuation.clone(),
                successor_obligation,
                accepting: e.accepting.clone(),
            });
        }
        automaton.obligations[cursor].1 = ids;
        cursor += 1;
    }
    automaton.initial = automaton.obligations[0].1.clone();
    automaton
}
