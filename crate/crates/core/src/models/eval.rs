use std::collections::BTreeMap;

use super::{Lasso, TraceSet};
use crate::syntax::{Atom, Formula, HyperFormula, Quantifier, TraceVar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("aligned period of {required} positions exceeds the limit of {limit}")]
    PeriodGuard { required: usize, limit: usize },
    #[error("trace variable `{0}` is not assigned")]
    Unassigned(TraceVar),
}

/// Finite lasso-shaped position graph: `0..len`, successor of `len - 1` is `loop_start`.
struct Frame<'a> {
    len: usize,
    loop_start: usize,
    atom: &'a dyn Fn(&Atom, usize) -> bool,
}

impl Frame<'_> {
    fn succ(&self, i: usize) -> usize {
        if i + 1 < self.len {
            i + 1
        } else {
            self.loop_start
        }
    }

    /// Least (`least = true`) or greatest fixpoint of `x = now ∨ (keep ∧ X x)`.
    fn fixpoint(&self, keep: &[bool], now: &[bool], least: bool) -> Vec<bool> {
        let mut x = vec![!least; self.len];
        loop {
            let mut changed = false;
            for i in (0..self.len).rev() {
                let v = now[i] || (keep[i] && x[self.succ(i)]);
                if v != x[i] {
                    x[i] = v;
                    changed = true;
                }
            }
            if !changed {
                return x;
            }
        }
    }

    /// Truth value of `f` at every position.
    fn truth(&self, f: &Formula) -> Vec<bool> {
        use Formula::*;
        let n = self.len;
        match f {
            True => vec![true; n],
            False => vec![false; n],
            Atom(a) => (0..n).map(|i| (self.atom)(a, i)).collect(),
            Not(x) => self.truth(x).into_iter().map(|b| !b).collect(),
            And(l, r) => zip_with(self.truth(l), self.truth(r), |a, b| a && b),
            Or(l, r) => zip_with(self.truth(l), self.truth(r), |a, b| a || b),
            Implies(l, r) => zip_with(self.truth(l), self.truth(r), |a, b| !a || b),
            Iff(l, r) => zip_with(self.truth(l), self.truth(r), |a, b| a == b),
            Next(x) => {
                let v = self.truth(x);
                (0..n).map(|i| v[self.succ(i)]).collect()
            }
            Until(l, r) => self.fixpoint(&self.truth(l), &self.truth(r), true),
            WeakUntil(l, r) => self.fixpoint(&self.truth(l), &self.truth(r), false),
            Release(l, r) => {
                // φ R ψ = ψ ∧ (φ ∨ X(φ R ψ)), i.e. ¬(¬φ U ¬ψ)
                let nl: Vec<bool> = self.truth(l).into_iter().map(|b| !b).collect();
                let nr: Vec<bool> = self.truth(r).into_iter().map(|b| !b).collect();
                self.fixpoint(&nl, &nr, true).into_iter().map(|b| !b).collect()
            }
            Eventually(x) => self.fixpoint(&vec![true; n], &self.truth(x), true),
            Globally(x) => {
                let neg: Vec<bool> = self.truth(x).into_iter().map(|b| !b).collect();
                self.fixpoint(&vec![true; n], &neg, true)
                    .into_iter()
                    .map(|b| !b)
                    .collect()
            }
        }
    }
}

fn zip_with(a: Vec<bool>, b: Vec<bool>, op: impl Fn(bool, bool) -> bool) -> Vec<bool> {
    a.into_iter().zip(b).map(|(x, y)| op(x, y)).collect()
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Evaluates a plain LTL formula on a lasso at position 0. Trace indices on
/// atoms, if any, are ignored.
pub fn evaluate_ltl(trace: &Lasso, formula: &Formula) -> bool {
    let atom = |a: &Atom, i: usize| trace.valuation(i).contains(&a.prop);
    let frame = Frame {
        len: trace.positions(),
        loop_start: trace.stem().len(),
        atom: &atom,
    };
    frame.truth(formula)[0]
}

/// A trace assignment `Π` together with the position shift of `Π[i,∞]`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TraceAssignment {
    map: BTreeMap<TraceVar, Lasso>,
    offset: usize,
}

impl TraceAssignment {
    pub fn new() -> Self {
        TraceAssignment::default()
    }

    /// `Π[π ↦ t]`
    pub fn with(mut self, var: TraceVar, trace: Lasso) -> Self {
        self.map.insert(var, trace);
        self
    }

    /// `Π[i,∞]`
    pub fn shifted(&self, by: usize) -> Self {
        TraceAssignment {
            map: self.map.clone(),
            offset: self.offset + by,
        }
    }

    pub fn offset(&self) -> usize {
        self.offset
    }

    pub fn get(&self, var: &TraceVar) -> Option<&Lasso> {
        self.map.get(var)
    }

    /// Valuation of `var` at relative position `j`, i.e. `Π(var)[offset + j]`.
    pub fn lookup(&self, var: &TraceVar, j: usize) -> Option<&super::Valuation> {
        self.map.get(var).map(|t| t.valuation(self.offset + j))
    }
}

fn eval_aligned(
    body: &Formula,
    assignment: &[(&TraceVar, &Lasso)],
    offset: usize,
    period_guard: usize,
) -> Result<bool, EvalError> {
    let free = body.free_trace_variables();
    let mut traces: BTreeMap<&TraceVar, &Lasso> = BTreeMap::new();
    for var in &free {
        // innermost binding wins
        let t = assignment
            .iter()
            .rev()
            .find(|(v, _)| *v == var)
            .map(|(_, t)| *t)
            .ok_or_else(|| EvalError::Unassigned(var.clone()))?;
        traces.insert(var, t);
    }
    let stem = traces.values().map(|t| t.stem().len()).max().unwrap_or(0);
    let mut period = 1usize;
    for t in traces.values() {
        let l = t.cycle().len();
        period = (period / gcd(period, l)).saturating_mul(l);
        if period > period_guard {
            return Err(EvalError::PeriodGuard {
                required: period,
                limit: period_guard,
            });
        }
    }
    let atom = |a: &Atom, i: usize| match &a.trace {
        Some(v) => traces
            .get(v)
            .is_some_and(|t| t.valuation(i).contains(&a.prop)),
        None => false,
    };
    let frame = Frame {
        len: stem + period,
        loop_start: stem,
        atom: &atom,
    };
    let truth = frame.truth(body);
    let idx = if offset < frame.len {
        offset
    } else {
        stem + (offset - stem) % period
    };
    Ok(truth[idx])
}

/// Evaluates a quantifier-free body under a trace assignment at the
/// assignment's offset. Joint evaluation aligns all loops on the product
/// lasso whose period is the lcm of the loop lengths.
pub fn evaluate_body(
    assignment: &TraceAssignment,
    body: &Formula,
    period_guard: usize,
) -> Result<bool, EvalError> {
    let pairs: Vec<(&TraceVar, &Lasso)> = assignment.map.iter().collect();
    eval_aligned(body, &pairs, assignment.offset, period_guard)
}

/// `T ⊨ φ`: quantifiers range over the finite set `T`. A formula without
/// quantifiers is plain LTL and must hold on every trace of `T`.
pub fn evaluate_hyperltl(
    traces: &TraceSet,
    formula: &HyperFormula,
    period_guard: usize,
) -> Result<bool, EvalError> {
    if formula.prefix().is_empty() {
        return Ok(traces.iter().all(|t| evaluate_ltl(t, formula.body())));
    }
    let all: Vec<&Lasso> = traces.iter().collect();
    let mut assignment = Vec::with_capacity(formula.prefix().len());
    quantify(
        &all,
        formula.prefix(),
        formula.body(),
        &mut assignment,
        period_guard,
    )
}

fn quantify<'a>(
    traces: &[&'a Lasso],
    prefix: &'a [(Quantifier, TraceVar)],
    body: &Formula,
    assignment: &mut Vec<(&'a TraceVar, &'a Lasso)>,
    period_guard: usize,
) -> Result<bool, EvalError> {
    let Some(((q, var), rest)) = prefix.split_first() else {
        return eval_aligned(body, assignment, 0, period_guard);
    };
    for t in traces {
        assignment.push((var, t));
        let holds = quantify(traces, rest, body, assignment, period_guard);
        assignment.pop();
        match (q, holds?) {
            (Quantifier::Exists, true) => return Ok(true),
            (Quantifier::Forall, false) => return Ok(false),
            _ => {}
        }
    }
    Ok(*q == Quantifier::Forall)
}
