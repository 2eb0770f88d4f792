//! Satisfiability-preserving reductions from the decidable HyperLTL fragments
//! to plain LTL, and the projection that turns an LTL witness back into a
//! trace set.
//!
//! * `∀*`: erase trace indices (every variable may point to the same trace).
//! * `∃*`: zip the witnesses into one trace over fresh propositions `a@i`.
//! * `∃*∀*`: replace the universals by every combination of existentials,
//!   yielding an `∃*` formula with `nᵐ` substituted copies of the body.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use crate::fragments::{classify, FragmentClass};
use crate::models::{Lasso, TraceSet, Valuation};
use crate::syntax::{Atom, Formula, HyperFormula, Prop, Quantifier, TraceVar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReductionError {
    #[error("expected a {expected} formula, found {found}")]
    WrongFragment {
        expected: &'static str,
        found: FragmentClass,
    },
    #[error("unrolling needs {required} substituted copies, limit is {limit}")]
    BlowupExceeded { required: usize, limit: usize },
    #[error("proposition `{0}` is not in the substituted alphabet")]
    AlphabetMismatch(Prop),
}

/// Bijection `AP × {1..n} → ÃP`, `(a, i) ↦ "a@i"`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Substitution {
    alphabet: Vec<Prop>,
    arity: usize,
}

impl Substitution {
    pub fn new(alphabet: impl IntoIterator<Item = Prop>, arity: usize) -> Self {
        let alphabet: BTreeSet<Prop> = alphabet.into_iter().collect();
        Substitution {
            alphabet: alphabet.into_iter().collect(),
            arity,
        }
    }

    pub fn alphabet(&self) -> &[Prop] {
        &self.alphabet
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// `s(a, i)` for 1-based position `i`.
    pub fn fresh(&self, prop: &Prop, position: usize) -> Prop {
        debug_assert!((1..=self.arity).contains(&position));
        Prop::new(format!("{prop}@{position}"))
    }

    /// `s⁻¹`, defined exactly on `ÃP`.
    pub fn inverse(&self, fresh: &Prop) -> Option<(Prop, usize)> {
        let (name, idx) = fresh.as_str().rsplit_once('@')?;
        let position: usize = idx.parse().ok()?;
        let prop = Prop::new(name);
        let known = self.alphabet.binary_search(&prop).is_ok();
        (known && (1..=self.arity).contains(&position) && idx == position.to_string())
            .then_some((prop, position))
    }

    /// The fresh alphabet `ÃP`, of size `|AP| · n`.
    pub fn fresh_alphabet(&self) -> BTreeSet<Prop> {
        self.alphabet
            .iter()
            .flat_map(|a| (1..=self.arity).map(move |i| (a, i)))
            .map(|(a, i)| self.fresh(a, i))
            .collect()
    }

    /// Zips `n` traces into one: `t̃[j] = ⋃ᵢ s(tᵢ[j], i)`. The result has the
    /// longest stem and the least common multiple of the loop lengths.
    pub fn zip(&self, traces: &[Lasso]) -> Option<Lasso> {
        if traces.is_empty() || traces.len() != self.arity {
            return None;
        }
        let stem = traces.iter().map(|t| t.stem().len()).max()?;
        let period = traces
            .iter()
            .try_fold(1usize, |acc, t| lcm(acc, t.cycle().len()))?;
        let at = |j: usize| -> Valuation {
            traces
                .iter()
                .enumerate()
                .flat_map(|(i, t)| t.valuation(j).iter().map(move |a| self.fresh(a, i + 1)))
                .collect()
        };
        Lasso::new((0..stem).map(at).collect(), (stem..stem + period).map(at).collect()).ok()
    }
}

fn lcm(a: usize, b: usize) -> Option<usize> {
    let gcd = |mut x: usize, mut y: usize| {
        while y != 0 {
            (x, y) = (y, x % y);
        }
        x
    };
    (a / gcd(a, b)).checked_mul(b)
}

/// An LTL formula equisatisfiable with the HyperLTL input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LtlReduction {
    pub formula: Formula,
    /// Present on the `∃*` path, absent on the `∀*` path.
    pub substitution: Option<Substitution>,
    pub witness_arity: usize,
}

/// `φ⁻ˡ`: drops the prefix and erases every trace index.
pub fn drop_quantifiers(formula: &HyperFormula) -> Result<LtlReduction, ReductionError> {
    let class = classify(formula);
    if !matches!(class, FragmentClass::ForallStar { .. }) {
        return Err(ReductionError::WrongFragment {
            expected: "forall-star",
            found: class,
        });
    }
    let body = formula.body().map_atoms(&mut |a| {
        Formula::Atom(Atom {
            prop: a.prop.clone(),
            trace: None,
        })
    });
    Ok(LtlReduction {
        formula: body,
        substitution: None,
        witness_arity: 1,
    })
}

/// `φ∃`: replaces each `a_πᵢ` with the fresh proposition `a@i`.
pub fn zip_exists(formula: &HyperFormula) -> Result<LtlReduction, ReductionError> {
    let class = classify(formula);
    let FragmentClass::ExistsStar { n } = class else {
        return Err(ReductionError::WrongFragment {
            expected: "exists-star",
            found: class,
        });
    };
    let subst = Substitution::new(formula.body().props(), n);
    let position: BTreeMap<&TraceVar, usize> = formula
        .variables()
        .enumerate()
        .map(|(i, v)| (v, i + 1))
        .collect();
    let zipped = formula.body().map_atoms(&mut |a| {
        let var = a.trace.as_ref().expect("closed formula has indexed atoms");
        Formula::Atom(Atom {
            prop: subst.fresh(&a.prop, position[var]),
            trace: None,
        })
    });
    Ok(LtlReduction {
        formula: zipped,
        substitution: Some(subst),
        witness_arity: n,
    })
}

/// Result of eliminating the universal quantifiers of an `∃*∀*` formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Unrolled {
    /// `∃π₁…∃πₙ.` conjunction of the distinct top-level conjuncts.
    pub formula: HyperFormula,
    /// The `nᵐ` substituted bodies before deduplication, with `j₁` varying fastest.
    pub substituted: Vec<Formula>,
}

impl Unrolled {
    pub fn conjuncts_before_dedup(&self) -> usize {
        self.substituted.len()
    }
}

/// Number of substituted copies `nᵐ`, saturating.
pub fn unroll_size(n: usize, m: usize) -> usize {
    u32::try_from(m)
        .ok()
        .and_then(|m| n.checked_pow(m))
        .unwrap_or(usize::MAX)
}

/// `sp`: `∃π₁…∃πₙ. ⋀_{(j₁…jₘ) ∈ {1..n}ᵐ} ψ[π′₁\π_{j₁}]…[π′ₘ\π_{jₘ}]`.
pub fn unroll_universals(formula: &HyperFormula, limit: usize) -> Result<Unrolled, ReductionError> {
    let class = classify(formula);
    let FragmentClass::ExistsForall { n, m } = class else {
        return Err(ReductionError::WrongFragment {
            expected: "exists-forall",
            found: class,
        });
    };
    let required = unroll_size(n, m);
    if required > limit {
        return Err(ReductionError::BlowupExceeded { required, limit });
    }
    let existentials: Vec<&TraceVar> = formula.variables().take(n).collect();
    let universals: Vec<&TraceVar> = formula.variables().skip(n).collect();

    let mut substituted = Vec::with_capacity(required);
    for k in 0..required {
        let mut rest = k;
        let mut map: BTreeMap<&TraceVar, &TraceVar> = BTreeMap::new();
        for u in &universals {
            map.insert(u, existentials[rest % n]);
            rest /= n;
        }
        let body = formula.body().map_atoms(&mut |a| {
            let trace = a
                .trace
                .as_ref()
                .map(|v| map.get(v).map_or_else(|| v.clone(), |e| (*e).clone()));
            Formula::Atom(Atom {
                prop: a.prop.clone(),
                trace,
            })
        });
        substituted.push(body);
    }

    let mut seen = HashSet::new();
    let mut parts = Vec::new();
    for body in &substituted {
        for c in body.conjuncts() {
            if seen.insert(c) {
                parts.push(c.clone());
            }
        }
    }
    let prefix = existentials
        .into_iter()
        .map(|v| (Quantifier::Exists, v.clone()))
        .collect();
    Ok(Unrolled {
        formula: HyperFormula::new_unchecked(prefix, Formula::conjunction(parts)),
        substituted,
    })
}

/// `pr`: splits a trace over `ÃP` into its `n` witnesses; duplicates collapse.
pub fn project(trace: &Lasso, subst: &Substitution) -> Result<TraceSet, ReductionError> {
    let split = |v: &Valuation| -> Result<Vec<Valuation>, ReductionError> {
        let mut out = vec![Valuation::new(); subst.arity()];
        for p in v {
            let (a, i) = subst
                .inverse(p)
                .ok_or_else(|| ReductionError::AlphabetMismatch(p.clone()))?;
            out[i - 1].insert(a);
        }
        Ok(out)
    };
    let stem: Vec<Vec<Valuation>> = trace.stem().iter().map(split).collect::<Result<_, _>>()?;
    let cycle: Vec<Vec<Valuation>> = trace.cycle().iter().map(split).collect::<Result<_, _>>()?;
    Ok((0..subst.arity())
        .map(|i| {
            Lasso::new(
                stem.iter().map(|v| v[i].clone()).collect(),
                cycle.iter().map(|v| v[i].clone()).collect(),
            )
            .expect("loop length is inherited")
        })
        .collect())
}
