//! Emptiness check for generalized Büchi automata: Tarjan SCCs, then a
//! shortest stem into the nearest accepting SCC and a cycle inside it that
//! touches every acceptance set.

use std::collections::VecDeque;

use super::tableau::GeneralizedBuchiAutomaton;

/// Strongly connected components in reverse topological order (iterative Tarjan).
pub fn tarjan_scc(len: usize, succ: impl Fn(usize) -> Vec<usize>) -> Vec<Vec<usize>> {
    const UNVISITED: usize = usize::MAX;
    let mut index = vec![UNVISITED; len];
    let mut low = vec![0; len];
    let mut on_stack = vec![false; len];
    let mut stack = Vec::new();
    let mut sccs = Vec::new();
    let mut counter = 0;

    for root in 0..len {
        if index[root] != UNVISITED {
            continue;
        }
        // (vertex, successors, next successor to visit)
        let mut call: Vec<(usize, Vec<usize>, usize)> = Vec::new();
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        call.push((root, succ(root), 0));

        while let Some((v, succs, next)) = call.last_mut() {
            let v = *v;
            if let Some(&w) = succs.get(*next) {
                *next += 1;
                if index[w] == UNVISITED {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, succ(w), 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some((parent, ..)) = call.last() {
                low[*parent] = low[*parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut component = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack");
                    on_stack[w] = false;
                    component.push(w);
                    if w == v {
                        break;
                    }
                }
                component.sort_unstable();
                sccs.push(component);
            }
        }
    }
    sccs
}

/// A run `stem · cycleʷ` of automaton states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateLasso {
    pub stem: Vec<usize>,
    pub cycle: Vec<usize>,
}

/// BFS from `sources` restricted to `allowed`; returns the path (inclusive of
/// both ends) to the first state satisfying `goal`. A source only counts as a
/// goal if `allow_empty` is set.
fn bfs_path(
    automaton: &GeneralizedBuchiAutomaton,
    sources: &[usize],
    allowed: &dyn Fn(usize) -> bool,
    goal: &dyn Fn(usize) -> bool,
    allow_empty: bool,
) -> Option<Vec<usize>> {
    let n = automaton.states.len();
    let mut parent = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    for &s in sources {
        if allow_empty && goal(s) {
            return Some(vec![s]);
        }
        if !seen[s] {
            seen[s] = true;
            queue.push_back(s);
        }
    }
    let rebuild = |end: usize, parent: &[usize], first: usize| {
        let mut path = vec![end];
        let mut cur = first;
        while cur != usize::MAX {
            path.push(cur);
            cur = parent[cur];
        }
        path.reverse();
        path
    };
    while let Some(v) = queue.pop_front() {
        for &w in automaton.successors(v) {
            if !allowed(w) {
                continue;
            }
            if goal(w) {
                return Some(rebuild(w, &parent, v));
            }
            if !seen[w] {
                seen[w] = true;
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    None
}

/// Finds an accepting lasso, or `None` if the language is empty.
pub fn find_accepting_lasso(automaton: &GeneralizedBuchiAutomaton) -> Option<StateLasso> {
    let n = automaton.states.len();
    if automaton.initial.is_empty() {
        return None;
    }
    let sccs = tarjan_scc(n, |v| automaton.successors(v).to_vec());
    let mut component = vec![usize::MAX; n];
    for (i, scc) in sccs.iter().enumerate() {
        for &v in scc {
            component[v] = i;
        }
    }
    let sets = automaton.acceptance_sets();
    let accepting_scc = |scc: &Vec<usize>| {
        let nontrivial = scc.len() > 1 || automaton.successors(scc[0]).contains(&scc[0]);
        nontrivial
            && (0..sets).all(|k| scc.iter().any(|&v| automaton.states[v].accepting[k]))
    };
    let good: Vec<bool> = sccs.iter().map(accepting_scc).collect();
    if !good.iter().any(|&g| g) {
        return None;
    }

    // stem: shortest path from an initial state into an accepting SCC
    let path = bfs_path(
        automaton,
        &automaton.initial,
        &|_| true,
        &|v| good[component[v]],
        true,
    )?;
    let entry = *path.last().expect("non-empty path");
    let stem = path[..path.len() - 1].to_vec();

    let scc_id = component[entry];
    let inside = |v: usize| component[v] == scc_id;
    let mut cycle = vec![entry];
    for k in 0..sets {
        if cycle.iter().any(|&v| automaton.states[v].accepting[k]) {
            continue;
        }
        let current = *cycle.last().expect("non-empty cycle");
        let leg = bfs_path(
            automaton,
            &[current],
            &inside,
            &|v| automaton.states[v].accepting[k],
            false,
        )
        .expect("accepting SCC contains every acceptance set");
        cycle.extend_from_slice(&leg[1..]);
    }
    let current = *cycle.last().expect("non-empty cycle");
    let back = bfs_path(automaton, &[current], &inside, &|v| v == entry, false)
        .expect("SCC is strongly connected");
    cycle.extend_from_slice(&back[1..back.len() - 1]);
    Some(StateLasso { stem, cycle })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tarjan_on_small_graph() {
        // 0 -> 1 -> 2 -> 0, 2 -> 3, 3 -> 3, 4 isolated
        let edges = [vec![1], vec![2], vec![0, 3], vec![3], vec![]];
        let sccs = tarjan_scc(5, |v| edges[v].clone());
        assert_eq!(sccs, vec![vec![3], vec![0, 1, 2], vec![4]]);
    }

    #[test]
    fn tarjan_long_chain_is_not_recursive() {
        let n = 200_000;
        let sccs = tarjan_scc(n, |v| if v + 1 < n { vec![v + 1] } else { vec![0] });
        assert_eq!(sccs.len(), 1);
        assert_eq!(sccs[0].len(), n);
    }
}
