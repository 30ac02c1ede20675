//! Common certainty components as closed sets of a reachability digraph.
//!
//! For a player subset `I`, draw an edge `ω → ω'` whenever some player in `I`
//! puts positive belief on `ω'` at `ω`. A nonempty set of states is an
//! `I`-common certainty component exactly when no edge leaves it: every
//! player in `I` is then certain, at every state of the set, of an event
//! inside the set (take the union of the supports). Minimal components are
//! the terminal strongly connected components of the graph, and the closure
//! of a state — the least component containing it — is its forward reachable
//! set. The SCC characterization is validated against exhaustive closed-set
//! enumeration in the tests.

use crate::model::{EventSet, TypeSpace};
use serde::Serialize;

/// Belief-support digraph for one player subset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReachabilityGraph {
    num_states: usize,
    /// Successor set per state.
    succ: Vec<EventSet>,
}

impl ReachabilityGraph {
    pub fn num_states(&self) -> usize {
        self.num_states
    }

    pub fn successors(&self, state: usize) -> &EventSet {
        &self.succ[state]
    }

    /// Forward reachable set including the state itself.
    pub fn reachable_from(&self, state: usize) -> EventSet {
        let mut seen = EventSet::singleton(state);
        let mut frontier = vec![state];
        while let Some(v) = frontier.pop() {
            for w in self.succ[v].iter() {
                if !seen.contains(w) {
                    seen.insert(w);
                    frontier.push(w);
                }
            }
        }
        seen
    }

    /// True when no edge leaves `set`.
    pub fn is_closed(&self, set: &EventSet) -> bool {
        set.iter()
            .filter(|&v| v < self.num_states)
            .all(|v| self.succ[v].is_subset_of(set))
    }
}

/// Error from component computations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ComponentsError {
    #[error("player subset is empty")]
    EmptyPlayerSet,
    #[error("player index {0} out of range")]
    PlayerOutOfRange(usize),
}

/// Minimal components and per-state closures for one player subset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentReport {
    /// Pairwise disjoint minimal closed sets, ordered by least state index.
    pub minimal: Vec<EventSet>,
    /// Per state, the least closed set containing it.
    pub closure: Vec<EventSet>,
}

impl Serialize for EventSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

fn check_players(ts: &TypeSpace, players: &[usize]) -> Result<(), ComponentsError> {
    if players.is_empty() {
        return Err(ComponentsError::EmptyPlayerSet);
    }
    for &p in players {
        if p >= ts.num_players() {
            return Err(ComponentsError::PlayerOutOfRange(p));
        }
    }
    Ok(())
}

/// Builds the belief-support digraph: `ω → ω'` iff `t_i(ω, {ω'}) > 0` for
/// some listed player `i`.
pub fn build_graph(
    ts: &TypeSpace,
    players: &[usize],
) -> Result<ReachabilityGraph, ComponentsError> {
    check_players(ts, players)?;
    let n = ts.num_states();
    let mut succ = vec![EventSet::empty(); n];
    for &p in players {
        let player = ts.player(p);
        for (state, slot) in succ.iter_mut().enumerate() {
            *slot = slot.union(&player.support(state));
        }
    }
    Ok(ReachabilityGraph {
        num_states: n,
        succ,
    })
}

/// Whether `set` is an `I`-common certainty component: nonempty and closed.
pub fn is_component(
    ts: &TypeSpace,
    players: &[usize],
    set: &EventSet,
) -> Result<bool, ComponentsError> {
    let graph = build_graph(ts, players)?;
    Ok(!set.is_empty() && set.is_subset_of(&ts.all_states()) && graph.is_closed(set))
}

/// Tarjan's strongly connected components, iterative. Returned in reverse
/// topological order (every edge leaving an SCC points to an earlier entry).
fn tarjan_sccs(graph: &ReachabilityGraph) -> Vec<EventSet> {
    let n = graph.num_states;
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut next_index = 0usize;
    let mut sccs: Vec<EventSet> = Vec::new();

    // Explicit DFS stack: (vertex, successor iterator position).
    let mut call_stack: Vec<(usize, usize)> = Vec::new();
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        call_stack.push((root, 0));
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut pos)) = call_stack.last_mut() {
            let successors: Vec<usize> = graph.succ[v].iter().collect();
            if *pos < successors.len() {
                let w = successors[*pos];
                *pos += 1;
                if index[w] == usize::MAX {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call_stack.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call_stack.pop();
                if let Some(&(parent, _)) = call_stack.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut scc = EventSet::empty();
                    while let Some(w) = stack.pop() {
                        on_stack[w] = false;
                        scc.insert(w);
                        if w == v {
                            break;
                        }
                    }
                    sccs.push(scc);
                }
            }
        }
    }
    sccs
}

/// Minimal components (terminal SCCs) and the closure map.
pub fn minimal_components(
    ts: &TypeSpace,
    players: &[usize],
) -> Result<ComponentReport, ComponentsError> {
    let graph = build_graph(ts, players)?;
    let sccs = tarjan_sccs(&graph);
    let mut minimal: Vec<EventSet> = sccs
        .into_iter()
        .filter(|scc| {
            // Terminal: every successor of every member stays inside.
            graph.is_closed(scc)
        })
        .collect();
    minimal.sort_by_key(|s| s.bits());
    let closure = (0..graph.num_states)
        .map(|v| graph.reachable_from(v))
        .collect();
    Ok(ComponentReport { minimal, closure })
}

/// Whether `event` is `I`-commonly certain at `state`: some component
/// contains the state inside the event, i.e. the state's closure fits.
pub fn commonly_certain_at(
    ts: &TypeSpace,
    players: &[usize],
    event: &EventSet,
    state: usize,
) -> Result<bool, ComponentsError> {
    check_players(ts, players)?;
    let graph = build_graph(ts, players)?;
    Ok(graph.reachable_from(state).is_subset_of(event))
}
