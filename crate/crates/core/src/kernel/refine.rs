//! Traces refinement and shortest-trace searches.
//!
//! Both searches run level by level over visible-trace length, expanding
//! nodes in discovery order and events in canonical order. Every node is
//! tau-closed as soon as it is discovered, so the first hit is a shortest
//! trace and ties resolve the same way on every run.

use std::collections::HashSet;
use std::hash::Hash;

use super::event::Event;
use super::normal::{normalize, DetAutomaton};
use super::process::{ProcessEnv, ProcessExpr};
use super::semantics::{Lts, StateId};
use super::traces::Trace;
use super::KernelError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefinementVerdict {
    pub holds: bool,
    /// A shortest trace of the implementation that the specification refuses.
    /// May end in Tick.
    pub counterexample: Option<Trace>,
}

/// Search tree over keys, remembering the visible event that led to each node.
struct SearchTree<K> {
    keys: Vec<K>,
    parents: Vec<Option<(usize, Option<Event>)>>,
    seen: HashSet<K>,
    bound: usize,
}

impl<K: Copy + Eq + Hash> SearchTree<K> {
    fn new(bound: usize) -> Self {
        SearchTree {
            keys: Vec::new(),
            parents: Vec::new(),
            seen: HashSet::new(),
            bound,
        }
    }

    /// Adds `key` unless already seen; returns the new node index.
    fn add(&mut self, key: K, parent: Option<(usize, Option<Event>)>) -> Result<Option<usize>, KernelError> {
        if !self.seen.insert(key) {
            return Ok(None);
        }
        if self.keys.len() >= self.bound {
            return Err(KernelError::StateBoundExceeded { bound: self.bound });
        }
        self.keys.push(key);
        self.parents.push(parent);
        Ok(Some(self.keys.len() - 1))
    }

    fn trace(&self, mut node: usize) -> Trace {
        let mut trace = Vec::new();
        while let Some((parent, event)) = self.parents[node] {
            if let Some(e) = event {
                trace.push(e);
            }
            node = parent;
        }
        trace.reverse();
        trace
    }
}

/// Adds the tau-closure of `node` to the tree and appends every new node to
/// `level`. `key_of` maps a tau successor configuration to its key.
fn close<K: Copy + Eq + Hash>(
    tree: &mut SearchTree<K>,
    lts: &mut Lts<'_>,
    node: usize,
    config_of: impl Fn(K) -> StateId,
    key_of: impl Fn(K, StateId) -> K,
    level: &mut Vec<usize>,
) -> Result<(), KernelError> {
    let start = level.len();
    level.push(node);
    let mut i = start;
    while i < level.len() {
        let n = level[i];
        let key = tree.keys[n];
        for &(e, t) in lts.edges(config_of(key))?.iter() {
            if e.is_tau() {
                if let Some(child) = tree.add(key_of(key, t), Some((n, None)))? {
                    level.push(child);
                }
            }
        }
        i += 1;
    }
    Ok(())
}

/// Decides whether every finite trace of `implementation` is a trace of
/// `spec`.
pub fn refines_traces(
    spec: &ProcessExpr,
    implementation: &ProcessExpr,
    env: &ProcessEnv,
    bound: usize,
) -> Result<RefinementVerdict, KernelError> {
    let dfa = normalize(spec, env, bound)?;
    refines_normalized(&dfa, implementation, env, bound)
}

/// As [`refines_traces`], against an already normalized specification.
pub fn refines_normalized(
    spec: &DetAutomaton,
    implementation: &ProcessExpr,
    env: &ProcessEnv,
    bound: usize,
) -> Result<RefinementVerdict, KernelError> {
    let mut lts = Lts::new(env, bound);
    let root = lts.intern(implementation.clone())?;
    let mut tree: SearchTree<(StateId, usize)> = SearchTree::new(bound);
    let config_of = |(c, _): (StateId, usize)| c;
    let key_of = |(_, m): (StateId, usize), c: StateId| (c, m);

    let mut frontier = Vec::new();
    if let Some(n) = tree.add((root, DetAutomaton::INITIAL), None)? {
        close(&mut tree, &mut lts, n, config_of, key_of, &mut frontier)?;
    }
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &node in &frontier {
            let (config, macro_state) = tree.keys[node];
            for &(e, t) in lts.edges(config)?.iter() {
                match e {
                    Event::Tau => {}
                    Event::Tick => {
                        if !spec.accepts_tick(macro_state) {
                            let mut cex = tree.trace(node);
                            cex.push(Event::Tick);
                            return Ok(RefinementVerdict {
                                holds: false,
                                counterexample: Some(cex),
                            });
                        }
                    }
                    Event::Visible(id) => match spec.successor(macro_state, id) {
                        None => {
                            let mut cex = tree.trace(node);
                            cex.push(e);
                            return Ok(RefinementVerdict {
                                holds: false,
                                counterexample: Some(cex),
                            });
                        }
                        Some(m) => {
                            if let Some(child) = tree.add((t, m), Some((node, Some(e))))? {
                                close(&mut tree, &mut lts, child, config_of, key_of, &mut next)?;
                            }
                        }
                    },
                }
            }
        }
        frontier = next;
    }
    Ok(RefinementVerdict {
        holds: true,
        counterexample: None,
    })
}

/// A shortest visible trace of `p` after which `target` is enabled, or `None`
/// if no reachable configuration offers it.
pub fn shortest_trace_enabling(
    p: &ProcessExpr,
    env: &ProcessEnv,
    target: Event,
    bound: usize,
) -> Result<Option<Trace>, KernelError> {
    let mut lts = Lts::new(env, bound);
    let root = lts.intern(p.clone())?;
    let mut tree: SearchTree<StateId> = SearchTree::new(bound);
    let config_of = |c: StateId| c;
    let key_of = |_: StateId, c: StateId| c;

    let mut frontier = Vec::new();
    if let Some(n) = tree.add(root, None)? {
        close(&mut tree, &mut lts, n, config_of, key_of, &mut frontier)?;
    }
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &node in &frontier {
            let config = tree.keys[node];
            let edges = lts.edges(config)?;
            if edges.iter().any(|&(e, _)| e == target) {
                return Ok(Some(tree.trace(node)));
            }
            for &(e, t) in edges.iter() {
                if e.visible().is_none() {
                    continue;
                }
                if let Some(child) = tree.add(t, Some((node, Some(e))))? {
                    close(&mut tree, &mut lts, child, config_of, key_of, &mut next)?;
                }
            }
        }
        frontier = next;
    }
    Ok(None)
}
