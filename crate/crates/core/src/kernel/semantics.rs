//! Structural operational semantics and a memoizing state-space explorer.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use super::event::Event;
use super::process::{ProcessEnv, ProcessExpr};
use super::KernelError;

/// Reference unfoldings allowed in a single step before giving up.
const MAX_UNFOLD_DEPTH: usize = 256;

/// All one-step transitions of `p`, sorted by event then successor.
pub fn transitions(p: &ProcessExpr, env: &ProcessEnv) -> Result<BTreeSet<(Event, ProcessExpr)>, KernelError> {
    let mut out = BTreeSet::new();
    collect(p, env, 0, &mut out)?;
    Ok(out)
}

fn collect(
    p: &ProcessExpr,
    env: &ProcessEnv,
    depth: usize,
    out: &mut BTreeSet<(Event, ProcessExpr)>,
) -> Result<(), KernelError> {
    match p {
        ProcessExpr::Stop => {}
        ProcessExpr::Skip => {
            out.insert((Event::Tick, ProcessExpr::Stop));
        }
        ProcessExpr::Prefix(a, cont) => {
            out.insert((Event::Visible(*a), cont.as_ref().clone()));
        }
        ProcessExpr::ExtChoice(left, right) => {
            for (e, l) in transitions_at(left, env, depth)? {
                let next = if e.is_tau() {
                    ProcessExpr::ExtChoice(Arc::new(l), right.clone())
                } else {
                    l
                };
                out.insert((e, next));
            }
            for (e, r) in transitions_at(right, env, depth)? {
                let next = if e.is_tau() {
                    ProcessExpr::ExtChoice(left.clone(), Arc::new(r))
                } else {
                    r
                };
                out.insert((e, next));
            }
        }
        ProcessExpr::Interleave(left, right) => {
            let lt = transitions_at(left, env, depth)?;
            let rt = transitions_at(right, env, depth)?;
            let mut left_ticks = false;
            let mut right_ticks = false;
            for (e, l) in lt {
                if e == Event::Tick {
                    left_ticks = true;
                } else {
                    out.insert((e, ProcessExpr::Interleave(Arc::new(l), right.clone())));
                }
            }
            for (e, r) in rt {
                if e == Event::Tick {
                    right_ticks = true;
                } else {
                    out.insert((e, ProcessExpr::Interleave(left.clone(), Arc::new(r))));
                }
            }
            // distributed termination
            if left_ticks && right_ticks {
                out.insert((Event::Tick, ProcessExpr::Stop));
            }
        }
        ProcessExpr::Hide(body, hidden) => {
            for (e, b) in transitions_at(body, env, depth)? {
                match e {
                    Event::Tick => {
                        out.insert((Event::Tick, ProcessExpr::Stop));
                    }
                    Event::Visible(a) if hidden.contains(a) => {
                        out.insert((Event::Tau, ProcessExpr::Hide(Arc::new(b), hidden.clone())));
                    }
                    _ => {
                        out.insert((e, ProcessExpr::Hide(Arc::new(b), hidden.clone())));
                    }
                }
            }
        }
        ProcessExpr::Ref(name, args) => {
            if depth >= MAX_UNFOLD_DEPTH {
                return Err(KernelError::UnguardedRecursion { name: name.to_string() });
            }
            let body = env.resolve(name, args)?;
            collect(&body, env, depth + 1, out)?;
        }
    }
    Ok(())
}

fn transitions_at(
    p: &ProcessExpr,
    env: &ProcessEnv,
    depth: usize,
) -> Result<BTreeSet<(Event, ProcessExpr)>, KernelError> {
    let mut out = BTreeSet::new();
    collect(p, env, depth, &mut out)?;
    Ok(out)
}

/// Events `p` can perform as its first step.
pub fn initials(p: &ProcessExpr, env: &ProcessEnv) -> Result<BTreeSet<Event>, KernelError> {
    Ok(transitions(p, env)?.into_iter().map(|(e, _)| e).collect())
}

/// Successors of `p` after performing `event`; empty if refused.
pub fn step(p: &ProcessExpr, env: &ProcessEnv, event: Event) -> Result<BTreeSet<ProcessExpr>, KernelError> {
    Ok(transitions(p, env)?
        .into_iter()
        .filter(|(e, _)| *e == event)
        .map(|(_, q)| q)
        .collect())
}

pub type StateId = usize;

type Edges = Arc<[(Event, StateId)]>;

/// Lazily explored labelled transition system over process terms.
///
/// States are interned terms; transitions are computed on first request and
/// cached. Interning more than `bound` terms fails with
/// [`KernelError::StateBoundExceeded`].
pub struct Lts<'e> {
    env: &'e ProcessEnv,
    bound: usize,
    ids: HashMap<ProcessExpr, StateId>,
    states: Vec<ProcessExpr>,
    edges: Vec<Option<Edges>>,
}

impl<'e> Lts<'e> {
    pub fn new(env: &'e ProcessEnv, bound: usize) -> Self {
        Lts {
            env,
            bound,
            ids: HashMap::new(),
            states: Vec::new(),
            edges: Vec::new(),
        }
    }

    pub fn env(&self) -> &'e ProcessEnv {
        self.env
    }

    pub fn intern(&mut self, p: ProcessExpr) -> Result<StateId, KernelError> {
        if let Some(&id) = self.ids.get(&p) {
            return Ok(id);
        }
        if self.states.len() >= self.bound {
            return Err(KernelError::StateBoundExceeded { bound: self.bound });
        }
        let id = self.states.len();
        self.ids.insert(p.clone(), id);
        self.states.push(p);
        self.edges.push(None);
        Ok(id)
    }

    pub fn state(&self, id: StateId) -> &ProcessExpr {
        &self.states[id]
    }

    /// Number of states interned so far.
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn edges(&mut self, id: StateId) -> Result<Arc<[(Event, StateId)]>, KernelError> {
        if let Some(edges) = &self.edges[id] {
            return Ok(edges.clone());
        }
        let raw = transitions(&self.states[id], self.env)?;
        let mut edges = Vec::with_capacity(raw.len());
        for (e, q) in raw {
            edges.push((e, self.intern(q)?));
        }
        let edges: Arc<[(Event, StateId)]> = edges.into();
        self.edges[id] = Some(edges.clone());
        Ok(edges)
    }

    /// All states reachable from `set` by zero or more tau steps.
    pub fn tau_closure(&mut self, set: impl IntoIterator<Item = StateId>) -> Result<BTreeSet<StateId>, KernelError> {
        let mut closed = BTreeSet::new();
        let mut stack: Vec<StateId> = set.into_iter().collect();
        while let Some(s) = stack.pop() {
            if !closed.insert(s) {
                continue;
            }
            for &(e, t) in self.edges(s)?.iter() {
                if e.is_tau() && !closed.contains(&t) {
                    stack.push(t);
                }
            }
        }
        Ok(closed)
    }

    /// Explores everything reachable from `root` and returns the total number
    /// of states interned.
    pub fn explore(&mut self, root: ProcessExpr) -> Result<usize, KernelError> {
        let start = self.intern(root)?;
        let mut seen = vec![false; self.len()];
        let mut stack = vec![start];
        while let Some(s) = stack.pop() {
            if seen.len() <= s {
                seen.resize(self.len(), false);
            }
            if seen[s] {
                continue;
            }
            seen[s] = true;
            for &(_, t) in self.edges(s)?.iter() {
                if seen.len() <= t || !seen[t] {
                    stack.push(t);
                }
            }
        }
        Ok(self.len())
    }
}
