use std::collections::{BTreeMap, BTreeSet};

use super::event::{Event, EventSet};
use super::process::{ProcessEnv, ProcessExpr};
use super::semantics::{Lts, StateId};
use super::{KernelError, DEFAULT_STATE_CAP};

pub type Trace = Vec<Event>;

/// Every trace of `p` with at most `depth` events, tau erased.
///
/// Exhaustive and unoptimized on purpose: tests use it as the reference
/// against which the automaton-based checks are compared.
pub fn traces_upto(p: &ProcessExpr, env: &ProcessEnv, depth: usize) -> Result<BTreeSet<Trace>, KernelError> {
    traces_upto_within(p, env, depth, DEFAULT_STATE_CAP)
}

pub fn traces_upto_within(
    p: &ProcessExpr,
    env: &ProcessEnv,
    depth: usize,
    bound: usize,
) -> Result<BTreeSet<Trace>, KernelError> {
    let mut lts = Lts::new(env, bound);
    let root = lts.intern(p.clone())?;
    let mut all = BTreeSet::new();
    let mut frontier: BTreeMap<Trace, BTreeSet<StateId>> = BTreeMap::new();
    frontier.insert(Vec::new(), lts.tau_closure([root])?);
    for level in 0..=depth {
        let mut next: BTreeMap<Trace, BTreeSet<StateId>> = BTreeMap::new();
        for (trace, configs) in &frontier {
            all.insert(trace.clone());
            if level == depth {
                continue;
            }
            for &c in configs {
                for &(e, t) in lts.edges(c)?.iter() {
                    if e.is_tau() {
                        continue;
                    }
                    let mut extended = trace.clone();
                    extended.push(e);
                    next.entry(extended).or_default().insert(t);
                }
            }
        }
        frontier = BTreeMap::new();
        for (trace, configs) in next {
            let closed = lts.tau_closure(configs)?;
            frontier.insert(trace, closed);
        }
    }
    Ok(all)
}

/// Outcome of a trace-membership query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceVerdict {
    pub holds: bool,
    /// Position of the first event no reachable configuration can perform.
    pub failure_index: Option<usize>,
    /// Visible events available just before the failing position.
    pub enabled_at_failure: Option<EventSet>,
}

impl TraceVerdict {
    fn pass() -> Self {
        TraceVerdict {
            holds: true,
            failure_index: None,
            enabled_at_failure: None,
        }
    }
}

/// Decides whether `trace` is a trace of `p`.
pub fn has_trace(p: &ProcessExpr, env: &ProcessEnv, trace: &[Event]) -> Result<TraceVerdict, KernelError> {
    has_trace_within(p, env, trace, DEFAULT_STATE_CAP)
}

pub fn has_trace_within(
    p: &ProcessExpr,
    env: &ProcessEnv,
    trace: &[Event],
    bound: usize,
) -> Result<TraceVerdict, KernelError> {
    if let Some(index) = trace.iter().position(|e| e.is_tau()) {
        return Err(KernelError::TauInTrace { index });
    }
    let mut lts = Lts::new(env, bound);
    let root = lts.intern(p.clone())?;
    let mut current = lts.tau_closure([root])?;
    for (index, &event) in trace.iter().enumerate() {
        let mut next = BTreeSet::new();
        let mut enabled = EventSet::new();
        for &c in &current {
            for &(e, t) in lts.edges(c)?.iter() {
                if e == event {
                    next.insert(t);
                }
                if let Some(id) = e.visible() {
                    enabled.insert(id);
                }
            }
        }
        if next.is_empty() {
            return Ok(TraceVerdict {
                holds: false,
                failure_index: Some(index),
                enabled_at_failure: Some(enabled),
            });
        }
        current = lts.tau_closure(next)?;
    }
    Ok(TraceVerdict::pass())
}
