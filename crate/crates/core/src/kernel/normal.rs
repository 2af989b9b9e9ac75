//! Tau-closure plus subset construction.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;
use std::sync::Arc;

use super::event::{Alphabet, Event, EventId};
use super::process::{ProcessEnv, ProcessExpr};
use super::semantics::{Lts, StateId};
use super::traces::Trace;
use super::KernelError;

/// Deterministic, tau-free automaton with the same finite traces as the
/// process it was built from.
///
/// Macro-state 0 is initial; numbering follows breadth-first discovery.
#[derive(Debug, Clone)]
pub struct DetAutomaton {
    alphabet: Arc<Alphabet>,
    /// Members of each macro-state, as terms.
    states: Vec<BTreeSet<ProcessExpr>>,
    transitions: Vec<BTreeMap<EventId, usize>>,
    ticks: Vec<bool>,
}

impl DetAutomaton {
    pub const INITIAL: usize = 0;

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn members(&self, state: usize) -> &BTreeSet<ProcessExpr> {
        &self.states[state]
    }

    pub fn successor(&self, state: usize, event: EventId) -> Option<usize> {
        self.transitions[state].get(&event).copied()
    }

    pub fn transitions_from(&self, state: usize) -> impl Iterator<Item = (EventId, usize)> + '_ {
        self.transitions[state].iter().map(|(&e, &s)| (e, s))
    }

    pub fn accepts_tick(&self, state: usize) -> bool {
        self.ticks[state]
    }

    pub fn transition_count(&self) -> usize {
        self.transitions.iter().map(BTreeMap::len).sum()
    }

    /// Runs `trace` from the initial state. Tick must be the last event.
    pub fn accepts(&self, trace: &[Event]) -> bool {
        let mut state = Self::INITIAL;
        for (i, &event) in trace.iter().enumerate() {
            match event {
                Event::Visible(id) => match self.successor(state, id) {
                    Some(next) => state = next,
                    None => return false,
                },
                Event::Tick => return i + 1 == trace.len() && self.ticks[state],
                Event::Tau => return false,
            }
        }
        true
    }

    /// All accepted traces of length at most `depth`, including those ending
    /// in Tick.
    pub fn traces_upto(&self, depth: usize) -> BTreeSet<Trace> {
        let mut out = BTreeSet::new();
        let mut frontier = vec![(Vec::new(), Self::INITIAL)];
        for level in 0..=depth {
            let mut next = Vec::new();
            for (trace, state) in frontier {
                if level < depth {
                    if self.ticks[state] {
                        let mut ticked = trace.clone();
                        ticked.push(Event::Tick);
                        out.insert(ticked);
                    }
                    for (e, s) in self.transitions_from(state) {
                        let mut extended = trace.clone();
                        extended.push(Event::Visible(e));
                        next.push((extended, s));
                    }
                }
                out.insert(trace);
            }
            frontier = next;
        }
        out
    }

    /// Plain-text transition list, one `state -event-> state` per line.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (state, edges) in self.transitions.iter().enumerate() {
            for (&e, &t) in edges {
                let _ = writeln!(out, "{state} -{}-> {t}", self.alphabet.name(e));
            }
            if self.ticks[state] {
                let _ = writeln!(out, "{state} -✓-> ⊤");
            }
        }
        out
    }
}

/// Builds the normal form of `p`.
///
/// Fails with [`KernelError::StateBoundExceeded`] when either the number of
/// configurations or the number of macro-states passes `bound`.
pub fn normalize(p: &ProcessExpr, env: &ProcessEnv, bound: usize) -> Result<DetAutomaton, KernelError> {
    let mut lts = Lts::new(env, bound);
    let root = lts.intern(p.clone())?;
    let initial = lts.tau_closure([root])?;

    let mut index: HashMap<BTreeSet<StateId>, usize> = HashMap::new();
    let mut macros: Vec<BTreeSet<StateId>> = Vec::new();
    let mut transitions = Vec::new();
    let mut ticks = Vec::new();
    let mut queue = VecDeque::new();

    index.insert(initial.clone(), 0);
    macros.push(initial);
    queue.push_back(0);

    while let Some(m) = queue.pop_front() {
        let mut by_event: BTreeMap<EventId, BTreeSet<StateId>> = BTreeMap::new();
        let mut tick = false;
        for &c in &macros[m].clone() {
            for &(e, t) in lts.edges(c)?.iter() {
                match e {
                    Event::Visible(id) => {
                        by_event.entry(id).or_default().insert(t);
                    }
                    Event::Tick => tick = true,
                    Event::Tau => {}
                }
            }
        }
        let mut edges = BTreeMap::new();
        for (e, targets) in by_event {
            let closed = lts.tau_closure(targets)?;
            let target = match index.get(&closed) {
                Some(&t) => t,
                None => {
                    if macros.len() >= bound {
                        return Err(KernelError::StateBoundExceeded { bound });
                    }
                    let t = macros.len();
                    index.insert(closed.clone(), t);
                    macros.push(closed);
                    queue.push_back(t);
                    t
                }
            };
            edges.insert(e, target);
        }
        transitions.push(edges);
        ticks.push(tick);
    }

    let states = macros
        .into_iter()
        .map(|m| m.into_iter().map(|c| lts.state(c).clone()).collect())
        .collect();
    Ok(DetAutomaton {
        alphabet: env.alphabet().clone(),
        states,
        transitions,
        ticks,
    })
}
