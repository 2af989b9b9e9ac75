//! Oracles and generators shared by the integration tests. Nothing here calls
//! into the automaton or refinement code; trace-set algebra is done directly
//! on sets of sequences.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::Rng;
use turtle_csp::kernel::{Alphabet, Event, EventId, EventSet, ProcessEnv, ProcessExpr, Trace};
use turtle_csp::model::{Position, TurtleEvent, WorldSpec};

pub const A: EventId = EventId(0);
pub const B: EventId = EventId(1);
pub const C: EventId = EventId(2);

/// Alphabet {a, b, c} with two recursive definitions:
/// `Loop = a -> b -> Loop` and `Count(n) = n < 2 & c -> Count(n + 1) [] n >= 2 & SKIP`.
pub fn abc_env() -> ProcessEnv {
    let alphabet = Arc::new(Alphabet::new(["a", "b", "c"]).unwrap());
    let mut env = ProcessEnv::new(alphabet);
    env.define("Loop", 0, |_| {
        ProcessExpr::prefix(A, ProcessExpr::prefix(B, ProcessExpr::reference("Loop", vec![])))
    });
    env.define("Count", 1, |args| {
        if args[0] < 2 {
            ProcessExpr::prefix(C, ProcessExpr::reference("Count", vec![args[0] + 1]))
        } else {
            ProcessExpr::Skip
        }
    });
    env
}

fn random_event(rng: &mut impl Rng) -> EventId {
    [A, B, C][rng.gen_range(0..3)]
}

fn random_set(rng: &mut impl Rng) -> EventSet {
    [A, B, C].into_iter().filter(|_| rng.gen_bool(0.4)).collect()
}

/// A random term of nesting depth at most `depth`. With `refs`, leaves may
/// be references into [`abc_env`].
pub fn random_term(rng: &mut impl Rng, depth: usize, refs: bool) -> ProcessExpr {
    let leaf = |rng: &mut dyn rand::RngCore| match rng.gen_range(0..if refs { 5 } else { 3 }) {
        0 => ProcessExpr::Stop,
        1 => ProcessExpr::Skip,
        2 => ProcessExpr::prefix(random_event_dyn(rng), ProcessExpr::Stop),
        3 => ProcessExpr::reference("Loop", vec![]),
        _ => ProcessExpr::reference("Count", vec![rng.gen_range(0..3)]),
    };
    if depth == 0 || rng.gen_bool(0.2) {
        return leaf(rng);
    }
    match rng.gen_range(0..5) {
        0 | 1 => ProcessExpr::prefix(random_event(rng), random_term(rng, depth - 1, refs)),
        2 => ProcessExpr::choice(random_term(rng, depth - 1, refs), random_term(rng, depth - 1, refs)),
        3 => ProcessExpr::interleave(random_term(rng, depth - 1, refs), random_term(rng, depth - 1, refs)),
        _ => ProcessExpr::hide(random_term(rng, depth - 1, refs), random_set(rng)),
    }
}

fn random_event_dyn(rng: &mut dyn rand::RngCore) -> EventId {
    [A, B, C][rng.gen_range(0..3)]
}

/// Upper bound on the length of any trace of a reference-free term.
pub fn full_depth(p: &ProcessExpr) -> usize {
    p.size() + 1
}

fn split_tick(t: &[Event]) -> (&[Event], bool) {
    match t.split_last() {
        Some((Event::Tick, body)) => (body, true),
        _ => (t, false),
    }
}

fn interleave_into(s: &[Event], t: &[Event], prefix: &mut Vec<Event>, out: &mut BTreeSet<Trace>) {
    if s.is_empty() && t.is_empty() {
        out.insert(prefix.clone());
        return;
    }
    if let Some((&x, rest)) = s.split_first() {
        prefix.push(x);
        interleave_into(rest, t, prefix, out);
        prefix.pop();
    }
    if let Some((&y, rest)) = t.split_first() {
        prefix.push(y);
        interleave_into(s, rest, prefix, out);
        prefix.pop();
    }
}

/// All interleavings of a trace of `p` with a trace of `q`, with Tick only
/// at the end and only when both sides terminate; truncated to `depth`.
pub fn interleave_traces(p: &BTreeSet<Trace>, q: &BTreeSet<Trace>, depth: usize) -> BTreeSet<Trace> {
    let mut out = BTreeSet::new();
    for s in p {
        for t in q {
            let (s_body, s_tick) = split_tick(s);
            let (t_body, t_tick) = split_tick(t);
            let mut merged = BTreeSet::new();
            interleave_into(s_body, t_body, &mut Vec::new(), &mut merged);
            for mut u in merged {
                if s_tick && t_tick {
                    u.push(Event::Tick);
                }
                if u.len() <= depth {
                    out.insert(u);
                }
            }
        }
    }
    out
}

/// `{ t with hidden events deleted }`, truncated to `depth`.
pub fn hide_traces(p: &BTreeSet<Trace>, hidden: &EventSet, depth: usize) -> BTreeSet<Trace> {
    p.iter()
        .map(|t| {
            t.iter()
                .copied()
                .filter(|e| !matches!(e, Event::Visible(id) if hidden.contains(*id)))
                .collect::<Trace>()
        })
        .filter(|t| t.len() <= depth)
        .collect()
}

pub fn truncate(p: &BTreeSet<Trace>, depth: usize) -> BTreeSet<Trace> {
    p.iter().filter(|t| t.len() <= depth).cloned().collect()
}

/// Every valid world of exactly `width` x `height`: all obstacle subsets
/// avoiding the origin, and every goal cell not on an obstacle.
pub fn worlds_of(width: u32, height: u32) -> Vec<WorldSpec> {
    let cells: Vec<Position> = (0..height as i64)
        .flat_map(|y| (0..width as i64).map(move |x| Position::new(x, y)))
        .collect();
    let candidates: Vec<Position> = cells.iter().copied().filter(|&p| p != Position::ORIGIN).collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << candidates.len()) {
        let obstacles: Vec<Position> = candidates
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &p)| p)
            .collect();
        for &goal in &cells {
            if obstacles.contains(&goal) {
                continue;
            }
            out.push(WorldSpec::new(width, height, obstacles.iter().copied(), goal).unwrap());
        }
    }
    out
}

/// Every world with both sides at most `max`.
pub fn worlds_upto(max: u32) -> Vec<WorldSpec> {
    let mut out = Vec::new();
    for w in 1..=max {
        for h in 1..=max {
            out.extend(worlds_of(w, h));
        }
    }
    out
}

/// Every plan over the full alphabet with at most `max_len` events.
pub fn plans_upto(max_len: usize) -> Vec<Vec<TurtleEvent>> {
    let mut out = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for p in &layer {
            for e in TurtleEvent::ALL {
                let mut q: Vec<TurtleEvent> = p.clone();
                q.push(e);
                next.push(q);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}
