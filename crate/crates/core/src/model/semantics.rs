use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use super::{Pen, Position, TurtleEvent, TurtleState, WorldSpec};

/// Why an event cannot happen in a given state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum DisabledReason {
    OutOfBounds,
    Obstacle,
    PenRedundant,
    GoalNotHere,
}

impl std::fmt::Display for DisabledReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            DisabledReason::OutOfBounds => "OutOfBounds",
            DisabledReason::Obstacle => "Obstacle",
            DisabledReason::PenRedundant => "PenRedundant",
            DisabledReason::GoalNotHere => "GoalNotHere",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("`{event}` is not enabled: {reason}")]
pub struct EventNotEnabled {
    pub event: TurtleEvent,
    pub reason: DisabledReason,
}

fn move_target(s: &TurtleState, event: TurtleEvent) -> Option<Position> {
    let (dx, dy) = s.dir.delta();
    match event {
        TurtleEvent::Fd => Some(s.pos.offset((dx, dy))),
        TurtleEvent::Bk => Some(s.pos.offset((-dx, -dy))),
        _ => None,
    }
}

/// `None` if `event` is enabled at `s`, otherwise the reason it is not.
pub fn disabled_reason(w: &WorldSpec, s: &TurtleState, event: TurtleEvent) -> Option<DisabledReason> {
    match event {
        TurtleEvent::Fd | TurtleEvent::Bk => {
            let target = move_target(s, event)?;
            if !w.in_bounds(target) {
                Some(DisabledReason::OutOfBounds)
            } else if w.is_obstacle(target) {
                Some(DisabledReason::Obstacle)
            } else {
                None
            }
        }
        TurtleEvent::Lt | TurtleEvent::Rt => None,
        TurtleEvent::Pu => (s.pen == Pen::Up).then_some(DisabledReason::PenRedundant),
        TurtleEvent::Pd => (s.pen == Pen::Down).then_some(DisabledReason::PenRedundant),
        TurtleEvent::Goal => (s.pos != w.goal()).then_some(DisabledReason::GoalNotHere),
    }
}

pub fn enabled_events(w: &WorldSpec, s: &TurtleState) -> BTreeSet<TurtleEvent> {
    TurtleEvent::ALL
        .into_iter()
        .filter(|&e| disabled_reason(w, s, e).is_none())
        .collect()
}

pub fn apply_event(w: &WorldSpec, s: &TurtleState, event: TurtleEvent) -> Result<TurtleState, EventNotEnabled> {
    if let Some(reason) = disabled_reason(w, s, event) {
        return Err(EventNotEnabled { event, reason });
    }
    let mut next = *s;
    match event {
        TurtleEvent::Fd | TurtleEvent::Bk => {
            next.pos = move_target(s, event).expect("movement event");
        }
        TurtleEvent::Lt => next.dir = s.dir.left(),
        TurtleEvent::Rt => next.dir = s.dir.right(),
        TurtleEvent::Pu => next.pen = Pen::Up,
        TurtleEvent::Pd => next.pen = Pen::Down,
        TurtleEvent::Goal => {}
    }
    Ok(next)
}

/// Plan validity with diagnostics for the first failing event.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PlanVerdict {
    Valid,
    Invalid {
        index: usize,
        reason: DisabledReason,
        enabled: BTreeSet<TurtleEvent>,
    },
}

impl PlanVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, PlanVerdict::Valid)
    }
}

/// A unit line drawn with the pen down.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Segment {
    pub from: Position,
    pub to: Position,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimResult {
    /// Start state followed by the state after each accepted event.
    pub states: Vec<TurtleState>,
    pub segments: Vec<Segment>,
    pub verdict: PlanVerdict,
}

impl SimResult {
    pub fn final_state(&self) -> TurtleState {
        *self.states.last().expect("start state always present")
    }
}

/// Replays `plan` from the start state, stopping at the first disabled event.
pub fn simulate(w: &WorldSpec, plan: &[TurtleEvent]) -> SimResult {
    let mut state = TurtleState::START;
    let mut states = vec![state];
    let mut segments = Vec::new();
    for (index, &event) in plan.iter().enumerate() {
        match apply_event(w, &state, event) {
            Ok(next) => {
                if state.pen == Pen::Down && next.pos != state.pos {
                    segments.push(Segment {
                        from: state.pos,
                        to: next.pos,
                    });
                }
                state = next;
                states.push(state);
            }
            Err(EventNotEnabled { reason, .. }) => {
                return SimResult {
                    states,
                    segments,
                    verdict: PlanVerdict::Invalid {
                        index,
                        reason,
                        enabled: enabled_events(w, &state),
                    },
                };
            }
        }
    }
    SimResult {
        states,
        segments,
        verdict: PlanVerdict::Valid,
    }
}

/// Cells reachable from the origin by unit moves through free cells.
pub fn reachable_cells(w: &WorldSpec) -> BTreeSet<Position> {
    let mut seen = BTreeSet::from([Position::ORIGIN]);
    let mut queue = VecDeque::from([Position::ORIGIN]);
    while let Some(p) = queue.pop_front() {
        for n in p.neighbours() {
            if w.is_free(n) && seen.insert(n) {
                queue.push_back(n);
            }
        }
    }
    seen
}
