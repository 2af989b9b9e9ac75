//! The two checks run against a world: does the plan fit the turtle process
//! (trace membership), and can the goal be reached at all (trace refinement
//! with every event but `goal` hidden).

use crate::kernel::{
    has_trace_within, refines_traces, shortest_trace_enabling, KernelError, ProcessExpr, DEFAULT_STATE_CAP,
};
use crate::model::{build_turtle_process, disabled_reason, nav_events, simulate, to_trace, TurtleEvent, WorldSpec};

pub use crate::model::{DisabledReason, PlanVerdict};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReachVerdict {
    /// `witness` is a shortest event sequence taking the turtle to the goal.
    Reachable {
        witness: Vec<TurtleEvent>,
    },
    Unreachable,
}

impl ReachVerdict {
    pub fn is_reachable(&self) -> bool {
        matches!(self, ReachVerdict::Reachable { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub plan: PlanVerdict,
    pub goal: ReachVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CheckError {
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error("process and direct semantics disagree at plan index {index}")]
    SemanticsMismatch { index: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Checker {
    state_cap: usize,
}

impl Default for Checker {
    fn default() -> Self {
        Checker {
            state_cap: DEFAULT_STATE_CAP,
        }
    }
}

impl Checker {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_state_cap(mut self, cap: usize) -> Self {
        self.state_cap = cap;
        self
    }

    pub fn state_cap(&self) -> usize {
        self.state_cap
    }

    /// Plan validity by trace membership in the turtle process.
    ///
    /// The failing position and enabled set come from the process; the reason
    /// is recomputed from the direct semantics.
    pub fn check_plan(&self, world: &WorldSpec, plan: &[TurtleEvent]) -> Result<PlanVerdict, CheckError> {
        let (process, env) = build_turtle_process(world);
        let verdict = has_trace_within(&process, &env, &to_trace(plan), self.state_cap)?;
        if verdict.holds {
            return Ok(PlanVerdict::Valid);
        }
        let index = verdict.failure_index.expect("failing verdict has an index");
        let enabled = verdict
            .enabled_at_failure
            .unwrap_or_default()
            .iter()
            .filter_map(TurtleEvent::from_id)
            .collect();
        let before = simulate(world, &plan[..index]);
        if !before.verdict.is_valid() {
            return Err(CheckError::SemanticsMismatch { index });
        }
        let reason = disabled_reason(world, &before.final_state(), plan[index])
            .ok_or(CheckError::SemanticsMismatch { index })?;
        Ok(PlanVerdict::Invalid { index, reason, enabled })
    }

    /// Goal reachability: `goal -> STOP` must trace-refine the turtle process
    /// with all other events hidden.
    pub fn check_goal(&self, world: &WorldSpec) -> Result<ReachVerdict, CheckError> {
        let (process, env) = build_turtle_process(world);
        let spec = ProcessExpr::hide(process.clone(), nav_events());
        let goal_only = ProcessExpr::prefix(TurtleEvent::Goal.id(), ProcessExpr::Stop);
        let verdict = refines_traces(&spec, &goal_only, &env, self.state_cap)?;
        if !verdict.holds {
            return Ok(ReachVerdict::Unreachable);
        }
        let path = shortest_trace_enabling(&process, &env, TurtleEvent::Goal.event(), self.state_cap)?
            .ok_or(CheckError::SemanticsMismatch { index: 0 })?;
        let witness = path.into_iter().filter_map(TurtleEvent::from_event).collect();
        Ok(ReachVerdict::Reachable { witness })
    }

    /// Both checks, each computed on its own.
    pub fn check_all(&self, world: &WorldSpec, plan: &[TurtleEvent]) -> Result<CheckReport, CheckError> {
        Ok(CheckReport {
            plan: self.check_plan(world, plan)?,
            goal: self.check_goal(world)?,
        })
    }
}
