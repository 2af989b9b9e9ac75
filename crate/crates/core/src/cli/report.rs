//! Human and JSON renderings of check results.

use serde::Serialize;

use crate::checker::{PlanVerdict, ReachVerdict};
use crate::model::{TurtleEvent, WorldSpec};
use crate::plan_io::format_plan;

#[derive(Debug, Serialize)]
struct PlanJson {
    status: &'static str,
    failure_index: Option<usize>,
    reason: Option<String>,
    enabled: Option<Vec<TurtleEvent>>,
}

#[derive(Debug, Serialize)]
struct GoalJson {
    status: &'static str,
    witness: Option<Vec<TurtleEvent>>,
}

#[derive(Debug, Serialize)]
struct ReportJson {
    plan: Option<PlanJson>,
    goal: GoalJson,
}

pub fn json(plan: Option<&PlanVerdict>, goal: &ReachVerdict) -> String {
    let plan = plan.map(|v| match v {
        PlanVerdict::Valid => PlanJson {
            status: "valid",
            failure_index: None,
            reason: None,
            enabled: None,
        },
        PlanVerdict::Invalid { index, reason, enabled } => PlanJson {
            status: "invalid",
            failure_index: Some(*index),
            reason: Some(reason.to_string()),
            enabled: Some(enabled.iter().copied().collect()),
        },
    });
    let goal = match goal {
        ReachVerdict::Reachable { witness } => GoalJson {
            status: "reachable",
            witness: Some(witness.clone()),
        },
        ReachVerdict::Unreachable => GoalJson {
            status: "unreachable",
            witness: None,
        },
    };
    let mut text = serde_json::to_string_pretty(&ReportJson { plan, goal }).expect("report serializes");
    text.push('\n');
    text
}

pub fn describe_world(world: &WorldSpec) -> String {
    format!(
        "world {}x{}, {} obstacle(s), goal {}",
        world.width(),
        world.height(),
        world.obstacles().len(),
        world.goal()
    )
}

pub fn plan_line(plan: &[TurtleEvent], verdict: &PlanVerdict) -> String {
    match verdict {
        PlanVerdict::Valid => format!("plan check: PASS ({} event(s) form a trace of the turtle)", plan.len()),
        PlanVerdict::Invalid { index, reason, enabled } => format!(
            "plan check: FAIL at index {index} (`{}`): {reason}; enabled there: {}",
            plan[*index],
            format_plan(&enabled.iter().copied().collect::<Vec<_>>())
        ),
    }
}

pub fn goal_line(world: &WorldSpec, verdict: &ReachVerdict) -> String {
    match verdict {
        ReachVerdict::Reachable { witness } if witness.is_empty() => {
            format!("goal check: PASS, {} is the start cell", world.goal())
        }
        ReachVerdict::Reachable { witness } => format!(
            "goal check: PASS, {} reachable via {}",
            world.goal(),
            format_plan(witness)
        ),
        ReachVerdict::Unreachable => format!("goal check: FAIL, {} is unreachable from (0, 0)", world.goal()),
    }
}
