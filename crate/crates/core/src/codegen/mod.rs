//! Artifacts generated from a verified plan.
//!
//! Everything except the CSPM script requires the plan to pass the plan check
//! first; [`VerifiedPlan`] is the only way to reach those generators.

mod cspm;
mod script;
mod svg;

use serde::{Deserialize, Serialize};

use crate::checker::{CheckError, Checker, PlanVerdict};
use crate::model::{simulate, Pen, SimResult, TurtleEvent, WorldSpec};

pub use cspm::generate_cspm;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CodegenOptions {
    /// Canvas pixels per grid cell.
    pub unit: u32,
    /// Turtle animation speed.
    pub speed: u32,
}

impl Default for CodegenOptions {
    fn default() -> Self {
        CodegenOptions { unit: 50, speed: 1 }
    }
}

impl CodegenOptions {
    pub fn with_unit(unit: u32) -> Result<Self, CodegenError> {
        if unit == 0 {
            return Err(CodegenError::BadUnit);
        }
        Ok(CodegenOptions {
            unit,
            ..Self::default()
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CodegenError {
    #[error("plan is invalid; nothing generated")]
    PlanInvalid(PlanVerdict),
    #[error(transparent)]
    Check(#[from] CheckError),
    #[error("unit must be at least 1 pixel per cell")]
    BadUnit,
}

/// A plan that passed the plan check, with its simulation.
#[derive(Debug, Clone)]
pub struct VerifiedPlan<'w> {
    world: &'w WorldSpec,
    plan: Vec<TurtleEvent>,
    sim: SimResult,
}

impl<'w> VerifiedPlan<'w> {
    pub fn verify(checker: &Checker, world: &'w WorldSpec, plan: &[TurtleEvent]) -> Result<Self, CodegenError> {
        match checker.check_plan(world, plan)? {
            PlanVerdict::Valid => Ok(VerifiedPlan {
                world,
                plan: plan.to_vec(),
                sim: simulate(world, plan),
            }),
            invalid => Err(CodegenError::PlanInvalid(invalid)),
        }
    }

    pub fn world(&self) -> &WorldSpec {
        self.world
    }

    pub fn plan(&self) -> &[TurtleEvent] {
        &self.plan
    }

    pub fn simulation(&self) -> &SimResult {
        &self.sim
    }

    pub fn script(&self, opts: &CodegenOptions) -> String {
        script::render(self, opts)
    }

    pub fn svg(&self, opts: &CodegenOptions) -> String {
        svg::render(self, opts)
    }

    pub fn expectation(&self, opts: &CodegenOptions) -> Expectation {
        let last = self.sim.final_state();
        Expectation {
            unit: opts.unit,
            final_pose: FinalPose {
                x: last.pos.x,
                y: last.pos.y,
                heading: last.dir.degrees(),
                pen: last.pen,
            },
            calls: self
                .plan
                .iter()
                .map(|&e| {
                    let (name, arg) = turtle_call(e, opts.unit);
                    (name.to_string(), arg)
                })
                .collect(),
            segments: self
                .sim
                .segments
                .iter()
                .map(|s| [[s.from.x, s.from.y], [s.to.x, s.to.y]])
                .collect(),
        }
    }
}

/// The Turtle package call for one plan event.
pub fn turtle_call(event: TurtleEvent, unit: u32) -> (&'static str, Option<u32>) {
    match event {
        TurtleEvent::Fd => ("forward", Some(unit)),
        TurtleEvent::Bk => ("backward", Some(unit)),
        TurtleEvent::Lt => ("left", Some(90)),
        TurtleEvent::Rt => ("right", Some(90)),
        TurtleEvent::Pu => ("penup", None),
        TurtleEvent::Pd => ("pendown", None),
        TurtleEvent::Goal => ("stamp", None),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinalPose {
    pub x: i64,
    pub y: i64,
    pub heading: u32,
    pub pen: Pen,
}

/// What a replay of the generated script must observe.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expectation {
    pub unit: u32,
    #[serde(rename = "final")]
    pub final_pose: FinalPose,
    pub calls: Vec<(String, Option<u32>)>,
    pub segments: Vec<[[i64; 2]; 2]>,
}

impl Expectation {
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("expectation serializes");
        text.push('\n');
        text
    }
}

pub fn generate_script(world: &WorldSpec, plan: &[TurtleEvent], opts: &CodegenOptions) -> Result<String, CodegenError> {
    Ok(VerifiedPlan::verify(&Checker::default(), world, plan)?.script(opts))
}

pub fn generate_svg(world: &WorldSpec, plan: &[TurtleEvent], opts: &CodegenOptions) -> Result<String, CodegenError> {
    Ok(VerifiedPlan::verify(&Checker::default(), world, plan)?.svg(opts))
}

pub fn generate_expectation(
    world: &WorldSpec,
    plan: &[TurtleEvent],
    opts: &CodegenOptions,
) -> Result<Expectation, CodegenError> {
    Ok(VerifiedPlan::verify(&Checker::default(), world, plan)?.expectation(opts))
}
