//! Interactive session: build a world, set a plan, check, map, generate.

use std::collections::BTreeSet;
use std::fs;
use std::io::{self, BufRead, Write};

use super::{map, report};
use crate::checker::{Checker, PlanVerdict, ReachVerdict};
use crate::codegen::{generate_cspm, CodegenError, CodegenOptions, VerifiedPlan};
use crate::model::{check_dimensions, simulate, Position, TurtleState, WorldSpec};
use crate::plan_io::{format_plan, parse_plan, Plan};

const HELP: &str = "\
commands:
  world W H       start a W x H world (clears obstacles and goal)
  obstacle X Y    block cell (X, Y)
  clear           remove all obstacles
  goal X Y        mark (X, Y) as the goal
  plan TOKENS     set the plan, e.g. `plan fd lt fd`
  check           check the plan and the goal
  map             print the world
  gen BASENAME    write BASENAME.py/.svg/.json/.cspm for a valid plan
  quit            leave";

/// Everything the user has configured so far.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SessionState {
    pub dims: Option<(u32, u32)>,
    pub obstacles: BTreeSet<Position>,
    pub goal: Option<Position>,
    pub plan: Option<Plan>,
    /// Result of the last `check`; cleared whenever world or plan change.
    pub last_report: Option<(Option<PlanVerdict>, ReachVerdict)>,
}

impl SessionState {
    /// The configured world, once dimensions and goal are both set.
    pub fn world(&self) -> Result<WorldSpec, String> {
        let (width, height) = self.dims.ok_or("no world configured")?;
        let goal = self.goal.ok_or("no goal configured")?;
        WorldSpec::new(width, height, self.obstacles.iter().copied(), goal).map_err(|e| e.to_string())
    }

    fn in_bounds(&self, x: u64, y: u64) -> Result<Position, String> {
        let (width, height) = self.dims.ok_or("no world configured")?;
        if x >= width as u64 || y >= height as u64 {
            return Err(format!(
                "OutOfBoundsCoordinate: ({x}, {y}) lies outside the {width}x{height} world"
            ));
        }
        Ok(Position::new(x as i64, y as i64))
    }
}

pub struct Repl {
    state: SessionState,
    checker: Checker,
    opts: CodegenOptions,
    prompt: bool,
}

enum Flow {
    Continue,
    Quit,
}

fn pair(args: &[&str]) -> Result<(u64, u64), String> {
    let [a, b] = args else {
        return Err("expected two non-negative integers".into());
    };
    let parse = |s: &str| {
        s.parse::<u64>()
            .map_err(|_| format!("expected a non-negative integer, found `{s}`"))
    };
    Ok((parse(a)?, parse(b)?))
}

impl Repl {
    pub fn new(checker: Checker) -> Self {
        Repl {
            state: SessionState::default(),
            checker,
            opts: CodegenOptions::default(),
            prompt: false,
        }
    }

    pub fn set_prompt(&mut self, prompt: bool) {
        self.prompt = prompt;
    }

    pub fn set_codegen_options(&mut self, opts: CodegenOptions) {
        self.opts = opts;
    }

    pub fn state(&self) -> &SessionState {
        &self.state
    }

    pub fn run(&mut self, input: impl BufRead, output: &mut dyn Write) -> io::Result<()> {
        if self.prompt {
            write!(output, "turtle> ")?;
            output.flush()?;
        }
        for line in input.lines() {
            let line = line?;
            let flow = self.execute(&line, output)?;
            if matches!(flow, Flow::Quit) {
                break;
            }
            if self.prompt {
                write!(output, "turtle> ")?;
                output.flush()?;
            }
        }
        Ok(())
    }

    /// Runs one command line, printing results or a single `error:` line.
    pub fn execute_line(&mut self, line: &str, output: &mut dyn Write) -> io::Result<bool> {
        Ok(matches!(self.execute(line, output)?, Flow::Continue))
    }

    fn execute(&mut self, line: &str, output: &mut dyn Write) -> io::Result<Flow> {
        let words: Vec<&str> = line.split_whitespace().collect();
        let Some((&command, args)) = words.split_first() else {
            return Ok(Flow::Continue);
        };
        if command.starts_with('#') {
            return Ok(Flow::Continue);
        }
        // commands work on a copy; it is committed only on success
        let mut next = self.state.clone();
        let result = match command {
            "quit" | "exit" => return Ok(Flow::Quit),
            "help" => Ok(HELP.to_string()),
            "world" => Self::cmd_world(&mut next, args),
            "obstacle" => Self::cmd_obstacle(&mut next, args),
            "clear" => Self::cmd_clear(&mut next, args),
            "goal" => Self::cmd_goal(&mut next, args),
            "plan" => Self::cmd_plan(&mut next, line),
            "check" => self.cmd_check(&mut next),
            "map" => Self::cmd_map(&next),
            "gen" => self.cmd_gen(&next, args),
            other => Err(format!("unknown command `{other}` (try `help`)")),
        };
        match result {
            Ok(text) => {
                self.state = next;
                if !text.is_empty() {
                    writeln!(output, "{}", text.trim_end())?;
                }
            }
            Err(message) => writeln!(output, "error: {message}")?,
        }
        Ok(Flow::Continue)
    }

    fn cmd_world(state: &mut SessionState, args: &[&str]) -> Result<String, String> {
        let (w, h) = pair(args)?;
        let (w, h) = (
            u32::try_from(w).map_err(|_| "world too large".to_string())?,
            u32::try_from(h).map_err(|_| "world too large".to_string())?,
        );
        check_dimensions(w, h).map_err(|e| e.to_string())?;
        state.dims = Some((w, h));
        state.obstacles.clear();
        state.goal = None;
        state.last_report = None;
        Ok(format!("world is {w}x{h}; turtle starts at (0, 0) facing East"))
    }

    fn cmd_obstacle(state: &mut SessionState, args: &[&str]) -> Result<String, String> {
        let (x, y) = pair(args)?;
        let pos = state.in_bounds(x, y)?;
        if pos == Position::ORIGIN {
            return Err("ObstacleAtStart: the start cell (0, 0) cannot be an obstacle".into());
        }
        if Some(pos) == state.goal {
            return Err(format!("GoalOnObstacle: {pos} is the goal"));
        }
        state.obstacles.insert(pos);
        state.last_report = None;
        Ok(format!("obstacle at {pos}"))
    }

    fn cmd_clear(state: &mut SessionState, args: &[&str]) -> Result<String, String> {
        if !args.is_empty() {
            return Err("`clear` takes no arguments".into());
        }
        state.dims.ok_or("no world configured")?;
        state.obstacles.clear();
        state.last_report = None;
        Ok("obstacles cleared".into())
    }

    fn cmd_goal(state: &mut SessionState, args: &[&str]) -> Result<String, String> {
        let (x, y) = pair(args)?;
        let pos = state.in_bounds(x, y)?;
        if state.obstacles.contains(&pos) {
            return Err(format!("GoalOnObstacle: {pos} is an obstacle"));
        }
        state.goal = Some(pos);
        state.last_report = None;
        Ok(format!("goal at {pos}"))
    }

    fn cmd_plan(state: &mut SessionState, line: &str) -> Result<String, String> {
        let tokens = line.trim_start().strip_prefix("plan").unwrap_or_default();
        let plan = parse_plan(tokens).map_err(|e| format!("UnknownToken: {}", e.message))?;
        let text = if plan.is_empty() {
            "plan is empty".to_string()
        } else {
            format!("plan: {}", format_plan(&plan))
        };
        state.plan = Some(plan);
        state.last_report = None;
        Ok(text)
    }

    fn cmd_check(&self, state: &mut SessionState) -> Result<String, String> {
        let world = state.world()?;
        let plan_verdict = match &state.plan {
            Some(plan) => Some(self.checker.check_plan(&world, plan).map_err(|e| e.to_string())?),
            None => None,
        };
        let goal_verdict = self.checker.check_goal(&world).map_err(|e| e.to_string())?;
        let mut lines = Vec::new();
        match (&state.plan, &plan_verdict) {
            (Some(plan), Some(v)) => lines.push(report::plan_line(plan, v)),
            _ => lines.push("plan check: skipped (no plan set)".to_string()),
        }
        lines.push(report::goal_line(&world, &goal_verdict));
        state.last_report = Some((plan_verdict, goal_verdict));
        Ok(lines.join("\n"))
    }

    fn cmd_map(state: &SessionState) -> Result<String, String> {
        let (width, height) = state.dims.ok_or("no world configured")?;
        let turtle = match (state.world(), &state.plan) {
            (Ok(world), Some(plan)) => {
                let sim = simulate(&world, plan);
                if sim.verdict.is_valid() {
                    sim.final_state()
                } else {
                    TurtleState::START
                }
            }
            _ => TurtleState::START,
        };
        Ok(map::render(width, height, &state.obstacles, state.goal, turtle))
    }

    fn cmd_gen(&self, state: &SessionState, args: &[&str]) -> Result<String, String> {
        let [base] = args else {
            return Err("usage: gen BASENAME".into());
        };
        let world = state.world()?;
        let plan = state.plan.as_ref().ok_or("no plan set")?;
        let verified = match VerifiedPlan::verify(&self.checker, &world, plan) {
            Ok(v) => v,
            Err(CodegenError::PlanInvalid(verdict)) => {
                return Err(format!("{}; nothing generated", report::plan_line(plan, &verdict)));
            }
            Err(e) => return Err(e.to_string()),
        };
        let files = [
            (format!("{base}.py"), verified.script(&self.opts)),
            (format!("{base}.svg"), verified.svg(&self.opts)),
            (format!("{base}.json"), verified.expectation(&self.opts).to_json()),
            (format!("{base}.cspm"), generate_cspm(&world, plan)),
        ];
        let mut lines = Vec::new();
        for (path, text) in files {
            fs::write(&path, text).map_err(|e| format!("cannot write {path}: {e}"))?;
            lines.push(format!("wrote {path}"));
        }
        lines.push(format!("run it with: python3 {base}.py"));
        Ok(lines.join("\n"))
    }
}

/// Runs a whole session with default settings.
pub fn run_repl(input: impl BufRead, output: &mut dyn Write) -> io::Result<()> {
    Repl::new(Checker::new()).run(input, output)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn transcript(repl: &mut Repl, script: &str) -> String {
        let mut out = Vec::new();
        repl.run(script.as_bytes(), &mut out).unwrap();
        String::from_utf8(out).unwrap()
    }

    fn fresh() -> Repl {
        Repl::new(Checker::new())
    }

    #[test]
    fn first_scenario_map() {
        let mut repl = fresh();
        let out = transcript(&mut repl, "world 3 3\nobstacle 1 1\nobstacle 1 2\ngoal 2 2\nmap\n");
        assert!(out.ends_with(". # G\n. # .\n> . .\n"), "{out}");
    }

    #[test]
    fn check_needs_a_world() {
        let mut repl = fresh();
        assert_eq!(transcript(&mut repl, "check\n"), "error: no world configured\n");
        assert_eq!(repl.state(), &SessionState::default());
    }

    #[test]
    fn obstacle_on_start_is_rejected_without_change() {
        let mut repl = fresh();
        transcript(&mut repl, "world 3 3\nobstacle 2 2\n");
        let before = repl.state().clone();
        let out = transcript(&mut repl, "obstacle 0 0\n");
        assert!(out.starts_with("error: ObstacleAtStart"), "{out}");
        assert_eq!(repl.state(), &before);
    }

    #[test]
    fn both_scenarios_checked() {
        let mut repl = fresh();
        let out = transcript(
            &mut repl,
            "world 3 3\nobstacle 1 1\nobstacle 1 2\ngoal 2 2\nplan rt fd\ncheck\n",
        );
        assert!(out.contains("plan check: FAIL at index 1 (`fd`): OutOfBounds"), "{out}");
        assert!(
            out.contains("goal check: PASS, (2, 2) reachable via fd fd lt fd fd"),
            "{out}"
        );
        assert!(repl.state().last_report.is_some());

        let out = transcript(&mut repl, "obstacle 2 1\nplan pu fd pd fd\ncheck\n");
        assert!(repl.state().last_report.is_some());
        assert!(out.contains("plan check: PASS"), "{out}");
        assert!(out.contains("goal check: FAIL, (2, 2) is unreachable"), "{out}");
    }

    #[test]
    fn changes_invalidate_the_last_report() {
        let mut repl = fresh();
        transcript(&mut repl, "world 2 2\ngoal 1 1\ncheck\n");
        assert!(repl.state().last_report.is_some());
        transcript(&mut repl, "plan fd\n");
        assert!(repl.state().last_report.is_none());
        transcript(&mut repl, "check\nobstacle 1 0\n");
        assert!(repl.state().last_report.is_none());
        transcript(&mut repl, "check\nclear\n");
        assert!(repl.state().last_report.is_none());
    }

    #[test]
    fn malformed_commands_leave_state_alone() {
        let mut repl = fresh();
        transcript(&mut repl, "world 3 3\ngoal 2 2\nplan fd\n");
        let before = repl.state().clone();
        for bad in [
            "world 0 3",
            "world x 3",
            "obstacle 5 5",
            "obstacle 1",
            "goal 9 9",
            "plan fd fwd",
            "frobnicate",
            "clear now",
            "gen",
        ] {
            let out = transcript(&mut repl, &format!("{bad}\n"));
            assert!(out.starts_with("error: "), "{bad}: {out}");
            assert_eq!(repl.state(), &before, "{bad}");
        }
    }

    #[test]
    fn map_shows_final_pose_of_valid_plan() {
        let mut repl = fresh();
        let out = transcript(&mut repl, "world 3 2\ngoal 2 1\nplan fd lt fd\nmap\n");
        assert!(out.ends_with(". ^ G\n. . .\n"), "{out}");
    }

    #[test]
    fn gen_writes_four_files() {
        let dir = tempfile::tempdir().unwrap();
        let base = dir.path().join("demo");
        let mut repl = fresh();
        let out = transcript(
            &mut repl,
            &format!("world 3 3\ngoal 2 2\nplan fd fd\ngen {}\n", base.display()),
        );
        assert!(out.contains("run it with: python3"), "{out}");
        for ext in ["py", "svg", "json", "cspm"] {
            assert!(base.with_extension(ext).exists(), "{ext}");
        }
    }

    #[test]
    fn gen_refuses_invalid_plan() {
        let dir = tempfile::tempdir().unwrap();
        let base = dir.path().join("bad");
        let mut repl = fresh();
        let out = transcript(
            &mut repl,
            &format!("world 3 3\ngoal 2 2\nplan rt fd\ngen {}\n", base.display()),
        );
        assert!(out.contains("error: plan check: FAIL"), "{out}");
        assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 0);
    }

    #[test]
    fn quit_stops_reading() {
        let mut repl = fresh();
        let out = transcript(&mut repl, "quit\nworld 3 3\n");
        assert!(out.is_empty());
        assert_eq!(repl.state().dims, None);
    }
}
