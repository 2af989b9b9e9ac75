//! CSPM rendering of the turtle model, for loading into an external
//! refinement checker.

use std::fmt::Write as _;

use crate::model::{
    nav_process_name, Direction, TurtleEvent, WorldSpec, MAIN_PROCESS, PEN_DOWN_PROCESS, PEN_UP_PROCESS,
};
use crate::plan_io::format_plan;

fn nav_definition(out: &mut String, dir: Direction) {
    let name = nav_process_name(dir);
    let (dx, dy) = dir.delta();
    let shifted = |sx: i64, sy: i64| {
        let coord = |v: &str, d: i64| match d {
            0 => v.to_string(),
            d if d > 0 => format!("{v} + {d}"),
            d => format!("{v} - {}", -d),
        };
        format!("{}, {}", coord("x", sx), coord("y", sy))
    };
    let ahead = shifted(dx, dy);
    let behind = shifted(-dx, -dy);
    let left = nav_process_name(dir.left());
    let right = nav_process_name(dir.right());
    let _ = writeln!(out, "{name}(x, y)(env) =");
    let _ = writeln!(out, "  if not passable((x, y), env) then SKIP");
    let _ = writeln!(out, "  else (passable(({ahead}), env) & fd -> {name}({ahead})(env))");
    let _ = writeln!(out, "    [] (passable(({behind}), env) & bk -> {name}({behind})(env))");
    let _ = writeln!(out, "    [] lt -> {left}(x, y)(env)");
    let _ = writeln!(out, "    [] rt -> {right}(x, y)(env)");
    let _ = writeln!(out, "    [] (at_goal((x, y), env) & goal -> {name}(x, y)(env))");
    out.push('\n');
}

/// The model instantiated for `world`, with the plan-membership and
/// goal-reachability assertions.
pub fn generate_cspm(world: &WorldSpec, plan: &[TurtleEvent]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "-- Turtle grid-world model: {}x{} world, goal {}",
        world.width(),
        world.height(),
        world.goal()
    );
    let _ = writeln!(out, "-- Plan: {}\n", format_plan(plan));

    let channels: Vec<_> = TurtleEvent::ALL.iter().map(|e| e.token()).collect();
    let nav: Vec<_> = TurtleEvent::NAV.iter().map(|e| e.token()).collect();
    let _ = writeln!(out, "channel {}\n", channels.join(", "));
    let _ = writeln!(out, "nav_events = {{{}}}\n", nav.join(", "));

    out.push_str("-- world parameters: (width, height, obstacles, goal cell)\n");
    let _ = writeln!(out, "Width = {}", world.width());
    let _ = writeln!(out, "Height = {}", world.height());
    let obstacles: Vec<_> = world
        .obstacles()
        .iter()
        .map(|p| format!("({}, {})", p.x, p.y))
        .collect();
    let _ = writeln!(out, "Obstacles = {{{}}}", obstacles.join(", "));
    let _ = writeln!(out, "GoalCell = ({}, {})", world.goal().x, world.goal().y);
    out.push_str("E = (Width, Height, Obstacles, GoalCell)\n\n");

    out.push_str(
        "passable((x, y), (w, h, obs, g)) =\n  0 <= x and x < w and 0 <= y and y < h and not member((x, y), obs)\n\n",
    );
    out.push_str("at_goal((x, y), (w, h, obs, g)) = (x, y) == g\n\n");

    for dir in [Direction::North, Direction::East, Direction::South, Direction::West] {
        nav_definition(&mut out, dir);
    }

    let _ = writeln!(out, "{PEN_DOWN_PROCESS} = pu -> {PEN_UP_PROCESS}");
    let _ = writeln!(out, "{PEN_UP_PROCESS} = pd -> {PEN_DOWN_PROCESS}\n");
    let _ = writeln!(
        out,
        "{MAIN_PROCESS}(x, y)(env) = {}(x, y)(env) ||| {PEN_DOWN_PROCESS}\n",
        nav_process_name(Direction::East)
    );
    out.push_str("goalpoint = goal -> STOP\n\n");

    let trace: Vec<_> = plan.iter().map(|e| e.token()).collect();
    let _ = writeln!(
        out,
        "assert {MAIN_PROCESS}(0, 0)(E) :[has trace]: <{}>",
        trace.join(", ")
    );
    let _ = writeln!(out, "assert {MAIN_PROCESS}(0, 0)(E) \\ nav_events [T= goalpoint");
    out
}
