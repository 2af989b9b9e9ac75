//! The turtle as a CSP process.
//!
//! `Turtle_main(x, y)` interleaves one navigation process per heading with a
//! two-state pen process. Navigation processes carry the world in their
//! closures and only offer moves into free cells.

use std::sync::Arc;

use crate::kernel::{ProcessEnv, ProcessExpr};

use super::{turtle_alphabet, Direction, Position, TurtleEvent, WorldSpec};

pub const MAIN_PROCESS: &str = "Turtle_main";
/// Pen down, waiting for `pu`.
pub const PEN_DOWN_PROCESS: &str = "Turtle_draw_pd";
/// Pen up, waiting for `pd`.
pub const PEN_UP_PROCESS: &str = "Turtle_draw_pu";

pub fn nav_process_name(dir: Direction) -> &'static str {
    match dir {
        Direction::North => "Turtle_nav_N",
        Direction::East => "Turtle_nav_E",
        Direction::South => "Turtle_nav_S",
        Direction::West => "Turtle_nav_W",
    }
}

/// Shared names of the four navigation processes, indexed like `Direction::ALL`.
struct NavNames([Arc<str>; 4]);

impl NavNames {
    fn new() -> Self {
        NavNames(Direction::ALL.map(|d| Arc::from(nav_process_name(d))))
    }

    fn call(&self, dir: Direction, pos: Position) -> ProcessExpr {
        let i = Direction::ALL.iter().position(|&d| d == dir).expect("four directions");
        ProcessExpr::reference_shared(&self.0[i], vec![pos.x, pos.y])
    }
}

fn nav_body(world: &WorldSpec, names: &NavNames, dir: Direction, args: &[i64]) -> ProcessExpr {
    let nav = |d, p| names.call(d, p);
    let here = Position::new(args[0], args[1]);
    if !world.is_free(here) {
        return ProcessExpr::Skip;
    }
    let (dx, dy) = dir.delta();
    let ahead = here.offset((dx, dy));
    let behind = here.offset((-dx, -dy));
    let mut branches = Vec::with_capacity(5);
    if world.is_free(ahead) {
        branches.push(ProcessExpr::prefix(TurtleEvent::Fd.id(), nav(dir, ahead)));
    }
    if world.is_free(behind) {
        branches.push(ProcessExpr::prefix(TurtleEvent::Bk.id(), nav(dir, behind)));
    }
    branches.push(ProcessExpr::prefix(TurtleEvent::Lt.id(), nav(dir.left(), here)));
    branches.push(ProcessExpr::prefix(TurtleEvent::Rt.id(), nav(dir.right(), here)));
    if here == world.goal() {
        branches.push(ProcessExpr::prefix(TurtleEvent::Goal.id(), nav(dir, here)));
    }
    ProcessExpr::choice_all(branches)
}

/// Builds `Turtle_main(0, 0)` and the definitions it depends on.
pub fn build_turtle_process(world: &WorldSpec) -> (ProcessExpr, ProcessEnv) {
    let world = Arc::new(world.clone());
    let names = Arc::new(NavNames::new());
    let mut env = ProcessEnv::new(turtle_alphabet());

    for dir in Direction::ALL {
        let world = world.clone();
        let names_for_body = names.clone();
        env.define(nav_process_name(dir), 2, move |args| {
            nav_body(&world, &names_for_body, dir, args)
        });
    }
    env.define_const(
        PEN_DOWN_PROCESS,
        ProcessExpr::prefix(TurtleEvent::Pu.id(), ProcessExpr::reference(PEN_UP_PROCESS, vec![])),
    );
    env.define_const(
        PEN_UP_PROCESS,
        ProcessExpr::prefix(TurtleEvent::Pd.id(), ProcessExpr::reference(PEN_DOWN_PROCESS, vec![])),
    );
    env.define(MAIN_PROCESS, 2, move |args| {
        ProcessExpr::interleave(
            names.call(Direction::East, Position::new(args[0], args[1])),
            ProcessExpr::reference(PEN_DOWN_PROCESS, vec![]),
        )
    });

    (ProcessExpr::reference(MAIN_PROCESS, vec![0, 0]), env)
}
