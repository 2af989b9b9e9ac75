use std::fmt::Write as _;

use super::{turtle_call, CodegenOptions, VerifiedPlan};
use crate::plan_io::format_plan;

pub(super) fn render(verified: &VerifiedPlan<'_>, opts: &CodegenOptions) -> String {
    let world = verified.world();
    let mut out = String::new();
    let _ = writeln!(out, "#!/usr/bin/env python3");
    let _ = writeln!(
        out,
        "# Turtle plan for a {}x{} world, goal {}, {} px per cell.",
        world.width(),
        world.height(),
        world.goal(),
        opts.unit
    );
    let _ = writeln!(out, "# Plan: {}", format_plan(verified.plan()));
    out.push_str("import turtle\n\n");
    out.push_str("t = turtle.Turtle()\n");
    let _ = writeln!(out, "t.speed({})", opts.speed);
    out.push_str("t.pendown()\n\n");
    for &event in verified.plan() {
        let (name, arg) = turtle_call(event, opts.unit);
        match arg {
            Some(arg) => {
                let _ = writeln!(out, "t.{name}({arg})");
            }
            None => {
                let _ = writeln!(out, "t.{name}()");
            }
        }
    }
    out.push_str("\nturtle.done()\n");
    out
}
