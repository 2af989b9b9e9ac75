use std::fmt::Write as _;

use super::{CodegenOptions, VerifiedPlan};
use crate::model::Position;

pub(super) fn render(verified: &VerifiedPlan<'_>, opts: &CodegenOptions) -> String {
    let world = verified.world();
    let unit = opts.unit as i64;
    let width = world.width() as i64 * unit;
    let height = world.height() as i64 * unit;
    // grid y grows upwards, SVG y downwards
    let corner = |p: Position| (p.x * unit, height - (p.y + 1) * unit);
    let centre = |p: Position| (p.x * unit + unit / 2, height - p.y * unit - unit / 2);

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">"
    );
    let _ = writeln!(
        out,
        "  <rect class=\"background\" x=\"0\" y=\"0\" width=\"{width}\" height=\"{height}\" fill=\"white\"/>"
    );

    out.push_str("  <g class=\"grid\" stroke=\"#bbbbbb\" stroke-width=\"1\">\n");
    for i in 0..=world.width() as i64 {
        let x = i * unit;
        let _ = writeln!(out, "    <line x1=\"{x}\" y1=\"0\" x2=\"{x}\" y2=\"{height}\"/>");
    }
    for j in 0..=world.height() as i64 {
        let y = j * unit;
        let _ = writeln!(out, "    <line x1=\"0\" y1=\"{y}\" x2=\"{width}\" y2=\"{y}\"/>");
    }
    out.push_str("  </g>\n");

    out.push_str("  <g class=\"obstacles\" fill=\"#333333\">\n");
    for &p in world.obstacles() {
        let (x, y) = corner(p);
        let _ = writeln!(
            out,
            "    <rect class=\"obstacle\" x=\"{x}\" y=\"{y}\" width=\"{unit}\" height=\"{unit}\"/>"
        );
    }
    out.push_str("  </g>\n");

    let (gx, gy) = corner(world.goal());
    let _ = writeln!(
        out,
        "  <rect class=\"goal\" x=\"{gx}\" y=\"{gy}\" width=\"{unit}\" height=\"{unit}\" fill=\"#9be79b\" fill-opacity=\"0.6\"/>"
    );

    out.push_str("  <g class=\"path\" stroke=\"#1f5fbf\" stroke-width=\"3\" fill=\"none\" stroke-linecap=\"round\">\n");
    for seg in &verified.simulation().segments {
        let (x1, y1) = centre(seg.from);
        let (x2, y2) = centre(seg.to);
        let _ = writeln!(out, "    <polyline class=\"segment\" points=\"{x1},{y1} {x2},{y2}\"/>");
    }
    out.push_str("  </g>\n");

    let last = verified.simulation().final_state();
    let (cx, cy) = centre(last.pos);
    let r = (unit / 3).max(1);
    let half = (unit / 5).max(1);
    let _ = writeln!(
        out,
        "  <polygon class=\"turtle\" points=\"{},{} {},{} {},{}\" fill=\"#d62728\" transform=\"rotate({} {cx} {cy})\"/>",
        cx + r,
        cy,
        cx - half,
        cy - half,
        cx - half,
        cy + half,
        -(last.dir.degrees() as i64),
    );
    out.push_str("</svg>\n");
    out
}
