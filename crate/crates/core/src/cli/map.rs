use std::collections::BTreeSet;

use crate::model::{Position, TurtleState, WorldSpec};

/// ASCII map, top row first: `.` free, `#` obstacle, `G` goal, and an arrow
/// for the turtle.
pub fn render(
    width: u32,
    height: u32,
    obstacles: &BTreeSet<Position>,
    goal: Option<Position>,
    turtle: TurtleState,
) -> String {
    let mut out = String::new();
    for y in (0..height as i64).rev() {
        let row: Vec<String> = (0..width as i64)
            .map(|x| {
                let p = Position::new(x, y);
                let c = if p == turtle.pos {
                    turtle.dir.arrow()
                } else if obstacles.contains(&p) {
                    '#'
                } else if Some(p) == goal {
                    'G'
                } else {
                    '.'
                };
                c.to_string()
            })
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn render_world(world: &WorldSpec, turtle: TurtleState) -> String {
    render(
        world.width(),
        world.height(),
        world.obstacles(),
        Some(world.goal()),
        turtle,
    )
}
