//! The grid-world turtle: world description, direct transition semantics,
//! and the equivalent CSP process.

mod process;
mod semantics;

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, LazyLock};

use serde::{Deserialize, Serialize};

use crate::kernel::{Alphabet, Event, EventId, EventSet};

pub use process::{build_turtle_process, nav_process_name, MAIN_PROCESS, PEN_DOWN_PROCESS, PEN_UP_PROCESS};
pub use semantics::{
    apply_event, disabled_reason, enabled_events, reachable_cells, simulate, DisabledReason, EventNotEnabled,
    PlanVerdict, Segment, SimResult,
};

/// Largest accepted width or height.
pub const MAX_WORLD_SIDE: u32 = 64;

/// The turtle's visible events, in canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TurtleEvent {
    Fd,
    Bk,
    Lt,
    Rt,
    Pu,
    Pd,
    Goal,
}

impl TurtleEvent {
    pub const ALL: [TurtleEvent; 7] = [
        TurtleEvent::Fd,
        TurtleEvent::Bk,
        TurtleEvent::Lt,
        TurtleEvent::Rt,
        TurtleEvent::Pu,
        TurtleEvent::Pd,
        TurtleEvent::Goal,
    ];

    /// Everything except `goal`: the events hidden by the reachability check.
    pub const NAV: [TurtleEvent; 6] = [
        TurtleEvent::Fd,
        TurtleEvent::Bk,
        TurtleEvent::Lt,
        TurtleEvent::Rt,
        TurtleEvent::Pu,
        TurtleEvent::Pd,
    ];

    pub fn token(self) -> &'static str {
        match self {
            TurtleEvent::Fd => "fd",
            TurtleEvent::Bk => "bk",
            TurtleEvent::Lt => "lt",
            TurtleEvent::Rt => "rt",
            TurtleEvent::Pu => "pu",
            TurtleEvent::Pd => "pd",
            TurtleEvent::Goal => "goal",
        }
    }

    pub fn id(self) -> EventId {
        EventId(self as u16)
    }

    pub fn event(self) -> Event {
        Event::Visible(self.id())
    }

    pub fn from_id(id: EventId) -> Option<Self> {
        Self::ALL.get(id.0 as usize).copied()
    }

    pub fn from_event(event: Event) -> Option<Self> {
        event.visible().and_then(Self::from_id)
    }
}

impl fmt::Display for TurtleEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for TurtleEvent {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL.into_iter().find(|e| e.token() == s).ok_or(())
    }
}

static ALPHABET: LazyLock<Arc<Alphabet>> =
    LazyLock::new(|| Arc::new(Alphabet::new(TurtleEvent::ALL.map(TurtleEvent::token)).expect("distinct tokens")));

/// Kernel alphabet whose ids coincide with [`TurtleEvent`] discriminants.
pub fn turtle_alphabet() -> Arc<Alphabet> {
    ALPHABET.clone()
}

/// The events hidden by the goal check.
pub fn nav_events() -> EventSet {
    TurtleEvent::NAV.iter().map(|e| e.id()).collect()
}

pub fn to_trace(plan: &[TurtleEvent]) -> Vec<Event> {
    plan.iter().map(|e| e.event()).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    North,
    East,
    South,
    West,
}

impl Direction {
    pub const ALL: [Direction; 4] = [Direction::North, Direction::East, Direction::South, Direction::West];

    /// Quarter turn counterclockwise.
    pub fn left(self) -> Self {
        match self {
            Direction::East => Direction::North,
            Direction::North => Direction::West,
            Direction::West => Direction::South,
            Direction::South => Direction::East,
        }
    }

    /// Quarter turn clockwise.
    pub fn right(self) -> Self {
        match self {
            Direction::East => Direction::South,
            Direction::South => Direction::West,
            Direction::West => Direction::North,
            Direction::North => Direction::East,
        }
    }

    /// Unit step as (dx, dy), y pointing up.
    pub fn delta(self) -> (i64, i64) {
        match self {
            Direction::North => (0, 1),
            Direction::East => (1, 0),
            Direction::South => (0, -1),
            Direction::West => (-1, 0),
        }
    }

    /// Heading in degrees, East = 0, counterclockwise.
    pub fn degrees(self) -> u32 {
        match self {
            Direction::East => 0,
            Direction::North => 90,
            Direction::West => 180,
            Direction::South => 270,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Direction::North => 'N',
            Direction::East => 'E',
            Direction::South => 'S',
            Direction::West => 'W',
        }
    }

    /// Map glyph pointing along the heading.
    pub fn arrow(self) -> char {
        match self {
            Direction::North => '^',
            Direction::East => '>',
            Direction::South => 'v',
            Direction::West => '<',
        }
    }
}

/// A grid cell. Ordered by row, then column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Position {
    pub x: i64,
    pub y: i64,
}

impl Position {
    pub const ORIGIN: Position = Position { x: 0, y: 0 };

    pub fn new(x: i64, y: i64) -> Self {
        Position { x, y }
    }

    pub fn offset(self, (dx, dy): (i64, i64)) -> Self {
        Position::new(self.x + dx, self.y + dy)
    }

    pub fn neighbours(self) -> [Position; 4] {
        Direction::ALL.map(|d| self.offset(d.delta()))
    }
}

impl Ord for Position {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.y, self.x).cmp(&(other.y, other.x))
    }
}

impl PartialOrd for Position {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Pen {
    Down,
    Up,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TurtleState {
    pub pos: Position,
    pub dir: Direction,
    pub pen: Pen,
}

impl TurtleState {
    /// Origin, facing East, pen down.
    pub const START: TurtleState = TurtleState {
        pos: Position::ORIGIN,
        dir: Direction::East,
        pen: Pen::Down,
    };
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WorldError {
    #[error("world dimensions must be at least 1x1, got {width}x{height}")]
    EmptyWorld { width: u32, height: u32 },
    #[error("world {width}x{height} exceeds the {MAX_WORLD_SIDE}x{MAX_WORLD_SIDE} limit")]
    TooLarge { width: u32, height: u32 },
    #[error("{what} {pos} lies outside the {width}x{height} world")]
    OutOfBounds {
        what: &'static str,
        pos: Position,
        width: u32,
        height: u32,
    },
    #[error("the start cell (0, 0) cannot be an obstacle")]
    ObstacleAtStart,
    #[error("goal {0} is on an obstacle")]
    GoalOnObstacle(Position),
}

/// A bounded grid with obstacles and one goal cell. Always valid once built.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WorldSpec {
    width: u32,
    height: u32,
    obstacles: BTreeSet<Position>,
    goal: Position,
}

impl WorldSpec {
    pub fn new(
        width: u32,
        height: u32,
        obstacles: impl IntoIterator<Item = Position>,
        goal: Position,
    ) -> Result<Self, WorldError> {
        check_dimensions(width, height)?;
        let world = WorldSpec {
            width,
            height,
            obstacles: BTreeSet::new(),
            goal,
        };
        if !world.in_bounds(goal) {
            return Err(world.out_of_bounds("goal", goal));
        }
        obstacles
            .into_iter()
            .try_fold(world, |w, obstacle| w.with_obstacle(obstacle))
    }

    /// Adds an obstacle, checking it against bounds, start and goal.
    pub fn with_obstacle(mut self, pos: Position) -> Result<Self, WorldError> {
        if !self.in_bounds(pos) {
            return Err(self.out_of_bounds("obstacle", pos));
        }
        if pos == Position::ORIGIN {
            return Err(WorldError::ObstacleAtStart);
        }
        if pos == self.goal {
            return Err(WorldError::GoalOnObstacle(pos));
        }
        self.obstacles.insert(pos);
        Ok(self)
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn goal(&self) -> Position {
        self.goal
    }

    /// Obstacles ordered by row, then column.
    pub fn obstacles(&self) -> &BTreeSet<Position> {
        &self.obstacles
    }

    pub fn in_bounds(&self, pos: Position) -> bool {
        (0..self.width as i64).contains(&pos.x) && (0..self.height as i64).contains(&pos.y)
    }

    pub fn is_obstacle(&self, pos: Position) -> bool {
        self.obstacles.contains(&pos)
    }

    /// In bounds and not an obstacle.
    pub fn is_free(&self, pos: Position) -> bool {
        self.in_bounds(pos) && !self.is_obstacle(pos)
    }

    /// All in-bounds cells, ordered by row, then column.
    pub fn cells(&self) -> impl Iterator<Item = Position> + '_ {
        (0..self.height as i64).flat_map(move |y| (0..self.width as i64).map(move |x| Position::new(x, y)))
    }

    fn out_of_bounds(&self, what: &'static str, pos: Position) -> WorldError {
        WorldError::OutOfBounds {
            what,
            pos,
            width: self.width,
            height: self.height,
        }
    }
}

pub fn check_dimensions(width: u32, height: u32) -> Result<(), WorldError> {
    if width == 0 || height == 0 {
        return Err(WorldError::EmptyWorld { width, height });
    }
    if width > MAX_WORLD_SIDE || height > MAX_WORLD_SIDE {
        return Err(WorldError::TooLarge { width, height });
    }
    Ok(())
}
