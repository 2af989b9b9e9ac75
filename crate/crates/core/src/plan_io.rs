//! Plan token language and the line-based world file format.
//!
//! ```text
//! # comment
//! world 3 3
//! obstacle 1 1
//! obstacle 1 2
//! goal 2 2
//! ```

use std::fmt::{self, Write as _};

use crate::model::{check_dimensions, Position, TurtleEvent, WorldError, WorldSpec};

pub type Plan = Vec<TurtleEvent>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnknownToken,
    MissingWorldLine,
    DuplicateWorldLine,
    DuplicateGoal,
    MissingGoal,
    OutOfBoundsCoordinate,
    ObstacleAtStart,
    GoalOnObstacle,
    BadDimensions,
    UnknownDirective,
    Malformed,
}

/// A parse failure pointing into the input text.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, {position_label} {position}: {message}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    /// 1-based line number.
    pub line: usize,
    /// 1-based token index within the plan, or column within the line.
    pub position: usize,
    pub message: String,
    pub lexeme: String,
    position_label: &'static str,
}

impl ParseError {
    fn at_token(kind: ParseErrorKind, line: usize, token: usize, lexeme: &str, message: String) -> Self {
        ParseError {
            kind,
            line,
            position: token,
            message,
            lexeme: lexeme.to_string(),
            position_label: "token",
        }
    }

    fn at_column(kind: ParseErrorKind, line: usize, column: usize, lexeme: &str, message: String) -> Self {
        ParseError {
            kind,
            line,
            position: column,
            message,
            lexeme: lexeme.to_string(),
            position_label: "column",
        }
    }
}

/// Splits on whitespace and commas. Tokens are case-sensitive.
pub fn parse_plan(text: &str) -> Result<Plan, ParseError> {
    let mut plan = Vec::new();
    let mut index = 0;
    for (line_no, line) in text.lines().enumerate() {
        for token in line
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
        {
            index += 1;
            let event = token.parse::<TurtleEvent>().map_err(|_| {
                ParseError::at_token(
                    ParseErrorKind::UnknownToken,
                    line_no + 1,
                    index,
                    token,
                    format!("unknown plan token `{token}`"),
                )
            })?;
            plan.push(event);
        }
    }
    Ok(plan)
}

pub fn format_plan(plan: &[TurtleEvent]) -> String {
    plan.iter().map(|e| e.token()).collect::<Vec<_>>().join(" ")
}

struct Line<'a> {
    number: usize,
    text: &'a str,
    fields: Vec<(usize, &'a str)>,
}

impl<'a> Line<'a> {
    fn new(number: usize, text: &'a str) -> Self {
        let mut fields = Vec::new();
        let mut start = None;
        for (i, c) in text.char_indices().chain([(text.len(), ' ')]) {
            match (c.is_whitespace(), start) {
                (false, None) => start = Some(i),
                (true, Some(s)) => {
                    fields.push((s + 1, &text[s..i]));
                    start = None;
                }
                _ => {}
            }
        }
        Line { number, text, fields }
    }

    fn error(&self, kind: ParseErrorKind, field: usize, message: String) -> ParseError {
        let (column, lexeme) = self.fields.get(field).copied().unwrap_or((self.text.len() + 1, ""));
        ParseError::at_column(kind, self.number, column, lexeme, message)
    }

    fn whole(&self, kind: ParseErrorKind, message: String) -> ParseError {
        let column = self.fields.first().map_or(1, |f| f.0);
        ParseError::at_column(kind, self.number, column, self.text.trim(), message)
    }

    /// Parses `<directive> <a> <b>`.
    fn pair(&self) -> Result<(u64, u64), ParseError> {
        let directive = self.fields[0].1;
        if self.fields.len() != 3 {
            return Err(self.whole(
                ParseErrorKind::Malformed,
                format!("`{directive}` takes exactly two integers"),
            ));
        }
        let number = |i: usize| {
            let (_, lexeme) = self.fields[i];
            if !lexeme.bytes().all(|b| b.is_ascii_digit()) {
                return Err(self.error(
                    ParseErrorKind::Malformed,
                    i,
                    format!("expected a non-negative decimal integer, found `{lexeme}`"),
                ));
            }
            lexeme
                .parse::<u64>()
                .map_err(|_| self.error(ParseErrorKind::Malformed, i, format!("integer `{lexeme}` is too large")))
        };
        Ok((number(1)?, number(2)?))
    }
}

/// Parses and validates a world description.
pub fn parse_world(text: &str) -> Result<WorldSpec, ParseError> {
    let mut dims: Option<(u32, u32)> = None;
    let mut obstacles: Vec<(Line<'_>, Position)> = Vec::new();
    let mut goal: Option<(Line<'_>, Position)> = None;
    let mut last_line = 0;

    for (i, raw) in text.lines().enumerate() {
        last_line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let line = Line::new(i + 1, raw);
        let directive = line.fields[0].1;
        match directive {
            "world" => {
                if dims.is_some() {
                    return Err(line.whole(
                        ParseErrorKind::DuplicateWorldLine,
                        "`world` given more than once".into(),
                    ));
                }
                let (w, h) = line.pair()?;
                let (w, h) = match (u32::try_from(w), u32::try_from(h)) {
                    (Ok(w), Ok(h)) => (w, h),
                    _ => {
                        return Err(line.whole(ParseErrorKind::BadDimensions, "world too large".into()));
                    }
                };
                check_dimensions(w, h).map_err(|e| line.whole(ParseErrorKind::BadDimensions, e.to_string()))?;
                dims = Some((w, h));
            }
            "obstacle" | "goal" => {
                let Some((width, height)) = dims else {
                    return Err(line.whole(
                        ParseErrorKind::MissingWorldLine,
                        "the first directive must be `world <width> <height>`".into(),
                    ));
                };
                let (x, y) = line.pair()?;
                if x >= width as u64 || y >= height as u64 {
                    return Err(line.whole(
                        ParseErrorKind::OutOfBoundsCoordinate,
                        format!("({x}, {y}) lies outside the {width}x{height} world"),
                    ));
                }
                let pos = Position::new(x as i64, y as i64);
                if directive == "goal" {
                    if goal.is_some() {
                        return Err(line.whole(ParseErrorKind::DuplicateGoal, "`goal` given more than once".into()));
                    }
                    goal = Some((line, pos));
                } else {
                    if pos == Position::ORIGIN {
                        return Err(line.whole(
                            ParseErrorKind::ObstacleAtStart,
                            "the start cell (0, 0) cannot be an obstacle".into(),
                        ));
                    }
                    obstacles.push((line, pos));
                }
            }
            _ => {
                if dims.is_none() {
                    return Err(line.whole(
                        ParseErrorKind::MissingWorldLine,
                        "the first directive must be `world <width> <height>`".into(),
                    ));
                }
                return Err(line.error(
                    ParseErrorKind::UnknownDirective,
                    0,
                    format!("unknown directive `{directive}`"),
                ));
            }
        }
    }

    let Some((width, height)) = dims else {
        return Err(ParseError::at_column(
            ParseErrorKind::MissingWorldLine,
            last_line.max(1),
            1,
            "",
            "missing `world <width> <height>` line".into(),
        ));
    };
    let Some((goal_line, goal)) = goal else {
        return Err(ParseError::at_column(
            ParseErrorKind::MissingGoal,
            last_line.max(1),
            1,
            "",
            "missing `goal <x> <y>` line".into(),
        ));
    };
    let mut world = WorldSpec::new(width, height, [], goal)
        .map_err(|e| goal_line.whole(ParseErrorKind::OutOfBoundsCoordinate, e.to_string()))?;
    for (line, pos) in obstacles {
        world = world.with_obstacle(pos).map_err(|e| {
            let kind = match e {
                WorldError::GoalOnObstacle(_) => ParseErrorKind::GoalOnObstacle,
                WorldError::ObstacleAtStart => ParseErrorKind::ObstacleAtStart,
                _ => ParseErrorKind::OutOfBoundsCoordinate,
            };
            line.whole(kind, e.to_string())
        })?;
    }
    Ok(world)
}

/// Canonical text: world line, obstacles by row then column, goal line.
pub fn serialize_world(world: &WorldSpec) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "world {} {}", world.width(), world.height());
    for p in world.obstacles() {
        let _ = writeln!(out, "obstacle {} {}", p.x, p.y);
    }
    let _ = write!(out, "goal {} {}", world.goal().x, world.goal().y);
    out
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
