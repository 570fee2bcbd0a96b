//! Instruction grounding: text to navigation commands and destination zones.
//!
//! Instructions are normalized into tokens and scanned left to right with a
//! longest-match rule against a closed synonym table of motion phrases and
//! the zone lexicon. Prohibition phrases ("do not take the right", "skip
//! the left") yield `NR` / `NL` markers and swallow the turn word they
//! govern. When an instruction names only a destination, a [`RouteTable`]
//! keyed by (start region, zone) supplies the turn list.

mod matcher;
mod routes;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::gridmap::Pose;

pub use matcher::{
    entity_sequence, extract_entities, normalize_text, synonym_table, Matcher, PROHIBITION_WINDOW,
};
pub use routes::{nav_sequence, resolve_route, GroundingContext, RouteTable, ZoneLexicon};

/// Longest turn list a route table entry may hold.
pub const MAX_ROUTE_TURNS: usize = 4;

#[derive(Debug, Error, PartialEq)]
pub enum GroundingError {
    #[error("no route from region {region:?} to zone {zone:?}")]
    NoRoute { region: String, zone: String },
    #[error("ungroundable instruction: {0:?}")]
    Ungroundable(String),
    #[error("route has {0} turns, at most {MAX_ROUTE_TURNS} allowed")]
    RouteTooLong(usize),
    #[error("unknown navigation command {0:?}")]
    UnknownCommand(String),
    #[error("zone {0:?} is not in the lexicon")]
    UnknownZone(String),
    #[error("duplicate entry {0:?}")]
    Duplicate(String),
    #[error("start position lies in no labeled region")]
    NoStartRegion,
}

/// Unified motion entity. `NR` / `NL` forbid the next opening on that side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NavCommand {
    Straight,
    Right,
    Left,
    Backward,
    /// do not turn right at the next right opening
    NR,
    /// do not turn left at the next left opening
    NL,
}

impl NavCommand {
    pub const ALL: [NavCommand; 6] = [
        NavCommand::Straight,
        NavCommand::Right,
        NavCommand::Left,
        NavCommand::Backward,
        NavCommand::NR,
        NavCommand::NL,
    ];

    pub fn is_prohibition(self) -> bool {
        matches!(self, NavCommand::NR | NavCommand::NL)
    }

    /// Heading change applied when the command is executed.
    pub fn heading_change(self) -> f64 {
        use std::f64::consts::{FRAC_PI_2, PI};
        match self {
            NavCommand::Left => FRAC_PI_2,
            NavCommand::Right => -FRAC_PI_2,
            NavCommand::Backward => PI,
            NavCommand::Straight | NavCommand::NR | NavCommand::NL => 0.0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            NavCommand::Straight => "STRAIGHT",
            NavCommand::Right => "RIGHT",
            NavCommand::Left => "LEFT",
            NavCommand::Backward => "BACKWARD",
            NavCommand::NR => "NR",
            NavCommand::NL => "NL",
        }
    }
}

impl fmt::Display for NavCommand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for NavCommand {
    type Err = GroundingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "straight" | "s" => Ok(NavCommand::Straight),
            "right" | "r" => Ok(NavCommand::Right),
            "left" | "l" => Ok(NavCommand::Left),
            "backward" | "back" | "b" => Ok(NavCommand::Backward),
            "nr" => Ok(NavCommand::NR),
            "nl" => Ok(NavCommand::NL),
            _ => Err(GroundingError::UnknownCommand(s.to_string())),
        }
    }
}

/// Ordered list of navigation commands, in the order they must be executed.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct TurnList(pub Vec<NavCommand>);

impl TurnList {
    pub fn new(commands: Vec<NavCommand>) -> Self {
        Self(commands)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn commands(&self) -> &[NavCommand] {
        &self.0
    }

    /// Number of heading-changing commands.
    pub fn motion_turns(&self) -> usize {
        self.0.iter().filter(|c| !c.is_prohibition()).count()
    }
}

impl FromStr for TurnList {
    type Err = GroundingError;

    /// Parses a comma-separated list such as `left,left,nr,right`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(TurnList::default());
        }
        s.split(',').map(str::parse).collect::<Result<_, _>>().map(TurnList)
    }
}

impl fmt::Display for TurnList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.as_str().to_ascii_lowercase()).collect();
        f.write_str(&parts.join(","))
    }
}

impl From<Vec<NavCommand>> for TurnList {
    fn from(v: Vec<NavCommand>) -> Self {
        TurnList(v)
    }
}

/// One extracted entity, in textual order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Entity {
    Command(NavCommand),
    Zone(String),
}

impl Entity {
    /// Corpus label: the command name, or `ZONE:<name>`.
    pub fn label(&self) -> String {
        match self {
            Entity::Command(c) => c.as_str().to_string(),
            Entity::Zone(z) => format!("ZONE:{z}"),
        }
    }
}

/// Result of grounding one instruction.
#[derive(Debug, Clone, PartialEq)]
pub struct GroundedInstruction {
    pub turns: TurnList,
    pub zone: Option<String>,
    pub goal: Option<Pose>,
}

impl GroundedInstruction {
    pub fn is_valid(&self) -> bool {
        !self.turns.is_empty() || self.zone.is_some()
    }
}
