use std::collections::BTreeMap;

use super::matcher::{extract_entities, normalize_text};
use super::{GroundingError, TurnList, MAX_ROUTE_TURNS};
use crate::gridmap::Pose;

/// Destination names and their goal poses.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ZoneLexicon {
    entries: BTreeMap<String, Pose>,
}

/// Zone names are compared in normalized form ("Living-Room" == "living room").
fn zone_key(name: &str) -> String {
    normalize_text(name).join(" ")
}

impl ZoneLexicon {
    pub fn insert(&mut self, name: &str, pose: Pose) -> Result<(), GroundingError> {
        let key = zone_key(name);
        if key.is_empty() || self.entries.contains_key(&key) {
            return Err(GroundingError::Duplicate(name.to_string()));
        }
        self.entries.insert(key, pose);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<Pose> {
        self.entries.get(&zone_key(name)).copied()
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Pose)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Turn lists keyed by (start region label, zone name).
///
/// Stands in for a learned classifier from (current position, destination)
/// to one of finitely many turn-list classes.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RouteTable {
    entries: BTreeMap<(String, String), TurnList>,
}

impl RouteTable {
    pub fn insert(&mut self, region: &str, zone: &str, turns: TurnList) -> Result<(), GroundingError> {
        if turns.len() > MAX_ROUTE_TURNS {
            return Err(GroundingError::RouteTooLong(turns.len()));
        }
        let key = (region.trim().to_string(), zone_key(zone));
        if self.entries.contains_key(&key) {
            return Err(GroundingError::Duplicate(format!("{region}/{zone}")));
        }
        self.entries.insert(key, turns);
        Ok(())
    }

    pub fn get(&self, region: &str, zone: &str) -> Option<&TurnList> {
        self.entries.get(&(region.trim().to_string(), zone_key(zone)))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str, &TurnList)> {
        self.entries
            .iter()
            .map(|((r, z), t)| (r.as_str(), z.as_str(), t))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Looks up the configured turn list for a destination.
pub fn resolve_route(zone: &str, start_region: &str, table: &RouteTable) -> Result<TurnList, GroundingError> {
    table
        .get(start_region, zone)
        .cloned()
        .ok_or_else(|| GroundingError::NoRoute {
            region: start_region.to_string(),
            zone: zone.to_string(),
        })
}

/// Everything grounding needs from a scenario.
#[derive(Debug, Clone, Default)]
pub struct GroundingContext {
    pub lexicon: ZoneLexicon,
    pub routes: RouteTable,
    /// Label of the region containing the start position.
    pub start_region: Option<String>,
    /// Goal used when the instruction names no zone.
    pub goal: Option<Pose>,
}

/// Turn list and goal pose for an instruction.
///
/// Explicit turns in the text are used as-is; a zone-only instruction is
/// resolved through the route table from the start region.
pub fn nav_sequence(text: &str, ctx: &GroundingContext) -> Result<(TurnList, Pose), GroundingError> {
    let grounded = extract_entities(text, &ctx.lexicon);
    if !grounded.is_valid() {
        return Err(GroundingError::Ungroundable(text.to_string()));
    }
    let turns = if !grounded.turns.is_empty() {
        grounded.turns
    } else {
        let zone = grounded.zone.as_deref().unwrap_or_default();
        let region = ctx
            .start_region
            .as_deref()
            .ok_or(GroundingError::NoStartRegion)?;
        resolve_route(zone, region, &ctx.routes)?
    };
    let goal = match (&grounded.zone, grounded.goal) {
        (_, Some(pose)) => pose,
        (Some(zone), None) => return Err(GroundingError::UnknownZone(zone.clone())),
        (None, None) => ctx
            .goal
            .ok_or_else(|| GroundingError::Ungroundable(text.to_string()))?,
    };
    Ok((turns, goal))
}
