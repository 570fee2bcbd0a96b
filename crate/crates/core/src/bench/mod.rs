//! Scenario files, seeded planner comparisons, reports and SVG rendering.

mod render;
mod report;
mod scenario;

use std::fmt;
use std::str::FromStr;

use crate::gridmap::Pose;
use crate::grounding::TurnList;
use crate::planner::{plan_lasmp, plan_rrt, PlanOutcome, PlannerError, PlannerMetrics, PlannerParams};

pub use render::render;
pub use report::{records_to_csv, reduction_pct, summarize, Reduction, Report, ScenarioSummary, Stat};
pub use scenario::{load_scenario, load_scenario_file, parse_num, Scenario, ScenarioError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PlannerKind {
    Lasmp,
    Rrt,
}

impl PlannerKind {
    pub const ALL: [PlannerKind; 2] = [PlannerKind::Lasmp, PlannerKind::Rrt];

    pub fn name(self) -> &'static str {
        match self {
            PlannerKind::Lasmp => "lasmp",
            PlannerKind::Rrt => "rrt",
        }
    }
}

impl fmt::Display for PlannerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PlannerKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "lasmp" => Ok(PlannerKind::Lasmp),
            "rrt" => Ok(PlannerKind::Rrt),
            other => Err(format!("unknown planner {other:?} (expected lasmp or rrt)")),
        }
    }
}

/// One planner run.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonRecord {
    pub scenario: String,
    pub planner: PlannerKind,
    /// User-facing seed; the generator is seeded with [`run_seed`] of it.
    pub seed: u64,
    pub metrics: PlannerMetrics,
    /// Planner error, if the run could not start.
    pub error: Option<String>,
}

/// Generator seed for one run, mixed from the user seed, scenario id and
/// planner name so that no two runs share a random stream.
pub fn run_seed(seed: u64, scenario: &str, planner: PlannerKind) -> u64 {
    const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
    const PRIME: u64 = 0x0000_0100_0000_01b3;
    let mut h = OFFSET;
    let bytes = seed
        .to_le_bytes()
        .into_iter()
        .chain(scenario.bytes())
        .chain([0xff])
        .chain(planner.name().bytes());
    for b in bytes {
        h ^= u64::from(b);
        h = h.wrapping_mul(PRIME);
    }
    h
}

/// Runs `planner` on the scenario's grid with an already-resolved turn list and goal.
pub fn run_planner(
    scenario: &Scenario,
    turns: &TurnList,
    goal: &Pose,
    planner: PlannerKind,
    seed: u64,
) -> Result<PlanOutcome, PlannerError> {
    let params = PlannerParams {
        seed: run_seed(seed, &scenario.id, planner),
        ..scenario.params.clone()
    };
    match planner {
        PlannerKind::Lasmp => plan_lasmp(&scenario.grid, &scenario.start, goal, turns, &params),
        PlannerKind::Rrt => plan_rrt(&scenario.grid, &scenario.start, goal, &params),
    }
}

/// Runs every planner once per seed. The instruction is grounded once up
/// front; records come back sorted by (scenario, planner, seed).
pub fn run_comparison(
    scenario: &Scenario,
    planners: &[PlannerKind],
    seeds: &[u64],
) -> Result<Vec<ComparisonRecord>, ScenarioError> {
    let (turns, goal) = scenario.resolve()?;
    let mut records = Vec::with_capacity(planners.len() * seeds.len());
    for &planner in planners {
        for &seed in seeds {
            let (metrics, error) = match run_planner(scenario, &turns, &goal, planner, seed) {
                Ok(outcome) => (outcome.metrics, None),
                Err(e) => (PlannerMetrics::default(), Some(e.to_string())),
            };
            records.push(ComparisonRecord {
                scenario: scenario.id.clone(),
                planner,
                seed,
                metrics,
                error,
            });
        }
    }
    sort_records(&mut records);
    Ok(records)
}

pub fn sort_records(records: &mut [ComparisonRecord]) {
    records.sort_by(|a, b| (&a.scenario, a.planner, a.seed).cmp(&(&b.scenario, b.planner, b.seed)));
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_are_distinct_per_run() {
        let a = run_seed(1, "de-2", PlannerKind::Lasmp);
        assert_eq!(a, run_seed(1, "de-2", PlannerKind::Lasmp));
        assert_ne!(a, run_seed(1, "de-2", PlannerKind::Rrt));
        assert_ne!(a, run_seed(2, "de-2", PlannerKind::Lasmp));
        assert_ne!(a, run_seed(1, "de-3", PlannerKind::Lasmp));
    }

    #[test]
    fn planner_names() {
        for p in PlannerKind::ALL {
            assert_eq!(p.name().parse::<PlannerKind>().unwrap(), p);
        }
        assert!("astar".parse::<PlannerKind>().is_err());
    }
}
