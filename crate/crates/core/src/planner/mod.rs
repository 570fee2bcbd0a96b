//! Sampling-based planners.
//!
//! [`plan_lasmp`] grows an RRT whose samples are drawn from a rectangle
//! oriented along the current travel heading. Each extension is walked at a
//! fixed step and a ray is cast toward the side of the pending navigation
//! command; enough consecutive free rays mark an opening, the command is
//! consumed there and the search continues with the next one.
//! [`plan_rrt`] is the uniform-sampling baseline with the same extension,
//! goal test and bookkeeping.

mod intersection;
mod lasmp;
mod path;
mod rrt;
mod subset;
mod tree;

use std::f64::consts::{FRAC_PI_2, PI};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::gridmap::{Bounds, GridError, OccupancyGrid, State};
use crate::grounding::NavCommand;

pub use intersection::{detect_intersection, intermediate_states, scan_for_opening, OpeningScan, ScanState};
pub use lasmp::{plan_lasmp, plan_lasmp_traced, LasmpTrace};
pub use path::{parse_path, Path, TurnEvent};
pub use rrt::plan_rrt;
pub use subset::{get_subset, polygon_area, sample_subset, subset_gain, SamplingSubset};
pub use tree::{extract_path, nearest_node, SearchTree};

/// Identifier of the random generator behind every planner run.
pub const RNG_ALGORITHM: &str = "chacha8";

#[derive(Debug, Error, PartialEq)]
pub enum PlannerError {
    #[error("invalid planner parameters: {0}")]
    InvalidParams(String),
    #[error("start {0} is in collision")]
    StartInCollision(State),
    #[error("goal {0} is in collision")]
    GoalInCollision(State),
    #[error("state {0} lies outside the planning domain")]
    OutOfDomain(State),
    #[error("sampling subset is empty")]
    EmptySubset,
    #[error("segment endpoints coincide")]
    CoincidentEndpoints,
    #[error("search tree is empty")]
    EmptyTree,
    #[error("node index {0} out of range")]
    InvalidIndex(usize),
    #[error(transparent)]
    Grid(#[from] GridError),
}

/// Tuning knobs shared by both planners.
#[derive(Debug, Clone, PartialEq)]
pub struct PlannerParams {
    /// Subset length along the travel heading (m).
    pub h: f64,
    /// Subset width across the travel heading (m).
    pub w: f64,
    /// Ray-cast range used to recognise an opening (m).
    pub d: f64,
    /// Step between intermediate states on an extension (m).
    pub delta: f64,
    /// Consecutive free rays required to mark an opening.
    pub n_cons: usize,
    /// Extension cap (m).
    pub max_step: f64,
    pub goal_tol: f64,
    /// Budget of random-state queries.
    pub max_iters: usize,
    pub seed: u64,
}

impl Default for PlannerParams {
    fn default() -> Self {
        Self {
            h: 4.0,
            w: 2.0,
            d: 3.0,
            delta: 0.1,
            n_cons: 3,
            max_step: 1.0,
            goal_tol: 0.3,
            max_iters: 10_000,
            seed: 0,
        }
    }
}

impl PlannerParams {
    /// Defaults with `delta` set to the grid resolution.
    pub fn for_grid(grid: &OccupancyGrid) -> Self {
        Self {
            delta: grid.resolution(),
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<(), PlannerError> {
        let fail = |m: &str| Err(PlannerError::InvalidParams(m.to_string()));
        if !(self.w > 0.0) {
            return fail("w must be positive");
        }
        if !(self.h > self.w) {
            return fail("h must exceed w");
        }
        if !(self.d > 0.0) {
            return fail("d must be positive");
        }
        if !(self.delta > 0.0) {
            return fail("delta must be positive");
        }
        if self.n_cons < 1 {
            return fail("n_cons must be at least 1");
        }
        if !(self.max_step > 0.0) {
            return fail("max_step must be positive");
        }
        if !(self.goal_tol > 0.0) {
            return fail("goal_tol must be positive");
        }
        if self.max_iters < 1 {
            return fail("max_iters must be at least 1");
        }
        Ok(())
    }
}

/// Per-run counters.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PlannerMetrics {
    /// Nodes appended after the root.
    pub nodes_added: usize,
    /// Calls to the random state generator, rejected samples included.
    pub sample_queries: usize,
    /// Wall-clock seconds.
    pub elapsed: f64,
    pub path_length: f64,
    pub success: bool,
}

/// Everything a planner run produces. `path` is `None` when the query
/// budget ran out before the goal was reached.
#[derive(Debug, Clone)]
pub struct PlanOutcome {
    pub path: Option<Path>,
    pub metrics: PlannerMetrics,
    pub tree: SearchTree,
}

/// Search-tree state paired with the command still pending there.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AugmentedState {
    pub state: State,
    pub command: Option<NavCommand>,
}

impl AugmentedState {
    /// Projection back to the plain state.
    pub fn project(&self) -> State {
        self.state
    }
}

/// Unit vector toward which `cmd` points when travelling along `heading`.
/// Prohibitions point at the side they forbid.
pub fn turn_to_direction(heading: f64, cmd: NavCommand) -> (f64, f64) {
    let offset = match cmd {
        NavCommand::Straight => 0.0,
        NavCommand::Left | NavCommand::NL => FRAC_PI_2,
        NavCommand::Right | NavCommand::NR => -FRAC_PI_2,
        NavCommand::Backward => PI,
    };
    let (s, c) = (heading + offset).sin_cos();
    (c, s)
}

/// Seeded random-state generator that counts its queries.
#[derive(Debug, Clone)]
pub struct StateSampler {
    rng: ChaCha8Rng,
    queries: usize,
}

impl StateSampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            queries: 0,
        }
    }

    pub fn queries(&self) -> usize {
        self.queries
    }

    /// One query: uniform over `bounds`.
    pub fn sample_uniform(&mut self, bounds: &Bounds) -> State {
        self.queries += 1;
        self.draw(bounds)
    }

    /// One query: uniform over `{p in bounds | accept(p)}` by rejection.
    pub fn sample_where(&mut self, bounds: &Bounds, accept: impl Fn(&State) -> bool) -> State {
        self.queries += 1;
        loop {
            let p = self.draw(bounds);
            if accept(&p) {
                return p;
            }
        }
    }

    fn draw(&mut self, b: &Bounds) -> State {
        let x = if b.max.x > b.min.x { self.rng.gen_range(b.min.x..b.max.x) } else { b.min.x };
        let y = if b.max.y > b.min.y { self.rng.gen_range(b.min.y..b.max.y) } else { b.min.y };
        State::new(x, y)
    }
}

/// Moves from `from` toward `to`, at most `max_step`.
pub(crate) fn steer(from: &State, to: &State, max_step: f64) -> State {
    let dist = from.distance(to);
    if dist <= max_step {
        *to
    } else {
        from.lerp(to, max_step / dist)
    }
}

pub(crate) fn validate_endpoints(
    grid: &OccupancyGrid,
    start: &State,
    goal: &State,
    params: &PlannerParams,
) -> Result<(), PlannerError> {
    params.validate()?;
    if !grid.is_free(start) {
        return Err(PlannerError::StartInCollision(*start));
    }
    if !grid.is_free(goal) {
        return Err(PlannerError::GoalInCollision(*goal));
    }
    Ok(())
}
