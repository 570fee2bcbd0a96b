use std::time::Instant;

use super::intersection::{intermediate_states, scan_for_opening, ScanState};
use super::subset::{get_subset, sample_subset, SamplingSubset};
use super::tree::{extract_path, nearest_where, SearchTree};
use super::{steer, turn_to_direction, validate_endpoints, PlanOutcome, PlannerError, PlannerMetrics, PlannerParams, StateSampler};
use crate::gridmap::{normalize_angle, OccupancyGrid, Pose, State};
use crate::grounding::TurnList;

/// Sampling record of one LASMP run.
#[derive(Debug, Clone, Default)]
pub struct LasmpTrace {
    /// Every subset that was in force, in order.
    pub subsets: Vec<SamplingSubset>,
    /// Each random state with the index of the subset it was drawn from.
    pub samples: Vec<(State, usize)>,
    /// Travel heading after each appended node (index 0 is the root).
    pub headings: Vec<f64>,
}

/// Plans from `start` to `goal` following the ordered commands in `turns`.
///
/// Nearest-node search is limited to nodes that have consumed exactly as
/// many commands as the search has, so every extension continues the current
/// sub-problem and the resulting path passes through each turn node.
///
/// Each sub-problem starts at the node that consumed its command (the start
/// for the first). Its subset slides along the travel heading through that
/// node. Its center is the furthest progress made by any node of the
/// sub-problem lying within `w/2` of that line, and once the command list is
/// exhausted it never passes the goal. Side branches and backtracking nodes
/// therefore cannot drag the sampling region away from the corridor being
/// followed. A command is only consumed on an
/// extension that heads within 45 degrees of the travel direction.
pub fn plan_lasmp(
    grid: &OccupancyGrid,
    start: &Pose,
    goal: &Pose,
    turns: &TurnList,
    params: &PlannerParams,
) -> Result<PlanOutcome, PlannerError> {
    plan_lasmp_traced(grid, start, goal, turns, params).map(|(outcome, _)| outcome)
}

/// [`plan_lasmp`] that also returns the sampling record.
pub fn plan_lasmp_traced(
    grid: &OccupancyGrid,
    start: &Pose,
    goal: &Pose,
    turns: &TurnList,
    params: &PlannerParams,
) -> Result<(PlanOutcome, LasmpTrace), PlannerError> {
    let clock = Instant::now();
    let x_start = start.position;
    let x_goal = goal.position;
    validate_endpoints(grid, &x_start, &x_goal, params)?;

    let commands = &turns.0;
    let mut tree = SearchTree::new(x_start);
    let mut scan_state = vec![ScanState::ARMED];
    let mut sampler = StateSampler::new(params.seed);
    let mut trace = LasmpTrace::default();
    let mut heading = start.yaw;
    let mut stage = 0;
    trace.headings.push(heading);

    let finish = |tree: SearchTree, goal_node: Option<usize>, queries: usize| -> Result<PlanOutcome, PlannerError> {
        let path = goal_node.map(|i| extract_path(&tree, i)).transpose()?;
        let metrics = PlannerMetrics {
            nodes_added: tree.len() - 1,
            sample_queries: queries,
            elapsed: clock.elapsed().as_secs_f64(),
            path_length: path.as_ref().map_or(0.0, |p| p.length()),
            success: path.is_some(),
        };
        Ok(PlanOutcome { path, metrics, tree })
    };

    if commands.is_empty() && x_start.distance(&x_goal) <= params.goal_tol {
        let outcome = finish(tree, Some(0), 0)?;
        return Ok((outcome, trace));
    }

    let goal_cap = |anchor: &Anchor, stage: usize| (stage == commands.len()).then(|| anchor.along(&x_goal));
    let mut anchor = Anchor::new(x_start, heading);
    let mut center = anchor.center(goal_cap(&anchor, stage));
    trace.subsets.push(get_subset(&center, params, heading, grid)?);

    while sampler.queries() < params.max_iters {
        let subset_idx = trace.subsets.len() - 1;
        let x_rand = sample_subset(&trace.subsets[subset_idx], &mut sampler);
        trace.samples.push((x_rand, subset_idx));

        let Some(near) = nearest_where(&tree, &x_rand, |i| tree.commands_consumed(i) == stage) else {
            return Err(PlannerError::EmptyTree);
        };
        let x_near = tree.state(near);
        let mut x_new = steer(&x_near, &x_rand, params.max_step);
        if x_new == x_near || !grid.segment_valid(&x_near, &x_new) {
            continue;
        }

        // a run of free rays only continues along forward extensions
        let mut node_scan = ScanState { run: 0, ..scan_state[near] };
        let mut consumed = None;
        if let (Some(&cmd), true) = (commands.get(stage), anchor.is_forward(&x_near, &x_new)) {
            let dir = turn_to_direction(heading, cmd);
            let points = intermediate_states(&x_near, &x_new, params.delta)?;
            // progress rises along a forward extension, so points behind the
            // entry node form a prefix; they neither arm nor count
            let ahead = points.partition_point(|p| anchor.along(p) <= 0.0);
            if ahead < points.len() {
                let scan = scan_for_opening(grid, &points[ahead..], dir, params, scan_state[near])?;
                node_scan = scan.state;
                if let Some(i) = scan.hit {
                    x_new = points[ahead + i];
                    consumed = Some(cmd);
                }
            }
        }

        let node = tree.push(x_new, near, consumed);
        if let Some(cmd) = consumed {
            // a new sub-problem starts here; its first scan waits for a wall
            node_scan = ScanState::UNARMED;
            heading = normalize_angle(heading + cmd.heading_change());
            stage += 1;
            anchor = Anchor::new(x_new, heading);
        } else {
            anchor.advance(&x_new, params.w / 2.0);
        }
        scan_state.push(node_scan);
        trace.headings.push(heading);

        let next = anchor.center(goal_cap(&anchor, stage));
        if next != center || consumed.is_some() {
            // a center that leaves the domain keeps the previous subset
            if let Ok(subset) = get_subset(&next, params, heading, grid) {
                center = next;
                trace.subsets.push(subset);
            }
        }

        if stage == commands.len() && x_new.distance(&x_goal) <= params.goal_tol {
            let queries = sampler.queries();
            return Ok((finish(tree, Some(node), queries)?, trace));
        }
    }

    let queries = sampler.queries();
    Ok((finish(tree, None, queries)?, trace))
}

/// Line through a sub-problem's entry node along its heading.
struct Anchor {
    origin: State,
    dir: (f64, f64),
    /// Furthest progress along `dir` reached so far.
    reach: f64,
}

impl Anchor {
    fn new(origin: State, heading: f64) -> Self {
        let (s, c) = heading.sin_cos();
        Self { origin, dir: (c, s), reach: 0.0 }
    }

    fn along(&self, p: &State) -> f64 {
        (p.x - self.origin.x) * self.dir.0 + (p.y - self.origin.y) * self.dir.1
    }

    /// Extends the reach to `p` unless it lies more than `half_width` off the line.
    fn advance(&mut self, p: &State, half_width: f64) {
        let lateral = -(p.x - self.origin.x) * self.dir.1 + (p.y - self.origin.y) * self.dir.0;
        if lateral.abs() <= half_width {
            self.reach = self.reach.max(self.along(p));
        }
    }

    fn center(&self, cap: Option<f64>) -> State {
        let t = cap.map_or(self.reach, |c| self.reach.min(c));
        self.origin.offset(self.dir, t)
    }

    /// Whether `a -> b` heads within 45 degrees of the travel direction.
    fn is_forward(&self, a: &State, b: &State) -> bool {
        let (dx, dy) = (b.x - a.x, b.y - a.y);
        let fwd = dx * self.dir.0 + dy * self.dir.1;
        let lat = -dx * self.dir.1 + dy * self.dir.0;
        fwd > lat.abs()
    }
}
