use std::time::Instant;

use super::tree::{extract_path, nearest_node, SearchTree};
use super::{steer, validate_endpoints, PlanOutcome, PlannerError, PlannerMetrics, PlannerParams, StateSampler};
use crate::gridmap::{OccupancyGrid, Pose};

/// Classical RRT with uniform sampling over the grid extents.
pub fn plan_rrt(
    grid: &OccupancyGrid,
    start: &Pose,
    goal: &Pose,
    params: &PlannerParams,
) -> Result<PlanOutcome, PlannerError> {
    let clock = Instant::now();
    let x_start = start.position;
    let x_goal = goal.position;
    validate_endpoints(grid, &x_start, &x_goal, params)?;

    let domain = grid.bounds();
    let mut tree = SearchTree::new(x_start);
    let mut sampler = StateSampler::new(params.seed);
    let mut goal_node = (x_start.distance(&x_goal) <= params.goal_tol).then_some(0);

    while goal_node.is_none() && sampler.queries() < params.max_iters {
        let x_rand = sampler.sample_uniform(&domain);
        let near = nearest_node(&tree, &x_rand)?;
        let x_near = tree.state(near);
        let x_new = steer(&x_near, &x_rand, params.max_step);
        if x_new == x_near || !grid.segment_valid(&x_near, &x_new) {
            continue;
        }
        let node = tree.push(x_new, near, None);
        if x_new.distance(&x_goal) <= params.goal_tol {
            goal_node = Some(node);
        }
    }

    let path = goal_node.map(|i| extract_path(&tree, i)).transpose()?;
    let metrics = PlannerMetrics {
        nodes_added: tree.len() - 1,
        sample_queries: sampler.queries(),
        elapsed: clock.elapsed().as_secs_f64(),
        path_length: path.as_ref().map_or(0.0, |p| p.length()),
        success: path.is_some(),
    };
    Ok(PlanOutcome { path, metrics, tree })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gridmap::State;

    #[test]
    fn open_map_seeded_run() {
        let g = OccupancyGrid::empty(100, 100, 0.1, State::new(0.0, 0.0)).unwrap();
        let params = PlannerParams { seed: 42, ..PlannerParams::for_grid(&g) };
        let out = plan_rrt(&g, &Pose::new(1.0, 1.0, 0.0), &Pose::new(9.0, 9.0, 0.0), &params).unwrap();
        assert!(out.metrics.success);
        let path = out.path.unwrap();
        for w in path.states.windows(2) {
            assert!(g.segment_valid(&w[0], &w[1]));
        }
        assert!(out.metrics.sample_queries >= out.metrics.nodes_added);
        assert!((out.metrics.path_length - path.length()).abs() < 1e-12);
    }

    #[test]
    fn start_at_goal() {
        let g = OccupancyGrid::empty(10, 10, 1.0, State::new(0.0, 0.0)).unwrap();
        let p = Pose::new(5.0, 5.0, 0.0);
        let out = plan_rrt(&g, &p, &p, &PlannerParams::default()).unwrap();
        assert_eq!(out.path.unwrap().states, vec![p.position]);
        assert_eq!(out.metrics.sample_queries, 0);
    }
}
