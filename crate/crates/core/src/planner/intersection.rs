use super::{PlannerError, PlannerParams};
use crate::gridmap::{OccupancyGrid, State};

/// States at spacing `delta` from `x_near` toward `x_rand`, ending at `x_rand`.
///
/// `x_k = x_near + k * delta * u` for `k = 1..=floor(L / delta)` with `u` the
/// unit direction and `L` the segment length; `x_rand` is appended unless the
/// last step already landed on it.
pub fn intermediate_states(x_near: &State, x_rand: &State, delta: f64) -> Result<Vec<State>, PlannerError> {
    if x_near == x_rand {
        return Err(PlannerError::CoincidentEndpoints);
    }
    if !(delta > 0.0) {
        return Err(PlannerError::InvalidParams("delta must be positive".into()));
    }
    let len = x_near.distance(x_rand);
    let dir = ((x_rand.x - x_near.x) / len, (x_rand.y - x_near.y) / len);
    let steps = (len / delta).floor() as usize;
    let mut out: Vec<State> = (1..=steps).map(|k| x_near.offset(dir, k as f64 * delta)).collect();
    match out.last_mut() {
        Some(last) if last.distance(x_rand) <= 1e-9 => *last = *x_rand,
        _ => out.push(*x_rand),
    }
    Ok(out)
}

/// Detector state carried from one extension to the next along a tree branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanState {
    /// Whether a blocked ray has been seen (see [`scan_for_opening`]).
    pub armed: bool,
    /// Consecutive free rays ending at the last walked state.
    pub run: usize,
}

impl ScanState {
    pub const ARMED: Self = Self { armed: true, run: 0 };
    pub const UNARMED: Self = Self { armed: false, run: 0 };
}

/// Outcome of walking one extension for an opening.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OpeningScan {
    /// Index into the walked states where the opening was confirmed.
    pub hit: Option<usize>,
    /// State after the last walked point.
    pub state: ScanState,
}

/// Walks `points`, casting a ray of length `params.d` along `dir` from each.
///
/// The consecutive-success counter starts at `state.run` and resets on every
/// blocked ray; the scan stops at the first point where it reaches
/// `params.n_cons`. While unarmed, free rays are ignored until one blocked
/// ray is seen, which keeps an opening that was just used (or skipped) from
/// being reported again for the next command.
pub fn scan_for_opening(
    grid: &OccupancyGrid,
    points: &[State],
    dir: (f64, f64),
    params: &PlannerParams,
    mut state: ScanState,
) -> Result<OpeningScan, PlannerError> {
    for (i, p) in points.iter().enumerate() {
        let free = grid.ray_cast_free(p, dir, params.d)?;
        if !state.armed {
            state.armed = !free;
            continue;
        }
        if free {
            state.run += 1;
            if state.run >= params.n_cons {
                return Ok(OpeningScan { hit: Some(i), state });
            }
        } else {
            state.run = 0;
        }
    }
    Ok(OpeningScan { hit: None, state })
}

/// Looks for an opening along `dir` between `x_near` and `x_rand`.
///
/// Returns the state where `n_cons` consecutive free rays complete and
/// `true`, or `(x_rand, false)` when no such run exists.
pub fn detect_intersection(
    grid: &OccupancyGrid,
    x_near: &State,
    x_rand: &State,
    dir: (f64, f64),
    params: &PlannerParams,
) -> Result<(State, bool), PlannerError> {
    let points = intermediate_states(x_near, x_rand, params.delta)?;
    let scan = scan_for_opening(grid, &points, dir, params, ScanState::ARMED)?;
    Ok(match scan.hit {
        Some(i) => (points[i], true),
        None => (*x_rand, false),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> PlannerParams {
        PlannerParams {
            delta: 1.0,
            n_cons: 3,
            d: 2.0,
            ..PlannerParams::default()
        }
    }

    #[test]
    fn eq7_example() {
        let pts = intermediate_states(&State::new(0.0, 0.0), &State::new(3.0, 4.0), 1.0).unwrap();
        let expected = [(0.6, 0.8), (1.2, 1.6), (1.8, 2.4), (2.4, 3.2), (3.0, 4.0)];
        assert_eq!(pts.len(), expected.len());
        for (p, (x, y)) in pts.iter().zip(expected) {
            assert!((p.x - x).abs() < 1e-12 && (p.y - y).abs() < 1e-12, "{p:?}");
        }
        assert_eq!(*pts.last().unwrap(), State::new(3.0, 4.0));
    }

    #[test]
    fn long_step_yields_endpoint_only() {
        let pts = intermediate_states(&State::new(0.0, 0.0), &State::new(0.3, 0.0), 1.0).unwrap();
        assert_eq!(pts, vec![State::new(0.3, 0.0)]);
        assert_eq!(
            intermediate_states(&State::new(1.0, 1.0), &State::new(1.0, 1.0), 1.0),
            Err(PlannerError::CoincidentEndpoints)
        );
    }

    fn grid(width: usize, height: usize) -> OccupancyGrid {
        // origin shifted so (0,0) is an interior point
        OccupancyGrid::empty(width, height, 1.0, State::new(-5.0, -2.0)).unwrap()
    }

    #[test]
    fn empty_map_hits_third_point() {
        let g = grid(12, 10);
        let (x, turn) =
            detect_intersection(&g, &State::new(0.0, 0.0), &State::new(0.0, 5.0), (1.0, 0.0), &params()).unwrap();
        assert!(turn);
        assert!((x.x).abs() < 1e-12 && (x.y - 3.0).abs() < 1e-12);
    }

    #[test]
    fn solid_wall_never_turns() {
        let mut g = grid(12, 10);
        // column x in [1, 2) is solid
        for row in 0..10 {
            g.set_occupied(6, row, true);
        }
        let (x, turn) =
            detect_intersection(&g, &State::new(0.0, 0.0), &State::new(0.0, 5.0), (1.0, 0.0), &params()).unwrap();
        assert!(!turn);
        assert_eq!(x, State::new(0.0, 5.0));
    }

    #[test]
    fn unarmed_scan_waits_for_a_block() {
        let mut g = grid(12, 10);
        // wall beside y in [4, 5) only
        g.set_occupied(6, 6, true);
        let pts = intermediate_states(&State::new(0.0, 0.0), &State::new(0.0, 7.0), 1.0).unwrap();
        let armed = scan_for_opening(&g, &pts, (1.0, 0.0), &params(), ScanState::ARMED).unwrap();
        assert_eq!(armed.hit, Some(2));
        // free rays at y=1..3 are ignored, y=4 arms, y=5..7 complete the run
        let unarmed = scan_for_opening(&g, &pts, (1.0, 0.0), &params(), ScanState::UNARMED).unwrap();
        assert_eq!(unarmed.hit, Some(6));
        assert!(unarmed.state.armed);
    }
}
