use super::PostprocessError;
use crate::gridmap::{OccupancyGrid, State};
use crate::planner::Path;

/// Drops waypoints that a straight collision-free segment can skip.
///
/// Greedy: from each kept waypoint, jump to the furthest later one in line
/// of sight. Endpoints are kept; turn events are not carried over.
pub fn shortcut_path(grid: &OccupancyGrid, path: &Path) -> Path {
    let s = &path.states;
    let mut states = Vec::new();
    if let Some(&first) = s.first() {
        states.push(first);
    }
    let mut i = 0;
    while i + 1 < s.len() {
        let mut j = s.len() - 1;
        while j > i + 1 && !grid.segment_valid(&s[i], &s[j]) {
            j -= 1;
        }
        states.push(s[j]);
        i = j;
    }
    Path { states, turn_events: vec![] }
}

/// Natural cubic spline through `path`, parametrized by chord length and
/// resampled at `samples_per_segment` points per waypoint span.
///
/// Endpoints and waypoints are reproduced exactly. Any span whose samples
/// are not pairwise connected by collision-free segments reverts to the
/// straight edge of the original path.
pub fn smooth_path(grid: &OccupancyGrid, path: &Path, samples_per_segment: usize) -> Result<Vec<State>, PostprocessError> {
    let mut pts: Vec<State> = Vec::with_capacity(path.states.len());
    for s in &path.states {
        if pts.last() != Some(s) {
            pts.push(*s);
        }
    }
    if path.states.len() < 2 {
        return Err(PostprocessError::TooFewStates(path.states.len()));
    }
    if pts.len() < 2 {
        return Ok(vec![path.states[0], *path.states.last().unwrap()]);
    }
    let per = samples_per_segment.max(1);

    let mut t = vec![0.0];
    for w in pts.windows(2) {
        t.push(t.last().unwrap() + w[0].distance(&w[1]));
    }
    let xs: Vec<f64> = pts.iter().map(|p| p.x).collect();
    let ys: Vec<f64> = pts.iter().map(|p| p.y).collect();
    let mx = natural_second_derivatives(&t, &xs);
    let my = natural_second_derivatives(&t, &ys);

    let mut out = vec![pts[0]];
    for i in 0..pts.len() - 1 {
        let h = t[i + 1] - t[i];
        let mut span: Vec<State> = (1..per)
            .map(|k| {
                let u = k as f64 / per as f64;
                State::new(
                    eval(xs[i], xs[i + 1], mx[i], mx[i + 1], h, u),
                    eval(ys[i], ys[i + 1], my[i], my[i + 1], h, u),
                )
            })
            .collect();
        span.push(pts[i + 1]);

        let mut prev = pts[i];
        let clear = span.iter().all(|p| {
            let ok = grid.segment_valid(&prev, p);
            prev = *p;
            ok
        });
        if !clear {
            span = (1..=per).map(|k| pts[i].lerp(&pts[i + 1], k as f64 / per as f64)).collect();
            span[per - 1] = pts[i + 1];
        }
        out.extend(span);
    }
    Ok(out)
}

/// Evaluates one cubic span at fraction `u` of its length `h`, given the end
/// values and second derivatives.
fn eval(y0: f64, y1: f64, m0: f64, m1: f64, h: f64, u: f64) -> f64 {
    let v = 1.0 - u;
    v * y0 + u * y1 + h * h / 6.0 * ((v * v * v - v) * m0 + (u * u * u - u) * m1)
}

/// Second derivatives at the knots for natural end conditions (Thomas algorithm).
fn natural_second_derivatives(t: &[f64], y: &[f64]) -> Vec<f64> {
    let n = t.len();
    let mut m = vec![0.0; n];
    if n < 3 {
        return m;
    }
    let inner = n - 2;
    let mut diag = vec![0.0; inner];
    let mut rhs = vec![0.0; inner];
    let mut upper = vec![0.0; inner];
    for k in 0..inner {
        let i = k + 1;
        let (h0, h1) = (t[i] - t[i - 1], t[i + 1] - t[i]);
        diag[k] = 2.0 * (h0 + h1);
        upper[k] = h1;
        rhs[k] = 6.0 * ((y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0);
    }
    // forward sweep; the sub-diagonal entry of row k is h0 of knot k+1
    for k in 1..inner {
        let lower = t[k + 1] - t[k];
        let f = lower / diag[k - 1];
        diag[k] -= f * upper[k - 1];
        rhs[k] -= f * rhs[k - 1];
    }
    for k in (0..inner).rev() {
        m[k + 1] = (rhs[k] - upper[k] * m[k + 2]) / diag[k];
    }
    m
}
