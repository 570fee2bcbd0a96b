use super::{OccupancyGrid, State};

/// Visits every cell the closed segment `a -> b` passes through.
///
/// The parameter line is split at each crossing of a vertical or horizontal
/// grid line. Inside an open interval between two crossings the cell is
/// constant, so probing the interval midpoints plus the crossing points
/// themselves covers the full cell set.
pub(super) fn segment_clear(grid: &OccupancyGrid, a: &State, b: &State) -> bool {
    if !grid.is_free(a) || !grid.is_free(b) {
        return false;
    }
    if a == b {
        return true;
    }

    let res = grid.resolution;
    let origin = grid.origin;
    let mut ts: Vec<f64> = Vec::with_capacity(64);
    ts.push(0.0);
    push_crossings(&mut ts, a.x - origin.x, b.x - origin.x, res);
    push_crossings(&mut ts, a.y - origin.y, b.y - origin.y, res);
    ts.push(1.0);
    ts.sort_by(|p, q| p.total_cmp(q));
    ts.dedup();

    for pair in ts.windows(2) {
        let mid = a.lerp(b, 0.5 * (pair[0] + pair[1]));
        if !grid.is_free(&mid) {
            return false;
        }
        if !grid.is_free(&a.lerp(b, pair[1])) {
            return false;
        }
    }
    true
}

/// Appends the strictly interior parameters `t` at which the coordinate
/// moving from `p0` to `p1` (grid-relative) crosses a multiple of `res`.
fn push_crossings(ts: &mut Vec<f64>, p0: f64, p1: f64, res: f64) {
    let delta = p1 - p0;
    if delta == 0.0 {
        return;
    }
    let (lo, hi) = if p0 < p1 { (p0, p1) } else { (p1, p0) };
    let first = (lo / res).floor() as i64 + 1;
    let last = (hi / res).ceil() as i64 - 1;
    for k in first..=last {
        let t = (k as f64 * res - p0) / delta;
        if t > 0.0 && t < 1.0 {
            ts.push(t);
        }
    }
}
