use std::f64::consts::FRAC_PI_2;

use super::{PostprocessError, RobotKinematics, Trajectory};
use crate::gridmap::{normalize_angle, Pose, State};

#[derive(Debug, Clone, PartialEq)]
pub struct FollowParams {
    /// Arc distance from the closest path point to the pursued point (m).
    pub lookahead: f64,
    /// Integration step (s).
    pub dt: f64,
    /// Stop once this close to the final path point (m).
    pub goal_tol: f64,
    /// Cruise speed as a fraction of the robot's top speed.
    pub speed_fraction: f64,
    /// Simulated time limit (s); `None` scales with path length.
    pub time_budget: Option<f64>,
}

impl Default for FollowParams {
    fn default() -> Self {
        Self {
            lookahead: 0.5,
            dt: 0.02,
            goal_tol: 0.05,
            speed_fraction: 0.8,
            time_budget: None,
        }
    }
}

/// Polyline with cumulative arc length.
struct Reference<'a> {
    pts: &'a [State],
    arc: Vec<f64>,
}

impl<'a> Reference<'a> {
    fn new(pts: &'a [State]) -> Self {
        let mut arc = vec![0.0];
        for w in pts.windows(2) {
            arc.push(arc.last().unwrap() + w[0].distance(&w[1]));
        }
        Self { pts, arc }
    }

    fn total(&self) -> f64 {
        *self.arc.last().unwrap()
    }

    /// Closest point with arc position in `[from, to]`: `(arc, distance)`.
    fn project(&self, p: &State, from: f64, to: f64) -> (f64, f64) {
        let mut best = (from, f64::INFINITY);
        for i in 0..self.pts.len() - 1 {
            let (s0, s1) = (self.arc[i], self.arc[i + 1]);
            if s1 < from || s0 > to || s1 == s0 {
                continue;
            }
            let (a, b) = (self.pts[i], self.pts[i + 1]);
            let (dx, dy) = (b.x - a.x, b.y - a.y);
            let len = s1 - s0;
            let u = (((p.x - a.x) * dx + (p.y - a.y) * dy) / (len * len)).clamp(0.0, 1.0);
            let s = (s0 + u * len).clamp(from, to);
            let q = self.at(s);
            let d = q.distance(p);
            if d < best.1 {
                best = (s, d);
            }
        }
        best
    }

    fn at(&self, s: f64) -> State {
        let s = s.clamp(0.0, self.total());
        let i = self.arc.partition_point(|&a| a <= s).saturating_sub(1).min(self.pts.len() - 2);
        let len = self.arc[i + 1] - self.arc[i];
        if len == 0.0 {
            return self.pts[i];
        }
        self.pts[i].lerp(&self.pts[i + 1], (s - self.arc[i]) / len)
    }
}

/// Simulates a differential-drive robot tracking `path` with pure pursuit.
///
/// Each step projects the robot onto the path (searching forward from the
/// previous projection), pursues the point `lookahead` further along, and
/// commands curvature `2 sin(alpha) / l` at the cruise speed, where `l` is
/// the distance to that point capped at `lookahead` (the two differ only once
/// the target is clamped to the path end). Wheel
/// speeds are scaled down together when one would exceed the limit, which
/// keeps the commanded curvature. A target behind the robot
/// (`|alpha| > pi/2`) is handled by turning on the spot.
pub fn simulate_follow(
    path: &[State],
    start: &Pose,
    kin: &RobotKinematics,
    params: &FollowParams,
) -> Result<Trajectory, PostprocessError> {
    if path.len() < 2 {
        return Err(PostprocessError::TooFewStates(path.len()));
    }
    let fail = |m: &str| Err(PostprocessError::InvalidParams(m.to_string()));
    if !(params.lookahead > 0.0) {
        return fail("lookahead must be positive");
    }
    if !(params.dt > 0.0) {
        return fail("dt must be positive");
    }
    if !(params.speed_fraction > 0.0 && params.speed_fraction <= 1.0) {
        return fail("speed_fraction must be in (0, 1]");
    }
    if !(kin.track_width > 0.0 && kin.wheel_radius > 0.0 && kin.max_wheel_speed > 0.0) {
        return fail("kinematic parameters must be positive");
    }

    let reference = Reference::new(path);
    let total = reference.total();
    let goal = *path.last().unwrap();
    let cruise = params.speed_fraction * kin.max_linear_speed();
    let budget = params.time_budget.unwrap_or(3.0 * total / cruise + 30.0);
    // how far the projection may jump ahead in one step
    let window = params.lookahead + 2.0 * cruise * params.dt + 0.05;

    let mut traj = Trajectory::default();
    let mut pose = *start;
    let mut t = 0.0;
    let (mut s, e0) = reference.project(&pose.position, 0.0, window);
    traj.samples.push((t, pose));
    traj.cross_track_errors.push(e0);

    loop {
        if pose.position.distance(&goal) <= params.goal_tol && s >= total - params.lookahead {
            traj.reached_goal = true;
            break;
        }
        if t >= budget {
            traj.timed_out = true;
            break;
        }
        let target = reference.at(s + params.lookahead);
        let bearing = (target.y - pose.position.y).atan2(target.x - pose.position.x);
        let alpha = normalize_angle(bearing - pose.yaw);

        let (left, right) = if alpha.abs() > FRAC_PI_2 {
            let w = 0.5 * kin.max_wheel_speed;
            if alpha > 0.0 {
                (-w, w)
            } else {
                (w, -w)
            }
        } else {
            // chord to the target; shorter than the lookahead only near the end
            let chord = target.distance(&pose.position).clamp(1e-3, params.lookahead);
            let kappa = 2.0 * alpha.sin() / chord;
            // ease off over the last lookahead so the robot settles on the goal
            let remaining = pose.position.distance(&goal);
            let v = cruise * (remaining / params.lookahead).clamp(0.2, 1.0);
            let (l, r) = kin.wheel_speeds(v, kappa * v);
            let peak = l.abs().max(r.abs());
            let scale = if peak > kin.max_wheel_speed { kin.max_wheel_speed / peak } else { 1.0 };
            (l * scale, r * scale)
        };
        traj.wheel_speeds.push((left, right));

        let (v, omega) = kin.unicycle(left, right);
        let (sin, cos) = pose.yaw.sin_cos();
        pose = Pose::new(
            pose.position.x + v * cos * params.dt,
            pose.position.y + v * sin * params.dt,
            pose.yaw + omega * params.dt,
        );
        t += params.dt;
        let (ns, e) = reference.project(&pose.position, s, s + window);
        s = ns;
        traj.samples.push((t, pose));
        traj.cross_track_errors.push(e);
    }
    Ok(traj)
}
