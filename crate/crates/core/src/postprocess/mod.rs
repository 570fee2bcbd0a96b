//! Path smoothing and a pure-pursuit follower for differential-drive robots.

mod follow;
mod smooth;

use std::fmt::Write as _;
use std::str::FromStr;

use thiserror::Error;

use crate::gridmap::Pose;

pub use follow::{simulate_follow, FollowParams};
pub use smooth::{shortcut_path, smooth_path};

#[derive(Debug, Error, PartialEq)]
pub enum PostprocessError {
    #[error("path needs at least 2 states, found {0}")]
    TooFewStates(usize),
    #[error("invalid follower parameters: {0}")]
    InvalidParams(String),
}

/// Differential-drive geometry and wheel limits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RobotKinematics {
    /// Distance between the wheels (m).
    pub track_width: f64,
    pub wheel_radius: f64,
    /// Wheel angular speed limit (rad/s).
    pub max_wheel_speed: f64,
}

impl RobotKinematics {
    pub const DEFAULT_MAX_WHEEL_SPEED: f64 = 6.0;

    pub fn new(track_width: f64, wheel_radius: f64) -> Self {
        Self {
            track_width,
            wheel_radius,
            max_wheel_speed: Self::DEFAULT_MAX_WHEEL_SPEED,
        }
    }

    pub fn pioneer3dx() -> Self {
        Self::new(0.380, 0.097)
    }

    pub fn turtlebot3() -> Self {
        Self::new(0.160, 0.033)
    }

    pub fn turtlebot2() -> Self {
        Self::new(0.230, 0.041)
    }

    /// Forward speed with both wheels at the limit.
    pub fn max_linear_speed(&self) -> f64 {
        self.max_wheel_speed * self.wheel_radius
    }

    /// Wheel speeds `(left, right)` for a unicycle command.
    pub fn wheel_speeds(&self, v: f64, omega: f64) -> (f64, f64) {
        let half = omega * self.track_width / 2.0;
        ((v - half) / self.wheel_radius, (v + half) / self.wheel_radius)
    }

    /// Unicycle command produced by wheel speeds `(left, right)`.
    pub fn unicycle(&self, left: f64, right: f64) -> (f64, f64) {
        let r = self.wheel_radius;
        (r * (left + right) / 2.0, r * (right - left) / self.track_width)
    }
}

impl FromStr for RobotKinematics {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "pioneer3dx" => Ok(Self::pioneer3dx()),
            "turtlebot3" => Ok(Self::turtlebot3()),
            "turtlebot2" => Ok(Self::turtlebot2()),
            other => Err(format!("unknown robot {other:?} (expected pioneer3dx, turtlebot3 or turtlebot2)")),
        }
    }
}

/// Simulated run of the follower.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Trajectory {
    /// `(time, pose)` with strictly increasing time; the first pose is the start.
    pub samples: Vec<(f64, Pose)>,
    /// Distance to the reference path at each sample.
    pub cross_track_errors: Vec<f64>,
    /// Commanded `(left, right)` wheel speeds, one per integration step.
    pub wheel_speeds: Vec<(f64, f64)>,
    pub reached_goal: bool,
    pub timed_out: bool,
}

impl Trajectory {
    pub fn max_cross_track_error(&self) -> f64 {
        self.cross_track_errors.iter().copied().fold(0.0, f64::max)
    }

    /// One `t x y yaw e_ct` line per sample.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for ((t, p), e) in self.samples.iter().zip(&self.cross_track_errors) {
            let _ = writeln!(
                out,
                "{t:.3} {:.6} {:.6} {:.6} {e:.6}",
                p.position.x, p.position.y, p.yaw
            );
        }
        out
    }
}
