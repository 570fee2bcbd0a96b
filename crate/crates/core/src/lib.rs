//! Language-guided subset-sampling motion planning on 2D occupancy grids.
//!
//! The crate is split along the processing chain:
//!
//! - [`gridmap`]: occupancy grids, inflation, collision checks, ray casting
//! - [`grounding`]: instruction text to ordered navigation commands and zones
//! - [`planner`]: the subset-sampling planner (LASMP) and an RRT baseline
//! - [`postprocess`]: spline smoothing and a pure-pursuit differential-drive follower
//! - [`bench`]: scenario files, seeded comparisons, reports and SVG rendering

pub mod bench;
pub mod gridmap;
pub mod grounding;
pub mod planner;
pub mod postprocess;
mod textfmt;

pub use gridmap::{Bounds, OccupancyGrid, Pose, State};
pub use grounding::{NavCommand, TurnList};
pub use planner::{Path, PlannerMetrics, PlannerParams, SearchTree};
