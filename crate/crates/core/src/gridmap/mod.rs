//! Occupancy-grid planning domain.
//!
//! A grid is a row-major array of occupied/free flags anchored at a world
//! origin. Row 0 is the minimum-y row. A world point belongs to cell
//! `floor((p - origin) / resolution)`, so points on a shared edge fall into
//! the higher-index cell. Anything outside the grid extents is treated as
//! occupied.

mod io;
mod traverse;

use std::f64::consts::PI;
use std::fmt;

use thiserror::Error;

pub use io::{load_map, write_map};

/// Errors raised while building or querying a grid.
#[derive(Debug, Error, PartialEq)]
pub enum GridError {
    #[error("malformed header: {0}")]
    MalformedHeader(String),
    #[error("row length mismatch: row {row} has {found} cells, expected {expected}")]
    RowLengthMismatch {
        row: usize,
        found: usize,
        expected: usize,
    },
    #[error("illegal cell character {ch:?} in row {row}")]
    IllegalCell { row: usize, ch: char },
    #[error("expected {expected} rows, found {found}")]
    RowCountMismatch { expected: usize, found: usize },
    #[error("invalid grid geometry: {0}")]
    InvalidGeometry(String),
    #[error("negative inflation radius {0}")]
    NegativeRadius(f64),
    #[error("ray direction is not a unit vector (norm {0})")]
    NonUnitDirection(f64),
    #[error("ray range must be positive, got {0}")]
    NonPositiveRange(f64),
}

/// A position in the plane, in meters.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct State {
    pub x: f64,
    pub y: f64,
}

impl State {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn distance(&self, other: &State) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// `self + t * dir`
    pub fn offset(&self, dir: (f64, f64), t: f64) -> State {
        State::new(self.x + t * dir.0, self.y + t * dir.1)
    }

    pub fn lerp(&self, other: &State, t: f64) -> State {
        State::new(
            self.x + t * (other.x - self.x),
            self.y + t * (other.y - self.y),
        )
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Wraps an angle into (-pi, pi].
pub fn normalize_angle(theta: f64) -> f64 {
    let mut a = theta % (2.0 * PI);
    if a <= -PI {
        a += 2.0 * PI;
    } else if a > PI {
        a -= 2.0 * PI;
    }
    a
}

/// Planar pose: position plus yaw in (-pi, pi].
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Pose {
    pub position: State,
    pub yaw: f64,
}

impl Pose {
    pub fn new(x: f64, y: f64, yaw: f64) -> Self {
        Self {
            position: State::new(x, y),
            yaw: normalize_angle(yaw),
        }
    }
}

/// Axis-aligned world rectangle `[min, max]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bounds {
    pub min: State,
    pub max: State,
}

impl Bounds {
    pub fn new(min: State, max: State) -> Self {
        Self { min, max }
    }

    pub fn area(&self) -> f64 {
        (self.max.x - self.min.x) * (self.max.y - self.min.y)
    }

    pub fn contains(&self, s: &State) -> bool {
        s.x >= self.min.x && s.x <= self.max.x && s.y >= self.min.y && s.y <= self.max.y
    }
}

/// Boolean occupancy grid with an optional inflation record.
#[derive(Debug, Clone, PartialEq)]
pub struct OccupancyGrid {
    width: usize,
    height: usize,
    resolution: f64,
    origin: State,
    cells: Vec<bool>,
    inflation_radius: f64,
}

impl OccupancyGrid {
    /// Builds a grid from row-major occupancy flags (row 0 = minimum y).
    pub fn new(
        width: usize,
        height: usize,
        resolution: f64,
        origin: State,
        cells: Vec<bool>,
    ) -> Result<Self, GridError> {
        if width == 0 || height == 0 {
            return Err(GridError::InvalidGeometry(format!(
                "grid must be at least 1x1, got {width}x{height}"
            )));
        }
        if !(resolution > 0.0 && resolution.is_finite()) {
            return Err(GridError::InvalidGeometry(format!(
                "resolution must be positive, got {resolution}"
            )));
        }
        if !origin.is_finite() {
            return Err(GridError::InvalidGeometry("origin must be finite".into()));
        }
        if cells.len() != width * height {
            return Err(GridError::InvalidGeometry(format!(
                "{} cells supplied for a {width}x{height} grid",
                cells.len()
            )));
        }
        Ok(Self {
            width,
            height,
            resolution,
            origin,
            cells,
            inflation_radius: 0.0,
        })
    }

    /// An obstacle-free grid.
    pub fn empty(width: usize, height: usize, resolution: f64, origin: State) -> Result<Self, GridError> {
        Self::new(width, height, resolution, origin, vec![false; width * height])
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn resolution(&self) -> f64 {
        self.resolution
    }

    pub fn origin(&self) -> State {
        self.origin
    }

    pub fn inflation_radius(&self) -> f64 {
        self.inflation_radius
    }

    pub fn cells(&self) -> &[bool] {
        &self.cells
    }

    /// World extents in meters: `(width * resolution, height * resolution)`.
    pub fn extents(&self) -> (f64, f64) {
        (
            self.width as f64 * self.resolution,
            self.height as f64 * self.resolution,
        )
    }

    pub fn bounds(&self) -> Bounds {
        let (ex, ey) = self.extents();
        Bounds::new(
            self.origin,
            State::new(self.origin.x + ex, self.origin.y + ey),
        )
    }

    pub fn is_occupied(&self, col: usize, row: usize) -> bool {
        self.cells[row * self.width + col]
    }

    pub fn set_occupied(&mut self, col: usize, row: usize, occupied: bool) {
        self.cells[row * self.width + col] = occupied;
    }

    pub fn occupied_count(&self) -> usize {
        self.cells.iter().filter(|&&c| c).count()
    }

    /// World coordinates of a cell center.
    pub fn cell_center(&self, col: usize, row: usize) -> State {
        State::new(
            self.origin.x + (col as f64 + 0.5) * self.resolution,
            self.origin.y + (row as f64 + 0.5) * self.resolution,
        )
    }

    /// Cell containing `s`, or `None` when `s` lies outside the grid.
    pub fn cell_of(&self, s: &State) -> Option<(usize, usize)> {
        let fx = ((s.x - self.origin.x) / self.resolution).floor();
        let fy = ((s.y - self.origin.y) / self.resolution).floor();
        if !(fx >= 0.0 && fy >= 0.0) {
            return None;
        }
        let (col, row) = (fx as usize, fy as usize);
        (col < self.width && row < self.height).then_some((col, row))
    }

    /// True iff `s` is inside the grid and its cell is unoccupied.
    pub fn is_free(&self, s: &State) -> bool {
        match self.cell_of(s) {
            Some((c, r)) => !self.is_occupied(c, r),
            None => false,
        }
    }

    /// Dilates obstacles: a cell becomes occupied iff its center lies within
    /// `radius` of some occupied cell center.
    pub fn inflate(&self, radius: f64) -> Result<OccupancyGrid, GridError> {
        if radius.is_nan() || radius < 0.0 {
            return Err(GridError::NegativeRadius(radius));
        }
        let mut out = self.clone();
        out.inflation_radius = self.inflation_radius + radius;
        if radius == 0.0 {
            return Ok(out);
        }
        let reach = radius / self.resolution;
        let limit = reach * reach * (1.0 + 1e-9);
        let span = reach.floor() as isize;
        let mut stencil = Vec::new();
        for dj in -span..=span {
            for di in -span..=span {
                if ((di * di + dj * dj) as f64) <= limit {
                    stencil.push((di, dj));
                }
            }
        }
        let (w, h) = (self.width as isize, self.height as isize);
        for row in 0..self.height {
            for col in 0..self.width {
                if !self.is_occupied(col, row) {
                    continue;
                }
                for &(di, dj) in &stencil {
                    let (c, r) = (col as isize + di, row as isize + dj);
                    if c >= 0 && r >= 0 && c < w && r < h {
                        out.cells[r as usize * self.width + c as usize] = true;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Collision check for the straight segment `a -> b`.
    ///
    /// Every cell touched by the segment (under the floor membership rule)
    /// must be free, which implies every sample point along the segment is
    /// free for any sampling spacing.
    pub fn segment_valid(&self, a: &State, b: &State) -> bool {
        traverse::segment_clear(self, a, b)
    }

    /// True iff the ray `origin + t * dir`, `t` in `[0, range]`, stays in free space.
    pub fn ray_cast_free(
        &self,
        origin: &State,
        dir: (f64, f64),
        range: f64,
    ) -> Result<bool, GridError> {
        let norm = dir.0.hypot(dir.1);
        if !((norm - 1.0).abs() <= 1e-9) {
            return Err(GridError::NonUnitDirection(norm));
        }
        if !(range > 0.0) {
            return Err(GridError::NonPositiveRange(range));
        }
        Ok(traverse::segment_clear(self, origin, &origin.offset(dir, range)))
    }
}

/// Free-function form of [`OccupancyGrid::inflate`].
pub fn inflate(grid: &OccupancyGrid, radius: f64) -> Result<OccupancyGrid, GridError> {
    grid.inflate(radius)
}
