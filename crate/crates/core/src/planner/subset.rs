//! Oriented rectangular sampling subsets.

use std::f64::consts::FRAC_PI_2;

use super::{PlannerError, PlannerParams, StateSampler};
use crate::gridmap::{Bounds, OccupancyGrid, State};

/// Rectangle of width `w` (across the heading) and height `h` (along the
/// heading) centered on an anchor state, clipped to the planning domain.
#[derive(Debug, Clone, PartialEq)]
pub struct SamplingSubset {
    pub center: State,
    pub half_w: f64,
    pub half_h: f64,
    /// Travel direction the `h` axis is aligned with.
    pub heading: f64,
    /// Unclipped corners, in the order `x + [w/2, h/2]`, `x + [w/2, -h/2]`,
    /// `x - [w/2, h/2]`, `x - [w/2, -h/2]` for heading pi/2.
    pub vertices: [State; 4],
    /// Counter-clockwise convex polygon after clipping to the domain.
    pub clipped_polygon: Vec<State>,
    bbox: Bounds,
}

impl SamplingSubset {
    /// Builds the subset; `domain = None` leaves it unclipped.
    pub fn new(
        center: State,
        w: f64,
        h: f64,
        heading: f64,
        domain: Option<&Bounds>,
    ) -> Result<Self, PlannerError> {
        let (half_w, half_h) = (w / 2.0, h / 2.0);
        let rot = heading - FRAC_PI_2;
        let (s, c) = rot.sin_cos();
        let corner = |lx: f64, ly: f64| State::new(center.x + c * lx - s * ly, center.y + s * lx + c * ly);
        let vertices = [
            corner(half_w, half_h),
            corner(half_w, -half_h),
            corner(-half_w, -half_h),
            corner(-half_w, half_h),
        ];
        // the corner order above is clockwise; flip for the clipper
        let mut polygon: Vec<State> = vertices.iter().rev().copied().collect();
        if let Some(b) = domain {
            polygon = clip_to_box(&polygon, b);
        }
        if polygon.len() < 3 || polygon_area(&polygon) <= 1e-12 {
            return Err(PlannerError::EmptySubset);
        }
        let bbox = bounding_box(&polygon);
        Ok(Self {
            center,
            half_w,
            half_h,
            heading,
            vertices,
            clipped_polygon: polygon,
            bbox,
        })
    }

    pub fn area(&self) -> f64 {
        polygon_area(&self.clipped_polygon)
    }

    pub fn bounding_box(&self) -> Bounds {
        self.bbox
    }

    /// Point-in-polygon test against the clipped region (boundary included).
    pub fn contains(&self, p: &State) -> bool {
        let poly = &self.clipped_polygon;
        let scale = self.half_w.max(self.half_h).max(1.0);
        (0..poly.len()).all(|i| {
            let a = poly[i];
            let b = poly[(i + 1) % poly.len()];
            cross(&a, &b, p) >= -1e-12 * scale * scale
        })
    }
}

/// Subset anchored at `x` with the `h` axis along `heading`, clipped to the
/// grid extents.
pub fn get_subset(
    x: &State,
    params: &PlannerParams,
    heading: f64,
    grid: &OccupancyGrid,
) -> Result<SamplingSubset, PlannerError> {
    let domain = grid.bounds();
    if !domain.contains(x) {
        return Err(PlannerError::OutOfDomain(*x));
    }
    SamplingSubset::new(*x, params.w, params.h, heading, Some(&domain))
}

/// Draws a state uniformly from the clipped subset by rejection from its
/// bounding box. Counts as one query to the random state generator.
pub fn sample_subset(subset: &SamplingSubset, sampler: &mut StateSampler) -> State {
    let b = subset.bbox;
    sampler.sample_where(&b, |p| subset.contains(p))
}

/// Ratio of the domain area to the subset area.
pub fn subset_gain(grid: &OccupancyGrid, subset: &SamplingSubset) -> Result<f64, PlannerError> {
    let area = subset.area();
    if area <= 0.0 {
        return Err(PlannerError::EmptySubset);
    }
    Ok(grid.bounds().area() / area)
}

fn cross(a: &State, b: &State, p: &State) -> f64 {
    (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x)
}

/// Shoelace area (absolute).
pub fn polygon_area(poly: &[State]) -> f64 {
    let n = poly.len();
    let twice: f64 = (0..n)
        .map(|i| {
            let (a, b) = (poly[i], poly[(i + 1) % n]);
            a.x * b.y - b.x * a.y
        })
        .sum();
    twice.abs() / 2.0
}

fn bounding_box(poly: &[State]) -> Bounds {
    let mut min = State::new(f64::INFINITY, f64::INFINITY);
    let mut max = State::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in poly {
        min.x = min.x.min(p.x);
        min.y = min.y.min(p.y);
        max.x = max.x.max(p.x);
        max.y = max.y.max(p.y);
    }
    Bounds::new(min, max)
}

/// Sutherland-Hodgman clipping of a convex polygon against a box.
fn clip_to_box(poly: &[State], b: &Bounds) -> Vec<State> {
    let edges: [(fn(&State, &Bounds) -> f64, bool); 4] = [
        (|p, b| p.x - b.min.x, true),
        (|p, b| b.max.x - p.x, true),
        (|p, b| p.y - b.min.y, false),
        (|p, b| b.max.y - p.y, false),
    ];
    let mut out = poly.to_vec();
    for (dist, vertical) in edges {
        if out.is_empty() {
            break;
        }
        let input = std::mem::take(&mut out);
        for i in 0..input.len() {
            let cur = input[i];
            let prev = input[(i + input.len() - 1) % input.len()];
            let (dc, dp) = (dist(&cur, b), dist(&prev, b));
            if dc >= 0.0 {
                if dp < 0.0 {
                    out.push(intersect(&prev, &cur, dp, dc, vertical, b));
                }
                out.push(cur);
            } else if dp >= 0.0 {
                out.push(intersect(&prev, &cur, dp, dc, vertical, b));
            }
        }
    }
    out.dedup_by(|a, b| (a.x - b.x).abs() < 1e-15 && (a.y - b.y).abs() < 1e-15);
    out
}

fn intersect(p: &State, q: &State, dp: f64, dq: f64, vertical: bool, b: &Bounds) -> State {
    let t = dp / (dp - dq);
    let mut s = p.lerp(q, t);
    // snap onto the clip line so the result stays inside the domain
    if vertical {
        s.x = if (s.x - b.min.x).abs() < (s.x - b.max.x).abs() { b.min.x } else { b.max.x };
    } else {
        s.y = if (s.y - b.min.y).abs() < (s.y - b.max.y).abs() { b.min.y } else { b.max.y };
    }
    s
}
