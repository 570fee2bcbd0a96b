//! Helpers shared by the integration tests and the acceptance harness.
#![allow(dead_code)]

use std::fs;
use std::path::PathBuf;

use lasmp::bench::{load_scenario_file, Scenario};
use lasmp::grounding::{entity_sequence, ZoneLexicon};
use lasmp::planner::{turn_to_direction, Path};
use lasmp::{NavCommand, OccupancyGrid, Pose, State, TurnList};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

pub fn scenario(name: &str) -> Scenario {
    let path = data_dir().join("scenarios").join(format!("{name}.scn"));
    load_scenario_file(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

/// The nine suite scenarios: three maps by two, three and four turns.
pub const SUITE: [&str; 9] = ["de-2", "de-3", "de-4", "os-2", "os-3", "os-4", "ro-2", "ro-3", "ro-4"];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Household zones used by the grounding corpora.
pub fn home_lexicon() -> ZoneLexicon {
    let mut lex = ZoneLexicon::default();
    for (i, name) in ["bedroom", "kitchen", "living room", "dining room", "bathroom", "laundry"].iter().enumerate() {
        lex.insert(name, Pose::new(i as f64 + 0.5, 1.0, 0.0)).unwrap();
    }
    lex
}

/// `(sentence, expected labels)` rows of a tab-separated corpus file.
pub fn corpus(name: &str) -> Vec<(String, Vec<String>)> {
    let path = data_dir().join("corpus").join(name);
    let text = fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    text.lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let (sentence, labels) = l.split_once('\t').unwrap_or_else(|| panic!("no tab in {l:?}"));
            let labels = labels.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
            (sentence.to_string(), labels)
        })
        .collect()
}

/// Rows whose extracted labels differ from the expected ones.
pub fn corpus_mismatches(rows: &[(String, Vec<String>)], lex: &ZoneLexicon) -> Vec<(String, Vec<String>, Vec<String>)> {
    rows.iter()
        .filter_map(|(sentence, expected)| {
            let got: Vec<String> = entity_sequence(sentence, lex).iter().map(|e| e.label()).collect();
            (&got != expected).then(|| (sentence.clone(), expected.clone(), got))
        })
        .collect()
}

/// Free-space check by dense point sampling at `spacing`, endpoints included.
pub fn sampled_segment_free(grid: &OccupancyGrid, a: &State, b: &State, spacing: f64) -> bool {
    let n = (a.distance(b) / spacing).ceil().max(1.0) as usize;
    (0..=n).all(|k| grid.is_free(&a.lerp(b, k as f64 / n as f64)))
}

/// Every edge of `path` is free when sampled at a tenth of the cell size.
pub fn path_valid(grid: &OccupancyGrid, path: &Path) -> bool {
    let spacing = grid.resolution() / 10.0;
    path.states.iter().all(|s| grid.is_free(s))
        && path.states.windows(2).all(|w| sampled_segment_free(grid, &w[0], &w[1], spacing))
}

/// Checks the turn events of a LASMP path against the command list: the
/// commands appear in order, and at each motion turn the opening is free for
/// `d` in the commanded direction. Returns a description of the first problem.
pub fn check_turn_events(grid: &OccupancyGrid, path: &Path, start_yaw: f64, turns: &TurnList, d: f64) -> Result<(), String> {
    let got: Vec<NavCommand> = path.turn_events.iter().map(|e| e.command).collect();
    if got != turns.0 {
        return Err(format!("turn events {got:?} differ from {:?}", turns.0));
    }
    let mut heading = start_yaw;
    for ev in &path.turn_events {
        let s = path.states[ev.index];
        if !ev.command.is_prohibition() {
            let dir = turn_to_direction(heading, ev.command);
            if !grid.ray_cast_free(&s, dir, d).map_err(|e| e.to_string())? {
                return Err(format!("no opening for {:?} at {s:?}", ev.command));
            }
        }
        heading += ev.command.heading_change();
    }
    Ok(())
}

/// Random occupancy grid with roughly `fill` of the cells occupied.
pub fn random_grid(rng: &mut ChaCha8Rng, width: usize, height: usize, fill: f64) -> OccupancyGrid {
    let res = rng.gen_range(0.05..0.5);
    let origin = State::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
    let mut g = OccupancyGrid::empty(width, height, res, origin).unwrap();
    for r in 0..height {
        for c in 0..width {
            g.set_occupied(c, r, rng.gen_bool(fill));
        }
    }
    g
}

/// Uniform point inside the grid extents, widened by `margin` cells.
pub fn random_point(rng: &mut ChaCha8Rng, grid: &OccupancyGrid, margin: f64) -> State {
    let b = grid.bounds();
    let m = margin * grid.resolution();
    State::new(rng.gen_range(b.min.x - m..b.max.x + m), rng.gen_range(b.min.y - m..b.max.y + m))
}

/// Straight corridor along x with one wall broken by a gap, for opening tests.
/// Returns the grid and the y of the corridor center line.
pub fn corridor_with_gap(rng: &mut ChaCha8Rng) -> (OccupancyGrid, f64) {
    let (w, h) = (60, 30);
    let mut g = OccupancyGrid::empty(w, h, 0.1, State::new(0.0, 0.0)).unwrap();
    let wall_lo = rng.gen_range(5..10);
    let wall_hi = wall_lo + rng.gen_range(3..8);
    let gap_start = rng.gen_range(5..40);
    let gap_len = rng.gen_range(0..15);
    for c in 0..w {
        g.set_occupied(c, wall_lo, true);
        let in_gap = c >= gap_start && c < gap_start + gap_len;
        if !in_gap {
            g.set_occupied(c, wall_hi, true);
        }
        // scattered clutter beyond the gap wall
        for r in wall_hi + 1..h {
            if rng.gen_bool(0.05) {
                g.set_occupied(c, r, true);
            }
        }
    }
    (g, (wall_lo + wall_hi) as f64 * 0.05 + 0.05)
}
