use std::fmt::Write as _;

use crate::gridmap::{OccupancyGrid, State};
use crate::planner::{Path, SearchTree};
use crate::textfmt::sig;

/// Pixels per meter.
const SCALE: f64 = 50.0;

/// SVG drawing of the map with an optional search tree and path.
///
/// Elements carry the classes `obstacle`, `edge`, `vertex`, `path`, `start`
/// and `goal`; output is a pure function of the inputs.
pub fn render(grid: &OccupancyGrid, tree: Option<&SearchTree>, path: Option<&Path>, start: &State, goal: &State) -> String {
    let b = grid.bounds();
    let (w, h) = ((b.max.x - b.min.x) * SCALE, (b.max.y - b.min.y) * SCALE);
    let px = |s: &State| ((s.x - b.min.x) * SCALE, (b.max.y - s.y) * SCALE);
    let n = |v: f64| sig(v, 6);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        n(w),
        n(h),
        n(w),
        n(h)
    );
    let _ = writeln!(
        out,
        "<style>.obstacle{{fill:#333}}.edge{{stroke:#e6c300;stroke-width:1}}.vertex{{fill:#2a9d3a}}\
.path{{fill:none;stroke:#d62828;stroke-width:3}}.start{{fill:#1d4ed8}}.goal{{fill:#c026d3}}</style>"
    );
    let _ = writeln!(out, r##"<rect width="100%" height="100%" fill="#fff"/>"##);

    // occupied cells merged into horizontal runs, one rect per run
    let res = grid.resolution();
    for row in 0..grid.height() {
        let mut col = 0;
        while col < grid.width() {
            if !grid.is_occupied(col, row) {
                col += 1;
                continue;
            }
            let first = col;
            while col < grid.width() && grid.is_occupied(col, row) {
                col += 1;
            }
            let top_left = State::new(
                grid.origin().x + first as f64 * res,
                grid.origin().y + (row + 1) as f64 * res,
            );
            let (x, y) = px(&top_left);
            let _ = writeln!(
                out,
                r#"<rect class="obstacle" x="{}" y="{}" width="{}" height="{}"/>"#,
                n(x),
                n(y),
                n((col - first) as f64 * res * SCALE),
                n(res * SCALE)
            );
        }
    }

    if let Some(tree) = tree {
        for (p, c) in tree.edges() {
            let (x1, y1) = px(&tree.state(p));
            let (x2, y2) = px(&tree.state(c));
            let _ = writeln!(
                out,
                r#"<line class="edge" x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
                n(x1),
                n(y1),
                n(x2),
                n(y2)
            );
        }
        for s in tree.nodes() {
            let (x, y) = px(s);
            let _ = writeln!(out, r#"<circle class="vertex" cx="{}" cy="{}" r="2.5"/>"#, n(x), n(y));
        }
    }

    if let Some(path) = path.filter(|p| !p.states.is_empty()) {
        let pts: Vec<String> = path
            .states
            .iter()
            .map(|s| {
                let (x, y) = px(s);
                format!("{},{}", n(x), n(y))
            })
            .collect();
        let _ = writeln!(out, r#"<polyline class="path" points="{}"/>"#, pts.join(" "));
    }

    for (class, s) in [("start", start), ("goal", goal)] {
        let (x, y) = px(s);
        let _ = writeln!(out, r#"<circle class="{class}" cx="{}" cy="{}" r="6"/>"#, n(x), n(y));
    }
    out.push_str("</svg>\n");
    out
}
