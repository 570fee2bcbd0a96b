//! Plain-text map format.
//!
//! ```text
//! width height resolution origin_x origin_y
//! <height rows of exactly `width` characters, '0' free / '1' occupied>
//! ```
//!
//! The first grid line is row 0, the minimum-y row.

use super::{GridError, OccupancyGrid, State};

pub fn load_map(text: &str) -> Result<OccupancyGrid, GridError> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| GridError::MalformedHeader("empty document".into()))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 5 {
        return Err(GridError::MalformedHeader(format!(
            "expected 5 fields, found {}",
            fields.len()
        )));
    }
    let width: usize = parse_field(fields[0], "width")?;
    let height: usize = parse_field(fields[1], "height")?;
    let resolution: f64 = parse_field(fields[2], "resolution")?;
    let origin_x: f64 = parse_field(fields[3], "origin_x")?;
    let origin_y: f64 = parse_field(fields[4], "origin_y")?;

    let mut cells = Vec::with_capacity(width.saturating_mul(height));
    let mut rows = 0;
    for (row, line) in lines.enumerate() {
        let line = line.trim_end_matches('\r');
        let found = line.chars().count();
        if found != width {
            return Err(GridError::RowLengthMismatch {
                row,
                found,
                expected: width,
            });
        }
        for ch in line.chars() {
            match ch {
                '0' => cells.push(false),
                '1' => cells.push(true),
                other => return Err(GridError::IllegalCell { row, ch: other }),
            }
        }
        rows += 1;
    }
    if rows != height {
        return Err(GridError::RowCountMismatch {
            expected: height,
            found: rows,
        });
    }
    OccupancyGrid::new(width, height, resolution, State::new(origin_x, origin_y), cells)
}

fn parse_field<T: std::str::FromStr>(field: &str, name: &str) -> Result<T, GridError> {
    field
        .parse()
        .map_err(|_| GridError::MalformedHeader(format!("cannot parse {name} from {field:?}")))
}

/// Serializes a grid in the same format `load_map` reads.
pub fn write_map(grid: &OccupancyGrid) -> String {
    let mut out = format!(
        "{} {} {} {} {}\n",
        grid.width(),
        grid.height(),
        grid.resolution(),
        grid.origin().x,
        grid.origin().y
    );
    for row in 0..grid.height() {
        out.extend((0..grid.width()).map(|c| if grid.is_occupied(c, row) { '1' } else { '0' }));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_small_grid() {
        let g = load_map("3 2 1.0 0.0 0.0\n010\n000\n").unwrap();
        assert_eq!((g.width(), g.height()), (3, 2));
        assert_eq!(g.occupied_count(), 1);
        assert!(g.is_occupied(1, 0));
    }

    #[test]
    fn extents_from_resolution() {
        let body = "0000000000\n".repeat(10);
        let g = load_map(&format!("10 10 0.1 0.0 0.0\n{body}")).unwrap();
        let (ex, ey) = g.extents();
        assert!((ex - 1.0).abs() < 1e-12 && (ey - 1.0).abs() < 1e-12);
        assert_eq!(g.occupied_count(), 0);
    }

    #[test]
    fn row_length_mismatch() {
        let err = load_map("3 2 1.0 0.0 0.0\n01\n000\n").unwrap_err();
        assert!(matches!(err, GridError::RowLengthMismatch { row: 0, found: 2, expected: 3 }));
        assert!(err.to_string().contains("row length mismatch"));
    }

    #[test]
    fn other_errors() {
        assert!(matches!(
            load_map("3 2 1.0 0.0\n010\n000\n"),
            Err(GridError::MalformedHeader(_))
        ));
        assert!(matches!(
            load_map("3 2 abc 0.0 0.0\n010\n000\n"),
            Err(GridError::MalformedHeader(_))
        ));
        assert!(matches!(
            load_map("3 2 1.0 0.0 0.0\n012\n000\n"),
            Err(GridError::IllegalCell { row: 0, ch: '2' })
        ));
        assert!(matches!(
            load_map("3 2 1.0 0.0 0.0\n010\n"),
            Err(GridError::RowCountMismatch { .. })
        ));
        assert!(matches!(
            load_map("3 1 0.0 0.0 0.0\n010\n"),
            Err(GridError::InvalidGeometry(_))
        ));
    }

    #[test]
    fn write_then_read() {
        let g = load_map("4 3 0.25 -1.0 2.0\n0110\n0000\n1001\n").unwrap();
        assert_eq!(load_map(&write_map(&g)).unwrap(), g);
    }
}
