//! Planned paths and their text form.
//!
//! ```text
//! # path
//! 3.6 7.4
//! 3.1 7.38
//! # turn 1 LEFT
//! ```
//!
//! Coordinates use 9 significant digits; turn events follow the states.

use std::fmt::Write as _;

use crate::gridmap::State;
use crate::grounding::NavCommand;
use crate::textfmt::sig;

/// A command consumed at `states[index]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TurnEvent {
    pub index: usize,
    pub command: NavCommand,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Path {
    pub states: Vec<State>,
    pub turn_events: Vec<TurnEvent>,
}

impl Path {
    pub fn length(&self) -> f64 {
        self.states.windows(2).map(|w| w[0].distance(&w[1])).sum()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("# path\n");
        for s in &self.states {
            let _ = writeln!(out, "{} {}", sig(s.x, 9), sig(s.y, 9));
        }
        for ev in &self.turn_events {
            let _ = writeln!(out, "# turn {} {}", ev.index, ev.command);
        }
        out
    }
}

/// Reads the format written by [`Path::to_text`].
pub fn parse_path(text: &str) -> Result<Path, String> {
    let mut path = Path::default();
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    match lines.next() {
        Some("# path") => {}
        other => return Err(format!("expected '# path' header, found {other:?}")),
    }
    for line in lines {
        if let Some(rest) = line.strip_prefix("# turn") {
            let mut it = rest.split_whitespace();
            let index = it
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| format!("bad turn line {line:?}"))?;
            let command = it
                .next()
                .ok_or_else(|| format!("bad turn line {line:?}"))?
                .parse::<NavCommand>()
                .map_err(|e| e.to_string())?;
            path.turn_events.push(TurnEvent { index, command });
        } else if line.starts_with('#') {
            continue;
        } else {
            let v: Vec<f64> = line
                .split_whitespace()
                .map(str::parse)
                .collect::<Result<_, _>>()
                .map_err(|_| format!("bad coordinate line {line:?}"))?;
            if v.len() != 2 {
                return Err(format!("bad coordinate line {line:?}"));
            }
            path.states.push(State::new(v[0], v[1]));
        }
    }
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_form() {
        let p = Path {
            states: vec![State::new(3.6, 7.4), State::new(1.0 / 3.0, 2.0)],
            turn_events: vec![TurnEvent { index: 1, command: NavCommand::Left }],
        };
        let text = p.to_text();
        assert_eq!(text, "# path\n3.6 7.4\n0.333333333 2\n# turn 1 LEFT\n");
        let back = parse_path(&text).unwrap();
        assert_eq!(back.turn_events, p.turn_events);
        assert!((back.states[1].x - 1.0 / 3.0).abs() < 1e-9);
        assert!(parse_path("1 2\n").is_err());
    }
}
