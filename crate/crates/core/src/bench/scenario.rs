//! Scenario documents.
//!
//! A scenario is a sequence of `[section]` blocks. Inside a block each line is
//! either `key = value` or a bare value; `#` starts a comment.
//!
//! ```text
//! [scenario]
//! id = de-3
//! [map]
//! file = ../maps/de.map
//! inflation = 0.2
//! [start]
//! 3.6 7.4 pi
//! [goal]
//! 2.8 3.2 pi/2
//! [turns]
//! left, left, right
//! [params]
//! d = 2.0
//! ```
//!
//! `[zone]`, `[route]` and `[region]` may repeat:
//! `[zone] name x y yaw`, `[route] region zone turns`, `[region] label xmin ymin xmax ymax`
//! (or the keyed forms `name`/`pose`, `region`/`zone`/`turns`, `label`/`rect`).
//! Relative map paths are resolved against the scenario's directory.

use std::f64::consts::PI;
use std::fs;
use std::path::{Path as FsPath, PathBuf};

use thiserror::Error;

use crate::gridmap::{load_map, Bounds, GridError, OccupancyGrid, Pose, State};
use crate::grounding::{nav_sequence, GroundingContext, GroundingError, RouteTable, TurnList, ZoneLexicon};
use crate::planner::PlannerParams;

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing required entry: {0}")]
    Missing(&'static str),
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("map {path}: {source}")]
    Map {
        path: PathBuf,
        #[source]
        source: GridError,
    },
    #[error("{what} {pose} is in collision on the inflated map")]
    InCollision { what: &'static str, pose: State },
    #[error("invalid parameters: {0}")]
    Params(String),
    #[error(transparent)]
    Grounding(#[from] GroundingError),
}

/// A fully resolved planning problem.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub id: String,
    pub map_file: PathBuf,
    pub inflation: f64,
    /// Map after inflation.
    pub grid: OccupancyGrid,
    pub start: Pose,
    pub goal: Option<Pose>,
    pub instruction: Option<String>,
    /// Explicit turn list; takes precedence over the instruction.
    pub turns: Option<TurnList>,
    pub zones: ZoneLexicon,
    pub routes: RouteTable,
    pub regions: Vec<(String, Bounds)>,
    pub params: PlannerParams,
}

impl Scenario {
    /// Label of the first region containing the start position.
    pub fn start_region(&self) -> Option<&str> {
        self.regions
            .iter()
            .find(|(_, b)| b.contains(&self.start.position))
            .map(|(label, _)| label.as_str())
    }

    pub fn grounding_context(&self) -> GroundingContext {
        GroundingContext {
            lexicon: self.zones.clone(),
            routes: self.routes.clone(),
            start_region: self.start_region().map(str::to_string),
            goal: self.goal,
        }
    }

    /// Turn list and goal for this scenario: the explicit `[turns]` list if
    /// present, otherwise the grounded instruction.
    pub fn resolve(&self) -> Result<(TurnList, Pose), ScenarioError> {
        if let Some(turns) = &self.turns {
            let goal = self.goal.ok_or(ScenarioError::Missing("[goal] for an explicit turn list"))?;
            return Ok((turns.clone(), goal));
        }
        let text = self.instruction.as_deref().ok_or(ScenarioError::Missing("[instruction] or [turns]"))?;
        Ok(nav_sequence(text, &self.grounding_context())?)
    }
}

/// Reads and resolves a scenario file.
pub fn load_scenario_file(path: &FsPath) -> Result<Scenario, ScenarioError> {
    let text = fs::read_to_string(path).map_err(|source| ScenarioError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let base = path.parent().unwrap_or(FsPath::new("."));
    let mut scenario = load_scenario(&text, base)?;
    if scenario.id.is_empty() {
        scenario.id = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
    }
    Ok(scenario)
}

/// Parses `text`, loads its map relative to `base_dir` and applies defaults.
pub fn load_scenario(text: &str, base_dir: &FsPath) -> Result<Scenario, ScenarioError> {
    let sections = split_sections(text)?;
    let mut id = String::new();
    let mut map_file = None;
    let mut inflation = 0.0;
    let mut start = None;
    let mut goal = None;
    let mut instruction = None;
    let mut turns = None;
    let mut zones = ZoneLexicon::default();
    let mut routes = RouteTable::default();
    let mut regions = Vec::new();
    let mut overrides = Vec::new();

    for sec in &sections {
        let line = sec.line;
        let syntax = |message: String| ScenarioError::Syntax { line, message };
        match sec.name.as_str() {
            "scenario" => id = sec.get("id").unwrap_or_else(|| sec.bare_joined()),
            "map" => {
                map_file = sec.get("file").or_else(|| sec.bare.first().cloned());
                if let Some(v) = sec.get("inflation") {
                    inflation = parse_num(&v).map_err(syntax)?;
                }
            }
            "start" => start = Some(sec.pose().map_err(syntax)?),
            "goal" => goal = Some(sec.pose().map_err(syntax)?),
            "instruction" => instruction = Some(sec.get("text").unwrap_or_else(|| sec.bare_joined())),
            "turns" => {
                let list = sec.get("list").unwrap_or_else(|| sec.bare_joined());
                turns = Some(list.parse::<TurnList>()?);
            }
            "zone" => {
                let (name, pose) = match sec.get("name") {
                    Some(name) => (name, sec.pose_from("pose").map_err(syntax)?),
                    None => {
                        let fields = sec.bare_fields();
                        let (name, nums) = split_name(&fields, 3).map_err(syntax)?;
                        (name, pose_from_fields(&nums).map_err(syntax)?)
                    }
                };
                zones.insert(&name, pose)?;
            }
            "route" => {
                let (region, zone, list) = match (sec.get("region"), sec.get("zone"), sec.get("turns")) {
                    (Some(r), Some(z), Some(t)) => (r, z, t),
                    _ => {
                        let fields = sec.bare_fields();
                        if fields.len() < 3 {
                            return Err(syntax("route needs region, zone and turns".into()));
                        }
                        (fields[0].clone(), fields[1].clone(), fields[2..].join(""))
                    }
                };
                routes.insert(&region, &zone, list.parse()?)?;
            }
            "region" => {
                let (label, nums) = match sec.get("label") {
                    Some(label) => {
                        let rect = sec.get("rect").ok_or_else(|| syntax("region needs rect".into()))?;
                        (label, rect.split_whitespace().map(str::to_string).collect())
                    }
                    None => split_name(&sec.bare_fields(), 4).map_err(syntax)?,
                };
                let v = nums.iter().map(|s| parse_num(s)).collect::<Result<Vec<_>, _>>().map_err(syntax)?;
                if v.len() != 4 || v[0] > v[2] || v[1] > v[3] {
                    return Err(syntax("region rect must be xmin ymin xmax ymax".into()));
                }
                regions.push((label, Bounds::new(State::new(v[0], v[1]), State::new(v[2], v[3]))));
            }
            "params" => overrides.extend(
                sec.pairs
                    .iter()
                    .zip(&sec.pair_lines)
                    .map(|((k, v), &line)| (k.clone(), v.clone(), line)),
            ),
            other => return Err(syntax(format!("unknown section [{other}]"))),
        }
    }

    let map_name = map_file.ok_or(ScenarioError::Missing("[map] file"))?;
    let map_path = base_dir.join(&map_name);
    let text = fs::read_to_string(&map_path).map_err(|source| ScenarioError::Io {
        path: map_path.clone(),
        source,
    })?;
    let map_err = |source| ScenarioError::Map {
        path: map_path.clone(),
        source,
    };
    let grid = load_map(&text).and_then(|g| g.inflate(inflation)).map_err(map_err)?;

    let start = start.ok_or(ScenarioError::Missing("[start]"))?;
    if instruction.is_none() && turns.is_none() {
        return Err(ScenarioError::Missing("[instruction] or [turns]"));
    }
    if !grid.is_free(&start.position) {
        return Err(ScenarioError::InCollision { what: "start", pose: start.position });
    }
    if let Some(g) = &goal {
        if !grid.is_free(&g.position) {
            return Err(ScenarioError::InCollision { what: "goal", pose: g.position });
        }
    }

    let mut params = PlannerParams::for_grid(&grid);
    for (key, value, line) in overrides {
        apply_param(&mut params, &key, &value).map_err(|message| ScenarioError::Syntax { line, message })?;
    }
    params.validate().map_err(|e| ScenarioError::Params(e.to_string()))?;

    Ok(Scenario {
        id,
        map_file: map_path,
        inflation,
        grid,
        start,
        goal,
        instruction,
        turns,
        zones,
        routes,
        regions,
        params,
    })
}

fn apply_param(p: &mut PlannerParams, key: &str, value: &str) -> Result<(), String> {
    let num = || parse_num(value);
    let count = || value.trim().parse::<usize>().map_err(|_| format!("{key}: expected a count, found {value:?}"));
    match key {
        "h" => p.h = num()?,
        "w" => p.w = num()?,
        "d" => p.d = num()?,
        "delta" => p.delta = num()?,
        "n_cons" => p.n_cons = count()?,
        "max_step" => p.max_step = num()?,
        "goal_tol" => p.goal_tol = num()?,
        "max_iters" => p.max_iters = count()?,
        other => return Err(format!("unknown parameter {other:?}")),
    }
    Ok(())
}

struct Section {
    name: String,
    line: usize,
    pairs: Vec<(String, String)>,
    /// Source line of each entry in `pairs`.
    pair_lines: Vec<usize>,
    bare: Vec<String>,
}

impl Section {
    fn get(&self, key: &str) -> Option<String> {
        self.pairs.iter().find(|(k, _)| k == key).map(|(_, v)| v.clone())
    }

    fn bare_joined(&self) -> String {
        self.bare.join(" ")
    }

    fn bare_fields(&self) -> Vec<String> {
        self.bare.iter().flat_map(|l| l.split_whitespace()).map(str::to_string).collect()
    }

    fn pose(&self) -> Result<Pose, String> {
        if let (Some(x), Some(y)) = (self.get("x"), self.get("y")) {
            let yaw = self.get("yaw").map_or(Ok(0.0), |v| parse_num(&v))?;
            return Ok(Pose::new(parse_num(&x)?, parse_num(&y)?, yaw));
        }
        if let Some(p) = self.get("pose") {
            return pose_from_fields(&p.split_whitespace().map(str::to_string).collect::<Vec<_>>());
        }
        pose_from_fields(&self.bare_fields())
    }

    fn pose_from(&self, key: &str) -> Result<Pose, String> {
        let v = self.get(key).ok_or_else(|| format!("missing {key}"))?;
        pose_from_fields(&v.split_whitespace().map(str::to_string).collect::<Vec<_>>())
    }
}

fn split_sections(text: &str) -> Result<Vec<Section>, ScenarioError> {
    let mut out: Vec<Section> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(name) = content.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            out.push(Section {
                name: name.trim().to_ascii_lowercase(),
                line,
                pairs: Vec::new(),
                pair_lines: Vec::new(),
                bare: Vec::new(),
            });
            continue;
        }
        let sec = out.last_mut().ok_or_else(|| ScenarioError::Syntax {
            line,
            message: "content before the first [section]".into(),
        })?;
        match content.split_once('=') {
            Some((k, v)) => {
                sec.pairs.push((k.trim().to_ascii_lowercase(), v.trim().to_string()));
                sec.pair_lines.push(line);
            }
            None => sec.bare.push(content.to_string()),
        }
    }
    Ok(out)
}

/// Splits `fields` into a leading (possibly multi-word) name and `n` trailing numbers.
fn split_name(fields: &[String], n: usize) -> Result<(String, Vec<String>), String> {
    if fields.len() < n + 1 {
        return Err(format!("expected a name followed by {n} numbers"));
    }
    let cut = fields.len() - n;
    Ok((fields[..cut].join(" "), fields[cut..].to_vec()))
}

fn pose_from_fields(fields: &[String]) -> Result<Pose, String> {
    match fields {
        [x, y] => Ok(Pose::new(parse_num(x)?, parse_num(y)?, 0.0)),
        [x, y, yaw] => Ok(Pose::new(parse_num(x)?, parse_num(y)?, parse_num(yaw)?)),
        _ => Err(format!("expected 'x y [yaw]', found {:?}", fields.join(" "))),
    }
}

/// Parses a decimal number or a multiple of pi such as `pi`, `-pi/2`, `3pi/4`, `0.5*pi`.
pub fn parse_num(s: &str) -> Result<f64, String> {
    let t = s.trim().to_ascii_lowercase().replace(' ', "");
    let bad = || format!("expected a number, found {s:?}");
    if !t.contains("pi") {
        return t.parse::<f64>().map_err(|_| bad());
    }
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n, d.parse::<f64>().map_err(|_| bad())?),
        None => (t.as_str(), 1.0),
    };
    let coef = num.strip_suffix("pi").ok_or_else(bad)?.trim_end_matches('*');
    let coef = match coef {
        "" | "+" => 1.0,
        "-" => -1.0,
        c => c.parse::<f64>().map_err(|_| bad())?,
    };
    Ok(coef * PI / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grounding::NavCommand;
    use std::f64::consts::FRAC_PI_2;

    fn map_dir() -> tempfile::TempDir {
        let dir = tempfile::tempdir().unwrap();
        let mut map = String::from("10 10 1 0 0\n");
        for j in 0..10 {
            let row: String = (0..10).map(|i| if i + j == 0 { '1' } else { '0' }).collect();
            map.push_str(&row);
            map.push('\n');
        }
        std::fs::write(dir.path().join("open.map"), map).unwrap();
        dir
    }

    #[test]
    fn angles() {
        assert_eq!(parse_num("pi").unwrap(), PI);
        assert_eq!(parse_num("-pi/2").unwrap(), -FRAC_PI_2);
        assert!((parse_num("3pi/4").unwrap() - 0.75 * PI).abs() < 1e-15);
        assert_eq!(parse_num("0.5*pi").unwrap(), 0.5 * PI);
        assert_eq!(parse_num("2.5").unwrap(), 2.5);
        assert!(parse_num("pie").is_err());
        assert!(parse_num("abc").is_err());
    }

    #[test]
    fn minimal_scenario_gets_defaults() {
        let dir = map_dir();
        let text = "[map]\nfile = open.map\n[start]\n3.6 7.4 pi\n[goal]\nx = 2.8\ny = 3.2\nyaw = pi/2\n[turns]\nleft, left, right\n";
        let s = load_scenario(text, dir.path()).unwrap();
        assert_eq!(s.start.position, State::new(3.6, 7.4));
        assert_eq!(s.start.yaw, PI);
        assert_eq!(s.goal.unwrap().yaw, FRAC_PI_2);
        assert_eq!(s.params, PlannerParams::for_grid(&s.grid));
        let (turns, goal) = s.resolve().unwrap();
        assert_eq!(turns.0, vec![NavCommand::Left, NavCommand::Left, NavCommand::Right]);
        assert_eq!(goal.position, State::new(2.8, 3.2));
    }

    #[test]
    fn zones_routes_regions_and_params() {
        let dir = map_dir();
        let text = "\
[scenario]
id = home
[map]
file = open.map
inflation = 0.0
[start]
1.5 1.5 0
[instruction]
take me to the living room
[zone]
living room 8.5 8.5 0
[zone]
name = kitchen
pose = 2.5 8.5 pi
[region]
hall 1 1 3 3
[route]
hall living-room left,right
[params]
d = 2.0
n_cons = 4
";
        let s = load_scenario(text, dir.path()).unwrap();
        assert_eq!(s.id, "home");
        assert_eq!(s.params.d, 2.0);
        assert_eq!(s.params.n_cons, 4);
        assert_eq!(s.start_region(), Some("hall"));
        let (turns, goal) = s.resolve().unwrap();
        assert_eq!(turns.0, vec![NavCommand::Left, NavCommand::Right]);
        assert_eq!(goal.position, State::new(8.5, 8.5));
        assert_eq!(s.zones.get("kitchen").unwrap().yaw, PI);
    }

    #[test]
    fn load_errors() {
        let dir = map_dir();
        let blocked = "[map]\nfile = open.map\n[start]\n1 1 0\n[goal]\n0.5 0.5 0\n[turns]\nleft\n";
        assert!(matches!(
            load_scenario(blocked, dir.path()),
            Err(ScenarioError::InCollision { what: "goal", .. })
        ));
        let inflated = "[map]\nfile = open.map\ninflation = 1.0\n[start]\n1.5 0.5 0\n[goal]\n5 5 0\n[turns]\nleft\n";
        assert!(matches!(
            load_scenario(inflated, dir.path()),
            Err(ScenarioError::InCollision { what: "start", .. })
        ));
        let no_turns = "[map]\nfile = open.map\n[start]\n5 5 0\n[goal]\n6 6 0\n";
        assert!(matches!(load_scenario(no_turns, dir.path()), Err(ScenarioError::Missing(_))));
        let no_map = "[start]\n5 5 0\n[turns]\nleft\n";
        assert!(matches!(load_scenario(no_map, dir.path()), Err(ScenarioError::Missing(_))));
        let missing_file = "[map]\nfile = nope.map\n[start]\n5 5 0\n[turns]\nleft\n";
        assert!(matches!(load_scenario(missing_file, dir.path()), Err(ScenarioError::Io { .. })));
        let bad_key = "[map]\nfile = open.map\n[start]\n5 5 0\n[turns]\nleft\n[params]\nfoo = 1\n";
        assert!(matches!(load_scenario(bad_key, dir.path()), Err(ScenarioError::Syntax { line: 8, .. })));
        assert!(matches!(load_scenario("orphan\n", dir.path()), Err(ScenarioError::Syntax { line: 1, .. })));
    }
}
