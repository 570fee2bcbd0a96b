use std::fs;
use std::path::{Path as FsPath, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

use lasmp::bench::{load_scenario_file, render, run_comparison, run_planner, summarize, records_to_csv, PlannerKind, Scenario};
use lasmp::grounding::{extract_entities, nav_sequence, GroundingContext};
use lasmp::planner::{parse_path, Path, RNG_ALGORITHM};
use lasmp::postprocess::{shortcut_path, simulate_follow, smooth_path, FollowParams, RobotKinematics};
use lasmp::Pose;

#[derive(Parser)]
#[command(name = "lasmp", version, about = "Language-guided subset-sampling planner")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Ground an instruction into a turn list and goal.
    Ground {
        text: String,
        /// Scenario supplying zones, routes and the start region.
        #[arg(long)]
        scenario: Option<PathBuf>,
    },
    /// Plan one scenario with one planner.
    Plan {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long, default_value = "lasmp")]
        planner: PlannerKind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the path as text.
        #[arg(long)]
        out_path: Option<PathBuf>,
        /// Write the tree and path as SVG.
        #[arg(long)]
        out_plot: Option<PathBuf>,
    },
    /// Compare LASMP and RRT over seeds 0..N on each scenario.
    Bench {
        #[arg(long, required = true, num_args = 1..)]
        scenario: Vec<PathBuf>,
        #[arg(long, default_value_t = 10)]
        seeds: u64,
        #[arg(long)]
        runs_out: Option<PathBuf>,
        #[arg(long)]
        report_out: Option<PathBuf>,
    },
    /// Simulate a differential-drive robot following a path file.
    Follow {
        #[arg(long)]
        path: PathBuf,
        #[arg(long, default_value = "turtlebot3")]
        robot: RobotKinematics,
        #[arg(long)]
        out: PathBuf,
        /// Shortcut and spline-smooth the path on this scenario's grid and
        /// start from its start pose. Without it the path is followed as is.
        #[arg(long)]
        scenario: Option<PathBuf>,
        #[arg(long, default_value_t = 10)]
        samples_per_segment: usize,
        #[arg(long, default_value_t = FollowParams::default().lookahead)]
        lookahead: f64,
    },
}

/// Outcome that is not an input error but still a failure.
enum Status {
    Ok,
    Failed,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // clap reports usage errors with 2, which is reserved for planning failures
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Failed) => ExitCode::from(2),
        Err(e) => {
            // library errors already embed their source in the message
            let mut msg = String::new();
            for cause in e.chain().map(ToString::to_string) {
                if !msg.contains(&cause) {
                    msg = if msg.is_empty() { cause } else { format!("{msg}: {cause}") };
                }
            }
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Result<Status> {
    match command {
        Command::Ground { text, scenario } => ground(&text, scenario.as_deref()),
        Command::Plan { scenario, planner, seed, out_path, out_plot } => {
            plan(&scenario, planner, seed, out_path.as_deref(), out_plot.as_deref())
        }
        Command::Bench { scenario, seeds, runs_out, report_out } => {
            bench(&scenario, seeds, runs_out.as_deref(), report_out.as_deref())
        }
        Command::Follow { path, robot, out, scenario, samples_per_segment, lookahead } => {
            let params = FollowParams { lookahead, ..FollowParams::default() };
            follow(&path, &robot, &out, scenario.as_deref(), samples_per_segment, &params)
        }
    }
}

fn load(path: &FsPath) -> Result<Scenario> {
    load_scenario_file(path).with_context(|| format!("loading scenario {}", path.display()))
}

fn write(path: &FsPath, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn ground(text: &str, scenario: Option<&FsPath>) -> Result<Status> {
    let ctx = match scenario {
        Some(p) => load(p)?.grounding_context(),
        None => GroundingContext::default(),
    };
    let entities = extract_entities(text, &ctx.lexicon);
    println!("turns: {}", entities.turns);
    if let Some(zone) = &entities.zone {
        println!("zone: {zone}");
    }
    if entities.zone.is_none() && ctx.goal.is_none() {
        if !entities.is_valid() {
            bail!("ungroundable instruction: {text:?}");
        }
        return Ok(Status::Ok);
    }
    let (turns, goal) = nav_sequence(text, &ctx)?;
    if turns != entities.turns {
        println!("route: {turns}");
    }
    println!("goal: {} {} {}", goal.position.x, goal.position.y, goal.yaw);
    Ok(Status::Ok)
}

fn plan(
    scenario: &FsPath,
    planner: PlannerKind,
    seed: u64,
    out_path: Option<&FsPath>,
    out_plot: Option<&FsPath>,
) -> Result<Status> {
    let s = load(scenario)?;
    let (turns, goal) = s.resolve()?;
    let outcome = run_planner(&s, &turns, &goal, planner, seed)?;
    let m = &outcome.metrics;
    println!("scenario: {}", s.id);
    println!("planner: {planner}");
    println!("seed: {seed} (rng {RNG_ALGORITHM})");
    println!("turns: {turns}");
    println!("success: {}", m.success);
    println!("nodes: {}", m.nodes_added);
    println!("queries: {}", m.sample_queries);
    println!("path_length: {:.6}", m.path_length);
    println!("elapsed_s: {:.6}", m.elapsed);
    if let (Some(p), Some(path)) = (out_path, &outcome.path) {
        write(p, &path.to_text())?;
    }
    if let Some(p) = out_plot {
        let svg = render(&s.grid, Some(&outcome.tree), outcome.path.as_ref(), &s.start.position, &goal.position);
        write(p, &svg)?;
    }
    Ok(if m.success { Status::Ok } else { Status::Failed })
}

fn bench(scenarios: &[PathBuf], seeds: u64, runs_out: Option<&FsPath>, report_out: Option<&FsPath>) -> Result<Status> {
    if seeds == 0 {
        bail!("--seeds must be at least 1");
    }
    let seed_list: Vec<u64> = (0..seeds).collect();
    let mut records = Vec::new();
    for p in scenarios {
        let s = load(p)?;
        records.extend(run_comparison(&s, &PlannerKind::ALL, &seed_list)?);
    }
    lasmp::bench::sort_records(&mut records);
    let report = summarize(&records);
    let text = report.to_text();
    print!("{text}");
    if let Some(p) = runs_out {
        write(p, &records_to_csv(&records))?;
    }
    if let Some(p) = report_out {
        write(p, &text)?;
    }
    let all_failed = records.iter().all(|r| !r.metrics.success);
    Ok(if all_failed { Status::Failed } else { Status::Ok })
}

fn follow(
    path_file: &FsPath,
    robot: &RobotKinematics,
    out: &FsPath,
    scenario: Option<&FsPath>,
    samples_per_segment: usize,
    params: &FollowParams,
) -> Result<Status> {
    let text = fs::read_to_string(path_file).with_context(|| format!("reading {}", path_file.display()))?;
    let path: Path = parse_path(&text).map_err(anyhow::Error::msg).with_context(|| format!("parsing {}", path_file.display()))?;
    if path.states.len() < 2 {
        bail!("path needs at least 2 states, found {}", path.states.len());
    }
    let (reference, start) = match scenario {
        Some(p) => {
            let s = load(p)?;
            let short = shortcut_path(&s.grid, &path);
            (smooth_path(&s.grid, &short, samples_per_segment)?, s.start)
        }
        None => {
            let (a, b) = (path.states[0], path.states[1]);
            let yaw = (b.y - a.y).atan2(b.x - a.x);
            (path.states.clone(), Pose::new(a.x, a.y, yaw))
        }
    };
    let traj = simulate_follow(&reference, &start, robot, params)?;
    write(out, &traj.to_text())?;
    println!("reached_goal: {}", traj.reached_goal);
    println!("timed_out: {}", traj.timed_out);
    println!("duration_s: {:.3}", traj.samples.last().map_or(0.0, |s| s.0));
    println!("max_cross_track_error: {:.6}", traj.max_cross_track_error());
    Ok(if traj.reached_goal { Status::Ok } else { Status::Failed })
}
