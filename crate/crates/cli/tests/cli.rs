use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn scenario(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/scenarios").join(name)
}

fn lasmp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lasmp")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

/// Drops the wall-clock line, the only field allowed to differ between runs.
fn without_timing(s: &str) -> String {
    s.lines().filter(|l| !l.starts_with("elapsed_s")).collect::<Vec<_>>().join("\n")
}

#[test]
fn plan_twice_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let scn = scenario("de-3.scn");
    let mut runs = Vec::new();
    for k in 0..2 {
        let path = dir.path().join(format!("path{k}.txt"));
        let plot = dir.path().join(format!("plot{k}.svg"));
        let out = lasmp(&[
            "plan",
            "--scenario",
            scn.to_str().unwrap(),
            "--seed",
            "7",
            "--out-path",
            path.to_str().unwrap(),
            "--out-plot",
            plot.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        runs.push((fs::read(&path).unwrap(), fs::read(&plot).unwrap(), without_timing(&stdout(&out))));
    }
    assert_eq!(runs[0], runs[1]);
    assert!(runs[0].2.contains("nodes: "));
}

#[test]
fn ground_zone_only_instruction() {
    let out = lasmp(&["ground", "please take me to the kitchen", "--scenario", scenario("kitchen.scn").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("zone: kitchen"), "{text}");
    assert!(text.contains("route: left,left,right"), "{text}");
}

#[test]
fn ground_without_scenario() {
    let out = lasmp(&["ground", "take the second right, not the left"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("turns: "));

    let out = lasmp(&["ground", "good morning"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn input_errors_exit_with_one() {
    assert_eq!(lasmp(&["plan", "--scenario", "/no/such/file.scn"]).status.code(), Some(1));
    let scn = scenario("de-2.scn");
    // usage errors count as input errors too
    assert_eq!(lasmp(&["plan", "--scenario", scn.to_str().unwrap(), "--planner", "prm"]).status.code(), Some(1));
    assert_eq!(lasmp(&["bench"]).status.code(), Some(1));
    assert_eq!(lasmp(&["--help"]).status.code(), Some(0));
}

#[test]
fn planning_failure_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let map = dir.path().join("split.map");
    // two free rooms separated by a solid wall; no path exists
    let mut text = String::from("20 10 0.1 0 0\n");
    for _ in 0..10 {
        text.push_str(&"0".repeat(9));
        text.push_str("11");
        text.push_str(&"0".repeat(9));
        text.push('\n');
    }
    fs::write(&map, text).unwrap();
    let scn = dir.path().join("split.scn");
    fs::write(
        &scn,
        "[map]\nfile = split.map\n[start]\n0.25 0.5 0\n[goal]\n1.75 0.5 0\n[turns]\nleft\n[params]\nh = 0.8\nw = 0.4\nd = 0.3\nmax_iters = 300\n",
    )
    .unwrap();
    for planner in ["lasmp", "rrt"] {
        let out = lasmp(&["plan", "--scenario", scn.to_str().unwrap(), "--planner", planner]);
        assert_eq!(out.status.code(), Some(2), "{planner}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(stdout(&out).contains("success: false"));
    }
}

#[test]
fn bench_writes_csv_and_report() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("runs.csv");
    let report = dir.path().join("report.txt");
    let out = lasmp(&[
        "bench",
        "--scenario",
        scenario("de-2.scn").to_str().unwrap(),
        scenario("os-2.scn").to_str().unwrap(),
        "--seeds",
        "2",
        "--runs-out",
        csv.to_str().unwrap(),
        "--report-out",
        report.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let rows = fs::read_to_string(&csv).unwrap();
    // header plus 2 scenarios x 2 planners x 2 seeds
    assert_eq!(rows.lines().count(), 9);
    let text = fs::read_to_string(&report).unwrap();
    assert!(text.contains("# rng: chacha8"));
    assert!(text.contains("aggregate"));
    assert_eq!(text, stdout(&out));
}

#[test]
fn follow_planned_path() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("path.txt");
    let traj = dir.path().join("traj.txt");
    let scn = scenario("de-2.scn");
    let out = lasmp(&["plan", "--scenario", scn.to_str().unwrap(), "--seed", "1", "--out-path", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    for robot in ["turtlebot3", "pioneer3dx", "turtlebot2"] {
        let out = lasmp(&[
            "follow",
            "--path",
            path.to_str().unwrap(),
            "--robot",
            robot,
            "--out",
            traj.to_str().unwrap(),
            "--scenario",
            scn.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0), "{robot}: {}", stdout(&out));
        let lines = fs::read_to_string(&traj).unwrap();
        let first: Vec<f64> = lines.lines().next().unwrap().split(' ').map(|v| v.parse().unwrap()).collect();
        assert_eq!(first.len(), 5);
        assert_eq!(first[0], 0.0);
    }
    let out = lasmp(&["follow", "--path", path.to_str().unwrap(), "--robot", "roomba", "--out", traj.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}
