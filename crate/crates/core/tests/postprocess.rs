mod common;

use common::*;
use lasmp::bench::{run_planner, PlannerKind};
use lasmp::postprocess::{shortcut_path, simulate_follow, smooth_path, FollowParams, RobotKinematics};
use lasmp::{Pose, State};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn smoothing_keeps_endpoints_and_stays_free(seed in 0u64..1000, k in 0usize..9, samples in 2usize..12) {
        let s = scenario(SUITE[k]);
        let (turns, goal) = s.resolve().unwrap();
        let out = run_planner(&s, &turns, &goal, PlannerKind::Lasmp, seed).unwrap();
        prop_assume!(out.path.is_some());
        let path = out.path.unwrap();
        let short = shortcut_path(&s.grid, &path);
        prop_assert!(short.states.len() <= path.states.len());
        prop_assert!(path_valid(&s.grid, &short));
        let smooth = smooth_path(&s.grid, &short, samples).unwrap();
        prop_assert_eq!(smooth[0], path.states[0]);
        prop_assert_eq!(*smooth.last().unwrap(), *path.states.last().unwrap());
        let spacing = s.grid.resolution() / 10.0;
        prop_assert!(smooth.windows(2).all(|w| sampled_segment_free(&s.grid, &w[0], &w[1], spacing)));
    }

    #[test]
    fn wheel_speeds_stay_within_limits(offset in -0.3f64..0.3, yaw in -1.0f64..1.0, robot in 0usize..3) {
        let kin = [RobotKinematics::pioneer3dx(), RobotKinematics::turtlebot3(), RobotKinematics::turtlebot2()][robot].clone();
        let path = [State::new(0.0, 0.0), State::new(2.0, 0.0), State::new(2.0, 2.0)];
        let traj = simulate_follow(&path, &Pose::new(0.0, offset, yaw), &kin, &FollowParams::default()).unwrap();
        for &(l, r) in &traj.wheel_speeds {
            prop_assert!(l.abs() <= kin.max_wheel_speed + 1e-9 && r.abs() <= kin.max_wheel_speed + 1e-9);
        }
        prop_assert!(traj.samples.windows(2).all(|w| w[1].0 > w[0].0));
    }
}

#[test]
fn straight_line_error_decays_without_large_overshoot() {
    let kin = RobotKinematics::turtlebot3();
    let path = [State::new(0.0, 0.0), State::new(6.0, 0.0)];
    for e0 in [0.05, 0.1, 0.2] {
        let traj = simulate_follow(&path, &Pose::new(0.0, e0, 0.0), &kin, &FollowParams::default()).unwrap();
        assert!(traj.reached_goal);
        let ys: Vec<f64> = traj.samples.iter().map(|(_, p)| p.position.y).collect();
        let cross = ys.iter().position(|&y| y <= 0.0).unwrap_or(ys.len());
        assert!(ys[..cross].windows(2).all(|w| w[1] <= w[0] + 1e-12), "e0 {e0}: not monotone before crossing");
        let overshoot = -ys.iter().copied().fold(0.0, f64::min);
        assert!(overshoot <= 0.05 * e0, "e0 {e0}: overshoot {overshoot}");
    }
}

#[test]
fn turtlebot_tracks_the_smoothed_plan() {
    let s = scenario("de-2");
    let (turns, goal) = s.resolve().unwrap();
    let path = run_planner(&s, &turns, &goal, PlannerKind::Lasmp, 0).unwrap().path.unwrap();
    let reference = smooth_path(&s.grid, &shortcut_path(&s.grid, &path), 10).unwrap();
    let traj = simulate_follow(&reference, &s.start, &RobotKinematics::turtlebot3(), &FollowParams::default()).unwrap();
    assert!(traj.reached_goal && !traj.timed_out);
    assert!(traj.max_cross_track_error() <= 0.1, "{}", traj.max_cross_track_error());
}

#[test]
fn degenerate_reference_is_rejected() {
    let kin = RobotKinematics::turtlebot3();
    assert!(simulate_follow(&[State::new(0.0, 0.0)], &Pose::new(0.0, 0.0, 0.0), &kin, &FollowParams::default()).is_err());
}
