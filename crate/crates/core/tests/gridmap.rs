mod common;

use common::*;
use lasmp::gridmap::{load_map, write_map};
use lasmp::{OccupancyGrid, State};
use proptest::prelude::*;
use rand::Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn segment_valid_matches_dense_sampling(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let g = random_grid(&mut rng, 16, 12, 0.2);
        let (a, b) = (random_point(&mut rng, &g, 1.0), random_point(&mut rng, &g, 1.0));
        prop_assert_eq!(g.segment_valid(&a, &b), sampled_segment_free(&g, &a, &b, g.resolution() / 1000.0));
    }

    #[test]
    fn ray_cast_matches_dense_sampling(seed in any::<u64>(), th in -3.2f64..3.2, cells in 0.01f64..10.0) {
        let mut rng = rng(seed);
        let g = random_grid(&mut rng, 16, 12, 0.15);
        let o = random_point(&mut rng, &g, 0.0);
        let dir = (th.cos(), th.sin());
        let range = cells * g.resolution();
        let end = o.offset(dir, range);
        prop_assert_eq!(g.ray_cast_free(&o, dir, range).unwrap(), sampled_segment_free(&g, &o, &end, g.resolution() / 1000.0));
    }

    #[test]
    fn segment_check_is_symmetric(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let g = random_grid(&mut rng, 12, 12, 0.25);
        let (a, b) = (random_point(&mut rng, &g, 0.5), random_point(&mut rng, &g, 0.5));
        prop_assert_eq!(g.segment_valid(&a, &b), g.segment_valid(&b, &a));
    }

    #[test]
    fn inflation_matches_center_distance(seed in any::<u64>(), cells in 0.0f64..3.5) {
        let mut rng = rng(seed);
        let g = random_grid(&mut rng, 14, 10, 0.08);
        let r = cells * g.resolution();
        let inflated = g.inflate(r).unwrap();
        let occupied: Vec<State> = (0..g.height())
            .flat_map(|row| (0..g.width()).map(move |col| (col, row)))
            .filter(|&(c, row)| g.is_occupied(c, row))
            .map(|(c, row)| g.cell_center(c, row))
            .collect();
        for row in 0..g.height() {
            for col in 0..g.width() {
                let p = g.cell_center(col, row);
                let near = occupied.iter().any(|o| o.distance(&p) <= r * (1.0 + 1e-9) + 1e-12);
                prop_assert_eq!(inflated.is_occupied(col, row), near, "cell ({}, {})", col, row);
            }
        }
        // inflation only adds obstacles
        prop_assert!(inflated.occupied_count() >= g.occupied_count());
    }

    #[test]
    fn map_text_round_trips(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let w = rng.gen_range(1..20);
        let h = rng.gen_range(1..20);
        let g = random_grid(&mut rng, w, h, 0.3);
        let back = load_map(&write_map(&g)).unwrap();
        prop_assert_eq!(back.cells(), g.cells());
        prop_assert_eq!((back.width(), back.height()), (g.width(), g.height()));
        prop_assert_eq!(back.resolution(), g.resolution());
        prop_assert_eq!(back.origin(), g.origin());
    }
}

#[test]
fn points_outside_the_grid_are_occupied() {
    let g = OccupancyGrid::empty(4, 4, 0.5, State::new(1.0, 1.0)).unwrap();
    assert!(g.is_free(&State::new(1.0, 1.0)));
    assert!(!g.is_free(&State::new(3.0, 2.0)));
    assert!(!g.is_free(&State::new(0.99, 2.0)));
    assert!(!g.segment_valid(&State::new(1.5, 1.5), &State::new(3.5, 1.5)));
}

#[test]
fn ray_cast_rejects_bad_arguments() {
    let g = OccupancyGrid::empty(4, 4, 0.5, State::new(0.0, 0.0)).unwrap();
    let o = State::new(1.0, 1.0);
    assert!(g.ray_cast_free(&o, (1.0, 1.0), 1.0).is_err());
    assert!(g.ray_cast_free(&o, (1.0, 0.0), 0.0).is_err());
    assert!(g.ray_cast_free(&o, (0.0, 1.0), 0.9).unwrap());
}

#[test]
fn scenario_maps_load() {
    for name in SUITE {
        let s = scenario(name);
        assert!(s.grid.occupied_count() > 0, "{name}");
        assert!(s.grid.is_free(&s.start.position), "{name}");
    }
}
