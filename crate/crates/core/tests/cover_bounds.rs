mod common;

use depthmark_core::geometry::{cover_radius, distance, DepthRule, PointCloud};
use depthmark_core::landmarks::{
    assign_cells, maxmin, random_landmarks, recenter_fixed_step, recenter_fixed_step_detailed,
    recenter_full, recenter_support_weighted, recenter_support_weighted_detailed, support_weights,
    CellPartition, LandmarkSet,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TOL: f64 = 1e-9;
const ALPHAS: [f64; 4] = [0.25, 0.5, 0.6, 1.0];
const TAUS: [f64; 3] = [0.5, 1.0, 1.5];

fn cloud_for(rng: &mut ChaCha8Rng) -> PointCloud {
    let n = rng.gen_range(40..120);
    if rng.gen_bool(0.5) {
        common::uniform_cloud(rng, n, 2)
    } else {
        common::clumpy_cloud(rng, n)
    }
}

fn in_cells(part: &CellPartition, l: &LandmarkSet) -> bool {
    l.indices
        .iter()
        .zip(&part.cells)
        .all(|(i, cell)| cell.binary_search(i).is_ok())
}

#[test]
fn cells_lie_in_seed_balls() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..200 {
        let cloud = cloud_for(&mut rng);
        for m in [10, 20] {
            let seeds = maxmin(&cloud, m, 0).unwrap();
            let r = cover_radius(&cloud, &seeds.coords).unwrap();
            let part = assign_cells(&cloud, &seeds).unwrap();
            assert_eq!(part.cells.iter().map(Vec::len).sum::<usize>(), cloud.len());
            for (k, cell) in part.cells.iter().enumerate() {
                assert!(cell.contains(&part.seeds[k]));
                for &x in cell {
                    assert!(distance(cloud.point(x), cloud.point(part.seeds[k])) <= r + TOL);
                }
            }
        }
    }
}

#[test]
fn recentered_sets_obey_the_cover_bounds() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let mut checks = 0;
    for _ in 0..200 {
        let cloud = cloud_for(&mut rng);
        for m in [10, 20] {
            let seeds = maxmin(&cloud, m, 0).unwrap();
            let r = cover_radius(&cloud, &seeds.coords).unwrap();
            let part = assign_cells(&cloud, &seeds).unwrap();
            let rule = DepthRule::Exact2d;

            let full = recenter_full(&cloud, &part, rule).unwrap();
            assert!(in_cells(&part, &full));
            assert!(cover_radius(&cloud, &full.coords).unwrap() <= 2.0 * r + TOL);

            for alpha in ALPHAS {
                let fixed = recenter_fixed_step_detailed(&cloud, &part, alpha, rule).unwrap();
                let mut runs = vec![(alpha, fixed)];
                for tau in TAUS {
                    runs.push((
                        alpha,
                        recenter_support_weighted_detailed(&cloud, &part, alpha, tau, rule).unwrap(),
                    ));
                }
                for (alpha_max, run) in runs {
                    assert!(in_cells(&part, &run.landmarks));
                    let cover = cover_radius(&cloud, &run.landmarks.coords).unwrap();
                    assert!(cover <= 2.0 * r + TOL, "{cover} > 2 * {r}");
                    assert!(cover <= (1.0 + 2.0 * alpha_max) * r + TOL);
                    let z_cover = cover_radius(&cloud, &run.targets).unwrap();
                    assert!(z_cover <= (1.0 + alpha_max) * r + TOL);
                    checks += 1;
                }
            }
        }
    }
    assert_eq!(checks, 200 * 2 * ALPHAS.len() * (1 + TAUS.len()));
}

#[test]
fn small_cells_move_less() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..100 {
        let n = rng.gen_range(60..150);
        let cloud = common::clumpy_cloud(&mut rng, n);
        let m = 15;
        let seeds = maxmin(&cloud, m, 0).unwrap();
        let r = cover_radius(&cloud, &seeds.coords).unwrap();
        let part = assign_cells(&cloud, &seeds).unwrap();
        let n_bar = cloud.len() as f64 / m as f64;
        for alpha_max in [0.3, 0.6, 1.0] {
            for tau in TAUS {
                let run =
                    recenter_support_weighted_detailed(&cloud, &part, alpha_max, tau, DepthRule::Exact2d)
                        .unwrap();
                for (k, z) in run.targets.iter().enumerate() {
                    let n_k = part.cells[k].len() as f64;
                    let bound = alpha_max * (n_k / (tau * n_bar)).min(1.0) * r;
                    assert!(distance(cloud.point(part.seeds[k]), z) <= bound + TOL);
                }
            }
        }
    }
}

#[test]
fn method_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for _ in 0..50 {
        let cloud = cloud_for(&mut rng);
        let seeds = maxmin(&cloud, 12, 0).unwrap();
        let part = assign_cells(&cloud, &seeds).unwrap();
        let rule = DepthRule::Exact2d;
        assert_eq!(recenter_fixed_step(&cloud, &part, 0.0, rule).unwrap().indices, seeds.indices);
        assert_eq!(
            recenter_fixed_step(&cloud, &part, 1.0, rule).unwrap().indices,
            recenter_full(&cloud, &part, rule).unwrap().indices
        );
    }
}

#[test]
fn uniform_cells_make_support_weighting_a_fixed_step() {
    // a 6x6 grid split into four 3x3 blocks
    let rows: Vec<Vec<f64>> = (0..36).map(|i| vec![(i % 6) as f64, (i / 6) as f64]).collect();
    let cloud = PointCloud::signal(2, &rows).unwrap();
    let seeds = LandmarkSet::from_indices(
        &cloud,
        vec![7, 10, 25, 28],
        depthmark_core::landmarks::Method::Maxmin,
        Default::default(),
    )
    .unwrap();
    let part = assign_cells(&cloud, &seeds).unwrap();
    assert_eq!(part.sizes(), vec![9, 9, 9, 9]);
    for tau in [0.25, 0.5, 1.0] {
        assert_eq!(support_weights(&part, 0.6, tau).unwrap(), vec![0.6; 4]);
        assert_eq!(
            recenter_support_weighted(&cloud, &part, 0.6, tau, DepthRule::Exact2d)
                .unwrap()
                .indices,
            recenter_fixed_step(&cloud, &part, 0.6, DepthRule::Exact2d).unwrap().indices
        );
    }
}

#[test]
fn seeded_methods_are_reproducible() {
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    let cloud = cloud_for(&mut rng);
    assert_eq!(
        random_landmarks(&cloud, 10, 3).unwrap(),
        random_landmarks(&cloud, 10, 3).unwrap()
    );
    let part = assign_cells(&cloud, &maxmin(&cloud, 10, 0).unwrap()).unwrap();
    let a = recenter_support_weighted(&cloud, &part, 0.6, 1.0, DepthRule::Exact2d).unwrap();
    let b = recenter_support_weighted(&cloud, &part, 0.6, 1.0, DepthRule::Exact2d).unwrap();
    assert_eq!(a, b);
}

proptest! {
    #[test]
    fn bounds_hold_in_three_dimensions(
        pts in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0), 12..60),
        m in 2usize..10,
        alpha_max in 0.05f64..1.0,
        tau in 0.2f64..2.0,
        seed in any::<u64>(),
    ) {
        let rows: Vec<Vec<f64>> = pts.iter().map(|&(x, y, z)| vec![x, y, z]).collect();
        let cloud = PointCloud::signal(3, &rows).unwrap();
        let seeds = maxmin(&cloud, m, 0).unwrap();
        let r = cover_radius(&cloud, &seeds.coords).unwrap();
        let part = assign_cells(&cloud, &seeds).unwrap();
        let rule = DepthRule::for_dim(3, seed);
        let run = recenter_support_weighted_detailed(&cloud, &part, alpha_max, tau, rule).unwrap();
        let cover = cover_radius(&cloud, &run.landmarks.coords).unwrap();
        prop_assert!(cover <= (2.0f64).min(1.0 + 2.0 * alpha_max) * r + TOL);
        prop_assert!(cover_radius(&cloud, &run.targets).unwrap() <= (1.0 + alpha_max) * r + TOL);
    }
}
