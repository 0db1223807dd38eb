#![allow(dead_code)]

use depthmark_core::geometry::PointCloud;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// A planar point set in one of several shapes, degenerate ones included:
/// uniform, small integer grid (collinear runs and duplicates), a single line,
/// and uniform with repeated points.
pub fn planar_points(rng: &mut ChaCha8Rng, max_len: usize) -> Vec<[f64; 2]> {
    let n = rng.gen_range(1..=max_len);
    match rng.gen_range(0..4) {
        0 => (0..n)
            .map(|_| [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)])
            .collect(),
        1 => (0..n)
            .map(|_| [rng.gen_range(-3..=3) as f64, rng.gen_range(-3..=3) as f64])
            .collect(),
        2 => {
            let a = [rng.gen_range(-3..=3) as f64, rng.gen_range(-3..=3) as f64];
            let d = [rng.gen_range(-2..=2) as f64, rng.gen_range(1..=2) as f64];
            (0..n)
                .map(|_| {
                    let t = rng.gen_range(-4..=4) as f64;
                    [a[0] + t * d[0], a[1] + t * d[1]]
                })
                .collect()
        }
        _ => {
            let mut pts: Vec<[f64; 2]> = (0..n.div_ceil(2))
                .map(|_| [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)])
                .collect();
            while pts.len() < n {
                let p = pts[rng.gen_range(0..pts.len())];
                pts.push(p);
            }
            pts
        }
    }
}

pub fn to_cloud(points: &[[f64; 2]]) -> PointCloud {
    let rows: Vec<Vec<f64>> = points.iter().map(|p| p.to_vec()).collect();
    PointCloud::signal(2, &rows).unwrap()
}

pub fn uniform_cloud(rng: &mut ChaCha8Rng, n: usize, dim: usize) -> PointCloud {
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|_| (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect())
        .collect();
    PointCloud::signal(dim, &rows).unwrap()
}

/// Uniform background plus a few tight clumps, so cells have very
/// different sizes.
pub fn clumpy_cloud(rng: &mut ChaCha8Rng, n: usize) -> PointCloud {
    let centres: Vec<[f64; 2]> = (0..3)
        .map(|_| [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)])
        .collect();
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            if i % 3 == 0 {
                vec![rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)]
            } else {
                let c = centres[i % centres.len()];
                vec![c[0] + rng.gen_range(-0.05..0.05), c[1] + rng.gen_range(-0.05..0.05)]
            }
        })
        .collect();
    PointCloud::signal(2, &rows).unwrap()
}
