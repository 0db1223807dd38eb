//! Landmark selection: maxmin seeding, nearest-seed cells, depth-based
//! recentering of the seeds, and the random / epsilon-net / dense-core
//! baselines.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{deepest_point, squared_distance, DepthRule, Label, PointCloud};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Maxmin,
    Random,
    FullRecenter,
    FixedStep,
    SupportWeighted,
    EpsnetMatched,
    DenseCore,
}

impl Method {
    pub const ALL: [Method; 7] = [
        Method::Maxmin,
        Method::Random,
        Method::FullRecenter,
        Method::FixedStep,
        Method::SupportWeighted,
        Method::EpsnetMatched,
        Method::DenseCore,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Maxmin => "maxmin",
            Method::Random => "random",
            Method::FullRecenter => "full_recenter",
            Method::FixedStep => "fixed_step",
            Method::SupportWeighted => "support_weighted",
            Method::EpsnetMatched => "epsnet_matched",
            Method::DenseCore => "dense_core",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown method {s:?}")))
    }
}

/// Parameters a method was run with; unused ones stay `None`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MethodParams {
    /// Fixed step, or the maximal step of support weighting.
    pub alpha: Option<f64>,
    pub tau: Option<f64>,
    /// Separation scale of an epsilon-net.
    pub epsilon: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LandmarkSet {
    pub indices: Vec<usize>,
    pub coords: Vec<Vec<f64>>,
    pub method: Method,
    pub params: MethodParams,
}

impl LandmarkSet {
    pub fn from_indices(
        cloud: &PointCloud,
        indices: Vec<usize>,
        method: Method,
        params: MethodParams,
    ) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::EmptyLandmarks);
        }
        let coords = indices
            .iter()
            .map(|&i| {
                if i < cloud.len() {
                    Ok(cloud.point(i).to_vec())
                } else {
                    Err(Error::IndexOutOfRange {
                        index: i,
                        len: cloud.len(),
                    })
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            indices,
            coords,
            method,
            params,
        })
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

fn check_budget(cloud: &PointCloud, m: usize) -> Result<()> {
    if m == 0 {
        return Err(Error::InvalidParameter("budget must be positive".into()));
    }
    if m > cloud.len() {
        return Err(Error::BudgetExceedsCloud {
            requested: m,
            available: cloud.len(),
        });
    }
    Ok(())
}

/// Greedy farthest-point indices over `candidates`, starting at `candidates[first]`.
fn farthest_point_order(cloud: &PointCloud, candidates: &[usize], first: usize, m: usize) -> Vec<usize> {
    let mut nearest: Vec<f64> = vec![f64::INFINITY; candidates.len()];
    let mut taken = vec![false; candidates.len()];
    let mut chosen = Vec::with_capacity(m);
    let mut next = first;
    loop {
        taken[next] = true;
        chosen.push(candidates[next]);
        if chosen.len() == m {
            return chosen;
        }
        let s = cloud.point(candidates[next]);
        let mut best: Option<(f64, usize)> = None;
        for (k, &c) in candidates.iter().enumerate() {
            let d = squared_distance(cloud.point(c), s);
            if d < nearest[k] {
                nearest[k] = d;
            }
            if taken[k] {
                continue;
            }
            // strict comparison keeps the lowest index among ties
            if best.is_none_or(|(bd, _)| nearest[k] > bd) {
                best = Some((nearest[k], k));
            }
        }
        next = best.expect("budget checked against candidate count").1;
    }
}

/// Maxmin (farthest-point) landmarks starting from cloud index `first`.
pub fn maxmin(cloud: &PointCloud, m: usize, first: usize) -> Result<LandmarkSet> {
    check_budget(cloud, m)?;
    if first >= cloud.len() {
        return Err(Error::IndexOutOfRange {
            index: first,
            len: cloud.len(),
        });
    }
    let all: Vec<usize> = (0..cloud.len()).collect();
    let idx = farthest_point_order(cloud, &all, first, m);
    LandmarkSet::from_indices(cloud, idx, Method::Maxmin, MethodParams::default())
}

/// Nearest-seed partition of a cloud.
#[derive(Debug, Clone, PartialEq)]
pub struct CellPartition {
    /// Cell (seed position) of every cloud point.
    pub assignment: Vec<usize>,
    /// Cloud indices of each cell, ascending.
    pub cells: Vec<Vec<usize>>,
    /// Cloud indices of the seeds; seed `i` belongs to `cells[i]`.
    pub seeds: Vec<usize>,
}

impl CellPartition {
    pub fn len(&self) -> usize {
        self.seeds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seeds.is_empty()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }
}

/// Assigns each cloud point to its nearest seed (lowest seed position on ties).
/// Seeds are pinned to their own cells even when they coincide with another seed.
pub fn assign_cells(cloud: &PointCloud, seeds: &LandmarkSet) -> Result<CellPartition> {
    if seeds.is_empty() {
        return Err(Error::EmptyLandmarks);
    }
    if let Some(&bad) = seeds.indices.iter().find(|&&i| i >= cloud.len()) {
        return Err(Error::IndexOutOfRange {
            index: bad,
            len: cloud.len(),
        });
    }
    let mut assignment: Vec<usize> = cloud
        .points()
        .map(|p| {
            let mut best = (f64::INFINITY, 0);
            for (k, &s) in seeds.indices.iter().enumerate() {
                let d = squared_distance(p, cloud.point(s));
                if d < best.0 {
                    best = (d, k);
                }
            }
            best.1
        })
        .collect();
    for (k, &s) in seeds.indices.iter().enumerate() {
        assignment[s] = k;
    }
    let mut cells = vec![Vec::new(); seeds.len()];
    for (i, &c) in assignment.iter().enumerate() {
        cells[c].push(i);
    }
    Ok(CellPartition {
        assignment,
        cells,
        seeds: seeds.indices.clone(),
    })
}

/// Output of a cellwise partial recentering, with its intermediates.
#[derive(Debug, Clone, PartialEq)]
pub struct Recentered {
    pub landmarks: LandmarkSet,
    /// Deepest point of each cell.
    pub deepest: Vec<usize>,
    /// Step applied in each cell.
    pub steps: Vec<f64>,
    /// Unprojected targets `(1 - step) * seed + step * deepest`.
    pub targets: Vec<Vec<f64>>,
}

/// Deepest point of every cell.
pub fn deepest_points(cloud: &PointCloud, part: &CellPartition, rule: DepthRule) -> Result<Vec<usize>> {
    part.cells
        .iter()
        .map(|cell| deepest_point(cloud, cell, rule))
        .collect()
}

/// Cell point nearest to `z`; ties go to the lowest cloud index.
fn project_to_cell(cloud: &PointCloud, cell: &[usize], z: &[f64]) -> usize {
    let mut best = (f64::INFINITY, usize::MAX);
    for &i in cell {
        let d = squared_distance(cloud.point(i), z);
        if d < best.0 || (d == best.0 && i < best.1) {
            best = (d, i);
        }
    }
    best.1
}

/// Moves every seed toward its cell's deepest point by the per-cell `steps`
/// and projects the result back onto the same cell.
pub fn partial_recentering(
    cloud: &PointCloud,
    part: &CellPartition,
    steps: &[f64],
    rule: DepthRule,
    method: Method,
    params: MethodParams,
) -> Result<Recentered> {
    if steps.len() != part.len() {
        return Err(Error::InvalidParameter(format!(
            "{} steps for {} cells",
            steps.len(),
            part.len()
        )));
    }
    let deepest = deepest_points(cloud, part, rule)?;
    let mut targets = Vec::with_capacity(part.len());
    let mut indices = Vec::with_capacity(part.len());
    for (i, cell) in part.cells.iter().enumerate() {
        let alpha = steps[i];
        let s = cloud.point(part.seeds[i]);
        let a = cloud.point(deepest[i]);
        let z: Vec<f64> = s
            .iter()
            .zip(a)
            .map(|(sk, ak)| (1.0 - alpha) * sk + alpha * ak)
            .collect();
        indices.push(project_to_cell(cloud, cell, &z));
        targets.push(z);
    }
    Ok(Recentered {
        landmarks: LandmarkSet::from_indices(cloud, indices, method, params)?,
        deepest,
        steps: steps.to_vec(),
        targets,
    })
}

/// Replaces every seed by its cell's deepest point.
pub fn recenter_full(cloud: &PointCloud, part: &CellPartition, rule: DepthRule) -> Result<LandmarkSet> {
    let deepest = deepest_points(cloud, part, rule)?;
    LandmarkSet::from_indices(cloud, deepest, Method::FullRecenter, MethodParams::default())
}

fn check_unit_step(alpha: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::InvalidParameter(format!(
            "step {alpha} outside [0, 1]"
        )));
    }
    Ok(())
}

pub fn recenter_fixed_step_detailed(
    cloud: &PointCloud,
    part: &CellPartition,
    alpha: f64,
    rule: DepthRule,
) -> Result<Recentered> {
    check_unit_step(alpha)?;
    partial_recentering(
        cloud,
        part,
        &vec![alpha; part.len()],
        rule,
        Method::FixedStep,
        MethodParams {
            alpha: Some(alpha),
            ..Default::default()
        },
    )
}

/// Same step `alpha` in every cell.
pub fn recenter_fixed_step(
    cloud: &PointCloud,
    part: &CellPartition,
    alpha: f64,
    rule: DepthRule,
) -> Result<LandmarkSet> {
    Ok(recenter_fixed_step_detailed(cloud, part, alpha, rule)?.landmarks)
}

/// Per-cell steps `alpha_max * min(1, n_i / (tau * n_bar))` with `n_bar = n / m`.
pub fn support_weights(part: &CellPartition, alpha_max: f64, tau: f64) -> Result<Vec<f64>> {
    if !(alpha_max > 0.0 && alpha_max <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "alpha_max {alpha_max} outside (0, 1]"
        )));
    }
    if !(tau > 0.0 && tau.is_finite()) {
        return Err(Error::InvalidParameter(format!("tau {tau} must be positive")));
    }
    let n: usize = part.cells.iter().map(Vec::len).sum();
    let mean_size = n as f64 / part.len() as f64;
    Ok(part
        .cells
        .iter()
        .map(|c| alpha_max * (c.len() as f64 / (tau * mean_size)).min(1.0))
        .collect())
}

pub fn recenter_support_weighted_detailed(
    cloud: &PointCloud,
    part: &CellPartition,
    alpha_max: f64,
    tau: f64,
    rule: DepthRule,
) -> Result<Recentered> {
    let steps = support_weights(part, alpha_max, tau)?;
    partial_recentering(
        cloud,
        part,
        &steps,
        rule,
        Method::SupportWeighted,
        MethodParams {
            alpha: Some(alpha_max),
            tau: Some(tau),
            epsilon: None,
        },
    )
}

/// Support-weighted partial recentering: weakly supported cells move less.
pub fn recenter_support_weighted(
    cloud: &PointCloud,
    part: &CellPartition,
    alpha_max: f64,
    tau: f64,
    rule: DepthRule,
) -> Result<LandmarkSet> {
    Ok(recenter_support_weighted_detailed(cloud, part, alpha_max, tau, rule)?.landmarks)
}

/// `m` distinct indices drawn uniformly without replacement.
pub fn random_landmarks(cloud: &PointCloud, m: usize, rng_seed: u64) -> Result<LandmarkSet> {
    check_budget(cloud, m)?;
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let idx = rand::seq::index::sample(&mut rng, cloud.len(), m).into_vec();
    LandmarkSet::from_indices(cloud, idx, Method::Random, MethodParams::default())
}

/// Greedy net over `order`: admits points farther than `eps` from every
/// admitted point. Stops once `cap` points are admitted.
fn greedy_net(cloud: &PointCloud, order: &[usize], eps: f64, cap: usize) -> Vec<usize> {
    let eps2 = eps * eps;
    let mut net: Vec<usize> = Vec::new();
    for &i in order {
        let p = cloud.point(i);
        if net.iter().all(|&j| squared_distance(p, cloud.point(j)) > eps2) {
            net.push(i);
            if net.len() >= cap {
                break;
            }
        }
    }
    net
}

fn diameter(cloud: &PointCloud) -> f64 {
    let mut best = 0.0f64;
    for i in 0..cloud.len() {
        for j in i + 1..cloud.len() {
            best = best.max(squared_distance(cloud.point(i), cloud.point(j)));
        }
    }
    best.sqrt()
}

const EPSNET_BISECTIONS: usize = 40;

/// Budget-matched epsilon-net over an explicit scan order.
///
/// Bisects the separation scale on `[0, diameter]` until the greedy net has
/// exactly `m` points; otherwise keeps the first `m` points of the net at the
/// smallest scale found that still yields at least `m`, padding from the scan
/// order if even that net is short.
pub fn epsnet_from_order(cloud: &PointCloud, m: usize, order: &[usize]) -> Result<LandmarkSet> {
    check_budget(cloud, m)?;
    if order.len() != cloud.len() {
        return Err(Error::InvalidParameter(
            "scan order must be a permutation of the cloud".into(),
        ));
    }
    let (mut lo, mut hi) = (0.0, diameter(cloud));
    let mut chosen: Option<(f64, Vec<usize>)> = None;
    for _ in 0..EPSNET_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        let net = greedy_net(cloud, order, mid, m + 1);
        match net.len().cmp(&m) {
            std::cmp::Ordering::Equal => {
                chosen = Some((mid, net));
                break;
            }
            std::cmp::Ordering::Greater => lo = mid,
            std::cmp::Ordering::Less => hi = mid,
        }
    }
    let (eps, mut net) = chosen.unwrap_or_else(|| (lo, greedy_net(cloud, order, lo, m)));
    net.truncate(m);
    if net.len() < m {
        for &i in order {
            if net.len() == m {
                break;
            }
            if !net.contains(&i) {
                net.push(i);
            }
        }
    }
    LandmarkSet::from_indices(
        cloud,
        net,
        Method::EpsnetMatched,
        MethodParams {
            epsilon: Some(eps),
            ..Default::default()
        },
    )
}

/// Budget-matched epsilon-net scanning a seeded random permutation.
pub fn epsnet_matched(cloud: &PointCloud, m: usize, rng_seed: u64) -> Result<LandmarkSet> {
    check_budget(cloud, m)?;
    let mut order: Vec<usize> = (0..cloud.len()).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(rng_seed));
    epsnet_from_order(cloud, m, &order)
}

pub const DENSE_CORE_NEIGHBORS: usize = 10;
pub const DENSE_CORE_KEEP: f64 = 0.8;

/// Distance from every point to its `k`-th nearest other point.
pub fn knn_radii(cloud: &PointCloud, k: usize) -> Vec<f64> {
    let n = cloud.len();
    if n < 2 {
        return vec![0.0; n];
    }
    let k = k.clamp(1, n - 1);
    let mut row = Vec::with_capacity(n - 1);
    (0..n)
        .map(|i| {
            row.clear();
            row.extend(
                (0..n)
                    .filter(|&j| j != i)
                    .map(|j| squared_distance(cloud.point(i), cloud.point(j))),
            );
            let (_, kth, _) = row.select_nth_unstable_by(k - 1, f64::total_cmp);
            kth.sqrt()
        })
        .collect()
}

/// Keeps the `keep_fraction` of points with the smallest k-NN radius, then
/// runs maxmin on them starting from the lowest kept cloud index.
pub fn dense_core_maxmin(
    cloud: &PointCloud,
    m: usize,
    k: usize,
    keep_fraction: f64,
) -> Result<LandmarkSet> {
    check_budget(cloud, m)?;
    if k == 0 {
        return Err(Error::InvalidParameter("k must be positive".into()));
    }
    if !(keep_fraction > 0.0 && keep_fraction <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "keep fraction {keep_fraction} outside (0, 1]"
        )));
    }
    let radii = knn_radii(cloud, k);
    let mut order: Vec<usize> = (0..cloud.len()).collect();
    order.sort_by(|&a, &b| radii[a].total_cmp(&radii[b]).then(a.cmp(&b)));
    let keep = ((keep_fraction * cloud.len() as f64).round() as usize).clamp(1, cloud.len());
    let mut kept = order[..keep].to_vec();
    kept.sort_unstable();
    if kept.len() < m {
        return Err(Error::DenseCoreTooSmall {
            survivors: kept.len(),
            budget: m,
        });
    }
    let idx = farthest_point_order(cloud, &kept, 0, m);
    LandmarkSet::from_indices(cloud, idx, Method::DenseCore, MethodParams::default())
}

/// Number of landmarks sitting on outlier-labeled points.
pub fn outlier_landmark_count(cloud: &PointCloud, landmarks: &LandmarkSet) -> usize {
    landmarks
        .indices
        .iter()
        .filter(|&&i| cloud.label(i) == Label::Outlier)
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::cover_radius;

    fn line(xs: &[f64]) -> PointCloud {
        let pts: Vec<Vec<f64>> = xs.iter().map(|&x| vec![x, 0.0]).collect();
        PointCloud::signal(2, &pts).unwrap()
    }

    fn square() -> PointCloud {
        PointCloud::signal(
            2,
            &[
                vec![0.0, 0.0],
                vec![1.0, 0.0],
                vec![1.0, 1.0],
                vec![0.0, 1.0],
            ],
        )
        .unwrap()
    }

    #[test]
    fn maxmin_examples() {
        let x = line(&[0.0, 1.0, 2.0, 10.0]);
        assert_eq!(maxmin(&x, 2, 0).unwrap().indices, vec![0, 3]);
        let mut all = maxmin(&x, 4, 0).unwrap().indices;
        assert_eq!(all, vec![0, 3, 2, 1]);
        all.sort_unstable();
        assert_eq!(all, vec![0, 1, 2, 3]);
        // opposite corner first, then the two adjacent corners tie at distance 1
        assert_eq!(maxmin(&square(), 3, 0).unwrap().indices, vec![0, 2, 1]);
        assert_eq!(
            maxmin(&x, 5, 0).unwrap_err(),
            Error::BudgetExceedsCloud {
                requested: 5,
                available: 4
            }
        );
    }

    #[test]
    fn maxmin_with_duplicates_stays_distinct() {
        let x = line(&[0.0, 0.0, 1.0, 1.0]);
        let mut idx = maxmin(&x, 4, 0).unwrap().indices;
        idx.sort_unstable();
        assert_eq!(idx, vec![0, 1, 2, 3]);
        let seeds = maxmin(&x, 4, 0).unwrap();
        let part = assign_cells(&x, &seeds).unwrap();
        for (k, &s) in part.seeds.iter().enumerate() {
            assert!(part.cells[k].contains(&s));
        }
    }

    #[test]
    fn cells_on_a_line() {
        let x = line(&[0.0, 1.0, 2.0, 10.0]);
        let seeds = maxmin(&x, 2, 0).unwrap();
        let part = assign_cells(&x, &seeds).unwrap();
        assert_eq!(part.cells, vec![vec![0, 1, 2], vec![3]]);
        // midpoint tie goes to the first seed
        let x = line(&[0.0, 1.0, 2.0]);
        let seeds =
            LandmarkSet::from_indices(&x, vec![0, 2], Method::Maxmin, MethodParams::default())
                .unwrap();
        let part = assign_cells(&x, &seeds).unwrap();
        assert_eq!(part.assignment, vec![0, 0, 1]);
    }

    #[test]
    fn full_recentering_on_collinear_cell() {
        let x = line(&[-1.0, 0.0, 1.0]);
        let seeds =
            LandmarkSet::from_indices(&x, vec![0], Method::Maxmin, MethodParams::default()).unwrap();
        let part = assign_cells(&x, &seeds).unwrap();
        let full = recenter_full(&x, &part, DepthRule::Exact2d).unwrap();
        assert_eq!(full.indices, vec![1]);
    }

    #[test]
    fn singleton_cells_do_not_move() {
        let x = square();
        let seeds = maxmin(&x, 4, 0).unwrap();
        let part = assign_cells(&x, &seeds).unwrap();
        let full = recenter_full(&x, &part, DepthRule::Exact2d).unwrap();
        assert_eq!(full.indices, seeds.indices);
    }

    #[test]
    fn fixed_step_projection() {
        let x = line(&[0.0, 1.0, 2.0]);
        let seeds =
            LandmarkSet::from_indices(&x, vec![0], Method::Maxmin, MethodParams::default()).unwrap();
        let part = assign_cells(&x, &seeds).unwrap();
        let r = recenter_fixed_step_detailed(&x, &part, 0.6, DepthRule::Exact2d).unwrap();
        assert_eq!(r.deepest, vec![1]);
        assert!((r.targets[0][0] - 0.6).abs() < 1e-15);
        assert_eq!(r.landmarks.indices, vec![1]);
        // z = 0.5 is equidistant from points 0 and 1
        let r = recenter_fixed_step_detailed(&x, &part, 0.5, DepthRule::Exact2d).unwrap();
        assert_eq!(r.landmarks.indices, vec![0]);
        assert!(recenter_fixed_step(&x, &part, 1.5, DepthRule::Exact2d).is_err());
        assert!(recenter_fixed_step(&x, &part, -0.1, DepthRule::Exact2d).is_err());
    }

    #[test]
    fn support_weight_formula() {
        let part = CellPartition {
            assignment: vec![],
            cells: vec![(0..10).collect(), (10..13).collect(), (13..40).collect()],
            seeds: vec![0, 10, 13],
        };
        // n_bar = 40 / 3
        let w = support_weights(&part, 0.6, 1.0).unwrap();
        let n_bar = 40.0 / 3.0;
        assert!((w[0] - 0.6 * 10.0 / n_bar).abs() < 1e-15);
        assert!((w[1] - 0.6 * 3.0 / n_bar).abs() < 1e-15);
        assert_eq!(w[2], 0.6);
        let quarter = CellPartition {
            assignment: vec![],
            cells: vec![(0..1).collect(), (1..8).collect()],
            seeds: vec![0, 1],
        };
        // n_bar = 4, n_0 = 1 = 0.25 n_bar
        let w = support_weights(&quarter, 0.6, 1.0).unwrap();
        assert!((w[0] - 0.15).abs() < 1e-15);
        assert!(support_weights(&part, 0.0, 1.0).is_err());
        assert!(support_weights(&part, 1.2, 1.0).is_err());
        assert!(support_weights(&part, 0.5, 0.0).is_err());
    }

    #[test]
    fn saturated_support_weight() {
        let part = CellPartition {
            assignment: vec![],
            cells: vec![(0..5).collect(), (5..15).collect()],
            seeds: vec![0, 5],
        };
        // n_bar = 7.5, tau = 2/3 gives tau * n_bar = 5 = n_0
        let w = support_weights(&part, 0.6, 2.0 / 3.0).unwrap();
        assert!((w[0] - 0.6).abs() < 1e-12);
    }

    #[test]
    fn random_landmarks_are_seeded() {
        let x = line(&[0.0, 1.0, 2.0, 3.0, 4.0, 5.0]);
        let a = random_landmarks(&x, 3, 11).unwrap();
        assert_eq!(a, random_landmarks(&x, 3, 11).unwrap());
        let mut all = random_landmarks(&x, 6, 2).unwrap().indices;
        all.sort_unstable();
        assert_eq!(all, (0..6).collect::<Vec<_>>());
        assert_eq!(random_landmarks(&x, 1, 0).unwrap().len(), 1);
        assert!(random_landmarks(&x, 7, 0).is_err());
    }

    #[test]
    fn epsnet_on_a_line() {
        let x = line(&[0.0, 1.0, 2.0, 10.0]);
        let net = epsnet_from_order(&x, 2, &[0, 1, 2, 3]).unwrap();
        assert_eq!(net.indices, vec![0, 3]);
        let eps = net.params.epsilon.unwrap();
        assert!(eps > 2.0 && eps <= 8.0, "eps = {eps}");
        let mut all = epsnet_matched(&x, 4, 5).unwrap().indices;
        all.sort_unstable();
        assert_eq!(all, vec![0, 1, 2, 3]);
    }

    #[test]
    fn epsnet_is_separated_and_covering() {
        let pts: Vec<Vec<f64>> = (0..60)
            .map(|i| {
                let t = i as f64 * 0.37;
                vec![t.cos() * (1.0 + 0.1 * (3.0 * t).sin()), t.sin()]
            })
            .collect();
        let x = PointCloud::signal(2, &pts).unwrap();
        for m in [1, 5, 12, 30] {
            let net = epsnet_matched(&x, m, 3).unwrap();
            assert_eq!(net.len(), m);
            let eps = net.params.epsilon.unwrap();
            for a in 0..m {
                for b in a + 1..m {
                    assert!(
                        crate::geometry::distance(&net.coords[a], &net.coords[b]) > eps,
                        "m={m}"
                    );
                }
            }
        }
    }

    #[test]
    fn dense_core_examples() {
        let x = line(&[0.0, 1.0, 2.0, 10.0, 11.0]);
        let plain = maxmin(&x, 3, 0).unwrap();
        let dense = dense_core_maxmin(&x, 3, 2, 1.0).unwrap();
        assert_eq!(dense.indices, plain.indices);
        assert_eq!(dense.method, Method::DenseCore);

        let mut pts: Vec<Vec<f64>> = (0..20)
            .map(|i| {
                let t = i as f64 * 0.7;
                vec![0.1 * t.cos(), 0.1 * t.sin() * (i as f64 / 20.0)]
            })
            .collect();
        let n_core = pts.len();
        pts.extend([vec![5.0, 5.0], vec![-6.0, 4.0], vec![3.0, -7.0]]);
        let mut labels = vec![Label::Signal; n_core];
        labels.extend([Label::Outlier; 3]);
        let x = PointCloud::new(2, &pts, labels).unwrap();
        let keep = n_core as f64 / x.len() as f64;
        let plain = maxmin(&x, 5, 0).unwrap();
        assert!(outlier_landmark_count(&x, &plain) > 0);
        let dense = dense_core_maxmin(&x, 5, 3, keep).unwrap();
        assert_eq!(outlier_landmark_count(&x, &dense), 0);
        let everything = dense_core_maxmin(&x, n_core, 3, keep).unwrap();
        let mut idx = everything.indices.clone();
        idx.sort_unstable();
        assert_eq!(idx, (0..n_core).collect::<Vec<_>>());
        assert!(matches!(
            dense_core_maxmin(&x, n_core + 1, 3, keep),
            Err(Error::DenseCoreTooSmall { .. })
        ));
    }

    #[test]
    fn outlier_counts() {
        let x = PointCloud::new(
            2,
            &[vec![0.0, 0.0], vec![1.0, 0.0], vec![5.0, 5.0], vec![6.0, 6.0]],
            vec![Label::Signal, Label::Signal, Label::Outlier, Label::Outlier],
        )
        .unwrap();
        let mk = |idx: Vec<usize>| {
            LandmarkSet::from_indices(&x, idx, Method::Random, MethodParams::default()).unwrap()
        };
        assert_eq!(outlier_landmark_count(&x, &mk(vec![0, 1])), 0);
        assert_eq!(outlier_landmark_count(&x, &mk(vec![2, 3])), 2);
        assert_eq!(outlier_landmark_count(&x, &mk(vec![0, 2, 3, 1])), 2);
    }

    #[test]
    fn recentered_cover_stays_within_twice_the_seed_radius() {
        let pts: Vec<Vec<f64>> = (0..80)
            .map(|i| {
                let t = i as f64 * 0.61;
                vec![t.cos() * (1.0 + 0.2 * (i % 7) as f64), t.sin()]
            })
            .collect();
        let x = PointCloud::signal(2, &pts).unwrap();
        let seeds = maxmin(&x, 8, 0).unwrap();
        let r = cover_radius(&x, &seeds.coords).unwrap();
        let part = assign_cells(&x, &seeds).unwrap();
        let full = recenter_full(&x, &part, DepthRule::Exact2d).unwrap();
        assert!(cover_radius(&x, &full.coords).unwrap() <= 2.0 * r + 1e-9);
    }

    #[test]
    fn method_names_round_trip() {
        for m in Method::ALL {
            assert_eq!(m.as_str().parse::<Method>().unwrap(), m);
        }
        assert!("bogus".parse::<Method>().is_err());
    }
}
