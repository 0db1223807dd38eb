//! Point clouds, halfspace depth and cover radii.
//!
//! Planar depth is exact: every sidedness decision goes through an
//! adaptive-precision orientation predicate, so two routines that agree
//! combinatorially also agree bit-for-bit on floating-point input.
//! Depth in three dimensions is approximated by sampling closed halfspaces
//! through the query point, which can only over-estimate the true depth.

use std::cmp::Ordering;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};

/// Provenance of a point: drawn from the signal, or added as contamination.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Label {
    Signal,
    Outlier,
}

impl Label {
    pub fn as_str(self) -> &'static str {
        match self {
            Label::Signal => "signal",
            Label::Outlier => "outlier",
        }
    }

    pub fn parse(s: &str) -> Option<Label> {
        match s.trim().to_ascii_lowercase().as_str() {
            "signal" | "s" | "0" => Some(Label::Signal),
            "outlier" | "o" | "1" => Some(Label::Outlier),
            _ => None,
        }
    }
}

/// A labeled, nonempty, finite point set in R^2 or R^3.
///
/// Coordinates are stored row-major in one buffer; `point(i)` borrows row `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    dim: usize,
    coords: Vec<f64>,
    labels: Vec<Label>,
}

impl PointCloud {
    pub fn new(dim: usize, points: &[Vec<f64>], labels: Vec<Label>) -> Result<Self> {
        let mut coords = Vec::with_capacity(points.len() * dim);
        for p in points {
            if p.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: p.len(),
                });
            }
            coords.extend_from_slice(p);
        }
        Self::from_flat(dim, coords, labels)
    }

    /// All points labeled [`Label::Signal`].
    pub fn signal(dim: usize, points: &[Vec<f64>]) -> Result<Self> {
        Self::new(dim, points, vec![Label::Signal; points.len()])
    }

    pub fn from_flat(dim: usize, coords: Vec<f64>, labels: Vec<Label>) -> Result<Self> {
        if !(2..=3).contains(&dim) {
            return Err(Error::InvalidParameter(format!(
                "ambient dimension must be 2 or 3, got {dim}"
            )));
        }
        if coords.is_empty() {
            return Err(Error::EmptyPointSet);
        }
        if coords.len() % dim != 0 || coords.len() / dim != labels.len() {
            return Err(Error::DimensionMismatch {
                expected: labels.len() * dim,
                found: coords.len(),
            });
        }
        if let Some(pos) = coords.iter().position(|c| !c.is_finite()) {
            return Err(Error::NonFinite(pos / dim));
        }
        Ok(Self {
            dim,
            coords,
            labels,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn label(&self, i: usize) -> Label {
        self.labels[i]
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = &[f64]> + Clone + '_ {
        self.coords.chunks_exact(self.dim)
    }

    pub fn signal_count(&self) -> usize {
        self.labels.iter().filter(|l| **l == Label::Signal).count()
    }

    pub fn outlier_count(&self) -> usize {
        self.len() - self.signal_count()
    }

    /// Sub-cloud made of the given indices, in the given order.
    pub fn select(&self, indices: &[usize]) -> Result<Self> {
        let mut coords = Vec::with_capacity(indices.len() * self.dim);
        let mut labels = Vec::with_capacity(indices.len());
        for &i in indices {
            if i >= self.len() {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    len: self.len(),
                });
            }
            coords.extend_from_slice(self.point(i));
            labels.push(self.labels[i]);
        }
        Self::from_flat(self.dim, coords, labels)
    }

    /// The signal-labeled sub-cloud.
    pub fn signal_part(&self) -> Result<Self> {
        let idx: Vec<usize> = (0..self.len())
            .filter(|&i| self.labels[i] == Label::Signal)
            .collect();
        if idx.is_empty() {
            return Err(Error::NoSignalPoints);
        }
        self.select(&idx)
    }

    /// Appends points with a common label.
    pub fn extend(&mut self, points: &[Vec<f64>], label: Label) -> Result<()> {
        for p in points {
            if p.len() != self.dim {
                return Err(Error::DimensionMismatch {
                    expected: self.dim,
                    found: p.len(),
                });
            }
            if p.iter().any(|c| !c.is_finite()) {
                return Err(Error::NonFinite(self.len()));
            }
            self.coords.extend_from_slice(p);
            self.labels.push(label);
        }
        Ok(())
    }

    /// Axis-aligned bounding box of the points matching `filter`.
    pub fn bounding_box(&self, filter: impl Fn(Label) -> bool) -> Option<(Vec<f64>, Vec<f64>)> {
        let mut lo = vec![f64::INFINITY; self.dim];
        let mut hi = vec![f64::NEG_INFINITY; self.dim];
        let mut any = false;
        for (p, l) in self.points().zip(&self.labels) {
            if !filter(*l) {
                continue;
            }
            any = true;
            for k in 0..self.dim {
                lo[k] = lo[k].min(p[k]);
                hi[k] = hi[k].max(p[k]);
            }
        }
        any.then_some((lo, hi))
    }
}

pub fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

pub fn distance(a: &[f64], b: &[f64]) -> f64 {
    squared_distance(a, b).sqrt()
}

/// Halfspace (Tukey) depth: a count of points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Depth(pub usize);

/// Sign of the orientation of the triangle (a, b, c); positive when counterclockwise.
pub(crate) fn orientation(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> Ordering {
    let o = robust::orient2d(
        robust::Coord { x: a[0], y: a[1] },
        robust::Coord { x: b[0], y: b[1] },
        robust::Coord { x: c[0], y: c[1] },
    );
    o.partial_cmp(&0.0).unwrap_or(Ordering::Equal)
}

/// 0 for directions in the half-turn [0, pi) around `y`, 1 for [pi, 2 pi).
fn half_turn(y: [f64; 2], p: [f64; 2]) -> u8 {
    if p[1] > y[1] || (p[1] == y[1] && p[0] > y[0]) {
        0
    } else {
        1
    }
}

/// Exact planar depth of `y` with respect to `points` by an angular sweep.
///
/// Points equal to `y` lie in every halfplane. For the rest, the minimum over
/// closed halfplanes through `y` is attained at a generic direction, where it
/// equals `n - (largest number of directions inside a half-open half-turn)`.
pub fn planar_depth(points: &[[f64; 2]], y: [f64; 2]) -> usize {
    let mut coincident = 0;
    let mut around: Vec<[f64; 2]> = Vec::with_capacity(points.len());
    for &p in points {
        if p == y {
            coincident += 1;
        } else {
            around.push(p);
        }
    }
    let n = around.len();
    if n == 0 {
        return coincident;
    }
    around.sort_by(|&a, &b| {
        half_turn(y, a)
            .cmp(&half_turn(y, b))
            .then_with(|| orientation(y, a, b).reverse())
    });
    let in_window = |start: [f64; 2], q: [f64; 2]| match orientation(y, start, q) {
        Ordering::Greater => true,
        Ordering::Equal => half_turn(y, start) == half_turn(y, q),
        Ordering::Less => false,
    };
    let mut best = 0;
    let mut end = 0;
    for i in 0..n {
        end = end.max(i + 1);
        while end < i + n && in_window(around[i], around[end % n]) {
            end += 1;
        }
        best = best.max(end - i);
    }
    coincident + n - best
}

fn planar(p: &[f64]) -> [f64; 2] {
    [p[0], p[1]]
}

/// Exact halfspace depth of `y` with respect to a planar cloud.
pub fn halfspace_depth_2d(cloud: &PointCloud, y: &[f64]) -> Result<Depth> {
    if cloud.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    if cloud.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: cloud.dim(),
        });
    }
    if y.len() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: y.len(),
        });
    }
    let pts: Vec<[f64; 2]> = cloud.points().map(planar).collect();
    Ok(Depth(planar_depth(&pts, planar(y))))
}

/// `n` unit directions, normalized Gaussian vectors from a seeded stream.
pub fn sample_directions(dim: usize, n: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let v: Vec<f64> = (0..dim).map(|_| StandardNormal.sample(&mut rng)).collect();
        let norm = v.iter().map(|c| c * c).sum::<f64>().sqrt();
        if norm > 1e-12 {
            out.push(v.into_iter().map(|c| c / norm).collect());
        }
    }
    out
}

/// Minimum closed-halfspace count over `dirs` and their negations.
pub(crate) fn depth_over_directions<'a>(
    points: impl Iterator<Item = &'a [f64]> + Clone,
    y: &[f64],
    dirs: &[Vec<f64>],
) -> usize {
    let mut best = usize::MAX;
    for u in dirs {
        let (mut pos, mut neg) = (0, 0);
        for p in points.clone() {
            let s: f64 = p.iter().zip(y).zip(u).map(|((a, b), c)| (a - b) * c).sum();
            if s >= 0.0 {
                pos += 1;
            }
            if s <= 0.0 {
                neg += 1;
            }
        }
        best = best.min(pos).min(neg);
    }
    best
}

/// Approximate halfspace depth from `n_dirs` sampled directions (both
/// orientations of each). Never below the exact depth.
pub fn directional_depth_approx(
    cloud: &PointCloud,
    y: &[f64],
    n_dirs: usize,
    rng_seed: u64,
) -> Result<Depth> {
    if n_dirs == 0 {
        return Err(Error::InvalidParameter("n_dirs must be positive".into()));
    }
    if y.len() != cloud.dim() {
        return Err(Error::DimensionMismatch {
            expected: cloud.dim(),
            found: y.len(),
        });
    }
    let dirs = sample_directions(cloud.dim(), n_dirs, rng_seed);
    Ok(Depth(depth_over_directions(cloud.points(), y, &dirs)))
}

/// Default number of sampled directions for approximate depth.
pub const DEFAULT_DIRECTIONS: usize = 64;

/// How depth is evaluated when picking a cell's deepest point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DepthRule {
    /// Exact planar depth.
    Exact2d,
    /// Sampled-direction depth, for clouds in R^3.
    Directional { n_dirs: usize, seed: u64 },
}

impl DepthRule {
    /// Exact depth in the plane, sampled directions otherwise.
    pub fn for_dim(dim: usize, seed: u64) -> Self {
        if dim == 2 {
            DepthRule::Exact2d
        } else {
            DepthRule::Directional {
                n_dirs: DEFAULT_DIRECTIONS,
                seed,
            }
        }
    }
}

/// Depths of each cell point with respect to the cell.
pub fn cell_depths(cloud: &PointCloud, cell: &[usize], rule: DepthRule) -> Result<Vec<Depth>> {
    if cell.is_empty() {
        return Err(Error::EmptyCell);
    }
    if let Some(&bad) = cell.iter().find(|&&i| i >= cloud.len()) {
        return Err(Error::IndexOutOfRange {
            index: bad,
            len: cloud.len(),
        });
    }
    match rule {
        DepthRule::Exact2d => {
            if cloud.dim() != 2 {
                return Err(Error::DimensionMismatch {
                    expected: 2,
                    found: cloud.dim(),
                });
            }
            let pts: Vec<[f64; 2]> = cell.iter().map(|&i| planar(cloud.point(i))).collect();
            Ok(pts.iter().map(|&y| Depth(planar_depth(&pts, y))).collect())
        }
        DepthRule::Directional { n_dirs, seed } => {
            if n_dirs == 0 {
                return Err(Error::InvalidParameter("n_dirs must be positive".into()));
            }
            let dirs = sample_directions(cloud.dim(), n_dirs, seed);
            let members = cell.iter().map(|&i| cloud.point(i));
            Ok(cell
                .iter()
                .map(|&i| Depth(depth_over_directions(members.clone(), cloud.point(i), &dirs)))
                .collect())
        }
    }
}

/// Cloud index of the deepest point of `cell` (depth taken within the cell);
/// ties go to the lowest cloud index.
pub fn deepest_point(cloud: &PointCloud, cell: &[usize], rule: DepthRule) -> Result<usize> {
    let depths = cell_depths(cloud, cell, rule)?;
    let mut best = (Depth(0), usize::MAX);
    for (&i, &d) in cell.iter().zip(&depths) {
        if d > best.0 || (d == best.0 && i < best.1) {
            best = (d, i);
        }
    }
    Ok(best.1)
}

fn nearest_distance(p: &[f64], landmarks: &[Vec<f64>]) -> f64 {
    landmarks
        .iter()
        .map(|l| squared_distance(p, l))
        .fold(f64::INFINITY, f64::min)
        .sqrt()
}

fn check_landmarks(cloud: &PointCloud, landmarks: &[Vec<f64>]) -> Result<()> {
    if landmarks.is_empty() {
        return Err(Error::EmptyLandmarks);
    }
    if let Some(l) = landmarks.iter().find(|l| l.len() != cloud.dim()) {
        return Err(Error::DimensionMismatch {
            expected: cloud.dim(),
            found: l.len(),
        });
    }
    Ok(())
}

/// Largest distance from a cloud point to its nearest landmark.
pub fn cover_radius(cloud: &PointCloud, landmarks: &[Vec<f64>]) -> Result<f64> {
    check_landmarks(cloud, landmarks)?;
    Ok(cloud
        .points()
        .map(|p| nearest_distance(p, landmarks))
        .fold(0.0, f64::max))
}

/// Mean distance from a signal point to its nearest landmark.
pub fn mean_signal_cover(cloud: &PointCloud, landmarks: &[Vec<f64>]) -> Result<f64> {
    check_landmarks(cloud, landmarks)?;
    let (sum, count) = cloud
        .points()
        .zip(cloud.labels())
        .filter(|(_, l)| **l == Label::Signal)
        .fold((0.0, 0usize), |(s, c), (p, _)| {
            (s + nearest_distance(p, landmarks), c + 1)
        });
    if count == 0 {
        return Err(Error::NoSignalPoints);
    }
    Ok(sum / count as f64)
}
