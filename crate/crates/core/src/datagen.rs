//! Synthetic signal families, contamination, normalization and silhouette
//! ingestion.
//!
//! All geometric constants are configuration. Defaults: unit circles with
//! radial Gaussian noise, two circles centered at (+-1.5, 0), a figure-eight
//! made of two unit circles tangent at the origin, and a torus with radii
//! 1.0 / 0.35. Contaminants are drawn in the signal bounding box scaled by
//! 1.25 about its center, either uniformly or as three tight Gaussian clusters.

use std::f64::consts::TAU;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::geometry::{Label, PointCloud};
use crate::pgm::GrayImage;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Circle,
    TwoCircles,
    FigureEight,
    Torus,
    Silhouette,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::Circle => "circle",
            Family::TwoCircles => "two_circles",
            Family::FigureEight => "figure_eight",
            Family::Torus => "torus",
            Family::Silhouette => "silhouette",
        }
    }

    /// Expected (beta_1, beta_2) of the signal.
    pub fn target_betti(self) -> (usize, usize) {
        match self {
            Family::Circle | Family::Silhouette => (1, 0),
            Family::TwoCircles | Family::FigureEight => (2, 0),
            Family::Torus => (2, 1),
        }
    }

    pub fn dim(self) -> usize {
        if self == Family::Torus {
            3
        } else {
            2
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            Family::Circle,
            Family::TwoCircles,
            Family::FigureEight,
            Family::Torus,
            Family::Silhouette,
        ]
        .into_iter()
        .find(|f| f.as_str() == s)
        .ok_or_else(|| Error::InvalidParameter(format!("unknown family {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Contamination {
    Clean,
    Uniform,
    Cluster,
}

impl Contamination {
    pub fn as_str(self) -> &'static str {
        match self {
            Contamination::Clean => "clean",
            Contamination::Uniform => "uniform",
            Contamination::Cluster => "cluster",
        }
    }
}

impl fmt::Display for Contamination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Contamination {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "clean" => Ok(Contamination::Clean),
            "uniform" => Ok(Contamination::Uniform),
            "cluster" => Ok(Contamination::Cluster),
            _ => Err(Error::InvalidParameter(format!(
                "unknown contamination {s:?}"
            ))),
        }
    }
}

pub const DEFAULT_OUTLIER_FRACTION: f64 = 0.10;
pub const CLUSTER_COUNT: usize = 3;
pub const CLUSTER_SIGMA: f64 = 0.05;
pub const BOX_INFLATION: f64 = 1.25;
pub const TORUS_MAJOR: f64 = 1.0;
pub const TORUS_MINOR: f64 = 0.35;

#[derive(Debug, Clone, PartialEq)]
pub struct DatasetSpec {
    pub family: Family,
    pub n_signal: usize,
    pub noise_sigma: f64,
    pub contamination: Contamination,
    pub outlier_fraction: f64,
    pub seed: u64,
}

impl DatasetSpec {
    /// Family defaults: 400 planar points with sigma 0.05, or 800 torus points
    /// with sigma 0.02; 10% contamination.
    pub fn new(family: Family, contamination: Contamination, seed: u64) -> Self {
        let (n_signal, noise_sigma) = match family {
            Family::Torus => (800, 0.02),
            _ => (400, 0.05),
        };
        Self {
            family,
            n_signal,
            noise_sigma,
            contamination,
            outlier_fraction: DEFAULT_OUTLIER_FRACTION,
            seed,
        }
    }

    pub fn target_h1(&self) -> usize {
        self.family.target_betti().0
    }

    pub fn outlier_count(&self) -> usize {
        match self.contamination {
            Contamination::Clean => 0,
            _ => (self.outlier_fraction * self.n_signal as f64).round() as usize,
        }
    }
}

fn circle_points(
    rng: &mut ChaCha8Rng,
    n: usize,
    center: [f64; 2],
    radius: f64,
    sigma: f64,
) -> Vec<Vec<f64>> {
    let noise = Normal::new(0.0, sigma.max(0.0)).expect("finite sigma");
    (0..n)
        .map(|_| {
            let t = rng.gen_range(0.0..TAU);
            let r = radius + if sigma > 0.0 { noise.sample(rng) } else { 0.0 };
            vec![center[0] + r * t.cos(), center[1] + r * t.sin()]
        })
        .collect()
}

/// Area-uniform torus samples, noise along the tube normal.
fn torus_points(rng: &mut ChaCha8Rng, n: usize, major: f64, minor: f64, sigma: f64) -> Vec<Vec<f64>> {
    let noise = Normal::new(0.0, sigma.max(0.0)).expect("finite sigma");
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let theta = rng.gen_range(0.0..TAU);
        let phi = rng.gen_range(0.0..TAU);
        // accept with probability proportional to the area element
        let w = (major + minor * phi.cos()) / (major + minor);
        if rng.gen::<f64>() > w {
            continue;
        }
        let r = minor + if sigma > 0.0 { noise.sample(rng) } else { 0.0 };
        let ring = major + r * phi.cos();
        out.push(vec![ring * theta.cos(), ring * theta.sin(), r * phi.sin()]);
    }
    out
}

fn split(n: usize, parts: usize) -> Vec<usize> {
    (0..parts)
        .map(|k| n / parts + usize::from(k < n % parts))
        .collect()
}

fn signal_points(spec: &DatasetSpec, rng: &mut ChaCha8Rng) -> Result<Vec<Vec<f64>>> {
    let n = spec.n_signal;
    let sigma = spec.noise_sigma;
    Ok(match spec.family {
        Family::Circle => circle_points(rng, n, [0.0, 0.0], 1.0, sigma),
        Family::TwoCircles => {
            let parts = split(n, 2);
            let mut pts = circle_points(rng, parts[0], [-1.5, 0.0], 1.0, sigma);
            pts.extend(circle_points(rng, parts[1], [1.5, 0.0], 1.0, sigma));
            pts
        }
        Family::FigureEight => {
            let parts = split(n, 2);
            let mut pts = circle_points(rng, parts[0], [-1.0, 0.0], 1.0, sigma);
            pts.extend(circle_points(rng, parts[1], [1.0, 0.0], 1.0, sigma));
            pts
        }
        Family::Torus => torus_points(rng, n, TORUS_MAJOR, TORUS_MINOR, sigma),
        Family::Silhouette => {
            return Err(Error::InvalidParameter(
                "silhouette clouds come from load_silhouette_pgm".into(),
            ))
        }
    })
}

/// Generates the signal cloud of `spec` and appends its contamination.
/// Deterministic in `spec.seed`.
pub fn generate(spec: &DatasetSpec) -> Result<PointCloud> {
    if spec.n_signal == 0 {
        return Err(Error::InvalidParameter("n_signal must be positive".into()));
    }
    if !(spec.noise_sigma >= 0.0 && spec.noise_sigma.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "noise sigma {} must be finite and nonnegative",
            spec.noise_sigma
        )));
    }
    if !(0.0..=10.0).contains(&spec.outlier_fraction) {
        return Err(Error::InvalidParameter(format!(
            "outlier fraction {} out of range",
            spec.outlier_fraction
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let pts = signal_points(spec, &mut rng)?;
    let mut cloud = PointCloud::signal(spec.family.dim(), &pts)?;
    apply_contamination(&mut cloud, spec.contamination, spec.outlier_count(), &mut rng)?;
    Ok(cloud)
}

/// Signal bounding box scaled by [`BOX_INFLATION`] about its center.
fn inflated_box(cloud: &PointCloud) -> Result<(Vec<f64>, Vec<f64>)> {
    let (lo, hi) = cloud
        .bounding_box(|l| l == Label::Signal)
        .ok_or(Error::NoSignalPoints)?;
    Ok(lo
        .iter()
        .zip(&hi)
        .map(|(a, b)| {
            let c = 0.5 * (a + b);
            let h = 0.5 * (b - a) * BOX_INFLATION;
            (c - h, c + h)
        })
        .unzip())
}

fn uniform_in(rng: &mut impl Rng, lo: &[f64], hi: &[f64]) -> Vec<f64> {
    lo.iter()
        .zip(hi)
        .map(|(&a, &b)| if b > a { rng.gen_range(a..b) } else { a })
        .collect()
}

/// Appends `count` outliers uniform in the inflated signal box.
pub fn add_uniform_outliers(cloud: &mut PointCloud, count: usize, rng: &mut impl Rng) -> Result<()> {
    let (lo, hi) = inflated_box(cloud)?;
    let pts: Vec<Vec<f64>> = (0..count).map(|_| uniform_in(rng, &lo, &hi)).collect();
    cloud.extend(&pts, Label::Outlier)
}

/// Appends `count` outliers split across [`CLUSTER_COUNT`] Gaussian clusters
/// whose centers are uniform in the inflated signal box.
pub fn add_cluster_outliers(cloud: &mut PointCloud, count: usize, rng: &mut impl Rng) -> Result<()> {
    let (lo, hi) = inflated_box(cloud)?;
    let noise = Normal::new(0.0, CLUSTER_SIGMA).expect("positive sigma");
    let mut pts = Vec::with_capacity(count);
    for size in split(count, CLUSTER_COUNT) {
        let center = uniform_in(rng, &lo, &hi);
        for _ in 0..size {
            pts.push(center.iter().map(|c| c + noise.sample(rng)).collect());
        }
    }
    cloud.extend(&pts, Label::Outlier)
}

pub fn apply_contamination(
    cloud: &mut PointCloud,
    contamination: Contamination,
    count: usize,
    rng: &mut impl Rng,
) -> Result<()> {
    match contamination {
        Contamination::Clean => Ok(()),
        Contamination::Uniform => add_uniform_outliers(cloud, count, rng),
        Contamination::Cluster => add_cluster_outliers(cloud, count, rng),
    }
}

/// Contaminates an existing (e.g. silhouette) cloud with
/// `round(fraction * signal count)` outliers.
pub fn contaminate(
    cloud: &PointCloud,
    contamination: Contamination,
    fraction: f64,
    seed: u64,
) -> Result<PointCloud> {
    let mut out = cloud.clone();
    let count = (fraction * cloud.signal_count() as f64).round() as usize;
    apply_contamination(&mut out, contamination, count, &mut ChaCha8Rng::seed_from_u64(seed))?;
    Ok(out)
}

/// Centers the signal centroid at the origin and scales so the longest side
/// of the signal bounding box is 2. A degenerate box keeps scale 1.
pub fn normalize(cloud: &PointCloud) -> Result<PointCloud> {
    let dim = cloud.dim();
    let signal: Vec<&[f64]> = cloud
        .points()
        .zip(cloud.labels())
        .filter(|(_, l)| **l == Label::Signal)
        .map(|(p, _)| p)
        .collect();
    if signal.is_empty() {
        return Err(Error::NoSignalPoints);
    }
    let mut centroid = vec![0.0; dim];
    for p in &signal {
        for k in 0..dim {
            centroid[k] += p[k];
        }
    }
    centroid.iter_mut().for_each(|c| *c /= signal.len() as f64);
    let (lo, hi) = cloud
        .bounding_box(|l| l == Label::Signal)
        .ok_or(Error::NoSignalPoints)?;
    let side = lo.iter().zip(&hi).map(|(a, b)| b - a).fold(0.0, f64::max);
    let scale = if side > 0.0 { 2.0 / side } else { 1.0 };
    let coords = cloud
        .points()
        .flat_map(|p| {
            p.iter()
                .zip(&centroid)
                .map(|(x, c)| (x - c) * scale)
                .collect::<Vec<_>>()
        })
        .collect();
    PointCloud::from_flat(dim, coords, cloud.labels().to_vec())
}

/// Foreground pixels (above mid-gray) with a background 4-neighbor; pixels
/// outside the image count as background. Returned as (column, row).
pub fn boundary_pixels(img: &GrayImage) -> Vec<(usize, usize)> {
    let fg = |x: isize, y: isize| {
        x >= 0
            && y >= 0
            && (x as usize) < img.width
            && (y as usize) < img.height
            && img.is_foreground(x as usize, y as usize)
    };
    let mut out = Vec::new();
    for y in 0..img.height {
        for x in 0..img.width {
            if !img.is_foreground(x, y) {
                continue;
            }
            let (xi, yi) = (x as isize, y as isize);
            if !(fg(xi - 1, yi) && fg(xi + 1, yi) && fg(xi, yi - 1) && fg(xi, yi + 1)) {
                out.push((x, y));
            }
        }
    }
    out
}

/// Samples `n_boundary` boundary pixels of a silhouette (seeded, kept in
/// raster order) and normalizes them. Image rows grow downward; y is flipped.
pub fn silhouette_cloud(img: &GrayImage, n_boundary: usize, seed: u64) -> Result<PointCloud> {
    if n_boundary == 0 {
        return Err(Error::InvalidParameter("n_boundary must be positive".into()));
    }
    if !(0..img.height).any(|y| (0..img.width).any(|x| img.is_foreground(x, y))) {
        return Err(Error::EmptyForeground);
    }
    let boundary = boundary_pixels(img);
    if boundary.len() < n_boundary {
        return Err(Error::TooFewBoundaryPixels {
            requested: n_boundary,
            available: boundary.len(),
        });
    }
    let mut picked = if n_boundary == boundary.len() {
        (0..boundary.len()).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rand::seq::index::sample(&mut rng, boundary.len(), n_boundary).into_vec()
    };
    picked.sort_unstable();
    let pts: Vec<Vec<f64>> = picked
        .into_iter()
        .map(|k| {
            let (x, y) = boundary[k];
            vec![x as f64, -(y as f64)]
        })
        .collect();
    normalize(&PointCloud::signal(2, &pts)?)
}

pub fn load_silhouette_pgm(path: &Path, n_boundary: usize, seed: u64) -> Result<PointCloud> {
    silhouette_cloud(&GrayImage::read(path)?, n_boundary, seed)
}
