//! Torus preset: 3D clouds read over a band of witness radii.

use std::time::Instant;

use depthmark_core::datagen::{generate, Contamination, DatasetSpec, Family};
use depthmark_core::geometry::{mean_signal_cover, PointCloud};
use depthmark_core::landmarks::outlier_landmark_count;
use depthmark_core::persistence::{compute_persistence, PersistenceDiagram};
use depthmark_core::witness::{build_lazy_witness, simplex_count, WitnessConfig};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{BenchError, Result};
use crate::methods::MethodSpec;
use crate::presets::worker_pool;
use crate::record::TorusRecord;
use crate::seeds::{cloud_hash, trial_seed};

pub const DEFAULT_BAND: [f64; 3] = [0.52, 0.56, 0.60];
pub const DEFAULT_TORUS_BUDGET: usize = 40;
pub const TORUS_ALPHA_MAX: f64 = 0.55;
pub const TORUS_TAU: f64 = 1.0;

/// Contamination regimes of the torus study.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum TorusNoise {
    Clean,
    MildCluster,
    ModerateCluster,
}

impl TorusNoise {
    pub const ALL: [TorusNoise; 3] = [TorusNoise::Clean, TorusNoise::MildCluster, TorusNoise::ModerateCluster];

    pub fn as_str(self) -> &'static str {
        match self {
            TorusNoise::Clean => "clean",
            TorusNoise::MildCluster => "mild_cluster",
            TorusNoise::ModerateCluster => "moderate_cluster",
        }
    }

    /// Contamination model and outlier fraction.
    pub fn contamination(self) -> (Contamination, f64) {
        match self {
            TorusNoise::Clean => (Contamination::Clean, 0.0),
            TorusNoise::MildCluster => (Contamination::Cluster, 0.05),
            TorusNoise::ModerateCluster => (Contamination::Cluster, 0.10),
        }
    }
}

/// Lifetime thresholds for the torus signature, normally produced by [`pilot`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TorusThresholds {
    pub h1: f64,
    pub h2: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BandHits {
    pub h1_hit: bool,
    pub h2_hit: bool,
    pub torus_hit: bool,
    pub hit_radius: Option<f64>,
}

/// Bars of `dim` present at radius `r` whose lifetime, cut off at `r`, is
/// at least `thresh`. Classes still alive at `r` count with lifetime `r - birth`.
pub fn clipped_count(d: &PersistenceDiagram, dim: usize, r: f64, thresh: f64) -> usize {
    d.in_dim(dim)
        .filter(|b| b.birth <= r && b.death.min(r) - b.birth >= thresh)
        .count()
}

/// Reads a diagram (built with R_max at least the largest band radius) at
/// every radius of the band. The signature needs two H1 and one H2 bar at a
/// common radius.
pub fn band_hits(d: &PersistenceDiagram, band: &[f64], th: TorusThresholds) -> Result<BandHits> {
    if band.is_empty() {
        return Err(BenchError::EmptyBand);
    }
    let mut hits = BandHits::default();
    for &r in band {
        let h1 = clipped_count(d, 1, r, th.h1) == 2;
        let h2 = clipped_count(d, 2, r, th.h2) == 1;
        hits.h1_hit |= h1;
        hits.h2_hit |= h2;
        if h1 && h2 && !hits.torus_hit {
            hits.torus_hit = true;
            hits.hit_radius = Some(r);
        }
    }
    Ok(hits)
}

#[derive(Debug, Clone)]
pub struct TorusConfig {
    pub master_seed: u64,
    pub trials: usize,
    pub budget: usize,
    pub nu: usize,
    pub band: Vec<f64>,
    pub thresholds: TorusThresholds,
    pub noises: Vec<TorusNoise>,
    pub methods: Vec<MethodSpec>,
}

impl TorusConfig {
    pub fn new(master_seed: u64, trials: usize, thresholds: TorusThresholds) -> Self {
        Self {
            master_seed,
            trials,
            budget: DEFAULT_TORUS_BUDGET,
            nu: 1,
            band: DEFAULT_BAND.to_vec(),
            thresholds,
            noises: TorusNoise::ALL.to_vec(),
            methods: vec![
                MethodSpec::Maxmin,
                MethodSpec::SupportWeighted {
                    alpha_max: TORUS_ALPHA_MAX,
                    tau: TORUS_TAU,
                },
            ],
        }
    }

    fn witness(&self) -> Result<WitnessConfig> {
        let r_max = self.band.iter().copied().fold(f64::NAN, f64::max);
        if self.band.is_empty() {
            return Err(BenchError::EmptyBand);
        }
        Ok(WitnessConfig {
            nu: self.nu,
            r_max,
            max_dim: 3,
        })
    }
}

pub fn torus_cloud(noise: TorusNoise, seed: u64) -> Result<PointCloud> {
    let (contamination, outlier_fraction) = noise.contamination();
    Ok(generate(&DatasetSpec {
        outlier_fraction,
        ..DatasetSpec::new(Family::Torus, contamination, seed)
    })?)
}

/// Band reading of every method on one cloud.
pub fn evaluate_torus_trial(
    cloud: &PointCloud,
    methods: &[MethodSpec],
    budget: usize,
    seed: u64,
    witness: &WitnessConfig,
    band: &[f64],
    th: TorusThresholds,
) -> Result<Vec<(BandHits, f64, usize, usize, f64)>> {
    methods
        .iter()
        .map(|spec| {
            let start = Instant::now();
            let lms = spec.select(cloud, budget, seed)?;
            let f = build_lazy_witness(&lms.coords, cloud, witness)?;
            let hits = band_hits(&compute_persistence(&f)?, band, th)?;
            Ok((
                hits,
                mean_signal_cover(cloud, &lms.coords)?,
                outlier_landmark_count(cloud, &lms),
                simplex_count(&f),
                start.elapsed().as_secs_f64(),
            ))
        })
        .collect()
}

pub fn run_torus(cfg: &TorusConfig) -> Result<Vec<TorusRecord>> {
    let witness = cfg.witness()?;
    let mut jobs: Vec<(TorusNoise, usize)> = Vec::new();
    for &noise in &cfg.noises {
        for trial in 0..cfg.trials {
            jobs.push((noise, trial));
        }
    }
    jobs.sort();
    let pool = worker_pool()?;
    let batches: Vec<Vec<TorusRecord>> = pool.install(|| {
        jobs.par_iter()
            .map(|&(noise, trial)| {
                let seed = trial_seed(cfg.master_seed, "torus", noise.as_str(), cfg.budget, trial);
                let cloud = torus_cloud(noise, seed)?;
                let hash = cloud_hash(&cloud);
                let rows = evaluate_torus_trial(
                    &cloud,
                    &cfg.methods,
                    cfg.budget,
                    seed,
                    &witness,
                    &cfg.band,
                    cfg.thresholds,
                )?;
                Ok(cfg
                    .methods
                    .iter()
                    .zip(rows)
                    .map(|(spec, (hits, cover, outliers, simplices, secs))| TorusRecord {
                        noise: noise.as_str().into(),
                        budget: cfg.budget,
                        trial,
                        seed,
                        cloud_hash: hash.clone(),
                        method: spec.method().to_string(),
                        alpha_max: spec.alpha(),
                        tau: spec.tau(),
                        h1_thresh: cfg.thresholds.h1,
                        h2_thresh: cfg.thresholds.h2,
                        h1_hit: hits.h1_hit.into(),
                        h2_hit: hits.h2_hit.into(),
                        torus_hit: hits.torus_hit.into(),
                        hit_radius: hits.hit_radius,
                        mean_signal_cover: cover,
                        outlier_landmarks: outliers,
                        simplex_count: simplices,
                        wall_time_seconds: secs,
                    })
                    .collect())
            })
            .collect::<Result<_>>()
    })?;
    Ok(batches.into_iter().flatten().collect())
}

/// Result of the threshold pilot.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PilotResult {
    pub thresholds: TorusThresholds,
    pub hit_rate: f64,
    pub trials: usize,
    pub budget: usize,
    pub band: Vec<f64>,
}

/// Candidate lifetime thresholds: 0.02, 0.04, ..., 0.40.
pub fn pilot_grid() -> Vec<f64> {
    (1..=20).map(|k| k as f64 * 0.02).collect()
}

/// Grid-searches H1/H2 lifetime thresholds on clean tori for the best
/// maxmin torus-hit rate. Ties keep the first pair in grid order.
pub fn pilot(master_seed: u64, trials: usize, budget: usize, band: &[f64]) -> Result<PilotResult> {
    if trials == 0 {
        return Err(BenchError::InvalidGrid("pilot needs at least one trial".into()));
    }
    let cfg = TorusConfig {
        budget,
        band: band.to_vec(),
        ..TorusConfig::new(master_seed, trials, TorusThresholds { h1: 0.0, h2: 0.0 })
    };
    let witness = cfg.witness()?;
    let pool = worker_pool()?;
    let diagrams: Vec<PersistenceDiagram> = pool.install(|| {
        (0..trials)
            .into_par_iter()
            .map(|trial| {
                let seed = trial_seed(master_seed, "torus-pilot", "clean", budget, trial);
                let cloud = torus_cloud(TorusNoise::Clean, seed)?;
                let lms = MethodSpec::Maxmin.select(&cloud, budget, seed)?;
                Ok(compute_persistence(&build_lazy_witness(&lms.coords, &cloud, &witness)?)?)
            })
            .collect::<Result<_>>()
    })?;
    let mut best: Option<PilotResult> = None;
    for &h1 in &pilot_grid() {
        for &h2 in &pilot_grid() {
            let th = TorusThresholds { h1, h2 };
            let mut hits = 0;
            for d in &diagrams {
                hits += usize::from(band_hits(d, band, th)?.torus_hit);
            }
            let rate = hits as f64 / trials as f64;
            if best.as_ref().is_none_or(|b| rate > b.hit_rate) {
                best = Some(PilotResult {
                    thresholds: th,
                    hit_rate: rate,
                    trials,
                    budget,
                    band: band.to_vec(),
                });
            }
        }
    }
    Ok(best.expect("nonempty grid"))
}
