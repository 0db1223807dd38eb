//! Evaluation of every method on one generated cloud.

use std::time::Instant;

use depthmark_core::geometry::{mean_signal_cover, PointCloud};
use depthmark_core::landmarks::{maxmin, outlier_landmark_count};
use depthmark_core::persistence::{
    bottleneck_trimmed, compute_persistence, lifetime_ratio, thresholded_h1_count, top_lifetimes,
    PersistenceDiagram, DEFAULT_LIFE_THRESHOLD, DEFAULT_TRIM,
};
use depthmark_core::witness::{build_lazy_witness, simplex_count, WitnessConfig};

use crate::error::Result;
use crate::methods::MethodSpec;
use crate::record::TrialRecord;
use crate::seeds::cloud_hash;

/// Witness and summary parameters shared by all methods of a run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalConfig {
    pub witness: WitnessConfig,
    pub life_thresh: f64,
    pub trim: f64,
}

impl Default for EvalConfig {
    fn default() -> Self {
        Self {
            witness: WitnessConfig::default(),
            life_thresh: DEFAULT_LIFE_THRESHOLD,
            trim: DEFAULT_TRIM,
        }
    }
}

/// A generated cloud and the setting it belongs to.
#[derive(Debug, Clone)]
pub struct Sample {
    pub preset: String,
    pub dataset: String,
    pub noise: String,
    pub budget: usize,
    pub trial: usize,
    pub seed: u64,
    pub h1_target: usize,
    pub cloud: PointCloud,
}

/// Diagram of the signal points alone, with maxmin landmarks at the same budget.
pub fn reference_diagram(cloud: &PointCloud, budget: usize, cfg: &EvalConfig) -> Result<PersistenceDiagram> {
    let signal = cloud.signal_part()?;
    let lms = maxmin(&signal, budget.min(signal.len()), 0)?;
    let f = build_lazy_witness(&lms.coords, &signal, &cfg.witness)?;
    Ok(compute_persistence(&f)?)
}

/// Runs every method on the sample's cloud, in the order given.
pub fn evaluate_sample(sample: &Sample, methods: &[MethodSpec], cfg: &EvalConfig) -> Result<Vec<TrialRecord>> {
    let cloud = &sample.cloud;
    let hash = cloud_hash(cloud);
    let reference = reference_diagram(cloud, sample.budget, cfg)?;
    methods
        .iter()
        .map(|spec| {
            let start = Instant::now();
            let lms = spec.select(cloud, sample.budget, sample.seed)?;
            let f = build_lazy_witness(&lms.coords, cloud, &cfg.witness)?;
            let diagram = compute_persistence(&f)?;
            let h1_count = thresholded_h1_count(&diagram, cfg.life_thresh);
            let top = top_lifetimes(&diagram, 1, 2);
            Ok(TrialRecord {
                preset: sample.preset.clone(),
                dataset: sample.dataset.clone(),
                noise: sample.noise.clone(),
                budget: sample.budget,
                trial: sample.trial,
                seed: sample.seed,
                cloud_hash: hash.clone(),
                method: spec.method().to_string(),
                alpha_max: spec.alpha(),
                tau: spec.tau(),
                nu: cfg.witness.nu,
                r_max: cfg.witness.r_max,
                life_thresh: cfg.life_thresh,
                trim: cfg.trim,
                h1_target: sample.h1_target,
                h1_count,
                h1_count_correct: u8::from(h1_count == sample.h1_target),
                top1_life: top[0],
                top2_life: top[1],
                life_ratio: lifetime_ratio(top[0], top[1]),
                trimmed_bottleneck: bottleneck_trimmed(&diagram, &reference, 1, cfg.trim)?,
                outlier_landmarks: outlier_landmark_count(cloud, &lms),
                mean_signal_cover: mean_signal_cover(cloud, &lms.coords)?,
                simplex_count: simplex_count(&f),
                wall_time_seconds: start.elapsed().as_secs_f64(),
            })
        })
        .collect()
}
