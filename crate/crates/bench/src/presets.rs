//! Experiment grids: synthetic, silhouette and parameter-sweep presets.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use depthmark_core::datagen::{
    contaminate, generate, silhouette_cloud, Contamination, DatasetSpec, Family,
    DEFAULT_OUTLIER_FRACTION,
};
use depthmark_core::pgm::GrayImage;
use rayon::prelude::*;

use crate::error::{BenchError, Result};
use crate::methods::MethodSpec;
use crate::record::TrialRecord;
use crate::seeds::{derive, trial_seed};
use crate::trial::{evaluate_sample, EvalConfig, Sample};

pub const DEFAULT_BUDGETS: [usize; 3] = [20, 30, 40];
pub const SYNTHETIC_FAMILIES: [Family; 3] = [Family::Circle, Family::TwoCircles, Family::FigureEight];
pub const SYNTHETIC_NOISE: [Contamination; 2] = [Contamination::Uniform, Contamination::Cluster];
pub const SILHOUETTE_NOISE: [Contamination; 3] =
    [Contamination::Clean, Contamination::Cluster, Contamination::Uniform];
/// Boundary pixels sampled per silhouette.
pub const DEFAULT_BOUNDARY_POINTS: usize = 400;
pub const SWEEP_ALPHAS: [f64; 4] = [0.3, 0.5, 0.6, 0.8];
pub const SWEEP_TAUS: [f64; 3] = [0.5, 1.0, 1.5];

/// Desk-scale seeds per setting; the full runs use 50 (synthetic) and 20 (silhouettes).
pub const DESK_TRIALS_SYNTHETIC: usize = 20;
pub const DESK_TRIALS_SILHOUETTE: usize = 5;

/// A silhouette image from a manifest.
#[derive(Debug, Clone)]
pub struct Silhouette {
    pub name: String,
    pub class: String,
    pub target_h1: usize,
    pub image: GrayImage,
}

#[derive(Debug, Clone)]
pub enum DatasetSource {
    Synthetic(Family),
    Silhouette(Arc<Silhouette>),
}

impl DatasetSource {
    pub fn name(&self) -> &str {
        match self {
            DatasetSource::Synthetic(f) => f.as_str(),
            DatasetSource::Silhouette(s) => &s.name,
        }
    }

    fn target_h1(&self) -> usize {
        match self {
            DatasetSource::Synthetic(f) => f.target_betti().0,
            DatasetSource::Silhouette(s) => s.target_h1,
        }
    }
}

#[derive(Debug, Clone)]
pub struct GridConfig {
    pub preset: String,
    pub master_seed: u64,
    pub trials: usize,
    pub budgets: Vec<usize>,
    pub noises: Vec<Contamination>,
    pub outlier_fraction: f64,
    pub n_boundary: usize,
    pub methods: Vec<MethodSpec>,
    pub eval: EvalConfig,
}

impl GridConfig {
    /// Three planar families under uniform and cluster contamination, with
    /// maxmin, support weighting, the epsilon-net and the dense-core baselines.
    pub fn synthetic(master_seed: u64, trials: usize, alpha_max: f64, tau: f64) -> Self {
        Self {
            preset: "synthetic".into(),
            master_seed,
            trials,
            budgets: DEFAULT_BUDGETS.to_vec(),
            noises: SYNTHETIC_NOISE.to_vec(),
            outlier_fraction: DEFAULT_OUTLIER_FRACTION,
            n_boundary: DEFAULT_BOUNDARY_POINTS,
            methods: vec![
                MethodSpec::Maxmin,
                MethodSpec::SupportWeighted { alpha_max, tau },
                MethodSpec::EpsnetMatched,
                MethodSpec::dense_core(),
            ],
            eval: EvalConfig::default(),
        }
    }

    pub fn mpeg7(master_seed: u64, trials: usize, alpha_max: f64, tau: f64) -> Self {
        Self {
            preset: "mpeg7".into(),
            noises: SILHOUETTE_NOISE.to_vec(),
            ..Self::synthetic(master_seed, trials, alpha_max, tau)
        }
    }

    /// Maxmin plus support weighting over the `alphas` x `taus` grid.
    pub fn sweep(master_seed: u64, trials: usize, alphas: &[f64], taus: &[f64]) -> Result<Self> {
        if alphas.is_empty() || taus.is_empty() {
            return Err(BenchError::InvalidGrid("empty parameter grid".into()));
        }
        if let Some(a) = alphas.iter().find(|&&a| !(a > 0.0 && a <= 1.0)) {
            return Err(BenchError::InvalidGrid(format!("alpha_max {a} outside (0, 1]")));
        }
        if let Some(t) = taus.iter().find(|&&t| !(t > 0.0 && t.is_finite())) {
            return Err(BenchError::InvalidGrid(format!("tau {t} must be positive")));
        }
        let mut methods = vec![MethodSpec::Maxmin];
        for &alpha_max in alphas {
            for &tau in taus {
                methods.push(MethodSpec::SupportWeighted { alpha_max, tau });
            }
        }
        Ok(Self {
            preset: "sweep".into(),
            methods,
            ..Self::synthetic(master_seed, trials, 0.6, 1.0)
        })
    }

    fn validate(&self) -> Result<()> {
        if self.trials == 0 || self.budgets.is_empty() || self.noises.is_empty() || self.methods.is_empty() {
            return Err(BenchError::InvalidGrid("trials, budgets, noise models and methods must be nonempty".into()));
        }
        if self.budgets.contains(&0) {
            return Err(BenchError::InvalidGrid("budgets must be positive".into()));
        }
        Ok(())
    }
}

/// Generates the cloud of one setting and trial.
pub fn make_sample(
    source: &DatasetSource,
    noise: Contamination,
    budget: usize,
    trial: usize,
    cfg: &GridConfig,
) -> Result<Sample> {
    let seed = trial_seed(cfg.master_seed, source.name(), noise.as_str(), budget, trial);
    let cloud = match source {
        DatasetSource::Synthetic(family) => generate(&DatasetSpec {
            outlier_fraction: cfg.outlier_fraction,
            ..DatasetSpec::new(*family, noise, seed)
        })?,
        DatasetSource::Silhouette(s) => {
            let base = silhouette_cloud(&s.image, cfg.n_boundary, derive(seed, "boundary"))?;
            contaminate(&base, noise, cfg.outlier_fraction, derive(seed, "contamination"))?
        }
    };
    Ok(Sample {
        preset: cfg.preset.clone(),
        dataset: source.name().to_string(),
        noise: noise.as_str().to_string(),
        budget,
        trial,
        seed,
        h1_target: source.target_h1(),
        cloud,
    })
}

/// Evaluates every setting x trial on the worker pool. Records come back
/// sorted by (dataset, noise, budget, trial) and then in method order.
pub fn run_grid(sources: &[DatasetSource], cfg: &GridConfig) -> Result<Vec<TrialRecord>> {
    cfg.validate()?;
    let mut jobs = Vec::new();
    for source in sources {
        for &noise in &cfg.noises {
            for &budget in &cfg.budgets {
                for trial in 0..cfg.trials {
                    jobs.push((source, noise, budget, trial));
                }
            }
        }
    }
    jobs.sort_by(|a, b| {
        (a.0.name(), a.1.as_str(), a.2, a.3).cmp(&(b.0.name(), b.1.as_str(), b.2, b.3))
    });
    let pool = worker_pool()?;
    let batches: Vec<Vec<TrialRecord>> = pool.install(|| {
        jobs.par_iter()
            .map(|&(source, noise, budget, trial)| {
                let sample = make_sample(source, noise, budget, trial, cfg)?;
                evaluate_sample(&sample, &cfg.methods, &cfg.eval)
            })
            .collect::<Result<_>>()
    })?;
    Ok(batches.into_iter().flatten().collect())
}

pub fn synthetic_sources() -> Vec<DatasetSource> {
    SYNTHETIC_FAMILIES.iter().map(|&f| DatasetSource::Synthetic(f)).collect()
}

/// Parses a manifest: one `path class [target_h1]` entry per line, `#`
/// comments allowed, relative paths taken from the manifest's directory.
/// The target defaults to 1.
pub fn parse_manifest(text: &str, base: &Path) -> Result<Vec<(PathBuf, String, usize)>> {
    let mut out = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let bad = |message: String| BenchError::Manifest { line: k + 1, message };
        let (path, class, target) = match fields.as_slice() {
            [p, c] => (*p, *c, 1),
            [p, c, t] => (*p, *c, t.parse().map_err(|_| bad(format!("bad target {t:?}")))?),
            _ => return Err(bad("expected `path class [target]`".into())),
        };
        let path = Path::new(path);
        let path = if path.is_absolute() { path.to_path_buf() } else { base.join(path) };
        out.push((path, class.to_string(), target));
    }
    if out.is_empty() {
        return Err(BenchError::Manifest {
            line: 0,
            message: "no entries".into(),
        });
    }
    Ok(out)
}

/// Reads a manifest and every image it lists.
pub fn load_manifest(path: &Path) -> Result<Vec<DatasetSource>> {
    let text = std::fs::read_to_string(path).map_err(|e| BenchError::io(path, e))?;
    let base = path.parent().unwrap_or(Path::new("."));
    parse_manifest(&text, base)?
        .into_iter()
        .map(|(p, class, target_h1)| {
            let image = GrayImage::read(&p)?;
            let stem = p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            Ok(DatasetSource::Silhouette(Arc::new(Silhouette {
                name: format!("{class}/{stem}"),
                class,
                target_h1,
                image,
            })))
        })
        .collect()
}

/// Worker cap from `DEPTHMARK_THREADS`; unset, empty or 0 means no cap.
pub fn thread_cap() -> Option<usize> {
    std::env::var("DEPTHMARK_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
}

pub fn worker_pool() -> Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = thread_cap() {
        builder = builder.num_threads(n);
    }
    builder
        .build()
        .map_err(|e| BenchError::Invalid(format!("thread pool: {e}")))
}
