//! Landmark rules as benchmark entries.

use std::fmt;

use depthmark_core::geometry::{DepthRule, PointCloud, DEFAULT_DIRECTIONS};
use depthmark_core::landmarks::{
    assign_cells, dense_core_maxmin, epsnet_matched, maxmin, random_landmarks, recenter_fixed_step,
    recenter_full, recenter_support_weighted, LandmarkSet, Method, DENSE_CORE_KEEP,
    DENSE_CORE_NEIGHBORS,
};
use depthmark_core::Result;

use crate::seeds::derive;

/// A landmark rule together with its parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MethodSpec {
    Maxmin,
    Random,
    FullRecenter,
    FixedStep { alpha: f64 },
    SupportWeighted { alpha_max: f64, tau: f64 },
    EpsnetMatched,
    DenseCore { k: usize, keep: f64 },
}

impl MethodSpec {
    pub fn dense_core() -> Self {
        MethodSpec::DenseCore {
            k: DENSE_CORE_NEIGHBORS,
            keep: DENSE_CORE_KEEP,
        }
    }

    pub fn method(&self) -> Method {
        match self {
            MethodSpec::Maxmin => Method::Maxmin,
            MethodSpec::Random => Method::Random,
            MethodSpec::FullRecenter => Method::FullRecenter,
            MethodSpec::FixedStep { .. } => Method::FixedStep,
            MethodSpec::SupportWeighted { .. } => Method::SupportWeighted,
            MethodSpec::EpsnetMatched => Method::EpsnetMatched,
            MethodSpec::DenseCore { .. } => Method::DenseCore,
        }
    }

    pub fn alpha(&self) -> Option<f64> {
        match *self {
            MethodSpec::FixedStep { alpha } => Some(alpha),
            MethodSpec::SupportWeighted { alpha_max, .. } => Some(alpha_max),
            _ => None,
        }
    }

    pub fn tau(&self) -> Option<f64> {
        match *self {
            MethodSpec::SupportWeighted { tau, .. } => Some(tau),
            _ => None,
        }
    }

    /// Selects `m` landmarks. Maxmin-based rules start from index 0; seeded
    /// rules and 3D depth draw their randomness from `seed`.
    pub fn select(&self, cloud: &PointCloud, m: usize, seed: u64) -> Result<LandmarkSet> {
        let rule = match cloud.dim() {
            2 => DepthRule::Exact2d,
            _ => DepthRule::Directional {
                n_dirs: DEFAULT_DIRECTIONS,
                seed: derive(seed, "depth"),
            },
        };
        let cells = || assign_cells(cloud, &maxmin(cloud, m, 0)?);
        match *self {
            MethodSpec::Maxmin => maxmin(cloud, m, 0),
            MethodSpec::Random => random_landmarks(cloud, m, derive(seed, "random")),
            MethodSpec::FullRecenter => recenter_full(cloud, &cells()?, rule),
            MethodSpec::FixedStep { alpha } => recenter_fixed_step(cloud, &cells()?, alpha, rule),
            MethodSpec::SupportWeighted { alpha_max, tau } => {
                recenter_support_weighted(cloud, &cells()?, alpha_max, tau, rule)
            }
            MethodSpec::EpsnetMatched => epsnet_matched(cloud, m, derive(seed, "epsnet")),
            MethodSpec::DenseCore { k, keep } => dense_core_maxmin(cloud, m, k, keep),
        }
    }
}

impl fmt::Display for MethodSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.alpha(), self.tau()) {
            (Some(a), Some(t)) => write!(f, "{}({a},{t})", self.method()),
            (Some(a), None) => write!(f, "{}({a})", self.method()),
            _ => write!(f, "{}", self.method()),
        }
    }
}
