//! Paired statistics against a baseline method.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use statrs::distribution::{Binomial, Discrete};
use statrs::function::erf::erfc;

use crate::error::{BenchError, Result};
use crate::record::TrialRecord;

pub const DEFAULT_RESAMPLES: usize = 10_000;

/// Two-sided Wilcoxon signed-rank p-value (normal approximation with tie
/// correction and continuity correction). Zero differences are dropped;
/// with none left the p-value is 1.
pub fn wilcoxon_signed_rank(diffs: &[f64]) -> f64 {
    let mut nz: Vec<f64> = diffs.iter().copied().filter(|d| *d != 0.0).collect();
    if nz.is_empty() {
        return 1.0;
    }
    nz.sort_by(|a, b| a.abs().total_cmp(&b.abs()));
    let n = nz.len() as f64;
    let mut w_plus = 0.0;
    let mut tie_term = 0.0;
    let mut i = 0;
    while i < nz.len() {
        let mut j = i;
        while j + 1 < nz.len() && nz[j + 1].abs() == nz[i].abs() {
            j += 1;
        }
        let t = (j - i + 1) as f64;
        let rank = (i + j) as f64 / 2.0 + 1.0;
        w_plus += rank * nz[i..=j].iter().filter(|d| **d > 0.0).count() as f64;
        tie_term += t * t * t - t;
        i = j + 1;
    }
    let mean = n * (n + 1.0) / 4.0;
    let var = n * (n + 1.0) * (2.0 * n + 1.0) / 24.0 - tie_term / 48.0;
    if var <= 0.0 {
        return 1.0;
    }
    let z = ((w_plus - mean).abs() - 0.5).max(0.0) / var.sqrt();
    erfc(z / std::f64::consts::SQRT_2).clamp(f64::MIN_POSITIVE, 1.0)
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Percentile 95% bootstrap interval for the mean of `diffs`.
pub fn bootstrap_mean_ci(diffs: &[f64], n_resamples: usize, rng_seed: u64) -> Result<(f64, f64)> {
    if diffs.is_empty() || n_resamples == 0 {
        return Err(BenchError::Invalid("bootstrap needs data and resamples".into()));
    }
    if diffs.iter().all(|d| *d == diffs[0]) {
        return Ok((diffs[0], diffs[0]));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let n = diffs.len();
    let mut means: Vec<f64> = (0..n_resamples)
        .map(|_| (0..n).map(|_| diffs[rng.gen_range(0..n)]).sum::<f64>() / n as f64)
        .collect();
    means.sort_by(f64::total_cmp);
    let at = |q: f64| means[((n_resamples - 1) as f64 * q).round() as usize];
    Ok((at(0.025), at(0.975)))
}

/// Two-sided exact binomial test of `wins` against `losses` at p = 1/2.
pub fn exact_discordance_test(wins: u64, losses: u64) -> f64 {
    let n = wins + losses;
    if n == 0 {
        return 1.0;
    }
    let dist = Binomial::new(0.5, n).expect("valid binomial");
    let observed = dist.pmf(wins);
    let p: f64 = (0..=n)
        .map(|k| dist.pmf(k))
        .filter(|&pk| pk <= observed * (1.0 + 1e-7))
        .sum();
    p.min(1.0)
}

/// Paired comparison of one method against a baseline on one metric.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairedStats {
    pub metric: String,
    pub method: String,
    pub baseline: String,
    pub n_pairs: usize,
    /// Mean of method minus baseline.
    pub mean_diff: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
    pub wilcoxon_p: f64,
    /// Pairs where only the method is better (accuracy: only it is correct).
    pub wins: u64,
    pub losses: u64,
    pub discordance_p: f64,
    /// Settings where the method's mean is better than the baseline's.
    pub settings_won: usize,
    pub settings_total: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    MeanCover,
    Accuracy,
}

impl Metric {
    pub fn name(self) -> &'static str {
        match self {
            Metric::MeanCover => "mean_signal_cover",
            Metric::Accuracy => "h1_count_correct",
        }
    }

    pub fn value(self, r: &TrialRecord) -> f64 {
        match self {
            Metric::MeanCover => r.mean_signal_cover,
            Metric::Accuracy => f64::from(r.h1_count_correct),
        }
    }

    fn lower_is_better(self) -> bool {
        matches!(self, Metric::MeanCover)
    }
}

type PairKey = (String, String, usize, usize);

/// Matched (method, baseline) value pairs keyed by setting and trial.
fn pairs(records: &[TrialRecord], method: &str, baseline: &str, metric: Metric) -> BTreeMap<PairKey, (f64, f64)> {
    let pick = |label: &str| -> BTreeMap<PairKey, f64> {
        records
            .iter()
            .filter(|r| r.method_label() == label)
            .map(|r| (r.pair_key(), metric.value(r)))
            .collect()
    };
    let base = pick(baseline);
    pick(method)
        .into_iter()
        .filter_map(|(k, v)| base.get(&k).map(|&b| (k, (v, b))))
        .collect()
}

pub fn paired_stats(
    records: &[TrialRecord],
    method: &str,
    baseline: &str,
    metric: Metric,
    rng_seed: u64,
) -> Result<PairedStats> {
    let matched = pairs(records, method, baseline, metric);
    if matched.is_empty() {
        return Err(BenchError::EmptyRecords);
    }
    let diffs: Vec<f64> = matched.values().map(|(m, b)| m - b).collect();
    let (ci_lo, ci_hi) = bootstrap_mean_ci(&diffs, DEFAULT_RESAMPLES, rng_seed)?;
    let better = |d: f64| if metric.lower_is_better() { d < 0.0 } else { d > 0.0 };
    let wins = diffs.iter().filter(|&&d| better(d)).count() as u64;
    let losses = diffs.iter().filter(|&&d| d != 0.0 && !better(d)).count() as u64;

    let mut by_setting: BTreeMap<(String, String, usize), (f64, usize)> = BTreeMap::new();
    for ((dataset, noise, budget, _), (m, b)) in &matched {
        let e = by_setting.entry((dataset.clone(), noise.clone(), *budget)).or_default();
        e.0 += m - b;
        e.1 += 1;
    }
    let settings_won = by_setting.values().filter(|(s, c)| better(s / *c as f64)).count();
    Ok(PairedStats {
        metric: metric.name().into(),
        method: method.into(),
        baseline: baseline.into(),
        n_pairs: diffs.len(),
        mean_diff: mean(&diffs),
        ci_lo,
        ci_hi,
        wilcoxon_p: wilcoxon_signed_rank(&diffs),
        wins,
        losses,
        discordance_p: exact_discordance_test(wins, losses),
        settings_won,
        settings_total: by_setting.len(),
    })
}
