//! Aggregate tables, paired statistics and plot-ready output.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{BenchError, Result};
use crate::record::{write_csv_file, TorusRecord, TrialRecord};
use crate::stats::{paired_stats, Metric, PairedStats};

pub const TABLE2_HEADER: [&str; 6] = [
    "Method",
    "Accuracy",
    "Mean cover",
    "Outlier lmks",
    "Top-1 life",
    "Trimmed bottleneck",
];

/// Means of the headline metrics over a group of records.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Summary {
    pub n: usize,
    pub accuracy: f64,
    pub mean_cover: f64,
    pub outlier_landmarks: f64,
    pub top1_life: f64,
    pub trimmed_bottleneck: f64,
}

pub fn summarize<'a>(records: impl IntoIterator<Item = &'a TrialRecord>) -> Summary {
    let mut s = Summary::default();
    for r in records {
        s.n += 1;
        s.accuracy += f64::from(r.h1_count_correct);
        s.mean_cover += r.mean_signal_cover;
        s.outlier_landmarks += r.outlier_landmarks as f64;
        s.top1_life += r.top1_life;
        s.trimmed_bottleneck += r.trimmed_bottleneck;
    }
    if s.n > 0 {
        let n = s.n as f64;
        s.accuracy /= n;
        s.mean_cover /= n;
        s.outlier_landmarks /= n;
        s.top1_life /= n;
        s.trimmed_bottleneck /= n;
    }
    s
}

/// Method labels in order of first appearance.
pub fn method_labels(records: &[TrialRecord]) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for r in records {
        let l = r.method_label();
        if !out.contains(&l) {
            out.push(l);
        }
    }
    out
}

fn f4(x: f64) -> String {
    format!("{x:.4}")
}

fn gain(base: f64, value: f64) -> String {
    if base > 0.0 {
        format!("{:.1}%", 100.0 * (base - value) / base)
    } else {
        "n/a".into()
    }
}

fn write_rows(path: &Path, header: &[&str], rows: &[Vec<String>]) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_path(path)
        .map_err(|e| BenchError::io(path, e))?;
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    w.flush()?;
    Ok(())
}

/// Per-method aggregate rows in the `TABLE2_HEADER` layout.
pub fn method_table(records: &[TrialRecord]) -> Vec<Vec<String>> {
    method_labels(records)
        .into_iter()
        .map(|label| {
            let s = summarize(records.iter().filter(|r| r.method_label() == label));
            vec![
                label,
                f4(s.accuracy),
                f4(s.mean_cover),
                format!("{:.2}", s.outlier_landmarks),
                f4(s.top1_life),
                f4(s.trimmed_bottleneck),
            ]
        })
        .collect()
}

/// Breakdown rows keyed by `group`, one per (group, non-baseline method).
fn breakdown<K: Ord + Clone>(
    records: &[TrialRecord],
    baseline: &str,
    group: impl Fn(&TrialRecord) -> K,
    key_cells: impl Fn(&K) -> Vec<String>,
) -> Vec<Vec<String>> {
    let mut groups: BTreeMap<K, Vec<&TrialRecord>> = BTreeMap::new();
    for r in records {
        groups.entry(group(r)).or_default().push(r);
    }
    let labels = method_labels(records);
    let mut rows = Vec::new();
    for (key, rs) in &groups {
        let base = summarize(rs.iter().copied().filter(|r| r.method_label() == baseline));
        for label in labels.iter().filter(|l| *l != baseline) {
            let s = summarize(rs.iter().copied().filter(|r| &r.method_label() == label));
            if s.n == 0 {
                continue;
            }
            let mut row = key_cells(key);
            row.extend([
                label.clone(),
                f4(base.accuracy),
                f4(s.accuracy),
                f4(base.mean_cover),
                f4(s.mean_cover),
                gain(base.mean_cover, s.mean_cover),
            ]);
            rows.push(row);
        }
    }
    rows
}

const COMPARE_COLUMNS: [&str; 6] = [
    "Method",
    "Baseline acc.",
    "Method acc.",
    "Baseline cover",
    "Method cover",
    "Cover gain",
];

pub fn dataset_noise_table(records: &[TrialRecord], baseline: &str) -> Vec<Vec<String>> {
    breakdown(
        records,
        baseline,
        |r| (r.dataset.clone(), r.noise.clone()),
        |(d, n)| vec![d.clone(), n.clone()],
    )
}

pub fn budget_table(records: &[TrialRecord], baseline: &str) -> Vec<Vec<String>> {
    breakdown(records, baseline, |r| r.budget, |m| vec![m.to_string()])
}

/// Paired statistics of every other method against `baseline`, for cover
/// and accuracy.
pub fn all_paired_stats(records: &[TrialRecord], baseline: &str, rng_seed: u64) -> Result<Vec<PairedStats>> {
    let mut out = Vec::new();
    for label in method_labels(records).iter().filter(|l| *l != baseline) {
        for metric in [Metric::MeanCover, Metric::Accuracy] {
            out.push(paired_stats(records, label, baseline, metric, rng_seed)?);
        }
    }
    Ok(out)
}

#[derive(Serialize)]
struct LongRow<'a> {
    dataset: &'a str,
    noise: &'a str,
    budget: usize,
    trial: usize,
    method: String,
    metric: &'static str,
    value: f64,
}

fn long_rows(records: &[TrialRecord]) -> Vec<LongRow<'_>> {
    let mut out = Vec::new();
    for r in records {
        let metrics: [(&'static str, f64); 8] = [
            ("h1_count_correct", f64::from(r.h1_count_correct)),
            ("top1_life", r.top1_life),
            ("top2_life", r.top2_life),
            ("life_ratio", r.life_ratio),
            ("trimmed_bottleneck", r.trimmed_bottleneck),
            ("outlier_landmarks", r.outlier_landmarks as f64),
            ("mean_signal_cover", r.mean_signal_cover),
            ("simplex_count", r.simplex_count as f64),
        ];
        for (metric, value) in metrics {
            out.push(LongRow {
                dataset: &r.dataset,
                noise: &r.noise,
                budget: r.budget,
                trial: r.trial,
                method: r.method_label(),
                metric,
                value,
            });
        }
    }
    out
}

/// Writes `table_methods.csv`, `table_dataset_noise.csv`, `table_budget.csv`,
/// `paired_stats.json` and `long.csv` into `dir`.
pub fn write_reports(records: &[TrialRecord], dir: &Path, baseline: &str, rng_seed: u64) -> Result<Vec<PathBuf>> {
    if records.is_empty() {
        return Err(BenchError::EmptyRecords);
    }
    std::fs::create_dir_all(dir).map_err(|e| BenchError::io(dir, e))?;
    let path = |name: &str| dir.join(name);

    write_rows(&path("table_methods.csv"), &TABLE2_HEADER, &method_table(records))?;
    let mut header = vec!["Dataset", "Noise"];
    header.extend(COMPARE_COLUMNS);
    write_rows(&path("table_dataset_noise.csv"), &header, &dataset_noise_table(records, baseline))?;
    let mut header = vec!["m"];
    header.extend(COMPARE_COLUMNS);
    write_rows(&path("table_budget.csv"), &header, &budget_table(records, baseline))?;

    let has_baseline = records.iter().any(|r| r.method_label() == baseline);
    let stats = if has_baseline {
        all_paired_stats(records, baseline, rng_seed)?
    } else {
        Vec::new()
    };
    let json = serde_json::to_string_pretty(&stats)?;
    std::fs::write(path("paired_stats.json"), json + "\n").map_err(|e| BenchError::io(&path("paired_stats.json"), e))?;
    write_csv_file(&path("long.csv"), &long_rows(records))?;

    Ok(["table_methods.csv", "table_dataset_noise.csv", "table_budget.csv", "paired_stats.json", "long.csv"]
        .iter()
        .map(|n| path(n))
        .collect())
}

/// Torus hit rates and cover per (regime, method).
pub fn torus_table(records: &[TorusRecord]) -> Vec<Vec<String>> {
    let mut groups: BTreeMap<(String, String), Vec<&TorusRecord>> = BTreeMap::new();
    for r in records {
        let label = match (r.alpha_max, r.tau) {
            (Some(a), Some(t)) => format!("{}({a},{t})", r.method),
            _ => r.method.clone(),
        };
        groups.entry((r.noise.clone(), label)).or_default().push(r);
    }
    groups
        .into_iter()
        .map(|((noise, label), rs)| {
            let n = rs.len() as f64;
            let rate = |f: fn(&TorusRecord) -> u8| rs.iter().map(|r| f64::from(f(r))).sum::<f64>() / n;
            vec![
                noise,
                label,
                format!("{:.3}", rate(|r| r.torus_hit)),
                format!("{:.3}", rate(|r| r.h1_hit)),
                format!("{:.3}", rate(|r| r.h2_hit)),
                f4(rs.iter().map(|r| r.mean_signal_cover).sum::<f64>() / n),
            ]
        })
        .collect()
}

pub const TORUS_HEADER: [&str; 6] = ["Noise", "Method", "Torus hit", "H1 hit", "H2 hit", "Mean cover"];

pub fn write_torus_report(records: &[TorusRecord], dir: &Path) -> Result<PathBuf> {
    if records.is_empty() {
        return Err(BenchError::EmptyRecords);
    }
    std::fs::create_dir_all(dir).map_err(|e| BenchError::io(dir, e))?;
    let path = dir.join("table_torus.csv");
    write_rows(&path, &TORUS_HEADER, &torus_table(records))?;
    Ok(path)
}
