//! Per-trial result rows and their CSV form.

use std::io::{Read, Write};
use std::path::Path;

use serde::{de::DeserializeOwned, Deserialize, Serialize};

use crate::error::{BenchError, Result};

/// One (setting, seed, method) evaluation of a planar preset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub preset: String,
    pub dataset: String,
    pub noise: String,
    pub budget: usize,
    pub trial: usize,
    pub seed: u64,
    pub cloud_hash: String,
    pub method: String,
    pub alpha_max: Option<f64>,
    pub tau: Option<f64>,
    pub nu: usize,
    pub r_max: f64,
    pub life_thresh: f64,
    pub trim: f64,
    pub h1_target: usize,
    pub h1_count: usize,
    pub h1_count_correct: u8,
    pub top1_life: f64,
    pub top2_life: f64,
    pub life_ratio: f64,
    pub trimmed_bottleneck: f64,
    pub outlier_landmarks: usize,
    pub mean_signal_cover: f64,
    pub simplex_count: usize,
    /// Kept out of the record file so that reruns are byte-identical.
    #[serde(skip)]
    pub wall_time_seconds: f64,
}

impl TrialRecord {
    /// Method with its parameters, e.g. `support_weighted(0.6,1)`.
    pub fn method_label(&self) -> String {
        match (self.alpha_max, self.tau) {
            (Some(a), Some(t)) => format!("{}({a},{t})", self.method),
            (Some(a), None) => format!("{}({a})", self.method),
            _ => self.method.clone(),
        }
    }

    /// Identifies the matched setting and seed shared by all methods.
    pub fn pair_key(&self) -> (String, String, usize, usize) {
        (self.dataset.clone(), self.noise.clone(), self.budget, self.trial)
    }

    pub fn setting(&self) -> (String, String, usize) {
        (self.dataset.clone(), self.noise.clone(), self.budget)
    }
}

/// One (regime, seed, method) evaluation of the torus preset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TorusRecord {
    pub noise: String,
    pub budget: usize,
    pub trial: usize,
    pub seed: u64,
    pub cloud_hash: String,
    pub method: String,
    pub alpha_max: Option<f64>,
    pub tau: Option<f64>,
    pub h1_thresh: f64,
    pub h2_thresh: f64,
    pub h1_hit: u8,
    pub h2_hit: u8,
    pub torus_hit: u8,
    /// Smallest band radius with the target signature, if any.
    pub hit_radius: Option<f64>,
    pub mean_signal_cover: f64,
    pub outlier_landmarks: usize,
    pub simplex_count: usize,
    #[serde(skip)]
    pub wall_time_seconds: f64,
}

/// Wall-clock time of one record, written beside the records.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub dataset: String,
    pub noise: String,
    pub budget: usize,
    pub trial: usize,
    pub method: String,
    pub wall_time_seconds: f64,
}

pub fn write_csv<T: Serialize>(out: impl Write, rows: &[T]) -> Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<T: DeserializeOwned>(input: impl Read) -> Result<Vec<T>> {
    csv::Reader::from_reader(input)
        .deserialize()
        .collect::<std::result::Result<Vec<T>, _>>()
        .map_err(BenchError::from)
}

pub fn write_csv_file<T: Serialize>(path: &Path, rows: &[T]) -> Result<()> {
    let file = std::fs::File::create(path).map_err(|e| BenchError::io(path, e))?;
    write_csv(std::io::BufWriter::new(file), rows)
}

pub fn read_csv_file<T: DeserializeOwned>(path: &Path) -> Result<Vec<T>> {
    let file = std::fs::File::open(path).map_err(|e| BenchError::io(path, e))?;
    read_csv(std::io::BufReader::new(file))
}

pub fn timings(records: &[TrialRecord]) -> Vec<Timing> {
    records
        .iter()
        .map(|r| Timing {
            dataset: r.dataset.clone(),
            noise: r.noise.clone(),
            budget: r.budget,
            trial: r.trial,
            method: r.method_label(),
            wall_time_seconds: r.wall_time_seconds,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn sample() -> TrialRecord {
        TrialRecord {
            preset: "synthetic".into(),
            dataset: "circle".into(),
            noise: "uniform".into(),
            budget: 20,
            trial: 3,
            seed: u64::MAX,
            cloud_hash: "00ff00ff00ff00ff".into(),
            method: "support_weighted".into(),
            alpha_max: Some(0.6),
            tau: Some(1.0),
            nu: 1,
            r_max: 2.1,
            life_thresh: 0.25,
            trim: 0.05,
            h1_target: 1,
            h1_count: 1,
            h1_count_correct: 1,
            top1_life: 0.7,
            top2_life: 0.0,
            life_ratio: f64::INFINITY,
            trimmed_bottleneck: 0.012,
            outlier_landmarks: 2,
            mean_signal_cover: 0.1,
            simplex_count: 311,
            wall_time_seconds: 0.0,
        }
    }

    #[test]
    fn csv_round_trip_keeps_infinity_and_options() {
        let mut a = sample();
        let mut b = sample();
        b.method = "maxmin".into();
        b.alpha_max = None;
        b.tau = None;
        a.wall_time_seconds = 0.0;
        let mut buf = Vec::new();
        write_csv(&mut buf, &[a.clone(), b.clone()]).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("preset,dataset,noise,budget,trial,seed,cloud_hash,method,"));
        assert!(!text.contains('\r'));
        assert!(!text.contains("wall_time"));
        assert!(text.contains(",inf,"));
        let back: Vec<TrialRecord> = read_csv(buf.as_slice()).unwrap();
        assert_eq!(back, vec![a, b]);
        assert_eq!(back[0].method_label(), "support_weighted(0.6,1)");
        assert_eq!(back[1].method_label(), "maxmin");
    }
}
