use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use depthmark_bench::error::{BenchError, Result};
use depthmark_bench::methods::MethodSpec;
use depthmark_bench::presets::{
    load_manifest, run_grid, synthetic_sources, GridConfig, SWEEP_ALPHAS, SWEEP_TAUS,
};
use depthmark_bench::record::{read_csv_file, timings, write_csv_file, TorusRecord, TrialRecord};
use depthmark_bench::report::{all_paired_stats, write_reports, write_torus_report};
use depthmark_bench::torus::{
    pilot, run_torus, PilotResult, TorusConfig, TorusThresholds, DEFAULT_BAND, DEFAULT_TORUS_BUDGET,
};
use depthmark_bench::trial::EvalConfig;
use depthmark_core::datagen::{generate, Contamination, DatasetSpec, Family};
use depthmark_core::io::{read_cloud, write_cloud};
use depthmark_core::persistence::compute_persistence;
use depthmark_core::witness::{build_lazy_witness, WitnessConfig};

#[derive(Parser)]
#[command(name = "depthmark", version, about = "Depth-corrected landmarks for witness persistence")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a synthetic point cloud as CSV.
    Gen {
        #[arg(long, default_value = "circle")]
        family: Family,
        #[arg(long, default_value = "uniform")]
        noise: Contamination,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Choose landmarks from a cloud CSV.
    Select {
        #[arg(long)]
        cloud: PathBuf,
        #[arg(long, value_enum, default_value_t = Rule::SupportWeighted)]
        method: Rule,
        #[arg(long, short = 'm', default_value_t = 30)]
        budget: usize,
        #[arg(long, default_value_t = 0.6)]
        alpha_max: f64,
        #[arg(long, default_value_t = 1.0)]
        tau: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Persistence diagram of the lazy witness filtration.
    Persist {
        #[arg(long)]
        cloud: PathBuf,
        #[arg(long)]
        landmarks: PathBuf,
        #[arg(long, default_value_t = 1)]
        nu: usize,
        #[arg(long, default_value_t = 2.1)]
        rmax: f64,
        #[arg(long, default_value_t = 2)]
        max_dim: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a benchmark preset.
    Bench {
        #[command(subcommand)]
        preset: Preset,
    },
    /// Support-weighting parameter sweep on the synthetic families.
    Sweep {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_delimiter = ',', default_values_t = SWEEP_ALPHAS)]
        alphas: Vec<f64>,
        #[arg(long, value_delimiter = ',', default_values_t = SWEEP_TAUS)]
        taus: Vec<f64>,
        #[arg(long, default_value_t = 20)]
        trials: usize,
    },
    /// Choose torus lifetime thresholds on clean tori.
    Pilot {
        #[arg(long, default_value_t = 0)]
        master_seed: u64,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_TORUS_BUDGET)]
        budget: usize,
        #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_BAND)]
        band: Vec<f64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Paired statistics from record CSVs.
    Stats {
        #[arg(required = true)]
        records: Vec<PathBuf>,
        #[arg(long, default_value = "maxmin")]
        baseline: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Preset {
    Synthetic {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 20)]
        trials: usize,
    },
    Mpeg7 {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 5)]
        trials: usize,
        #[arg(long)]
        manifest: PathBuf,
    },
    Torus {
        #[arg(long, default_value_t = 0)]
        master_seed: u64,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_TORUS_BUDGET)]
        budget: usize,
        #[arg(long, default_value_t = 1)]
        nu: usize,
        #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_BAND)]
        band: Vec<f64>,
        /// JSON written by `pilot`; a pilot is run when neither this nor both
        /// thresholds are given.
        #[arg(long, conflicts_with_all = ["h1_thresh", "h2_thresh"])]
        pilot: Option<PathBuf>,
        #[arg(long, requires = "h2_thresh")]
        h1_thresh: Option<f64>,
        #[arg(long, requires = "h1_thresh")]
        h2_thresh: Option<f64>,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long, default_value_t = 0)]
    master_seed: u64,
    #[arg(long, value_delimiter = ',', default_values_t = [20, 30, 40])]
    budgets: Vec<usize>,
    #[arg(long, default_value_t = 1)]
    nu: usize,
    #[arg(long, default_value_t = 2.1)]
    rmax: f64,
    #[arg(long, default_value_t = 0.6)]
    alpha_max: f64,
    #[arg(long, default_value_t = 1.0)]
    tau: f64,
    #[arg(long, default_value_t = 0.25)]
    life_thresh: f64,
    #[arg(long, default_value_t = 0.05)]
    trim: f64,
    #[arg(long)]
    out: PathBuf,
}

impl Common {
    fn apply(&self, cfg: &mut GridConfig) {
        cfg.budgets = self.budgets.clone();
        cfg.eval = EvalConfig {
            witness: WitnessConfig {
                nu: self.nu,
                r_max: self.rmax,
                ..WitnessConfig::default()
            },
            life_thresh: self.life_thresh,
            trim: self.trim,
        };
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Rule {
    Maxmin,
    Random,
    Full,
    FixedStep,
    SupportWeighted,
    Epsnet,
    DenseCore,
}

impl Rule {
    fn spec(self, alpha_max: f64, tau: f64) -> MethodSpec {
        match self {
            Rule::Maxmin => MethodSpec::Maxmin,
            Rule::Random => MethodSpec::Random,
            Rule::Full => MethodSpec::FullRecenter,
            Rule::FixedStep => MethodSpec::FixedStep { alpha: alpha_max },
            Rule::SupportWeighted => MethodSpec::SupportWeighted { alpha_max, tau },
            Rule::Epsnet => MethodSpec::EpsnetMatched,
            Rule::DenseCore => MethodSpec::dense_core(),
        }
    }
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| BenchError::io(path, e))
}

fn create_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| BenchError::io(dir, e))
}

fn write_landmarks(path: &Path, indices: &[usize], coords: &[Vec<f64>]) -> Result<()> {
    let dim = coords.first().map_or(2, Vec::len);
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_path(path)
        .map_err(|e| BenchError::io(path, e))?;
    let mut header = vec!["index", "x", "y"];
    if dim == 3 {
        header.push("z");
    }
    w.write_record(&header)?;
    for (i, c) in indices.iter().zip(coords) {
        let mut row = vec![i.to_string()];
        row.extend(c.iter().map(f64::to_string));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

fn read_landmarks(path: &Path) -> Result<Vec<Vec<f64>>> {
    let mut r = csv::Reader::from_path(path).map_err(|e| BenchError::io(path, e))?;
    let mut out = Vec::new();
    for row in r.records() {
        let row = row?;
        let coords = row
            .iter()
            .skip(1)
            .map(|f| f.trim().parse::<f64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| BenchError::Invalid(format!("{}: {e}", path.display())))?;
        out.push(coords);
    }
    Ok(out)
}

fn write_grid(records: &[TrialRecord], out: &Path, seed: u64) -> Result<()> {
    create_dir(out)?;
    write_csv_file(&out.join("records.csv"), records)?;
    write_csv_file(&out.join("timings.csv"), &timings(records))?;
    for p in write_reports(records, out, "maxmin", seed)? {
        eprintln!("wrote {}", p.display());
    }
    eprintln!("{} records in {}", records.len(), out.join("records.csv").display());
    Ok(())
}

fn torus_thresholds(
    pilot_file: Option<&Path>,
    h1: Option<f64>,
    h2: Option<f64>,
    cfg: &TorusConfig,
    out: &Path,
) -> Result<TorusThresholds> {
    if let (Some(h1), Some(h2)) = (h1, h2) {
        return Ok(TorusThresholds { h1, h2 });
    }
    if let Some(p) = pilot_file {
        let text = std::fs::read_to_string(p).map_err(|e| BenchError::io(p, e))?;
        let result: PilotResult = serde_json::from_str(&text)?;
        return Ok(result.thresholds);
    }
    let result = pilot(cfg.master_seed, cfg.trials, cfg.budget, &cfg.band)?;
    write_text(&out.join("pilot.json"), &(serde_json::to_string_pretty(&result)? + "\n"))?;
    eprintln!(
        "pilot thresholds h1={} h2={} (maxmin hit rate {:.2})",
        result.thresholds.h1, result.thresholds.h2, result.hit_rate
    );
    Ok(result.thresholds)
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Gen { family, noise, seed, out } => {
            let cloud = generate(&DatasetSpec::new(family, noise, seed))?;
            write_cloud(&out, &cloud)?;
        }
        Command::Select { cloud, method, budget, alpha_max, tau, seed, out } => {
            let cloud = read_cloud(&cloud)?;
            let lms = method.spec(alpha_max, tau).select(&cloud, budget, seed)?;
            write_landmarks(&out, &lms.indices, &lms.coords)?;
        }
        Command::Persist { cloud, landmarks, nu, rmax, max_dim, out } => {
            let cloud = read_cloud(&cloud)?;
            let lms = read_landmarks(&landmarks)?;
            let cfg = WitnessConfig { nu, r_max: rmax, max_dim };
            let diagram = compute_persistence(&build_lazy_witness(&lms, &cloud, &cfg)?)?;
            match out {
                Some(p) => write_text(&p, &diagram.to_text())?,
                None => print!("{}", diagram.to_text()),
            }
        }
        Command::Bench { preset } => match preset {
            Preset::Synthetic { common, trials } => {
                let mut cfg = GridConfig::synthetic(common.master_seed, trials, common.alpha_max, common.tau);
                common.apply(&mut cfg);
                let records = run_grid(&synthetic_sources(), &cfg)?;
                write_grid(&records, &common.out, common.master_seed)?;
            }
            Preset::Mpeg7 { common, trials, manifest } => {
                let mut cfg = GridConfig::mpeg7(common.master_seed, trials, common.alpha_max, common.tau);
                common.apply(&mut cfg);
                let records = run_grid(&load_manifest(&manifest)?, &cfg)?;
                write_grid(&records, &common.out, common.master_seed)?;
            }
            Preset::Torus { master_seed, trials, budget, nu, band, pilot, h1_thresh, h2_thresh, out } => {
                create_dir(&out)?;
                let mut cfg = TorusConfig {
                    budget,
                    nu,
                    band,
                    ..TorusConfig::new(master_seed, trials, TorusThresholds { h1: 0.0, h2: 0.0 })
                };
                cfg.thresholds = torus_thresholds(pilot.as_deref(), h1_thresh, h2_thresh, &cfg, &out)?;
                let records = run_torus(&cfg)?;
                write_csv_file(&out.join("torus_records.csv"), &records)?;
                let timing: Vec<(String, usize, String, f64)> = records
                    .iter()
                    .map(|r: &TorusRecord| (r.noise.clone(), r.trial, r.method.clone(), r.wall_time_seconds))
                    .collect();
                write_csv_file(&out.join("torus_timings.csv"), &timing)?;
                eprintln!("wrote {}", write_torus_report(&records, &out)?.display());
            }
        },
        Command::Sweep { common, alphas, taus, trials } => {
            let mut cfg = GridConfig::sweep(common.master_seed, trials, &alphas, &taus)?;
            common.apply(&mut cfg);
            let records = run_grid(&synthetic_sources(), &cfg)?;
            write_grid(&records, &common.out, common.master_seed)?;
        }
        Command::Pilot { master_seed, trials, budget, band, out } => {
            let result = pilot(master_seed, trials, budget, &band)?;
            write_text(&out, &(serde_json::to_string_pretty(&result)? + "\n"))?;
            println!(
                "h1={} h2={} hit_rate={:.3}",
                result.thresholds.h1, result.thresholds.h2, result.hit_rate
            );
        }
        Command::Stats { records, baseline, seed, out } => {
            let mut all: Vec<TrialRecord> = Vec::new();
            for p in &records {
                all.extend(read_csv_file::<TrialRecord>(p)?);
            }
            if all.is_empty() {
                return Err(BenchError::EmptyRecords);
            }
            let stats = all_paired_stats(&all, &baseline, seed)?;
            let json = serde_json::to_string_pretty(&stats)? + "\n";
            match out {
                Some(p) => write_text(&p, &json)?,
                None => print!("{json}"),
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("depthmark: {e}");
            ExitCode::FAILURE
        }
    }
}
