//! Acceptance suite: one PASS/FAIL line per criterion, then a single assertion.
//! Run with `cargo test -p depthmark-bench --test acceptance -- --nocapture`.

use std::collections::BTreeMap;
use std::time::Instant;

use depthmark_bench::presets::{run_grid, synthetic_sources, GridConfig};
use depthmark_bench::record::{write_csv, TrialRecord};
use depthmark_bench::methods::MethodSpec;
use depthmark_bench::seeds::trial_seed;
use depthmark_bench::stats::{
    bootstrap_mean_ci, exact_discordance_test, paired_stats, wilcoxon_signed_rank, Metric,
};
use depthmark_bench::torus::{pilot, run_torus, TorusConfig, TorusThresholds, DEFAULT_BAND, DEFAULT_TORUS_BUDGET};
use depthmark_bench::trial::{evaluate_sample, EvalConfig, Sample};
use depthmark_core::datagen::{generate, Contamination, DatasetSpec, Family};
use depthmark_core::geometry::{cover_radius, deepest_point, halfspace_depth_2d, DepthRule, PointCloud};
use depthmark_core::landmarks::{
    assign_cells, maxmin, recenter_fixed_step_detailed, recenter_full,
    recenter_support_weighted_detailed,
};
use depthmark_core::persistence::{bottleneck_distance, compute_persistence};
use depthmark_core::witness::{build_lazy_witness, WitnessConfig};
use depthmark_oracles::{
    bottleneck_exhaustive, euler_characteristic, persistence_by_ranks, planar_depth_oracle,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const MASTER: u64 = 20_240_601;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn cloud_of(pts: &[[f64; 2]]) -> PointCloud {
    let rows: Vec<Vec<f64>> = pts.iter().map(|p| p.to_vec()).collect();
    PointCloud::signal(2, &rows).unwrap()
}

fn random_planar(rng: &mut ChaCha8Rng) -> Vec<[f64; 2]> {
    let n = rng.gen_range(1..=40);
    if rng.gen_bool(0.3) {
        (0..n).map(|_| [rng.gen_range(-3..=3) as f64, rng.gen_range(-3..=3) as f64]).collect()
    } else {
        (0..n).map(|_| [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)]).collect()
    }
}

fn depth_oracle() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut mismatches = 0;
    let mut queries = 0;
    for _ in 0..200 {
        let pts = random_planar(&mut rng);
        let cloud = cloud_of(&pts);
        let mut ys: Vec<[f64; 2]> = pts.iter().take(5).copied().collect();
        ys.push([rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5)]);
        for y in ys {
            queries += 1;
            if halfspace_depth_2d(&cloud, &y).unwrap().0 != planar_depth_oracle(&pts, y) {
                mismatches += 1;
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        mismatches == 0 && secs < 30.0,
        format!("{mismatches} mismatches in {queries} queries over 200 clouds, {secs:.2}s"),
    )
}

fn cover_bounds() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let tol = 1e-9;
    let mut violations = 0;
    let mut checks = 0;
    for _ in 0..200 {
        let n = rng.gen_range(40..120);
        let rows: Vec<Vec<f64>> = (0..n)
            .map(|i| {
                if i % 3 == 0 {
                    vec![rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)]
                } else {
                    vec![rng.gen_range(-0.2..0.2) + 0.5, rng.gen_range(-0.2..0.2)]
                }
            })
            .collect();
        let cloud = PointCloud::signal(2, &rows).unwrap();
        for m in [10, 20] {
            let seeds = maxmin(&cloud, m, 0).unwrap();
            let r = cover_radius(&cloud, &seeds.coords).unwrap();
            let part = assign_cells(&cloud, &seeds).unwrap();
            let rule = DepthRule::Exact2d;
            let full = recenter_full(&cloud, &part, rule).unwrap();
            checks += 1;
            violations += usize::from(cover_radius(&cloud, &full.coords).unwrap() > 2.0 * r + tol);
            for alpha in [0.25, 0.5, 0.6, 1.0] {
                let mut runs = vec![recenter_fixed_step_detailed(&cloud, &part, alpha, rule).unwrap()];
                for tau in [0.5, 1.0, 1.5] {
                    runs.push(recenter_support_weighted_detailed(&cloud, &part, alpha, tau, rule).unwrap());
                }
                for run in runs {
                    let cover = cover_radius(&cloud, &run.landmarks.coords).unwrap();
                    let z = cover_radius(&cloud, &run.targets).unwrap();
                    checks += 3;
                    violations += usize::from(cover > 2.0 * r + tol);
                    violations += usize::from(cover > (1.0 + 2.0 * alpha) * r + tol);
                    violations += usize::from(z > (1.0 + alpha) * r + tol);
                }
            }
        }
    }
    outcome(violations == 0, format!("{violations} violations in {checks} bound checks"))
}

fn orient(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> f64 {
    (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
}

fn convex_core() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut violations = 0;
    let mut exercised = 0;
    for _ in 0..500 {
        let k = rng.gen_range(3..9);
        let (cx, cy) = (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let mut angles: Vec<f64> = (0..k).map(|_| rng.gen_range(0.0..std::f64::consts::TAU)).collect();
        angles.sort_by(f64::total_cmp);
        let poly: Vec<[f64; 2]> = angles.iter().map(|t| [cx + t.cos(), cy + 0.7 * t.sin()]).collect();
        // keep a margin so membership is unambiguous in floating point
        let inside = |p: [f64; 2], margin: f64| {
            (0..poly.len()).all(|i| orient(poly[i], poly[(i + 1) % poly.len()], p) >= margin)
        };
        let core = rng.gen_range(4..30);
        let outside = rng.gen_range(0..=core / 2);
        let mut pts = Vec::new();
        while pts.len() < core {
            let p = [cx + rng.gen_range(-1.0..1.0), cy + rng.gen_range(-1.0..1.0)];
            if inside(p, 1e-6) {
                pts.push(p);
            }
        }
        while pts.len() < core + outside {
            let p = [rng.gen_range(-4.0..4.0), rng.gen_range(-4.0..4.0)];
            if !inside(p, -1e-6) {
                pts.push(p);
            }
        }
        let cloud = cloud_of(&pts);
        let cell: Vec<usize> = (0..pts.len()).collect();
        let y = deepest_point(&cloud, &cell, DepthRule::Exact2d).unwrap();
        let depth = halfspace_depth_2d(&cloud, &pts[y]).unwrap().0;
        if outside < depth {
            exercised += 1;
            violations += usize::from(y >= core);
        }
    }
    outcome(
        violations == 0,
        format!("{violations} violations, condition met in {exercised} of 500 cells"),
    )
}

fn persistence_oracle() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut diagram_mismatch = 0;
    let mut euler_mismatch = 0;
    for _ in 0..100 {
        let m = rng.gen_range(1..=10);
        let w = rng.gen_range(1..=60);
        let rows: Vec<Vec<f64>> = (0..w)
            .map(|_| {
                let t: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
                let r = rng.gen_range(0.7..1.1);
                vec![r * t.cos(), r * t.sin()]
            })
            .collect();
        let witnesses = PointCloud::signal(2, &rows).unwrap();
        let landmarks: Vec<Vec<f64>> = (0..m).map(|_| rows[rng.gen_range(0..w)].clone()).collect();
        let cfg = WitnessConfig {
            nu: rng.gen_range(0..=m.min(2)),
            r_max: rng.gen_range(0.2..2.1),
            max_dim: 2,
        };
        let f = build_lazy_witness(&landmarks, &witnesses, &cfg).unwrap();
        let d = compute_persistence(&f).unwrap();
        let ours: Vec<(usize, f64, f64)> = d.canonical().iter().map(|b| (b.dim, b.birth, b.death)).collect();
        diagram_mismatch += usize::from(ours != persistence_by_ranks(&f));
        for _ in 0..10 {
            let t = rng.gen_range(0.0..cfg.r_max);
            let chi: i64 = d
                .bars
                .iter()
                .filter(|b| b.birth <= t && t < b.death)
                .map(|b| if b.dim % 2 == 0 { 1 } else { -1 })
                .sum();
            euler_mismatch += usize::from(chi != euler_characteristic(&f, t));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        diagram_mismatch == 0 && euler_mismatch == 0 && secs < 60.0,
        format!("{diagram_mismatch} diagram and {euler_mismatch} Euler mismatches over 100 filtrations, {secs:.2}s"),
    )
}

fn bottleneck_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let bars = |rng: &mut ChaCha8Rng| -> Vec<(f64, f64)> {
        (0..rng.gen_range(0..=6))
            .map(|_| {
                let b = rng.gen_range(0.0..1.0);
                (b, b + rng.gen_range(0.01..1.0))
            })
            .collect()
    };
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let a = bars(&mut rng);
        let b = bars(&mut rng);
        worst = worst.max((bottleneck_distance(&a, &b) - bottleneck_exhaustive(&a, &b)).abs());
    }
    outcome(worst <= 1e-9, format!("largest deviation {worst:.1e} over 100 pairs"))
}

fn clean_circle() -> Outcome {
    let cfg = EvalConfig::default();
    let mut correct = 0;
    let mut lives = Vec::new();
    for trial in 0..20 {
        let seed = trial_seed(MASTER, "circle", "clean", 30, trial);
        let sample = Sample {
            preset: "sanity".into(),
            dataset: "circle".into(),
            noise: "clean".into(),
            budget: 30,
            trial,
            seed,
            h1_target: 1,
            cloud: generate(&DatasetSpec::new(Family::Circle, Contamination::Clean, seed)).unwrap(),
        };
        let r = &evaluate_sample(&sample, &[MethodSpec::Maxmin], &cfg).unwrap()[0];
        correct += usize::from(r.h1_count == 1);
        lives.push(r.top1_life);
    }
    let in_range = lives.iter().all(|l| (0.4..=0.9).contains(l));
    let lo = lives.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = lives.iter().copied().fold(0.0, f64::max);
    outcome(
        correct * 100 >= 95 * 20 && in_range,
        format!("H1 count 1 in {correct}/20, top-1 life in [{lo:.3}, {hi:.3}]"),
    )
}

fn confirmation_grid(master: u64) -> Vec<TrialRecord> {
    let mut cfg = GridConfig::synthetic(master, 20, 0.6, 1.0);
    cfg.methods = vec![MethodSpec::Maxmin, MethodSpec::SupportWeighted { alpha_max: 0.6, tau: 1.0 }];
    run_grid(&synthetic_sources(), &cfg).unwrap()
}

fn confirmation(records: &[TrialRecord], secs: f64) -> Outcome {
    let sw = "support_weighted(0.6,1)";
    let mut covers: BTreeMap<(String, String, usize), (f64, f64)> = BTreeMap::new();
    for r in records {
        let e = covers.entry(r.setting()).or_default();
        if r.method == "maxmin" {
            e.0 += r.mean_signal_cover;
        } else {
            e.1 += r.mean_signal_cover;
        }
    }
    let gains: Vec<f64> = covers.values().map(|(b, s)| (b - s) / b).collect();
    let in_band = gains.iter().filter(|g| (0.04..=0.15).contains(*g)).count();
    let acc = |label: &str| {
        let v: Vec<f64> = records
            .iter()
            .filter(|r| r.method_label() == label)
            .map(|r| f64::from(r.h1_count_correct))
            .collect();
        v.iter().sum::<f64>() / v.len() as f64
    };
    let d_acc = acc(sw) - acc("maxmin");
    let p = paired_stats(records, sw, "maxmin", Metric::MeanCover, 0).unwrap().wilcoxon_p;
    let lo = gains.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = gains.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    outcome(
        gains.len() == 18 && in_band >= 16 && d_acc.abs() <= 0.05 && p < 1e-6,
        format!(
            "cover gain in [4%, 15%] for {in_band}/{} settings (range {:.1}% to {:.1}%), accuracy diff {d_acc:+.4}, Wilcoxon p {p:.2e}, {secs:.1}s",
            gains.len(),
            100.0 * lo,
            100.0 * hi
        ),
    )
}

fn statistics() -> Outcome {
    let a = exact_discordance_test(3, 3);
    let b = exact_discordance_test(544, 565);
    let w = wilcoxon_signed_rank(&[0.0; 12]);
    let ci = bootstrap_mean_ci(&[0.3; 25], 10_000, 9).unwrap();
    outcome(
        a == 1.0 && (0.50..=0.60).contains(&b) && w == 1.0 && ci == (0.3, 0.3),
        format!("discordance(3,3)={a}, discordance(544,565)={b:.4}, all-zero Wilcoxon={w}, constant CI={ci:?}"),
    )
}

fn csv_bytes(records: &[TrialRecord]) -> Vec<u8> {
    let mut out = Vec::new();
    write_csv(&mut out, records).unwrap();
    out
}

fn determinism(first: &[TrialRecord]) -> Outcome {
    let again = confirmation_grid(MASTER);
    let (a, b) = (csv_bytes(first), csv_bytes(&again));
    let torus = |seed| {
        let cfg = TorusConfig::new(seed, 2, TorusThresholds { h1: 0.1, h2: 0.1 });
        let mut out = Vec::new();
        write_csv(&mut out, &run_torus(&cfg).unwrap()).unwrap();
        out
    };
    let same_torus = torus(MASTER) == torus(MASTER);
    outcome(
        a == b && same_torus,
        format!("{} byte record CSV identical: {}, torus records identical: {same_torus}", a.len(), a == b),
    )
}

fn torus() -> Outcome {
    let pilot_result = pilot(MASTER, 20, DEFAULT_TORUS_BUDGET, &DEFAULT_BAND).unwrap();
    let cfg = TorusConfig::new(MASTER, 20, pilot_result.thresholds);
    let records = run_torus(&cfg).unwrap();
    let mut by_regime: BTreeMap<&str, BTreeMap<&str, (f64, f64, usize)>> = BTreeMap::new();
    for r in &records {
        let e = by_regime.entry(&r.noise).or_default().entry(&r.method).or_default();
        e.0 += r.mean_signal_cover;
        e.1 += f64::from(r.torus_hit);
        e.2 += 1;
    }
    let mut pass = by_regime.len() == 3;
    let mut parts = vec![format!(
        "thresholds h1={} h2={}",
        pilot_result.thresholds.h1, pilot_result.thresholds.h2
    )];
    for (noise, methods) in &by_regime {
        let (mc, mh, mn) = methods["maxmin"];
        let (sc, sh, sn) = methods["support_weighted"];
        let (mc, sc) = (mc / mn as f64, sc / sn as f64);
        pass &= mn == 20 && sn == 20 && sc < mc;
        parts.push(format!(
            "{noise}: cover {mc:.4} -> {sc:.4}, hit {:.2} -> {:.2}",
            mh / mn as f64,
            sh / sn as f64
        ));
    }
    outcome(pass, parts.join("; "))
}

#[test]
fn acceptance() {
    let start = Instant::now();
    let grid = confirmation_grid(MASTER);
    let grid_secs = start.elapsed().as_secs_f64();

    let results = [
        ("depth oracle equivalence", depth_oracle()),
        ("cover bounds", cover_bounds()),
        ("convex core", convex_core()),
        ("persistence oracle", persistence_oracle()),
        ("bottleneck oracle", bottleneck_oracle()),
        ("clean circle", clean_circle()),
        ("confirmation benchmark", confirmation(&grid, grid_secs)),
        ("statistics", statistics()),
        ("determinism", determinism(&grid)),
        ("torus", torus()),
    ];
    for (k, (name, o)) in results.iter().enumerate() {
        println!("criterion {:>2} {}: {name}: {}", k + 1, if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    let failed: Vec<usize> = results
        .iter()
        .enumerate()
        .filter(|(_, (_, o))| !o.pass)
        .map(|(k, _)| k + 1)
        .collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
