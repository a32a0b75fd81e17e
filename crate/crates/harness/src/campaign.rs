//! Campaign execution and persistence: `runs` independent seeded runs of
//! one configuration, their manifest, summary row, and optional trace files.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use pocsa_core::benchmarks::Benchmark;
use pocsa_core::csa::{run_bcsa_sweep, run_csa, run_rcsa, CsaConfig};
use pocsa_core::pocsa::{run_po_csa, PoCsaParams};
use pocsa_core::rng::derive_seed;
use pocsa_core::rotation::RotationMatrix;
use pocsa_core::run::{RunResult, TraceLevel};

use crate::config::{Algorithm, CampaignConfig};
use crate::stats::{sci3, summary_stats, SummaryStats};
use crate::{io_err, HarnessError, Result};

/// Derivation domain separating rotation seeds from run seeds.
const ROTATION_SEED_DOMAIN: u64 = 0x526f_7461_7465;

/// One run's outcome as persisted in the manifest.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunOutcome {
    pub run_index: u32,
    pub seed: u64,
    pub t_gen_0: f64,
    pub final_best_energy: f64,
    pub eval_count: u64,
    pub iterations: u64,
    pub duration_ms: u64,
    /// Per-member finals of a best-of-seven run (best-of-seven mode only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep_members: Option<Vec<SweepMemberOutcome>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SweepMemberOutcome {
    pub t_gen_0: f64,
    pub final_best_energy: f64,
    pub eval_count: u64,
}

/// The machine-readable record that regenerates a campaign: full config,
/// derived seeds, the rotation artifact reference, and per-run outcomes.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Manifest {
    pub config: CampaignConfig,
    /// Probes are clamped to the objective's input box.
    pub boundary_policy: String,
    pub run_seeds: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rotation_file: Option<String>,
    pub runs: Vec<RunOutcome>,
    pub summary: SummaryStats,
}

/// A finished campaign: its manifest plus the in-memory run results.
#[derive(Debug)]
pub struct CampaignRecord {
    pub manifest: Manifest,
    pub results: Vec<RunResult>,
    pub out_dir: PathBuf,
    pub summary_path: PathBuf,
    pub manifest_path: PathBuf,
}

impl CampaignRecord {
    pub fn final_energies(&self) -> Vec<f64> {
        self.results.iter().map(|r| r.final_best.energy).collect()
    }
}

/// Rotation seed for a `(campaign seed, function, dim)` triple; one matrix
/// per campaign, shared by all of its runs.
fn rotation_seed(config: &CampaignConfig) -> u64 {
    derive_seed(
        config.seed ^ ROTATION_SEED_DOMAIN,
        ((config.function as u64) << 32) | config.dim as u64,
    )
}

/// Instantiates the campaign's benchmark, generating (and persisting, when
/// `out_dir` is given) the rotation artifact for the nonseparable group.
pub fn campaign_benchmark(
    config: &CampaignConfig,
    out_dir: Option<&Path>,
) -> Result<(Benchmark, Option<String>)> {
    if config.function < 9 {
        return Ok((Benchmark::new(config.function, config.dim, None)?, None));
    }
    let matrix = RotationMatrix::generate(config.dim, rotation_seed(config))?;
    let file_name = format!("rotation_f{}_{}.txt", config.function, config.dim);
    if let Some(dir) = out_dir {
        let path = dir.join(&file_name);
        fs::write(&path, matrix.to_text()).map_err(|e| io_err(&path, e))?;
    }
    let bench = Benchmark::new(config.function, config.dim, Some(matrix))?;
    Ok((bench, Some(file_name)))
}

fn trace_level(config: &CampaignConfig) -> TraceLevel {
    if !config.trace {
        TraceLevel::Off
    } else if config.trace_members {
        TraceLevel::Full
    } else {
        TraceLevel::Summary
    }
}

/// Executes one seeded run of the configured algorithm.
pub fn execute_run(
    config: &CampaignConfig,
    benchmark: &Benchmark,
    run_seed: u64,
) -> Result<(RunResult, Option<Vec<SweepMemberOutcome>>)> {
    let level = trace_level(config);
    let m = config.m();
    match config.algorithm {
        Algorithm::Csa => {
            let csa = CsaConfig {
                m,
                budget_per_optimizer: config.budget_per_optimizer,
                t_gen_0: config.t_gen_0.expect("validated"),
                t_ac_0: config.t_ac_0,
                alpha: config.alpha,
            };
            Ok((run_csa(benchmark, &csa, run_seed, level)?, None))
        }
        Algorithm::RCsa => {
            let csa = CsaConfig {
                m,
                budget_per_optimizer: config.budget_per_optimizer,
                t_gen_0: 1.0, // replaced by the protocol's draw
                t_ac_0: config.t_ac_0,
                alpha: config.alpha,
            };
            Ok((run_rcsa(benchmark, &csa, run_seed, level)?, None))
        }
        Algorithm::BCsa => {
            let csa = CsaConfig {
                m,
                budget_per_optimizer: config.budget_per_optimizer,
                t_gen_0: 1.0, // each sweep member substitutes its own
                t_ac_0: config.t_ac_0,
                alpha: config.alpha,
            };
            let sweep = run_bcsa_sweep(benchmark, &csa, run_seed, level)?;
            let members = sweep
                .runs
                .iter()
                .map(|r| SweepMemberOutcome {
                    t_gen_0: r.t_gen_0,
                    final_best_energy: r.final_best.energy,
                    eval_count: r.eval_count,
                })
                .collect();
            Ok((sweep.best().clone(), Some(members)))
        }
        Algorithm::PoCsa => {
            let params = PoCsaParams {
                beta: config.beta,
                phi: config.phi,
                mu: config.mu,
                delta: config.delta,
                alpha: config.alpha,
                t_ac_0: config.t_ac_0,
                initial_t_gen: config.t_gen_0,
            };
            Ok((
                run_po_csa(
                    benchmark,
                    m,
                    config.budget_per_optimizer,
                    &params,
                    run_seed,
                    level,
                )?,
                None,
            ))
        }
    }
}

/// Runs the whole campaign and writes `manifest.json`, `summary.csv`, the
/// rotation artifact (rotated functions), and `trace_<run>.csv` files when
/// tracing is on.
pub fn run_campaign(config: &CampaignConfig) -> Result<CampaignRecord> {
    config.validate()?;
    fs::create_dir_all(&config.out_dir).map_err(|e| io_err(&config.out_dir, e))?;
    let (benchmark, rotation_file) = campaign_benchmark(config, Some(&config.out_dir))?;

    let run_seeds: Vec<u64> = (0..config.runs as u64)
        .map(|i| derive_seed(config.seed, i))
        .collect();

    let mut results = Vec::with_capacity(run_seeds.len());
    let mut outcomes = Vec::with_capacity(run_seeds.len());
    for (i, &run_seed) in run_seeds.iter().enumerate() {
        let started = Instant::now();
        let (result, sweep_members) = execute_run(config, &benchmark, run_seed)?;
        outcomes.push(RunOutcome {
            run_index: i as u32,
            seed: run_seed,
            t_gen_0: result.t_gen_0,
            final_best_energy: result.final_best.energy,
            eval_count: result.eval_count,
            iterations: result.iterations,
            duration_ms: started.elapsed().as_millis() as u64,
            sweep_members,
        });
        results.push(result);
    }

    let finals: Vec<f64> = results.iter().map(|r| r.final_best.energy).collect();
    let summary = summary_stats(&finals);
    let manifest = Manifest {
        config: config.clone(),
        boundary_policy: "clamp".into(),
        run_seeds,
        rotation_file,
        runs: outcomes,
        summary,
    };

    let manifest_path = config.out_dir.join("manifest.json");
    let json = serde_json::to_string_pretty(&manifest)
        .expect("manifest serialization cannot fail");
    fs::write(&manifest_path, json).map_err(|e| io_err(&manifest_path, e))?;

    let summary_path = config.out_dir.join("summary.csv");
    fs::write(&summary_path, summary_csv(&manifest)).map_err(|e| io_err(&summary_path, e))?;

    if config.trace {
        for (i, result) in results.iter().enumerate() {
            let path = config.out_dir.join(format!("trace_{i}.csv"));
            fs::write(&path, trace_csv(config, i as u32, result))
                .map_err(|e| io_err(&path, e))?;
        }
    }

    Ok(CampaignRecord {
        manifest,
        results,
        out_dir: config.out_dir.clone(),
        summary_path,
        manifest_path,
    })
}

/// The summary table header shared by `summary.csv` and combined reports.
pub const SUMMARY_HEADER: &str =
    "function,D,m,algorithm,budget_per_optimizer,runs,mean,median,min,max,stddev,seed";

/// One summary data row for a finished campaign.
pub fn summary_row(manifest: &Manifest) -> String {
    let c = &manifest.config;
    let s = &manifest.summary;
    format!(
        "f{},{},{},{},{},{},{},{},{},{},{},{}",
        c.function,
        c.dim,
        c.m(),
        c.algorithm,
        c.budget_per_optimizer,
        c.runs,
        sci3(s.mean),
        sci3(s.median),
        sci3(s.min),
        sci3(s.max),
        sci3(s.stddev),
        c.seed
    )
}

pub fn summary_csv(manifest: &Manifest) -> String {
    format!(
        "# config: {}\n{}\n{}\n",
        manifest.config.header_line(),
        SUMMARY_HEADER,
        summary_row(manifest)
    )
}

/// Long-form per-iteration trace: one row per iteration with the best
/// energy and, when recorded, the coupling scalars and temperatures.
pub fn trace_csv(config: &CampaignConfig, run_index: u32, result: &RunResult) -> String {
    let mut header = String::from("iteration,best_energy");
    let trace = result.trace.as_ref();
    if trace.is_some() {
        header.push_str(",t_ac,sigma2,t_gen_ref");
        if config.trace_members {
            for i in 0..config.m() {
                header.push_str(&format!(",t_gen_member_{i}"));
            }
        }
    }
    let mut out = format!(
        "# config: {} run_index={run_index} run_seed={}\n{header}\n",
        config.header_line(),
        result.seed
    );
    for (k, best) in result.best_energy_history.iter().enumerate() {
        out.push_str(&format!("{k},{best}"));
        if let Some(t) = trace {
            out.push_str(&format!(",{},{},{}", t.t_ac[k], t.sigma2[k], t.t_gen_ref[k]));
            if config.trace_members {
                for temp in &t.t_gen_members[k] {
                    out.push_str(&format!(",{temp}"));
                }
            }
        }
        out.push('\n');
    }
    out
}

/// Outcome of a seven-temperature sweep: one full campaign per fixed
/// initial generation temperature, plus the winning temperature by mean.
#[derive(Debug)]
pub struct SweepRecord {
    pub temperatures: Vec<f64>,
    pub campaigns: Vec<CampaignRecord>,
    pub best_index: usize,
    pub out_dir: PathBuf,
    pub summary_path: PathBuf,
    pub manifest_path: PathBuf,
}

#[derive(Serialize, Deserialize)]
struct SweepManifest {
    config: CampaignConfig,
    temperatures: Vec<f64>,
    means: Vec<f64>,
    /// The sweep's result: the temperature with the lowest mean final energy.
    best_t_gen_0: f64,
    best_mean: f64,
    sub_dirs: Vec<String>,
}

/// Runs seven classic-CSA campaigns over the fixed temperature set, writes
/// each into its own sub-directory, and marks the argmin-by-mean as the
/// sweep result in `sweep_summary.csv` and `sweep_manifest.json`.
pub fn sweep_tgen(config: &CampaignConfig) -> Result<SweepRecord> {
    if config.algorithm != Algorithm::BCsa {
        return Err(HarnessError::InvalidConfig(vec![format!(
            "sweep requires algorithm b-csa, got {}",
            config.algorithm
        )]));
    }
    config.validate()?;
    fs::create_dir_all(&config.out_dir).map_err(|e| io_err(&config.out_dir, e))?;

    let temperatures: Vec<f64> = pocsa_core::csa::BCSA_TEMPERATURES.to_vec();
    let mut campaigns = Vec::with_capacity(temperatures.len());
    let mut sub_dirs = Vec::with_capacity(temperatures.len());
    for (j, &t) in temperatures.iter().enumerate() {
        let sub_dir = config.out_dir.join(format!("tgen_{t}"));
        let sub_config = CampaignConfig {
            algorithm: Algorithm::Csa,
            t_gen_0: Some(t),
            seed: derive_seed(config.seed, j as u64),
            out_dir: sub_dir.clone(),
            ..config.clone()
        };
        sub_dirs.push(sub_dir.display().to_string());
        campaigns.push(run_campaign(&sub_config)?);
    }

    let means: Vec<f64> = campaigns.iter().map(|c| c.manifest.summary.mean).collect();
    let mut best_index = 0;
    for (j, &mean) in means.iter().enumerate() {
        if mean < means[best_index] {
            best_index = j;
        }
    }

    let mut summary = format!(
        "# config: {}\nt_gen_0,mean,median,min,max,stddev,selected\n",
        config.header_line()
    );
    for (j, c) in campaigns.iter().enumerate() {
        let s = &c.manifest.summary;
        summary.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            temperatures[j],
            sci3(s.mean),
            sci3(s.median),
            sci3(s.min),
            sci3(s.max),
            sci3(s.stddev),
            j == best_index
        ));
    }
    let summary_path = config.out_dir.join("sweep_summary.csv");
    fs::write(&summary_path, &summary).map_err(|e| io_err(&summary_path, e))?;

    let manifest = SweepManifest {
        config: config.clone(),
        temperatures: temperatures.clone(),
        means: means.clone(),
        best_t_gen_0: temperatures[best_index],
        best_mean: means[best_index],
        sub_dirs,
    };
    let manifest_path = config.out_dir.join("sweep_manifest.json");
    let json = serde_json::to_string_pretty(&manifest).expect("sweep manifest serializes");
    fs::write(&manifest_path, json).map_err(|e| io_err(&manifest_path, e))?;

    Ok(SweepRecord {
        temperatures,
        campaigns,
        best_index,
        out_dir: config.out_dir.clone(),
        summary_path,
        manifest_path,
    })
}
