use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use pocsa_cli::config::{build_config, Algorithm, Overrides};
use pocsa_cli::{run_campaign, sweep_tgen, write_report, HarnessError};

#[derive(Parser)]
#[command(
    name = "pocsa",
    about = "Coupled simulated annealing toolkit: seeded benchmark campaigns, \
             temperature sweeps, and table/trace reports",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one campaign (`runs` seeded runs of one configuration).
    Run(RunArgs),
    /// Run the best-of-seven initial-temperature sweep (algorithm b-csa).
    Sweep(RunArgs),
    /// Run a single fully-traced run and emit its per-iteration figure data.
    Trace(RunArgs),
    /// Aggregate finished campaigns into one combined summary table.
    Report(ReportArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Key-value config file; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Algorithm: csa, r-csa, b-csa, or po-csa.
    #[arg(long)]
    algo: Option<Algorithm>,
    /// Benchmark function id (1..=14).
    #[arg(long)]
    function: Option<u8>,
    /// Problem dimension D.
    #[arg(long)]
    dim: Option<usize>,
    /// Number of coupled optimizers (defaults to the dimension).
    #[arg(long)]
    optimizers: Option<usize>,
    /// Objective evaluations per optimizer.
    #[arg(long)]
    budget: Option<u64>,
    /// Independent seeded runs per campaign.
    #[arg(long)]
    runs: Option<u32>,
    /// Campaign seed; run seeds derive from it by run index.
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Record per-iteration traces.
    #[arg(long)]
    trace: bool,
    /// Also record every optimizer's generation temperature.
    #[arg(long)]
    trace_members: bool,
    #[arg(long)]
    tgen0: Option<f64>,
    #[arg(long)]
    tac0: Option<f64>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    phi: Option<f64>,
    #[arg(long)]
    mu: Option<f64>,
    #[arg(long)]
    delta: Option<f64>,
}

#[derive(Args)]
struct ReportArgs {
    /// Output CSV path.
    #[arg(long)]
    out: PathBuf,
    /// Campaign directories or manifest.json paths (at least one).
    #[arg(required = true)]
    manifests: Vec<PathBuf>,
}

impl RunArgs {
    fn overrides(&self) -> Overrides {
        Overrides {
            algorithm: self.algo,
            function: self.function,
            dim: self.dim,
            optimizers: self.optimizers,
            budget_per_optimizer: self.budget,
            runs: self.runs,
            seed: self.seed,
            t_gen_0: self.tgen0,
            t_ac_0: self.tac0,
            alpha: self.alpha,
            beta: self.beta,
            phi: self.phi,
            mu: self.mu,
            delta: self.delta,
            trace: self.trace,
            trace_members: self.trace_members,
            out_dir: self.out.clone(),
        }
    }
}

fn load_config(args: &RunArgs) -> Result<pocsa_cli::CampaignConfig, HarnessError> {
    let file_text = match &args.config {
        Some(path) => Some(std::fs::read_to_string(path).map_err(|e| HarnessError::Io {
            path: path.display().to_string(),
            source: e,
        })?),
        None => None,
    };
    build_config(file_text.as_deref(), &args.overrides())
}

fn run(command: Command) -> Result<(), HarnessError> {
    match command {
        Command::Run(args) => {
            let config = load_config(&args)?;
            let record = run_campaign(&config)?;
            println!(
                "campaign done: {} runs, mean {}, summary {}",
                config.runs,
                pocsa_cli::sci3(record.manifest.summary.mean),
                record.summary_path.display()
            );
            Ok(())
        }
        Command::Sweep(args) => {
            let config = load_config(&args)?;
            let record = sweep_tgen(&config)?;
            println!(
                "sweep done: best t_gen_0 {} (mean {}), summary {}",
                record.temperatures[record.best_index],
                pocsa_cli::sci3(record.campaigns[record.best_index].manifest.summary.mean),
                record.summary_path.display()
            );
            Ok(())
        }
        Command::Trace(args) => {
            let mut config = load_config(&args)?;
            config.runs = 1;
            config.trace = true;
            config.trace_members = true;
            let record = run_campaign(&config)?;
            println!(
                "trace done: final {}, trace {}",
                pocsa_cli::sci3(record.results[0].final_best.energy),
                record.out_dir.join("trace_0.csv").display()
            );
            Ok(())
        }
        Command::Report(args) => {
            write_report(&args.manifests, &args.out)?;
            println!("report written to {}", args.out.display());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e @ HarnessError::InvalidConfig(_)) => {
            eprintln!("{e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
