//! Command-line front end: single runs from a TOML file, experiment
//! sweeps from a file or a named preset, and configuration validation.
//!
//! Exit codes: 0 on success, 1 for configuration or argument problems,
//! 2 when the sweep finished but some runs failed.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use mlo_sim::config::{load_config, RunConfig};
use mlo_sim::experiment::{run_experiment, ExperimentPlan, ExperimentPreset};
use mlo_sim::metrics::{write_summary_csv, SummaryRow};
use mlo_sim::{run, Result};

#[derive(Debug, Parser)]
#[command(version, about = "Flow-level simulator for multi-link WLAN traffic allocation")]
struct Cli {
    /// TOML run configuration; a file with an [experiment] section runs a
    /// sweep, one without runs a single simulation
    #[arg(long, value_name = "FILE", conflicts_with = "experiment")]
    config: Option<PathBuf>,

    /// Built-in sweep preset: controlled-load, controlled-density,
    /// random-load or random-density
    #[arg(long, value_name = "NAME")]
    experiment: Option<String>,

    /// Master seed; overrides [sim].seed from the configuration
    #[arg(long)]
    seed: Option<u64>,

    /// Worker threads for sweeps; 0 uses every core
    #[arg(long, value_name = "N", default_value_t = 0)]
    parallelism: usize,

    /// Output directory for reports and CSV files
    #[arg(long, value_name = "DIR", default_value = "out")]
    out: PathBuf,

    /// Check the configuration and print violations without running
    #[arg(long)]
    validate_only: bool,
}

fn main() -> ExitCode {
    // Route argument errors to exit code 1 (2 is reserved for failed
    // runs); --help and --version are Err variants that must exit 0.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                ExitCode::FAILURE
            } else {
                ExitCode::SUCCESS
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(failed_runs) if failed_runs > 0 => {
            eprintln!("error: {failed_runs} runs failed; see manifest.json");
            ExitCode::from(2)
        }
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

/// Runs the requested mode and returns the number of failed runs.
fn dispatch(cli: &Cli) -> Result<usize> {
    let config = match (&cli.config, &cli.experiment) {
        (Some(path), None) => load_config(path)?,
        (None, Some(name)) => name.parse::<ExperimentPreset>()?.config(),
        (None, None) => RunConfig::default(),
        (Some(_), Some(_)) => unreachable!("clap rejects the combination"),
    };

    let violations = config.validate();
    if cli.validate_only {
        if violations.is_empty() {
            println!("configuration ok");
            return Ok(0);
        }
        for v in &violations {
            eprintln!("invalid: {v}");
        }
        return Err(mlo_sim::SimError::Config(format!(
            "{} violations found",
            violations.len()
        )));
    }
    if !violations.is_empty() {
        return Err(mlo_sim::SimError::Config(violations.join("; ")));
    }

    let seed = cli.seed.unwrap_or(config.sim.seed);
    let parallelism = if cli.parallelism == 0 {
        std::thread::available_parallelism().map(usize::from).unwrap_or(1)
    } else {
        cli.parallelism
    };

    if config.experiment.is_some() {
        let plan = ExperimentPlan::from_config(&config)?;
        println!(
            "running {}: {} points x {} policies x {} runs on {parallelism} threads",
            plan.name,
            plan.values.len(),
            plan.policies.len(),
            plan.runs_per_point
        );
        let result = run_experiment(&plan, seed, parallelism, &cli.out)?;
        println!(
            "completed {}/{} runs; outputs in {}",
            result.runs.len(),
            plan.total_runs(),
            cli.out.display()
        );
        Ok(result.failures.len())
    } else {
        single_run(&config, seed, &cli.out)?;
        Ok(0)
    }
}

/// One simulation: writes `report.json` and a one-row `summary.csv`.
fn single_run(config: &RunConfig, seed: u64, out: &std::path::Path) -> Result<()> {
    let sim = config.to_sim_config(config.sim.policy, seed)?;
    let report = run(&sim)?;
    std::fs::create_dir_all(out)?;

    let report_path = out.join("report.json");
    let text = serde_json::to_string_pretty(&report)
        .map_err(|e| mlo_sim::SimError::Experiment(format!("report serialization: {e}")))?;
    std::fs::write(&report_path, text + "\n")?;

    let row = SummaryRow::from_report(
        &report,
        "single",
        "load_mbps",
        config.traffic.bandwidth.mean_mbps(),
        0,
        config.traffic.bandwidth.mean_mbps(),
    );
    write_summary_csv(std::fs::File::create(out.join("summary.csv"))?, &[row])?;

    print_single(&report);
    println!("report written to {}", report_path.display());
    Ok(())
}

fn print_single(report: &mlo_sim::MetricsReport) {
    println!(
        "policy {} seed {}: {} APs, {} stations over {:.0} s",
        report.policy, report.seed, report.n_aps, report.n_stations, report.duration_s
    );
    println!(
        "  satisfaction {:.4}  efficiency {:.4}  drop {:.4}  flows {}",
        report.avg_satisfaction, report.efficiency_mean, report.drop_ratio, report.flow_count
    );
}
