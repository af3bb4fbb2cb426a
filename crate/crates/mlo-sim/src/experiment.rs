//! Experiment sweeps: built-in presets, run planning, batch execution and
//! the CSV/manifest output bundle.
//!
//! A sweep varies one axis (per-flow load, AP count or stations per AP)
//! over a list of values, runs every configured policy at every point, and
//! repeats each combination `runs_per_point` times. Repetition `i` uses
//! the same derived seed at every point and for every policy, so curves
//! differ only by the quantity under study, not by the random draw.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Serialize;

use crate::config::{ExperimentSection, RunConfig, SweepAxis, TopologyKind};
use crate::engine::{derive_seed, run_batch, SimConfig};
use crate::error::{Result, SimError};
use crate::metrics::{
    write_drop_cdf_csv, write_per_ap_csv, write_summary_csv, ApRow, DropCdfRow, MetricsReport,
    SummaryRow, CSV_SCHEMA_VERSION,
};
use crate::policy::PolicyKind;
use crate::scenario::StationCount;
use crate::traffic::BandwidthRule;

/// The four built-in evaluation sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExperimentPreset {
    /// Three in-line APs, 20 stations each, per-flow load swept 1..8 Mbps;
    /// single-link operation on the attached link versus an equal split.
    ControlledLoad,
    /// Three in-line APs, per-flow load uniform in [2, 8) Mbps, station
    /// count swept; equal split versus least-congested single link.
    ControlledDensity,
    /// Ten random APs on 45 m x 45 m, per-flow load swept 1..8 Mbps; the
    /// three allocation policies side by side.
    RandomLoad,
    /// Random deployments of 5 to 40 APs at uniform [2, 8) Mbps per flow;
    /// congestion growth under densification.
    RandomDensity,
}

impl ExperimentPreset {
    pub const ALL: [ExperimentPreset; 4] = [
        ExperimentPreset::ControlledLoad,
        ExperimentPreset::ControlledDensity,
        ExperimentPreset::RandomLoad,
        ExperimentPreset::RandomDensity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ExperimentPreset::ControlledLoad => "controlled-load",
            ExperimentPreset::ControlledDensity => "controlled-density",
            ExperimentPreset::RandomLoad => "random-load",
            ExperimentPreset::RandomDensity => "random-density",
        }
    }

    /// The full run configuration of the preset, identical to what a TOML
    /// file describing the same sweep would parse to.
    pub fn config(self) -> RunConfig {
        let mut config = RunConfig::default();
        match self {
            ExperimentPreset::ControlledLoad => {
                config.scenario.topology = TopologyKind::Inline3;
                config.scenario.stations_per_ap = StationCount::Fixed(20);
                config.experiment = Some(ExperimentSection {
                    name: self.name().into(),
                    sweep: SweepAxis::LoadMbps,
                    values: (1..=8).map(f64::from).collect(),
                    runs_per_point: 100,
                    policies: vec![PolicyKind::SlRandom, PolicyKind::Mlsa],
                });
            }
            ExperimentPreset::ControlledDensity => {
                config.scenario.topology = TopologyKind::Inline3;
                config.traffic.bandwidth = BandwidthRule::Uniform([2.0, 8.0]);
                config.experiment = Some(ExperimentSection {
                    name: self.name().into(),
                    sweep: SweepAxis::StationsPerAp,
                    values: vec![5.0, 10.0, 15.0, 20.0, 25.0, 30.0],
                    runs_per_point: 100,
                    policies: vec![PolicyKind::Mlsa, PolicyKind::Slci],
                });
            }
            ExperimentPreset::RandomLoad => {
                config.experiment = Some(ExperimentSection {
                    name: self.name().into(),
                    sweep: SweepAxis::LoadMbps,
                    values: (1..=8).map(f64::from).collect(),
                    runs_per_point: 100,
                    policies: vec![PolicyKind::Slci, PolicyKind::Mcaa, PolicyKind::Mlsa],
                });
            }
            ExperimentPreset::RandomDensity => {
                config.traffic.bandwidth = BandwidthRule::Uniform([2.0, 8.0]);
                config.experiment = Some(ExperimentSection {
                    name: self.name().into(),
                    sweep: SweepAxis::NAps,
                    values: vec![5.0, 10.0, 20.0, 40.0],
                    runs_per_point: 100,
                    policies: vec![PolicyKind::Slci, PolicyKind::Mcaa, PolicyKind::Mlsa],
                });
            }
        }
        config
    }
}

impl fmt::Display for ExperimentPreset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExperimentPreset {
    type Err = SimError;

    fn from_str(s: &str) -> Result<ExperimentPreset> {
        ExperimentPreset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = ExperimentPreset::ALL.iter().map(|p| p.name()).collect();
                SimError::Experiment(format!(
                    "unknown experiment {s:?}, expected one of {}",
                    names.join(", ")
                ))
            })
    }
}

/// A fully resolved sweep: the base configuration plus the axis to vary.
#[derive(Debug, Clone)]
pub struct ExperimentPlan {
    pub base: RunConfig,
    pub name: String,
    pub sweep: SweepAxis,
    pub values: Vec<f64>,
    pub runs_per_point: u32,
    pub policies: Vec<PolicyKind>,
}

impl ExperimentPlan {
    /// Builds a plan from a validated configuration with an `[experiment]`
    /// section.
    pub fn from_config(config: &RunConfig) -> Result<ExperimentPlan> {
        let violations = config.validate();
        if !violations.is_empty() {
            return Err(SimError::Config(violations.join("; ")));
        }
        let exp = config.experiment.as_ref().ok_or_else(|| {
            SimError::Experiment("configuration has no [experiment] section".into())
        })?;
        Ok(ExperimentPlan {
            base: config.clone(),
            name: exp.name.clone(),
            sweep: exp.sweep,
            values: exp.values.clone(),
            runs_per_point: exp.runs_per_point,
            policies: exp.policies.clone(),
        })
    }

    pub fn preset(preset: ExperimentPreset) -> ExperimentPlan {
        ExperimentPlan::from_config(&preset.config()).expect("presets are valid")
    }

    pub fn total_runs(&self) -> usize {
        self.values.len() * self.policies.len() * self.runs_per_point as usize
    }

    /// The engine configuration for one (point, policy, seed) cell.
    pub fn cell_config(&self, value: f64, policy: PolicyKind, seed: u64) -> Result<SimConfig> {
        let mut base = self.base.clone();
        match self.sweep {
            SweepAxis::LoadMbps => base.traffic.bandwidth = BandwidthRule::Fixed(value),
            SweepAxis::NAps => base.scenario.n_aps = value as u32,
            SweepAxis::StationsPerAp => {
                base.scenario.stations_per_ap = StationCount::Fixed(value as u32)
            }
        }
        base.to_sim_config(policy, seed)
    }

    /// Mean per-flow demand at a sweep point, reported in the summary.
    pub fn cell_load_mbps(&self, value: f64) -> f64 {
        match self.sweep {
            SweepAxis::LoadMbps => value,
            _ => self.base.traffic.bandwidth.mean_mbps(),
        }
    }
}

/// One completed run within a sweep.
#[derive(Debug, Clone)]
pub struct ExperimentRun {
    pub sweep_value: f64,
    pub policy: PolicyKind,
    pub run_index: u32,
    pub seed: u64,
    pub report: MetricsReport,
}

/// One run that returned an error; the rest of the sweep is unaffected.
#[derive(Debug, Clone, Serialize)]
pub struct RunFailure {
    pub sweep_value: f64,
    pub policy: PolicyKind,
    pub run_index: u32,
    pub seed: u64,
    pub error: String,
}

/// Everything a sweep produced, in deterministic point-major order.
#[derive(Debug, Clone)]
pub struct ExperimentResult {
    pub name: String,
    pub sweep: SweepAxis,
    pub master_seed: u64,
    pub runs: Vec<ExperimentRun>,
    pub failures: Vec<RunFailure>,
}

impl ExperimentResult {
    /// Reports of the runs at one (value, policy) cell, in run order.
    pub fn cell_reports(&self, value: f64, policy: PolicyKind) -> Vec<MetricsReport> {
        self.runs
            .iter()
            .filter(|r| r.sweep_value == value && r.policy == policy)
            .map(|r| r.report.clone())
            .collect()
    }
}

/// Runs every cell of the plan. Repetition `i` of every cell uses
/// `derive_seed(master_seed, i)`, giving common random numbers across the
/// whole sweep. Individual run errors are collected, not propagated.
pub fn execute(
    plan: &ExperimentPlan,
    master_seed: u64,
    parallelism: usize,
) -> Result<ExperimentResult> {
    let seeds: Vec<u64> = (0..plan.runs_per_point)
        .map(|i| derive_seed(master_seed, u64::from(i)))
        .collect();
    let mut labels = Vec::with_capacity(plan.total_runs());
    let mut configs = Vec::with_capacity(plan.total_runs());
    for &value in &plan.values {
        for &policy in &plan.policies {
            for (run_index, &seed) in seeds.iter().enumerate() {
                labels.push((value, policy, run_index as u32, seed));
                configs.push(plan.cell_config(value, policy, seed)?);
            }
        }
    }
    let outcomes = run_batch(&configs, parallelism);
    let mut runs = Vec::new();
    let mut failures = Vec::new();
    for ((sweep_value, policy, run_index, seed), outcome) in labels.into_iter().zip(outcomes) {
        match outcome {
            Ok(report) => runs.push(ExperimentRun { sweep_value, policy, run_index, seed, report }),
            Err(e) => failures.push(RunFailure {
                sweep_value,
                policy,
                run_index,
                seed,
                error: e.to_string(),
            }),
        }
    }
    Ok(ExperimentResult {
        name: plan.name.clone(),
        sweep: plan.sweep,
        master_seed,
        runs,
        failures,
    })
}

/// Reproducibility record written next to the CSV files. Contains no
/// timestamps or host details, so reruns produce identical bytes.
#[derive(Debug, Clone, Serialize)]
pub struct Manifest {
    pub tool: String,
    pub version: String,
    pub csv_schema_version: u32,
    pub experiment: String,
    pub sweep_axis: String,
    pub sweep_values: Vec<f64>,
    pub policies: Vec<PolicyKind>,
    pub runs_per_point: u32,
    pub master_seed: u64,
    pub run_seeds: Vec<u64>,
    pub total_runs: u32,
    pub completed_runs: u32,
    pub failures: Vec<RunFailure>,
    pub outputs: Vec<String>,
}

pub const SUMMARY_FILE: &str = "summary.csv";
pub const PER_AP_FILE: &str = "per_ap.csv";
pub const DROP_CDF_FILE: &str = "drop_cdf.csv";
pub const MANIFEST_FILE: &str = "manifest.json";

/// Writes `summary.csv`, `per_ap.csv`, `drop_cdf.csv` and `manifest.json`
/// into `out_dir`, creating it if needed. Returns the written paths.
pub fn write_outputs(
    plan: &ExperimentPlan,
    result: &ExperimentResult,
    out_dir: &Path,
) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(out_dir)?;

    let mut summary = Vec::with_capacity(result.runs.len());
    let mut per_ap = Vec::new();
    for run in &result.runs {
        summary.push(SummaryRow::from_report(
            &run.report,
            &result.name,
            result.sweep.name(),
            run.sweep_value,
            run.run_index,
            plan.cell_load_mbps(run.sweep_value),
        ));
        per_ap.extend(ApRow::from_report(&run.report, &result.name, run.sweep_value, run.run_index));
    }
    let mut drop_cdf = Vec::new();
    for &value in &plan.values {
        for &policy in &plan.policies {
            let reports = result.cell_reports(value, policy);
            if reports.is_empty() {
                continue;
            }
            drop_cdf.push(DropCdfRow::from_reports(
                &reports,
                &result.name,
                result.sweep.name(),
                value,
                policy,
            ));
        }
    }

    let summary_path = out_dir.join(SUMMARY_FILE);
    write_summary_csv(std::fs::File::create(&summary_path)?, &summary)?;
    let per_ap_path = out_dir.join(PER_AP_FILE);
    write_per_ap_csv(std::fs::File::create(&per_ap_path)?, &per_ap)?;
    let drop_cdf_path = out_dir.join(DROP_CDF_FILE);
    write_drop_cdf_csv(std::fs::File::create(&drop_cdf_path)?, &drop_cdf)?;

    let manifest = Manifest {
        tool: env!("CARGO_PKG_NAME").into(),
        version: env!("CARGO_PKG_VERSION").into(),
        csv_schema_version: CSV_SCHEMA_VERSION,
        experiment: result.name.clone(),
        sweep_axis: result.sweep.name().into(),
        sweep_values: plan.values.clone(),
        policies: plan.policies.clone(),
        runs_per_point: plan.runs_per_point,
        master_seed: result.master_seed,
        run_seeds: (0..plan.runs_per_point)
            .map(|i| derive_seed(result.master_seed, u64::from(i)))
            .collect(),
        total_runs: plan.total_runs() as u32,
        completed_runs: result.runs.len() as u32,
        failures: result.failures.clone(),
        outputs: vec![SUMMARY_FILE.into(), PER_AP_FILE.into(), DROP_CDF_FILE.into()],
    };
    let manifest_path = out_dir.join(MANIFEST_FILE);
    let text = serde_json::to_string_pretty(&manifest)
        .map_err(|e| SimError::Experiment(format!("manifest serialization: {e}")))?;
    std::fs::write(&manifest_path, text + "\n")?;

    Ok(vec![summary_path, per_ap_path, drop_cdf_path, manifest_path])
}

/// Executes the plan and writes the output bundle. Run failures are
/// recorded in the manifest and surfaced via `ExperimentResult::failures`
/// rather than aborting the sweep.
pub fn run_experiment(
    plan: &ExperimentPlan,
    master_seed: u64,
    parallelism: usize,
    out_dir: &Path,
) -> Result<ExperimentResult> {
    let result = execute(plan, master_seed, parallelism)?;
    write_outputs(plan, &result, out_dir)?;
    Ok(result)
}
