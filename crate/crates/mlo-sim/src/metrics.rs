//! Per-run reports and cross-run statistics: satisfaction, allocation
//! efficiency, drop ratios, occupancy, empirical CDFs, CSV emission.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::policy::PolicyKind;
use crate::spectrum::Band;

/// Bumped whenever a CSV column set changes; recorded in the manifest.
pub const CSV_SCHEMA_VERSION: u32 = 1;

/// Default threshold for counting a run as satisfied.
pub const SATISFACTION_THRESHOLD: f64 = 0.95;

/// Time-averaged occupancy of one AP interface.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InterfaceReport {
    pub band: Band,
    pub channel: u16,
    pub occupancy: f64,
}

/// Per-AP aggregates over the measurement window.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApReport {
    pub ap: u32,
    /// Time-weighted mean satisfaction of the AP's active flows; 1.0 when
    /// the AP carried no traffic.
    pub satisfaction: f64,
    /// Mean served throughput over the window, Mbps.
    pub served_mbps: f64,
    pub interfaces: Vec<InterfaceReport>,
}

/// Everything a single simulation run produces.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub seed: u64,
    pub policy: PolicyKind,
    pub duration_s: f64,
    pub warmup_s: f64,
    pub n_aps: u32,
    pub n_stations: u32,
    /// Network average satisfaction: mean of the per-AP values.
    pub avg_satisfaction: f64,
    /// Mean over flows of min(1, achieved/required throughput).
    pub efficiency_mean: f64,
    pub efficiency_sum: f64,
    pub flow_count: u64,
    pub offered_mbits: f64,
    pub served_mbits: f64,
    /// 1 − served/offered over the whole run; 0 when nothing was offered.
    pub drop_ratio: f64,
    pub aps: Vec<ApReport>,
    pub arrivals: u64,
    pub departures: u64,
    pub active_at_horizon: u64,
    /// Stations without any enabled link, excluded from the run.
    pub skipped_stations: u64,
    /// Instants at which the airtime solver hit its iteration cap.
    pub solver_failures: u64,
}

/// Served-to-required airtime ratio of one flow, capped at 1. A flow that
/// requires nothing counts as fully satisfied.
pub fn flow_satisfaction(allocated_airtime: f64, required_airtime: f64) -> f64 {
    if required_airtime > 0.0 {
        (allocated_airtime / required_airtime).min(1.0)
    } else {
        1.0
    }
}

/// Fraction of runs whose network average satisfaction reaches the
/// threshold. Empty input yields 0.
pub fn satisfaction_probability(reports: &[MetricsReport], threshold: f64) -> f64 {
    if reports.is_empty() {
        return 0.0;
    }
    let hits = reports
        .iter()
        .filter(|r| r.avg_satisfaction >= threshold)
        .count();
    hits as f64 / reports.len() as f64
}

/// Mean allocation efficiency over every flow in every report (flows
/// pooled, not run means averaged). No flows at all yields 1.
pub fn allocation_efficiency(reports: &[MetricsReport]) -> f64 {
    let flows: u64 = reports.iter().map(|r| r.flow_count).sum();
    if flows == 0 {
        return 1.0;
    }
    let sum: f64 = reports.iter().map(|r| r.efficiency_sum).sum();
    sum / flows as f64
}

/// Per-run drop ratios, in report order.
pub fn drop_ratios(reports: &[MetricsReport]) -> Vec<f64> {
    reports.iter().map(|r| r.drop_ratio).collect()
}

/// Empirical distribution with percentile queries (nearest-rank).
#[derive(Debug, Clone)]
pub struct EmpiricalCdf {
    sorted: Vec<f64>,
}

impl EmpiricalCdf {
    pub fn new(mut values: Vec<f64>) -> EmpiricalCdf {
        values.sort_by(|a, b| a.total_cmp(b));
        EmpiricalCdf { sorted: values }
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    /// F(x): fraction of samples ≤ x.
    pub fn fraction_at(&self, x: f64) -> f64 {
        if self.sorted.is_empty() {
            return 0.0;
        }
        let below = self.sorted.partition_point(|v| *v <= x);
        below as f64 / self.sorted.len() as f64
    }

    /// Nearest-rank percentile: smallest sample v with F(v) ≥ p, for
    /// p ∈ (0, 1]; p = 0 returns the minimum. Panics on an empty CDF.
    pub fn percentile(&self, p: f64) -> f64 {
        assert!(!self.sorted.is_empty(), "percentile of an empty CDF");
        assert!((0.0..=1.0).contains(&p), "percentile rank out of range");
        let n = self.sorted.len();
        let rank = ((p * n as f64).ceil() as usize).clamp(1, n);
        self.sorted[rank - 1]
    }

    pub fn min(&self) -> f64 {
        self.percentile(0.0)
    }

    pub fn max(&self) -> f64 {
        self.percentile(1.0)
    }

    pub fn values(&self) -> &[f64] {
        &self.sorted
    }
}

/// One summary CSV line per simulation run.
#[derive(Debug, Clone)]
pub struct SummaryRow {
    pub experiment: String,
    pub sweep_axis: String,
    pub sweep_value: f64,
    pub policy: PolicyKind,
    pub run_index: u32,
    pub seed: u64,
    pub load_mbps: f64,
    pub n_aps: u32,
    pub n_stations: u32,
    pub satisfaction: f64,
    pub efficiency: f64,
    pub drop_ratio: f64,
    pub offered_mbits: f64,
    pub served_mbits: f64,
}

impl SummaryRow {
    pub fn from_report(
        report: &MetricsReport,
        experiment: &str,
        sweep_axis: &str,
        sweep_value: f64,
        run_index: u32,
        load_mbps: f64,
    ) -> SummaryRow {
        SummaryRow {
            experiment: experiment.to_string(),
            sweep_axis: sweep_axis.to_string(),
            sweep_value,
            policy: report.policy,
            run_index,
            seed: report.seed,
            load_mbps,
            n_aps: report.n_aps,
            n_stations: report.n_stations,
            satisfaction: report.avg_satisfaction,
            efficiency: report.efficiency_mean,
            drop_ratio: report.drop_ratio,
            offered_mbits: report.offered_mbits,
            served_mbits: report.served_mbits,
        }
    }
}

/// One per-AP CSV line; occupancy split into the three band columns.
#[derive(Debug, Clone)]
pub struct ApRow {
    pub experiment: String,
    pub sweep_value: f64,
    pub policy: PolicyKind,
    pub run_index: u32,
    pub seed: u64,
    pub ap: u32,
    pub satisfaction: f64,
    pub served_mbps: f64,
    pub occupancy_2_4: Option<f64>,
    pub occupancy_5: Option<f64>,
    pub occupancy_6: Option<f64>,
}

impl ApRow {
    pub fn from_report(
        report: &MetricsReport,
        experiment: &str,
        sweep_value: f64,
        run_index: u32,
    ) -> Vec<ApRow> {
        report
            .aps
            .iter()
            .map(|ap| {
                let occ = |band: Band| {
                    ap.interfaces
                        .iter()
                        .find(|i| i.band == band)
                        .map(|i| i.occupancy)
                };
                ApRow {
                    experiment: experiment.to_string(),
                    sweep_value,
                    policy: report.policy,
                    run_index,
                    seed: report.seed,
                    ap: ap.ap,
                    satisfaction: ap.satisfaction,
                    served_mbps: ap.served_mbps,
                    occupancy_2_4: occ(Band::Ghz2_4),
                    occupancy_5: occ(Band::Ghz5),
                    occupancy_6: occ(Band::Ghz6),
                }
            })
            .collect()
    }
}

/// Percentile summary of the drop-ratio distribution at one sweep point.
#[derive(Debug, Clone)]
pub struct DropCdfRow {
    pub experiment: String,
    pub sweep_axis: String,
    pub sweep_value: f64,
    pub policy: PolicyKind,
    pub n_runs: u32,
    pub p25: f64,
    pub p50: f64,
    pub p75: f64,
    pub p90: f64,
    pub p95: f64,
    pub max: f64,
}

impl DropCdfRow {
    pub fn from_reports(
        reports: &[MetricsReport],
        experiment: &str,
        sweep_axis: &str,
        sweep_value: f64,
        policy: PolicyKind,
    ) -> DropCdfRow {
        let cdf = EmpiricalCdf::new(drop_ratios(reports));
        DropCdfRow {
            experiment: experiment.to_string(),
            sweep_axis: sweep_axis.to_string(),
            sweep_value,
            policy,
            n_runs: reports.len() as u32,
            p25: cdf.percentile(0.25),
            p50: cdf.percentile(0.50),
            p75: cdf.percentile(0.75),
            p90: cdf.percentile(0.90),
            p95: cdf.percentile(0.95),
            max: cdf.max(),
        }
    }
}

/// Fixed-width float formatting so repeated runs emit identical bytes.
fn fmt(x: f64) -> String {
    format!("{x:.6}")
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt).unwrap_or_default()
}

pub fn write_summary_csv<W: Write>(out: W, rows: &[SummaryRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "experiment",
        "sweep_axis",
        "sweep_value",
        "policy",
        "run_index",
        "seed",
        "load_mbps",
        "n_aps",
        "n_stations",
        "satisfaction",
        "efficiency",
        "drop_ratio",
        "offered_mbits",
        "served_mbits",
    ])?;
    for r in rows {
        w.write_record([
            r.experiment.clone(),
            r.sweep_axis.clone(),
            fmt(r.sweep_value),
            r.policy.to_string(),
            r.run_index.to_string(),
            r.seed.to_string(),
            fmt(r.load_mbps),
            r.n_aps.to_string(),
            r.n_stations.to_string(),
            fmt(r.satisfaction),
            fmt(r.efficiency),
            fmt(r.drop_ratio),
            fmt(r.offered_mbits),
            fmt(r.served_mbits),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_per_ap_csv<W: Write>(out: W, rows: &[ApRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "experiment",
        "sweep_value",
        "policy",
        "run_index",
        "seed",
        "ap",
        "satisfaction",
        "served_mbps",
        "occupancy_2_4",
        "occupancy_5",
        "occupancy_6",
    ])?;
    for r in rows {
        w.write_record([
            r.experiment.clone(),
            fmt(r.sweep_value),
            r.policy.to_string(),
            r.run_index.to_string(),
            r.seed.to_string(),
            r.ap.to_string(),
            fmt(r.satisfaction),
            fmt(r.served_mbps),
            fmt_opt(r.occupancy_2_4),
            fmt_opt(r.occupancy_5),
            fmt_opt(r.occupancy_6),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_drop_cdf_csv<W: Write>(out: W, rows: &[DropCdfRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "experiment",
        "sweep_axis",
        "sweep_value",
        "policy",
        "n_runs",
        "p25",
        "p50",
        "p75",
        "p90",
        "p95",
        "max",
    ])?;
    for r in rows {
        w.write_record([
            r.experiment.clone(),
            r.sweep_axis.clone(),
            fmt(r.sweep_value),
            r.policy.to_string(),
            r.n_runs.to_string(),
            fmt(r.p25),
            fmt(r.p50),
            fmt(r.p75),
            fmt(r.p90),
            fmt(r.p95),
            fmt(r.max),
        ])?;
    }
    w.flush()?;
    Ok(())
}
