//! Runs a scaled-down load sweep comparing all three allocation policies
//! and prints the satisfaction curve per policy, plus where the output
//! bundle (CSV files and manifest) landed.
//!
//! The full-size presets are available from the command line, e.g.
//! `mlo-sim --experiment random-load`. Run this example with
//! `cargo run --release --example experiment_sweep`.

use mlo_sim::config::SweepAxis;
use mlo_sim::experiment::{run_experiment, ExperimentPlan, ExperimentPreset};
use mlo_sim::metrics::SATISFACTION_THRESHOLD;

fn main() -> mlo_sim::Result<()> {
    // Start from the full preset and shrink it to a quick demo: fewer
    // repetitions, shorter runs, smaller deployments, and per-flow loads
    // pushed high enough that the shared media saturate.
    let mut plan = ExperimentPlan::preset(ExperimentPreset::RandomLoad);
    plan.name = "random-load-demo".into();
    plan.values = vec![20.0, 60.0, 120.0, 240.0];
    plan.runs_per_point = 6;
    plan.base.sim.duration_s = 20.0;
    plan.base.scenario.n_aps = 6;

    let out_dir = std::env::temp_dir().join("mlo-sim-sweep-demo");
    println!(
        "running {}: {} cells x {} runs each...",
        plan.name,
        plan.values.len() * plan.policies.len(),
        plan.runs_per_point
    );
    let result = run_experiment(&plan, 1, 4, &out_dir)?;
    assert!(result.failures.is_empty(), "demo runs should all succeed");

    println!("\nmean satisfaction by per-flow load (sweep axis: {}):", plan.sweep.name());
    print!("{:>12}", "load [Mbps]");
    for &value in &plan.values {
        print!(" {value:>8.0}");
    }
    println!();
    for &policy in &plan.policies {
        print!("{:>12}", policy.name());
        for &value in &plan.values {
            let reports = result.cell_reports(value, policy);
            let mean: f64 = reports.iter().map(|r| r.avg_satisfaction).sum::<f64>()
                / reports.len() as f64;
            print!(" {mean:>8.3}");
        }
        println!();
    }

    println!("\nfraction of runs with satisfaction >= {SATISFACTION_THRESHOLD}:");
    for &policy in &plan.policies {
        let value = *plan.values.last().expect("values are non-empty");
        let reports = result.cell_reports(value, policy);
        let satisfied = reports
            .iter()
            .filter(|r| r.avg_satisfaction >= SATISFACTION_THRESHOLD)
            .count();
        println!(
            "  {:<10} {:>2}/{} at {value:.0} Mbps",
            policy.name(),
            satisfied,
            reports.len()
        );
    }

    assert_eq!(plan.sweep, SweepAxis::LoadMbps);
    println!("\nCSV bundle written to {}", out_dir.display());
    for name in ["summary.csv", "per_ap.csv", "drop_cdf.csv", "manifest.json"] {
        let len = std::fs::metadata(out_dir.join(name))?.len();
        println!("  {name:<13} {len:>7} bytes");
    }
    Ok(())
}
