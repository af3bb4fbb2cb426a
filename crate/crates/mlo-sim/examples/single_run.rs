//! Runs one complete simulation on a random deployment and walks through
//! the report: network satisfaction, allocation efficiency, drop ratio
//! and the per-AP band occupancies behind them.
//!
//! Run with `cargo run --example single_run`.

use mlo_sim::engine::{run, ScenarioSource, SimConfig};
use mlo_sim::scenario::{ScenarioSpec, StationCount};
use mlo_sim::traffic::BandwidthRule;
use mlo_sim::PolicyKind;

fn main() -> mlo_sim::Result<()> {
    let spec = ScenarioSpec::random((45.0, 45.0), 10, StationCount::Uniform([15, 25]));
    let mut config = SimConfig::new(ScenarioSource::Generate(spec), PolicyKind::Slci, 42);
    config.duration_s = 60.0;
    config.warmup_s = 5.0;
    // Demanding flows, so the shared media actually fill up.
    config.traffic.bandwidth = BandwidthRule::Uniform([40.0, 320.0]);

    let report = run(&config)?;

    println!(
        "{} over {:.0} s ({:.0} s warmup), seed {}",
        report.policy, report.duration_s, report.warmup_s, report.seed
    );
    println!(
        "{} APs, {} stations; {} flows arrived, {} completed, {} still active",
        report.n_aps, report.n_stations, report.arrivals, report.departures,
        report.active_at_horizon
    );
    println!("\nnetwork metrics:");
    println!("  mean AP satisfaction  {:.4}", report.avg_satisfaction);
    println!("  allocation efficiency {:.4}", report.efficiency_mean);
    println!("  drop ratio            {:.4}", report.drop_ratio);
    println!(
        "  traffic               {:.1} of {:.1} Mbit served",
        report.served_mbits, report.offered_mbits
    );

    println!("\nper-AP breakdown:");
    println!(
        "{:>4} {:>13} {:>12} {:>22}",
        "AP", "satisfaction", "Mbps served", "occupancy 2.4/5/6"
    );
    for ap in &report.aps {
        let occ: Vec<String> = ap.interfaces.iter().map(|i| format!("{:.2}", i.occupancy)).collect();
        println!(
            "{:>4} {:>13.4} {:>12.1} {:>22}",
            ap.ap,
            ap.satisfaction,
            ap.served_mbps,
            occ.join(" / ")
        );
    }

    let busiest = report
        .aps
        .iter()
        .flat_map(|ap| ap.interfaces.iter().map(move |i| (ap.ap, i)))
        .max_by(|a, b| a.1.occupancy.total_cmp(&b.1.occupancy))
        .expect("at least one interface");
    println!(
        "\nbusiest medium: AP {} on {} GHz at {:.1}% occupancy",
        busiest.0,
        busiest.1.band.label(),
        100.0 * busiest.1.occupancy
    );
    Ok(())
}
