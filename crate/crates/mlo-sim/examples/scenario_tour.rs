//! Generates a random multi-AP deployment, summarises who can hear whom,
//! and round-trips the scenario through a JSON file so a later run can
//! replay the exact same topology.
//!
//! Run with `cargo run --example scenario_tour`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use mlo_sim::scenario::{generate, Scenario, ScenarioSpec, StationCount};
use mlo_sim::spectrum::{LinkBudgetParams, McsTable};

fn main() -> mlo_sim::Result<()> {
    let spec = ScenarioSpec::random((45.0, 45.0), 10, StationCount::Uniform([15, 25]));
    let params = LinkBudgetParams::default();
    let mcs = McsTable::linear_thresholds();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);

    let scenario = generate(&spec, &params, &mcs, &mut rng)?;
    println!(
        "generated {} APs and {} stations on {:.0} m x {:.0} m",
        scenario.aps.len(),
        scenario.stations.len(),
        scenario.area_m.0,
        scenario.area_m.1
    );

    println!("\nAP positions and channels:");
    for ap in &scenario.aps {
        let channels: Vec<String> = ap
            .interfaces
            .iter()
            .map(|i| format!("{}/{}", i.channel.band.label(), i.channel.number))
            .collect();
        println!(
            "  AP {:>2} at ({:>5.1}, {:>5.1})  {}",
            ap.id, ap.position.x, ap.position.y, channels.join("  ")
        );
    }

    let mut by_link_count = [0usize; 4];
    let mut rate_sum = 0.0;
    let mut rate_n = 0usize;
    for station in &scenario.stations {
        by_link_count[station.links.len().min(3)] += 1;
        for link in &station.links {
            rate_sum += link.rate_mbps;
            rate_n += 1;
        }
    }
    println!("\nstations by enabled link count:");
    for (count, n) in by_link_count.iter().enumerate().skip(1) {
        println!("  {count} links: {n} stations");
    }
    println!("mean enabled link rate: {:.1} Mbps", rate_sum / rate_n as f64);

    let path = std::env::temp_dir().join("mlo-sim-scenario-tour.json");
    scenario.save(&path)?;
    let reloaded = Scenario::load(&path)?;
    assert_eq!(reloaded, scenario, "file round-trip must be lossless");
    println!("\nscenario saved to {} and reloaded identically", path.display());
    Ok(())
}
