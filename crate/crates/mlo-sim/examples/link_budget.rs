//! Walks the physical layer end to end: path loss, received power, SNR,
//! MCS selection and the resulting PHY rate for each band as a station
//! moves away from its AP.
//!
//! Run with `cargo run --example link_budget`.

use mlo_sim::spectrum::{
    data_rate_mbps, noise_floor_dbm, path_loss_db, rx_power_dbm, snr_db, Band, Channel,
    LinkBudgetParams, McsTable, GUARD_INTERVAL_US, SPATIAL_STREAMS,
};

fn main() -> mlo_sim::Result<()> {
    let params = LinkBudgetParams::default();
    let mcs = McsTable::linear_thresholds();
    let channels = [
        Channel::new(Band::Ghz2_4, 1)?,
        Channel::new(Band::Ghz5, 38)?,
        Channel::new(Band::Ghz6, 55)?,
    ];

    println!(
        "link budget: tx {} dBm, {} walls, noise figure {} dB, CCA {} dBm",
        params.tx_power_ap_dbm, params.walls, params.noise_figure_db, params.cca_threshold_dbm
    );

    for channel in channels {
        let noise = noise_floor_dbm(f64::from(channel.width_mhz), params.noise_figure_db);
        println!(
            "\n{} GHz channel {} ({} MHz wide, center {:.3} GHz, noise floor {:.2} dBm)",
            channel.band.label(),
            channel.number,
            channel.width_mhz,
            channel.center_ghz(),
            noise
        );
        println!(
            "{:>6} {:>10} {:>9} {:>8} {:>5} {:>12}",
            "d [m]", "PL [dB]", "rx [dBm]", "SNR", "MCS", "rate [Mbps]"
        );
        for distance in [1.0, 2.0, 5.0, 8.0, 12.0, 20.0, 35.0] {
            let pl = path_loss_db(channel.center_ghz(), distance, &params)?;
            let rx = rx_power_dbm(params.tx_power_ap_dbm, pl, params.combined_gains_db());
            if rx < params.cca_threshold_dbm {
                println!("{distance:>6} {pl:>10.2} {rx:>9.2}   below CCA, link disabled");
                continue;
            }
            let snr = snr_db(rx, noise);
            match mcs.select(snr) {
                Some(entry) => {
                    let rate = data_rate_mbps(
                        entry,
                        channel.width_mhz,
                        SPATIAL_STREAMS,
                        GUARD_INTERVAL_US,
                    )?;
                    println!(
                        "{distance:>6} {pl:>10.2} {rx:>9.2} {snr:>8.2} {:>5} {rate:>12.1}",
                        entry.index
                    );
                }
                None => println!("{distance:>6} {pl:>10.2} {rx:>9.2} {snr:>8.2}   no usable MCS"),
            }
        }
    }
    Ok(())
}
