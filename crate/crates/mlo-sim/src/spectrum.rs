//! Spectrum model: bands, channels, path loss, link budget and MCS/rate
//! selection for tri-band multi-link devices.
//!
//! Distances are metres, frequencies GHz (channel centers are kept in MHz
//! internally), powers dBm, bandwidths MHz and rates Mbps.

use serde::{Deserialize, Serialize};

use crate::error::{Result, SimError};

/// Operating band of an interface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Band {
    #[serde(rename = "2.4")]
    Ghz2_4,
    #[serde(rename = "5")]
    Ghz5,
    #[serde(rename = "6")]
    Ghz6,
}

impl Band {
    pub const ALL: [Band; 3] = [Band::Ghz2_4, Band::Ghz5, Band::Ghz6];

    /// Channels available per band as (channel number, width in MHz).
    ///
    /// 2.4 GHz uses the non-overlapping 20 MHz set, 5 GHz two 40 MHz
    /// channels plus an 80 MHz one, and 6 GHz two 80 MHz channels plus a
    /// 160 MHz one.
    pub fn channel_set(self) -> &'static [(u16, u16)] {
        match self {
            Band::Ghz2_4 => &[(1, 20), (6, 20), (11, 20)],
            Band::Ghz5 => &[(38, 40), (46, 40), (58, 80)],
            Band::Ghz6 => &[(55, 80), (71, 80), (15, 160)],
        }
    }

    /// Center frequency in MHz for a channel number of this band.
    ///
    /// 2.4 GHz follows 2407 + 5n, 5 GHz 5000 + 5n and 6 GHz 5950 + 5n.
    pub fn center_freq_mhz(self, channel: u16) -> f64 {
        let n = f64::from(channel);
        match self {
            Band::Ghz2_4 => 2407.0 + 5.0 * n,
            Band::Ghz5 => 5000.0 + 5.0 * n,
            Band::Ghz6 => 5950.0 + 5.0 * n,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Band::Ghz2_4 => "2.4",
            Band::Ghz5 => "5",
            Band::Ghz6 => "6",
        }
    }
}

/// A concrete channel: band, channel number and width.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Channel {
    pub band: Band,
    pub number: u16,
    pub width_mhz: u16,
}

impl Channel {
    /// Looks the channel up in the band's channel set; the width is implied
    /// by the table.
    pub fn new(band: Band, number: u16) -> Result<Channel> {
        band.channel_set()
            .iter()
            .find(|(n, _)| *n == number)
            .map(|&(number, width_mhz)| Channel { band, number, width_mhz })
            .ok_or_else(|| {
                SimError::InvalidArgument(format!(
                    "channel {number} is not in the {} GHz set",
                    band.label()
                ))
            })
    }

    pub fn center_mhz(&self) -> f64 {
        self.band.center_freq_mhz(self.number)
    }

    pub fn center_ghz(&self) -> f64 {
        self.center_mhz() / 1000.0
    }

    /// Occupied frequency interval in MHz.
    pub fn interval_mhz(&self) -> (f64, f64) {
        let half = f64::from(self.width_mhz) / 2.0;
        (self.center_mhz() - half, self.center_mhz() + half)
    }
}

/// True when the open frequency intervals of the two channels intersect.
/// Channels that merely touch at an edge do not overlap.
pub fn channels_overlap(a: &Channel, b: &Channel) -> bool {
    let (a_lo, a_hi) = a.interval_mhz();
    let (b_lo, b_hi) = b.interval_mhz();
    a_lo < b_hi && b_lo < a_hi
}

/// Link budget inputs shared by every link computation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct LinkBudgetParams {
    pub tx_power_ap_dbm: f64,
    pub tx_power_sta_dbm: f64,
    /// Per-antenna gain, applied at both ends of a link.
    pub antenna_gain_db: f64,
    pub noise_figure_db: f64,
    pub cca_threshold_dbm: f64,
    pub breakpoint_m: f64,
    /// Number of walls traversed by every link.
    pub walls: u32,
}

impl Default for LinkBudgetParams {
    fn default() -> Self {
        LinkBudgetParams {
            tx_power_ap_dbm: 20.0,
            tx_power_sta_dbm: 15.0,
            antenna_gain_db: 0.0,
            noise_figure_db: 7.0,
            cca_threshold_dbm: -82.0,
            breakpoint_m: 5.0,
            walls: 4,
        }
    }
}

impl LinkBudgetParams {
    /// Combined antenna gain for one link (transmit plus receive antenna).
    pub fn combined_gains_db(&self) -> f64 {
        2.0 * self.antenna_gain_db
    }
}

/// Enterprise indoor path loss with a 5 m breakpoint and a fixed per-wall
/// penalty of 7 dB:
///
/// `PL(d) = 40.05 + 20 log10(fc/2.4) + 20 log10(min(d, bp))
///          + [d > bp] 35 log10(d/bp) + 7 W`
pub fn path_loss_db(fc_ghz: f64, distance_m: f64, params: &LinkBudgetParams) -> Result<f64> {
    if !(fc_ghz > 0.0) {
        return Err(SimError::InvalidArgument(format!(
            "carrier frequency must be positive, got {fc_ghz}"
        )));
    }
    if !(distance_m > 0.0) {
        return Err(SimError::InvalidArgument(format!(
            "distance must be positive, got {distance_m}"
        )));
    }
    let bp = params.breakpoint_m;
    let mut pl = 40.05
        + 20.0 * (fc_ghz / 2.4).log10()
        + 20.0 * distance_m.min(bp).log10()
        + 7.0 * f64::from(params.walls);
    if distance_m > bp {
        pl += 35.0 * (distance_m / bp).log10();
    }
    Ok(pl)
}

/// Received power: transmit power plus gains minus path loss.
pub fn rx_power_dbm(tx_power_dbm: f64, path_loss_db: f64, gains_db: f64) -> f64 {
    tx_power_dbm + gains_db - path_loss_db
}

/// Thermal noise floor over `width_mhz` plus the receiver noise figure.
pub fn noise_floor_dbm(width_mhz: f64, noise_figure_db: f64) -> f64 {
    assert!(width_mhz > 0.0, "channel width must be positive");
    -174.0 + 10.0 * (width_mhz * 1e6).log10() + noise_figure_db
}

/// Signal-to-noise ratio in dB.
pub fn snr_db(rx_power_dbm: f64, noise_floor_dbm: f64) -> f64 {
    rx_power_dbm - noise_floor_dbm
}

/// One modulation and coding scheme entry.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McsEntry {
    pub index: u8,
    /// Coded bits per subcarrier (modulation order).
    pub bits: u8,
    pub coding_rate: f64,
    pub min_snr_db: f64,
}

impl McsEntry {
    pub fn modulation(&self) -> &'static str {
        match self.bits {
            1 => "BPSK",
            2 => "QPSK",
            4 => "16-QAM",
            6 => "64-QAM",
            8 => "256-QAM",
            10 => "1024-QAM",
            _ => "?",
        }
    }
}

/// Modulation order and coding rate of MCS 0..=11.
const MCS_LADDER: [(u8, f64); 12] = [
    (1, 1.0 / 2.0),
    (2, 1.0 / 2.0),
    (2, 3.0 / 4.0),
    (4, 1.0 / 2.0),
    (4, 3.0 / 4.0),
    (6, 2.0 / 3.0),
    (6, 3.0 / 4.0),
    (6, 5.0 / 6.0),
    (8, 3.0 / 4.0),
    (8, 5.0 / 6.0),
    (10, 3.0 / 4.0),
    (10, 5.0 / 6.0),
];

/// Minimum receiver input level per MCS for a 20 MHz channel, dBm.
const SENSITIVITY_DBM: [f64; 12] = [
    -82.0, -79.0, -77.0, -74.0, -70.0, -66.0, -65.0, -64.0, -59.0, -57.0, -54.0, -52.0,
];

/// SNR-indexed MCS lookup table with monotone thresholds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McsTable {
    pub entries: Vec<McsEntry>,
}

impl McsTable {
    pub fn new(entries: Vec<McsEntry>) -> Result<McsTable> {
        if entries.is_empty() {
            return Err(SimError::InvalidArgument("MCS table is empty".into()));
        }
        for pair in entries.windows(2) {
            if pair[1].min_snr_db <= pair[0].min_snr_db {
                return Err(SimError::InvalidArgument(format!(
                    "MCS thresholds must be strictly increasing ({} then {})",
                    pair[0].min_snr_db, pair[1].min_snr_db
                )));
            }
            if pair[1].index <= pair[0].index {
                return Err(SimError::InvalidArgument(
                    "MCS indices must be strictly increasing".into(),
                ));
            }
        }
        Ok(McsTable { entries })
    }

    /// Ladder anchored so that 11 dB of SNR selects MCS 11 (1024-QAM 5/6),
    /// stepping 2 dB per index down to -11 dB for MCS 0.
    pub fn linear_thresholds() -> McsTable {
        let entries = MCS_LADDER
            .iter()
            .enumerate()
            .map(|(i, &(bits, coding_rate))| McsEntry {
                index: i as u8,
                bits,
                coding_rate,
                min_snr_db: -11.0 + 2.0 * i as f64,
            })
            .collect();
        McsTable::new(entries).expect("static table is valid")
    }

    /// Thresholds derived from the standard 20 MHz minimum receiver input
    /// levels, referenced to the default noise floor (7 dB noise figure).
    pub fn sensitivity() -> McsTable {
        let floor = noise_floor_dbm(20.0, 7.0);
        let entries = MCS_LADDER
            .iter()
            .enumerate()
            .map(|(i, &(bits, coding_rate))| McsEntry {
                index: i as u8,
                bits,
                coding_rate,
                min_snr_db: SENSITIVITY_DBM[i] - floor,
            })
            .collect();
        McsTable::new(entries).expect("static table is valid")
    }

    /// Highest entry whose threshold is satisfied, or `None` below the
    /// lowest one.
    pub fn select(&self, snr_db: f64) -> Option<&McsEntry> {
        self.entries
            .iter()
            .rev()
            .find(|entry| entry.min_snr_db <= snr_db)
    }
}

/// Data subcarriers per channel width.
fn data_subcarriers(width_mhz: u16) -> Result<f64> {
    match width_mhz {
        20 => Ok(234.0),
        40 => Ok(468.0),
        80 => Ok(980.0),
        160 => Ok(1960.0),
        other => Err(SimError::InvalidArgument(format!(
            "unsupported channel width {other} MHz"
        ))),
    }
}

/// PHY data rate in Mbps: `n_ss * N_sd * bits * coding / (12.8 us + GI)`.
///
/// Full precision is returned; round with [`round_rate_mbps`] for display.
pub fn data_rate_mbps(
    mcs: &McsEntry,
    width_mhz: u16,
    n_ss: u8,
    guard_interval_us: f64,
) -> Result<f64> {
    if n_ss == 0 {
        return Err(SimError::InvalidArgument("need at least one spatial stream".into()));
    }
    if !(guard_interval_us > 0.0) {
        return Err(SimError::InvalidArgument("guard interval must be positive".into()));
    }
    let n_sd = data_subcarriers(width_mhz)?;
    let symbol_us = 12.8 + guard_interval_us;
    Ok(f64::from(n_ss) * n_sd * f64::from(mcs.bits) * mcs.coding_rate / symbol_us)
}

/// Rounds a rate to 0.1 Mbps for reporting.
pub fn round_rate_mbps(rate_mbps: f64) -> f64 {
    (rate_mbps * 10.0).round() / 10.0
}

/// A selected PHY configuration for one link.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhyRate {
    pub mcs_index: u8,
    pub width_mhz: u16,
    pub n_ss: u8,
    pub guard_interval_us: f64,
    pub rate_mbps: f64,
}

impl PhyRate {
    pub fn new(mcs: &McsEntry, width_mhz: u16, n_ss: u8, guard_interval_us: f64) -> Result<PhyRate> {
        Ok(PhyRate {
            mcs_index: mcs.index,
            width_mhz,
            n_ss,
            guard_interval_us,
            rate_mbps: data_rate_mbps(mcs, width_mhz, n_ss, guard_interval_us)?,
        })
    }
}

/// Default guard interval in microseconds.
pub const GUARD_INTERVAL_US: f64 = 3.2;

/// Default number of single-user spatial streams.
pub const SPATIAL_STREAMS: u8 = 2;
