//! On/off Markov traffic: exponential silence and activity periods with a
//! constant-bit-rate demand while active.

use rand::Rng;
use rand_distr::{Distribution, Exp};
use serde::{Deserialize, Serialize};

use crate::error::{Result, SimError};

/// Per-flow bandwidth rule.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BandwidthRule {
    /// Every flow demands the same rate, Mbps.
    Fixed(f64),
    /// Each flow draws its rate uniformly from `[low, high)` Mbps.
    Uniform([f64; 2]),
}

impl BandwidthRule {
    /// Expected per-flow demand, used for reporting.
    pub fn mean_mbps(&self) -> f64 {
        match *self {
            BandwidthRule::Fixed(mbps) => mbps,
            BandwidthRule::Uniform([lo, hi]) => 0.5 * (lo + hi),
        }
    }
}

/// Traffic process parameters. Stations start silent, so the first flow
/// arrives after a fresh off-period.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrafficSpec {
    pub mean_on_s: f64,
    pub mean_off_s: f64,
    pub bandwidth: BandwidthRule,
    /// Fixed packet error rate applied as an effective-rate derating.
    pub per: f64,
}

impl Default for TrafficSpec {
    fn default() -> Self {
        TrafficSpec {
            mean_on_s: 1.0,
            mean_off_s: 3.0,
            bandwidth: BandwidthRule::Fixed(1.0),
            per: 0.1,
        }
    }
}

/// One silence/activity cycle of a station.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OnOffCycle {
    pub off_wait_s: f64,
    pub on_duration_s: f64,
    pub bandwidth_mbps: f64,
}

/// Samples the next cycle: the wait before the flow starts, how long it
/// lasts and what rate it demands.
pub fn next_on_off_cycle(spec: &TrafficSpec, rng: &mut impl Rng) -> OnOffCycle {
    let off = Exp::new(1.0 / spec.mean_off_s).expect("positive mean");
    let on = Exp::new(1.0 / spec.mean_on_s).expect("positive mean");
    let off_wait_s = off.sample(rng);
    let on_duration_s = on.sample(rng);
    let bandwidth_mbps = match spec.bandwidth {
        BandwidthRule::Fixed(mbps) => mbps,
        BandwidthRule::Uniform([lo, hi]) => rng.gen_range(lo..hi),
    };
    OnOffCycle {
        off_wait_s,
        on_duration_s,
        bandwidth_mbps,
    }
}

/// Airtime fraction needed to carry `demand_mbps` on a link of the given
/// PHY rate once the packet error rate is discounted. Deliberately not
/// capped at 1: demands beyond channel capacity stay visible to the
/// contention solver.
pub fn required_airtime(demand_mbps: f64, rate_mbps: f64, per: f64) -> Result<f64> {
    if demand_mbps < 0.0 {
        return Err(SimError::InvalidArgument(format!(
            "demand must be non-negative, got {demand_mbps}"
        )));
    }
    if demand_mbps == 0.0 {
        return Ok(0.0);
    }
    if !(rate_mbps > 0.0) {
        return Err(SimError::ZeroRateLink);
    }
    if !(0.0..1.0).contains(&per) {
        return Err(SimError::InvalidArgument(format!(
            "packet error rate must be in [0, 1), got {per}"
        )));
    }
    Ok(demand_mbps / (rate_mbps * (1.0 - per)))
}

/// The share of a flow carried by one interface.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SubFlow {
    /// Index into the station's enabled links.
    pub link: usize,
    pub demand_mbps: f64,
    pub rate_mbps: f64,
    pub required_airtime: f64,
}

/// A station's active flow, split across its enabled links. The split is
/// decided on arrival and never rebalanced.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Flow {
    pub station: u32,
    pub demand_mbps: f64,
    pub start_s: f64,
    pub duration_s: f64,
    pub subflows: Vec<SubFlow>,
}
