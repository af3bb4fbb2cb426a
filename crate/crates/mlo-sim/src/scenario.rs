//! Deployment generation: AP and station placement, per-station link
//! budgets and the serializable scenario snapshot.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Result, SimError};
use crate::spectrum::{
    self, Band, Channel, LinkBudgetParams, McsTable, GUARD_INTERVAL_US, SPATIAL_STREAMS,
};

/// Planar position in metres.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn distance(&self, other: &Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// One radio of an AP multi-link device.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interface {
    pub channel: Channel,
    pub tx_power_dbm: f64,
}

/// An AP multi-link device with one interface per band, in band order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApMld {
    pub id: u32,
    pub position: Point,
    pub interfaces: Vec<Interface>,
}

/// A usable downlink of a station: which AP interface serves it and at
/// what rate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinkInfo {
    /// Index into the serving AP's interface list.
    pub ap_interface: usize,
    pub rx_power_dbm: f64,
    pub snr_db: f64,
    pub mcs_index: u8,
    pub rate_mbps: f64,
}

/// A station multi-link device, associated with exactly one AP.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StationMld {
    pub id: u32,
    pub ap: u32,
    pub position: Point,
    /// Enabled links only, in band order. Never empty.
    pub links: Vec<LinkInfo>,
    /// Index into `links`; used by single-link operation.
    pub attached: usize,
}

/// A complete generated deployment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub area_m: (f64, f64),
    pub aps: Vec<ApMld>,
    pub stations: Vec<StationMld>,
}

/// Envelope for scenario files, so the layout can evolve.
#[derive(Debug, Serialize, Deserialize)]
struct ScenarioFile {
    schema_version: u32,
    scenario: Scenario,
}

const SCENARIO_SCHEMA_VERSION: u32 = 1;

impl Scenario {
    pub fn save(&self, path: &std::path::Path) -> Result<()> {
        let file = ScenarioFile {
            schema_version: SCENARIO_SCHEMA_VERSION,
            scenario: self.clone(),
        };
        let text = serde_json::to_string_pretty(&file)
            .map_err(|e| SimError::Experiment(format!("scenario serialization: {e}")))?;
        std::fs::write(path, text)?;
        Ok(())
    }

    pub fn load(path: &std::path::Path) -> Result<Scenario> {
        let text = std::fs::read_to_string(path)?;
        let file: ScenarioFile = serde_json::from_str(&text).map_err(|e| SimError::Parse {
            path: path.display().to_string(),
            detail: e.to_string(),
        })?;
        if file.schema_version != SCENARIO_SCHEMA_VERSION {
            return Err(SimError::Parse {
                path: path.display().to_string(),
                detail: format!("unsupported scenario schema {}", file.schema_version),
            });
        }
        Ok(file.scenario)
    }

    /// Canonical textual form, used for replay files and determinism checks.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario serializes")
    }
}

/// How many stations each AP serves.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StationCount {
    Fixed(u32),
    Uniform([u32; 2]),
}

impl StationCount {
    fn sample(&self, rng: &mut impl Rng) -> u32 {
        match *self {
            StationCount::Fixed(n) => n,
            StationCount::Uniform([lo, hi]) => rng.gen_range(lo..=hi),
        }
    }
}

/// Deployment topology.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Topology {
    /// APs drawn uniformly over the area, rejecting draws with any inter-AP
    /// distance below the minimum; each AP picks channels independently.
    Random,
    /// Three APs on a line with a fixed spacing, all using the same
    /// per-band channels. The classic flow-in-the-middle layout.
    Inline3 {
        spacing_m: f64,
        channels: [Channel; 3],
    },
}

/// Everything needed to draw a deployment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioSpec {
    pub topology: Topology,
    pub area_m: (f64, f64),
    pub n_aps: u32,
    pub stations_per_ap: StationCount,
    pub min_inter_ap_m: f64,
    /// Station placement ring around the serving AP, metres.
    pub station_distance_m: (f64, f64),
}

impl ScenarioSpec {
    pub fn random(area_m: (f64, f64), n_aps: u32, stations_per_ap: StationCount) -> ScenarioSpec {
        ScenarioSpec {
            topology: Topology::Random,
            area_m,
            n_aps,
            stations_per_ap,
            min_inter_ap_m: 5.0,
            station_distance_m: (1.0, 8.0),
        }
    }

    pub fn inline3(spacing_m: f64, stations_per_ap: StationCount) -> ScenarioSpec {
        let channels = default_inline_channels();
        // Leave a margin so station rings stay inside the nominal area.
        let area = (2.0 * spacing_m + 20.0, 20.0);
        ScenarioSpec {
            topology: Topology::Inline3 { spacing_m, channels },
            area_m: area,
            n_aps: 3,
            stations_per_ap,
            min_inter_ap_m: 5.0,
            station_distance_m: (1.0, 8.0),
        }
    }
}

pub fn default_inline_channels() -> [Channel; 3] {
    [
        Channel::new(Band::Ghz2_4, 1).expect("table channel"),
        Channel::new(Band::Ghz5, 38).expect("table channel"),
        Channel::new(Band::Ghz6, 55).expect("table channel"),
    ]
}

/// Budget on whole-scenario redraws before generation gives up.
pub const GENERATION_BUDGET: u64 = 100_000;

/// Computes the enabled links of a station at `position` served by `ap`:
/// every interface whose received power meets the CCA threshold
/// (inclusive) and whose SNR still maps to some MCS.
pub fn enabled_links(
    position: &Point,
    ap: &ApMld,
    params: &LinkBudgetParams,
    mcs: &McsTable,
) -> Result<Vec<LinkInfo>> {
    let distance = position.distance(&ap.position);
    let mut links = Vec::new();
    for (idx, iface) in ap.interfaces.iter().enumerate() {
        let pl = spectrum::path_loss_db(iface.channel.center_ghz(), distance, params)?;
        let rx = spectrum::rx_power_dbm(iface.tx_power_dbm, pl, params.combined_gains_db());
        if rx < params.cca_threshold_dbm {
            continue;
        }
        let noise = spectrum::noise_floor_dbm(f64::from(iface.channel.width_mhz), params.noise_figure_db);
        let snr = spectrum::snr_db(rx, noise);
        let Some(entry) = mcs.select(snr) else {
            continue;
        };
        let rate = spectrum::data_rate_mbps(entry, iface.channel.width_mhz, SPATIAL_STREAMS, GUARD_INTERVAL_US)?;
        links.push(LinkInfo {
            ap_interface: idx,
            rx_power_dbm: rx,
            snr_db: snr,
            mcs_index: entry.index,
            rate_mbps: rate,
        });
    }
    Ok(links)
}

/// Uniform random pick among the enabled links, for single-link stations.
pub fn attach_single_link(links: &[LinkInfo], rng: &mut impl Rng) -> Result<usize> {
    if links.is_empty() {
        return Err(SimError::NoEnabledLink { station: u32::MAX });
    }
    Ok(rng.gen_range(0..links.len()))
}

/// Draws a full scenario. The same spec and RNG state always produce the
/// same scenario, byte for byte once serialized.
pub fn generate(
    spec: &ScenarioSpec,
    params: &LinkBudgetParams,
    mcs: &McsTable,
    rng: &mut impl Rng,
) -> Result<Scenario> {
    let mut attempts: u64 = 0;
    'redraw: loop {
        if attempts >= GENERATION_BUDGET {
            return Err(SimError::GenerationFailure { attempts });
        }
        attempts += 1;

        let aps = match &spec.topology {
            Topology::Random => {
                let Some(aps) = draw_random_aps(spec, params, rng) else {
                    continue 'redraw;
                };
                aps
            }
            Topology::Inline3 { spacing_m, channels } => inline_aps(*spacing_m, channels, params),
        };

        let mut stations = Vec::new();
        let mut next_id = 0u32;
        for ap in &aps {
            let count = spec.stations_per_ap.sample(rng);
            for _ in 0..count {
                let (lo, hi) = spec.station_distance_m;
                let d = rng.gen_range(lo..hi);
                let theta = rng.gen_range(0.0..std::f64::consts::TAU);
                let position = Point {
                    x: ap.position.x + d * theta.cos(),
                    y: ap.position.y + d * theta.sin(),
                };
                let links = enabled_links(&position, ap, params, mcs)?;
                if links.is_empty() {
                    // A dead station invalidates the whole draw.
                    continue 'redraw;
                }
                let attached = attach_single_link(&links, rng)?;
                stations.push(StationMld {
                    id: next_id,
                    ap: ap.id,
                    position,
                    links,
                    attached,
                });
                next_id += 1;
            }
        }

        return Ok(Scenario {
            area_m: spec.area_m,
            aps,
            stations,
        });
    }
}

fn draw_random_aps(
    spec: &ScenarioSpec,
    params: &LinkBudgetParams,
    rng: &mut impl Rng,
) -> Option<Vec<ApMld>> {
    let (w, h) = spec.area_m;
    let mut positions = Vec::with_capacity(spec.n_aps as usize);
    for _ in 0..spec.n_aps {
        positions.push(Point {
            x: rng.gen_range(0.0..w),
            y: rng.gen_range(0.0..h),
        });
    }
    for i in 0..positions.len() {
        for j in i + 1..positions.len() {
            if positions[i].distance(&positions[j]) < spec.min_inter_ap_m {
                return None;
            }
        }
    }
    let aps = positions
        .into_iter()
        .enumerate()
        .map(|(id, position)| {
            let interfaces = Band::ALL
                .iter()
                .map(|&band| {
                    let set = band.channel_set();
                    let (number, _) = set[rng.gen_range(0..set.len())];
                    Interface {
                        channel: Channel::new(band, number).expect("table channel"),
                        tx_power_dbm: params.tx_power_ap_dbm,
                    }
                })
                .collect();
            ApMld {
                id: id as u32,
                position,
                interfaces,
            }
        })
        .collect();
    Some(aps)
}

fn inline_aps(spacing_m: f64, channels: &[Channel; 3], params: &LinkBudgetParams) -> Vec<ApMld> {
    (0..3)
        .map(|i| ApMld {
            id: i as u32,
            position: Point {
                x: 10.0 + spacing_m * i as f64,
                y: 10.0,
            },
            interfaces: channels
                .iter()
                .map(|&channel| Interface {
                    channel,
                    tx_power_dbm: params.tx_power_ap_dbm,
                })
                .collect(),
        })
        .collect()
}
