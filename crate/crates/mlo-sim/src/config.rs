//! TOML run configuration: schema, defaults and exhaustive validation.
//!
//! Every section is optional and every field has a default, so an empty
//! file is a valid single-run configuration with the standard evaluation
//! parameters.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::engine::{ScenarioSource, SimConfig};
use crate::error::{Result, SimError};
use crate::medium::SolverParams;
use crate::policy::PolicyKind;
use crate::scenario::{default_inline_channels, Scenario, ScenarioSpec, StationCount, Topology};
use crate::spectrum::{Band, Channel, LinkBudgetParams, McsEntry, McsTable};
use crate::traffic::{BandwidthRule, TrafficSpec};

/// A parsed configuration file.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub scenario: ScenarioSection,
    pub traffic: TrafficSection,
    pub link_budget: LinkBudgetParams,
    pub mcs: McsSection,
    pub sim: SimSection,
    pub experiment: Option<ExperimentSection>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TopologyKind {
    Random,
    Inline3,
}

/// `[scenario]`: either a generated deployment (random or inline) or a
/// fixed one loaded from `scenario_file`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ScenarioSection {
    pub topology: TopologyKind,
    pub area_m: [f64; 2],
    pub n_aps: u32,
    pub stations_per_ap: StationCount,
    pub min_inter_ap_m: f64,
    pub station_distance_m: [f64; 2],
    /// Inline topology only: AP spacing.
    pub inline_spacing_m: f64,
    /// Inline topology only: the shared 2.4/5/6 GHz channel numbers.
    pub inline_channels: [u16; 3],
    /// When set, the deployment is loaded from this file instead of
    /// generated, and the generation fields above are ignored.
    pub scenario_file: Option<PathBuf>,
}

impl Default for ScenarioSection {
    fn default() -> Self {
        ScenarioSection {
            topology: TopologyKind::Random,
            area_m: [45.0, 45.0],
            n_aps: 10,
            stations_per_ap: StationCount::Uniform([15, 25]),
            min_inter_ap_m: 5.0,
            station_distance_m: [1.0, 8.0],
            inline_spacing_m: 15.0,
            inline_channels: [1, 38, 55],
            scenario_file: None,
        }
    }
}

/// `[traffic]`: the on/off process.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TrafficSection {
    pub mean_on_s: f64,
    pub mean_off_s: f64,
    pub bandwidth: BandwidthRule,
    pub per: f64,
    /// Informational at flow level; kept for configuration completeness.
    pub mpdu_payload_bytes: u32,
}

impl Default for TrafficSection {
    fn default() -> Self {
        let spec = TrafficSpec::default();
        TrafficSection {
            mean_on_s: spec.mean_on_s,
            mean_off_s: spec.mean_off_s,
            bandwidth: spec.bandwidth,
            per: spec.per,
            mpdu_payload_bytes: 1500,
        }
    }
}

impl TrafficSection {
    pub fn to_spec(&self) -> TrafficSpec {
        TrafficSpec {
            mean_on_s: self.mean_on_s,
            mean_off_s: self.mean_off_s,
            bandwidth: self.bandwidth,
            per: self.per,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum McsPreset {
    /// Thresholds spaced 2 dB apart, anchored at 11 dB for MCS 11.
    LinearThresholds,
    /// Thresholds derived from standard 20 MHz receiver sensitivities.
    Sensitivity,
}

/// `[mcs]`: a named preset, or explicit entries overriding it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct McsSection {
    pub preset: McsPreset,
    pub entries: Option<Vec<McsEntry>>,
}

impl Default for McsSection {
    fn default() -> Self {
        McsSection {
            preset: McsPreset::LinearThresholds,
            entries: None,
        }
    }
}

impl McsSection {
    pub fn to_table(&self) -> Result<McsTable> {
        match &self.entries {
            Some(entries) => McsTable::new(entries.clone()),
            None => Ok(match self.preset {
                McsPreset::LinearThresholds => McsTable::linear_thresholds(),
                McsPreset::Sensitivity => McsTable::sensitivity(),
            }),
        }
    }
}

/// `[sim]`: run length, policy and seeding.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SimSection {
    pub duration_s: f64,
    pub warmup_s: f64,
    pub policy: PolicyKind,
    pub seed: u64,
}

impl Default for SimSection {
    fn default() -> Self {
        SimSection {
            duration_s: 120.0,
            warmup_s: 0.0,
            policy: PolicyKind::Mlsa,
            seed: 1,
        }
    }
}

/// Sweep axis of an experiment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepAxis {
    /// Fixed per-flow bandwidth, Mbps.
    LoadMbps,
    /// Number of APs in the random topology.
    #[serde(rename = "n_aps")]
    NAps,
    /// Stations per AP (fixed count).
    StationsPerAp,
}

impl SweepAxis {
    pub fn name(self) -> &'static str {
        match self {
            SweepAxis::LoadMbps => "load_mbps",
            SweepAxis::NAps => "n_aps",
            SweepAxis::StationsPerAp => "stations_per_ap",
        }
    }
}

/// `[experiment]`: turns the file into a sweep instead of a single run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ExperimentSection {
    pub name: String,
    pub sweep: SweepAxis,
    pub values: Vec<f64>,
    pub runs_per_point: u32,
    pub policies: Vec<PolicyKind>,
}

impl Default for ExperimentSection {
    fn default() -> Self {
        ExperimentSection {
            name: "custom".into(),
            sweep: SweepAxis::LoadMbps,
            values: Vec::new(),
            runs_per_point: 100,
            policies: vec![PolicyKind::Mlsa],
        }
    }
}

/// Parses a configuration file, keeping the parser's line/column context
/// in the error.
pub fn load_config(path: &Path) -> Result<RunConfig> {
    let text = std::fs::read_to_string(path)?;
    parse_config(&text).map_err(|detail| SimError::Parse {
        path: path.display().to_string(),
        detail,
    })
}

/// Parses configuration text.
pub fn parse_config(text: &str) -> std::result::Result<RunConfig, String> {
    toml::from_str(text).map_err(|e| e.to_string())
}

/// Loads and fully validates a configuration file without running it.
/// Returns the list of violations; an empty list means the file is ready
/// to run.
pub fn validate_config(path: &Path) -> Result<Vec<String>> {
    let config = load_config(path)?;
    Ok(config.validate())
}

impl RunConfig {
    /// Checks every invariant and returns all violations at once.
    pub fn validate(&self) -> Vec<String> {
        let mut errors = Vec::new();
        let mut err = |msg: String| errors.push(msg);

        let s = &self.scenario;
        if s.scenario_file.is_none() {
            if !(s.area_m[0] > 0.0 && s.area_m[1] > 0.0) {
                err(format!("scenario.area_m must be positive, got {:?}", s.area_m));
            }
            if s.n_aps == 0 {
                err("scenario.n_aps must be at least 1".into());
            }
            if s.min_inter_ap_m < 0.0 {
                err("scenario.min_inter_ap_m must be non-negative".into());
            }
            let [lo, hi] = s.station_distance_m;
            if !(lo > 0.0 && hi >= lo) {
                err(format!(
                    "scenario.station_distance_m must satisfy 0 < low <= high, got {:?}",
                    s.station_distance_m
                ));
            }
            if let StationCount::Uniform([lo, hi]) = s.stations_per_ap {
                if lo > hi {
                    err(format!("scenario.stations_per_ap range is inverted: [{lo}, {hi}]"));
                }
            }
            if s.topology == TopologyKind::Inline3 {
                if !(s.inline_spacing_m > 0.0) {
                    err("scenario.inline_spacing_m must be positive".into());
                }
                for (band, number) in Band::ALL.into_iter().zip(s.inline_channels) {
                    if Channel::new(band, number).is_err() {
                        err(format!(
                            "scenario.inline_channels: {number} is not a {} GHz channel",
                            band.label()
                        ));
                    }
                }
            }
        }

        let t = &self.traffic;
        if !(t.mean_on_s > 0.0) {
            err("traffic.mean_on_s must be positive".into());
        }
        if !(t.mean_off_s > 0.0) {
            err("traffic.mean_off_s must be positive".into());
        }
        if !(0.0..1.0).contains(&t.per) {
            err(format!("traffic.per must lie in [0, 1), got {}", t.per));
        }
        match t.bandwidth {
            BandwidthRule::Fixed(mbps) => {
                if !(mbps > 0.0) {
                    err(format!("traffic.bandwidth must be positive, got {mbps}"));
                }
            }
            BandwidthRule::Uniform([lo, hi]) => {
                if !(lo > 0.0 && hi >= lo) {
                    err(format!(
                        "traffic.bandwidth range must satisfy 0 < low <= high, got [{lo}, {hi}]"
                    ));
                }
            }
        }
        if t.mpdu_payload_bytes == 0 {
            err("traffic.mpdu_payload_bytes must be positive".into());
        }

        if !(self.link_budget.breakpoint_m > 0.0) {
            err("link_budget.breakpoint_m must be positive".into());
        }

        if let Err(e) = self.mcs.to_table() {
            err(format!("mcs.entries: {e}"));
        }

        if !(self.sim.duration_s > 0.0) {
            err(format!("sim.duration_s must be positive, got {}", self.sim.duration_s));
        }
        if !(0.0..self.sim.duration_s).contains(&self.sim.warmup_s) {
            err(format!(
                "sim.warmup_s must lie in [0, duration), got {}",
                self.sim.warmup_s
            ));
        }

        if let Some(exp) = &self.experiment {
            if exp.name.is_empty() {
                err("experiment.name must not be empty".into());
            }
            if exp.values.is_empty() {
                err("experiment.values must not be empty".into());
            }
            if exp.runs_per_point == 0 {
                err("experiment.runs_per_point must be at least 1".into());
            }
            if exp.policies.is_empty() {
                err("experiment.policies must not be empty".into());
            }
            for &value in &exp.values {
                match exp.sweep {
                    SweepAxis::LoadMbps => {
                        if !(value > 0.0) {
                            err(format!("experiment.values: load {value} must be positive"));
                        }
                    }
                    SweepAxis::NAps | SweepAxis::StationsPerAp => {
                        if value.fract() != 0.0 || value < 1.0 {
                            err(format!(
                                "experiment.values: {value} is not a positive whole count"
                            ));
                        }
                    }
                }
            }
        }

        errors
    }

    /// Resolves the scenario section into an engine scenario source.
    pub fn scenario_source(&self) -> Result<ScenarioSource> {
        if let Some(path) = &self.scenario.scenario_file {
            return Ok(ScenarioSource::Fixed(Scenario::load(path)?));
        }
        Ok(ScenarioSource::Generate(self.scenario_spec()?))
    }

    /// The generation spec described by `[scenario]`.
    pub fn scenario_spec(&self) -> Result<ScenarioSpec> {
        let s = &self.scenario;
        let spec = match s.topology {
            TopologyKind::Random => ScenarioSpec {
                topology: Topology::Random,
                area_m: (s.area_m[0], s.area_m[1]),
                n_aps: s.n_aps,
                stations_per_ap: s.stations_per_ap,
                min_inter_ap_m: s.min_inter_ap_m,
                station_distance_m: (s.station_distance_m[0], s.station_distance_m[1]),
            },
            TopologyKind::Inline3 => {
                let mut channels = default_inline_channels();
                for (slot, (band, number)) in
                    Band::ALL.into_iter().zip(s.inline_channels).enumerate()
                {
                    channels[slot] = Channel::new(band, number)?;
                }
                let mut spec = ScenarioSpec::inline3(s.inline_spacing_m, s.stations_per_ap);
                spec.topology = Topology::Inline3 {
                    spacing_m: s.inline_spacing_m,
                    channels,
                };
                spec.station_distance_m = (s.station_distance_m[0], s.station_distance_m[1]);
                spec
            }
        };
        Ok(spec)
    }

    /// Builds the single-run engine configuration for one (policy, seed)
    /// pair, reusing the file's values for everything else.
    pub fn to_sim_config(&self, policy: PolicyKind, seed: u64) -> Result<SimConfig> {
        Ok(SimConfig {
            duration_s: self.sim.duration_s,
            warmup_s: self.sim.warmup_s,
            seed,
            policy,
            scenario: self.scenario_source()?,
            traffic: self.traffic.to_spec(),
            budget: self.link_budget,
            mcs: self.mcs.to_table()?,
            solver: SolverParams::default(),
        })
    }
}
