//! Flow-level Monte Carlo simulator for IEEE 802.11be multi-link
//! operation (MLO) in multi-band WLANs.
//!
//! Devices are multi-link: every AP and station owns a 2.4, a 5 and a
//! 6 GHz radio, and a downlink flow can be split across whichever links
//! the station's link budget enables. The medium is abstracted at flow
//! level: per-band carrier-sense graphs between AP interfaces feed a
//! damped fixed-point solver that hands out airtime the way saturated
//! CSMA/CA neighbourhoods do, including flow-in-the-middle starvation.
//!
//! The crate is organised along the simulation pipeline:
//!
//! - [`spectrum`]: channels, path loss, link budgets, MCS and PHY rates
//! - [`scenario`]: AP/station placement and enabled-link computation
//! - [`traffic`]: on/off flow generation and airtime requirements
//! - [`medium`]: contention graphs and the airtime fixed-point solver
//! - [`policy`]: SLCI / MLSA / MCAA / single-link traffic allocation
//! - [`engine`]: the discrete-event loop and batch runner
//! - [`metrics`]: satisfaction, efficiency, drop-ratio CDFs, CSV output
//! - [`config`]: TOML run configuration and validation
//! - [`experiment`]: named sweep presets and the experiment driver
//!
//! The `examples/` directory walks each stage: `link_budget`,
//! `scenario_tour`, `contention`, `policy_splits`, `single_run` and
//! `experiment_sweep`.

// Validation guards use `!(x > 0.0)` on purpose: the negation also
// catches NaN, which a rewritten `x <= 0.0` would silently accept.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod engine;
pub mod error;
pub mod experiment;
pub mod medium;
pub mod metrics;
pub mod policy;
pub mod scenario;
pub mod spectrum;
pub mod traffic;

pub use config::RunConfig;
pub use engine::{derive_seed, run, run_batch, ScenarioSource, SimConfig};
pub use error::{Result, SimError};
pub use experiment::{ExperimentPlan, ExperimentPreset};
pub use metrics::MetricsReport;
pub use policy::PolicyKind;
