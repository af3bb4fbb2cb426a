//! Traffic-allocation policies: how an arriving flow is split across the
//! station's enabled links.

use serde::{Deserialize, Serialize};

use crate::error::{Result, SimError};

/// Allocation policy applied on flow arrival.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PolicyKind {
    /// Whole flow on the interface currently seeing the most free airtime.
    Slci,
    /// Equal split across all enabled interfaces, load-blind.
    Mlsa,
    /// Split proportional to observed free airtime per interface.
    Mcaa,
    /// Whole flow on the link the station randomly attached to at setup;
    /// the single-link baseline.
    SlRandom,
}

impl PolicyKind {
    pub const ALL: [PolicyKind; 4] =
        [PolicyKind::Slci, PolicyKind::Mlsa, PolicyKind::Mcaa, PolicyKind::SlRandom];

    pub fn name(self) -> &'static str {
        match self {
            PolicyKind::Slci => "slci",
            PolicyKind::Mlsa => "mlsa",
            PolicyKind::Mcaa => "mcaa",
            PolicyKind::SlRandom => "sl-random",
        }
    }
}

impl std::fmt::Display for PolicyKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for PolicyKind {
    type Err = SimError;

    fn from_str(s: &str) -> Result<PolicyKind> {
        PolicyKind::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| {
                SimError::InvalidArgument(format!(
                    "unknown policy `{s}`, expected one of slci, mlsa, mcaa, sl-random"
                ))
            })
    }
}

/// What a policy sees about one candidate link at decision time. Free
/// airtime is observed before the arriving flow's own demand is added.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkView {
    /// Index into the station's enabled links.
    pub link: usize,
    pub free_airtime: f64,
    pub rate_mbps: f64,
    /// Whether this is the station's single-link attachment.
    pub attached: bool,
}

/// Splits `demand_mbps` over the candidate links. Returns one share per
/// entry of `links`, in order; the shares sum to the demand exactly.
pub fn allocate(kind: PolicyKind, demand_mbps: f64, links: &[LinkView]) -> Result<Vec<f64>> {
    if links.is_empty() {
        return Err(SimError::InvalidArgument(
            "cannot allocate a flow without enabled links".into(),
        ));
    }
    if !(demand_mbps >= 0.0) {
        return Err(SimError::InvalidArgument(format!(
            "demand must be non-negative, got {demand_mbps}"
        )));
    }
    let shares = match kind {
        PolicyKind::Slci => {
            // First maximum wins: candidate lists are in band order, so
            // ties fall to the lowest band, then the lowest interface.
            let mut best = 0;
            for (i, link) in links.iter().enumerate() {
                if link.free_airtime > links[best].free_airtime {
                    best = i;
                }
            }
            let mut shares = vec![0.0; links.len()];
            shares[best] = demand_mbps;
            shares
        }
        PolicyKind::Mlsa => proportional(demand_mbps, &vec![1.0; links.len()]),
        PolicyKind::Mcaa => {
            let weights: Vec<f64> = links.iter().map(|l| l.free_airtime.max(0.0)).collect();
            if weights.iter().sum::<f64>() > 0.0 {
                proportional(demand_mbps, &weights)
            } else {
                // Nothing observably free anywhere: fall back to the
                // equal split.
                proportional(demand_mbps, &vec![1.0; links.len()])
            }
        }
        PolicyKind::SlRandom => {
            let Some(best) = links.iter().position(|l| l.attached) else {
                return Err(SimError::InvalidArgument(
                    "single-link allocation without an attached link".into(),
                ));
            };
            let mut shares = vec![0.0; links.len()];
            shares[best] = demand_mbps;
            shares
        }
    };
    Ok(shares)
}

/// Weight-proportional shares with the largest share adjusted so the sum
/// matches the total exactly.
fn proportional(total: f64, weights: &[f64]) -> Vec<f64> {
    let weight_sum: f64 = weights.iter().sum();
    let mut shares: Vec<f64> = weights.iter().map(|w| total * w / weight_sum).collect();
    let mut largest = 0;
    for (i, s) in shares.iter().enumerate() {
        if *s > shares[largest] {
            largest = i;
        }
    }
    let others: f64 = shares
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != largest)
        .map(|(_, s)| s)
        .sum();
    shares[largest] = total - others;
    shares
}
