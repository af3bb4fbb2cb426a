//! Spectrum contention: per-band carrier-sense graphs between AP
//! interfaces and the damped fixed-point airtime solver that stands in for
//! CSMA/CA at flow-level timescales.
//!
//! Each AP interface is a node. Two nodes contend when their channels
//! overlap and either AP receives the other at or above the CCA threshold.
//! Given per-node airtime demands `D`, the solver finds a fixed point of
//!
//! `S_a = min(D_a, max(0, 1 - sum of S_b over neighbours b))`
//!
//! which models saturated neighbours stealing airtime, including the
//! flow-in-the-middle starvation pattern.

use serde::{Deserialize, Serialize};

use crate::scenario::Scenario;
use crate::spectrum::{self, channels_overlap, LinkBudgetParams};

/// Identifies an AP interface in the scenario.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeRef {
    pub ap: usize,
    pub interface: usize,
}

/// Static carrier-sense graph over all AP interfaces.
#[derive(Debug, Clone)]
pub struct ContentionGraph {
    pub nodes: Vec<NodeRef>,
    /// Sorted adjacency lists, symmetric.
    pub adjacency: Vec<Vec<usize>>,
    /// Connected components, each a sorted node list.
    pub components: Vec<Vec<usize>>,
    /// Component index per node.
    pub component_of: Vec<usize>,
    /// `node_index[ap][interface]` -> node id.
    pub node_index: Vec<Vec<usize>>,
}

/// Builds the contention graph for a scenario: nodes are AP interfaces,
/// and an edge exists when channels overlap and carrier sensing succeeds
/// in either direction.
pub fn build_graph(scenario: &Scenario, params: &LinkBudgetParams) -> ContentionGraph {
    let mut nodes = Vec::new();
    let mut node_index = Vec::with_capacity(scenario.aps.len());
    for (ap_idx, ap) in scenario.aps.iter().enumerate() {
        let mut ids = Vec::with_capacity(ap.interfaces.len());
        for iface_idx in 0..ap.interfaces.len() {
            ids.push(nodes.len());
            nodes.push(NodeRef {
                ap: ap_idx,
                interface: iface_idx,
            });
        }
        node_index.push(ids);
    }

    let mut adjacency = vec![Vec::new(); nodes.len()];
    for a in 0..nodes.len() {
        for b in a + 1..nodes.len() {
            let (na, nb) = (nodes[a], nodes[b]);
            if na.ap == nb.ap {
                continue;
            }
            let ap_a = &scenario.aps[na.ap];
            let ap_b = &scenario.aps[nb.ap];
            let if_a = &ap_a.interfaces[na.interface];
            let if_b = &ap_b.interfaces[nb.interface];
            if !channels_overlap(&if_a.channel, &if_b.channel) {
                continue;
            }
            let distance = ap_a.position.distance(&ap_b.position);
            if senses(if_b, distance, params) || senses(if_a, distance, params) {
                adjacency[a].push(b);
                adjacency[b].push(a);
            }
        }
    }
    for list in &mut adjacency {
        list.sort_unstable();
    }

    let (components, component_of) = connected_components(&adjacency);
    ContentionGraph {
        nodes,
        adjacency,
        components,
        component_of,
        node_index,
    }
}

impl ContentionGraph {
    /// Builds a graph from plain neighbour lists, for studying the solver
    /// on synthetic topologies. Edges are symmetrised and deduplicated;
    /// node `i` is labelled as interface 0 of a fictitious AP `i`.
    pub fn from_adjacency(neighbours: Vec<Vec<usize>>) -> ContentionGraph {
        let n = neighbours.len();
        let mut adjacency = vec![Vec::new(); n];
        for (a, list) in neighbours.iter().enumerate() {
            for &b in list {
                assert!(b < n, "neighbour {b} out of range for {n} nodes");
                if a != b {
                    adjacency[a].push(b);
                    adjacency[b].push(a);
                }
            }
        }
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }
        let (components, component_of) = connected_components(&adjacency);
        ContentionGraph {
            nodes: (0..n).map(|ap| NodeRef { ap, interface: 0 }).collect(),
            adjacency,
            components,
            component_of,
            node_index: (0..n).map(|ap| vec![ap]).collect(),
        }
    }
}

/// Whether a transmission from `tx` is received at or above the CCA
/// threshold after `distance_m` of the shared path loss model.
fn senses(tx: &crate::scenario::Interface, distance_m: f64, params: &LinkBudgetParams) -> bool {
    let Ok(pl) = spectrum::path_loss_db(tx.channel.center_ghz(), distance_m, params) else {
        // Co-located interfaces always hear each other.
        return true;
    };
    spectrum::rx_power_dbm(tx.tx_power_dbm, pl, params.combined_gains_db()) >= params.cca_threshold_dbm
}

fn connected_components(adjacency: &[Vec<usize>]) -> (Vec<Vec<usize>>, Vec<usize>) {
    let n = adjacency.len();
    let mut component_of = vec![usize::MAX; n];
    let mut components = Vec::new();
    let mut stack = Vec::new();
    for start in 0..n {
        if component_of[start] != usize::MAX {
            continue;
        }
        let idx = components.len();
        let mut members = Vec::new();
        stack.push(start);
        component_of[start] = idx;
        while let Some(node) = stack.pop() {
            members.push(node);
            for &next in &adjacency[node] {
                if component_of[next] == usize::MAX {
                    component_of[next] = idx;
                    stack.push(next);
                }
            }
        }
        members.sort_unstable();
        components.push(members);
    }
    (components, component_of)
}

/// Solver knobs. The defaults are deliberately conservative; the damping
/// keeps the synchronous iteration from oscillating between saturation
/// regimes.
#[derive(Debug, Clone, Copy)]
pub struct SolverParams {
    pub damping: f64,
    pub tolerance: f64,
    pub max_iterations: u32,
}

impl Default for SolverParams {
    fn default() -> Self {
        SolverParams {
            damping: 0.5,
            tolerance: 1e-9,
            max_iterations: 10_000,
        }
    }
}

/// Result of one airtime solve.
#[derive(Debug, Clone)]
pub struct AirtimeSolution {
    /// Served airtime fraction per node.
    pub served: Vec<f64>,
    pub converged: bool,
    pub iterations: u32,
}

impl ContentionGraph {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Solves every component from the cold start `S = min(D, 1)`.
    pub fn solve(&self, demands: &[f64], params: &SolverParams) -> AirtimeSolution {
        assert_eq!(demands.len(), self.nodes.len());
        let mut served: Vec<f64> = demands.iter().map(|d| d.min(1.0)).collect();
        let mut converged = true;
        let mut iterations = 0;
        for comp in 0..self.components.len() {
            let (ok, iters) = self.solve_component(comp, demands, &mut served, params, None);
            converged &= ok;
            iterations = iterations.max(iters);
        }
        AirtimeSolution {
            served,
            converged,
            iterations,
        }
    }

    /// Solves a single component in place, leaving other nodes untouched.
    /// When `trace` is given, the max residual of each iteration is pushed
    /// onto it.
    pub fn solve_component(
        &self,
        component: usize,
        demands: &[f64],
        served: &mut [f64],
        params: &SolverParams,
        mut trace: Option<&mut Vec<f64>>,
    ) -> (bool, u32) {
        let members = &self.components[component];
        for &node in members {
            served[node] = demands[node].min(1.0);
        }
        if members.len() == 1 {
            // No neighbours: the fixed point is the capped demand itself.
            return (true, 0);
        }
        let mut next = vec![0.0; members.len()];
        for iteration in 1..=params.max_iterations {
            let mut delta: f64 = 0.0;
            for (slot, &node) in members.iter().enumerate() {
                let neighbour_sum: f64 = self.adjacency[node].iter().map(|&b| served[b]).sum();
                let target = demands[node].min((1.0 - neighbour_sum).max(0.0));
                let updated = (1.0 - params.damping) * served[node] + params.damping * target;
                delta = delta.max((updated - served[node]).abs());
                next[slot] = updated;
            }
            for (slot, &node) in members.iter().enumerate() {
                served[node] = next[slot];
            }
            if let Some(trace) = trace.as_deref_mut() {
                trace.push(delta);
            }
            if delta < params.tolerance {
                return (true, iteration);
            }
        }
        (false, params.max_iterations)
    }
}

/// Channel occupancy experienced at a node: its own transmissions plus
/// everything it senses, capped at 1.
pub fn occupancy(graph: &ContentionGraph, served: &[f64], node: usize) -> f64 {
    let neighbour_sum: f64 = graph.adjacency[node].iter().map(|&b| served[b]).sum();
    (served[node] + neighbour_sum).min(1.0)
}

/// Airtime still observable as idle at a node.
pub fn free_airtime(graph: &ContentionGraph, served: &[f64], node: usize) -> f64 {
    (1.0 - occupancy(graph, served, node)).max(0.0)
}

/// Airtime actually granted to one sub-flow: the node's service scaled to
/// the sub-flow's share of its demand.
pub fn per_flow_service(required_airtime: f64, node_served: f64, node_demand: f64) -> f64 {
    if node_demand <= 0.0 {
        0.0
    } else {
        required_airtime * (node_served / node_demand)
    }
}
