//! TOML configuration: parsing, defaults, and validation.
//!
//! A configuration file has five optional tables — `[wireless]`, `[wired]`,
//! `[transition]`, `[topology]`, `[scenario]` — each field individually
//! optional and falling back to the reference defaults below, so an empty
//! file is a complete, valid configuration. Unknown keys are rejected with
//! the offending name and location rather than silently ignored. Validation
//! runs after parsing and reports the first violated constraint by field
//! name.

use crate::error::{Error, Result};
use crate::icn::{Cluster, ClusterTopology};
use crate::transition::{resonant_params, Damping, RlcCircuit};
use crate::wired::{FiberSpan, RouterModel};
use serde::{Deserialize, Serialize};
use std::path::Path;

/// Access-side model parameters (`[wireless]`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WirelessConfig {
    /// Antennas per base-station array.
    pub antennas: usize,
    /// First user count of the sweep.
    pub users_min: usize,
    /// Last user count of the sweep.
    pub users_max: usize,
    /// Users one base station can admit.
    pub capacity_per_bs: usize,
    /// Transmit power budget per base station, W.
    pub bs_power_w: f64,
    /// Receiver noise power, W.
    pub noise_power_w: f64,
    /// Bandwidth of one carrier component, Hz.
    pub component_bandwidth_hz: f64,
    /// Aggregate bandwidth at full carrier aggregation, Hz (reference figure).
    pub peak_bandwidth_hz: f64,
    /// Baseband machine-room draw, W.
    pub machine_room_w: f64,
}

impl Default for WirelessConfig {
    fn default() -> Self {
        WirelessConfig {
            antennas: 200,
            users_min: 1,
            users_max: 800,
            capacity_per_bs: 42,
            bs_power_w: 40.0,
            noise_power_w: 1.0,
            component_bandwidth_hz: 5e6,
            peak_bandwidth_hz: 2e8,
            machine_room_w: 480.0,
        }
    }
}

/// Optical-core model parameters (`[wired]`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WiredConfig {
    /// Amplifier spacing along trunk fiber, km.
    pub edfa_spacing_km: f64,
    /// Amplifier draw per carried Gbit/s, W.
    pub edfa_w_per_gbps: f64,
    /// Amplifier power gain, per unit (0 < gain <= 1).
    pub gain: f64,
    /// Fiber attenuation, dB/km.
    pub attenuation_db_per_km: f64,
    /// Line-card slots per router chassis.
    pub slots: u32,
    /// Full-chassis router draw, W.
    pub chassis_w: f64,
    /// Optical cross-connect base draw, W.
    pub oxc_base_w: f64,
    /// Optical cross-connect draw per nodal degree, W.
    pub oxc_per_degree_w: f64,
    /// Draw per transponder port, W.
    pub port_w: f64,
    /// Capacity of one fiber/transponder, Gbit/s.
    pub fiber_capacity_gbps: f64,
    /// Longest path of the hop sweep.
    pub hops_max: usize,
    /// Rate used while sweeping hops, Gbit/s.
    pub rate_fixed_gbps: f64,
    /// First rate of the rate sweep, Gbit/s.
    pub rate_min_gbps: f64,
    /// Last rate of the rate sweep, Gbit/s.
    pub rate_max_gbps: f64,
    /// Rate-sweep increment, Gbit/s.
    pub rate_step_gbps: f64,
}

impl Default for WiredConfig {
    fn default() -> Self {
        WiredConfig {
            edfa_spacing_km: 80.0,
            edfa_w_per_gbps: 4.0,
            gain: 0.99,
            attenuation_db_per_km: 0.3,
            slots: 16,
            chassis_w: 10_900.0,
            oxc_base_w: 150.0,
            oxc_per_degree_w: 135.0,
            port_w: 400.0,
            fiber_capacity_gbps: 40.0,
            hops_max: 8,
            rate_fixed_gbps: 40.0,
            rate_min_gbps: 10.0,
            rate_max_gbps: 80.0,
            rate_step_gbps: 5.0,
        }
    }
}

impl WiredConfig {
    /// Fiber-span geometry for one hop of the given trunk length and tail.
    pub fn span(&self, length_km: f64, bs_tail_km: f64) -> FiberSpan {
        FiberSpan {
            length_km,
            edfa_spacing_km: self.edfa_spacing_km,
            bs_tail_km,
            gain: self.gain,
            attenuation_db_per_km: self.attenuation_db_per_km,
            edfa_w_per_gbps: self.edfa_w_per_gbps,
        }
    }

    /// Router power model assembled from these parameters.
    pub fn router(&self) -> RouterModel {
        RouterModel {
            slots: self.slots,
            chassis_w: self.chassis_w,
            oxc_base_w: self.oxc_base_w,
            oxc_per_degree_w: self.oxc_per_degree_w,
            port_w: self.port_w,
            fiber_capacity_gbps: self.fiber_capacity_gbps,
        }
    }
}

/// Power-rail switching-loop parameters (`[transition]`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TransitionConfig {
    /// Loop inductance, H.
    pub inductance_h: f64,
    /// First branch capacitance, F.
    pub c1_f: f64,
    /// Second branch capacitance, F.
    pub c2_f: f64,
    /// Third branch capacitance, F.
    pub c3_f: f64,
    /// Loop resistance, ohm.
    pub resistance_ohm: f64,
    /// Nominal rail voltage, V.
    pub nominal_v: f64,
}

impl Default for TransitionConfig {
    fn default() -> Self {
        let c = RlcCircuit::default();
        TransitionConfig {
            inductance_h: c.inductance_h,
            c1_f: c.c1_f,
            c2_f: c.c2_f,
            c3_f: c.c3_f,
            resistance_ohm: c.resistance_ohm,
            nominal_v: c.nominal_v,
        }
    }
}

impl TransitionConfig {
    /// The circuit these parameters describe.
    pub fn circuit(&self) -> RlcCircuit {
        RlcCircuit {
            inductance_h: self.inductance_h,
            c1_f: self.c1_f,
            c2_f: self.c2_f,
            c3_f: self.c3_f,
            resistance_ohm: self.resistance_ohm,
            nominal_v: self.nominal_v,
        }
    }
}

/// One cache preload: a cluster and the content name it holds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CacheEntry {
    /// Cluster id holding the copy.
    pub cluster: u32,
    /// Content name.
    pub name: String,
}

/// Cluster-graph parameters (`[topology]`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TopologyConfig {
    /// Number of clusters; ids run from 0 to `clusters - 1`.
    pub clusters: u32,
    /// Nodal degree figure applied to every cluster's cross-connect.
    pub degree: u32,
    /// Undirected edges as id pairs. Empty means a chain over consecutive ids.
    pub edges: Vec<(u32, u32)>,
    /// Trunk distance between adjacent clusters, km.
    pub hop_distance_km: f64,
    /// Cluster-to-base-station tail, km.
    pub bs_tail_km: f64,
    /// Base stations hosted per cluster.
    pub bs_per_cluster: u32,
    /// Cluster acting as the fixed origin server, if any.
    pub origin_server: Option<u32>,
    /// Cache preloads applied after the graph is built.
    pub cache_entries: Vec<CacheEntry>,
}

impl Default for TopologyConfig {
    /// Nine clusters in a chain, cluster `i` preloaded with `object-i`, origin
    /// server at the far end.
    fn default() -> Self {
        TopologyConfig {
            clusters: 9,
            degree: 2,
            edges: Vec::new(),
            hop_distance_km: 100.0,
            bs_tail_km: 10.0,
            bs_per_cluster: 20,
            origin_server: Some(8),
            cache_entries: (0..9)
                .map(|i| CacheEntry { cluster: i, name: format!("object-{i}") })
                .collect(),
        }
    }
}

impl TopologyConfig {
    /// Builds the configured cluster graph, preloads its caches, and
    /// designates the origin server.
    pub fn build(&self) -> Result<ClusterTopology> {
        let clusters: Vec<Cluster> =
            (0..self.clusters).map(|id| Cluster::new(id, self.degree)).collect();
        let chain: Vec<(u32, u32)>;
        let edges: &[(u32, u32)] = if self.edges.is_empty() {
            chain = (1..self.clusters).map(|id| (id - 1, id)).collect();
            &chain
        } else {
            &self.edges
        };
        let mut topology = ClusterTopology::new(
            clusters,
            edges,
            self.hop_distance_km,
            self.bs_tail_km,
            self.bs_per_cluster,
        )?;
        for entry in &self.cache_entries {
            topology.add_cache_entry(entry.cluster, &entry.name)?;
        }
        match self.origin_server {
            Some(id) => topology.with_origin_server(id),
            None => Ok(topology),
        }
    }
}

/// Combined-run driver parameters (`[scenario]`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioConfig {
    /// Seed for every random draw of the run.
    pub seed: u64,
    /// Number of content requests to generate.
    pub requests: u32,
    /// Antennas in the scheduling pool.
    pub antennas: usize,
    /// RF chains in the scheduling pool.
    pub rf_chains: usize,
    /// Poll attempts before a request is dropped.
    pub retry_limit: u32,
    /// Spacing between poll attempts, s.
    pub poll_interval_s: f64,
    /// Mean service time per request, s.
    pub service_time_s: f64,
    /// Mean gap between request arrivals, s.
    pub interarrival_s: f64,
    /// File to write per-request decision traces to, if set.
    pub trace_output: Option<String>,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        ScenarioConfig {
            seed: 1,
            requests: 2000,
            antennas: 8,
            rf_chains: 8,
            retry_limit: 10,
            poll_interval_s: 50e-6,
            service_time_s: 2e-4,
            interarrival_s: 1e-4,
            trace_output: None,
        }
    }
}

/// Complete simulator configuration.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimConfig {
    /// Access-side model (`[wireless]`).
    pub wireless: WirelessConfig,
    /// Optical-core model (`[wired]`).
    pub wired: WiredConfig,
    /// Switching-loop model (`[transition]`).
    pub transition: TransitionConfig,
    /// Cluster graph (`[topology]`).
    pub topology: TopologyConfig,
    /// Combined-run driver (`[scenario]`).
    pub scenario: ScenarioConfig,
}

fn require(condition: bool, message: impl FnOnce() -> String) -> Result<()> {
    if condition {
        Ok(())
    } else {
        Err(Error::ConfigValidation(message()))
    }
}

impl SimConfig {
    /// Checks every cross-field constraint, reporting the first violation by
    /// field name.
    pub fn validate(&self) -> Result<()> {
        let w = &self.wireless;
        require(w.users_min >= 1, || "wireless.users_min must be at least 1".into())?;
        require(w.users_min <= w.users_max, || {
            format!(
                "wireless.users_min ({}) must not exceed wireless.users_max ({})",
                w.users_min, w.users_max
            )
        })?;
        require(w.capacity_per_bs >= 1, || {
            "wireless.capacity_per_bs must be at least 1".into()
        })?;
        require(w.antennas >= 2 * w.capacity_per_bs, || {
            format!(
                "wireless.antennas ({}) must be at least twice wireless.capacity_per_bs ({}): \
                 a full cell needs two antennas per admitted user",
                w.antennas, w.capacity_per_bs
            )
        })?;
        let cluster_capacity = w.capacity_per_bs * self.topology.bs_per_cluster as usize;
        require(w.users_max <= cluster_capacity, || {
            format!(
                "wireless.users_max ({}) exceeds the cluster admission capacity ({} = \
                 wireless.capacity_per_bs * topology.bs_per_cluster)",
                w.users_max, cluster_capacity
            )
        })?;
        for (name, value) in [
            ("wireless.bs_power_w", w.bs_power_w),
            ("wireless.noise_power_w", w.noise_power_w),
            ("wireless.component_bandwidth_hz", w.component_bandwidth_hz),
            ("wireless.peak_bandwidth_hz", w.peak_bandwidth_hz),
            ("wireless.machine_room_w", w.machine_room_w),
        ] {
            require(value > 0.0, || format!("{name} must be positive, got {value}"))?;
        }

        let d = &self.wired;
        for (name, value) in [
            ("wired.edfa_spacing_km", d.edfa_spacing_km),
            ("wired.chassis_w", d.chassis_w),
            ("wired.port_w", d.port_w),
            ("wired.fiber_capacity_gbps", d.fiber_capacity_gbps),
            ("wired.rate_fixed_gbps", d.rate_fixed_gbps),
            ("wired.rate_min_gbps", d.rate_min_gbps),
            ("wired.rate_step_gbps", d.rate_step_gbps),
        ] {
            require(value > 0.0, || format!("{name} must be positive, got {value}"))?;
        }
        for (name, value) in [
            ("wired.edfa_w_per_gbps", d.edfa_w_per_gbps),
            ("wired.attenuation_db_per_km", d.attenuation_db_per_km),
            ("wired.oxc_base_w", d.oxc_base_w),
            ("wired.oxc_per_degree_w", d.oxc_per_degree_w),
        ] {
            require(value >= 0.0, || format!("{name} must be non-negative, got {value}"))?;
        }
        require(d.gain > 0.0 && d.gain <= 1.0, || {
            format!("wired.gain must lie in (0, 1], got {}", d.gain)
        })?;
        require(d.slots >= 1, || "wired.slots must be at least 1".into())?;
        require(d.hops_max >= 1, || "wired.hops_max must be at least 1".into())?;
        require(d.rate_max_gbps >= d.rate_min_gbps, || {
            format!(
                "wired.rate_max_gbps ({}) must be at least wired.rate_min_gbps ({})",
                d.rate_max_gbps, d.rate_min_gbps
            )
        })?;

        let circuit = self.transition.circuit();
        require(circuit.nominal_v > 0.0, || {
            format!("transition.nominal_v must be positive, got {}", circuit.nominal_v)
        })?;
        let resonance = resonant_params(&circuit)
            .map_err(|e| Error::ConfigValidation(format!("transition: {e}")))?;
        require(resonance.damping != Damping::Overdamped, || {
            "transition.resistance_ohm makes the loop overdamped; sleep timing needs an \
             oscillatory rail"
                .into()
        })?;

        self.topology
            .build()
            .map_err(|e| Error::ConfigValidation(format!("topology: {e}")))?;

        let s = &self.scenario;
        require(s.requests >= 1, || "scenario.requests must be at least 1".into())?;
        require(s.antennas >= 1, || "scenario.antennas must be at least 1".into())?;
        require(s.rf_chains >= 1, || "scenario.rf_chains must be at least 1".into())?;
        require(s.poll_interval_s > 0.0, || {
            format!("scenario.poll_interval_s must be positive, got {}", s.poll_interval_s)
        })?;
        require(s.service_time_s >= 0.0, || {
            format!("scenario.service_time_s must be non-negative, got {}", s.service_time_s)
        })?;
        require(s.interarrival_s >= 0.0, || {
            format!("scenario.interarrival_s must be non-negative, got {}", s.interarrival_s)
        })?;
        Ok(())
    }
}

/// Parses a configuration from TOML text and validates it. An empty string
/// yields the full default configuration.
pub fn parse_config_str(text: &str) -> Result<SimConfig> {
    let config: SimConfig = toml::from_str(text).map_err(|e| Error::ConfigParse(e.to_string()))?;
    config.validate()?;
    Ok(config)
}

/// Reads, parses, and validates a configuration file.
pub fn parse_config(path: &Path) -> Result<SimConfig> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::ConfigRead {
        path: path.display().to_string(),
        source,
    })?;
    parse_config_str(&text)
}
