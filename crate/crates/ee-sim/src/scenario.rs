//! Sweep scenarios and CSV emission.
//!
//! Three runners turn a validated [`SimConfig`] into result rows:
//!
//! * [`run_wireless_scenario`] sweeps the user count and compares a pooled
//!   machine room against one machine room per activated base station;
//! * [`run_wired_scenario`] sweeps path length and line rate through the
//!   optical core, comparing nearest-copy delivery against routing everything
//!   to a fixed origin server;
//! * [`run_combined_scenario`] replays a seeded request stream through the
//!   scheduler and accounts energy end to end.
//!
//! All rows serialize to one CSV schema
//! (`sweep_var,value,variant,rate_bps,power_w,ee_bits_per_joule`). Numbers
//! are written with Rust's shortest-round-trip float formatting, so a given
//! configuration and seed always produces byte-identical output.

use crate::config::SimConfig;
use crate::error::{Error, Result};
use crate::icn::{flood_resolve, ip_baseline_resolve, ClusterTopology, NdoRequest};
use crate::scheduler::{ResourceState, Scheduler, SchedulerConfig, TraceEvent};
use crate::transition::resonant_params;
use crate::wired::{wired_path_power, RouterModel};
use crate::wireless::{
    ergodic_sum_rate, power_alloc_beta, standard_normal_pair, total_wireless_power, EeResult,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::path::Path;

/// One sweep point of one variant.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioRow {
    /// Name of the swept quantity (`users`, `hops`, `rate_gbps`, `requests`).
    pub sweep_var: &'static str,
    /// Value of the swept quantity at this point.
    pub value: f64,
    /// Which system variant the row describes.
    pub variant: &'static str,
    /// Delivered rate, bit/s.
    pub rate_bps: f64,
    /// Power draw, W.
    pub power_w: f64,
    /// Energy efficiency, bit/J.
    pub efficiency_bits_per_joule: f64,
}

impl ScenarioRow {
    fn new(sweep_var: &'static str, value: f64, variant: &'static str, ee: EeResult) -> Self {
        ScenarioRow {
            sweep_var,
            value,
            variant,
            rate_bps: ee.rate_bps,
            power_w: ee.power_w,
            efficiency_bits_per_joule: ee.efficiency_bits_per_joule,
        }
    }
}

/// Ordered result rows of one scenario run.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioResult {
    /// Rows in sweep order, variants interleaved per point.
    pub rows: Vec<ScenarioRow>,
}

impl ScenarioResult {
    /// Renders the rows as CSV with a fixed header and `\n` line endings.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("sweep_var,value,variant,rate_bps,power_w,ee_bits_per_joule\n");
        for row in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                row.sweep_var,
                row.value,
                row.variant,
                row.rate_bps,
                row.power_w,
                row.efficiency_bits_per_joule
            ));
        }
        out
    }
}

/// Writes a scenario result to a CSV file.
pub fn emit_csv(result: &ScenarioResult, path: &Path) -> Result<()> {
    std::fs::write(path, result.to_csv()).map_err(|source| Error::OutputWrite {
        path: path.display().to_string(),
        source,
    })
}

/// Sweeps the user count from `users_min` to `users_max`. Users fill base
/// stations first-to-last up to `capacity_per_bs` each; every active station
/// spends two antennas of budget per admitted user and serves it at the
/// closed-form ergodic rate. The `cran` variant pools baseband into a single
/// machine room; the `traditional` variant brings one machine room per active
/// station.
pub fn run_wireless_scenario(config: &SimConfig) -> Result<ScenarioResult> {
    let w = &config.wireless;
    let mut rows = Vec::with_capacity(2 * (w.users_max - w.users_min + 1));
    for users in w.users_min..=w.users_max {
        let mut remaining = users;
        let mut stations = 0u32;
        let mut array_power_w = 0.0;
        let mut rate_bps = 0.0;
        while remaining > 0 {
            let admitted = remaining.min(w.capacity_per_bs);
            let beta_w = power_alloc_beta(w.bs_power_w, admitted, w.antennas)?;
            let rho = beta_w / w.noise_power_w;
            let per_user_bps =
                ergodic_sum_rate(w.antennas, admitted, rho, w.component_bandwidth_hz)?;
            array_power_w += beta_w;
            rate_bps += admitted as f64 * per_user_bps;
            remaining -= admitted;
            stations += 1;
        }
        let pooled = EeResult::new(rate_bps, total_wireless_power(array_power_w, 1, w.machine_room_w))?;
        let per_station =
            EeResult::new(rate_bps, total_wireless_power(array_power_w, stations, w.machine_room_w))?;
        rows.push(ScenarioRow::new("users", users as f64, "cran", pooled));
        rows.push(ScenarioRow::new("users", users as f64, "traditional", per_station));
    }
    Ok(ScenarioResult { rows })
}

/// Awake draw of one idle router that carries no traffic.
fn idle_router_w(router: &RouterModel, degree: u32) -> f64 {
    router.router_power(0.0, degree, true)
}

/// Sweeps path length (at the fixed rate) and then line rate (at one hop)
/// through the optical core. For each hop count the content is homed `h`
/// clusters from the requester and both resolvers are exercised: the `icn`
/// variant powers only the delivery path (off-path routers sleep), while the
/// `ip` variant keeps every remaining router of the chain awake and idle.
pub fn run_wired_scenario(config: &SimConfig) -> Result<ScenarioResult> {
    let d = &config.wired;
    let t = &config.topology;
    let cluster_count = d.hops_max + 1;
    let span = config.wired.span(t.hop_distance_km, t.bs_tail_km);
    let router = config.wired.router();
    let mut rows = Vec::new();

    for h in 1..=d.hops_max {
        let mut topology = ClusterTopology::chain(
            cluster_count,
            t.degree,
            t.hop_distance_km,
            t.bs_tail_km,
            t.bs_per_cluster,
        )?
        .with_origin_server(h as u32 - 1)?;
        let name = format!("item-{h}");
        topology.add_cache_entry(h as u32 - 1, &name)?;
        let request = NdoRequest { name, serving_cluster: 0 };

        let near = flood_resolve(&topology, &request)?;
        let path = wired_path_power(&span, &router, near.hops, d.rate_fixed_gbps, t.degree)?;
        let icn = EeResult::new(d.rate_fixed_gbps * 1e9, path.total_w)?;
        rows.push(ScenarioRow::new("hops", h as f64, "icn", icn));

        let origin = ip_baseline_resolve(&topology, &request)?;
        let path = wired_path_power(&span, &router, origin.hops, d.rate_fixed_gbps, t.degree)?;
        let off_path = (cluster_count - origin.hops) as f64 * idle_router_w(&router, t.degree);
        let ip = EeResult::new(d.rate_fixed_gbps * 1e9, path.total_w + off_path)?;
        rows.push(ScenarioRow::new("hops", h as f64, "ip", ip));
    }

    let steps = ((d.rate_max_gbps - d.rate_min_gbps) / d.rate_step_gbps + 1e-9).floor() as usize;
    for i in 0..=steps {
        let rate_gbps = d.rate_min_gbps + i as f64 * d.rate_step_gbps;
        let path = wired_path_power(&span, &router, 1, rate_gbps, t.degree)?;
        let icn = EeResult::new(rate_gbps * 1e9, path.total_w)?;
        rows.push(ScenarioRow::new("rate_gbps", rate_gbps, "icn", icn));
        let off_path = (cluster_count - 1) as f64 * idle_router_w(&router, t.degree);
        let ip = EeResult::new(rate_gbps * 1e9, path.total_w + off_path)?;
        rows.push(ScenarioRow::new("rate_gbps", rate_gbps, "ip", ip));
    }
    Ok(ScenarioResult { rows })
}

/// Counters and audit data from a combined run.
#[derive(Debug, Clone, PartialEq)]
pub struct CombinedStats {
    /// Requests delivered.
    pub served: u32,
    /// Requests dropped after exhausting retries.
    pub blocked: u32,
    /// Poll intervals spent waiting across all requests.
    pub wait_events: u32,
    /// Requests answered from the serving cluster's own cache.
    pub cache_hits: u32,
    /// Requests resolved by flooding to another cluster.
    pub floods: u32,
    /// `(sleep_delay, wake_estimate)` of every scheduled sleep, in order.
    pub sleep_windows: Vec<(f64, f64)>,
    /// True when the resource pool stayed coherent after every request:
    /// fixed pool sizes, nothing left powered on between requests.
    pub state_consistent: bool,
}

/// Result row plus audit statistics of a combined run.
#[derive(Debug, Clone, PartialEq)]
pub struct CombinedRun {
    /// Single-row scenario result (`sweep_var = "requests"`).
    pub result: ScenarioResult,
    /// Counters and sleep-window audit data.
    pub stats: CombinedStats,
}

/// Replays a seeded request stream through the scheduler over the configured
/// topology and accounts delivered bits against wireless transmit, optical
/// path, and machine-room energy. Requests draw uniformly over the cached
/// content names and the clusters; per-request service time and arrival gaps
/// jitter around their configured means. Returns one result row plus audit
/// statistics; per-request traces go to `scenario.trace_output` when set.
pub fn run_combined_scenario(config: &SimConfig) -> Result<CombinedRun> {
    let s = &config.scenario;
    let w = &config.wireless;
    let topology = config.topology.build()?;
    let names: Vec<String> = topology
        .clusters()
        .iter()
        .flat_map(|c| c.cache.iter().cloned())
        .collect::<BTreeSet<String>>()
        .into_iter()
        .collect();
    if names.is_empty() {
        return Err(Error::InvalidTopology(
            "no cluster caches any content; the combined scenario needs at least one cached name"
                .into(),
        ));
    }
    let cluster_ids: Vec<u32> = topology.clusters().iter().map(|c| c.id).collect();

    let resonance = resonant_params(&config.transition.circuit())?;
    let scheduler = Scheduler::new(
        SchedulerConfig { retry_limit: s.retry_limit, poll_interval_s: s.poll_interval_s },
        resonance.period_s,
    )?;
    let mut state = ResourceState::new(s.antennas, s.rf_chains);
    let mut rng = ChaCha8Rng::seed_from_u64(s.seed);

    // Single-user service: each admitted request takes a two-antenna share of
    // one station's budget and runs at the closed-form ergodic rate.
    let beta_w = power_alloc_beta(w.bs_power_w, 1, w.antennas)?;
    let per_user_bps =
        ergodic_sum_rate(w.antennas, 1, beta_w / w.noise_power_w, w.component_bandwidth_hz)?;
    let span = config.wired.span(topology.hop_distance_km, topology.bs_tail_km);
    let router = config.wired.router();

    let mut stats = CombinedStats {
        served: 0,
        blocked: 0,
        wait_events: 0,
        cache_hits: 0,
        floods: 0,
        sleep_windows: Vec::new(),
        state_consistent: true,
    };
    let mut clock_s = 0.0;
    let mut bits = 0.0;
    let mut energy_j = 0.0;
    let mut trace_lines: Vec<String> = Vec::new();

    for request_id in 0..s.requests {
        let request = NdoRequest {
            name: names[rng.gen_range(0..names.len())].clone(),
            serving_cluster: cluster_ids[rng.gen_range(0..cluster_ids.len())],
        };
        let gains: Vec<f64> =
            (0..s.antennas).map(|_| standard_normal_pair(&mut rng).0.abs()).collect();
        let service_s = s.service_time_s * (0.5 + rng.gen::<f64>());
        let gap_s = s.interarrival_s * 2.0 * rng.gen::<f64>();

        let before_clock = clock_s;
        let trace = scheduler.handle_request(
            &request,
            &gains,
            &mut state,
            &topology,
            service_s,
            &mut clock_s,
        )?;

        stats.wait_events += trace.wait_count() as u32;
        if trace.blocked() {
            stats.blocked += 1;
        }
        if let Some(window) = trace.sleep_window() {
            stats.sleep_windows.push(window);
        }
        let mut hops = None;
        for (_, event) in &trace.events {
            match event {
                TraceEvent::CacheHit => stats.cache_hits += 1,
                TraceEvent::Flooded { .. } => stats.floods += 1,
                TraceEvent::Served { hops: h, .. } => hops = Some(*h),
                _ => {}
            }
        }
        if let Some(hops) = hops {
            stats.served += 1;
            let path = wired_path_power(
                &span,
                &router,
                hops,
                config.wired.rate_fixed_gbps,
                config.topology.degree,
            )?;
            bits += per_user_bps * service_s;
            energy_j += (beta_w + path.total_w) * service_s;
        }

        let pool_intact = state.antennas.len() == s.antennas
            && state.rf_chains.len() == s.rf_chains
            && !state.antennas.iter().any(|a| matches!(a, crate::scheduler::AntennaState::On))
            && state.rf_chains.iter().all(|r| matches!(r, crate::scheduler::RfState::Off))
            && clock_s >= before_clock;
        stats.state_consistent &= pool_intact;

        if s.trace_output.is_some() {
            trace_lines.extend(trace.to_lines(request_id as usize));
        }
        clock_s += gap_s;
    }

    // One pooled machine room backs the whole cluster for the full run.
    energy_j += w.machine_room_w * clock_s;

    if !(clock_s > 0.0) {
        return Err(Error::NonPositiveParameter { name: "elapsed_s", value: clock_s });
    }
    let ee = EeResult::new(bits / clock_s, energy_j / clock_s)?;
    let row = ScenarioRow::new("requests", s.requests as f64, "combined", ee);

    if let Some(path) = &s.trace_output {
        let text = trace_lines.join("\n") + "\n";
        std::fs::write(path, text)
            .map_err(|source| Error::OutputWrite { path: path.clone(), source })?;
    }

    Ok(CombinedRun { result: ScenarioResult { rows: vec![row] }, stats })
}
