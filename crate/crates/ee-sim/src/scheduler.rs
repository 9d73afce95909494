//! Request-driven antenna/RF-chain scheduling with resonance-aligned sleep.
//!
//! Each incoming content request claims the best idle antenna and an idle RF
//! chain, resolves the content through the cluster topology, and on completion
//! parks the antenna in a timed sleep whose delay is chosen from the
//! switching-transient feasibility bound ([`crate::transition::max_t1`]), so
//! the wake transient always lands inside the admissible region. Every step
//! is recorded in a [`DecisionTrace`] for audit and replay.

use crate::error::{Error, Result};
use crate::icn::{cache_lookup, flood_resolve, ClusterTopology, NdoRequest, Resolution};
use crate::transition::max_t1;
use std::fmt;

/// Lifecycle of one antenna element.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AntennaState {
    /// Actively serving a request.
    On,
    /// Idle and available for selection.
    Off,
    /// Sleeping until the stated absolute time, unavailable meanwhile.
    SleepPending {
        /// Absolute wall-clock second at which the antenna becomes idle again.
        until_s: f64,
    },
}

/// Lifecycle of one RF chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RfState {
    /// Driving an antenna.
    On,
    /// Idle and available.
    Off,
}

/// Pool of antennas and RF chains shared by all requests.
#[derive(Debug, Clone, PartialEq)]
pub struct ResourceState {
    /// Per-antenna states.
    pub antennas: Vec<AntennaState>,
    /// Per-RF-chain states.
    pub rf_chains: Vec<RfState>,
}

impl ResourceState {
    /// A pool with every antenna and RF chain idle.
    pub fn new(antennas: usize, rf_chains: usize) -> Self {
        ResourceState {
            antennas: vec![AntennaState::Off; antennas],
            rf_chains: vec![RfState::Off; rf_chains],
        }
    }

    /// Number of antennas currently selectable.
    pub fn idle_antennas(&self) -> usize {
        self.antennas.iter().filter(|s| matches!(s, AntennaState::Off)).count()
    }

    /// Number of RF chains currently selectable.
    pub fn idle_rf_chains(&self) -> usize {
        self.rf_chains.iter().filter(|s| matches!(s, RfState::Off)).count()
    }

    /// Wakes every antenna whose sleep deadline has passed. The pool sizes
    /// never change; only states move.
    pub fn advance_to(&mut self, now_s: f64) {
        for state in &mut self.antennas {
            if let AntennaState::SleepPending { until_s } = *state {
                if until_s <= now_s {
                    *state = AntennaState::Off;
                }
            }
        }
    }
}

/// Antenna/RF pair claimed for a request.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Selection {
    /// Index of the chosen antenna.
    pub antenna: usize,
    /// Index of the chosen RF chain.
    pub rf_chain: usize,
}

/// Picks the idle antenna with the largest gain (ties to the lowest index)
/// and the first idle RF chain. Returns `None` when either pool has nothing
/// idle. Antennas without a gain entry are not considered.
pub fn select_antenna_rf(state: &ResourceState, gains: &[f64]) -> Option<Selection> {
    let candidates = state.antennas.len().min(gains.len());
    let mut best: Option<(f64, usize)> = None;
    for index in 0..candidates {
        if !matches!(state.antennas[index], AntennaState::Off) {
            continue;
        }
        let gain = gains[index];
        if best.map_or(true, |(g, _)| gain > g) {
            best = Some((gain, index));
        }
    }
    let (_, antenna) = best?;
    let rf_chain = state.rf_chains.iter().position(|s| matches!(s, RfState::Off))?;
    Some(Selection { antenna, rf_chain })
}

/// Sleep timing for an antenna released at a given instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SleepPlan {
    /// How long the antenna stays dark before its wake transient starts, s.
    pub sleep_delay_s: f64,
    /// Estimated wake-transient duration the delay was sized against, s.
    pub wake_estimate_s: f64,
}

/// Sizes the sleep delay for an antenna released at `t_active_s` within a
/// resonant period `period_s`. The wake estimate is the release phase folded
/// into a quarter period; the delay is the largest admissible off time for
/// that wake, clamped into `[0, period/2]`. The resulting pair always sits on
/// or inside the admissibility boundary.
pub fn schedule_sleep(t_active_s: f64, period_s: f64) -> Result<SleepPlan> {
    if !(period_s > 0.0) {
        return Err(Error::NonPositiveParameter { name: "period_s", value: period_s });
    }
    let wake_estimate_s = t_active_s.rem_euclid(period_s / 4.0);
    let sleep_delay_s = max_t1(wake_estimate_s, period_s)
        .seconds
        .clamp(0.0, period_s / 2.0);
    Ok(SleepPlan { sleep_delay_s, wake_estimate_s })
}

/// One event in a request's lifecycle, tagged with the wall-clock time at
/// which it was recorded.
#[derive(Debug, Clone, PartialEq)]
pub enum TraceEvent {
    /// An antenna was claimed.
    AntennaSelected {
        /// Index of the claimed antenna.
        index: usize,
    },
    /// An RF chain was claimed.
    RfSelected {
        /// Index of the claimed RF chain.
        index: usize,
    },
    /// The serving cluster held the content locally.
    CacheHit,
    /// The content was found by flooding neighbouring clusters.
    Flooded {
        /// Hop count to the answering cluster.
        hops: usize,
        /// Cluster that answered.
        source_cluster: u32,
    },
    /// Delivery finished.
    Served {
        /// Hop count the delivery traversed.
        hops: usize,
        /// Cluster that supplied the content.
        source_cluster: u32,
    },
    /// The released antenna was put to sleep.
    SleepScheduled {
        /// Chosen dark interval, s.
        sleep_delay_s: f64,
        /// Wake-transient estimate the delay was sized against, s.
        wake_estimate_s: f64,
    },
    /// No resources were free; the scheduler waited one poll interval.
    WaitListen,
    /// The retry budget ran out and the request was dropped.
    Blocked,
}

impl fmt::Display for TraceEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TraceEvent::AntennaSelected { index } => write!(f, "antenna_selected index={index}"),
            TraceEvent::RfSelected { index } => write!(f, "rf_selected index={index}"),
            TraceEvent::CacheHit => write!(f, "cache_hit"),
            TraceEvent::Flooded { hops, source_cluster } => {
                write!(f, "flooded hops={hops} source={source_cluster}")
            }
            TraceEvent::Served { hops, source_cluster } => {
                write!(f, "served hops={hops} source={source_cluster}")
            }
            TraceEvent::SleepScheduled { sleep_delay_s, wake_estimate_s } => {
                write!(f, "sleep_scheduled delay_s={sleep_delay_s} wake_s={wake_estimate_s}")
            }
            TraceEvent::WaitListen => write!(f, "wait_listen"),
            TraceEvent::Blocked => write!(f, "blocked"),
        }
    }
}

/// Timestamped event log of one request.
#[derive(Debug, Clone, PartialEq)]
pub struct DecisionTrace {
    /// Name of the content the request asked for.
    pub request_name: String,
    /// Events in the order they happened, each with its wall-clock time, s.
    pub events: Vec<(f64, TraceEvent)>,
}

impl DecisionTrace {
    fn new(request_name: String) -> Self {
        DecisionTrace { request_name, events: Vec::new() }
    }

    fn push(&mut self, t_s: f64, event: TraceEvent) {
        self.events.push((t_s, event));
    }

    /// True when the request was delivered.
    pub fn served(&self) -> bool {
        self.events.iter().any(|(_, e)| matches!(e, TraceEvent::Served { .. }))
    }

    /// True when the request was dropped for lack of resources.
    pub fn blocked(&self) -> bool {
        self.events.iter().any(|(_, e)| matches!(e, TraceEvent::Blocked))
    }

    /// The `(sleep_delay, wake_estimate)` pair if a sleep was scheduled.
    pub fn sleep_window(&self) -> Option<(f64, f64)> {
        self.events.iter().find_map(|(_, e)| match e {
            TraceEvent::SleepScheduled { sleep_delay_s, wake_estimate_s } => {
                Some((*sleep_delay_s, *wake_estimate_s))
            }
            _ => None,
        })
    }

    /// Number of poll intervals the request spent waiting for resources.
    pub fn wait_count(&self) -> usize {
        self.events.iter().filter(|(_, e)| matches!(e, TraceEvent::WaitListen)).count()
    }

    /// Renders the trace as one line per event, prefixed with a request id.
    pub fn to_lines(&self, request_id: usize) -> Vec<String> {
        self.events
            .iter()
            .map(|(t, e)| format!("req={request_id} name={} t={t:.9} {e}", self.request_name))
            .collect()
    }
}

/// Retry policy for resource acquisition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchedulerConfig {
    /// Poll attempts before a request is dropped.
    pub retry_limit: u32,
    /// Wall-clock spacing between poll attempts, s.
    pub poll_interval_s: f64,
}

impl Default for SchedulerConfig {
    fn default() -> Self {
        SchedulerConfig { retry_limit: 10, poll_interval_s: 50e-6 }
    }
}

/// Serial request scheduler over a shared resource pool.
#[derive(Debug, Clone, PartialEq)]
pub struct Scheduler {
    config: SchedulerConfig,
    period_s: f64,
}

impl Scheduler {
    /// A scheduler whose sleep timing is tuned to the given resonant period.
    pub fn new(config: SchedulerConfig, period_s: f64) -> Result<Self> {
        if !(period_s > 0.0) {
            return Err(Error::NonPositiveParameter { name: "period_s", value: period_s });
        }
        if !(config.poll_interval_s > 0.0) {
            return Err(Error::NonPositiveParameter {
                name: "poll_interval_s",
                value: config.poll_interval_s,
            });
        }
        Ok(Scheduler { config, period_s })
    }

    /// The retry policy in force.
    pub fn config(&self) -> SchedulerConfig {
        self.config
    }

    /// The resonant period sleep delays are tuned to, s.
    pub fn period_s(&self) -> f64 {
        self.period_s
    }

    /// Runs one request to completion against the shared pool, advancing the
    /// caller's clock past any waiting and the service time. A request that
    /// exhausts its retries is recorded as blocked (an `Ok` outcome); errors
    /// are reserved for unresolvable content or unknown clusters, and leave
    /// the pool as it was before the request.
    pub fn handle_request(
        &self,
        request: &NdoRequest,
        gains: &[f64],
        state: &mut ResourceState,
        topology: &ClusterTopology,
        service_time_s: f64,
        clock_s: &mut f64,
    ) -> Result<DecisionTrace> {
        let mut trace = DecisionTrace::new(request.name.clone());
        state.advance_to(*clock_s);

        let mut selection = None;
        for attempt in 0..=self.config.retry_limit {
            if let Some(found) = select_antenna_rf(state, gains) {
                selection = Some(found);
                break;
            }
            if attempt == self.config.retry_limit {
                trace.push(*clock_s, TraceEvent::Blocked);
                return Ok(trace);
            }
            trace.push(*clock_s, TraceEvent::WaitListen);
            *clock_s += self.config.poll_interval_s;
            state.advance_to(*clock_s);
        }
        let selection = selection.expect("loop either selects or returns");

        trace.push(*clock_s, TraceEvent::AntennaSelected { index: selection.antenna });
        trace.push(*clock_s, TraceEvent::RfSelected { index: selection.rf_chain });
        state.antennas[selection.antenna] = AntennaState::On;
        state.rf_chains[selection.rf_chain] = RfState::On;

        let release = |state: &mut ResourceState| {
            state.antennas[selection.antenna] = AntennaState::Off;
            state.rf_chains[selection.rf_chain] = RfState::Off;
        };

        let resolution = match cache_lookup(topology, request.serving_cluster, &request.name) {
            Ok(true) => {
                trace.push(*clock_s, TraceEvent::CacheHit);
                Resolution { hops: 1, source_cluster: request.serving_cluster }
            }
            Ok(false) => match flood_resolve(topology, request) {
                Ok(resolution) => {
                    trace.push(
                        *clock_s,
                        TraceEvent::Flooded {
                            hops: resolution.hops,
                            source_cluster: resolution.source_cluster,
                        },
                    );
                    resolution
                }
                Err(e) => {
                    release(state);
                    return Err(e);
                }
            },
            Err(e) => {
                release(state);
                return Err(e);
            }
        };

        *clock_s += service_time_s;
        trace.push(
            *clock_s,
            TraceEvent::Served {
                hops: resolution.hops,
                source_cluster: resolution.source_cluster,
            },
        );

        let plan = schedule_sleep(*clock_s, self.period_s)?;
        trace.push(
            *clock_s,
            TraceEvent::SleepScheduled {
                sleep_delay_s: plan.sleep_delay_s,
                wake_estimate_s: plan.wake_estimate_s,
            },
        );
        state.antennas[selection.antenna] =
            AntennaState::SleepPending { until_s: *clock_s + plan.sleep_delay_s };
        state.rf_chains[selection.rf_chain] = RfState::Off;

        Ok(trace)
    }
}
