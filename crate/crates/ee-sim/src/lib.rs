//! Deterministic end-to-end energy-efficiency simulator for a clustered
//! radio-access network served over an optical core.
//!
//! The library models the full delivery chain of a content request — antenna
//! array, base-station power budget, machine rooms, optical trunks with
//! inline amplification, and the routers between clusters — and reports
//! energy efficiency in bit/J. Everything is driven by explicit seeds:
//! running the same configuration twice produces byte-identical output.
//!
//! # Modules
//!
//! | Module | What it models |
//! |--------|----------------|
//! | [`wireless`] | Random channels, zero-forcing beamforming, power allocation, closed-form rate laws |
//! | [`wired`] | Fiber spans, inline amplifiers, routers, per-hop power recursion |
//! | [`transition`] | Switching-loop transients of a sleeping power rail and the admissible off/on timing region |
//! | [`icn`] | Cluster graph, per-cluster caches, nearest-copy and origin-server resolution |
//! | [`scheduler`] | Antenna/RF-chain selection, request lifecycle, resonance-aligned sleep |
//! | [`config`] | TOML configuration with defaults and validation |
//! | [`scenario`] | User/hop/rate sweeps, the combined seeded run, CSV output |
//! | [`error`] | One error type for the whole crate |
//!
//! # Runnable examples
//!
//! Each major capability has a self-contained example under `examples/`:
//!
//! * `wireless_sweep` — user sweep comparing pooled and per-station baseband;
//! * `wired_sweep` — hop and rate sweeps through the optical core;
//! * `combined_run` — seeded request stream through the scheduler;
//! * `transition_window` — admissible sleep/wake timing, spot values and grid;
//! * `zf_beamforming` — channel draw, precoding, per-user SINR;
//! * `wishart_convergence` — Monte-Carlo precoder norm against its limit;
//! * `icn_resolution` — cache placement and both resolution strategies;
//! * `wired_path_ledger` — per-hop power breakdown of one optical path.
//!
//! Run one with `cargo run --example <name>`. The `ee-sim` binary wraps the
//! same scenarios behind a CLI (`simulate`, `transition-window`).

pub mod config;
pub mod error;
pub mod icn;
pub mod scenario;
pub mod scheduler;
pub mod transition;
pub mod wired;
pub mod wireless;

pub use error::{Error, Result};
pub use wireless::EeResult;
