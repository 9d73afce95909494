//! Seeded request stream through the scheduler: content requests arrive at
//! the cluster, claim antennas and RF chains, resolve through the cache
//! hierarchy, and park their antenna in a resonance-aligned sleep. Energy is
//! accounted end to end — transmit shares, optical path, machine room.
//!
//! Run with: `cargo run --example combined_run`

use ee_sim::config::SimConfig;
use ee_sim::scenario::run_combined_scenario;
use ee_sim::transition::resonant_params;

fn main() {
    let mut config = SimConfig::default();
    config.scenario.requests = 500;
    let run = run_combined_scenario(&config).expect("combined run should complete");
    let stats = &run.stats;
    let row = &run.result.rows[0];

    println!("combined run, seed {}, {} requests", config.scenario.seed, config.scenario.requests);
    println!();
    println!("  served        {:>6}", stats.served);
    println!("  blocked       {:>6}", stats.blocked);
    println!("  cache hits    {:>6}", stats.cache_hits);
    println!("  flooded       {:>6}", stats.floods);
    println!("  wait events   {:>6}", stats.wait_events);
    println!("  pool coherent {:>6}", stats.state_consistent);
    println!();
    println!("  mean rate   {:>12.4e} bit/s", row.rate_bps);
    println!("  mean power  {:>12.1} W", row.power_w);
    println!("  efficiency  {:>12.1} bit/J", row.efficiency_bits_per_joule);

    let period = resonant_params(&config.transition.circuit())
        .expect("default circuit resonates")
        .period_s;
    let (min, max) = stats
        .sleep_windows
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &(delay, _)| {
            (lo.min(delay), hi.max(delay))
        });
    println!();
    println!(
        "  sleep delays span [{:.3}, {:.3}] of the resonant period ({:.1} us)",
        min / period,
        max / period,
        period * 1e6
    );
}
