//! User-count sweep over the access side: pooled baseband (one machine room
//! for the whole cluster) against one machine room per activated base
//! station.
//!
//! Run with: `cargo run --example wireless_sweep`

use ee_sim::config::SimConfig;
use ee_sim::scenario::run_wireless_scenario;

fn main() {
    let config = SimConfig::default();
    let result = run_wireless_scenario(&config).expect("default sweep should run");

    println!("user sweep, {} rows", result.rows.len());
    println!();
    println!("{:>6} {:>16} {:>12} {:>12} {:>14} {:>14}", "users", "rate [bit/s]", "pooled [W]",
             "per-BS [W]", "pooled bit/J", "per-BS bit/J");
    for users in [1usize, 42, 43, 84, 85, 400, 800] {
        let pooled = result
            .rows
            .iter()
            .find(|r| r.variant == "cran" && r.value == users as f64)
            .expect("row exists");
        let per_bs = result
            .rows
            .iter()
            .find(|r| r.variant == "traditional" && r.value == users as f64)
            .expect("row exists");
        println!(
            "{users:>6} {:>16.3e} {:>12.1} {:>12.1} {:>14.1} {:>14.1}",
            pooled.rate_bps,
            pooled.power_w,
            per_bs.power_w,
            pooled.efficiency_bits_per_joule,
            per_bs.efficiency_bits_per_joule
        );
    }

    // Every time the user count crosses a multiple of the per-station
    // capacity, the per-station variant pays for another machine room.
    let jumps = result
        .rows
        .iter()
        .filter(|r| r.variant == "traditional")
        .collect::<Vec<_>>()
        .windows(2)
        .filter(|pair| pair[1].power_w - pair[0].power_w > config.wireless.machine_room_w / 2.0)
        .count();
    println!();
    println!(
        "machine-room jumps in the per-station curve: {jumps} (capacity {} users/station)",
        config.wireless.capacity_per_bs
    );
}
