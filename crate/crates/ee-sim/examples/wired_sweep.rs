//! Optical-core sweeps: energy efficiency against path length and line rate,
//! comparing nearest-copy delivery (off-path routers sleep) with the fixed
//! origin-server baseline (every router stays awake).
//!
//! Run with: `cargo run --example wired_sweep`

use ee_sim::config::SimConfig;
use ee_sim::scenario::run_wired_scenario;

fn main() {
    let config = SimConfig::default();
    let rows = run_wired_scenario(&config).expect("default sweep should run").rows;

    println!("hop sweep at {} Gbit/s:", config.wired.rate_fixed_gbps);
    println!("{:>5} {:>16} {:>16} {:>15} {:>15}", "hops", "nearest [W]", "origin [W]",
             "nearest bit/J", "origin bit/J");
    for h in 1..=config.wired.hops_max {
        let at = |variant: &str| {
            rows.iter()
                .find(|r| r.sweep_var == "hops" && r.variant == variant && r.value == h as f64)
                .expect("row exists")
        };
        let (icn, ip) = (at("icn"), at("ip"));
        println!(
            "{h:>5} {:>16.1} {:>16.1} {:>15.1} {:>15.1}",
            icn.power_w, ip.power_w, icn.efficiency_bits_per_joule, ip.efficiency_bits_per_joule
        );
    }

    println!();
    println!("rate sweep at 1 hop (nearest-copy variant):");
    println!("{:>12} {:>12} {:>15} {:>13}", "rate [Gb/s]", "power [W]", "bit/J", "transponders");
    let mut previous: Option<f64> = None;
    for row in rows.iter().filter(|r| r.sweep_var == "rate_gbps" && r.variant == "icn") {
        let transponders = (row.value / config.wired.fiber_capacity_gbps).ceil() as u32;
        let marker = match previous {
            Some(p) if row.power_w - p > config.wired.port_w / 2.0 => "  <- port step",
            _ => "",
        };
        println!(
            "{:>12} {:>12.1} {:>15.1} {:>13}{marker}",
            row.value, row.power_w, row.efficiency_bits_per_joule, transponders
        );
        previous = Some(row.power_w);
    }
}
