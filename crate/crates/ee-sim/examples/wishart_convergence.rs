//! Monte-Carlo convergence of the mean squared precoder norm toward its
//! closed-form limit K/(M - K) as the trial count grows.
//!
//! Run with: `cargo run --example wishart_convergence`

use ee_sim::wireless::{wishart_trace_limit, wishart_trace_mc};

fn main() {
    let (antennas, users, seed) = (200, 42, 1);
    let limit = wishart_trace_limit(antennas, users).expect("M > K");
    println!("{users} users, {antennas} antennas: closed-form limit K/(M-K) = {limit:.8}");
    println!();
    println!("{:>8} {:>14} {:>12}", "trials", "estimate", "rel. error");
    for trials in [10, 50, 200, 400] {
        let estimate = wishart_trace_mc(antennas, users, trials, seed).expect("trials run");
        let relative = (estimate - limit).abs() / limit;
        println!("{trials:>8} {estimate:>14.8} {:>11.3}%", 100.0 * relative);
    }
    println!();
    println!("(the acceptance gate demands 5% agreement at 1000 trials)");
}
