//! One channel draw, zero-forced: shows the effective channel after
//! precoding, the per-user SINR, and the resulting Shannon rates.
//!
//! Run with: `cargo run --example zf_beamforming`

use ee_sim::wireless::{gen_channel, per_ue_rate, precoder_norm_gamma, sinr, zf_precoder};

fn main() {
    let (users, antennas, seed) = (4, 16, 42);
    let h = gen_channel(users, antennas, seed).expect("channel draws");
    let w = zf_precoder(&h).expect("well-conditioned channel inverts");

    println!("{users} users, {antennas} antennas, seed {seed}");
    println!();
    println!("effective channel H * W (should be the identity):");
    let product = &h * &w;
    for k in 0..users {
        let row: Vec<String> =
            (0..users).map(|j| format!("{:>6.3}", product[(k, j)].re)).collect();
        println!("  [{}]", row.join(" "));
    }

    println!();
    println!("per-user precoder cost ||W||^2/K = {:.4}", precoder_norm_gamma(&w));

    println!();
    println!("{:>10} {:>12} {:>16}", "SNR rho", "SINR", "rate [bit/s]");
    for rho in [0.1, 1.0, 10.0] {
        let s = sinr(&h, &w, rho, 0).expect("user 0 exists");
        let rate = per_ue_rate(5e6, s).expect("rate law evaluates");
        println!("{rho:>10} {s:>12.4} {rate:>16.4e}");
    }
}
