//! Sleep/wake timing of a resonant power rail: the voltage-stress
//! constraints, the closed-form timing bound, and the admissibility grid the
//! two produce over the timing square.
//!
//! Run with: `cargo run --example transition_window`

use ee_sim::transition::{
    constraint_values, feasible_region_grid, is_admissible, max_t1, max_t2, resonant_params,
    RlcCircuit,
};

fn main() {
    let circuit = RlcCircuit::default();
    let resonance = resonant_params(&circuit).expect("default circuit resonates");
    let tau = resonance.period_s;
    println!(
        "default rail: omega = {:.4e} rad/s, period = {:.2} us, {:?}",
        resonance.omega_rad_per_s,
        tau * 1e6,
        resonance.damping
    );

    println!();
    println!("closed-form bound (largest admissible t2 after sleeping t1):");
    for frac in [0.0, 0.125, 0.25, 1.0 / 3.0] {
        let t1 = frac * tau;
        let bound = max_t2(t1, tau);
        println!(
            "  t1 = {:>6.3} tau  ->  t2 <= {:>6.3} tau  ({})",
            frac,
            bound.seconds / tau,
            if bound.binding { "binding" } else { "interval cap" }
        );
    }
    let symmetric = max_t1(0.1 * tau, tau).seconds;
    println!("  (symmetric: after a 0.1 tau wake, sleep up to {:.3} tau)", symmetric / tau);

    println!();
    println!("voltage stress at sample points (nominal {} V):", circuit.nominal_v);
    for (a, b) in [(0.0, 0.0), (tau / 3.0, tau / 3.0), (tau / 2.0, tau / 2.0)] {
        let (u_c, u_l) = constraint_values(a, b, circuit.nominal_v, tau);
        println!(
            "  t1 = {:>5.2} tau, t2 = {:>5.2} tau:  u_c = {:>7.2} V, u_l = {:>7.2} V  -> {}",
            a / tau,
            b / tau,
            u_c,
            u_l,
            if is_admissible(a, b, circuit.nominal_v, tau) { "admissible" } else { "inadmissible" }
        );
    }

    let grid = feasible_region_grid(tau, 200).expect("grid builds");
    let total = 200 * 200;
    let admissible = (0..200)
        .flat_map(|i| (0..200).map(move |j| (i, j)))
        .filter(|&(i, j)| grid.at(i, j))
        .count();
    println!();
    println!(
        "admissibility grid at 200 x 200: {admissible}/{total} cells admissible ({:.1}%)",
        100.0 * admissible as f64 / total as f64
    );
}
