//! Per-hop power ledger of one optical path: amplified spontaneous emission,
//! transmit power carried forward hop to hop, amplifier draw, and router
//! draw, with the end-to-end efficiency.
//!
//! Run with: `cargo run --example wired_path_ledger`

use ee_sim::wired::{wired_ee, wired_path_power, FiberSpan, RouterModel};

fn main() {
    let span = FiberSpan::default();
    let router = RouterModel::default();
    let rate = 40.0;

    println!(
        "span: {} km trunk + {} km tail per hop, amplifiers every {} km",
        span.length_km, span.bs_tail_km, span.edfa_spacing_km
    );
    println!("router: {} W chassis / {} slots = {} W per slot", router.chassis_w, router.slots,
             router.per_slot_power());

    for hops in [1usize, 3] {
        let path = wired_path_power(&span, &router, hops, rate, 2).expect("path computes");
        println!();
        println!("{hops}-hop path at {rate} Gbit/s:");
        println!("{:>5} {:>14} {:>12} {:>12} {:>10}", "hop", "transmit [W]", "ase [W]",
                 "signal [W]", "router [W]");
        for hop in &path.per_hop {
            println!(
                "{:>5} {:>14.4} {:>12.4} {:>12.4} {:>10.1}",
                hop.hop, hop.transmit_w, hop.ase_w, hop.signal_w, hop.router_w
            );
        }
        let ee = wired_ee(rate, path.total_w).expect("positive power");
        println!(
            "total: {:.2} W signal + {:.1} W routers = {:.2} W  ->  {:.4e} bit/J",
            path.signal_w, path.router_total_w, path.total_w, ee.efficiency_bits_per_joule
        );
    }
}
