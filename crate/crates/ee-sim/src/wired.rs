//! Optical-core power chain: span amplification, noise build-up, router draw.
//!
//! Content travels from its holding cluster to the serving base station over a
//! chain of identical fiber spans, each terminated by a cluster router (an
//! optical cross-connect plus transponders). Per span the model tracks:
//!
//! - in-line amplifier count and the residual uncompensated length:
//!   [`edfa_count`], [`uncompensated_length`]
//! - amplified-spontaneous-emission noise and the forwarded transmit power:
//!   [`ase_power`], [`transmit_power`]
//! - launch power including amplifier draw: [`signal_power`]
//! - router electrical draw with transponder granularity and sleep states:
//!   [`RouterModel::router_power`], [`transponder_count`]
//!
//! [`wired_path_power`] composes the per-hop pieces into the end-to-end power
//! of a path, and [`wired_ee`] turns rate plus power into bit/J.
//!
//! Lengths are km, powers W, rates Gbps unless a name says otherwise.

use crate::error::{Error, Result};
use crate::wireless::EeResult;

/// Chassis slots sharing the reference router's full-duplex draw. Together
/// with [`FIBER_CAPACITY_GBPS`] this forms the rate normalization
/// `slots * capacity = 640` used by the power recursion.
pub const CHASSIS_SLOTS: f64 = 16.0;

/// Capacity of one fiber/transponder of the reference router, Gbps.
pub const FIBER_CAPACITY_GBPS: f64 = 40.0;

/// Geometry and gain figures of one fiber span between adjacent routers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FiberSpan {
    /// Span length L between neighbouring cluster routers, km.
    pub length_km: f64,
    /// Amplifier spacing: one in-line EDFA per started spacing, minus the
    /// terminal stage, km.
    pub edfa_spacing_km: f64,
    /// Tail from the serving cluster down to its base station, km.
    pub bs_tail_km: f64,
    /// Fiber amplifier gain figure, dimensionless, in (0, 1].
    pub gain: f64,
    /// Fiber attenuation, dB/km (converted to nepers internally).
    pub attenuation_db_per_km: f64,
    /// EDFA electrical draw per Gbps carried, W.
    pub edfa_w_per_gbps: f64,
}

impl Default for FiberSpan {
    /// Reference span: 100 km trunk, 80 km amplifier spacing, 10 km tail,
    /// gain 0.99, 0.3 dB/km, 4 W per Gbps of EDFA draw.
    fn default() -> Self {
        FiberSpan {
            length_km: 100.0,
            edfa_spacing_km: 80.0,
            bs_tail_km: 10.0,
            gain: 0.99,
            attenuation_db_per_km: 0.3,
            edfa_w_per_gbps: 4.0,
        }
    }
}

/// Electrical model of one cluster router: optical cross-connect plus
/// transponder ports on a slotted chassis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RouterModel {
    /// Chassis slots sharing the full-duplex draw.
    pub slots: u32,
    /// Full-duplex chassis draw, W.
    pub chassis_w: f64,
    /// Optical cross-connect base draw, W.
    pub oxc_base_w: f64,
    /// Additional cross-connect draw per nodal degree, W.
    pub oxc_per_degree_w: f64,
    /// Draw of one transponder port, W.
    pub port_w: f64,
    /// Capacity of one fiber/transponder, Gbps.
    pub fiber_capacity_gbps: f64,
}

impl Default for RouterModel {
    /// Reference router: 16 slots at 10.9 kW full duplex, 150 W + 135 W per
    /// degree of cross-connect, 400 W per 40 Gbps port.
    fn default() -> Self {
        RouterModel {
            slots: 16,
            chassis_w: 10_900.0,
            oxc_base_w: 150.0,
            oxc_per_degree_w: 135.0,
            port_w: 400.0,
            fiber_capacity_gbps: 40.0,
        }
    }
}

impl RouterModel {
    /// Per-slot share of the full-duplex chassis draw, W (10900/16 = 681.25
    /// for the reference router). This is the power injected at the head of
    /// the path recursion.
    pub fn per_slot_power(&self) -> f64 {
        self.chassis_w / self.slots as f64
    }

    /// Electrical draw of the router while carrying `rate_gbps` with nodal
    /// degree `degree`. An awake router draws its cross-connect base plus
    /// per-degree share plus one port per started transponder; an asleep
    /// router draws nothing.
    pub fn router_power(&self, rate_gbps: f64, degree: u32, awake: bool) -> f64 {
        if !awake {
            return 0.0;
        }
        let oxc = self.oxc_base_w + self.oxc_per_degree_w * degree as f64;
        oxc + self.port_w * transponder_count(rate_gbps, self.fiber_capacity_gbps) as f64
    }
}

/// Converts a dB/km attenuation figure to nepers/km: `db * ln(10) / 10`
/// (0.3 dB/km becomes about 0.0691 nepers/km).
pub fn attenuation_neper_per_km(db_per_km: f64) -> f64 {
    db_per_km * std::f64::consts::LN_10 / 10.0
}

/// Number of in-line EDFAs on a span: `ceil(L / spacing) - 1`, clamped at 0 so
/// spans no longer than one spacing (including zero-length spans) need none.
pub fn edfa_count(length_km: f64, spacing_km: f64) -> Result<u32> {
    if !(spacing_km > 0.0) {
        return Err(Error::InvalidLength {
            name: "edfa spacing",
            requirement: "strictly positive",
            value: spacing_km,
        });
    }
    if length_km < 0.0 {
        return Err(Error::InvalidLength {
            name: "span length",
            requirement: "non-negative",
            value: length_km,
        });
    }
    let count = (length_km / spacing_km).ceil() as i64 - 1;
    Ok(count.max(0) as u32)
}

/// Residual fiber length whose loss no in-line amplifier compensates:
/// `l = L - edfas * spacing + bs_tail`. A negative result means the amplifier
/// count over-compensates the span, which is rejected as inconsistent.
pub fn uncompensated_length(
    length_km: f64,
    edfas: u32,
    spacing_km: f64,
    bs_tail_km: f64,
) -> Result<f64> {
    let l = length_km - edfas as f64 * spacing_km + bs_tail_km;
    if l < 0.0 {
        return Err(Error::InconsistentGeometry(l));
    }
    Ok(l)
}

/// Amplified-spontaneous-emission noise power accumulated over the
/// uncompensated length, W:
///
/// `P_ase = G * l * exp(-beta * l) * (P_prev / 640) * n_g`
///
/// where `beta` is the attenuation in nepers/km and `P_prev / 640 * n_g`
/// is the previous hop's power scaled to the carried rate (640 = 16 slots
/// times 40 Gbps, see [`CHASSIS_SLOTS`] and [`FIBER_CAPACITY_GBPS`]).
pub fn ase_power(
    gain: f64,
    uncompensated_km: f64,
    attenuation_db_per_km: f64,
    prev_power_w: f64,
    rate_gbps: f64,
) -> f64 {
    debug_assert!(gain > 0.0 && gain <= 1.0, "gain figure must lie in (0, 1]");
    let beta = attenuation_neper_per_km(attenuation_db_per_km);
    gain * uncompensated_km
        * (-beta * uncompensated_km).exp()
        * (prev_power_w / (CHASSIS_SLOTS * FIBER_CAPACITY_GBPS))
        * rate_gbps
}

/// Power a hop must transmit to forward the traffic, W: the previous hop's
/// power scaled to the carried rate, plus the span's noise contribution:
/// `P_t = (P_prev / 640) * n_g + P_ase`.
pub fn transmit_power(prev_power_w: f64, rate_gbps: f64, ase_w: f64) -> f64 {
    prev_power_w / (CHASSIS_SLOTS * FIBER_CAPACITY_GBPS) * rate_gbps + ase_w
}

/// Launch power of a span including its amplifier draw, W:
/// `P_s = P_t + edfas * edfa_power`, with `edfa_power` the per-EDFA draw for
/// the carried rate.
pub fn signal_power(transmit_w: f64, edfas: u32, edfa_power_w: f64) -> f64 {
    transmit_w + edfas as f64 * edfa_power_w
}

/// Transponders needed to carry `rate_gbps` on fibers of the given capacity:
/// `ceil(rate / capacity)`, 0 for an idle link. The count steps up exactly
/// when the rate crosses a capacity multiple.
pub fn transponder_count(rate_gbps: f64, fiber_capacity_gbps: f64) -> u32 {
    debug_assert!(fiber_capacity_gbps > 0.0, "fiber capacity must be positive");
    if rate_gbps <= 0.0 {
        return 0;
    }
    (rate_gbps / fiber_capacity_gbps).ceil() as u32
}

/// Power ledger of one hop of an optical path, W.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HopLedger {
    /// 1-based hop index along the path.
    pub hop: usize,
    /// Noise contribution of the hop's span.
    pub ase_w: f64,
    /// Power forwarded to the next hop.
    pub transmit_w: f64,
    /// Launch power including amplifier draw.
    pub signal_w: f64,
    /// Electrical draw of the hop's router.
    pub router_w: f64,
}

/// End-to-end power of an optical path of identical spans.
#[derive(Debug, Clone, PartialEq)]
pub struct WiredPathResult {
    /// Hops traversed (serving cluster counts as hop 1).
    pub hops: usize,
    /// Rate carried, Gbps.
    pub rate_gbps: f64,
    /// Final hop's launch power, W.
    pub signal_w: f64,
    /// Sum of all awake router draws along the path, W.
    pub router_total_w: f64,
    /// Total path power `P_o = P_s + sum(P_c)`, W.
    pub total_w: f64,
    /// Per-hop breakdown in path order.
    pub per_hop: Vec<HopLedger>,
}

impl WiredPathResult {
    /// CSV dump of the per-hop ledger with header
    /// `hop,transmit_w,ase_w,signal_w,router_w`.
    pub fn ledger_csv(&self) -> String {
        let mut out = String::from("hop,transmit_w,ase_w,signal_w,router_w\n");
        for h in &self.per_hop {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                h.hop, h.transmit_w, h.ase_w, h.signal_w, h.router_w
            ));
        }
        out
    }
}

/// End-to-end power of a path of `hops` identical spans carrying `rate_gbps`,
/// with every path router awake at nodal degree `degree`.
///
/// Each hop applies the span recursion — amplifier count, uncompensated
/// length, noise, forwarded power — carrying the transmit power forward, and
/// adds its router draw. The path total is the final hop's launch power plus
/// the summed router draws. The recursion is seeded with the router's
/// per-slot chassis share.
pub fn wired_path_power(
    span: &FiberSpan,
    router: &RouterModel,
    hops: usize,
    rate_gbps: f64,
    degree: u32,
) -> Result<WiredPathResult> {
    if hops < 1 {
        return Err(Error::InvalidHops(hops));
    }
    if rate_gbps < 0.0 {
        return Err(Error::NegativeRate(rate_gbps * 1e9));
    }
    let edfas = edfa_count(span.length_km, span.edfa_spacing_km)?;
    let uncomp = uncompensated_length(span.length_km, edfas, span.edfa_spacing_km, span.bs_tail_km)?;
    let edfa_power_w = span.edfa_w_per_gbps * rate_gbps;

    let mut prev_w = router.per_slot_power();
    let mut per_hop = Vec::with_capacity(hops);
    let mut router_total_w = 0.0;
    let mut signal_w = 0.0;
    for hop in 1..=hops {
        let ase_w = ase_power(
            span.gain,
            uncomp,
            span.attenuation_db_per_km,
            prev_w,
            rate_gbps,
        );
        let transmit_w = transmit_power(prev_w, rate_gbps, ase_w);
        signal_w = signal_power(transmit_w, edfas, edfa_power_w);
        let router_w = router.router_power(rate_gbps, degree, true);
        router_total_w += router_w;
        per_hop.push(HopLedger {
            hop,
            ase_w,
            transmit_w,
            signal_w,
            router_w,
        });
        prev_w = transmit_w;
    }
    Ok(WiredPathResult {
        hops,
        rate_gbps,
        signal_w,
        router_total_w,
        total_w: signal_w + router_total_w,
        per_hop,
    })
}

/// Energy efficiency of the wired leg: `rate_gbps` delivered for `power_w`
/// consumed, as bit/J.
pub fn wired_ee(rate_gbps: f64, power_w: f64) -> Result<EeResult> {
    EeResult::new(rate_gbps * 1e9, power_w)
}
