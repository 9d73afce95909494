//! Sleep/wake transition timing for the resonant supply circuit.
//!
//! A base station that drops antennas into sleep and wakes them again stresses
//! its power rail. The rail is modelled as a series RLC loop (three branch
//! capacitors combined in series) whose lossless oscillation sets the natural
//! period `tau`. Provided here:
//!
//! - element reduction and resonance figures: [`effective_capacitance`],
//!   [`resonant_params`]
//! - lossless waveforms for the sleep (source-free) and wake (step) phase:
//!   [`source_free_voltages`], [`step_response_voltages`]
//! - combined stress constraints on a (sleep `t1`, wake `t2`) pair and the
//!   closed-form timing window: [`constraint_values`], [`is_admissible`],
//!   [`max_t2`], [`max_t1`]
//! - a brute-force feasibility map over the timing square:
//!   [`feasible_region_grid`]
//!
//! All durations are seconds, voltages volts. The timing window functions work
//! on the half-period interval `[0, tau/2]`, where the cosine is monotone.

use crate::error::{Error, Result};
use std::f64::consts::PI;

/// Relative slack applied at the constraint boundary so pairs that sit exactly
/// on it (up to rounding) still count as admissible.
const BOUNDARY_SLACK: f64 = 1e-12;

/// Series RLC loop feeding a base-station power rail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RlcCircuit {
    /// Loop inductance, H.
    pub inductance_h: f64,
    /// First branch capacitance, F.
    pub c1_f: f64,
    /// Second branch capacitance, F.
    pub c2_f: f64,
    /// Third branch capacitance, F.
    pub c3_f: f64,
    /// Loop resistance, ohm; 0 models the idealized lossless rail.
    pub resistance_ohm: f64,
    /// Nominal rail voltage, V.
    pub nominal_v: f64,
}

impl Default for RlcCircuit {
    /// Reference rail: 1 mH loop with three 30 uF branch capacitors (10 uF in
    /// series), lossless, on a 48 V supply. Natural period about 0.63 ms.
    fn default() -> Self {
        RlcCircuit {
            inductance_h: 1e-3,
            c1_f: 30e-6,
            c2_f: 30e-6,
            c3_f: 30e-6,
            resistance_ohm: 0.0,
            nominal_v: 48.0,
        }
    }
}

/// Damping classification of the series loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Damping {
    /// Decay rate exceeds the resonant rate: no oscillation.
    Overdamped,
    /// Decay rate equals the resonant rate exactly.
    CriticallyDamped,
    /// Decay rate below the resonant rate: oscillatory response.
    Underdamped,
}

/// Resonance figures derived from an [`RlcCircuit`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResonantParams {
    /// Neper (decay) frequency R / 2L, 1/s.
    pub alpha_neper_per_s: f64,
    /// Undamped resonant frequency 1 / sqrt(L C), rad/s.
    pub omega_rad_per_s: f64,
    /// Natural period 2 pi sqrt(L C), s.
    pub period_s: f64,
    /// Damping class from comparing alpha against omega.
    pub damping: Damping,
}

/// Series combination of the three branch capacitors:
/// `C_eff = 1 / (1/C1 + 1/C2 + 1/C3)`.
pub fn effective_capacitance(c1_f: f64, c2_f: f64, c3_f: f64) -> Result<f64> {
    for c in [c1_f, c2_f, c3_f] {
        if !(c > 0.0) {
            return Err(Error::NonPositiveCapacitance(c));
        }
    }
    Ok(1.0 / (1.0 / c1_f + 1.0 / c2_f + 1.0 / c3_f))
}

/// Decay rate, resonant frequency, natural period, and damping class of the loop.
///
/// The damping comparison is exact: inputs engineered to sit precisely at the
/// critical point classify as [`Damping::CriticallyDamped`], anything else
/// falls on the strict side it belongs to.
pub fn resonant_params(circuit: &RlcCircuit) -> Result<ResonantParams> {
    if !(circuit.inductance_h > 0.0) {
        return Err(Error::NonPositiveParameter {
            name: "inductance",
            value: circuit.inductance_h,
        });
    }
    if circuit.resistance_ohm < 0.0 {
        return Err(Error::NonPositiveParameter {
            name: "resistance",
            value: circuit.resistance_ohm,
        });
    }
    let c_eff = effective_capacitance(circuit.c1_f, circuit.c2_f, circuit.c3_f)?;
    let alpha = circuit.resistance_ohm / (2.0 * circuit.inductance_h);
    let lc_root = (circuit.inductance_h * c_eff).sqrt();
    let omega = 1.0 / lc_root;
    let damping = if alpha > omega {
        Damping::Overdamped
    } else if alpha == omega {
        Damping::CriticallyDamped
    } else {
        Damping::Underdamped
    };
    Ok(ResonantParams {
        alpha_neper_per_s: alpha,
        omega_rad_per_s: omega,
        period_s: 2.0 * PI * lc_root,
        damping,
    })
}

/// Capacitor and inductor voltage `(u_c, u_l)` of the lossless loop discharging
/// from the nominal rail voltage (sleep phase):
/// `u_c = U cos(2 pi t / tau)`, `u_l = -u_c`.
///
/// `period_s` must be positive.
pub fn source_free_voltages(t_s: f64, nominal_v: f64, period_s: f64) -> (f64, f64) {
    debug_assert!(period_s > 0.0, "period must be positive");
    let u_c = nominal_v * (2.0 * PI * t_s / period_s).cos();
    (u_c, -u_c)
}

/// Capacitor and inductor voltage `(u_c, u_l)` of the lossless loop charging
/// back toward the rail from zero (wake phase):
/// `u_c = U (1 - cos(2 pi t / tau))`, `u_l = U cos(2 pi t / tau)`.
///
/// `period_s` must be positive.
pub fn step_response_voltages(t_s: f64, nominal_v: f64, period_s: f64) -> (f64, f64) {
    debug_assert!(period_s > 0.0, "period must be positive");
    let c = (2.0 * PI * t_s / period_s).cos();
    (nominal_v * (1.0 - c), nominal_v * c)
}

/// Combined stress values `(u_c, u_l)` for a sleep duration `t1` followed by a
/// wake duration `t2`:
///
/// `u_c = U cos(2 pi t1/tau) + U cos(2 pi t2/tau) - U`
/// `u_l = -U cos(2 pi t1/tau) - U cos(2 pi t2/tau)`
///
/// Both must stay at or below the nominal voltage for the pair to be safe.
pub fn constraint_values(t1_s: f64, t2_s: f64, nominal_v: f64, period_s: f64) -> (f64, f64) {
    debug_assert!(period_s > 0.0, "period must be positive");
    let a = (2.0 * PI * t1_s / period_s).cos();
    let b = (2.0 * PI * t2_s / period_s).cos();
    let u_c = nominal_v * a + nominal_v * b - nominal_v;
    let u_l = -nominal_v * a - nominal_v * b;
    (u_c, u_l)
}

/// True when both combined stress values stay at or below the nominal voltage,
/// with a relative slack of 1e-12 at the boundary.
pub fn is_admissible(t1_s: f64, t2_s: f64, nominal_v: f64, period_s: f64) -> bool {
    let (u_c, u_l) = constraint_values(t1_s, t2_s, nominal_v, period_s);
    let limit = nominal_v + BOUNDARY_SLACK * nominal_v.abs();
    u_c <= limit && u_l <= limit
}

/// A timing bound on `[0, tau/2]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimingBound {
    /// The bound itself, seconds, always within `[0, tau/2]`.
    pub seconds: f64,
    /// False when the constraint cannot bind anywhere on the interval and the
    /// bound is just the interval cap `tau/2`.
    pub binding: bool,
}

/// Largest wake duration `t2` the closed-form window allows after sleeping
/// `t1`: `t2 <= tau * arccos(1/2 - cos(2 pi t1/tau)) / (2 pi)`.
///
/// When the arccos argument exceeds 1 no positive wake duration is allowed and
/// the bound is 0; when it falls below -1 the constraint can never bind and
/// the interval cap `tau/2` is returned flagged as non-binding.
pub fn max_t2(t1_s: f64, period_s: f64) -> TimingBound {
    debug_assert!(period_s > 0.0, "period must be positive");
    let arg = 0.5 - (2.0 * PI * t1_s / period_s).cos();
    if arg < -1.0 {
        TimingBound {
            seconds: period_s / 2.0,
            binding: false,
        }
    } else if arg > 1.0 {
        TimingBound {
            seconds: 0.0,
            binding: true,
        }
    } else {
        TimingBound {
            seconds: period_s * arg.acos() / (2.0 * PI),
            binding: true,
        }
    }
}

/// Largest sleep duration `t1` allowed before a wake duration of `t2`. The
/// window is symmetric in its two arguments, so this is [`max_t2`] evaluated
/// at `t2`.
pub fn max_t1(t2_s: f64, period_s: f64) -> TimingBound {
    max_t2(t2_s, period_s)
}

/// Boolean admissibility map over the timing square `[0, tau/2] x [0, tau/2]`.
///
/// Cell `(i, j)` holds [`is_admissible`] evaluated at
/// `t1 = i * (tau/2)/(n-1)`, `t2 = j * (tau/2)/(n-1)`, so both endpoints of
/// each axis are included. Admissibility does not depend on the nominal
/// voltage (both constraints scale with it), so the map is evaluated at 1 V.
#[derive(Debug, Clone)]
pub struct FeasibilityGrid {
    resolution: usize,
    period_s: f64,
    /// Row-major cells: index = i_t1 * resolution + i_t2.
    cells: Vec<bool>,
}

impl FeasibilityGrid {
    /// Points per axis.
    pub fn resolution(&self) -> usize {
        self.resolution
    }

    /// Natural period the grid was built for, s.
    pub fn period_s(&self) -> f64 {
        self.period_s
    }

    /// Time value of axis index `i`, identical for both axes.
    pub fn axis_value(&self, i: usize) -> f64 {
        self.period_s / 2.0 * i as f64 / (self.resolution - 1) as f64
    }

    /// Admissibility of the cell at sleep-axis index `i_t1`, wake-axis index `i_t2`.
    pub fn at(&self, i_t1: usize, i_t2: usize) -> bool {
        self.cells[i_t1 * self.resolution + i_t2]
    }

    /// For a sleep-axis index, the first wake-axis index that is inadmissible,
    /// scanning upward from 0. `None` when the whole column is admissible.
    pub fn first_inadmissible(&self, i_t1: usize) -> Option<usize> {
        (0..self.resolution).find(|&j| !self.at(i_t1, j))
    }

    /// CSV dump with header `t1,t2,admissible`, one line per cell, row-major.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t1,t2,admissible\n");
        for i in 0..self.resolution {
            for j in 0..self.resolution {
                out.push_str(&format!(
                    "{},{},{}\n",
                    self.axis_value(i),
                    self.axis_value(j),
                    self.at(i, j)
                ));
            }
        }
        out
    }
}

/// Brute-force admissibility map of the timing square at `n` points per axis
/// (at least 2; endpoints included).
pub fn feasible_region_grid(period_s: f64, resolution: usize) -> Result<FeasibilityGrid> {
    if resolution < 2 {
        return Err(Error::GridTooSmall(resolution));
    }
    if !(period_s > 0.0) {
        return Err(Error::NonPositiveParameter {
            name: "period",
            value: period_s,
        });
    }
    let mut cells = Vec::with_capacity(resolution * resolution);
    for i in 0..resolution {
        let t1 = period_s / 2.0 * i as f64 / (resolution - 1) as f64;
        for j in 0..resolution {
            let t2 = period_s / 2.0 * j as f64 / (resolution - 1) as f64;
            cells.push(is_admissible(t1, t2, 1.0, period_s));
        }
    }
    Ok(FeasibilityGrid {
        resolution,
        period_s,
        cells,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn effective_capacitance_series_golden() {
        // 1/(1/1 + 1/2 + 1/4) = 4/7
        let c = effective_capacitance(1.0, 2.0, 4.0).unwrap();
        assert_relative_eq!(c, 4.0 / 7.0, max_relative = 1e-15);
    }

    #[test]
    fn effective_capacitance_equal_branches() {
        let c = effective_capacitance(30e-6, 30e-6, 30e-6).unwrap();
        assert_relative_eq!(c, 10e-6, max_relative = 1e-12);
    }

    #[test]
    fn effective_capacitance_rejects_non_positive() {
        assert!(effective_capacitance(0.0, 1.0, 1.0).is_err());
        assert!(effective_capacitance(1.0, -2.0, 1.0).is_err());
    }

    #[test]
    fn resonant_params_critical_point() {
        // R=2, L=1, three 3 F branches -> C_eff = 1: alpha = 1 = omega.
        let p = resonant_params(&RlcCircuit {
            inductance_h: 1.0,
            c1_f: 3.0,
            c2_f: 3.0,
            c3_f: 3.0,
            resistance_ohm: 2.0,
            nominal_v: 1.0,
        })
        .unwrap();
        assert_eq!(p.alpha_neper_per_s, 1.0);
        assert_eq!(p.omega_rad_per_s, 1.0);
        assert_eq!(p.damping, Damping::CriticallyDamped);
    }

    #[test]
    fn resonant_params_lossless_is_underdamped() {
        let p = resonant_params(&RlcCircuit::default()).unwrap();
        assert_eq!(p.alpha_neper_per_s, 0.0);
        assert_eq!(p.damping, Damping::Underdamped);
        // tau = 2 pi / omega
        assert_relative_eq!(p.period_s, 2.0 * PI / p.omega_rad_per_s, max_relative = 1e-12);
        // L = 1e-3, C_eff = 1e-5 -> omega = 1e4 rad/s
        assert_relative_eq!(p.omega_rad_per_s, 1e4, max_relative = 1e-12);
    }

    #[test]
    fn resonant_params_overdamped() {
        let p = resonant_params(&RlcCircuit {
            inductance_h: 1.0,
            c1_f: 3.0,
            c2_f: 3.0,
            c3_f: 3.0,
            resistance_ohm: 10.0,
            nominal_v: 1.0,
        })
        .unwrap();
        assert_eq!(p.damping, Damping::Overdamped);
    }

    #[test]
    fn resonant_params_rejects_bad_elements() {
        let mut c = RlcCircuit::default();
        c.inductance_h = 0.0;
        assert!(resonant_params(&c).is_err());
        let mut c = RlcCircuit::default();
        c.resistance_ohm = -1.0;
        assert!(resonant_params(&c).is_err());
    }

    #[test]
    fn source_free_endpoints() {
        let (uc, ul) = source_free_voltages(0.0, 48.0, 1.0);
        assert_eq!((uc, ul), (48.0, -48.0));
        let (uc, ul) = source_free_voltages(0.5, 48.0, 1.0);
        assert_relative_eq!(uc, -48.0, max_relative = 1e-12);
        assert_relative_eq!(ul, 48.0, max_relative = 1e-12);
    }

    #[test]
    fn source_free_inductor_mirrors_capacitor() {
        for i in 0..200 {
            let t = i as f64 * 0.013;
            let (uc, ul) = source_free_voltages(t, 7.5, 1.0);
            assert_eq!(ul, -uc);
            assert!(uc.abs() <= 7.5 * (1.0 + 1e-12));
        }
    }

    #[test]
    fn source_free_periodicity() {
        for i in 0..50 {
            let t = i as f64 * 0.0173;
            let (a, _) = source_free_voltages(t, 48.0, 1.0);
            let (b, _) = source_free_voltages(t + 1.0, 48.0, 1.0);
            assert_relative_eq!(a, b, max_relative = 1e-9, epsilon = 1e-9);
        }
    }

    #[test]
    fn step_response_starts_at_zero_and_sums_to_nominal() {
        let (uc, ul) = step_response_voltages(0.0, 48.0, 1.0);
        assert_eq!((uc, ul), (0.0, 48.0));
        for i in 0..200 {
            let t = i as f64 * 0.011;
            let (uc, ul) = step_response_voltages(t, 48.0, 1.0);
            assert_relative_eq!(uc + ul, 48.0, max_relative = 1e-12);
            assert!(uc >= 0.0 && uc <= 2.0 * 48.0 * (1.0 + 1e-12));
        }
    }

    #[test]
    fn constraint_values_at_origin() {
        // cos(0) + cos(0) - 1 = 1, -(cos 0 + cos 0) = -2, exactly.
        let (uc, ul) = constraint_values(0.0, 0.0, 48.0, 1.0);
        assert_eq!(uc, 48.0);
        assert_eq!(ul, -96.0);
    }

    #[test]
    fn constraint_values_third_period_boundary() {
        // cos(2 pi/3) = -1/2 on both axes: u_c = -2U, u_l = +U (the u_l boundary).
        let (uc, ul) = constraint_values(1.0 / 3.0, 1.0 / 3.0, 1.0, 1.0);
        assert_relative_eq!(uc, -2.0, max_relative = 1e-12);
        assert_relative_eq!(ul, 1.0, max_relative = 1e-12);
    }

    #[test]
    fn constraint_values_symmetric_in_arguments() {
        for (a, b) in [(0.1, 0.37), (0.02, 0.49), (0.25, 0.3)] {
            assert_eq!(
                constraint_values(a, b, 5.0, 1.0),
                constraint_values(b, a, 5.0, 1.0)
            );
        }
    }

    #[test]
    fn admissibility_examples() {
        // Origin sits on the u_c boundary: admissible.
        assert!(is_admissible(0.0, 0.0, 48.0, 1.0));
        // The u_l boundary point is admissible thanks to the slack.
        assert!(is_admissible(1.0 / 3.0, 1.0 / 3.0, 48.0, 1.0));
        // Both at half period: u_l = +2U, clearly out.
        assert!(!is_admissible(0.5, 0.5, 48.0, 1.0));
        // Mixed corners stay inside.
        assert!(is_admissible(0.0, 0.5, 48.0, 1.0));
        assert!(is_admissible(0.5, 0.0, 48.0, 1.0));
    }

    #[test]
    fn max_t2_spot_values() {
        // t1 = 0: arccos(-1/2)/(2 pi) = 1/3 of the period.
        let b = max_t2(0.0, 1.0);
        assert!(b.binding);
        assert_relative_eq!(b.seconds, 1.0 / 3.0, max_relative = 1e-12);
        // t1 = tau/4: arccos(1/2)/(2 pi) = 1/6 of the period.
        let b = max_t2(0.25, 1.0);
        assert!(b.binding);
        assert_relative_eq!(b.seconds, 1.0 / 6.0, max_relative = 1e-12);
        // t1 = tau/2: argument 1.5 exceeds 1, no wake duration allowed.
        let b = max_t2(0.5, 1.0);
        assert!(b.binding);
        assert_eq!(b.seconds, 0.0);
    }

    #[test]
    fn max_t2_scales_with_period() {
        let tau = 6.283e-4;
        assert_relative_eq!(max_t2(0.0, tau).seconds, tau / 3.0, max_relative = 1e-12);
        assert_relative_eq!(max_t2(tau / 4.0, tau).seconds, tau / 6.0, max_relative = 1e-12);
    }

    #[test]
    fn max_t1_is_symmetric_twin() {
        for i in 0..=100 {
            let t = 0.5 * i as f64 / 100.0;
            assert_eq!(max_t1(t, 1.0), max_t2(t, 1.0));
        }
    }

    #[test]
    fn max_t2_monotone_down_to_exhaustion() {
        // On [0, tau/3] the bound strictly decreases, then stays pinned at 0.
        let mut prev = f64::INFINITY;
        for i in 0..=1000 {
            let t1 = 0.5 * i as f64 / 1000.0;
            let b = max_t2(t1, 1.0).seconds;
            if t1 <= 1.0 / 3.0 {
                assert!(b < prev, "bound must strictly decrease at t1={t1}");
            } else {
                assert_eq!(b, 0.0);
            }
            prev = b;
        }
    }

    /// Root-finding oracle: solve cos(2 pi t2/tau) = 1/2 - cos(2 pi t1/tau) by
    /// bisection on [0, tau/2] and compare against the arccos closed form.
    ///
    /// The sweep stops one step short of t1 = tau/3: there the root sits where
    /// the cosine is flat (locally quadratic), so no double-precision method
    /// can place it more tightly than a few nanoseconds of tau — that corner
    /// gets its own order-of-magnitude assertion instead.
    #[test]
    fn max_t2_matches_bisection_oracle() {
        let tau = 1.0;
        for i in 0..60 {
            let t1 = tau / 3.0 * i as f64 / 60.0; // the binding range
            let target = 0.5 - (2.0 * PI * t1 / tau).cos();
            let (mut lo, mut hi) = (0.0f64, tau / 2.0);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                // cos is decreasing on [0, pi]: value above target means t2 can grow.
                if (2.0 * PI * mid / tau).cos() > target {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let oracle = 0.5 * (lo + hi);
            assert_relative_eq!(max_t2(t1, tau).seconds, oracle, epsilon = 1e-10);
        }
        assert!(max_t2(tau / 3.0, tau).seconds < 1e-8);
    }

    #[test]
    fn grid_corner_cells() {
        // Degenerate 2x2 grid covers exactly the four corners of the square.
        let g = feasible_region_grid(1.0, 2).unwrap();
        assert!(g.at(0, 0));
        assert!(g.at(0, 1));
        assert!(g.at(1, 0));
        assert!(!g.at(1, 1));
    }

    #[test]
    fn grid_axis_values_span_half_period() {
        let g = feasible_region_grid(2.0, 5).unwrap();
        assert_eq!(g.axis_value(0), 0.0);
        assert_relative_eq!(g.axis_value(4), 1.0, max_relative = 1e-15);
    }

    #[test]
    fn grid_matches_pointwise_admissibility() {
        let g = feasible_region_grid(1.0, 41).unwrap();
        for i in 0..41 {
            for j in 0..41 {
                assert_eq!(
                    g.at(i, j),
                    is_admissible(g.axis_value(i), g.axis_value(j), 1.0, 1.0)
                );
            }
        }
    }

    #[test]
    fn grid_csv_has_one_line_per_cell() {
        let g = feasible_region_grid(1.0, 4).unwrap();
        let csv = g.to_csv();
        assert_eq!(csv.lines().count(), 1 + 16);
        assert!(csv.starts_with("t1,t2,admissible\n"));
        assert!(csv.ends_with('\n'));
    }

    #[test]
    fn grid_rejects_degenerate_resolution() {
        assert!(matches!(
            feasible_region_grid(1.0, 1),
            Err(Error::GridTooSmall(1))
        ));
        assert!(feasible_region_grid(0.0, 10).is_err());
    }
}
