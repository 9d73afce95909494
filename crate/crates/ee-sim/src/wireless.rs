//! Large-array downlink model: random channels, zero-forcing beamforming,
//! per-user power allocation, and the closed-form rate law used for sweeps.
//!
//! Channels are complex Gaussian with unit-variance entries, drawn from a
//! seeded generator so every run is reproducible. The precoder inverts the
//! channel Gram matrix; its squared Frobenius norm is the quantity whose
//! ensemble average the Monte-Carlo estimator and the closed-form limit both
//! target, which is what lets the sweep scenarios replace per-drop averaging
//! with a deterministic rate law.

use crate::error::{Error, Result};
use nalgebra::{Cholesky, DMatrix};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{FRAC_1_SQRT_2, PI};

/// Antennas the allocation rule provisions per admitted user.
pub const ANTENNAS_PER_USER: u32 = 2;

/// Gram-matrix condition number beyond which a channel is treated as
/// numerically singular.
pub const CONDITION_LIMIT: f64 = 1e12;

/// A rate/power pair with the derived energy efficiency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EeResult {
    /// Delivered rate, bit/s.
    pub rate_bps: f64,
    /// Power drawn while delivering it, W.
    pub power_w: f64,
    /// `rate_bps / power_w`, bit/J.
    pub efficiency_bits_per_joule: f64,
}

impl EeResult {
    /// Couples a non-negative rate with a strictly positive power draw.
    pub fn new(rate_bps: f64, power_w: f64) -> Result<Self> {
        if !(power_w > 0.0) {
            return Err(Error::NonPositivePower(power_w));
        }
        if rate_bps < 0.0 {
            return Err(Error::NegativeRate(rate_bps));
        }
        Ok(EeResult {
            rate_bps,
            power_w,
            efficiency_bits_per_joule: rate_bps / power_w,
        })
    }
}

/// One standard-normal pair via the Box-Muller transform. The uniform draw is
/// reflected to (0, 1] so the logarithm never sees zero.
pub(crate) fn standard_normal_pair(rng: &mut ChaCha8Rng) -> (f64, f64) {
    let u1: f64 = 1.0 - rng.gen::<f64>();
    let u2: f64 = rng.gen();
    let radius = (-2.0 * u1.ln()).sqrt();
    let angle = 2.0 * PI * u2;
    (radius * angle.cos(), radius * angle.sin())
}

/// Draws a `users x antennas` channel matrix with independent complex
/// Gaussian entries of unit variance (real and imaginary parts each carry
/// half). Entries are filled row by row, so a given seed always produces the
/// same matrix.
pub fn gen_channel(users: usize, antennas: usize, seed: u64) -> Result<DMatrix<Complex64>> {
    if users == 0 || antennas == 0 {
        return Err(Error::ChannelDimensions { users, antennas });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut h = DMatrix::zeros(users, antennas);
    for k in 0..users {
        for n in 0..antennas {
            let (re, im) = standard_normal_pair(&mut rng);
            h[(k, n)] = Complex64::new(re, im) * FRAC_1_SQRT_2;
        }
    }
    Ok(h)
}

/// Zero-forcing precoder `W = H^H (H H^H)^{-1}` for a `users x antennas`
/// channel. Needs at least as many antennas as users; a Gram matrix whose
/// condition number exceeds [`CONDITION_LIMIT`] is rejected as singular.
pub fn zf_precoder(h: &DMatrix<Complex64>) -> Result<DMatrix<Complex64>> {
    let (users, antennas) = h.shape();
    if antennas < users {
        return Err(Error::InsufficientAntennas { antennas, users });
    }
    let gram = h * h.adjoint();
    let singular_values = gram.clone().svd(false, false).singular_values;
    let s_max = singular_values.iter().cloned().fold(0.0_f64, f64::max);
    let s_min = singular_values.iter().cloned().fold(f64::INFINITY, f64::min);
    let condition = if s_min > 0.0 { s_max / s_min } else { f64::INFINITY };
    if !(condition < CONDITION_LIMIT) {
        return Err(Error::SingularChannel { condition });
    }
    let chol = Cholesky::new(gram).ok_or(Error::SingularChannel { condition })?;
    // G is Hermitian, so W = H^H G^{-1} is the adjoint of the solution of
    // G Z = H.
    Ok(chol.solve(h).adjoint())
}

/// Average per-user precoder cost `||W||_F^2 / K` for a precoder with one
/// column per user.
pub fn precoder_norm_gamma(w: &DMatrix<Complex64>) -> f64 {
    w.norm_squared() / w.ncols() as f64
}

/// Post-precoding SINR of user `k` at per-user transmit SNR `rho`:
/// desired-column power over residual interference plus unit noise.
pub fn sinr(h: &DMatrix<Complex64>, w: &DMatrix<Complex64>, rho: f64, k: usize) -> Result<f64> {
    if !(rho > 0.0) {
        return Err(Error::NonPositiveSnr(rho));
    }
    let users = h.nrows();
    if k >= users {
        return Err(Error::UserIndex { index: k, count: users });
    }
    let row = h.row(k);
    let mut signal = 0.0;
    let mut interference = 0.0;
    for j in 0..w.ncols() {
        let coupling = (row * w.column(j))[(0, 0)].norm_sqr();
        if j == k {
            signal = coupling;
        } else {
            interference += coupling;
        }
    }
    Ok(rho * signal / (rho * interference + 1.0))
}

/// Shannon rate `B log2(1 + sinr)` of one user, bit/s.
pub fn per_ue_rate(bandwidth_hz: f64, sinr: f64) -> Result<f64> {
    if !(bandwidth_hz > 0.0) {
        return Err(Error::NonPositiveParameter {
            name: "bandwidth_hz",
            value: bandwidth_hz,
        });
    }
    if sinr < 0.0 {
        return Err(Error::NegativeSinr(sinr));
    }
    Ok(bandwidth_hz * (1.0 + sinr).log2())
}

/// Transmit power a base station actually spends on `users` admitted users:
/// the [`ANTENNAS_PER_USER`]-per-user share `P_bs * 2K / n` of its budget.
/// The array must hold at least two antennas per user.
pub fn power_alloc_beta(p_bs_w: f64, users: usize, antennas: usize) -> Result<f64> {
    if !(p_bs_w > 0.0) {
        return Err(Error::NonPositivePower(p_bs_w));
    }
    let provisioned = users * ANTENNAS_PER_USER as usize;
    if antennas < provisioned {
        return Err(Error::InsufficientAntennas { antennas, users });
    }
    Ok(p_bs_w * provisioned as f64 / antennas as f64)
}

/// Per-trial generator seed: a SplitMix64 hash of the base seed and the trial
/// index, so trials are decorrelated but the whole run replays from one seed.
fn trial_seed(seed: u64, trial: u64) -> u64 {
    let mut z = seed ^ trial.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Monte-Carlo estimate of the mean squared precoder norm `E[||W||_F^2]`
/// over independent channel draws.
pub fn wishart_trace_mc(antennas: usize, users: usize, trials: u32, seed: u64) -> Result<f64> {
    if trials == 0 {
        return Err(Error::NonPositiveParameter { name: "trials", value: 0.0 });
    }
    if antennas <= users {
        return Err(Error::DivergentTraceLimit { antennas, users });
    }
    let mut acc = 0.0;
    for trial in 0..trials {
        let h = gen_channel(users, antennas, trial_seed(seed, trial as u64))?;
        let w = zf_precoder(&h)?;
        acc += w.norm_squared();
    }
    Ok(acc / trials as f64)
}

/// Closed-form limit `K / (M - K)` of the mean squared precoder norm for a
/// `K`-user, `M`-antenna array. Defined only for `M > K`.
pub fn wishart_trace_limit(antennas: usize, users: usize) -> Result<f64> {
    if users == 0 {
        return Err(Error::ChannelDimensions { users, antennas });
    }
    if antennas <= users {
        return Err(Error::DivergentTraceLimit { antennas, users });
    }
    Ok(users as f64 / (antennas - users) as f64)
}

/// Ergodic per-user rate in the large-array regime, bit/s: the SINR collapses
/// to `rho * K` divided by the closed-form precoder-norm limit, i.e.
/// `rho * (M - K)` at unit noise.
pub fn ergodic_sum_rate(antennas: usize, users: usize, rho: f64, bandwidth_hz: f64) -> Result<f64> {
    if !(rho > 0.0) {
        return Err(Error::NonPositiveSnr(rho));
    }
    let limit = wishart_trace_limit(antennas, users)?;
    per_ue_rate(bandwidth_hz, rho * users as f64 / limit)
}

/// Total access-side power draw: transmit power actually allocated plus the
/// baseband machine rooms kept on.
pub fn total_wireless_power(beta_total_w: f64, machine_rooms: u32, machine_room_w: f64) -> f64 {
    beta_total_w + machine_rooms as f64 * machine_room_w
}
