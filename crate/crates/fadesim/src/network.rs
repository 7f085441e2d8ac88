//! Exact per-link SINR rates, interference, and sum-rate for a channel
//! matrix under an on-off power vector.
//!
//! The per-link rate is `log(1 + g_ii p_i / (eta + sum_{j != i} g_ji p_j))`
//! in nats per channel use. Interference is reported P-normalized
//! (`I_i = sum of active cross gains into receiver i`) while the rate itself
//! is computed in the denormalized form `eta + P I_i`.

use crate::error::{Error, Result};
use crate::fading::ChannelMatrix;

/// Global link/network parameters: maximum transmit power `P` and noise
/// variance `eta`. The normalized noise `rho = eta / P` is derived, never
/// stored.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NetworkParams {
    pub power: f64,
    pub noise: f64,
}

impl NetworkParams {
    pub fn new(power: f64, noise: f64) -> Result<Self> {
        if !power.is_finite() || power <= 0.0 {
            return Err(Error::invalid(format!("power must be > 0, got {power}")));
        }
        if !noise.is_finite() || noise < 0.0 {
            return Err(Error::invalid(format!("noise must be >= 0, got {noise}")));
        }
        Ok(NetworkParams { power, noise })
    }

    /// Normalized noise `rho = eta / P`.
    pub fn rho(&self) -> f64 {
        self.noise / self.power
    }
}

impl Default for NetworkParams {
    /// `P = 1`, `eta = 1` (so `rho = 1`). The analytic forms drop `rho`;
    /// keeping it at 1 makes that neglect visible in validation instead of
    /// hiding it.
    fn default() -> Self {
        NetworkParams {
            power: 1.0,
            noise: 1.0,
        }
    }
}

/// On-off transmit powers: every link is either silent or at full power `P`.
/// Constructed from activity flags so no other power level can ever appear.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerVector {
    power: f64,
    active: Vec<bool>,
}

impl PowerVector {
    pub fn from_active(active: Vec<bool>, power: f64) -> Result<Self> {
        if !power.is_finite() || power <= 0.0 {
            return Err(Error::invalid(format!("power must be > 0, got {power}")));
        }
        Ok(PowerVector { power, active })
    }

    pub fn all_on(n: usize, power: f64) -> Result<Self> {
        Self::from_active(vec![true; n], power)
    }

    pub fn all_off(n: usize, power: f64) -> Result<Self> {
        Self::from_active(vec![false; n], power)
    }

    pub fn len(&self) -> usize {
        self.active.len()
    }

    pub fn is_empty(&self) -> bool {
        self.active.is_empty()
    }

    #[inline]
    pub fn is_active(&self, i: usize) -> bool {
        self.active[i]
    }

    pub fn power(&self) -> f64 {
        self.power
    }

    pub fn active_count(&self) -> usize {
        self.active.iter().filter(|a| **a).count()
    }

    pub fn active_indices(&self) -> Vec<usize> {
        (0..self.active.len()).filter(|i| self.active[*i]).collect()
    }

    /// The literal power values, each exactly `0` or `P`.
    pub fn values(&self) -> Vec<f64> {
        self.active
            .iter()
            .map(|a| if *a { self.power } else { 0.0 })
            .collect()
    }
}

/// Full evaluation of one `(G, p)` pair.
#[derive(Debug, Clone, PartialEq)]
pub struct ThroughputReport {
    /// Per-link rates `r_i` in nats/channel use; exactly 0 for silent links.
    pub rates: Vec<f64>,
    /// P-normalized interference `I_i = sum_{j active, j != i} g_ji`.
    pub interference: Vec<f64>,
    /// Sum-rate `R`.
    pub sum_rate: f64,
    /// Number of active links `k`.
    pub active_count: usize,
    /// Rate per link `lambda = R / k`; 0 when `k = 0` (see `no_active_links`).
    pub rate_per_link: f64,
    /// Set when `k = 0`, where `lambda` is not defined and reported as 0.
    pub no_active_links: bool,
}

impl ThroughputReport {
    /// Mean interference over the active links (0 when none are active).
    pub fn mean_active_interference(&self, p: &PowerVector) -> f64 {
        let k = self.active_count;
        if k == 0 {
            return 0.0;
        }
        let sum: f64 = (0..self.rates.len())
            .filter(|i| p.is_active(*i))
            .map(|i| self.interference[i])
            .sum();
        sum / k as f64
    }
}

fn check_shapes(g: &ChannelMatrix, p: &PowerVector) -> Result<()> {
    if g.n() != p.len() {
        return Err(Error::invalid(format!(
            "shape mismatch: matrix n = {}, power vector n = {}",
            g.n(),
            p.len()
        )));
    }
    Ok(())
}

/// P-normalized interference at receiver `i`: the sum of cross gains from
/// every other active transmitter, in ascending transmitter order.
fn interference_at(g: &ChannelMatrix, p: &PowerVector, i: usize) -> f64 {
    let mut sum = 0.0;
    for j in 0..g.n() {
        if j != i && p.is_active(j) {
            sum += g.gain(j, i);
        }
    }
    sum
}

fn rate_from_parts(
    i: usize,
    direct: f64,
    interference: f64,
    p: &PowerVector,
    params: &NetworkParams,
) -> Result<f64> {
    if !p.is_active(i) {
        return Ok(0.0);
    }
    let signal = direct * p.power();
    let denom = params.noise + p.power() * interference;
    if denom == 0.0 {
        if signal > 0.0 {
            return Err(Error::ZeroDenominator { link: i });
        }
        return Ok(0.0);
    }
    // ln_1p keeps accuracy when interference dwarfs the signal.
    Ok((signal / denom).ln_1p())
}

/// Exact rate of link `i` under `(G, p)`; 0 when the link is silent.
pub fn link_rate(
    i: usize,
    g: &ChannelMatrix,
    p: &PowerVector,
    params: &NetworkParams,
) -> Result<f64> {
    check_shapes(g, p)?;
    if i >= g.n() {
        return Err(Error::invalid(format!("link index {i} out of range")));
    }
    rate_from_parts(i, g.gain(i, i), interference_at(g, p, i), p, params)
}

/// Evaluate every link and aggregate into a [`ThroughputReport`].
pub fn evaluate(
    g: &ChannelMatrix,
    p: &PowerVector,
    params: &NetworkParams,
) -> Result<ThroughputReport> {
    check_shapes(g, p)?;
    let n = g.n();
    let mut rates = Vec::with_capacity(n);
    let mut interference = Vec::with_capacity(n);
    for i in 0..n {
        let inter = interference_at(g, p, i);
        rates.push(rate_from_parts(i, g.gain(i, i), inter, p, params)?);
        interference.push(inter);
    }
    let sum_rate: f64 = rates.iter().sum();
    let active_count = p.active_count();
    let (rate_per_link, no_active_links) = if active_count > 0 {
        (sum_rate / active_count as f64, false)
    } else {
        (0.0, true)
    };
    Ok(ThroughputReport {
        rates,
        interference,
        sum_rate,
        active_count,
        rate_per_link,
        no_active_links,
    })
}

/// Check that scaling all gains and the noise by `c > 0` leaves every rate
/// unchanged to relative `1e-10` (the rate is a ratio, so it must).
pub fn scale_invariance_check(
    g: &ChannelMatrix,
    p: &PowerVector,
    params: &NetworkParams,
    c: f64,
) -> Result<bool> {
    if !c.is_finite() || c <= 0.0 {
        return Err(Error::invalid(format!("scale factor must be > 0, got {c}")));
    }
    let base = evaluate(g, p, params)?;
    let n = g.n();
    let scaled_gains: Vec<f64> = (0..n * n).map(|idx| c * g.gain(idx / n, idx % n)).collect();
    let scaled_g = ChannelMatrix::from_gains(n, scaled_gains)?;
    let scaled_params = NetworkParams::new(params.power, c * params.noise)?;
    let scaled = evaluate(&scaled_g, p, &scaled_params)?;
    Ok(base
        .rates
        .iter()
        .zip(&scaled.rates)
        .all(|(a, b)| (a - b).abs() <= 1e-10 * a.abs().max(b.abs()).max(1.0)))
}
