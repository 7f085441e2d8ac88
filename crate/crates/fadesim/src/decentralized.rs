//! Strategy 1: decentralized threshold activation, its top-k variant, the
//! per-realization Jensen lower bound, and activation-count concentration
//! checks.
//!
//! A link transmits at full power iff its own direct coefficient exceeds the
//! threshold `t` (strictly; a tie switches the link off). Activation reads
//! nothing but the diagonal, which is the decentralization contract.

use crate::error::{Error, Result};
use crate::fading::{ChannelMatrix, ChannelSampler, FadingModel, Seed};
use crate::network::{NetworkParams, PowerVector};

/// Activation threshold `t` together with the derived activation probability
/// `q = 1 - F(t)` of the fading model it was built against.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdPolicy {
    threshold: f64,
    activation_probability: f64,
}

impl ThresholdPolicy {
    pub fn new(model: &FadingModel, threshold: f64) -> Result<Self> {
        let activation_probability = model.tail_probability(threshold)?;
        Ok(ThresholdPolicy {
            threshold,
            activation_probability,
        })
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    pub fn activation_probability(&self) -> f64 {
        self.activation_probability
    }
}

/// Exponents of the slack sequences in the achievability bound:
/// `xi_n = (nq)^xi` with `xi` in `(0, 1/2)` keeps `xi_n = o(sqrt(nq))`, and
/// `psi(m) = m^psi` with `psi` in `(0, 1)` diverges as required.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlackExponents {
    xi: f64,
    psi: f64,
}

impl SlackExponents {
    pub fn new(xi: f64, psi: f64) -> Result<Self> {
        if !(xi > 0.0 && xi < 0.5) {
            return Err(Error::invalid(format!(
                "xi exponent must lie in (0, 1/2), got {xi}"
            )));
        }
        if !(psi > 0.0 && psi < 1.0) {
            return Err(Error::invalid(format!(
                "psi exponent must lie in (0, 1), got {psi}"
            )));
        }
        Ok(SlackExponents { xi, psi })
    }

    pub fn xi(&self) -> f64 {
        self.xi
    }

    pub fn psi(&self) -> f64 {
        self.psi
    }
}

impl Default for SlackExponents {
    fn default() -> Self {
        SlackExponents { xi: 0.25, psi: 0.5 }
    }
}

/// Activity flags from the direct coefficients alone: on iff `g_ii > t`.
pub fn activation_flags(diagonal: &[f64], threshold: f64) -> Vec<bool> {
    diagonal.iter().map(|g| *g > threshold).collect()
}

/// Strategy 1: transmit at `P` iff the direct coefficient exceeds the
/// threshold. Depends only on the diagonal of `g`.
pub fn strategy1_activate(
    g: &ChannelMatrix,
    policy: &ThresholdPolicy,
    params: &NetworkParams,
) -> PowerVector {
    let flags = activation_flags(&g.diagonal(), policy.threshold());
    PowerVector::from_active(flags, params.power).expect("params.power already validated")
}

/// Indices of the `k` largest values, ties broken by lowest index.
pub fn topk_indices(diagonal: &[f64], k: usize) -> Result<Vec<usize>> {
    if k > diagonal.len() {
        return Err(Error::invalid(format!(
            "k = {k} exceeds the number of links {}",
            diagonal.len()
        )));
    }
    let mut order: Vec<usize> = (0..diagonal.len()).collect();
    order.sort_by(|a, b| {
        diagonal[*b]
            .partial_cmp(&diagonal[*a])
            .expect("gains are finite")
            .then(a.cmp(b))
    });
    let mut chosen = order[..k].to_vec();
    chosen.sort_unstable();
    Ok(chosen)
}

/// Activate exactly the `k` links with the largest direct coefficients.
pub fn topk_activate(g: &ChannelMatrix, k: usize, params: &NetworkParams) -> Result<PowerVector> {
    let chosen = topk_indices(&g.diagonal(), k)?;
    let mut flags = vec![false; g.n()];
    for i in chosen {
        flags[i] = true;
    }
    PowerVector::from_active(flags, params.power)
}

/// Jensen sum-rate lower bound from aggregate quantities:
/// `k log(1 + t / (rho + mean interference))`, 0 when `k = 0`.
pub fn jensen_bound_from_parts(k: usize, t: f64, rho: f64, mean_interference: f64) -> f64 {
    if k == 0 {
        return 0.0;
    }
    k as f64 * (t / (rho + mean_interference)).ln_1p()
}

/// Per-realization Jensen lower bound on the sum-rate of an activation that
/// came from Strategy 1 at threshold `t`. Every active link must satisfy
/// `g_ii > t`, otherwise the derivation does not apply and an error is
/// returned.
pub fn jensen_bound(
    g: &ChannelMatrix,
    p: &PowerVector,
    t: f64,
    params: &NetworkParams,
) -> Result<f64> {
    if g.n() != p.len() {
        return Err(Error::invalid("shape mismatch between matrix and powers"));
    }
    let active = p.active_indices();
    if active.is_empty() {
        return Ok(0.0);
    }
    for &i in &active {
        if g.gain(i, i) <= t {
            return Err(Error::invalid(format!(
                "active link {i} has direct gain {} <= t = {t}",
                g.gain(i, i)
            )));
        }
    }
    let mut total_interference = 0.0;
    for &i in &active {
        for &j in &active {
            if j != i {
                total_interference += g.gain(j, i);
            }
        }
    }
    let mean_interference = total_interference / active.len() as f64;
    Ok(jensen_bound_from_parts(
        active.len(),
        t,
        params.rho(),
        mean_interference,
    ))
}

/// Fraction of trials whose activation count lands inside the concentration
/// band `|k - nq| < xi sqrt(nq)`. Each trial samples only the diagonal under
/// seed `(seed.master, seed.stream + trial)`.
pub fn concentration_check(
    n: usize,
    model: FadingModel,
    policy: &ThresholdPolicy,
    trials: u64,
    xi: f64,
    seed: Seed,
) -> Result<f64> {
    if trials == 0 {
        return Err(Error::invalid("concentration check needs trials >= 1"));
    }
    if !(xi.is_finite() && xi > 0.0) {
        return Err(Error::invalid(format!("xi must be > 0, got {xi}")));
    }
    let nq = n as f64 * policy.activation_probability();
    if nq <= 0.0 {
        return Err(Error::invalid(format!(
            "concentration band is degenerate: nq = {nq}"
        )));
    }
    let band = xi * nq.sqrt();
    let mut inside = 0u64;
    for trial in 0..trials {
        let mut sampler =
            ChannelSampler::new(n, model, seed.with_stream(seed.stream.wrapping_add(trial)))?;
        let k = sampler
            .diagonal()
            .iter()
            .filter(|g| **g > policy.threshold())
            .count();
        if (k as f64 - nq).abs() < band {
            inside += 1;
        }
    }
    Ok(inside as f64 / trials as f64)
}
