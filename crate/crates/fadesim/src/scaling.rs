//! Closed-form sum-rate laws, threshold optimization, regime classification,
//! and the decentralized tradeoff curve.
//!
//! Everything here is analytic: `n` is a real number, so regimes far beyond
//! any simulatable network size (`n = e^50` and up) can be evaluated.

use crate::decentralized::SlackExponents;
use crate::error::{Error, Result};
use crate::fading::FadingModel;
use crate::numeric::{golden_section_max, SQRT_TAU};

/// Closed-form scaling predictions at the optimum threshold.
///
/// `u` and `b` are populated for the log-normal family only: `u` is the
/// shorthand `log t* - M` and `b` the constant making the displayed
/// log-normal sum-rate consistent with the generic law (see
/// [`eq13_constant`]).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingPrediction {
    pub t_star: f64,
    pub r_star: f64,
    pub active_count: f64,
    pub rate_per_link: f64,
    pub u: Option<f64>,
    pub b: Option<f64>,
}

/// Sum-rate `R(t) = nq log(1 + t / (mu n q))` with `q` the exact tail at `t`.
///
/// Returns 0 in the `nq -> 0` limit. `n` is real-valued and must be >= 1,
/// `t` finite and >= 0.
pub fn analytic_sum_rate(n: f64, t: f64, model: &FadingModel) -> f64 {
    assert!(n.is_finite() && n >= 1.0, "analytic_sum_rate needs n >= 1");
    let q = model
        .tail_probability(t)
        .expect("analytic_sum_rate needs finite t >= 0");
    let nq = n * q;
    let scaled = model.mean() * nq;
    if nq <= 0.0 || t == 0.0 || scaled == 0.0 {
        return 0.0;
    }
    let ratio = t / scaled;
    if ratio.is_finite() {
        nq * ratio.ln_1p()
    } else {
        // nq is subnormal; fall back to the log-difference form
        nq * (t.ln() - scaled.ln())
    }
}

/// Achievability bound with the slack sequences kept:
/// `m log(1 + t / (mu m + psi(m)))` where `m = nq - (nq)^(xi + 1/2)`.
///
/// Fails when the effective link count `m` is nonpositive (i.e. `nq <= 1`
/// for admissible exponents).
pub fn theorem1_bound(n: f64, t: f64, model: &FadingModel, slack: &SlackExponents) -> Result<f64> {
    if !(n.is_finite() && n >= 1.0) {
        return Err(Error::invalid(format!("need n >= 1, got {n}")));
    }
    let q = model.tail_probability(t)?;
    let nq = n * q;
    let m = nq - nq.powf(slack.xi() + 0.5);
    if m <= 0.0 {
        return Err(Error::invalid(format!(
            "effective link count nq - xi_n sqrt(nq) = {m} is nonpositive (nq = {nq})"
        )));
    }
    let phi = m.powf(slack.psi());
    Ok(m * (t / (model.mean() * m + phi)).ln_1p())
}

/// Coarse-grid-then-golden-section search specification for
/// [`optimize_threshold`].
///
/// The search coordinate is `t` itself for Rayleigh and `u = log t - M` for
/// log-normal (whose optimum threshold grows like `exp(S sqrt(2 log n))`,
/// far beyond any linear-in-t grid). `upper` defaults to `log n + 10`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchGrid {
    pub upper: Option<f64>,
    pub points: usize,
}

impl Default for SearchGrid {
    fn default() -> Self {
        SearchGrid {
            upper: None,
            points: 10_000,
        }
    }
}

/// Result of a one-dimensional maximization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Optimum {
    pub argument: f64,
    pub value: f64,
}

/// Maximize [`analytic_sum_rate`] over `t > 0`: coarse grid, then
/// golden-section refinement to absolute `t`-tolerance `1e-6`.
pub fn optimize_threshold(n: f64, model: &FadingModel, grid: &SearchGrid) -> Result<Optimum> {
    if !(n.is_finite() && n >= 2.0) {
        return Err(Error::invalid(format!("need n >= 2, got {n}")));
    }
    let upper = grid.upper.unwrap_or(n.ln() + 10.0);
    if !(upper.is_finite() && upper > 0.0) {
        return Err(Error::invalid(format!("bad search upper bound {upper}")));
    }
    let points = grid.points.max(16);
    let to_t = |s: f64| match *model {
        FadingModel::Rayleigh => s,
        FadingModel::LogNormal { location, .. } => (location + s).exp(),
    };
    let objective = |s: f64| analytic_sum_rate(n, to_t(s), model);

    let step = upper / points as f64;
    let mut best_idx = 0usize;
    let mut best_val = f64::NEG_INFINITY;
    for i in 0..=points {
        let v = objective(i as f64 * step);
        if v > best_val {
            best_val = v;
            best_idx = i;
        }
    }
    if best_idx == 0 || best_idx == points {
        return Err(Error::NoInteriorMaximum(format!(
            "grid argmax sits on the boundary (index {best_idx} of {points})"
        )));
    }
    let lo = (best_idx - 1) as f64 * step;
    let hi = (best_idx + 1) as f64 * step;
    // pick the coordinate tolerance so the bracket maps to <= 1e-6 in t
    let xtol = match *model {
        FadingModel::Rayleigh => 1e-9,
        FadingModel::LogNormal { location, .. } => {
            (1e-6 / (location + hi).exp()).clamp(1e-15, 1e-9)
        }
    };
    let (s_star, value) = golden_section_max(objective, lo, hi, xtol);
    Ok(Optimum {
        argument: to_t(s_star),
        value,
    })
}

/// Leading-order Rayleigh optimum-threshold predictions:
/// `t* = log n - 2 log log n + log 2`, `R* = log n - 2 log log n` (an `O(1)`
/// residual is dropped), `k = log^2(n)/2`, `lambda = 2 / log n`.
pub fn rayleigh_predictions(n: f64) -> ScalingPrediction {
    assert!(n.is_finite() && n >= 3.0, "predictions need n >= 3");
    let ln_n = n.ln();
    let ll = ln_n.ln();
    ScalingPrediction {
        t_star: ln_n - 2.0 * ll + std::f64::consts::LN_2,
        r_star: ln_n - 2.0 * ll,
        active_count: 0.5 * ln_n * ln_n,
        rate_per_link: 2.0 / ln_n,
        u: None,
        b: None,
    }
}

/// Constant `B = sqrt(2 pi) exp(-S^2/2) / S` that makes the displayed
/// log-normal sum-rate coincide with the generic law evaluated on the tail
/// approximation (see [`lognormal_displayed_sum_rate`]).
pub fn eq13_constant(scale: f64) -> f64 {
    SQRT_TAU * (-0.5 * scale * scale).exp() / scale
}

/// Log-normal optimum-threshold predictions (leading asymptotic order):
/// with `E = exp(S sqrt(2 log n))`,
/// `t* = exp(M - S^2) E`, `R* = exp(-3S^2/2) E`,
/// `k = exp(-3S^2/2) / (sqrt(8) S) * sqrt(log n) * E`,
/// `lambda = sqrt(8) S / sqrt(log n)`.
pub fn lognormal_predictions(n: f64, location: f64, scale: f64) -> ScalingPrediction {
    assert!(n.is_finite() && n >= 3.0, "predictions need n >= 3");
    assert!(scale > 0.0, "predictions need scale > 0");
    let ln_n = n.ln();
    let growth = (scale * (2.0 * ln_n).sqrt()).exp();
    let damp = (-1.5 * scale * scale).exp();
    let t_star = (location - scale * scale).exp() * growth;
    ScalingPrediction {
        t_star,
        r_star: damp * growth,
        active_count: damp / (8.0f64.sqrt() * scale) * ln_n.sqrt() * growth,
        rate_per_link: 8.0f64.sqrt() * scale / ln_n.sqrt(),
        u: Some(t_star.ln() - location),
        b: Some(eq13_constant(scale)),
    }
}

/// The displayed log-normal sum-rate as a function of `u = log t - M`:
/// `(S / (sqrt(2 pi) u)) n exp(-u^2/(2S^2)) log(1 + B u e^u e^{u^2/(2S^2)} / n)`.
///
/// Location-free: the `M` dependence cancels between `t` and the mean.
pub fn lognormal_displayed_sum_rate(n: f64, u: f64, scale: f64) -> f64 {
    assert!(u > 0.0 && scale > 0.0 && n >= 1.0);
    let gauss = (-u * u / (2.0 * scale * scale)).exp();
    let nq_hat = n * scale / (SQRT_TAU * u) * gauss;
    let inner = eq13_constant(scale) * u * u.exp() / (gauss * n);
    nq_hat * inner.ln_1p()
}

/// The same quantity assembled through the generic law: `n q_hat(t)` times
/// `log(1 + t / (mu n q_hat))` with the closed-form tail approximation and an
/// explicit location parameter. Must agree with
/// [`lognormal_displayed_sum_rate`] to high relative accuracy.
pub fn lognormal_approx_sum_rate(n: f64, u: f64, location: f64, scale: f64) -> Result<f64> {
    let model = FadingModel::log_normal(location, scale)?;
    let t = (location + u).exp();
    let q_hat = model.lognormal_tail_approx(t)?;
    let nq = n * q_hat;
    Ok(nq * (t / (model.mean() * nq)).ln_1p())
}

/// Cutoffs of the finite-`n` regime classifier. The asymptotic law is stated
/// in terms of `k = alpha log n` and `k = n^alpha`; at finite `n` those
/// families overlap, so the classifier works from the surrogates
/// `r1 = k / log n` and `r2 = log k / log n` with adjustable boundaries.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeCutoffs {
    /// Below this `r1` the count is sub-logarithmic.
    pub alpha_low: f64,
    /// Up to this `r1` the count is treated as `alpha log n`.
    pub alpha_high: f64,
    /// Below this `r2` (with `r1` above `alpha_high`) the count is
    /// poly-logarithmic and the sum-rate saturates at `log n`.
    pub midrange_max_log_ratio: f64,
    /// Above this `r2` the count is nearly linear in `n`.
    pub near_linear_min_log_ratio: f64,
}

impl Default for RegimeCutoffs {
    fn default() -> Self {
        RegimeCutoffs {
            alpha_low: 0.25,
            alpha_high: 4.0,
            midrange_max_log_ratio: 0.2,
            near_linear_min_log_ratio: 0.9,
        }
    }
}

/// The five growth regimes of the active-link count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RegimeLabel {
    /// `k = o(log n)`: sub-rate `o(log n)`.
    SubLog,
    /// `k ~ alpha log n`: sum-rate `alpha log(1 + 1/alpha) log n`.
    AlphaLog(f64),
    /// `k` poly-logarithmic but super-logarithmic: sum-rate `log n`.
    MidRange,
    /// `k ~ n^alpha`: sum-rate `(1 - alpha) log n`.
    PowerLaw(f64),
    /// `k ~ n^{1 - o(1)}`: sum-rate back to `o(log n)`.
    NearLinear,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeClassification {
    pub label: RegimeLabel,
    pub predicted_sum_rate: f64,
}

/// Classify an `(n, k)` pair and predict its sum-rate, using the default
/// cutoffs. The `o(log n)` regimes report the refined finite-`n` value
/// `k log(1 + (log n - log k)/k)` instead of a bare order symbol.
pub fn regime_classify(n: f64, k: f64) -> Result<RegimeClassification> {
    regime_classify_with(n, k, &RegimeCutoffs::default())
}

pub fn regime_classify_with(
    n: f64,
    k: f64,
    cutoffs: &RegimeCutoffs,
) -> Result<RegimeClassification> {
    if !(n.is_finite() && n >= 2.0) {
        return Err(Error::invalid(format!("need n >= 2, got {n}")));
    }
    if !(k.is_finite() && (1.0..=n).contains(&k)) {
        return Err(Error::invalid(format!("need 1 <= k <= n, got k = {k}")));
    }
    let ln_n = n.ln();
    let r1 = k / ln_n;
    let r2 = k.ln() / ln_n;
    let refined = k * ((ln_n - k.ln()) / k).ln_1p();
    let (label, predicted_sum_rate) = if r1 < cutoffs.alpha_low {
        (RegimeLabel::SubLog, refined)
    } else if r1 <= cutoffs.alpha_high {
        (RegimeLabel::AlphaLog(r1), r1 * (1.0 / r1).ln_1p() * ln_n)
    } else if r2 < cutoffs.midrange_max_log_ratio {
        (RegimeLabel::MidRange, ln_n)
    } else if r2 <= cutoffs.near_linear_min_log_ratio {
        (RegimeLabel::PowerLaw(r2), (1.0 - r2) * ln_n)
    } else {
        (RegimeLabel::NearLinear, refined)
    };
    Ok(RegimeClassification {
        label,
        predicted_sum_rate,
    })
}

/// Decentralized tradeoff: rate per link `lambda = log(1 + 1/kappa)` as a
/// function of the active-count scaling factor `kappa`.
pub fn tradeoff_decentralized(kappa: f64) -> Result<f64> {
    if !(kappa.is_finite() && kappa > 0.0) {
        return Err(Error::invalid(format!("need kappa > 0, got {kappa}")));
    }
    Ok((1.0 / kappa).ln_1p())
}

/// Default kappa grid for emitting the decentralized tradeoff curve:
/// 64 log-spaced points in `[0.01, 100]`.
pub fn default_kappa_grid() -> Vec<f64> {
    log_spaced(0.01, 100.0, 64)
}

pub(crate) fn log_spaced(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    assert!(points >= 2 && lo > 0.0 && hi > lo);
    let (a, b) = (lo.ln(), hi.ln());
    (0..points)
        .map(|i| (a + (b - a) * i as f64 / (points - 1) as f64).exp())
        .collect()
}
