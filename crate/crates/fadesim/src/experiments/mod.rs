//! Seeded Monte Carlo harness: runs trials of either strategy, aggregates
//! statistics with normal-approximation confidence intervals, compares
//! against the analytic predictions, and persists plot-ready CSV tables.
//!
//! Trials are independent units: trial `i` of run `r` derives its channel
//! from `(master_seed, stream = r * trials + i)` and may execute on any
//! worker. Large-`n` trials never materialize the full `n x n` matrix — the
//! diagonal decides activation, and cross gains are sampled lazily for the
//! active (or candidate) links only, which the positional sampler makes
//! distributionally and bit-wise identical to the full matrix.

pub mod config;
pub mod output;

pub use config::{parse_sweep, DeltaSpec, ExperimentConfig, Scenario, Sweep, ThresholdSpec};

use std::path::PathBuf;

use rayon::prelude::*;

use crate::centralized::{
    build_graph, candidate_pool_from_diagonal, centralized_predictions, default_alpha_grid,
    optimize_delta, solve_max_clique, tradeoff_centralized, DeltaGrid, SolverChoice,
};
use crate::decentralized::jensen_bound_from_parts;
use crate::error::{Error, Result};
use crate::fading::{ChannelMatrix, ChannelSampler, FadingModel, Seed};
use crate::network::{evaluate, NetworkParams, PowerVector};
use crate::scaling::{
    analytic_sum_rate, default_kappa_grid, optimize_threshold, regime_classify,
    tradeoff_decentralized, SearchGrid,
};

/// Salt applied to the master seed for clique-solver randomness, so greedy
/// restarts never consume the same ChaCha words as channel entries.
const SOLVER_SEED_SALT: u64 = 0x9e37_79b9_7f4a_7c15;

/// One Monte Carlo realization.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    /// Global stream index: `(master_seed, trial)` replays this record.
    pub trial: u64,
    pub n: usize,
    /// Resolved activation threshold, when the scenario has one.
    pub t: Option<f64>,
    /// Resolved cross-gain cap, for Strategy 2.
    pub delta: Option<f64>,
    pub active_count: usize,
    pub sum_rate: f64,
    pub rate_per_link: f64,
    pub mean_interference: f64,
    /// Per-realization lower bound on the sum-rate (Jensen for Strategy 1,
    /// the delta-cap bound for Strategy 2).
    pub bound: Option<f64>,
    /// Analytic prediction for this run's parameters.
    pub prediction: Option<f64>,
}

/// Mean / sample sd / 95% normal CI half-width of one metric over trials.
#[derive(Debug, Clone, PartialEq)]
pub struct AggregateRecord {
    pub metric: String,
    pub mean: f64,
    pub sd: f64,
    pub ci95_halfwidth: f64,
    pub trials: u64,
}

/// One resolved execution unit: a single `(n, t or delta)` point.
#[derive(Debug, Clone, PartialEq)]
pub struct ResolvedRun {
    pub n: usize,
    pub t: Option<f64>,
    pub delta: Option<f64>,
    pub alpha: Option<f64>,
    pub k: Option<usize>,
    /// Stream index of this run's trial 0.
    pub trial_base: u64,
}

/// Everything a finished experiment produced.
#[derive(Debug, Clone)]
pub struct ExperimentOutput {
    pub records: Vec<TrialRecord>,
    pub aggregates: Vec<AggregateRecord>,
    pub runs: Vec<ResolvedRun>,
    pub trial_path: PathBuf,
    pub aggregate_path: PathBuf,
}

/// Resolve every `auto` field once per `(n, model)` pair, expanding sweeps
/// into individual runs.
pub fn resolve_runs(cfg: &ExperimentConfig) -> Result<Vec<ResolvedRun>> {
    let mut runs = Vec::new();
    let mut push = |run: ResolvedRun| runs.push(run);
    match cfg.scenario {
        Scenario::Strategy1Threshold => {
            let n = cfg.n[0];
            let t = resolve_threshold(cfg.t.as_ref().unwrap(), n, &cfg.model)?;
            push(ResolvedRun {
                n,
                t: Some(t),
                delta: None,
                alpha: None,
                k: None,
                trial_base: 0,
            });
        }
        Scenario::Strategy1TopK => {
            push(ResolvedRun {
                n: cfg.n[0],
                t: None,
                delta: None,
                alpha: None,
                k: cfg.k,
                trial_base: 0,
            });
        }
        Scenario::Strategy2 => {
            let n = cfg.n[0];
            let alpha = cfg.alpha.unwrap();
            let delta = match cfg.delta.unwrap() {
                DeltaSpec::Fixed(d) => d,
                DeltaSpec::Auto => optimize_delta(alpha, &DeltaGrid::default())?.argument,
            };
            let t = (1.0 - alpha) * (n as f64).ln();
            push(ResolvedRun {
                n,
                t: Some(t),
                delta: Some(delta),
                alpha: Some(alpha),
                k: None,
                trial_base: 0,
            });
        }
        Scenario::ThresholdSweep => {
            let n = cfg.n[0];
            let sweep = match cfg.t {
                Some(ThresholdSpec::Sweep(s)) => s,
                _ => unreachable!("validated"),
            };
            for (i, t) in sweep.values().into_iter().enumerate() {
                push(ResolvedRun {
                    n,
                    t: Some(t),
                    delta: None,
                    alpha: None,
                    k: None,
                    trial_base: i as u64 * cfg.trials,
                });
            }
        }
        Scenario::NSweep => {
            for (i, &n) in cfg.n.iter().enumerate() {
                let t = resolve_threshold(cfg.t.as_ref().unwrap(), n, &cfg.model)?;
                push(ResolvedRun {
                    n,
                    t: Some(t),
                    delta: None,
                    alpha: None,
                    k: None,
                    trial_base: i as u64 * cfg.trials,
                });
            }
        }
        Scenario::TradeoffCurves => {}
    }
    Ok(runs)
}

fn resolve_threshold(spec: &ThresholdSpec, n: usize, model: &FadingModel) -> Result<f64> {
    match spec {
        ThresholdSpec::Fixed(t) => Ok(*t),
        ThresholdSpec::Auto => {
            Ok(optimize_threshold(n as f64, model, &SearchGrid::default())?.argument)
        }
        ThresholdSpec::Sweep(_) => Err(Error::invalid("sweep threshold cannot resolve to one t")),
    }
}

/// Exact evaluation of the active sublinks: builds the active-by-active
/// submatrix (diagonal from `diagonal`, cross gains sampled lazily) and runs
/// the full rate engine on it. Identical, bit for bit, to evaluating the
/// whole matrix with the same activation.
fn evaluate_active(
    sampler: &mut ChannelSampler,
    diagonal: &[f64],
    active: &[usize],
    params: &NetworkParams,
) -> Result<(f64, f64, f64)> {
    let k = active.len();
    if k == 0 {
        return Ok((0.0, 0.0, 0.0));
    }
    let mut gains = vec![0.0f64; k * k];
    for (a, &link_a) in active.iter().enumerate() {
        for (b, &link_b) in active.iter().enumerate() {
            gains[a * k + b] = if a == b {
                diagonal[link_a]
            } else {
                sampler.gain(link_a, link_b)
            };
        }
    }
    let sub = ChannelMatrix::from_gains(k, gains)?;
    let powers = PowerVector::all_on(k, params.power)?;
    let report = evaluate(&sub, &powers, params)?;
    let mean_interference = report.mean_active_interference(&powers);
    Ok((report.sum_rate, report.rate_per_link, mean_interference))
}

/// Run one trial of the configured scenario. Deterministic given
/// `(cfg, run, trial)`.
pub fn run_trial(cfg: &ExperimentConfig, run: &ResolvedRun, trial: u64) -> Result<TrialRecord> {
    let params = NetworkParams::new(cfg.power, cfg.noise)?;
    let stream = run.trial_base + trial;
    let seed = Seed::new(cfg.master_seed, stream);
    let mut sampler = ChannelSampler::new(run.n, cfg.model, seed)?;
    let diagonal = sampler.diagonal();

    let (active, resolved_t, bound_threshold): (Vec<usize>, Option<f64>, Option<f64>) =
        match cfg.scenario {
            Scenario::Strategy1Threshold | Scenario::ThresholdSweep | Scenario::NSweep => {
                let t = run.t.expect("resolved threshold");
                let active = (0..run.n).filter(|i| diagonal[*i] > t).collect();
                (active, Some(t), Some(t))
            }
            Scenario::Strategy1TopK => {
                let k = run.k.expect("validated k");
                let active = crate::decentralized::topk_indices(&diagonal, k)?;
                // the weakest admitted gain lower-bounds every active link
                let floor = active
                    .iter()
                    .map(|i| diagonal[*i])
                    .fold(f64::INFINITY, f64::min);
                let floor = if active.is_empty() { None } else { Some(floor) };
                (active, None, floor)
            }
            Scenario::Strategy2 => {
                let alpha = run.alpha.expect("validated alpha");
                let delta = run.delta.expect("resolved delta");
                let t = run.t.expect("derived t");
                let pool = candidate_pool_from_diagonal(&diagonal, alpha)?;
                if pool.is_empty() {
                    (Vec::new(), Some(t), None)
                } else {
                    let p = pool.len();
                    let mut gains = vec![0.0f64; p * p];
                    for (a, &link_a) in pool.iter().enumerate() {
                        for (b, &link_b) in pool.iter().enumerate() {
                            gains[a * p + b] = if a == b {
                                diagonal[link_a]
                            } else {
                                sampler.gain(link_a, link_b)
                            };
                        }
                    }
                    let sub = ChannelMatrix::from_gains(p, gains)?;
                    let local_pool: Vec<usize> = (0..p).collect();
                    let graph = build_graph(&sub, &local_pool, delta)?;
                    let solver_seed = Seed::new(cfg.master_seed ^ SOLVER_SEED_SALT, stream);
                    let clique = solve_max_clique(&graph, SolverChoice::default(), solver_seed)?;
                    let active: Vec<usize> = clique.members.iter().map(|v| pool[*v]).collect();
                    (active, Some(t), None)
                }
            }
            Scenario::TradeoffCurves => {
                return Err(Error::invalid("tradeoff-curves has no per-trial records"))
            }
        };

    let (sum_rate, rate_per_link, mean_interference) =
        evaluate_active(&mut sampler, &diagonal, &active, &params)?;
    let k = active.len();

    let bound = match cfg.scenario {
        Scenario::Strategy2 => run.delta.map(|delta| {
            let t = run.t.expect("derived t");
            jensen_bound_from_parts(k, t, params.rho(), (k.saturating_sub(1)) as f64 * delta)
        }),
        _ => {
            bound_threshold.map(|t| jensen_bound_from_parts(k, t, params.rho(), mean_interference))
        }
    };

    let prediction = match cfg.scenario {
        Scenario::Strategy1Threshold | Scenario::ThresholdSweep | Scenario::NSweep => Some(
            analytic_sum_rate(run.n as f64, resolved_t.expect("threshold"), &cfg.model),
        ),
        Scenario::Strategy1TopK => {
            if k >= 1 {
                Some(regime_classify(run.n as f64, k as f64)?.predicted_sum_rate)
            } else {
                None
            }
        }
        Scenario::Strategy2 => {
            let alpha = run.alpha.expect("validated alpha");
            let delta = run.delta.expect("resolved delta");
            Some(centralized_predictions(alpha, delta)?.sum_rate_coefficient * (run.n as f64).ln())
        }
        Scenario::TradeoffCurves => None,
    };

    Ok(TrialRecord {
        trial: stream,
        n: run.n,
        t: resolved_t,
        delta: run.delta,
        active_count: k,
        sum_rate,
        rate_per_link,
        mean_interference,
        bound,
        prediction,
    })
}

/// Aggregate the per-trial metrics. Means and deviations are accumulated in
/// record order; the result is independent of how trials were scheduled.
pub fn aggregate(records: &[TrialRecord]) -> Vec<AggregateRecord> {
    fn stats(name: &str, values: &[f64]) -> Option<AggregateRecord> {
        if values.is_empty() {
            return None;
        }
        let count = values.len() as f64;
        let mean = values.iter().sum::<f64>() / count;
        let sd = if values.len() < 2 {
            0.0
        } else {
            (values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (count - 1.0)).sqrt()
        };
        Some(AggregateRecord {
            metric: name.to_string(),
            mean,
            sd,
            ci95_halfwidth: 1.96 * sd / count.sqrt(),
            trials: values.len() as u64,
        })
    }

    let collect =
        |f: fn(&TrialRecord) -> Option<f64>| -> Vec<f64> { records.iter().filter_map(f).collect() };
    [
        stats("k", &collect(|r| Some(r.active_count as f64))),
        stats("sum_rate", &collect(|r| Some(r.sum_rate))),
        stats("rate_per_link", &collect(|r| Some(r.rate_per_link))),
        stats("mean_interference", &collect(|r| Some(r.mean_interference))),
        stats("bound", &collect(|r| r.bound)),
        stats("prediction", &collect(|r| r.prediction)),
    ]
    .into_iter()
    .flatten()
    .collect()
}

/// Run all trials (in parallel), aggregate, and persist the per-trial and
/// aggregate tables. For the `tradeoff-curves` scenario this instead writes
/// the two-scheme frontier table.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentOutput> {
    cfg.validate()?;
    let trial_path = cfg.output.clone();
    let aggregate_path = output::aggregate_sibling_path(&cfg.output);

    if cfg.scenario == Scenario::TradeoffCurves {
        let dec: Vec<(f64, f64)> = default_kappa_grid()
            .into_iter()
            .map(|kappa| Ok((kappa, tradeoff_decentralized(kappa)?)))
            .collect::<Result<_>>()?;
        let cent = tradeoff_centralized(&default_alpha_grid())?;
        let table = output::render_tradeoff_table(&dec, &cent);
        output::write_atomic(&[(trial_path.as_path(), table.as_str())])?;
        return Ok(ExperimentOutput {
            records: Vec::new(),
            aggregates: Vec::new(),
            runs: Vec::new(),
            trial_path: trial_path.clone(),
            aggregate_path: trial_path,
        });
    }

    let runs = resolve_runs(cfg)?;
    let mut records = Vec::with_capacity(runs.len() * cfg.trials as usize);
    for run in &runs {
        let mut batch: Vec<TrialRecord> = (0..cfg.trials)
            .into_par_iter()
            .map(|trial| run_trial(cfg, run, trial).map_err(|e| e.at_trial(run.trial_base + trial)))
            .collect::<Result<_>>()?;
        records.append(&mut batch);
    }
    let aggregates = aggregate(&records);

    let trial_table = output::render_trial_table(&records, &cfg.model);
    let aggregate_table =
        output::render_aggregate_table(&aggregates, cfg.master_seed, records.len() as u64);
    output::write_atomic(&[
        (trial_path.as_path(), trial_table.as_str()),
        (aggregate_path.as_path(), aggregate_table.as_str()),
    ])?;

    Ok(ExperimentOutput {
        records,
        aggregates,
        runs,
        trial_path,
        aggregate_path,
    })
}

/// Which analytic value an aggregate is compared against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PredictionKind {
    /// Mean active count versus `n q(t)`.
    ActiveCount,
    /// Mean rate per link versus the asymptotic per-link rate at the optimum
    /// threshold (`2 / log n` for Rayleigh, `sqrt(8) S / sqrt(log n)` for
    /// log-normal).
    RatePerLink,
    /// Mean sum-rate versus the analytic law at the resolved threshold
    /// (a lower bound, so the default band is one-sided).
    SumRate,
}

impl PredictionKind {
    fn metric(&self) -> &'static str {
        match self {
            PredictionKind::ActiveCount => "k",
            PredictionKind::RatePerLink => "rate_per_link",
            PredictionKind::SumRate => "sum_rate",
        }
    }

    fn default_band(&self) -> (f64, f64) {
        match self {
            PredictionKind::ActiveCount => (0.98, 1.02),
            PredictionKind::RatePerLink => (0.8, 1.25),
            PredictionKind::SumRate => (0.9, f64::INFINITY),
        }
    }
}

/// Outcome of one empirical-versus-analytic comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    pub kind: PredictionKind,
    pub empirical_mean: f64,
    pub ci95_halfwidth: f64,
    pub analytic: f64,
    pub ratio: f64,
    pub difference: f64,
    pub band: (f64, f64),
    pub within_band: bool,
}

pub fn compare_to_prediction(
    out: &ExperimentOutput,
    cfg: &ExperimentConfig,
    kind: PredictionKind,
) -> Result<ComparisonReport> {
    compare_to_prediction_with_band(out, cfg, kind, kind.default_band())
}

pub fn compare_to_prediction_with_band(
    out: &ExperimentOutput,
    cfg: &ExperimentConfig,
    kind: PredictionKind,
    band: (f64, f64),
) -> Result<ComparisonReport> {
    let run = match out.runs.as_slice() {
        [run] => run,
        _ => {
            return Err(Error::invalid(
                "prediction comparison needs a single-run experiment",
            ))
        }
    };
    let agg = out
        .aggregates
        .iter()
        .find(|a| a.metric == kind.metric())
        .ok_or_else(|| Error::invalid(format!("metric {} missing", kind.metric())))?;
    let n = run.n as f64;
    let analytic = match kind {
        PredictionKind::ActiveCount => {
            let t = run
                .t
                .ok_or_else(|| Error::invalid("active-count comparison needs a threshold"))?;
            n * cfg.model.tail_probability(t)?
        }
        PredictionKind::RatePerLink => match cfg.model {
            FadingModel::Rayleigh => 2.0 / n.ln(),
            FadingModel::LogNormal { scale, .. } => 8.0f64.sqrt() * scale / n.ln().sqrt(),
        },
        PredictionKind::SumRate => {
            let t = run
                .t
                .ok_or_else(|| Error::invalid("sum-rate comparison needs a threshold"))?;
            analytic_sum_rate(n, t, &cfg.model)
        }
    };
    let ratio = agg.mean / analytic;
    let within_band = ratio >= band.0 && ratio <= band.1;
    if !within_band {
        log::warn!(
            "{} ratio {ratio:.4} outside configured band [{}, {}]",
            kind.metric(),
            band.0,
            band.1
        );
    }
    Ok(ComparisonReport {
        kind,
        empirical_mean: agg.mean,
        ci95_halfwidth: agg.ci95_halfwidth,
        analytic,
        ratio,
        difference: agg.mean - analytic,
        band,
        within_band,
    })
}
