//! Command-line surface: experiment runner, analytic curve emitters,
//! optimizers, regime queries, and the selfcheck bundle.
//!
//! Exit codes: 0 on success, 1 on a domain error, 2 on a usage error.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use crate::centralized::{
    build_graph, centralized_predictions, edge_probability, max_clique_exact, max_clique_greedy,
    optimize_delta, DeltaGrid, InterferenceGraph,
};
use crate::decentralized::{jensen_bound, strategy1_activate, ThresholdPolicy};
use crate::error::Error;
use crate::experiments::{
    self, output, parse_sweep, DeltaSpec, ExperimentConfig, Scenario, ThresholdSpec,
};
use crate::fading::{sample_channel_matrix, ChannelMatrix, ChannelSampler, FadingModel, Seed};
use crate::network::{evaluate, NetworkParams};
use crate::scaling::{
    analytic_sum_rate, optimize_threshold, rayleigh_predictions, regime_classify, SearchGrid,
};

#[derive(Debug)]
pub enum CliError {
    /// Wrong invocation; exits with code 2.
    Usage(String),
    /// Valid invocation that failed; exits with code 1.
    Domain(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

#[derive(Parser, Debug)]
#[command(
    name = "fadesim",
    version,
    about = "On-off power allocation and throughput scaling in fading wireless networks"
)]
pub struct Cli {
    /// Worker threads for trial parallelism (default: all cores).
    #[arg(long, global = true)]
    pub workers: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run a seeded Monte Carlo experiment; writes per-trial and aggregate CSVs.
    Simulate(SimulateArgs),
    /// Emit the analytic curve (t, q, R(t)) over a threshold sweep.
    Analytic(AnalyticArgs),
    /// Maximize the analytic sum-rate over the activation threshold.
    OptimizeThreshold(OptimizeThresholdArgs),
    /// Maximize the centralized sum-rate coefficient over the cross-gain cap.
    OptimizeDelta(OptimizeDeltaArgs),
    /// Emit the rate-per-link versus active-link-count tradeoff curves.
    Tradeoff(TradeoffArgs),
    /// Classify an (n, k) operating point and predict its sum-rate.
    Regimes(RegimesArgs),
    /// Run the built-in verification bundle (under a minute).
    Selfcheck,
}

#[derive(Args, Debug)]
pub struct SimulateArgs {
    /// Config file (flat key = value format); excludes every inline flag.
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,

    /// strategy1-threshold | strategy1-topk | strategy2 | threshold-sweep |
    /// n-sweep | tradeoff-curves (inferred from flags when omitted).
    #[arg(long)]
    pub scenario: Option<String>,

    /// rayleigh | lognormal
    #[arg(long)]
    pub model: Option<String>,

    /// Number of links; a comma list sweeps over sizes.
    #[arg(long, value_delimiter = ',', value_parser = clap::value_parser!(u64).range(1..))]
    pub n: Option<Vec<u64>>,

    /// Log-normal location parameter.
    #[arg(long, visible_alias = "location")]
    pub m: Option<f64>,

    /// Log-normal scale parameter.
    #[arg(long, visible_alias = "scale")]
    pub s: Option<f64>,

    /// Maximum transmit power P (default 1).
    #[arg(long)]
    pub power: Option<f64>,

    /// Noise variance eta (default 1).
    #[arg(long)]
    pub noise: Option<f64>,

    /// Activation threshold: a number, `auto`, or a MIN:MAX:STEPS sweep.
    #[arg(long, visible_alias = "threshold")]
    pub t: Option<String>,

    /// Active-link count for the top-k variant.
    #[arg(long)]
    pub k: Option<usize>,

    /// Candidate-pool exponent of the centralized strategy.
    #[arg(long, visible_alias = "pool-exponent")]
    pub alpha: Option<f64>,

    /// Cross-gain cap of the centralized strategy: a number or `auto`.
    #[arg(long, visible_alias = "cross-gain-cap")]
    pub delta: Option<String>,

    /// Monte Carlo trials.
    #[arg(long)]
    pub trials: Option<u64>,

    /// Master seed; trial i draws from stream i.
    #[arg(long, visible_alias = "master-seed")]
    pub seed: Option<u64>,

    /// Per-trial CSV path; the aggregate lands at <stem>_aggregate.csv.
    #[arg(long, visible_alias = "output")]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct AnalyticArgs {
    /// rayleigh | lognormal
    #[arg(long, default_value = "rayleigh")]
    pub model: String,

    /// Number of links (real-valued; analytic only).
    #[arg(long)]
    pub n: f64,

    #[arg(long, visible_alias = "location")]
    pub m: Option<f64>,

    #[arg(long, visible_alias = "scale")]
    pub s: Option<f64>,

    /// Threshold sweep MIN:MAX:STEPS.
    #[arg(long = "sweep-t", value_name = "MIN:MAX:STEPS")]
    pub sweep_t: String,

    #[arg(long, visible_alias = "output")]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct OptimizeThresholdArgs {
    #[arg(long, default_value = "rayleigh")]
    pub model: String,

    /// Number of links (real-valued; analytic only).
    #[arg(long)]
    pub n: f64,

    #[arg(long, visible_alias = "location")]
    pub m: Option<f64>,

    #[arg(long, visible_alias = "scale")]
    pub s: Option<f64>,
}

#[derive(Args, Debug)]
pub struct OptimizeDeltaArgs {
    /// Candidate-pool exponent in (0, 1).
    #[arg(long)]
    pub alpha: f64,
}

#[derive(Args, Debug)]
pub struct TradeoffArgs {
    /// dec | cent | both
    #[arg(long, default_value = "both")]
    pub scheme: String,

    #[arg(long, visible_alias = "output")]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct RegimesArgs {
    /// Number of links (real-valued; analytic only).
    #[arg(long)]
    pub n: f64,

    /// Active-link counts to classify.
    #[arg(long, value_delimiter = ',')]
    pub k: Vec<f64>,
}

/// Build the fading model from CLI-style model/m/s values.
fn parse_model(model: &str, m: Option<f64>, s: Option<f64>) -> Result<FadingModel, CliError> {
    match model {
        "rayleigh" => {
            if m.is_some() || s.is_some() {
                return Err(usage("--m/--s apply to the lognormal model only"));
            }
            Ok(FadingModel::Rayleigh)
        }
        "lognormal" => {
            let scale = s.ok_or_else(|| usage("lognormal model requires --s"))?;
            FadingModel::log_normal(m.unwrap_or(0.0), scale).map_err(CliError::Domain)
        }
        other => Err(usage(format!(
            "unknown model `{other}` (expected rayleigh or lognormal)"
        ))),
    }
}

impl SimulateArgs {
    fn any_inline(&self) -> bool {
        self.scenario.is_some()
            || self.model.is_some()
            || self.n.is_some()
            || self.m.is_some()
            || self.s.is_some()
            || self.power.is_some()
            || self.noise.is_some()
            || self.t.is_some()
            || self.k.is_some()
            || self.alpha.is_some()
            || self.delta.is_some()
            || self.trials.is_some()
            || self.seed.is_some()
            || self.out.is_some()
    }

    fn infer_scenario(&self, n_count: usize) -> Result<Scenario, CliError> {
        if let Some(name) = &self.scenario {
            return Scenario::parse(name).map_err(|e| usage(e.to_string()));
        }
        if self.alpha.is_some() || self.delta.is_some() {
            return Ok(Scenario::Strategy2);
        }
        if self.k.is_some() {
            return Ok(Scenario::Strategy1TopK);
        }
        if let Some(t) = &self.t {
            if t.contains(':') {
                return Ok(Scenario::ThresholdSweep);
            }
        }
        if n_count > 1 {
            return Ok(Scenario::NSweep);
        }
        Ok(Scenario::Strategy1Threshold)
    }

    fn into_config(self) -> Result<ExperimentConfig, CliError> {
        if let Some(path) = &self.config {
            if self.any_inline() {
                return Err(usage(
                    "--config conflicts with the inline experiment flags; pick one",
                ));
            }
            return ExperimentConfig::from_file(path).map_err(CliError::Domain);
        }
        let n: Vec<usize> = self
            .n
            .as_ref()
            .map(|list| list.iter().map(|v| *v as usize).collect())
            .unwrap_or_default();
        let scenario = self.infer_scenario(n.len())?;
        let analytic_only = scenario == Scenario::TradeoffCurves;
        let model = match self.model.as_deref() {
            Some(name) => parse_model(name, self.m, self.s)?,
            None if analytic_only => FadingModel::Rayleigh,
            None => return Err(usage("missing --model")),
        };
        if n.is_empty() && !analytic_only {
            return Err(usage("missing --n"));
        }
        let t = match &self.t {
            None => None,
            Some(text) if text == "auto" => Some(ThresholdSpec::Auto),
            Some(text) if text.contains(':') => Some(ThresholdSpec::Sweep(
                parse_sweep(text).map_err(|e| usage(e.to_string()))?,
            )),
            Some(text) => {
                let v: f64 = text
                    .parse()
                    .map_err(|_| usage(format!("bad --t value `{text}`")))?;
                if !v.is_finite() || v < 0.0 {
                    return Err(usage("--t must be finite and >= 0"));
                }
                Some(ThresholdSpec::Fixed(v))
            }
        };
        let delta = match &self.delta {
            None => None,
            Some(text) if text == "auto" => Some(DeltaSpec::Auto),
            Some(text) => {
                let v: f64 = text
                    .parse()
                    .map_err(|_| usage(format!("bad --delta value `{text}`")))?;
                if !v.is_finite() || v <= 0.0 {
                    return Err(usage("--delta must be finite and > 0"));
                }
                Some(DeltaSpec::Fixed(v))
            }
        };
        let config = ExperimentConfig {
            scenario,
            n,
            model,
            power: self.power.unwrap_or(1.0),
            noise: self.noise.unwrap_or(1.0),
            t,
            k: self.k,
            alpha: self.alpha,
            delta,
            trials: match self.trials {
                Some(t) => t,
                None if analytic_only => 0,
                None => return Err(usage("missing --trials")),
            },
            master_seed: match self.seed {
                Some(s) => s,
                None if analytic_only => 0,
                None => return Err(usage("missing --seed")),
            },
            output: self.out.ok_or_else(|| usage("missing --out"))?,
        };
        config.validate().map_err(|e| usage(e.to_string()))?;
        Ok(config)
    }
}

pub fn run(cli: Cli) -> Result<i32, CliError> {
    if let Some(workers) = cli.workers {
        // a failure just means a pool already exists (e.g. under tests)
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build_global();
    }
    match cli.command {
        Command::Simulate(args) => run_simulate(args),
        Command::Analytic(args) => run_analytic(args),
        Command::OptimizeThreshold(args) => run_optimize_threshold(args),
        Command::OptimizeDelta(args) => run_optimize_delta(args),
        Command::Tradeoff(args) => run_tradeoff(args),
        Command::Regimes(args) => run_regimes(args),
        Command::Selfcheck => Ok(run_selfcheck()),
    }
}

fn run_simulate(args: SimulateArgs) -> Result<i32, CliError> {
    let config = args.into_config()?;
    let out = experiments::run_experiment(&config)?;
    println!("scenario      = {}", config.scenario.label());
    println!("model         = {}", output::model_label(&config.model));
    println!("master_seed   = {}", config.master_seed);
    println!("trials        = {}", config.trials);
    for run in &out.runs {
        let mut line = format!("run n={}", run.n);
        if let Some(t) = run.t {
            line.push_str(&format!(" t={t:.6}"));
        }
        if let Some(d) = run.delta {
            line.push_str(&format!(" delta={d:.6}"));
        }
        if let Some(a) = run.alpha {
            line.push_str(&format!(" alpha={a}"));
        }
        if let Some(k) = run.k {
            line.push_str(&format!(" k={k}"));
        }
        println!("{line}");
    }
    for agg in &out.aggregates {
        println!(
            "{:<18} mean={:<14.6} sd={:<14.6} ci95=+-{:.6} ({} trials)",
            agg.metric, agg.mean, agg.sd, agg.ci95_halfwidth, agg.trials
        );
    }
    println!("wrote {}", out.trial_path.display());
    if out.aggregate_path != out.trial_path {
        println!("wrote {}", out.aggregate_path.display());
    }
    Ok(0)
}

fn run_analytic(args: AnalyticArgs) -> Result<i32, CliError> {
    let model = parse_model(&args.model, args.m, args.s)?;
    if !(args.n.is_finite() && args.n >= 2.0) {
        return Err(usage("--n must be >= 2"));
    }
    let sweep = parse_sweep(&args.sweep_t).map_err(|e| usage(e.to_string()))?;
    let mut table = String::from("t,q,sum_rate\n");
    let mut peak = (0.0f64, 0.0f64, f64::NEG_INFINITY);
    for t in sweep.values() {
        let q = model.tail_probability(t)?;
        let r = analytic_sum_rate(args.n, t, &model);
        if r > peak.2 {
            peak = (t, q, r);
        }
        table.push_str(&format!(
            "{},{},{}\n",
            output::format_sig9(t),
            output::format_sig9(q),
            output::format_sig9(r)
        ));
    }
    output::write_atomic(&[(args.out.as_path(), table.as_str())])?;
    println!(
        "peak: t={:.6} q={:.6e} sum_rate={:.6}",
        peak.0, peak.1, peak.2
    );
    println!("wrote {}", args.out.display());
    Ok(0)
}

fn run_optimize_threshold(args: OptimizeThresholdArgs) -> Result<i32, CliError> {
    let model = parse_model(&args.model, args.m, args.s)?;
    if !(args.n.is_finite() && args.n >= 2.0) {
        return Err(usage("--n must be >= 2"));
    }
    let opt = optimize_threshold(args.n, &model, &SearchGrid::default())?;
    println!("t_star  = {:.9}", opt.argument);
    println!("r_star  = {:.9}", opt.value);
    match model {
        FadingModel::Rayleigh => {
            if args.n >= 3.0 {
                let pred = rayleigh_predictions(args.n);
                println!("t_star_closed_form = {:.9} (leading order)", pred.t_star);
            }
        }
        FadingModel::LogNormal { location, scale } => {
            if args.n >= 3.0 {
                let pred = crate::scaling::lognormal_predictions(args.n, location, scale);
                println!("t_star_closed_form = {:.9} (leading order)", pred.t_star);
            }
        }
    }
    Ok(0)
}

fn run_optimize_delta(args: OptimizeDeltaArgs) -> Result<i32, CliError> {
    if !(args.alpha > 0.0 && args.alpha < 1.0) {
        return Err(usage("--alpha must lie in (0, 1)"));
    }
    let opt = optimize_delta(args.alpha, &DeltaGrid::default())?;
    let pred = centralized_predictions(args.alpha, opt.argument)?;
    println!("delta_star           = {:.9}", opt.argument);
    println!("sum_rate_coefficient = {:.9}", opt.value);
    println!("kappa                = {:.9}", pred.kappa);
    println!("lambda               = {:.9}", pred.lambda);
    Ok(0)
}

fn run_tradeoff(args: TradeoffArgs) -> Result<i32, CliError> {
    let (want_dec, want_cent) = match args.scheme.as_str() {
        "dec" => (true, false),
        "cent" => (false, true),
        "both" => (true, true),
        other => return Err(usage(format!("unknown scheme `{other}`"))),
    };
    let dec: Vec<(f64, f64)> = if want_dec {
        crate::scaling::default_kappa_grid()
            .into_iter()
            .map(|kappa| Ok((kappa, crate::scaling::tradeoff_decentralized(kappa)?)))
            .collect::<Result<_, Error>>()?
    } else {
        Vec::new()
    };
    let cent = if want_cent {
        crate::centralized::tradeoff_centralized(&crate::centralized::default_alpha_grid())?
    } else {
        Vec::new()
    };
    let table = output::render_tradeoff_table(&dec, &cent);
    output::write_atomic(&[(args.out.as_path(), table.as_str())])?;
    println!(
        "wrote {} ({} dec rows, {} cent rows)",
        args.out.display(),
        dec.len(),
        cent.len()
    );
    Ok(0)
}

fn run_regimes(args: RegimesArgs) -> Result<i32, CliError> {
    if args.k.is_empty() {
        return Err(usage("at least one --k is required"));
    }
    for &k in &args.k {
        let c = regime_classify(args.n, k)?;
        println!(
            "n={:.3e} k={k:.3}: {:?}, predicted sum-rate {:.6} ({:.4} log n)",
            args.n,
            c.label,
            c.predicted_sum_rate,
            c.predicted_sum_rate / args.n.ln()
        );
    }
    Ok(0)
}

// ---------------------------------------------------------------------------
// selfcheck

struct Check {
    name: &'static str,
    run: fn() -> Result<(), String>,
}

fn run_selfcheck() -> i32 {
    let checks: &[Check] = &[
        Check {
            name: "rayleigh-moments",
            run: check_rayleigh_moments,
        },
        Check {
            name: "lognormal-moments",
            run: check_lognormal_moments,
        },
        Check {
            name: "tail-probabilities",
            run: check_tail_probabilities,
        },
        Check {
            name: "jensen-inequality",
            run: check_jensen,
        },
        Check {
            name: "edge-probability",
            run: check_edge_probability,
        },
        Check {
            name: "graph-symmetry",
            run: check_graph_symmetry,
        },
        Check {
            name: "clique-exact-oracle",
            run: check_clique_exact,
        },
        Check {
            name: "clique-greedy-sanity",
            run: check_clique_greedy,
        },
    ];
    let mut failures = Vec::new();
    for check in checks {
        let start = Instant::now();
        let result = (check.run)();
        let ms = start.elapsed().as_millis();
        match result {
            Ok(()) => println!("[PASS] {} ({ms} ms)", check.name),
            Err(msg) => {
                println!("[FAIL] {} ({ms} ms): {msg}", check.name);
                failures.push(check.name);
            }
        }
    }
    if failures.is_empty() {
        println!("selfcheck: all {} checks passed", checks.len());
        0
    } else {
        println!("selfcheck: FAILED checks: {}", failures.join(", "));
        1
    }
}

fn check_rayleigh_moments() -> Result<(), String> {
    let draws = 1_000_000usize;
    let mut sampler =
        ChannelSampler::new(draws, FadingModel::Rayleigh, Seed::new(101, 0)).map_err(err_string)?;
    let mut sum = 0.0;
    for i in 0..draws {
        sum += sampler.gain(0, i);
    }
    let mean = sum / draws as f64;
    if (mean - 1.0).abs() > 0.01 {
        return Err(format!("empirical mean {mean:.5} departs from 1 by > 0.01"));
    }
    Ok(())
}

fn check_lognormal_moments() -> Result<(), String> {
    let draws = 1_000_000usize;
    let model = FadingModel::log_normal(0.0, 1.0).map_err(err_string)?;
    let mut sampler = ChannelSampler::new(draws, model, Seed::new(101, 1)).map_err(err_string)?;
    let mut sum = 0.0;
    for i in 0..draws {
        sum += sampler.gain(0, i);
    }
    let mean = sum / draws as f64;
    let expect = 0.5f64.exp();
    if (mean - expect).abs() > 0.02 {
        return Err(format!(
            "empirical mean {mean:.5} departs from {expect:.5} by > 0.02"
        ));
    }
    Ok(())
}

fn check_tail_probabilities() -> Result<(), String> {
    let draws = 1_000_000usize;
    let mut sampler =
        ChannelSampler::new(draws, FadingModel::Rayleigh, Seed::new(101, 2)).map_err(err_string)?;
    let qs = [0.5, 0.1, 0.01];
    let ts: Vec<f64> = qs.iter().map(|q: &f64| -q.ln()).collect();
    let mut exceed = [0usize; 3];
    for i in 0..draws {
        let g = sampler.gain(0, i);
        for (j, t) in ts.iter().enumerate() {
            if g > *t {
                exceed[j] += 1;
            }
        }
    }
    for (j, q) in qs.iter().enumerate() {
        let frac = exceed[j] as f64 / draws as f64;
        let sd = (q * (1.0 - q) / draws as f64).sqrt();
        if (frac - q).abs() >= 4.0 * sd {
            return Err(format!(
                "tail fraction {frac:.6} vs q = {q} beyond 4 binomial sd"
            ));
        }
    }
    Ok(())
}

fn check_jensen() -> Result<(), String> {
    let params = NetworkParams::default();
    for stream in 0..100u64 {
        let g = sample_channel_matrix(200, FadingModel::Rayleigh, Seed::new(202, stream))
            .map_err(err_string)?;
        let t = 0.5 + (stream % 10) as f64 * 0.3;
        let policy = ThresholdPolicy::new(&FadingModel::Rayleigh, t).map_err(err_string)?;
        let p = strategy1_activate(&g, &policy, &params);
        if p.active_count() == 0 {
            continue;
        }
        let bound = jensen_bound(&g, &p, t, &params).map_err(err_string)?;
        let exact = evaluate(&g, &p, &params).map_err(err_string)?.sum_rate;
        if exact < bound {
            return Err(format!(
                "instance {stream}: exact {exact:.9} below bound {bound:.9}"
            ));
        }
    }
    Ok(())
}

fn check_edge_probability() -> Result<(), String> {
    let n = 500usize;
    let delta = 1.0;
    let g =
        sample_channel_matrix(n, FadingModel::Rayleigh, Seed::new(303, 0)).map_err(err_string)?;
    let pool: Vec<usize> = (0..n).collect();
    let graph = build_graph(&g, &pool, delta).map_err(err_string)?;
    let pairs = (n * (n - 1) / 2) as f64;
    let pi = edge_probability(&FadingModel::Rayleigh, delta).map_err(err_string)?;
    let freq = graph.edge_count() as f64 / pairs;
    let sd = (pi * (1.0 - pi) / pairs).sqrt();
    if (freq - pi).abs() >= 4.0 * sd {
        return Err(format!(
            "edge frequency {freq:.6} vs pi = {pi:.6} beyond 4 binomial sd"
        ));
    }
    Ok(())
}

fn check_graph_symmetry() -> Result<(), String> {
    let g =
        sample_channel_matrix(80, FadingModel::Rayleigh, Seed::new(304, 0)).map_err(err_string)?;
    let pool: Vec<usize> = (0..80).collect();
    let graph = build_graph(&g, &pool, 1.0).map_err(err_string)?;
    if !graph.is_symmetric_with_zero_diagonal() {
        return Err("interference graph adjacency is not symmetric with zero diagonal".into());
    }
    Ok(())
}

/// Tiny handcrafted matrices driven through the real graph construction.
fn crafted_graph(n: usize, edges: &[(usize, usize)]) -> Result<InterferenceGraph, String> {
    let mut rows = vec![vec![9.0; n]; n];
    for (a, b) in edges {
        rows[*a][*b] = 0.1;
        rows[*b][*a] = 0.1;
    }
    let m = ChannelMatrix::from_rows(rows).map_err(err_string)?;
    build_graph(&m, &(0..n).collect::<Vec<_>>(), 1.0).map_err(err_string)
}

fn enumeration_clique_number(graph: &InterferenceGraph) -> usize {
    let n = graph.order();
    let mut best = 0usize;
    for mask in 1u32..(1 << n) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        let members: Vec<usize> = (0..n).filter(|v| mask >> v & 1 == 1).collect();
        if graph.is_clique(&members) {
            best = size;
        }
    }
    best
}

fn check_clique_exact() -> Result<(), String> {
    // complete K8
    let all_pairs: Vec<(usize, usize)> = (0..8)
        .flat_map(|a| ((a + 1)..8).map(move |b| (a, b)))
        .collect();
    let k8 = crafted_graph(8, &all_pairs)?;
    if max_clique_exact(&k8).map_err(err_string)?.size != 8 {
        return Err("K8 clique number != 8".into());
    }
    // edgeless on 6 vertices
    let edgeless = crafted_graph(6, &[])?;
    if max_clique_exact(&edgeless).map_err(err_string)?.size != 1 {
        return Err("edgeless clique number != 1".into());
    }
    // 5-cycle
    let c5 = crafted_graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])?;
    if max_clique_exact(&c5).map_err(err_string)?.size != 2 {
        return Err("C5 clique number != 2".into());
    }
    // random instances against exhaustive enumeration
    for stream in 0..3 {
        let graph =
            InterferenceGraph::random(16, 0.5, Seed::new(404, stream)).map_err(err_string)?;
        let oracle = enumeration_clique_number(&graph);
        let got = max_clique_exact(&graph).map_err(err_string)?.size;
        if got != oracle {
            return Err(format!(
                "G(16, 0.5) stream {stream}: solver {got} vs enumeration {oracle}"
            ));
        }
    }
    Ok(())
}

fn check_clique_greedy() -> Result<(), String> {
    for stream in 0..5 {
        let graph =
            InterferenceGraph::random(60, 0.5, Seed::new(505, stream)).map_err(err_string)?;
        let exact = max_clique_exact(&graph).map_err(err_string)?;
        let greedy = max_clique_greedy(&graph, 64, Seed::new(1, stream));
        if !graph.is_clique(&greedy.members) {
            return Err("greedy returned a non-clique".into());
        }
        if greedy.size > exact.size {
            return Err(format!(
                "greedy {} exceeded exact {} (impossible)",
                greedy.size, exact.size
            ));
        }
    }
    Ok(())
}

fn err_string(e: impl std::fmt::Display) -> String {
    e.to_string()
}
