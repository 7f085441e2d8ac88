//! Experiment configuration: a flat `key = value` text format plus the sweep
//! mini-syntax `MIN:MAX:STEPS`.
//!
//! Recognized keys (anything else is a hard error):
//! `scenario, n, model, m, s, power, noise, t, k, alpha, delta, trials,
//! master_seed, output`. Lines starting with `#` and blank lines are
//! ignored. Duplicate keys are rejected.

use std::collections::HashMap;
use std::path::PathBuf;

use crate::error::{Error, Result};
use crate::fading::FadingModel;

/// Which experiment the harness runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scenario {
    Strategy1Threshold,
    Strategy1TopK,
    Strategy2,
    ThresholdSweep,
    NSweep,
    TradeoffCurves,
}

impl Scenario {
    pub fn parse(text: &str) -> Result<Self> {
        Ok(match text {
            "strategy1-threshold" => Scenario::Strategy1Threshold,
            "strategy1-topk" => Scenario::Strategy1TopK,
            "strategy2" => Scenario::Strategy2,
            "threshold-sweep" => Scenario::ThresholdSweep,
            "n-sweep" => Scenario::NSweep,
            "tradeoff-curves" => Scenario::TradeoffCurves,
            other => {
                return Err(Error::invalid(format!(
                    "unknown scenario `{other}` (expected strategy1-threshold, strategy1-topk, \
                     strategy2, threshold-sweep, n-sweep, or tradeoff-curves)"
                )))
            }
        })
    }

    pub fn label(&self) -> &'static str {
        match self {
            Scenario::Strategy1Threshold => "strategy1-threshold",
            Scenario::Strategy1TopK => "strategy1-topk",
            Scenario::Strategy2 => "strategy2",
            Scenario::ThresholdSweep => "threshold-sweep",
            Scenario::NSweep => "n-sweep",
            Scenario::TradeoffCurves => "tradeoff-curves",
        }
    }
}

/// Linear sweep `MIN:MAX:STEPS` over a nonnegative range.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sweep {
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
}

impl Sweep {
    pub fn values(&self) -> Vec<f64> {
        (0..self.steps)
            .map(|i| self.lo + (self.hi - self.lo) * i as f64 / (self.steps - 1) as f64)
            .collect()
    }
}

/// Parse `MIN:MAX:STEPS`; requires `0 <= MIN < MAX` finite and `STEPS >= 2`.
pub fn parse_sweep(text: &str) -> Result<Sweep> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(Error::invalid(format!(
            "sweep must be MIN:MAX:STEPS, got `{text}`"
        )));
    }
    let lo: f64 = parts[0]
        .trim()
        .parse()
        .map_err(|_| Error::invalid(format!("bad sweep minimum `{}`", parts[0])))?;
    let hi: f64 = parts[1]
        .trim()
        .parse()
        .map_err(|_| Error::invalid(format!("bad sweep maximum `{}`", parts[1])))?;
    let steps: usize = parts[2]
        .trim()
        .parse()
        .map_err(|_| Error::invalid(format!("bad sweep step count `{}`", parts[2])))?;
    if !lo.is_finite() || !hi.is_finite() || lo < 0.0 || hi <= lo {
        return Err(Error::invalid(format!(
            "sweep needs 0 <= MIN < MAX, got {lo}:{hi}"
        )));
    }
    if steps < 2 {
        return Err(Error::invalid("sweep needs at least 2 steps"));
    }
    if steps > MAX_SWEEP_STEPS {
        return Err(Error::invalid(format!(
            "sweep step count {steps} exceeds the supported maximum {MAX_SWEEP_STEPS}"
        )));
    }
    Ok(Sweep { lo, hi, steps })
}

/// Caps that keep pathological configs from requesting absurd allocations.
pub const MAX_SWEEP_STEPS: usize = 100_000;
pub const MAX_TRIALS: u64 = 10_000_000;
pub const MAX_LINKS: usize = 100_000_000;

/// Activation-threshold specification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ThresholdSpec {
    /// Resolve by numerically maximizing the analytic sum-rate.
    Auto,
    Fixed(f64),
    Sweep(Sweep),
}

/// Interference-cap specification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DeltaSpec {
    /// Resolve by maximizing the sum-rate coefficient.
    Auto,
    Fixed(f64),
}

/// Fully parsed experiment description. `n` may hold several sizes only for
/// the `n-sweep` scenario; `t`, `k`, `alpha`, `delta` are scenario-specific.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub scenario: Scenario,
    pub n: Vec<usize>,
    pub model: FadingModel,
    pub power: f64,
    pub noise: f64,
    pub t: Option<ThresholdSpec>,
    pub k: Option<usize>,
    pub alpha: Option<f64>,
    pub delta: Option<DeltaSpec>,
    pub trials: u64,
    pub master_seed: u64,
    pub output: PathBuf,
}

const KNOWN_KEYS: &[&str] = &[
    "scenario",
    "n",
    "model",
    "m",
    "s",
    "power",
    "noise",
    "t",
    "k",
    "alpha",
    "delta",
    "trials",
    "master_seed",
    "output",
];

fn parse_f64(key: &str, value: &str, line: usize) -> Result<f64> {
    let v: f64 = value.parse().map_err(|_| Error::Config {
        line,
        message: format!("key `{key}` needs a number, got `{value}`"),
    })?;
    if !v.is_finite() {
        return Err(Error::Config {
            line,
            message: format!("key `{key}` must be finite, got `{value}`"),
        });
    }
    Ok(v)
}

impl ExperimentConfig {
    /// Parse and validate the flat key-value text format.
    pub fn parse_str(text: &str) -> Result<Self> {
        let mut fields: HashMap<&str, (String, usize)> = HashMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| Error::Config {
                line: line_no,
                message: format!("expected `key = value`, got `{line}`"),
            })?;
            let key = key.trim();
            let value = value.trim();
            if !KNOWN_KEYS.contains(&key) {
                return Err(Error::UnknownConfigKey {
                    key: key.to_string(),
                });
            }
            if fields.contains_key(key) {
                return Err(Error::Config {
                    line: line_no,
                    message: format!("duplicate key `{key}`"),
                });
            }
            let canonical = KNOWN_KEYS.iter().find(|k| **k == key).unwrap();
            fields.insert(canonical, (value.to_string(), line_no));
        }

        let take = |key: &str| fields.get(key).cloned();
        let require = |key: &str| {
            take(key).ok_or_else(|| Error::Config {
                line: 0,
                message: format!("missing required key `{key}`"),
            })
        };

        let (scenario_text, _) = require("scenario")?;
        let scenario = Scenario::parse(&scenario_text)?;

        let (model_text, model_line) = require("model")?;
        let m = take("m");
        let s = take("s");
        let model = match model_text.as_str() {
            "rayleigh" => {
                if let Some((_, line)) = m.or(s) {
                    return Err(Error::Config {
                        line,
                        message: "keys `m`/`s` apply to the lognormal model only".into(),
                    });
                }
                FadingModel::Rayleigh
            }
            "lognormal" => {
                let location = match &m {
                    Some((v, line)) => parse_f64("m", v, *line)?,
                    None => 0.0,
                };
                let (s_text, s_line) = s.ok_or_else(|| Error::Config {
                    line: 0,
                    message: "lognormal model requires key `s`".into(),
                })?;
                let scale = parse_f64("s", &s_text, s_line)?;
                FadingModel::log_normal(location, scale).map_err(|e| Error::Config {
                    line: s_line,
                    message: e.to_string(),
                })?
            }
            other => {
                return Err(Error::Config {
                    line: model_line,
                    message: format!("unknown model `{other}` (expected rayleigh or lognormal)"),
                })
            }
        };

        let n = match take("n") {
            Some((text, line)) => {
                let mut sizes = Vec::new();
                for part in text.split(',') {
                    let v: usize = part.trim().parse().map_err(|_| Error::Config {
                        line,
                        message: format!("bad n entry `{part}`"),
                    })?;
                    if v == 0 {
                        return Err(Error::Config {
                            line,
                            message: "n entries must be >= 1".into(),
                        });
                    }
                    sizes.push(v);
                }
                sizes
            }
            None => Vec::new(),
        };

        let power = match take("power") {
            Some((v, line)) => parse_f64("power", &v, line)?,
            None => 1.0,
        };
        let noise = match take("noise") {
            Some((v, line)) => parse_f64("noise", &v, line)?,
            None => 1.0,
        };

        let t = match take("t") {
            Some((v, line)) => Some(if v == "auto" {
                ThresholdSpec::Auto
            } else if v.contains(':') {
                ThresholdSpec::Sweep(parse_sweep(&v)?)
            } else {
                let value = parse_f64("t", &v, line)?;
                if value < 0.0 {
                    return Err(Error::Config {
                        line,
                        message: "t must be >= 0".into(),
                    });
                }
                ThresholdSpec::Fixed(value)
            }),
            None => None,
        };

        let k = match take("k") {
            Some((v, line)) => Some(v.parse::<usize>().map_err(|_| Error::Config {
                line,
                message: format!("bad k `{v}`"),
            })?),
            None => None,
        };

        let alpha = match take("alpha") {
            Some((v, line)) => {
                let a = parse_f64("alpha", &v, line)?;
                if !(a > 0.0 && a < 1.0) {
                    return Err(Error::Config {
                        line,
                        message: "alpha must lie in (0, 1)".into(),
                    });
                }
                Some(a)
            }
            None => None,
        };

        let delta = match take("delta") {
            Some((v, line)) => Some(if v == "auto" {
                DeltaSpec::Auto
            } else {
                let d = parse_f64("delta", &v, line)?;
                if d <= 0.0 {
                    return Err(Error::Config {
                        line,
                        message: "delta must be > 0".into(),
                    });
                }
                DeltaSpec::Fixed(d)
            }),
            None => None,
        };

        let trials = match take("trials") {
            Some((v, line)) => v.parse::<u64>().map_err(|_| Error::Config {
                line,
                message: format!("bad trials `{v}`"),
            })?,
            None => 0,
        };

        let master_seed = match take("master_seed") {
            Some((v, line)) => v.parse::<u64>().map_err(|_| Error::Config {
                line,
                message: format!("bad master_seed `{v}`"),
            })?,
            None => {
                return Err(Error::Config {
                    line: 0,
                    message: "missing required key `master_seed`".into(),
                })
            }
        };

        let (output_text, _) = require("output")?;
        if output_text.is_empty() {
            return Err(Error::Config {
                line: 0,
                message: "output path must not be empty".into(),
            });
        }

        let config = ExperimentConfig {
            scenario,
            n,
            model,
            power,
            noise,
            t,
            k,
            alpha,
            delta,
            trials,
            master_seed,
            output: PathBuf::from(output_text),
        };
        config.validate()?;
        Ok(config)
    }

    pub fn from_file(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse_str(&text)
    }

    /// Scenario-specific consistency checks.
    pub fn validate(&self) -> Result<()> {
        let single_n = || -> Result<usize> {
            match self.n.as_slice() {
                [n] => Ok(*n),
                _ => Err(Error::invalid(format!(
                    "scenario {} needs exactly one n, got {:?}",
                    self.scenario.label(),
                    self.n
                ))),
            }
        };
        if self.scenario != Scenario::TradeoffCurves {
            if self.n.is_empty() {
                return Err(Error::invalid("missing required key `n`"));
            }
            if self.n.len() > 10_000 {
                return Err(Error::invalid("n sweep list is unreasonably long"));
            }
            if let Some(&n) = self.n.iter().find(|n| **n > MAX_LINKS) {
                return Err(Error::invalid(format!(
                    "n = {n} exceeds the supported maximum {MAX_LINKS}"
                )));
            }
            if self.trials == 0 {
                return Err(Error::invalid("trials must be >= 1"));
            }
            if self.trials > MAX_TRIALS {
                return Err(Error::invalid(format!(
                    "trials = {} exceeds the supported maximum {MAX_TRIALS}",
                    self.trials
                )));
            }
        }
        match self.scenario {
            Scenario::Strategy1Threshold => {
                let _ = single_n()?;
                match self.t {
                    Some(ThresholdSpec::Auto) | Some(ThresholdSpec::Fixed(_)) => {}
                    Some(ThresholdSpec::Sweep(_)) => {
                        return Err(Error::invalid(
                            "strategy1-threshold takes a fixed or auto t; use threshold-sweep for sweeps",
                        ))
                    }
                    None => return Err(Error::invalid("strategy1-threshold requires key `t`")),
                }
            }
            Scenario::Strategy1TopK => {
                let n = single_n()?;
                match self.k {
                    Some(k) if k <= n => {}
                    Some(k) => {
                        return Err(Error::invalid(format!("k = {k} exceeds n = {n}")));
                    }
                    None => return Err(Error::invalid("strategy1-topk requires key `k`")),
                }
            }
            Scenario::Strategy2 => {
                let _ = single_n()?;
                if self.alpha.is_none() {
                    return Err(Error::invalid("strategy2 requires key `alpha`"));
                }
                if self.delta.is_none() {
                    return Err(Error::invalid("strategy2 requires key `delta`"));
                }
            }
            Scenario::ThresholdSweep => {
                let _ = single_n()?;
                match self.t {
                    Some(ThresholdSpec::Sweep(_)) => {}
                    _ => {
                        return Err(Error::invalid(
                            "threshold-sweep requires key `t` as MIN:MAX:STEPS",
                        ))
                    }
                }
            }
            Scenario::NSweep => match self.t {
                Some(ThresholdSpec::Auto) | Some(ThresholdSpec::Fixed(_)) => {}
                _ => {
                    return Err(Error::invalid(
                        "n-sweep requires key `t` as a fixed value or auto",
                    ))
                }
            },
            Scenario::TradeoffCurves => {}
        }
        Ok(())
    }
}
