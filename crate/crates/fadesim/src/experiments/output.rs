//! Deterministic CSV writers. Floats are rendered in decimal scientific
//! notation with 9 significant digits, locale-independent, so repeated runs
//! produce byte-identical files. Files are written to a temporary path in
//! the target directory and promoted by rename only after every table has
//! been fully written.

use std::io::Write;
use std::path::{Path, PathBuf};

use tempfile::NamedTempFile;

use crate::centralized::TradeoffPoint;
use crate::error::{Error, Result};
use crate::fading::FadingModel;

use super::{AggregateRecord, TrialRecord};

pub const TRIAL_HEADER: &str =
    "trial,n,model,t,delta,k,sum_rate,rate_per_link,mean_interference,bound,prediction";
pub const AGGREGATE_HEADER: &str = "metric,mean,sd,ci95_halfwidth,trials";
pub const TRADEOFF_HEADER: &str = "scheme,alpha,delta_star,kappa,lambda";

/// Decimal scientific notation with 9 significant digits.
pub fn format_sig9(x: f64) -> String {
    debug_assert!(x.is_finite(), "persisted values must be finite, got {x}");
    format!("{x:.8e}")
}

fn format_opt(x: Option<f64>) -> String {
    x.map(format_sig9).unwrap_or_default()
}

/// Stable text label of a fading model (no commas, CSV-safe).
pub fn model_label(model: &FadingModel) -> String {
    match *model {
        FadingModel::Rayleigh => "rayleigh".to_string(),
        FadingModel::LogNormal { location, scale } => {
            format!(
                "lognormal(m={};s={})",
                format_sig9(location),
                format_sig9(scale)
            )
        }
    }
}

pub fn render_trial_table(records: &[TrialRecord], model: &FadingModel) -> String {
    let label = model_label(model);
    let mut out = String::with_capacity(64 * (records.len() + 1));
    out.push_str(TRIAL_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{}\n",
            r.trial,
            r.n,
            label,
            format_opt(r.t),
            format_opt(r.delta),
            r.active_count,
            format_sig9(r.sum_rate),
            format_sig9(r.rate_per_link),
            format_sig9(r.mean_interference),
            format_opt(r.bound),
            format_opt(r.prediction),
        ));
    }
    out
}

/// Aggregate table. The first row records the master seed (as an exact
/// integer) so every run can be replayed from its own artifacts.
pub fn render_aggregate_table(
    aggregates: &[AggregateRecord],
    master_seed: u64,
    total_trials: u64,
) -> String {
    let mut out = String::new();
    out.push_str(AGGREGATE_HEADER);
    out.push('\n');
    out.push_str(&format!("master_seed,{master_seed},0,0,{total_trials}\n"));
    for a in aggregates {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            a.metric,
            format_sig9(a.mean),
            format_sig9(a.sd),
            format_sig9(a.ci95_halfwidth),
            a.trials,
        ));
    }
    out
}

/// Tradeoff table: decentralized rows leave alpha/delta_star empty.
pub fn render_tradeoff_table(
    decentralized: &[(f64, f64)],
    centralized: &[TradeoffPoint],
) -> String {
    let mut out = String::new();
    out.push_str(TRADEOFF_HEADER);
    out.push('\n');
    for (kappa, lambda) in decentralized {
        out.push_str(&format!(
            "dec,,,{},{}\n",
            format_sig9(*kappa),
            format_sig9(*lambda)
        ));
    }
    for p in centralized {
        out.push_str(&format!(
            "cent,{},{},{},{}\n",
            format_sig9(p.alpha),
            format_sig9(p.delta_star),
            format_sig9(p.kappa),
            format_sig9(p.lambda)
        ));
    }
    out
}

/// Sibling path holding the aggregate table: `runs.csv -> runs_aggregate.csv`.
pub fn aggregate_sibling_path(output: &Path) -> PathBuf {
    let stem = output
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "output".to_string());
    let ext = output
        .extension()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "csv".to_string());
    output.with_file_name(format!("{stem}_aggregate.{ext}"))
}

fn stage(dir: &Path, content: &str) -> Result<NamedTempFile> {
    let mut tmp = NamedTempFile::new_in(dir)?;
    tmp.write_all(content.as_bytes())?;
    tmp.flush()?;
    Ok(tmp)
}

/// Write each `(path, content)` pair atomically: all files are staged as
/// temporaries in their target directories first, then promoted by rename.
/// An error before promotion leaves no partial output behind.
pub fn write_atomic(files: &[(&Path, &str)]) -> Result<()> {
    let mut staged = Vec::with_capacity(files.len());
    for (path, content) in files {
        let parent = match path.parent() {
            Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
            _ => PathBuf::from("."),
        };
        std::fs::create_dir_all(&parent)?;
        let tmp = stage(&parent, content).map_err(|e| Error::Output {
            path: path.to_path_buf(),
            source: std::io::Error::other(e.to_string()),
        })?;
        staged.push((path, tmp));
    }
    for (path, tmp) in staged {
        tmp.persist(path).map_err(|e| Error::Output {
            path: path.to_path_buf(),
            source: e.error,
        })?;
    }
    Ok(())
}
