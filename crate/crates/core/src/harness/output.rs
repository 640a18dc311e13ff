use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::config::RecordFlags;
use crate::analysis::TrialRecord;
use crate::error::{Error, Result};

/// Replaces characters that are awkward in file names.
pub fn sanitize(name: &str) -> String {
    name.chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || matches!(c, '-' | '_' | '.') {
                c
            } else {
                '_'
            }
        })
        .collect()
}

pub fn curve_path(dir: &Path, function: &str, algorithm: &str, trial: usize) -> PathBuf {
    dir.join("curves").join(format!(
        "{}__{}__t{trial}.csv",
        sanitize(function),
        sanitize(algorithm)
    ))
}

pub fn summary_path(dir: &Path, function: &str, algorithm: &str) -> PathBuf {
    dir.join("summary").join(format!(
        "{}__{}.json",
        sanitize(function),
        sanitize(algorithm)
    ))
}

struct Row {
    fes: u64,
    error: f64,
    diversity: f64,
    counts: [u64; 3],
}

/// Renders a trial's curve as CSV.
///
/// Iterations that spent no evaluations are merged into the next row that
/// did (or into the last row at the end), so the `fes` column is strictly
/// increasing and the count columns still sum to the run totals.
pub fn curve_csv(record: &TrialRecord, flags: &RecordFlags) -> String {
    let mut rows: Vec<Row> = Vec::new();
    let mut pending = [0u64; 3];
    let mut since_kept = 0usize;
    let last = record.samples.len().saturating_sub(1);
    for (i, s) in record.samples.iter().enumerate() {
        pending[0] += u64::from(s.non_g_steps);
        pending[1] += u64::from(s.g_steps);
        pending[2] += u64::from(s.pdg_events);
        let advances = rows.last().is_none_or(|r| s.fes > r.fes);
        if !advances {
            continue;
        }
        let keep = rows.is_empty() || since_kept + 1 >= flags.stride || i == last;
        since_kept += 1;
        if keep {
            rows.push(Row {
                fes: s.fes,
                error: s.error,
                diversity: s.diversity,
                counts: std::mem::take(&mut pending),
            });
            since_kept = 0;
        }
    }
    if let Some(r) = rows.last_mut() {
        for (c, p) in r.counts.iter_mut().zip(pending) {
            *c += p;
        }
        // a skipped tail still has to end on the final state
        if let Some(s) = record.samples.last() {
            if s.fes > r.fes {
                r.fes = s.fes;
                r.error = s.error;
                r.diversity = s.diversity;
            }
        }
    }

    let mut out = String::from("fes,error");
    if flags.diversity {
        out.push_str(",diversity");
    }
    if flags.channel_usage {
        out.push_str(",non_g_steps,g_steps,pdg_events");
    }
    out.push('\n');
    for r in &rows {
        let _ = write!(out, "{},{}", r.fes, r.error);
        if flags.diversity {
            let _ = write!(out, ",{}", r.diversity);
        }
        if flags.channel_usage {
            let _ = write!(out, ",{},{},{}", r.counts[0], r.counts[1], r.counts[2]);
        }
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitPoint {
    pub fes: u64,
    pub m1: u32,
    pub m2: u32,
}

/// Per-(function, algorithm) result file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellSummary {
    pub function: String,
    pub algorithm: String,
    pub dimension: usize,
    pub population: usize,
    pub fes_max: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transform_seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    pub mean: f64,
    pub std: f64,
    pub min: f64,
    pub max: f64,
    pub trials: usize,
    pub seed_base: u64,
    pub final_errors: Vec<f64>,
    /// Adaptive split over the first trial.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m1_m2_trace: Option<Vec<SplitPoint>>,
}

pub(crate) fn create_dir(path: &Path) -> Result<()> {
    fs::create_dir_all(path).map_err(|e| Error::io(path, e))
}

pub(crate) fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| Error::io(path, e))
}

pub(crate) fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| Error::Json {
        path: path.display().to_string(),
        source: e,
    })?;
    text.push('\n');
    write_file(path, &text)
}

pub(crate) fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| Error::Json {
        path: path.display().to_string(),
        source: e,
    })
}
