use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::record::TrialRecord;
use super::wilcoxon::{wilcoxon_signed_rank, Verdict};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Descriptive {
    pub mean: f64,
    /// Sample standard deviation (0 for a single trial).
    pub std: f64,
    pub min: f64,
    pub max: f64,
}

pub fn describe(values: &[f64]) -> Descriptive {
    let n = values.len();
    if n == 0 {
        return Descriptive {
            mean: f64::NAN,
            std: f64::NAN,
            min: f64::NAN,
            max: f64::NAN,
        };
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    let std = if n > 1 {
        (values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1) as f64).sqrt()
    } else {
        0.0
    };
    Descriptive {
        mean,
        std,
        min: values.iter().copied().fold(f64::INFINITY, f64::min),
        max: values.iter().copied().fold(f64::NEG_INFINITY, f64::max),
    }
}

/// Ranks with ties sharing their average rank (1 = smallest).
pub fn average_ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
    let mut ranks = vec![0.0; values.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i + 1;
        while j < order.len() && values[order[j]] == values[order[i]] {
            j += 1;
        }
        let r = (i + 1 + j) as f64 / 2.0;
        for &k in &order[i..j] {
            ranks[k] = r;
        }
        i = j;
    }
    ranks
}

/// Final errors of one (function, algorithm) cell, in trial order.
#[derive(Debug, Clone, PartialEq)]
pub struct CellErrors {
    pub function: String,
    pub algorithm: String,
    pub errors: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellStats {
    pub function: String,
    pub algorithm: String,
    #[serde(flatten)]
    pub stats: Descriptive,
    pub trials: usize,
    pub rank: f64,
    /// Reference vs this algorithm; `+` means the reference is better.
    pub verdict: Option<Verdict>,
    pub p_value: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgorithmSummary {
    pub algorithm: String,
    pub ave_rank: f64,
    pub best_mean: usize,
    pub worst: usize,
    /// Counts of reference verdicts against this algorithm.
    pub plus: usize,
    pub equal: usize,
    pub minus: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub reference: String,
    pub alpha: f64,
    pub functions: Vec<String>,
    pub algorithms: Vec<String>,
    pub cells: Vec<CellStats>,
    pub summary: Vec<AlgorithmSummary>,
}

impl ComparisonReport {
    pub fn cell(&self, function: &str, algorithm: &str) -> Option<&CellStats> {
        self.cells
            .iter()
            .find(|c| c.function == function && c.algorithm == algorithm)
    }

    pub fn algorithm_summary(&self, algorithm: &str) -> Option<&AlgorithmSummary> {
        self.summary.iter().find(|s| s.algorithm == algorithm)
    }

    /// One row per cell, then one row per algorithm aggregate.
    pub fn to_csv(&self) -> String {
        let mut out =
            String::from("function,algorithm,mean,std,min,max,trials,rank,verdict,p_value\n");
        for c in &self.cells {
            let _ = writeln!(
                out,
                "{},{},{:e},{:e},{:e},{:e},{},{},{},{}",
                c.function,
                c.algorithm,
                c.stats.mean,
                c.stats.std,
                c.stats.min,
                c.stats.max,
                c.trials,
                c.rank,
                c.verdict.map_or("", Verdict::symbol),
                c.p_value.map_or(String::new(), |p| format!("{p:e}")),
            );
        }
        out.push_str("\nalgorithm,ave_rank,best_mean,worst,plus,equal,minus\n");
        for s in &self.summary {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{}",
                s.algorithm, s.ave_rank, s.best_mean, s.worst, s.plus, s.equal, s.minus
            );
        }
        out
    }
}

/// Groups trial records into cells (ordered by seed) and builds the report.
pub fn aggregate_report(
    trials: &[TrialRecord],
    reference: &str,
    alpha: f64,
) -> Result<ComparisonReport> {
    let mut order: Vec<(String, String)> = Vec::new();
    let mut groups: BTreeMap<(String, String), Vec<&TrialRecord>> = BTreeMap::new();
    for t in trials {
        let key = (t.function.clone(), t.algorithm.clone());
        if !groups.contains_key(&key) {
            order.push(key.clone());
        }
        groups.entry(key).or_default().push(t);
    }
    let cells: Vec<CellErrors> = order
        .into_iter()
        .map(|key| {
            let mut g = groups.remove(&key).unwrap_or_default();
            g.sort_by_key(|t| t.seed);
            CellErrors {
                function: key.0,
                algorithm: key.1,
                errors: g.iter().map(|t| t.final_error).collect(),
            }
        })
        .collect();
    aggregate_errors(&cells, reference, alpha)
}

/// Builds the comparison from per-cell final errors. Functions and
/// algorithms keep first-appearance order.
pub fn aggregate_errors(
    cells: &[CellErrors],
    reference: &str,
    alpha: f64,
) -> Result<ComparisonReport> {
    let mut functions: Vec<String> = Vec::new();
    let mut algorithms: Vec<String> = Vec::new();
    for c in cells {
        if !functions.contains(&c.function) {
            functions.push(c.function.clone());
        }
        if !algorithms.contains(&c.algorithm) {
            algorithms.push(c.algorithm.clone());
        }
    }
    if !algorithms.iter().any(|a| a == reference) {
        return Err(Error::Report(format!(
            "reference algorithm `{reference}` has no trials"
        )));
    }
    let lookup = |f: &str, a: &str| cells.iter().find(|c| c.function == f && c.algorithm == a);

    let mut out_cells = Vec::new();
    let mut rank_sum = vec![0.0; algorithms.len()];
    let mut best = vec![0usize; algorithms.len()];
    let mut worst = vec![0usize; algorithms.len()];
    let mut verdicts = vec![[0usize; 3]; algorithms.len()];

    for f in &functions {
        let row: Vec<&CellErrors> = algorithms
            .iter()
            .map(|a| {
                lookup(f, a).ok_or_else(|| {
                    Error::Report(format!("no trials for function `{f}` with algorithm `{a}`"))
                })
            })
            .collect::<Result<_>>()?;
        let expected = row[0].errors.len();
        if let Some(bad) = row.iter().find(|c| c.errors.len() != expected) {
            return Err(Error::Report(format!(
                "unbalanced trial counts on `{f}`: `{}` has {} trials, `{}` has {}",
                bad.algorithm,
                bad.errors.len(),
                row[0].algorithm,
                expected
            )));
        }
        let stats: Vec<Descriptive> = row.iter().map(|c| describe(&c.errors)).collect();
        let means: Vec<f64> = stats.iter().map(|s| s.mean).collect();
        let ranks = average_ranks(&means);
        let lo = means.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = means.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let ref_errors = &lookup(f, reference).expect("checked above").errors;

        for (i, cell) in row.iter().enumerate() {
            rank_sum[i] += ranks[i];
            if means[i] == lo {
                best[i] += 1;
            }
            if means[i] == hi {
                worst[i] += 1;
            }
            let (verdict, p_value) = if cell.algorithm == reference {
                (None, None)
            } else {
                let w = wilcoxon_signed_rank(ref_errors, &cell.errors, alpha)?;
                let slot = match w.verdict {
                    Verdict::Better => 0,
                    Verdict::NoDifference => 1,
                    Verdict::Worse => 2,
                };
                verdicts[i][slot] += 1;
                (Some(w.verdict), Some(w.p_value))
            };
            out_cells.push(CellStats {
                function: f.clone(),
                algorithm: cell.algorithm.clone(),
                stats: stats[i],
                trials: cell.errors.len(),
                rank: ranks[i],
                verdict,
                p_value,
            });
        }
    }

    let nf = functions.len().max(1) as f64;
    let summary = algorithms
        .iter()
        .enumerate()
        .map(|(i, a)| AlgorithmSummary {
            algorithm: a.clone(),
            ave_rank: rank_sum[i] / nf,
            best_mean: best[i],
            worst: worst[i],
            plus: verdicts[i][0],
            equal: verdicts[i][1],
            minus: verdicts[i][2],
        })
        .collect();

    Ok(ComparisonReport {
        reference: reference.to_string(),
        alpha,
        functions,
        algorithms,
        cells: out_cells,
        summary,
    })
}
