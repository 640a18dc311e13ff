//! Paired two-sided Wilcoxon signed-rank test.
//!
//! Zero differences are discarded and tied magnitudes share their average
//! rank. Up to [`EXACT_MAX_N`] non-zero pairs the p-value comes from the
//! exact null distribution of the positive rank sum (computed by dynamic
//! programming over doubled ranks, so half-integer tie ranks stay exact);
//! above that a tie- and continuity-corrected normal approximation is used.

use std::fmt;

use serde::{Deserialize, Serialize};
use statrs::function::erf::erfc;

use crate::error::{Error, Result};

/// Largest effective sample size handled by the exact distribution.
pub const EXACT_MAX_N: usize = 20;

/// Below this many non-zero differences the test is reported inconclusive.
pub const MIN_EFFECTIVE_N: usize = 5;

/// Outcome from the candidate's point of view.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    /// Candidate has significantly lower error.
    #[serde(rename = "+")]
    Better,
    #[serde(rename = "=")]
    NoDifference,
    /// Candidate has significantly higher error.
    #[serde(rename = "-")]
    Worse,
}

impl Verdict {
    pub fn symbol(self) -> &'static str {
        match self {
            Verdict::Better => "+",
            Verdict::NoDifference => "=",
            Verdict::Worse => "-",
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Verdict::Better => Verdict::Worse,
            Verdict::NoDifference => Verdict::NoDifference,
            Verdict::Worse => Verdict::Better,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PValueMethod {
    /// Exact up to [`EXACT_MAX_N`], normal approximation above.
    Auto,
    Exact,
    Normal,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WilcoxonResult {
    pub verdict: Verdict,
    /// Sum of ranks of positive differences `b − a`.
    pub w_plus: f64,
    pub w_minus: f64,
    /// Pairs left after discarding zero differences.
    pub n_effective: usize,
    pub p_value: f64,
    /// Set when fewer than [`MIN_EFFECTIVE_N`] non-zero pairs remain.
    pub inconclusive: bool,
}

/// Tests candidate errors `a` against reference errors `b`.
///
/// `+` means the candidate is significantly lower at level `alpha`.
pub fn wilcoxon_signed_rank(a: &[f64], b: &[f64], alpha: f64) -> Result<WilcoxonResult> {
    wilcoxon_signed_rank_with(a, b, alpha, PValueMethod::Auto)
}

pub fn wilcoxon_signed_rank_with(
    a: &[f64],
    b: &[f64],
    alpha: f64,
    method: PValueMethod,
) -> Result<WilcoxonResult> {
    if a.len() != b.len() {
        return Err(Error::config(format!(
            "paired samples differ in length: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::config(format!(
            "significance level {alpha} outside (0, 1)"
        )));
    }
    let diffs: Vec<f64> = a
        .iter()
        .zip(b)
        .map(|(x, y)| y - x)
        .filter(|d| *d != 0.0)
        .collect();
    if diffs.iter().any(|d| d.is_nan()) {
        return Err(Error::config("paired samples contain NaN"));
    }
    let n = diffs.len();
    if n == 0 {
        return Ok(WilcoxonResult {
            verdict: Verdict::NoDifference,
            w_plus: 0.0,
            w_minus: 0.0,
            n_effective: 0,
            p_value: 1.0,
            inconclusive: true,
        });
    }

    let ranks = signed_ranks(&diffs);
    let w_plus: f64 = ranks.iter().filter(|r| r.1).map(|r| r.0).sum();
    let total = (n * (n + 1)) as f64 / 2.0;
    let w_minus = total - w_plus;
    let magnitudes: Vec<f64> = ranks.iter().map(|r| r.0).collect();

    let use_exact = match method {
        PValueMethod::Auto => n <= EXACT_MAX_N,
        PValueMethod::Exact => true,
        PValueMethod::Normal => false,
    };
    let p_value = if use_exact {
        exact_p_value(&magnitudes, w_plus)
    } else {
        normal_p_value(&magnitudes, w_plus)
    };

    let inconclusive = n < MIN_EFFECTIVE_N;
    let verdict = if inconclusive || p_value >= alpha {
        Verdict::NoDifference
    } else if w_plus > w_minus {
        Verdict::Better
    } else if w_plus < w_minus {
        Verdict::Worse
    } else {
        Verdict::NoDifference
    };
    Ok(WilcoxonResult {
        verdict,
        w_plus,
        w_minus,
        n_effective: n,
        p_value,
        inconclusive,
    })
}

/// Average ranks of `|d|` paired with the sign of `d` (true = positive).
fn signed_ranks(diffs: &[f64]) -> Vec<(f64, bool)> {
    let mut order: Vec<usize> = (0..diffs.len()).collect();
    order.sort_by(|&i, &j| diffs[i].abs().total_cmp(&diffs[j].abs()));
    let mut out = vec![(0.0, false); diffs.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i + 1;
        while j < order.len() && diffs[order[j]].abs() == diffs[order[i]].abs() {
            j += 1;
        }
        let rank = (i + 1 + j) as f64 / 2.0;
        for &k in &order[i..j] {
            out[k] = (rank, diffs[k] > 0.0);
        }
        i = j;
    }
    out
}

/// Two-sided exact p-value of the observed positive rank sum given the
/// (possibly tied) rank magnitudes.
pub fn exact_p_value(ranks: &[f64], w_plus: f64) -> f64 {
    // doubled ranks are integers even with half-integer tie ranks
    let doubled: Vec<usize> = ranks.iter().map(|r| (2.0 * r).round() as usize).collect();
    let max: usize = doubled.iter().sum();
    let mut counts = vec![0u64; max + 1];
    counts[0] = 1;
    let mut reach = 0;
    for &r in &doubled {
        for s in (0..=reach).rev() {
            let c = counts[s];
            if c != 0 {
                counts[s + r] += c;
            }
        }
        reach += r;
    }
    let observed = (2.0 * w_plus).round() as usize;
    let lower: u64 = counts[..=observed.min(max)].iter().sum();
    let upper: u64 = counts[observed.min(max + 1)..].iter().sum();
    let total = 2f64.powi(ranks.len() as i32);
    (2.0 * lower.min(upper) as f64 / total).min(1.0)
}

/// Normal approximation with tie correction and continuity correction.
pub fn normal_p_value(ranks: &[f64], w_plus: f64) -> f64 {
    let n = ranks.len() as f64;
    let mean = n * (n + 1.0) / 4.0;
    let mut sorted = ranks.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut tie_term = 0.0;
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i + 1;
        while j < sorted.len() && sorted[j] == sorted[i] {
            j += 1;
        }
        let t = (j - i) as f64;
        tie_term += t * t * t - t;
        i = j;
    }
    let var = n * (n + 1.0) * (2.0 * n + 1.0) / 24.0 - tie_term / 48.0;
    if var <= 0.0 {
        return 1.0;
    }
    let z = ((w_plus - mean).abs() - 0.5).max(0.0) / var.sqrt();
    erfc(z / std::f64::consts::SQRT_2).clamp(0.0, 1.0)
}
