//! Swarm diversity, run records, descriptive statistics and the paired
//! significance test used to compare optimizers.

mod diversity;
mod record;
mod report;
mod wilcoxon;

pub use diversity::diversity;
pub use record::{IterationSample, TrialRecord};
pub use report::{
    aggregate_errors, aggregate_report, average_ranks, describe, AlgorithmSummary, CellErrors,
    CellStats, ComparisonReport, Descriptive,
};
pub use wilcoxon::{
    exact_p_value, normal_p_value, wilcoxon_signed_rank, wilcoxon_signed_rank_with, PValueMethod,
    Verdict, WilcoxonResult, EXACT_MAX_N, MIN_EFFECTIVE_N,
};
