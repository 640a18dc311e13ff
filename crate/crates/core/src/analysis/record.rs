use serde::{Deserialize, Serialize};

/// State of a run at the end of one outer iteration. Sample 0 describes
/// the swarm right after initialization.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IterationSample {
    pub iteration: u64,
    pub fes: u64,
    pub error: f64,
    pub diversity: f64,
    pub non_g_steps: u32,
    pub g_steps: u32,
    pub pdg_events: u32,
    /// Non-G allowance at the start of the iteration (0 for baselines).
    pub m1: u32,
}

/// Everything recorded about a single optimizer run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub algorithm: String,
    pub function: String,
    pub seed: u64,
    pub population: usize,
    pub samples: Vec<IterationSample>,
    pub final_error: f64,
    pub total_fes: u64,
    pub best_position: Vec<f64>,
}

impl TrialRecord {
    pub fn error_curve(&self) -> impl Iterator<Item = (u64, f64)> + '_ {
        self.samples.iter().map(|s| (s.fes, s.error))
    }

    pub fn diversity_curve(&self) -> impl Iterator<Item = (u64, f64)> + '_ {
        self.samples.iter().map(|s| (s.iteration, s.diversity))
    }

    /// Iterations after initialization.
    pub fn iterations(&self) -> &[IterationSample] {
        self.samples.get(1..).unwrap_or(&[])
    }

    pub fn initial_error(&self) -> f64 {
        self.samples.first().map_or(f64::INFINITY, |s| s.error)
    }

    pub fn channel_steps(&self) -> u64 {
        self.samples
            .iter()
            .map(|s| u64::from(s.non_g_steps) + u64::from(s.g_steps))
            .sum()
    }

    pub fn pdg_events(&self) -> u64 {
        self.samples.iter().map(|s| u64::from(s.pdg_events)).sum()
    }
}
