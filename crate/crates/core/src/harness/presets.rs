//! Ready-made experiment configurations.

use std::path::PathBuf;

use super::config::{AlgorithmSpec, ExperimentConfig};
use crate::abs::Variant;

/// Shifted-rotated multimodal functions used for the refreshing-gap sweep.
pub const MULTIMODAL: [&str; 3] = ["rosenbrock-sr", "noncont-rastrigin-sr", "schwefel-sr"];

/// Multimodal, hybrid and composition functions at laptop scale.
pub const DESK: [&str; 7] = [
    "rosenbrock-sr",
    "noncont-rastrigin-sr",
    "schwefel-sr",
    "hybrid3",
    "hybrid6",
    "composition3",
    "composition7",
];

fn preset(functions: &[&str], output_dir: impl Into<PathBuf>) -> ExperimentConfig {
    let mut c = ExperimentConfig::new(
        functions.iter().map(|s| s.to_string()).collect(),
        10,
        output_dir,
    );
    c.seed_base = 1;
    c
}

/// The four ablation variants on [`DESK`] at D = 10 with 30 trials.
/// Curves keep every 50th iteration.
pub fn desk(output_dir: impl Into<PathBuf>) -> ExperimentConfig {
    let mut c = preset(&DESK, output_dir);
    c.algorithms = Variant::ALL.into_iter().map(AlgorithmSpec::abs).collect();
    c.record.stride = 50;
    c
}

/// The full method on [`MULTIMODAL`] at D = 10 with 30 trials.
pub fn multimodal(output_dir: impl Into<PathBuf>) -> ExperimentConfig {
    preset(&MULTIMODAL, output_dir)
}
