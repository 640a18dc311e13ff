//! Seeded multi-trial experiments and their on-disk artifacts.
//!
//! An experiment directory holds `config.json`, `curves/<fn>__<alg>__t<k>.csv`,
//! `summary/<fn>__<alg>.json`, `report.json` and `report.csv`. Trial `k`
//! always runs with seed `seed_base + k`, so a config fully determines every
//! byte written.

mod config;
mod output;
pub mod presets;
mod runner;

pub use config::{
    AlgorithmKind, AlgorithmSpec, ExperimentConfig, RecordFlags, DEFAULT_ALPHA,
    DEFAULT_FES_PER_DIMENSION, DEFAULT_POPULATION, DEFAULT_TRIALS,
};
pub use output::{curve_csv, curve_path, sanitize, summary_path, CellSummary, SplitPoint};
pub use runner::{
    ablation, ablation_config, execute, exit_code, report_from_dir, run_experiment, run_trial,
    sweep_m, sweep_point_config, ExperimentOutput, SweepRow, SweepTable,
};
