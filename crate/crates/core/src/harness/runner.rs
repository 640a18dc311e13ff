use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::{AlgorithmKind, AlgorithmSpec, ExperimentConfig};
use super::output::{
    create_dir, curve_csv, curve_path, read_json, summary_path, write_file, write_json,
    CellSummary, SplitPoint,
};
use crate::abs::{run_dcpso_abs, Variant};
use crate::analysis::{aggregate_errors, describe, CellErrors, ComparisonReport, TrialRecord};
use crate::baseline::run_standard_pso;
use crate::benchmarks::{resolve, ObjectiveFunction};
use crate::error::{Error, Result};

/// Process exit code for an error.
pub fn exit_code(error: &Error) -> i32 {
    match error {
        Error::Config(_) | Error::Registry(_) | Error::Report(_) | Error::Json { .. } => 1,
        Error::Io { .. } => 2,
        Error::Invariant(_) => 3,
    }
}

/// Runs one trial of one configured algorithm.
pub fn run_trial(
    spec: &AlgorithmSpec,
    objective: &ObjectiveFunction,
    population: usize,
    fes_max: u64,
    seed: u64,
) -> Result<TrialRecord> {
    let mut record = match spec.algorithm {
        AlgorithmKind::Abs(v) => {
            run_dcpso_abs(objective, &spec.abs_config(v, population, fes_max), seed)?
        }
        AlgorithmKind::StandardPso => {
            run_standard_pso(objective, &spec.pso_config(population, fes_max), seed)?
        }
    };
    record.algorithm = spec.name().to_string();
    Ok(record)
}

fn pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::config(format!("workers: {e}")))
}

/// Executes every (function, algorithm, trial) job without writing files.
/// Records come back grouped by function, then algorithm, then trial.
pub fn execute(config: &ExperimentConfig) -> Result<Vec<TrialRecord>> {
    config.validate()?;
    let objectives: Vec<ObjectiveFunction> = config
        .functions
        .iter()
        .map(|f| resolve(f, config.dimension))
        .collect::<Result<_>>()?;
    let fes_max = config.budget();
    let mut jobs = Vec::new();
    for (fi, _) in objectives.iter().enumerate() {
        for (ai, _) in config.algorithms.iter().enumerate() {
            for t in 0..config.trials {
                jobs.push((fi, ai, t));
            }
        }
    }
    pool(config.workers)?.install(|| {
        jobs.par_iter()
            .map(|&(fi, ai, t)| {
                let mut r = run_trial(
                    &config.algorithms[ai],
                    &objectives[fi],
                    config.population,
                    fes_max,
                    config.seed_base + t as u64,
                )?;
                r.function = config.functions[fi].clone();
                Ok(r)
            })
            .collect()
    })
}

fn cell_errors(config: &ExperimentConfig, records: &[TrialRecord]) -> Vec<CellErrors> {
    records
        .chunks(config.trials)
        .map(|c| CellErrors {
            function: c[0].function.clone(),
            algorithm: c[0].algorithm.clone(),
            errors: c.iter().map(|r| r.final_error).collect(),
        })
        .collect()
}

fn summaries(config: &ExperimentConfig, records: &[TrialRecord]) -> Result<Vec<CellSummary>> {
    let mut out = Vec::new();
    for (ci, cell) in records.chunks(config.trials).enumerate() {
        let spec = &config.algorithms[ci % config.algorithms.len()];
        let function = &config.functions[ci / config.algorithms.len()];
        let errors: Vec<f64> = cell.iter().map(|r| r.final_error).collect();
        let stats = describe(&errors);
        let is_abs = matches!(spec.algorithm, AlgorithmKind::Abs(_));
        let m = is_abs.then(|| spec.refreshing_gap());
        let trace = match m {
            Some(m) if config.record.m1_m2_trace => Some(
                cell[0]
                    .samples
                    .iter()
                    .step_by(config.record.stride)
                    .map(|s| SplitPoint {
                        fes: s.fes,
                        m1: s.m1,
                        m2: m - s.m1,
                    })
                    .collect(),
            ),
            _ => None,
        };
        out.push(CellSummary {
            function: function.clone(),
            algorithm: spec.name().to_string(),
            dimension: config.dimension,
            population: config.population,
            fes_max: config.budget(),
            transform_seed: resolve(function, config.dimension)?.transform_seed(),
            m,
            mean: stats.mean,
            std: stats.std,
            min: stats.min,
            max: stats.max,
            trials: cell.len(),
            seed_base: config.seed_base,
            final_errors: errors,
            m1_m2_trace: trace,
        });
    }
    Ok(out)
}

fn prepare_output(dir: &Path, curves: bool) -> Result<()> {
    create_dir(dir)?;
    create_dir(&dir.join("summary"))?;
    if curves {
        create_dir(&dir.join("curves"))?;
    }
    Ok(())
}

fn write_report(dir: &Path, report: &ComparisonReport) -> Result<()> {
    write_json(&dir.join("report.json"), report)?;
    write_file(&dir.join("report.csv"), &report.to_csv())
}

/// Result of a full experiment.
#[derive(Debug, Clone)]
pub struct ExperimentOutput {
    pub records: Vec<TrialRecord>,
    pub summaries: Vec<CellSummary>,
    pub report: ComparisonReport,
}

/// Runs the experiment and writes curves, summaries, the report and a copy
/// of the configuration under the output directory.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentOutput> {
    config.validate()?;
    let dir = config.output_dir.as_path();
    prepare_output(dir, config.record.curves)?;
    write_json(&dir.join("config.json"), config)?;

    let records = execute(config)?;
    let summaries = summaries(config, &records)?;
    let report = aggregate_errors(
        &cell_errors(config, &records),
        config.reference_id(),
        config.alpha,
    )?;

    if config.record.curves {
        for cell in records.chunks(config.trials) {
            for (t, r) in cell.iter().enumerate() {
                let path = curve_path(dir, &r.function, &r.algorithm, t);
                write_file(&path, &curve_csv(r, &config.record))?;
            }
        }
    }
    for s in &summaries {
        write_json(&summary_path(dir, &s.function, &s.algorithm), s)?;
    }
    write_report(dir, &report)?;
    log::info!(
        "{} trials over {} functions written to {}",
        records.len(),
        config.functions.len(),
        dir.display()
    );
    Ok(ExperimentOutput {
        records,
        summaries,
        report,
    })
}

/// Same experiment with the four ablation variants of the method, the full
/// method as reference. Overrides from the first configured algorithm of
/// the method carry over to every variant.
pub fn ablation_config(config: &ExperimentConfig) -> ExperimentConfig {
    let template = config
        .algorithms
        .iter()
        .find(|a| matches!(a.algorithm, AlgorithmKind::Abs(_)))
        .cloned()
        .unwrap_or_else(|| AlgorithmSpec::abs(Variant::Full));
    let mut out = config.clone();
    out.algorithms = Variant::ALL
        .into_iter()
        .map(|v| AlgorithmSpec {
            algorithm: AlgorithmKind::Abs(v),
            id: None,
            ..template.clone()
        })
        .collect();
    out.reference = Some(Variant::Full.label().to_string());
    out
}

pub fn ablation(config: &ExperimentConfig) -> Result<ExperimentOutput> {
    run_experiment(&ablation_config(config))
}

/// One row of the refreshing-gap sweep table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub function: String,
    pub m: u32,
    pub mean: f64,
    pub std: f64,
    pub min: f64,
    pub max: f64,
    pub trials: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepTable {
    pub algorithm: String,
    pub rows: Vec<SweepRow>,
}

impl SweepTable {
    /// Refreshing gap with the lowest mean error on `function`.
    pub fn best_m(&self, function: &str) -> Option<u32> {
        self.rows
            .iter()
            .filter(|r| r.function == function)
            .min_by(|a, b| a.mean.total_cmp(&b.mean))
            .map(|r| r.m)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("function,m,mean,std,min,max,trials\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                r.function, r.m, r.mean, r.std, r.min, r.max, r.trials
            ));
        }
        out
    }
}

/// Config for one sweep point: the first configured algorithm of the
/// method (or the full method) with its refreshing gap replaced.
pub fn sweep_point_config(config: &ExperimentConfig, m: u32) -> ExperimentConfig {
    let mut spec = config
        .algorithms
        .iter()
        .find(|a| matches!(a.algorithm, AlgorithmKind::Abs(_)))
        .cloned()
        .unwrap_or_else(|| AlgorithmSpec::abs(Variant::Full));
    spec.m = Some(m);
    let mut out = config.clone();
    out.algorithms = vec![spec];
    out.reference = None;
    out
}

/// Runs the configured functions once per refreshing gap and tabulates the
/// mean final error per (function, M). Writes `sweep_m.csv` and
/// `sweep_m.json` when `write` is set.
pub fn sweep_m(config: &ExperimentConfig, ms: &[u32], write: bool) -> Result<SweepTable> {
    if ms.is_empty() {
        return Err(Error::config("m: at least one value is required"));
    }
    if let Some(bad) = ms.iter().find(|m| **m < 1) {
        return Err(Error::config(format!(
            "m: values must be at least 1, got {bad}"
        )));
    }
    config.validate()?;
    let algorithm = sweep_point_config(config, 1).algorithms[0]
        .name()
        .to_string();
    let mut rows = Vec::new();
    for &m in ms {
        let records = execute(&sweep_point_config(config, m))?;
        for cell in records.chunks(config.trials) {
            let errors: Vec<f64> = cell.iter().map(|r| r.final_error).collect();
            let s = describe(&errors);
            rows.push(SweepRow {
                function: cell[0].function.clone(),
                m,
                mean: s.mean,
                std: s.std,
                min: s.min,
                max: s.max,
                trials: cell.len(),
            });
        }
    }
    rows.sort_by(|a, b| {
        let fa = config.functions.iter().position(|f| *f == a.function);
        let fb = config.functions.iter().position(|f| *f == b.function);
        fa.cmp(&fb).then(a.m.cmp(&b.m))
    });
    let table = SweepTable { algorithm, rows };
    if write {
        let dir = config.output_dir.as_path();
        create_dir(dir)?;
        write_file(&dir.join("sweep_m.csv"), &table.to_csv())?;
        write_json(&dir.join("sweep_m.json"), &table)?;
    }
    Ok(table)
}

/// Rebuilds the report of a finished experiment from its summary files.
pub fn report_from_dir(dir: &Path) -> Result<ComparisonReport> {
    let config: ExperimentConfig = read_json(&dir.join("config.json"))?;
    let mut cells = Vec::new();
    for f in &config.functions {
        for a in &config.algorithms {
            let s: CellSummary = read_json(&summary_path(dir, f, a.name()))?;
            cells.push(CellErrors {
                function: s.function,
                algorithm: s.algorithm,
                errors: s.final_errors,
            });
        }
    }
    let report = aggregate_errors(&cells, config.reference_id(), config.alpha)?;
    write_report(dir, &report)?;
    Ok(report)
}
