use std::fs;
use std::path::Path;

use dcpso::abs::Variant;
use dcpso::harness::{
    ablation, exit_code, report_from_dir, run_experiment, sweep_m, AlgorithmKind, AlgorithmSpec,
    CellSummary, ExperimentConfig,
};
use dcpso::Error;

fn small(dir: &Path, functions: &[&str], trials: usize) -> ExperimentConfig {
    let mut c = ExperimentConfig::new(functions.iter().map(|s| s.to_string()).collect(), 4, dir);
    c.fes_max = Some(2000);
    c.population = 6;
    c.trials = trials;
    c.seed_base = 100;
    c
}

fn count(dir: &Path) -> usize {
    fs::read_dir(dir).map(|d| d.count()).unwrap_or(0)
}

#[test]
fn one_cell_three_trials_writes_expected_files() {
    let tmp = tempfile::tempdir().unwrap();
    let out = run_experiment(&small(tmp.path(), &["sphere"], 3)).unwrap();
    assert_eq!(count(&tmp.path().join("curves")), 3);
    assert_eq!(count(&tmp.path().join("summary")), 1);
    for f in ["report.json", "report.csv", "config.json"] {
        assert!(tmp.path().join(f).is_file(), "{f}");
    }
    let seeds: Vec<u64> = out.records.iter().map(|r| r.seed).collect();
    assert_eq!(seeds, [100, 101, 102]);

    let s: CellSummary = serde_json::from_str(
        &fs::read_to_string(tmp.path().join("summary/sphere__dcpso-abs.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(s.trials, 3);
    assert_eq!(s.seed_base, 100);
    assert_eq!(s.final_errors.len(), 3);
    assert!(s.min <= s.mean && s.mean <= s.max);
}

#[test]
fn curve_files_have_header_and_monotone_columns() {
    let tmp = tempfile::tempdir().unwrap();
    let mut cfg = small(tmp.path(), &["rastrigin-sr"], 2);
    cfg.algorithms
        .push(AlgorithmSpec::new(AlgorithmKind::StandardPso));
    let out = run_experiment(&cfg).unwrap();
    let total = out.records[0].total_fes as f64;
    let text =
        fs::read_to_string(tmp.path().join("curves/rastrigin-sr__dcpso-abs__t0.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("fes,error,diversity,non_g_steps,g_steps,pdg_events")
    );
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows[0][0], 6.0);
    assert_eq!(rows.last().unwrap()[0], total);
    assert!(total <= 2000.0);
    for w in rows.windows(2) {
        assert!(w[1][0] > w[0][0] && w[1][1] <= w[0][1]);
    }
    let steps: f64 = rows.iter().map(|r| r[3] + r[4]).sum();
    assert_eq!(steps, total - 6.0);
    assert!(tmp
        .path()
        .join("curves/rastrigin-sr__pso__t1.csv")
        .is_file());
}

#[test]
fn reruns_are_byte_identical() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let mut ca = small(a.path(), &["griewank", "hybrid3"], 3);
    ca.algorithms = Variant::ALL.into_iter().map(AlgorithmSpec::abs).collect();
    ca.dimension = 10;
    let mut cb = ca.clone();
    cb.output_dir = b.path().to_path_buf();
    cb.workers = 1;
    run_experiment(&ca).unwrap();
    run_experiment(&cb).unwrap();
    for sub in ["summary", "curves"] {
        for e in fs::read_dir(a.path().join(sub)).unwrap() {
            let p = e.unwrap().path();
            let other = b.path().join(sub).join(p.file_name().unwrap());
            assert_eq!(
                fs::read(&p).unwrap(),
                fs::read(other).unwrap(),
                "{}",
                p.display()
            );
        }
    }
    assert_eq!(
        fs::read(a.path().join("report.json")).unwrap(),
        fs::read(b.path().join("report.json")).unwrap()
    );
}

#[test]
fn ablation_report_has_every_variant() {
    let tmp = tempfile::tempdir().unwrap();
    let out = ablation(&small(tmp.path(), &["sphere", "rastrigin"], 5)).unwrap();
    for f in ["sphere", "rastrigin"] {
        for v in Variant::ALL {
            let cell = out.report.cell(f, v.label()).unwrap();
            assert_eq!(cell.trials, 5);
            assert_eq!(cell.verdict.is_none(), v == Variant::Full);
        }
    }
    assert_eq!(out.report.reference, "dcpso-abs");
}

#[test]
fn sweep_rows_and_code_path_identity() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = small(tmp.path(), &["rastrigin-sr"], 4);
    let table = sweep_m(&cfg, &[2, 6, 10], true).unwrap();
    assert_eq!(table.rows.len(), 3);
    assert_eq!(
        table.rows.iter().map(|r| r.m).collect::<Vec<_>>(),
        [2, 6, 10]
    );
    assert!(tmp.path().join("sweep_m.csv").is_file());

    let plain = run_experiment(&cfg).unwrap();
    let row6 = &table.rows[1];
    assert_eq!(row6.mean.to_bits(), plain.summaries[0].mean.to_bits());
}

#[test]
fn report_can_be_rebuilt_from_summaries() {
    let tmp = tempfile::tempdir().unwrap();
    let mut cfg = small(tmp.path(), &["sphere"], 6);
    cfg.algorithms.push(AlgorithmSpec::abs(Variant::GOnly));
    let out = run_experiment(&cfg).unwrap();
    let before = fs::read(tmp.path().join("report.json")).unwrap();
    fs::remove_file(tmp.path().join("report.json")).unwrap();
    let rebuilt = report_from_dir(tmp.path()).unwrap();
    assert_eq!(rebuilt.cells, out.report.cells);
    assert_eq!(fs::read(tmp.path().join("report.json")).unwrap(), before);
}

#[test]
fn unwritable_output_is_an_io_error() {
    let tmp = tempfile::tempdir().unwrap();
    let blocker = tmp.path().join("file");
    fs::write(&blocker, "x").unwrap();
    let err = run_experiment(&small(&blocker.join("out"), &["sphere"], 1)).unwrap_err();
    assert!(matches!(err, Error::Io { .. }));
    assert_eq!(exit_code(&err), 2);
}

#[test]
fn invalid_config_is_a_config_error() {
    let tmp = tempfile::tempdir().unwrap();
    let mut cfg = small(tmp.path(), &["sphere"], 1);
    cfg.functions.push("no-such-function".into());
    let err = run_experiment(&cfg).unwrap_err();
    assert_eq!(exit_code(&err), 1);
    assert!(err.to_string().contains("functions[1]"));
    assert_eq!(count(tmp.path()), 0);
}
