use std::collections::HashSet;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::abs::{AbsConfig, LearningCurve, Variant, DEFAULT_REFRESHING_GAP};
use crate::baseline::{PsoConfig, BASELINE_ID};
use crate::benchmarks::resolve;
use crate::error::{Error, Result};
use crate::swarm::ScheduleParams;

pub const DEFAULT_POPULATION: usize = 20;
pub const DEFAULT_FES_PER_DIMENSION: u64 = 10_000;
pub const DEFAULT_TRIALS: usize = 30;
pub const DEFAULT_ALPHA: f64 = 0.05;

/// Optimizer family selected by an algorithm entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AlgorithmKind {
    Abs(Variant),
    StandardPso,
}

impl AlgorithmKind {
    pub fn default_id(self) -> &'static str {
        match self {
            AlgorithmKind::Abs(v) => v.label(),
            AlgorithmKind::StandardPso => BASELINE_ID,
        }
    }
}

impl fmt::Display for AlgorithmKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.default_id())
    }
}

impl FromStr for AlgorithmKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == BASELINE_ID || s == "standard-pso" {
            return Ok(AlgorithmKind::StandardPso);
        }
        let variant = match s {
            "full" => Variant::Full,
            "p-only" => Variant::POnly,
            "non-g-only" => Variant::NonGOnly,
            "g-only" => Variant::GOnly,
            _ => Variant::ALL
                .into_iter()
                .find(|v| v.label() == s)
                .ok_or_else(|| Error::config(format!("unknown algorithm `{s}`")))?,
        };
        Ok(AlgorithmKind::Abs(variant))
    }
}

impl Serialize for AlgorithmKind {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.default_id())
    }
}

impl<'de> Deserialize<'de> for AlgorithmKind {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// One compared optimizer with optional parameter overrides.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgorithmSpec {
    pub algorithm: AlgorithmKind,
    /// Name in reports; defaults to the algorithm's own id.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schedule: Option<ScheduleParams>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub learning: Option<LearningCurve>,
}

impl AlgorithmSpec {
    pub fn new(algorithm: AlgorithmKind) -> Self {
        Self {
            algorithm,
            id: None,
            m: None,
            schedule: None,
            learning: None,
        }
    }

    pub fn abs(variant: Variant) -> Self {
        Self::new(AlgorithmKind::Abs(variant))
    }

    pub fn name(&self) -> &str {
        self.id.as_deref().unwrap_or(self.algorithm.default_id())
    }

    pub fn refreshing_gap(&self) -> u32 {
        self.m.unwrap_or(DEFAULT_REFRESHING_GAP)
    }

    pub fn abs_config(&self, variant: Variant, population: usize, fes_max: u64) -> AbsConfig {
        AbsConfig {
            m: self.refreshing_gap(),
            population,
            fes_max,
            variant,
            schedule: self.schedule.unwrap_or_default(),
            learning: self.learning.unwrap_or_default(),
        }
    }

    pub fn pso_config(&self, population: usize, fes_max: u64) -> PsoConfig {
        PsoConfig {
            population,
            fes_max,
            schedule: self.schedule.unwrap_or_default(),
        }
    }
}

/// Accepts either a bare algorithm id or a full object.
fn algorithm_list<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<AlgorithmSpec>, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Entry {
        Id(AlgorithmKind),
        Spec(AlgorithmSpec),
    }
    Ok(Vec::<Entry>::deserialize(d)?
        .into_iter()
        .map(|e| match e {
            Entry::Id(k) => AlgorithmSpec::new(k),
            Entry::Spec(s) => s,
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RecordFlags {
    pub curves: bool,
    pub diversity: bool,
    pub channel_usage: bool,
    /// Keep every `stride`-th curve row (the last row is always kept).
    pub stride: usize,
    pub m1_m2_trace: bool,
}

impl Default for RecordFlags {
    fn default() -> Self {
        Self {
            curves: true,
            diversity: true,
            channel_usage: true,
            stride: 1,
            m1_m2_trace: false,
        }
    }
}

fn default_population() -> usize {
    DEFAULT_POPULATION
}
fn default_fes_per_dimension() -> u64 {
    DEFAULT_FES_PER_DIMENSION
}
fn default_trials() -> usize {
    DEFAULT_TRIALS
}
fn default_alpha() -> f64 {
    DEFAULT_ALPHA
}
fn default_algorithms() -> Vec<AlgorithmSpec> {
    vec![AlgorithmSpec::abs(Variant::Full)]
}

/// A complete experiment description, read from JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub functions: Vec<String>,
    #[serde(default = "default_algorithms", deserialize_with = "algorithm_list")]
    pub algorithms: Vec<AlgorithmSpec>,
    pub dimension: usize,
    #[serde(default = "default_population")]
    pub population: usize,
    /// Absolute budget; when absent, `fes_per_dimension · dimension`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fes_max: Option<u64>,
    #[serde(default = "default_fes_per_dimension")]
    pub fes_per_dimension: u64,
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default)]
    pub seed_base: u64,
    pub output_dir: PathBuf,
    /// Report reference; defaults to the first algorithm.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference: Option<String>,
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    /// Worker threads; 0 uses the available parallelism.
    #[serde(default)]
    pub workers: usize,
    #[serde(default)]
    pub record: RecordFlags,
}

impl ExperimentConfig {
    pub fn new(functions: Vec<String>, dimension: usize, output_dir: impl Into<PathBuf>) -> Self {
        Self {
            functions,
            algorithms: default_algorithms(),
            dimension,
            population: DEFAULT_POPULATION,
            fes_max: None,
            fes_per_dimension: DEFAULT_FES_PER_DIMENSION,
            trials: DEFAULT_TRIALS,
            seed_base: 0,
            output_dir: output_dir.into(),
            reference: None,
            alpha: DEFAULT_ALPHA,
            workers: 0,
            record: RecordFlags::default(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let cfg: Self = serde_json::from_str(&text).map_err(|e| Error::Json {
            path: path.display().to_string(),
            source: e,
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn budget(&self) -> u64 {
        self.fes_max
            .unwrap_or(self.fes_per_dimension.saturating_mul(self.dimension as u64))
    }

    pub fn reference_id(&self) -> &str {
        match &self.reference {
            Some(r) => r,
            None => self.algorithms.first().map_or("", |a| a.name()),
        }
    }

    /// Checks every field, naming the offending one in the message.
    pub fn validate(&self) -> Result<()> {
        let field = |name: &str, msg: String| Err(Error::Config(format!("{name}: {msg}")));
        if self.functions.is_empty() {
            return field("functions", "at least one function is required".into());
        }
        if self.dimension == 0 {
            return field("dimension", "must be at least 1".into());
        }
        for (i, f) in self.functions.iter().enumerate() {
            if let Err(e) = resolve(f, self.dimension) {
                return field(&format!("functions[{i}]"), e.to_string());
            }
        }
        if self.trials == 0 {
            return field("trials", "must be at least 1".into());
        }
        if self.population < 2 {
            return field(
                "population",
                format!("must be at least 2, got {}", self.population),
            );
        }
        let budget = self.budget();
        if budget < self.population as u64 {
            return field(
                "fes_max",
                format!(
                    "budget {budget} is smaller than the population {}",
                    self.population
                ),
            );
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return field("alpha", format!("{} is outside (0, 1)", self.alpha));
        }
        if self.record.stride == 0 {
            return field("record.stride", "must be at least 1".into());
        }
        if self.algorithms.is_empty() {
            return field("algorithms", "at least one algorithm is required".into());
        }
        let mut seen = HashSet::new();
        for (i, a) in self.algorithms.iter().enumerate() {
            let name = format!("algorithms[{i}]");
            if !seen.insert(a.name()) {
                return field(&name, format!("duplicate id `{}`", a.name()));
            }
            if a.m == Some(0) {
                return field(&format!("{name}.m"), "must be at least 1".into());
            }
            if let Some(s) = &a.schedule {
                if let Err(e) = s.validate() {
                    return field(&format!("{name}.schedule"), e.to_string());
                }
            }
        }
        let reference = self.reference_id();
        if !self.algorithms.iter().any(|a| a.name() == reference) {
            return field(
                "reference",
                format!("`{reference}` is not among the algorithms"),
            );
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_config_gets_defaults() {
        let c = ExperimentConfig::from_json(
            r#"{"functions": ["sphere"], "dimension": 10, "output_dir": "out"}"#,
        )
        .unwrap();
        c.validate().unwrap();
        assert_eq!(c.population, 20);
        assert_eq!(c.trials, 30);
        assert_eq!(c.budget(), 100_000);
        assert_eq!(c.reference_id(), "dcpso-abs");
        assert_eq!(c.algorithms, vec![AlgorithmSpec::abs(Variant::Full)]);
    }

    #[test]
    fn algorithm_entries_accept_strings_and_objects() {
        let c = ExperimentConfig::from_json(
            r#"{"functions": ["sphere"], "dimension": 2, "output_dir": "o",
                "algorithms": ["pso", "g-only", {"algorithm": "dcpso-abs", "id": "m4", "m": 4}]}"#,
        )
        .unwrap();
        assert_eq!(c.algorithms[0].algorithm, AlgorithmKind::StandardPso);
        assert_eq!(c.algorithms[1].name(), "pso-abs-g");
        assert_eq!(c.algorithms[2].name(), "m4");
        assert_eq!(c.algorithms[2].refreshing_gap(), 4);
    }

    #[test]
    fn field_level_messages() {
        let mut c = ExperimentConfig::new(vec!["sphere".into(), "nope".into()], 2, "o");
        let msg = c.validate().unwrap_err().to_string();
        assert!(msg.contains("functions[1]"), "{msg}");
        c.functions.pop();
        c.trials = 0;
        assert!(c.validate().unwrap_err().to_string().contains("trials"));
        c.trials = 1;
        c.algorithms[0].m = Some(0);
        assert!(c
            .validate()
            .unwrap_err()
            .to_string()
            .contains("algorithms[0].m"));
        c.algorithms[0].m = None;
        c.reference = Some("pso".into());
        assert!(c.validate().unwrap_err().to_string().contains("reference"));
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let r = ExperimentConfig::from_json(
            r#"{"functions": ["sphere"], "dimension": 2, "output_dir": "o", "trails": 3}"#,
        );
        assert!(matches!(r, Err(Error::Config(_))));
    }

    #[test]
    fn round_trips_through_json() {
        let mut c = ExperimentConfig::new(vec!["rastrigin-sr(seed=3)".into()], 5, "x");
        c.algorithms
            .push(AlgorithmSpec::new(AlgorithmKind::StandardPso));
        let text = serde_json::to_string(&c).unwrap();
        assert_eq!(ExperimentConfig::from_json(&text).unwrap(), c);
    }
}
