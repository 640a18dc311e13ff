use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::base::{base_function, BaseKind};
use super::composite::{make_composition, make_hybrid, CompositionComponent};
use super::transform::{shift_rotate, TransformSpec};
use super::{Category, ObjectiveFunction};
use crate::error::{Error, Result};
use crate::swarm::SearchSpace;

/// Landscape seed used when an id carries no `(seed=N)` suffix.
pub const DEFAULT_TRANSFORM_SEED: u64 = 2017;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Family {
    Base(BaseKind),
    ShiftedRotated(BaseKind),
    Hybrid3,
    Hybrid6,
    Composition3,
    Composition7,
}

/// Parsed registry id: a family name with an optional landscape seed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionId {
    family: Family,
    seed: Option<u64>,
}

impl FunctionId {
    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    fn stem(&self) -> String {
        match self.family {
            Family::Base(k) => k.id().to_string(),
            Family::ShiftedRotated(k) => format!("{}-sr", k.id()),
            Family::Hybrid3 => "hybrid3".into(),
            Family::Hybrid6 => "hybrid6".into(),
            Family::Composition3 => "composition3".into(),
            Family::Composition7 => "composition7".into(),
        }
    }
}

impl fmt::Display for FunctionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.seed {
            Some(s) => write!(f, "{}(seed={s})", self.stem()),
            None => f.write_str(&self.stem()),
        }
    }
}

impl FromStr for FunctionId {
    type Err = Error;

    fn from_str(raw: &str) -> Result<Self> {
        let id = raw.trim();
        let (stem, seed) = match id.split_once('(') {
            None => (id, None),
            Some((stem, rest)) => {
                let inner = rest
                    .strip_suffix(')')
                    .ok_or_else(|| Error::Registry(raw.to_string()))?;
                let value = inner
                    .trim()
                    .strip_prefix("seed")
                    .map(str::trim_start)
                    .and_then(|s| s.strip_prefix('='))
                    .ok_or_else(|| Error::Registry(raw.to_string()))?;
                let seed = value
                    .trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Registry(raw.to_string()))?;
                (stem.trim(), Some(seed))
            }
        };
        let family = match stem {
            "hybrid3" => Family::Hybrid3,
            "hybrid6" => Family::Hybrid6,
            "composition3" => Family::Composition3,
            "composition7" => Family::Composition7,
            _ => match stem.strip_suffix("-sr") {
                Some(b) => Family::ShiftedRotated(
                    BaseKind::from_id(b).ok_or_else(|| Error::Registry(raw.to_string()))?,
                ),
                None => Family::Base(
                    BaseKind::from_id(stem).ok_or_else(|| Error::Registry(raw.to_string()))?,
                ),
            },
        };
        if seed.is_some() && matches!(family, Family::Base(_)) {
            // untransformed functions have no landscape randomness
            return Err(Error::Registry(raw.to_string()));
        }
        Ok(FunctionId { family, seed })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FunctionInfo {
    pub id: String,
    pub category: Category,
    pub description: String,
}

/// Every registered family, with a short description.
pub fn list_functions() -> Vec<FunctionInfo> {
    let mut out = Vec::new();
    for k in BaseKind::ALL {
        out.push(FunctionInfo {
            id: k.id().to_string(),
            category: k.category(),
            description: format!("canonical {} on its standard box", k.id()),
        });
    }
    for k in BaseKind::ALL {
        out.push(FunctionInfo {
            id: format!("{}-sr", k.id()),
            category: k.category(),
            description: format!("seeded shifted and rotated {}", k.id()),
        });
    }
    let complex = [
        (
            "hybrid3",
            "bent-cigar/rosenbrock/rastrigin blocks (3 parts)",
        ),
        (
            "hybrid6",
            "elliptic/ackley/griewank/rastrigin/schwefel blocks (5 parts)",
        ),
        (
            "composition3",
            "rosenbrock/elliptic/bent-cigar/rastrigin blend (4 parts)",
        ),
        (
            "composition7",
            "griewank/rastrigin/schwefel/ackley/sphere/noncont-rastrigin blend (6 parts)",
        ),
    ];
    for (id, desc) in complex {
        out.push(FunctionInfo {
            id: id.to_string(),
            category: Category::ComplexMultimodal,
            description: desc.to_string(),
        });
    }
    out
}

fn derive_seed(seed: u64, index: u64) -> u64 {
    // splitmix64 finalizer
    let mut z = seed.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn composition(
    id: &FunctionId,
    d: usize,
    seed: u64,
    parts: &[(BaseKind, f64, f64)],
) -> Result<ObjectiveFunction> {
    let space = SearchSpace::uniform(d, -100.0, 100.0)?;
    let mut components = Vec::with_capacity(parts.len());
    for (i, &(kind, sigma, lambda)) in parts.iter().enumerate() {
        // components live on the shared [-100, 100] box
        let base = base_function(kind, d)?;
        let base = ObjectiveFunction::new(
            kind.id(),
            space.clone(),
            0.0,
            kind.category(),
            base.optimum().to_vec(),
            move |x| kind.eval(x),
        );
        let spec = TransformSpec::generate(&space, derive_seed(seed, i as u64));
        components.push(CompositionComponent {
            function: shift_rotate(&base, &spec)?,
            sigma,
            lambda,
            bias: 100.0 * i as f64,
        });
    }
    Ok(make_composition(id.to_string(), components)?.with_transform_seed(seed))
}

/// Builds the objective named by `id` in `dimension` dimensions.
pub fn resolve(id: &str, dimension: usize) -> Result<ObjectiveFunction> {
    let parsed: FunctionId = id.parse()?;
    let seed = parsed.seed.unwrap_or(DEFAULT_TRANSFORM_SEED);
    let name = parsed.to_string();
    let f = match parsed.family {
        Family::Base(k) => base_function(k, dimension)?,
        Family::ShiftedRotated(k) => {
            let base = base_function(k, dimension)?;
            let spec = TransformSpec::generate(base.space(), seed);
            shift_rotate(&base, &spec)?
        }
        Family::Hybrid3 => {
            let space = SearchSpace::uniform(dimension, -100.0, 100.0)?;
            make_hybrid(
                name.clone(),
                &[
                    (BaseKind::BentCigar, 0.3),
                    (BaseKind::Rosenbrock, 0.3),
                    (BaseKind::Rastrigin, 0.4),
                ],
                &space,
                seed,
            )?
        }
        Family::Hybrid6 => {
            let space = SearchSpace::uniform(dimension, -100.0, 100.0)?;
            make_hybrid(
                name.clone(),
                &[
                    (BaseKind::Elliptic, 0.2),
                    (BaseKind::Ackley, 0.2),
                    (BaseKind::Griewank, 0.2),
                    (BaseKind::Rastrigin, 0.2),
                    (BaseKind::Schwefel, 0.2),
                ],
                &space,
                seed,
            )?
        }
        Family::Composition3 => composition(
            &parsed,
            dimension,
            seed,
            &[
                (BaseKind::Rosenbrock, 10.0, 1.0),
                (BaseKind::Elliptic, 20.0, 1e-6),
                (BaseKind::BentCigar, 30.0, 1e-6),
                (BaseKind::Rastrigin, 40.0, 1.0),
            ],
        )?,
        Family::Composition7 => composition(
            &parsed,
            dimension,
            seed,
            &[
                (BaseKind::Griewank, 10.0, 100.0),
                (BaseKind::Rastrigin, 20.0, 1.0),
                (BaseKind::Schwefel, 30.0, 1.0),
                (BaseKind::Ackley, 40.0, 10.0),
                (BaseKind::Sphere, 50.0, 1e-3),
                (BaseKind::NonContinuousRastrigin, 60.0, 1.0),
            ],
        )?,
    };
    Ok(f.renamed(name))
}
