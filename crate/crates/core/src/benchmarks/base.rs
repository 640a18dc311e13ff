use std::f64::consts::{E, PI};

use super::{Category, ObjectiveFunction};
use crate::error::{Error, Result};
use crate::swarm::SearchSpace;

/// Per-dimension constant of the Schwefel function (value of
/// `x·sin(√|x|)` at its maximizer).
const SCHWEFEL_PEAK: f64 = 418.982_887_272_433_7;
const SCHWEFEL_ARGMIN: f64 = 420.968_746_359_982;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BaseKind {
    Sphere,
    BentCigar,
    Elliptic,
    Rosenbrock,
    Rastrigin,
    NonContinuousRastrigin,
    Schwefel,
    Ackley,
    Griewank,
}

impl BaseKind {
    pub const ALL: [BaseKind; 9] = [
        BaseKind::Sphere,
        BaseKind::BentCigar,
        BaseKind::Elliptic,
        BaseKind::Rosenbrock,
        BaseKind::Rastrigin,
        BaseKind::NonContinuousRastrigin,
        BaseKind::Schwefel,
        BaseKind::Ackley,
        BaseKind::Griewank,
    ];

    pub fn id(self) -> &'static str {
        match self {
            BaseKind::Sphere => "sphere",
            BaseKind::BentCigar => "bent-cigar",
            BaseKind::Elliptic => "elliptic",
            BaseKind::Rosenbrock => "rosenbrock",
            BaseKind::Rastrigin => "rastrigin",
            BaseKind::NonContinuousRastrigin => "noncont-rastrigin",
            BaseKind::Schwefel => "schwefel",
            BaseKind::Ackley => "ackley",
            BaseKind::Griewank => "griewank",
        }
    }

    pub fn from_id(id: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.id() == id)
    }

    pub fn category(self) -> Category {
        match self {
            BaseKind::Sphere | BaseKind::BentCigar | BaseKind::Elliptic => Category::Unimodal,
            _ => Category::SimpleMultimodal,
        }
    }

    pub fn bounds(self) -> (f64, f64) {
        match self {
            BaseKind::Schwefel => (-500.0, 500.0),
            _ => (-100.0, 100.0),
        }
    }

    pub fn min_dimension(self) -> usize {
        match self {
            BaseKind::Rosenbrock => 2,
            _ => 1,
        }
    }

    /// Minimizer of the canonical (untransformed) form.
    pub fn argmin(self, d: usize) -> Vec<f64> {
        match self {
            BaseKind::Rosenbrock => vec![1.0; d],
            BaseKind::Schwefel => vec![SCHWEFEL_ARGMIN; d],
            _ => vec![0.0; d],
        }
    }

    pub fn eval(self, x: &[f64]) -> f64 {
        match self {
            BaseKind::Sphere => x.iter().map(|v| v * v).sum(),
            BaseKind::BentCigar => x[0] * x[0] + 1e6 * x[1..].iter().map(|v| v * v).sum::<f64>(),
            BaseKind::Elliptic => {
                let d = x.len();
                if d == 1 {
                    return x[0] * x[0];
                }
                x.iter()
                    .enumerate()
                    .map(|(i, v)| 1e6f64.powf(i as f64 / (d - 1) as f64) * v * v)
                    .sum()
            }
            BaseKind::Rosenbrock => x
                .windows(2)
                .map(|w| {
                    let a = w[0] * w[0] - w[1];
                    let b = w[0] - 1.0;
                    100.0 * a * a + b * b
                })
                .sum(),
            BaseKind::Rastrigin => rastrigin(x.iter().copied()),
            BaseKind::NonContinuousRastrigin => rastrigin(x.iter().map(|&v| {
                if v.abs() <= 0.5 {
                    v
                } else {
                    (2.0 * v).round() / 2.0
                }
            })),
            BaseKind::Schwefel => {
                let d = x.len() as f64;
                SCHWEFEL_PEAK * d - x.iter().map(|&v| schwefel_term(v, d)).sum::<f64>()
            }
            BaseKind::Ackley => {
                let d = x.len() as f64;
                let sq = x.iter().map(|v| v * v).sum::<f64>() / d;
                let cs = x.iter().map(|v| (2.0 * PI * v).cos()).sum::<f64>() / d;
                -20.0 * (-0.2 * sq.sqrt()).exp() - cs.exp() + 20.0 + E
            }
            BaseKind::Griewank => {
                let s = x.iter().map(|v| v * v).sum::<f64>() / 4000.0;
                let p: f64 = x
                    .iter()
                    .enumerate()
                    .map(|(i, v)| (v / ((i + 1) as f64).sqrt()).cos())
                    .product();
                s - p + 1.0
            }
        }
    }
}

fn rastrigin(x: impl Iterator<Item = f64>) -> f64 {
    x.map(|v| v * v - 10.0 * (2.0 * PI * v).cos() + 10.0).sum()
}

// Outside [-500, 500] the term is reflected and penalized so that rotated
// variants cannot escape below the optimum.
fn schwefel_term(z: f64, d: f64) -> f64 {
    if z.abs() <= 500.0 {
        z * z.abs().sqrt().sin()
    } else if z > 500.0 {
        let m = 500.0 - z % 500.0;
        m * m.abs().sqrt().sin() - (z - 500.0).powi(2) / (10_000.0 * d)
    } else {
        let m = (-z) % 500.0 - 500.0;
        m * m.abs().sqrt().sin() - (z + 500.0).powi(2) / (10_000.0 * d)
    }
}

/// Canonical function on its canonical box with optimum value 0.
pub fn make_base(name: &str, dimension: usize) -> Result<ObjectiveFunction> {
    let kind = BaseKind::from_id(name).ok_or_else(|| Error::Registry(name.to_string()))?;
    base_function(kind, dimension)
}

pub(crate) fn base_function(kind: BaseKind, dimension: usize) -> Result<ObjectiveFunction> {
    if dimension < kind.min_dimension() {
        return Err(Error::config(format!(
            "{} needs dimension >= {}, got {dimension}",
            kind.id(),
            kind.min_dimension()
        )));
    }
    let (lo, hi) = kind.bounds();
    let space = SearchSpace::uniform(dimension, lo, hi)?;
    Ok(ObjectiveFunction::new(
        kind.id(),
        space,
        0.0,
        kind.category(),
        kind.argmin(dimension),
        move |x| kind.eval(x),
    ))
}
