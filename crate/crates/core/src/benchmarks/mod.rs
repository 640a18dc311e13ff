//! Seeded benchmark objectives: canonical base functions, shifted and
//! rotated variants, hybrid and composition builders, and a registry that
//! resolves string ids such as `rastrigin-sr(seed=7)`.

mod base;
mod composite;
mod registry;
mod transform;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::swarm::SearchSpace;

pub use base::{make_base, BaseKind};
pub use composite::{kernel_weights, make_composition, make_hybrid, CompositionComponent};
pub use registry::{list_functions, resolve, FunctionId, FunctionInfo, DEFAULT_TRANSFORM_SEED};
pub use transform::{shift_rotate, TransformSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Category {
    Unimodal,
    SimpleMultimodal,
    ComplexMultimodal,
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Category::Unimodal => "unimodal",
            Category::SimpleMultimodal => "simple-multimodal",
            Category::ComplexMultimodal => "complex-multimodal",
        })
    }
}

type EvalFn = dyn Fn(&[f64]) -> f64 + Send + Sync;

/// A minimization problem over a box with a known optimum value.
///
/// Cloning is cheap; the evaluation rule is shared.
#[derive(Clone)]
pub struct ObjectiveFunction {
    name: String,
    space: SearchSpace,
    f_star: f64,
    category: Category,
    optimum: Vec<f64>,
    transform_seed: Option<u64>,
    eval: Arc<EvalFn>,
}

impl fmt::Debug for ObjectiveFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ObjectiveFunction")
            .field("name", &self.name)
            .field("dimension", &self.dimension())
            .field("f_star", &self.f_star)
            .field("category", &self.category)
            .field("transform_seed", &self.transform_seed)
            .finish()
    }
}

impl ObjectiveFunction {
    /// Wraps an arbitrary evaluation rule. `optimum` is the known minimizer
    /// whose value is `f_star`.
    pub fn new<F>(
        name: impl Into<String>,
        space: SearchSpace,
        f_star: f64,
        category: Category,
        optimum: Vec<f64>,
        eval: F,
    ) -> Self
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        Self {
            name: name.into(),
            space,
            f_star,
            category,
            optimum,
            transform_seed: None,
            eval: Arc::new(eval),
        }
    }

    pub(crate) fn with_transform_seed(mut self, seed: u64) -> Self {
        self.transform_seed = Some(seed);
        self
    }

    pub(crate) fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    #[inline]
    pub fn evaluate(&self, x: &[f64]) -> f64 {
        (self.eval)(x)
    }

    /// Error relative to the known optimum value.
    pub fn error(&self, fitness: f64) -> f64 {
        fitness - self.f_star
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dimension(&self) -> usize {
        self.space.dimension()
    }

    pub fn space(&self) -> &SearchSpace {
        &self.space
    }

    pub fn f_star(&self) -> f64 {
        self.f_star
    }

    pub fn category(&self) -> Category {
        self.category
    }

    pub fn optimum(&self) -> &[f64] {
        &self.optimum
    }

    /// Seed of the synthetic landscape transform, if any.
    pub fn transform_seed(&self) -> Option<u64> {
        self.transform_seed
    }
}
