use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::ObjectiveFunction;
use crate::error::{Error, Result};
use crate::swarm::SearchSpace;

/// Fraction of each bound the random shift may reach.
const SHIFT_SPAN: f64 = 0.8;

/// Seeded shift vector and orthogonal rotation.
#[derive(Debug, Clone, PartialEq)]
pub struct TransformSpec {
    pub shift: Vec<f64>,
    /// Row-major `D x D` orthogonal matrix.
    pub rotation: Vec<f64>,
    pub seed: u64,
}

impl TransformSpec {
    pub fn dimension(&self) -> usize {
        self.shift.len()
    }

    pub fn identity(d: usize) -> Self {
        let mut rotation = vec![0.0; d * d];
        for i in 0..d {
            rotation[i * d + i] = 1.0;
        }
        Self {
            shift: vec![0.0; d],
            rotation,
            seed: 0,
        }
    }

    /// Draws a shift inside the central 80% of `space` and a Haar-random
    /// rotation (QR of a standard-normal matrix with the sign of R's
    /// diagonal folded into Q).
    pub fn generate(space: &SearchSpace, seed: u64) -> Self {
        let d = space.dimension();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let shift = space
            .lower()
            .iter()
            .zip(space.upper())
            .map(|(&lo, &hi)| {
                let mid = 0.5 * (lo + hi);
                let half = 0.5 * (hi - lo) * SHIFT_SPAN;
                mid + half * (2.0 * rng.random::<f64>() - 1.0)
            })
            .collect();
        let gauss = DMatrix::<f64>::from_fn(d, d, |_, _| rng.sample(StandardNormal));
        let qr = gauss.qr();
        let mut q = qr.q();
        let r = qr.r();
        for j in 0..d {
            if r[(j, j)] < 0.0 {
                q.column_mut(j).neg_mut();
            }
        }
        let mut rotation = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                rotation.push(q[(i, j)]);
            }
        }
        Self {
            shift,
            rotation,
            seed,
        }
    }

    /// `R·(x − o)` written into `out`.
    pub fn apply(&self, x: &[f64], out: &mut [f64]) {
        let d = self.shift.len();
        for (i, o) in out.iter_mut().enumerate() {
            let row = &self.rotation[i * d..(i + 1) * d];
            *o = row
                .iter()
                .zip(x.iter().zip(&self.shift))
                .map(|(r, (xv, s))| r * (xv - s))
                .sum();
        }
    }
}

/// Relocates the optimum of `base` to the spec's shift and rotates the
/// landscape around it: `f(x) = base(R·(x − o) + x*)` where `x*` is the
/// base minimizer (the origin for most functions).
pub fn shift_rotate(base: &ObjectiveFunction, spec: &TransformSpec) -> Result<ObjectiveFunction> {
    let d = base.dimension();
    if spec.dimension() != d || spec.rotation.len() != d * d {
        return Err(Error::config(format!(
            "transform dimension {} does not match function dimension {d}",
            spec.dimension()
        )));
    }
    if !base.space().contains(&spec.shift) {
        return Err(Error::config("shift vector lies outside the search box"));
    }
    let inner = base.clone();
    let anchor = base.optimum().to_vec();
    let t = spec.clone();
    let f = ObjectiveFunction::new(
        format!("{}-sr", base.name()),
        base.space().clone(),
        base.f_star(),
        base.category(),
        spec.shift.clone(),
        move |x| {
            let mut z = vec![0.0; anchor.len()];
            t.apply(x, &mut z);
            for (zi, a) in z.iter_mut().zip(&anchor) {
                *zi += a;
            }
            inner.evaluate(&z)
        },
    );
    Ok(f.with_transform_seed(spec.seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::benchmarks::make_base;

    #[test]
    fn rotation_is_orthogonal() {
        for d in [1usize, 2, 10, 30] {
            let space = SearchSpace::uniform(d, -100.0, 100.0).unwrap();
            let t = TransformSpec::generate(&space, 7);
            for i in 0..d {
                for j in 0..d {
                    let dot: f64 = (0..d)
                        .map(|k| t.rotation[i * d + k] * t.rotation[j * d + k])
                        .sum();
                    let want = if i == j { 1.0 } else { 0.0 };
                    assert!((dot - want).abs() < 1e-10);
                }
            }
            assert!(space.contains(&t.shift));
        }
    }

    #[test]
    fn same_seed_same_transform() {
        let space = SearchSpace::uniform(5, -100.0, 100.0).unwrap();
        assert_eq!(
            TransformSpec::generate(&space, 3),
            TransformSpec::generate(&space, 3)
        );
        assert_ne!(
            TransformSpec::generate(&space, 3),
            TransformSpec::generate(&space, 4)
        );
    }

    #[test]
    fn identity_transform_matches_base() {
        let base = make_base("rastrigin", 4).unwrap();
        let sr = shift_rotate(&base, &TransformSpec::identity(4)).unwrap();
        for x in [[0.3, -1.2, 5.0, 7.7], [10.0, 20.0, -30.0, 0.0]] {
            assert_eq!(sr.evaluate(&x), base.evaluate(&x));
        }
    }

    #[test]
    fn optimum_relocated() {
        for name in ["sphere", "rosenbrock", "schwefel", "ackley", "griewank"] {
            let base = make_base(name, 6).unwrap();
            let spec = TransformSpec::generate(base.space(), 11);
            let sr = shift_rotate(&base, &spec).unwrap();
            assert_eq!(sr.optimum(), spec.shift.as_slice());
            assert!(sr.evaluate(&spec.shift).abs() < 1e-8, "{name}");
        }
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let base = make_base("sphere", 3).unwrap();
        assert!(shift_rotate(&base, &TransformSpec::identity(2)).is_err());
    }
}
