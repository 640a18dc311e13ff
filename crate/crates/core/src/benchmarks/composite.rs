use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::base::{base_function, BaseKind};
use super::transform::TransformSpec;
use super::{Category, ObjectiveFunction};
use crate::error::{Error, Result};
use crate::swarm::SearchSpace;

/// One member of a composition: a (typically shifted and rotated) function
/// with its kernel width, scale and bias.
#[derive(Debug, Clone)]
pub struct CompositionComponent {
    pub function: ObjectiveFunction,
    pub sigma: f64,
    pub lambda: f64,
    pub bias: f64,
}

/// Normalized Gaussian-kernel weights of `x` with respect to each center.
///
/// A point sitting exactly on a center takes all the weight; if every
/// kernel underflows the weights are uniform.
pub fn kernel_weights<C: AsRef<[f64]>>(x: &[f64], centers: &[C], sigmas: &[f64]) -> Vec<f64> {
    let d = x.len() as f64;
    let mut w: Vec<f64> = centers
        .iter()
        .zip(sigmas)
        .map(|(c, &s)| {
            let dist2: f64 = x
                .iter()
                .zip(c.as_ref())
                .map(|(a, b)| (a - b) * (a - b))
                .sum();
            if dist2 == 0.0 {
                f64::INFINITY
            } else {
                (-dist2 / (2.0 * d * s * s)).exp() / dist2.sqrt()
            }
        })
        .collect();
    if let Some(hit) = w.iter().position(|v| v.is_infinite()) {
        w.iter_mut().for_each(|v| *v = 0.0);
        w[hit] = 1.0;
        return w;
    }
    let total: f64 = w.iter().sum();
    if total > 0.0 && total.is_finite() {
        w.iter_mut().for_each(|v| *v /= total);
    } else {
        let n = w.len() as f64;
        w.iter_mut().for_each(|v| *v = 1.0 / n);
    }
    w
}

/// Weighted blend `Σ ωᵢ·(λᵢ·fᵢ(x) + biasᵢ)` whose optimum is the shift of
/// the lowest-bias component.
pub fn make_composition(
    name: impl Into<String>,
    components: Vec<CompositionComponent>,
) -> Result<ObjectiveFunction> {
    let first = components
        .first()
        .ok_or_else(|| Error::config("composition needs at least one component"))?;
    let d = first.function.dimension();
    if components.iter().any(|c| c.function.dimension() != d) {
        return Err(Error::config(
            "composition components disagree on dimension",
        ));
    }
    if components
        .iter()
        .any(|c| c.sigma.is_nan() || c.sigma <= 0.0)
    {
        return Err(Error::config("composition kernel widths must be positive"));
    }
    let space = first.function.space().clone();
    let (best, _) = components
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.bias.total_cmp(&b.1.bias))
        .expect("non-empty");
    let f_star =
        components[best].bias + components[best].lambda * components[best].function.f_star();
    let optimum = components[best].function.optimum().to_vec();

    let centers: Vec<Vec<f64>> = components
        .iter()
        .map(|c| c.function.optimum().to_vec())
        .collect();
    let sigmas: Vec<f64> = components.iter().map(|c| c.sigma).collect();
    let f = ObjectiveFunction::new(
        name,
        space,
        f_star,
        Category::ComplexMultimodal,
        optimum,
        move |x| {
            let w = kernel_weights(x, &centers, &sigmas);
            components
                .iter()
                .zip(&w)
                .filter(|(_, &wi)| wi > 0.0)
                .map(|(c, wi)| wi * (c.lambda * c.function.evaluate(x) + c.bias))
                .sum()
        },
    );
    Ok(f)
}

/// Dimension-partitioned mixture: `x` is shifted, rotated and permuted, then
/// consecutive blocks (sized by `ratios`) feed different base functions.
pub fn make_hybrid(
    name: impl Into<String>,
    parts: &[(BaseKind, f64)],
    space: &SearchSpace,
    seed: u64,
) -> Result<ObjectiveFunction> {
    let d = space.dimension();
    if parts.is_empty() {
        return Err(Error::config("hybrid needs at least one component"));
    }
    let total: f64 = parts.iter().map(|p| p.1).sum();
    if total.is_nan() || total <= 0.0 || parts.iter().any(|p| p.1.is_nan() || p.1 < 0.0) {
        return Err(Error::config(
            "hybrid ratios must be non-negative with positive sum",
        ));
    }

    // block sizes: floor of each share, remainder to the last block
    let mut sizes: Vec<usize> = parts
        .iter()
        .map(|p| ((p.1 / total) * d as f64).floor() as usize)
        .collect();
    let assigned: usize = sizes.iter().sum();
    *sizes.last_mut().expect("non-empty") += d - assigned;
    for (size, (kind, _)) in sizes.iter().zip(parts) {
        if *size < kind.min_dimension() {
            return Err(Error::config(format!(
                "hybrid block for {} gets {size} dimensions, needs {}",
                kind.id(),
                kind.min_dimension()
            )));
        }
    }

    let spec = TransformSpec::generate(space, seed);
    let mut perm: Vec<usize> = (0..d).collect();
    perm.shuffle(&mut ChaCha8Rng::seed_from_u64(
        seed.wrapping_add(0x9e37_79b9),
    ));

    let mut blocks = Vec::with_capacity(parts.len());
    let mut start = 0;
    for (size, (kind, _)) in sizes.iter().zip(parts) {
        let f = base_function(*kind, *size)?;
        blocks.push((start, *size, f.optimum().to_vec(), *kind));
        start += size;
    }

    let t = spec.clone();
    let f = ObjectiveFunction::new(
        name,
        space.clone(),
        0.0,
        Category::ComplexMultimodal,
        spec.shift.clone(),
        move |x| {
            let mut z = vec![0.0; x.len()];
            t.apply(x, &mut z);
            let mut buf = Vec::with_capacity(x.len());
            blocks
                .iter()
                .map(|(start, size, anchor, kind)| {
                    buf.clear();
                    buf.extend(
                        perm[*start..start + size]
                            .iter()
                            .zip(anchor)
                            .map(|(&p, a)| z[p] + a),
                    );
                    kind.eval(&buf)
                })
                .sum()
        },
    );
    Ok(f.with_transform_seed(seed))
}
