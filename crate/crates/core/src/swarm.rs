//! Swarm state shared by every optimizer variant: search space, paired
//! particles, personal and global bests, and the coefficient schedules.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::benchmarks::ObjectiveFunction;
use crate::error::{Error, Result};

/// Default velocity cap as a fraction of each dimension's range.
pub const DEFAULT_VMAX_FRACTION: f64 = 0.2;

/// Box-bounded search domain with a per-dimension velocity cap.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchSpace {
    lower: Vec<f64>,
    upper: Vec<f64>,
    v_max: Vec<f64>,
}

impl SearchSpace {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>, v_max: Vec<f64>) -> Result<Self> {
        let d = lower.len();
        if d == 0 {
            return Err(Error::config(
                "search space must have at least one dimension",
            ));
        }
        if upper.len() != d || v_max.len() != d {
            return Err(Error::config(format!(
                "bound vectors disagree on dimension: lower={}, upper={}, v_max={}",
                d,
                upper.len(),
                v_max.len()
            )));
        }
        for i in 0..d {
            if !lower[i].is_finite() || !upper[i].is_finite() || lower[i] >= upper[i] {
                return Err(Error::config(format!(
                    "dimension {i}: lower bound {} is not below upper bound {}",
                    lower[i], upper[i]
                )));
            }
            if !v_max[i].is_finite() || v_max[i] <= 0.0 {
                return Err(Error::config(format!(
                    "dimension {i}: velocity cap {} must be positive",
                    v_max[i]
                )));
            }
        }
        Ok(Self {
            lower,
            upper,
            v_max,
        })
    }

    /// Same bounds on every dimension; velocity cap is 20% of the range.
    pub fn uniform(dimension: usize, lower: f64, upper: f64) -> Result<Self> {
        let v = DEFAULT_VMAX_FRACTION * (upper - lower);
        Self::new(
            vec![lower; dimension],
            vec![upper; dimension],
            vec![v; dimension],
        )
    }

    pub fn dimension(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn v_max(&self) -> &[f64] {
        &self.v_max
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dimension()
            && x.iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(&v, (&lo, &hi))| lo <= v && v <= hi)
    }

    pub fn sample_position<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(&lo, &hi)| lo + (hi - lo) * rng.random::<f64>())
            .collect()
    }

    pub fn sample_velocity<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        self.v_max
            .iter()
            .map(|&v| v * (2.0 * rng.random::<f64>() - 1.0))
            .collect()
    }
}

/// Which update channel a particle serves for its whole life.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ChannelLabel {
    NonG,
    G,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParticleState {
    pub position: Vec<f64>,
    pub velocity: Vec<f64>,
    pub fitness: f64,
    pub label: ChannelLabel,
}

/// A position together with its objective value.
#[derive(Debug, Clone, PartialEq)]
pub struct Best {
    pub position: Vec<f64>,
    pub fitness: f64,
}

/// Non-finite objective values rank below every finite one.
pub(crate) fn sanitize_fitness(f: f64) -> f64 {
    if f.is_finite() {
        f
    } else {
        f64::INFINITY
    }
}

/// Two particles born from the same seed, one per channel, sharing a
/// personal best, an exemplar and the search counters.
#[derive(Debug, Clone, PartialEq)]
pub struct SubSwarm {
    pub id: usize,
    pub non_g: ParticleState,
    pub g: ParticleState,
    pub best: Best,
    /// Promising-direction exemplar; `None` until the first generation.
    pub exemplar: Option<Vec<f64>>,
    pub alpha: u32,
    pub beta: bool,
}

impl SubSwarm {
    pub fn particle(&self, label: ChannelLabel) -> &ParticleState {
        match label {
            ChannelLabel::NonG => &self.non_g,
            ChannelLabel::G => &self.g,
        }
    }

    pub fn particle_mut(&mut self, label: ChannelLabel) -> &mut ParticleState {
        match label {
            ChannelLabel::NonG => &mut self.non_g,
            ChannelLabel::G => &mut self.g,
        }
    }

    /// Replaces the personal best when `fitness` is no worse than it.
    /// A tie replaces. Non-finite candidates are rejected.
    pub fn update_personal_best(&mut self, candidate: &[f64], fitness: f64) -> bool {
        if !fitness.is_finite() {
            log::debug!(
                "sub-swarm {}: rejected non-finite fitness {fitness}",
                self.id
            );
            return false;
        }
        if fitness <= self.best.fitness {
            self.best.position.clear();
            self.best.position.extend_from_slice(candidate);
            self.best.fitness = fitness;
            true
        } else {
            false
        }
    }

    /// Clears the search counters when a new direction is generated.
    pub fn reset_counters(&mut self) {
        self.alpha = 0;
        self.beta = false;
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GlobalBest {
    pub position: Vec<f64>,
    pub fitness: f64,
}

impl GlobalBest {
    /// Strict improvement only; ties keep the incumbent.
    pub fn consider(&mut self, position: &[f64], fitness: f64) -> bool {
        if fitness < self.fitness {
            self.position.clear();
            self.position.extend_from_slice(position);
            self.fitness = fitness;
            true
        } else {
            false
        }
    }
}

/// Endpoints of the linearly interpolated inertia and acceleration schedules.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ScheduleParams {
    pub w_start: f64,
    pub w_end: f64,
    pub c1_start: f64,
    pub c1_end: f64,
    pub c2_start: f64,
    pub c2_end: f64,
}

impl Default for ScheduleParams {
    fn default() -> Self {
        Self {
            w_start: 0.9,
            w_end: 0.4,
            c1_start: 2.5,
            c1_end: 0.5,
            c2_start: 0.5,
            c2_end: 2.5,
        }
    }
}

impl ScheduleParams {
    pub fn validate(&self) -> Result<()> {
        let all = [
            self.w_start,
            self.w_end,
            self.c1_start,
            self.c1_end,
            self.c2_start,
            self.c2_end,
        ];
        if all.iter().all(|v| v.is_finite()) {
            Ok(())
        } else {
            Err(Error::config("schedule endpoints must be finite"))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coefficients {
    pub w: f64,
    pub c1: f64,
    pub c2: f64,
}

/// Interpolates the schedule at `fes` evaluations out of `fes_max`.
pub fn schedule_at(params: &ScheduleParams, fes: u64, fes_max: u64) -> Result<Coefficients> {
    if fes_max == 0 {
        return Err(Error::config("evaluation budget must be positive"));
    }
    let t = (fes as f64 / fes_max as f64).clamp(0.0, 1.0);
    let lerp = |a: f64, b: f64| a + (b - a) * t;
    Ok(Coefficients {
        w: lerp(params.w_start, params.w_end),
        c1: lerp(params.c1_start, params.c1_end),
        c2: lerp(params.c2_start, params.c2_end),
    })
}

/// Population of sub-swarms plus the global best and evaluation counter.
#[derive(Debug, Clone)]
pub struct SwarmState {
    pub space: SearchSpace,
    pub subs: Vec<SubSwarm>,
    pub global: GlobalBest,
    pub fes: u64,
    pub rng: ChaCha8Rng,
}

impl SwarmState {
    /// Offers sub-swarm `n`'s personal best to the global best.
    pub fn update_global_best(&mut self, n: usize) -> bool {
        let sub = &self.subs[n];
        self.global.consider(&sub.best.position, sub.best.fitness)
    }

    /// Positions of all 2N particles.
    pub fn positions(&self) -> impl Iterator<Item = &[f64]> + Clone {
        self.subs
            .iter()
            .flat_map(|s| [s.non_g.position.as_slice(), s.g.position.as_slice()])
    }
}

/// Cell-division initialization: each of `n` random seed particles is
/// evaluated once and duplicated into an identical non-G/G pair.
pub fn cdim_initialize(
    space: &SearchSpace,
    n: usize,
    objective: &ObjectiveFunction,
    mut rng: ChaCha8Rng,
) -> Result<SwarmState> {
    if n < 2 {
        return Err(Error::config(format!(
            "population needs at least 2 sub-swarms, got {n}"
        )));
    }
    if objective.dimension() != space.dimension() {
        return Err(Error::config(format!(
            "objective dimension {} does not match search space dimension {}",
            objective.dimension(),
            space.dimension()
        )));
    }

    let mut subs = Vec::with_capacity(n);
    for id in 0..n {
        let position = space.sample_position(&mut rng);
        let velocity = space.sample_velocity(&mut rng);
        let fitness = sanitize_fitness(objective.evaluate(&position));
        let seed = |label| ParticleState {
            position: position.clone(),
            velocity: velocity.clone(),
            fitness,
            label,
        };
        subs.push(SubSwarm {
            id,
            non_g: seed(ChannelLabel::NonG),
            g: seed(ChannelLabel::G),
            best: Best {
                position: position.clone(),
                fitness,
            },
            exemplar: None,
            alpha: 0,
            beta: false,
        });
    }

    let mut global = GlobalBest {
        position: subs[0].best.position.clone(),
        fitness: subs[0].best.fitness,
    };
    for s in &subs[1..] {
        global.consider(&s.best.position, s.best.fitness);
    }

    Ok(SwarmState {
        space: space.clone(),
        subs,
        global,
        fes: n as u64,
        rng,
    })
}
