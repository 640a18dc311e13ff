//! Inertia-weight PSO with a global-best topology, used as a reference
//! optimizer in experiments.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::analysis::{diversity, IterationSample, TrialRecord};
use crate::benchmarks::ObjectiveFunction;
use crate::channels::step_standard_pso;
use crate::error::{Error, Result};
use crate::swarm::{
    sanitize_fitness, schedule_at, ChannelLabel, GlobalBest, ParticleState, ScheduleParams,
};

pub const BASELINE_ID: &str = "pso";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PsoConfig {
    pub population: usize,
    pub fes_max: u64,
    pub schedule: ScheduleParams,
}

impl PsoConfig {
    pub fn new(population: usize, fes_max: u64) -> Self {
        Self {
            population,
            fes_max,
            schedule: ScheduleParams::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.population < 1 {
            return Err(Error::config("population must be at least 1"));
        }
        if self.fes_max < self.population as u64 {
            return Err(Error::config(format!(
                "evaluation budget {} is smaller than the population {}",
                self.fes_max, self.population
            )));
        }
        self.schedule.validate()
    }
}

/// Runs standard PSO until the evaluation budget is spent. The global best
/// is updated after every evaluation.
pub fn run_standard_pso(
    objective: &ObjectiveFunction,
    config: &PsoConfig,
    seed: u64,
) -> Result<TrialRecord> {
    config.validate()?;
    let space = objective.space();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut particles = Vec::with_capacity(config.population);
    let mut bests = Vec::with_capacity(config.population);
    for _ in 0..config.population {
        let position = space.sample_position(&mut rng);
        let velocity = space.sample_velocity(&mut rng);
        let fitness = sanitize_fitness(objective.evaluate(&position));
        bests.push((position.clone(), fitness));
        particles.push(ParticleState {
            position,
            velocity,
            fitness,
            label: ChannelLabel::G,
        });
    }
    let mut fes = config.population as u64;
    let mut global = GlobalBest {
        position: bests[0].0.clone(),
        fitness: bests[0].1,
    };
    for (p, f) in &bests[1..] {
        global.consider(p, *f);
    }

    let sample =
        |iteration, fes, global: &GlobalBest, particles: &[ParticleState]| IterationSample {
            iteration,
            fes,
            error: objective.error(global.fitness),
            diversity: diversity(particles.iter().map(|p| p.position.as_slice())),
            non_g_steps: 0,
            g_steps: 0,
            pdg_events: 0,
            m1: 0,
        };
    let mut samples = vec![sample(0, fes, &global, &particles)];
    let mut iteration = 0;
    while fes < config.fes_max {
        iteration += 1;
        for (particle, best) in particles.iter_mut().zip(bests.iter_mut()) {
            if fes >= config.fes_max {
                break;
            }
            let c = schedule_at(&config.schedule, fes, config.fes_max)?;
            step_standard_pso(
                particle,
                &best.0,
                &global.position,
                c.w,
                c.c1,
                c.c2,
                space,
                &mut rng,
            );
            let raw = objective.evaluate(&particle.position);
            particle.fitness = sanitize_fitness(raw);
            fes += 1;
            if raw.is_finite() && raw <= best.1 {
                best.0.clone_from(&particle.position);
                best.1 = raw;
                global.consider(&best.0, raw);
            }
        }
        samples.push(sample(iteration, fes, &global, &particles));
    }

    Ok(TrialRecord {
        algorithm: BASELINE_ID.to_string(),
        function: objective.name().to_string(),
        seed,
        population: config.population,
        final_error: objective.error(global.fitness),
        total_fes: fes,
        best_position: global.position,
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::benchmarks::make_base;

    #[test]
    fn spends_exact_budget_and_improves() {
        let f = make_base("sphere", 5).unwrap();
        let r = run_standard_pso(&f, &PsoConfig::new(10, 5003), 4).unwrap();
        assert_eq!(r.total_fes, 5003);
        assert!(r.final_error < r.initial_error());
        assert!(r.final_error < 1e-3);
        assert_eq!(r.channel_steps(), 0);
        for w in r.samples.windows(2) {
            assert!(w[1].error <= w[0].error);
        }
    }

    #[test]
    fn rejects_tiny_budget() {
        let f = make_base("sphere", 2).unwrap();
        assert!(run_standard_pso(&f, &PsoConfig::new(10, 5), 0).is_err());
    }
}
