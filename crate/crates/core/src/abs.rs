//! Adaptive balance search over cell-divided sub-swarms.
//!
//! Each sub-swarm owns a non-G particle and a G particle that share one
//! personal best `P`, an exemplar `Q`, a search counter `α` and a flag `β`
//! recording whether the non-G channel improved `P` since the exemplar was
//! last regenerated. Per iteration every sub-swarm takes exactly one of
//! three actions:
//!
//! * regenerate its exemplar by sub-swarm-level comprehensive learning
//!   (no evaluation), when `(α > M1 ∧ β) ∨ α > M`;
//! * otherwise step its non-G particle when `α ≤ M1`;
//! * otherwise step its G particle.
//!
//! `M1 = ⌈M·(1 − FEs/FEs_max)⌉` shrinks with the budget, shifting work from
//! the exemplar-only channel to the channel attracted by the global best.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::analysis::{diversity, IterationSample, TrialRecord};
use crate::benchmarks::ObjectiveFunction;
use crate::channels::{step_g, step_non_g};
use crate::error::{Error, Result};
use crate::swarm::{
    cdim_initialize, sanitize_fitness, schedule_at, Best, ChannelLabel, ScheduleParams, SubSwarm,
    SwarmState,
};

pub const DEFAULT_REFRESHING_GAP: u32 = 6;

/// Which parts of the method are active.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    /// Both channels and exemplar regeneration.
    Full,
    /// Both channels, but the exemplar is always the personal best.
    POnly,
    /// Only the exemplar-guided channel.
    NonGOnly,
    /// Only the channel with global-best attraction.
    GOnly,
}

impl Variant {
    pub const ALL: [Variant; 4] = [
        Variant::Full,
        Variant::POnly,
        Variant::NonGOnly,
        Variant::GOnly,
    ];

    /// Identifier used in reports.
    pub fn label(self) -> &'static str {
        match self {
            Variant::Full => "dcpso-abs",
            Variant::POnly => "dcpso-abs-p",
            Variant::NonGOnly => "pso-abs-non-g",
            Variant::GOnly => "pso-abs-g",
        }
    }
}

/// Per-sub-swarm learning probability
/// `pc_i = lo + span·(exp(k·i/(N−1)) − 1)/(exp(k) − 1)` for 0-based `i`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct LearningCurve {
    pub low: f64,
    pub span: f64,
    pub steepness: f64,
}

impl Default for LearningCurve {
    fn default() -> Self {
        Self {
            low: 0.05,
            span: 0.45,
            steepness: 10.0,
        }
    }
}

impl LearningCurve {
    pub fn probability(&self, index: usize, population: usize) -> f64 {
        if population < 2 {
            return self.low;
        }
        let t = index as f64 / (population - 1) as f64;
        self.low + self.span * ((self.steepness * t).exp() - 1.0) / (self.steepness.exp() - 1.0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AbsConfig {
    /// Refreshing gap: most searches spent on one exemplar.
    pub m: u32,
    pub population: usize,
    pub fes_max: u64,
    pub variant: Variant,
    pub schedule: ScheduleParams,
    pub learning: LearningCurve,
}

impl AbsConfig {
    pub fn new(population: usize, fes_max: u64) -> Self {
        Self {
            m: DEFAULT_REFRESHING_GAP,
            population,
            fes_max,
            variant: Variant::Full,
            schedule: ScheduleParams::default(),
            learning: LearningCurve::default(),
        }
    }

    pub fn with_variant(mut self, variant: Variant) -> Self {
        self.variant = variant;
        self
    }

    pub fn with_m(mut self, m: u32) -> Self {
        self.m = m;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.m < 1 {
            return Err(Error::config("refreshing gap m must be at least 1"));
        }
        if self.population < 2 {
            return Err(Error::config(format!(
                "population needs at least 2 sub-swarms, got {}",
                self.population
            )));
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

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ChannelDecision {
    RunPdg,
    RunNonG,
    RunG,
}

/// Splits the refreshing gap into non-G and G allowances.
pub fn adaptive_split(m: u32, fes: u64, fes_max: u64) -> (u32, u32) {
    let m = u64::from(m);
    let remaining = fes_max.saturating_sub(fes);
    // ceil(m·remaining/fes_max) in exact integer arithmetic
    let m1 = if fes_max == 0 {
        0
    } else {
        ((m as u128 * remaining as u128).div_ceil(fes_max as u128)) as u64
    };
    let m1 = m1.min(m) as u32;
    (m1, m as u32 - m1)
}

pub fn select_channel(alpha: u32, beta: bool, m1: u32, m: u32) -> ChannelDecision {
    if (alpha > m1 && beta) || alpha > m {
        ChannelDecision::RunPdg
    } else if alpha <= m1 {
        ChannelDecision::RunNonG
    } else {
        ChannelDecision::RunG
    }
}

/// Counter update after a non-G evaluation. The caller sets `β` when the
/// personal best improved.
pub fn reward_penalty_non_g(alpha: u32, p_updated: bool) -> u32 {
    if p_updated {
        0
    } else {
        alpha + 1
    }
}

/// Counter update after a G evaluation.
pub fn reward_penalty_g(alpha: u32, m1: u32, p_updated: bool, g_updated: bool) -> Result<u32> {
    match (p_updated, g_updated) {
        (_, true) if !p_updated => Err(Error::Invariant(
            "global best improved without a personal-best improvement".into(),
        )),
        (_, true) => Ok(m1 + 1),
        (true, false) => Ok(alpha),
        (false, false) => Ok(alpha + 1),
    }
}

/// Builds a new exemplar for sub-swarm `sub_id` by per-dimension binary
/// tournaments over the other sub-swarms' personal bests.
pub fn generate_promising_direction<R: Rng + ?Sized>(
    sub_id: usize,
    archive: &[&Best],
    pc: f64,
    rng: &mut R,
) -> Result<Vec<f64>> {
    let n = archive.len();
    if n < 2 {
        return Err(Error::config(
            "exemplar generation needs at least 2 sub-swarms",
        ));
    }
    if sub_id >= n {
        return Err(Error::config(format!("sub-swarm {sub_id} out of range")));
    }
    // uniform index among the others
    let other = |rng: &mut R| {
        let j = rng.random_range(0..n - 1);
        if j >= sub_id {
            j + 1
        } else {
            j
        }
    };

    let own = &archive[sub_id].position;
    let mut q = own.clone();
    let mut borrowed = false;
    for (d, qd) in q.iter_mut().enumerate() {
        if rng.random::<f64>() < pc {
            let a = other(rng);
            let winner = if n > 2 {
                let mut b = other(rng);
                while b == a {
                    b = other(rng);
                }
                if archive[b].fitness < archive[a].fitness {
                    b
                } else {
                    a
                }
            } else {
                a
            };
            *qd = archive[winner].position[d];
            borrowed = true;
        }
    }
    if !borrowed {
        let d = rng.random_range(0..q.len());
        let j = other(rng);
        q[d] = archive[j].position[d];
    }
    Ok(q)
}

/// Clears both counters of a sub-swarm.
pub fn resetter(sub: &mut SubSwarm) {
    sub.reset_counters();
}

/// What one sub-swarm did during one call to [`abs_step`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StepOutcome {
    /// Action actually taken (after variant remapping).
    pub decision: ChannelDecision,
    pub evaluations: u32,
    pub p_updated: bool,
    pub g_updated: bool,
    /// The budget ran out before the channel step could evaluate.
    pub exhausted: bool,
    pub m1: u32,
}

/// Runs one adaptive-balance-search decision for sub-swarm `n`.
pub fn abs_step(
    state: &mut SwarmState,
    n: usize,
    objective: &ObjectiveFunction,
    config: &AbsConfig,
) -> Result<StepOutcome> {
    let (m1, _m2) = adaptive_split(config.m, state.fes, config.fes_max);
    let sub = &state.subs[n];
    let decision = match (
        select_channel(sub.alpha, sub.beta, m1, config.m),
        config.variant,
    ) {
        (ChannelDecision::RunG, Variant::NonGOnly) => ChannelDecision::RunNonG,
        (ChannelDecision::RunNonG, Variant::GOnly) => ChannelDecision::RunG,
        (d, _) => d,
    };
    let mut outcome = StepOutcome {
        decision,
        evaluations: 0,
        p_updated: false,
        g_updated: false,
        exhausted: false,
        m1,
    };

    if decision == ChannelDecision::RunPdg {
        let q = if config.variant == Variant::POnly {
            None
        } else {
            let archive: Vec<&Best> = state.subs.iter().map(|s| &s.best).collect();
            let pc = config.learning.probability(n, state.subs.len());
            Some(generate_promising_direction(
                n,
                &archive,
                pc,
                &mut state.rng,
            )?)
        };
        let sub = &mut state.subs[n];
        resetter(sub);
        sub.exemplar = q;
        return Ok(outcome);
    }

    if state.fes >= config.fes_max {
        outcome.exhausted = true;
        return Ok(outcome);
    }

    let coeff = schedule_at(&config.schedule, state.fes, config.fes_max)?;
    let SwarmState {
        space,
        subs,
        global,
        fes,
        rng,
    } = state;
    let SubSwarm {
        non_g,
        g,
        best,
        exemplar,
        ..
    } = &mut subs[n];
    let guide: &[f64] = match exemplar {
        Some(q) if config.variant != Variant::POnly => q,
        _ => &best.position,
    };
    let label = match decision {
        ChannelDecision::RunNonG => {
            step_non_g(non_g, guide, coeff.w, coeff.c1, space, rng);
            ChannelLabel::NonG
        }
        _ => {
            step_g(
                g,
                guide,
                &global.position,
                coeff.w,
                coeff.c1,
                coeff.c2,
                space,
                rng,
            );
            ChannelLabel::G
        }
    };

    let sub = &mut subs[n];
    let particle = sub.particle_mut(label);
    let raw = objective.evaluate(&particle.position);
    particle.fitness = sanitize_fitness(raw);
    *fes += 1;
    outcome.evaluations = 1;

    let position = sub.particle(label).position.clone();
    outcome.p_updated = sub.update_personal_best(&position, raw);
    if outcome.p_updated {
        outcome.g_updated = global.consider(&sub.best.position, sub.best.fitness);
    }
    match label {
        ChannelLabel::NonG => {
            sub.alpha = reward_penalty_non_g(sub.alpha, outcome.p_updated);
            if outcome.p_updated {
                sub.beta = true;
            }
        }
        ChannelLabel::G => {
            sub.alpha = reward_penalty_g(sub.alpha, m1, outcome.p_updated, outcome.g_updated)?;
        }
    }
    Ok(outcome)
}

/// Per-iteration channel accounting.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct IterationStats {
    pub non_g_steps: u32,
    pub g_steps: u32,
    pub pdg_events: u32,
    pub evaluations: u32,
    pub m1: u32,
    pub exhausted: bool,
}

/// Stepwise driver for one run.
#[derive(Debug, Clone)]
pub struct DcpsoAbs {
    objective: ObjectiveFunction,
    config: AbsConfig,
    state: SwarmState,
    iteration: u64,
    k_max: u64,
    exhausted: bool,
}

impl DcpsoAbs {
    pub fn new(objective: ObjectiveFunction, config: AbsConfig, seed: u64) -> Result<Self> {
        config.validate()?;
        let rng = ChaCha8Rng::seed_from_u64(seed);
        let state = cdim_initialize(objective.space(), config.population, &objective, rng)?;
        let k_max = config.fes_max / config.population as u64;
        Ok(Self {
            objective,
            config,
            state,
            iteration: 0,
            k_max,
            exhausted: false,
        })
    }

    pub fn state(&self) -> &SwarmState {
        &self.state
    }

    pub fn config(&self) -> &AbsConfig {
        &self.config
    }

    pub fn iteration(&self) -> u64 {
        self.iteration
    }

    pub fn finished(&self) -> bool {
        self.exhausted || self.iteration >= self.k_max || self.state.fes >= self.config.fes_max
    }

    /// One sweep over all sub-swarms in index order.
    pub fn iterate(&mut self) -> Result<IterationStats> {
        let mut stats = IterationStats {
            m1: adaptive_split(self.config.m, self.state.fes, self.config.fes_max).0,
            ..Default::default()
        };
        self.iteration += 1;
        for n in 0..self.state.subs.len() {
            let o = abs_step(&mut self.state, n, &self.objective, &self.config)?;
            if o.exhausted {
                stats.exhausted = true;
                self.exhausted = true;
                break;
            }
            stats.evaluations += o.evaluations;
            match o.decision {
                ChannelDecision::RunPdg => stats.pdg_events += 1,
                ChannelDecision::RunNonG => stats.non_g_steps += 1,
                ChannelDecision::RunG => stats.g_steps += 1,
            }
        }
        Ok(stats)
    }

    fn sample(&self, stats: IterationStats) -> IterationSample {
        IterationSample {
            iteration: self.iteration,
            fes: self.state.fes,
            error: self.objective.error(self.state.global.fitness),
            diversity: diversity(self.state.positions()),
            non_g_steps: stats.non_g_steps,
            g_steps: stats.g_steps,
            pdg_events: stats.pdg_events,
            m1: stats.m1,
        }
    }

    /// Runs to completion and returns the record.
    pub fn run(mut self, algorithm: &str, seed: u64) -> Result<TrialRecord> {
        let first = IterationStats {
            m1: adaptive_split(self.config.m, self.state.fes, self.config.fes_max).0,
            ..Default::default()
        };
        let mut samples = vec![self.sample(first)];
        while !self.finished() {
            let stats = self.iterate()?;
            samples.push(self.sample(stats));
        }
        Ok(TrialRecord {
            algorithm: algorithm.to_string(),
            function: self.objective.name().to_string(),
            seed,
            population: self.config.population,
            final_error: self.objective.error(self.state.global.fitness),
            total_fes: self.state.fes,
            best_position: self.state.global.position.clone(),
            samples,
        })
    }
}

/// Full run of the selected variant, labelled with the variant's id.
pub fn run_dcpso_abs(
    objective: &ObjectiveFunction,
    config: &AbsConfig,
    seed: u64,
) -> Result<TrialRecord> {
    DcpsoAbs::new(objective.clone(), config.clone(), seed)?.run(config.variant.label(), seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::benchmarks::make_base;

    #[test]
    fn split_examples() {
        assert_eq!(adaptive_split(6, 0, 1000), (6, 0));
        assert_eq!(adaptive_split(6, 1000, 1000), (0, 6));
        assert_eq!(adaptive_split(6, 700, 1000), (2, 4));
        assert_eq!(adaptive_split(6, 70_000, 100_000), (2, 4));
        assert_eq!(adaptive_split(6, 1, 1000), (6, 0));
        assert_eq!(adaptive_split(6, 999, 1000), (1, 5));
    }

    #[test]
    fn select_examples() {
        assert_eq!(select_channel(2, false, 3, 6), ChannelDecision::RunNonG);
        assert_eq!(select_channel(4, false, 3, 6), ChannelDecision::RunG);
        assert_eq!(select_channel(4, true, 3, 6), ChannelDecision::RunPdg);
        assert_eq!(select_channel(7, false, 3, 6), ChannelDecision::RunPdg);
        assert_eq!(select_channel(0, false, 0, 6), ChannelDecision::RunNonG);
    }

    #[test]
    fn select_partitions_grid() {
        for m in 1..=10u32 {
            for m1 in 0..=m {
                for alpha in 0..=m + 1 {
                    for beta in [false, true] {
                        let pdg = (alpha > m1 && beta) || alpha > m;
                        let non_g = !pdg && alpha <= m1;
                        let g = !pdg && m1 < alpha && alpha <= m && !beta;
                        assert_eq!(pdg as u8 + non_g as u8 + g as u8, 1);
                        let want = if pdg {
                            ChannelDecision::RunPdg
                        } else if non_g {
                            ChannelDecision::RunNonG
                        } else {
                            ChannelDecision::RunG
                        };
                        assert_eq!(select_channel(alpha, beta, m1, m), want);
                    }
                }
            }
        }
    }

    #[test]
    fn reward_penalty_rules() {
        assert_eq!(reward_penalty_non_g(3, true), 0);
        assert_eq!(reward_penalty_non_g(3, false), 4);
        let mut a = 0;
        let m1 = 4;
        let mut steps = 0;
        while a <= m1 {
            a = reward_penalty_non_g(a, false);
            steps += 1;
        }
        assert_eq!((a, steps), (m1 + 1, m1 + 1));

        assert_eq!(reward_penalty_g(5, 3, true, true).unwrap(), 4);
        assert_eq!(reward_penalty_g(5, 3, true, false).unwrap(), 5);
        assert_eq!(reward_penalty_g(5, 3, false, false).unwrap(), 6);
        assert!(matches!(
            reward_penalty_g(5, 3, false, true),
            Err(Error::Invariant(_))
        ));
    }

    #[test]
    fn resetter_clears_counters() {
        let f = make_base("sphere", 2).unwrap();
        let mut st = cdim_initialize(f.space(), 2, &f, ChaCha8Rng::seed_from_u64(0)).unwrap();
        st.subs[0].alpha = 7;
        st.subs[0].beta = true;
        resetter(&mut st.subs[0]);
        assert_eq!((st.subs[0].alpha, st.subs[0].beta), (0, false));
        resetter(&mut st.subs[0]);
        assert_eq!((st.subs[0].alpha, st.subs[0].beta), (0, false));
        for m1 in 0..=6 {
            assert_eq!(select_channel(0, false, m1, 6), ChannelDecision::RunNonG);
        }
    }

    fn archive(points: &[(Vec<f64>, f64)]) -> Vec<Best> {
        points
            .iter()
            .map(|(p, f)| Best {
                position: p.clone(),
                fitness: *f,
            })
            .collect()
    }

    #[test]
    fn pdg_full_learning_copies_others() {
        let own = vec![9.0; 6];
        let u = vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0];
        let bests = archive(&[
            (u.clone(), 1.0),
            (own, 0.0),
            (u.clone(), 2.0),
            (u.clone(), 3.0),
        ]);
        let refs: Vec<&Best> = bests.iter().collect();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let q = generate_promising_direction(1, &refs, 1.0, &mut rng).unwrap();
        assert_eq!(q, u);
    }

    #[test]
    fn pdg_zero_learning_forces_one_dimension() {
        let bests = archive(&[
            (vec![0.0; 8], 1.0),
            (vec![1.0; 8], 2.0),
            (vec![2.0; 8], 3.0),
        ]);
        let refs: Vec<&Best> = bests.iter().collect();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..50 {
            let q = generate_promising_direction(0, &refs, 0.0, &mut rng).unwrap();
            assert_eq!(q.iter().filter(|v| **v != 0.0).count(), 1);
        }
    }

    #[test]
    fn pdg_tournament_prefers_lower_fitness() {
        // with three others the winner is never the worst one
        let bests = archive(&[
            (vec![0.0; 200], 0.0),
            (vec![1.0; 200], 1.0),
            (vec![2.0; 200], 2.0),
            (vec![3.0; 200], 3.0),
        ]);
        let refs: Vec<&Best> = bests.iter().collect();
        let q =
            generate_promising_direction(0, &refs, 1.0, &mut ChaCha8Rng::seed_from_u64(1)).unwrap();
        assert!(q.iter().all(|v| *v == 1.0 || *v == 2.0));
        assert!(q.contains(&1.0) && q.contains(&2.0));
    }

    #[test]
    fn pdg_learning_fraction() {
        let d = 1000;
        let bests = archive(&[
            (vec![0.0; d], 1.0),
            (vec![1.0; d], 2.0),
            (vec![2.0; d], 3.0),
        ]);
        let refs: Vec<&Best> = bests.iter().collect();
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let q = generate_promising_direction(0, &refs, 0.3, &mut rng).unwrap();
        let frac = q.iter().filter(|v| **v != 0.0).count() as f64 / d as f64;
        assert!((frac - 0.3).abs() < 0.05, "{frac}");
    }

    #[test]
    fn pdg_needs_two() {
        let bests = archive(&[(vec![0.0], 1.0)]);
        let refs: Vec<&Best> = bests.iter().collect();
        assert!(
            generate_promising_direction(0, &refs, 0.5, &mut ChaCha8Rng::seed_from_u64(0)).is_err()
        );
    }

    #[test]
    fn learning_curve_range() {
        let c = LearningCurve::default();
        assert!((c.probability(0, 20) - 0.05).abs() < 1e-15);
        assert!((c.probability(19, 20) - 0.5).abs() < 1e-12);
        for i in 1..20 {
            assert!(c.probability(i, 20) > c.probability(i - 1, 20));
        }
    }

    #[test]
    fn fresh_sub_swarm_runs_non_g() {
        let f = make_base("sphere", 3).unwrap();
        let cfg = AbsConfig::new(4, 1000);
        let mut st = cdim_initialize(f.space(), 4, &f, ChaCha8Rng::seed_from_u64(2)).unwrap();
        let g_before = st.subs[0].g.clone();
        let o = abs_step(&mut st, 0, &f, &cfg).unwrap();
        assert_eq!(o.decision, ChannelDecision::RunNonG);
        assert_eq!(o.evaluations, 1);
        assert_eq!(st.fes, 5);
        assert_eq!(st.subs[0].g, g_before);
    }

    #[test]
    fn exhausted_sub_swarm_regenerates_without_evaluating() {
        let f = make_base("sphere", 3).unwrap();
        let cfg = AbsConfig::new(4, 1000);
        let mut st = cdim_initialize(f.space(), 4, &f, ChaCha8Rng::seed_from_u64(2)).unwrap();
        st.subs[1].alpha = cfg.m + 1;
        let o = abs_step(&mut st, 1, &f, &cfg).unwrap();
        assert_eq!(o.decision, ChannelDecision::RunPdg);
        assert_eq!(o.evaluations, 0);
        assert_eq!(st.fes, 4);
        assert_eq!((st.subs[1].alpha, st.subs[1].beta), (0, false));
        assert!(st.subs[1].exemplar.is_some());

        let p = AbsConfig::new(4, 1000).with_variant(Variant::POnly);
        st.subs[2].alpha = 7;
        abs_step(&mut st, 2, &f, &p).unwrap();
        assert!(st.subs[2].exemplar.is_none());
        assert_eq!(st.subs[2].alpha, 0);
    }

    #[test]
    fn budget_stops_cleanly() {
        let f = make_base("sphere", 2).unwrap();
        let cfg = AbsConfig::new(4, 4);
        let mut st = cdim_initialize(f.space(), 4, &f, ChaCha8Rng::seed_from_u64(2)).unwrap();
        let o = abs_step(&mut st, 0, &f, &cfg).unwrap();
        assert!(o.exhausted);
        assert_eq!(st.fes, 4);
    }

    #[test]
    fn variant_remapping() {
        let f = make_base("sphere", 2).unwrap();
        let mut st = cdim_initialize(f.space(), 4, &f, ChaCha8Rng::seed_from_u64(3)).unwrap();
        let g_only = AbsConfig::new(4, 1000).with_variant(Variant::GOnly);
        assert_eq!(
            abs_step(&mut st, 0, &f, &g_only).unwrap().decision,
            ChannelDecision::RunG
        );
        let non_g = AbsConfig::new(4, 1000).with_variant(Variant::NonGOnly);
        // alpha in (M1, M] with beta = 0 would pick G in the full method
        st.subs[1].alpha = 6;
        st.fes = 900;
        assert_eq!(
            abs_step(&mut st, 1, &f, &non_g).unwrap().decision,
            ChannelDecision::RunNonG
        );
    }

    #[test]
    fn sphere_run_is_monotone_and_deterministic() {
        let f = make_base("sphere", 2).unwrap();
        let cfg = AbsConfig::new(4, 2000);
        let a = run_dcpso_abs(&f, &cfg, 11).unwrap();
        let b = run_dcpso_abs(&f, &cfg, 11).unwrap();
        assert_eq!(a, b);
        assert!(a.final_error <= a.initial_error());
        for w in a.samples.windows(2) {
            assert!(w[1].error <= w[0].error);
            assert!(w[1].fes >= w[0].fes);
        }
        assert!(a.total_fes <= 2000);
        assert_eq!(a.total_fes, 4 + a.channel_steps());
    }

    #[test]
    fn config_validation() {
        assert!(AbsConfig::new(1, 100).validate().is_err());
        assert!(AbsConfig::new(4, 3).validate().is_err());
        assert!(AbsConfig::new(4, 100).with_m(0).validate().is_err());
        assert!(AbsConfig::new(4, 100).validate().is_ok());
    }
}
