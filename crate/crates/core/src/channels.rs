//! Velocity/position update rules: the exemplar-only channel, the channel
//! with global-best attraction, and the classic PSO update used by the
//! baseline.
//!
//! Every rule draws its uniform coefficients per dimension, clamps the new
//! velocity to the space's cap before moving, and then clamps the position
//! to the box (zeroing the velocity on any clamped dimension).

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::swarm::{ParticleState, SearchSpace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ChannelKind {
    NonG,
    G,
    StandardPso,
}

/// Exemplar-guided update with no global-best term.
pub fn step_non_g<R: Rng + ?Sized>(
    particle: &mut ParticleState,
    exemplar: &[f64],
    w: f64,
    c: f64,
    space: &SearchSpace,
    rng: &mut R,
) {
    let x = &particle.position;
    for (d, v) in particle.velocity.iter_mut().enumerate() {
        let r: f64 = rng.random();
        *v = w * *v + c * r * (exemplar[d] - x[d]);
    }
    finish_move(particle, space);
}

/// Exemplar-guided update with an additional pull towards `global`.
///
/// All cognitive draws are taken before the social draws, so with `c2 = 0`
/// this consumes the random stream exactly like [`step_non_g`] for its
/// first `D` draws and yields the same particle.
#[allow(clippy::too_many_arguments)]
pub fn step_g<R: Rng + ?Sized>(
    particle: &mut ParticleState,
    exemplar: &[f64],
    global: &[f64],
    w: f64,
    c1: f64,
    c2: f64,
    space: &SearchSpace,
    rng: &mut R,
) {
    let x = &particle.position;
    for (d, v) in particle.velocity.iter_mut().enumerate() {
        let r1: f64 = rng.random();
        *v = w * *v + c1 * r1 * (exemplar[d] - x[d]);
    }
    for (d, v) in particle.velocity.iter_mut().enumerate() {
        let r2: f64 = rng.random();
        *v += c2 * r2 * (global[d] - x[d]);
    }
    finish_move(particle, space);
}

/// Classic inertia-weight PSO: attraction to the particle's own best and to
/// the global best.
#[allow(clippy::too_many_arguments)]
pub fn step_standard_pso<R: Rng + ?Sized>(
    particle: &mut ParticleState,
    personal_best: &[f64],
    global: &[f64],
    w: f64,
    c1: f64,
    c2: f64,
    space: &SearchSpace,
    rng: &mut R,
) {
    step_g(particle, personal_best, global, w, c1, c2, space, rng);
}

fn finish_move(particle: &mut ParticleState, space: &SearchSpace) {
    for ((v, x), &cap) in particle
        .velocity
        .iter_mut()
        .zip(particle.position.iter_mut())
        .zip(space.v_max())
    {
        *v = v.clamp(-cap, cap);
        *x += *v;
    }
    handle_bounds(&mut particle.position, &mut particle.velocity, space);
}

/// Clamps out-of-box coordinates to the nearest bound and zeroes the
/// velocity on those dimensions.
pub fn handle_bounds(x: &mut [f64], v: &mut [f64], space: &SearchSpace) {
    for (d, (xd, vd)) in x.iter_mut().zip(v.iter_mut()).enumerate() {
        let (lo, hi) = (space.lower()[d], space.upper()[d]);
        if *xd < lo {
            *xd = lo;
            *vd = 0.0;
        } else if *xd > hi {
            *xd = hi;
            *vd = 0.0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::swarm::ChannelLabel;
    use proptest::prelude::{any, prop, prop_assert, prop_assert_eq, proptest};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Yields 0.5 from every `random::<f64>()` call.
    struct Half;

    impl rand::RngCore for Half {
        fn next_u32(&mut self) -> u32 {
            1 << 31
        }
        fn next_u64(&mut self) -> u64 {
            1 << 63
        }
        fn fill_bytes(&mut self, dst: &mut [u8]) {
            dst.fill(0);
        }
    }

    fn particle(x: Vec<f64>, v: Vec<f64>) -> ParticleState {
        ParticleState {
            position: x,
            velocity: v,
            fitness: 0.0,
            label: ChannelLabel::NonG,
        }
    }

    fn wide(d: usize) -> SearchSpace {
        SearchSpace::new(vec![-100.0; d], vec![100.0; d], vec![50.0; d]).unwrap()
    }

    #[test]
    fn half_rng_draws_one_half() {
        assert_eq!(Half.random::<f64>(), 0.5);
    }

    #[test]
    fn non_g_at_exemplar_without_inertia_stays() {
        let mut p = particle(vec![1.0, -2.0], vec![3.0, 4.0]);
        step_non_g(&mut p, &[1.0, -2.0], 0.0, 2.0, &wide(2), &mut Half);
        assert_eq!(p.position, vec![1.0, -2.0]);
        assert_eq!(p.velocity, vec![0.0, 0.0]);
    }

    #[test]
    fn non_g_pure_inertia() {
        let mut p = particle(vec![1.0, -2.0], vec![3.0, 4.0]);
        step_non_g(&mut p, &[9.0, 9.0], 1.0, 0.0, &wide(2), &mut Half);
        assert_eq!(p.position, vec![4.0, 2.0]);
        assert_eq!(p.velocity, vec![3.0, 4.0]);
    }

    #[test]
    fn non_g_hand_evaluated() {
        let mut p = particle(vec![0.0], vec![0.0]);
        step_non_g(&mut p, &[1.0], 0.5, 2.0, &wide(1), &mut Half);
        assert_eq!(p.velocity, vec![1.0]);
        assert_eq!(p.position, vec![1.0]);
    }

    #[test]
    fn g_hand_evaluated() {
        let mut p = particle(vec![0.0], vec![0.0]);
        step_g(&mut p, &[2.0], &[4.0], 0.0, 1.0, 1.0, &wide(1), &mut Half);
        assert_eq!(p.velocity, vec![3.0]);
        assert_eq!(p.position, vec![3.0]);
    }

    #[test]
    fn g_with_both_attractors_at_particle_is_inertia_only() {
        let mut p = particle(vec![5.0], vec![2.0]);
        step_g(&mut p, &[5.0], &[5.0], 0.7, 1.5, 1.5, &wide(1), &mut Half);
        assert!((p.velocity[0] - 1.4).abs() < 1e-15);
        assert!((p.position[0] - 6.4).abs() < 1e-15);
    }

    #[test]
    fn velocity_clamped_before_move() {
        let space = SearchSpace::new(vec![-100.0], vec![100.0], vec![1.0]).unwrap();
        let mut p = particle(vec![0.0], vec![0.0]);
        step_non_g(&mut p, &[50.0], 0.0, 2.0, &space, &mut Half);
        assert_eq!(p.velocity, vec![1.0]);
        assert_eq!(p.position, vec![1.0]);
    }

    #[test]
    fn standard_pso_moves_toward_personal_best() {
        let mut p = particle(vec![0.0, 10.0], vec![0.0, 0.0]);
        step_standard_pso(
            &mut p,
            &[4.0, 2.0],
            &[0.0, 0.0],
            0.0,
            1.0,
            0.0,
            &wide(2),
            &mut Half,
        );
        assert_eq!(p.position, vec![2.0, 6.0]);
    }

    #[test]
    fn standard_pso_fixed_point() {
        let mut p = particle(vec![3.0, -1.0], vec![0.0, 0.0]);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..100 {
            step_standard_pso(
                &mut p,
                &[3.0, -1.0],
                &[3.0, -1.0],
                0.9,
                2.0,
                2.0,
                &wide(2),
                &mut rng,
            );
            assert_eq!(p.position, vec![3.0, -1.0]);
        }
    }

    #[test]
    fn bounds_clamp_and_zero() {
        let space = wide(2);
        let mut x = vec![105.0, 3.0];
        let mut v = vec![7.0, 7.0];
        handle_bounds(&mut x, &mut v, &space);
        assert_eq!(x, vec![100.0, 3.0]);
        assert_eq!(v, vec![0.0, 7.0]);

        let mut x = vec![-1.0, 1.0];
        let mut v = vec![1.0, 2.0];
        handle_bounds(&mut x, &mut v, &space);
        assert_eq!((x, v), (vec![-1.0, 1.0], vec![1.0, 2.0]));
    }

    proptest! {
        #[test]
        fn bounds_always_feasible(
            xs in prop::collection::vec(-1e4f64..1e4, 1..8),
            seed in any::<u64>(),
        ) {
            let d = xs.len();
            let space = wide(d);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let v0: Vec<f64> = (0..d).map(|_| rng.random_range(-60.0..60.0)).collect();
            let mut x = xs.clone();
            let mut v = v0.clone();
            handle_bounds(&mut x, &mut v, &space);
            prop_assert!(space.contains(&x));
            for (a, b) in v.iter().zip(&v0) {
                prop_assert!(a.abs() <= b.abs());
            }
        }

        #[test]
        fn g_without_social_term_reduces_to_non_g(
            seed in any::<u64>(),
            w in 0.0f64..1.0,
            c in 0.0f64..3.0,
            d in 1usize..6,
        ) {
            let space = wide(d);
            let mut setup = ChaCha8Rng::seed_from_u64(seed ^ 0xdead);
            let x = space.sample_position(&mut setup);
            let v = space.sample_velocity(&mut setup);
            let ex = space.sample_position(&mut setup);
            let g = space.sample_position(&mut setup);

            let mut a = particle(x.clone(), v.clone());
            let mut b = particle(x, v);
            step_non_g(&mut a, &ex, w, c, &space, &mut ChaCha8Rng::seed_from_u64(seed));
            step_g(&mut b, &ex, &g, w, c, 0.0, &space, &mut ChaCha8Rng::seed_from_u64(seed));
            prop_assert_eq!(a, b);
        }

        #[test]
        fn step_postconditions_and_determinism(seed in any::<u64>(), d in 1usize..6) {
            let space = SearchSpace::uniform(d, -5.0, 5.0).unwrap();
            let mut setup = ChaCha8Rng::seed_from_u64(seed);
            let x = space.sample_position(&mut setup);
            let v = space.sample_velocity(&mut setup);
            let ex = space.sample_position(&mut setup);
            let g = space.sample_position(&mut setup);

            let mut a = particle(x.clone(), v.clone());
            step_g(&mut a, &ex, &g, 0.9, 2.5, 2.5, &space, &mut ChaCha8Rng::seed_from_u64(seed));
            prop_assert!(space.contains(&a.position));
            for (vd, cap) in a.velocity.iter().zip(space.v_max()) {
                prop_assert!(vd.abs() <= *cap);
            }
            let mut b = particle(x, v);
            step_g(&mut b, &ex, &g, 0.9, 2.5, 2.5, &space, &mut ChaCha8Rng::seed_from_u64(seed));
            prop_assert_eq!(&a, &b);
        }
    }
}
