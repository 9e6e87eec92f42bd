//! Center-of-mass modification consistency on random systems, and the
//! demonstration that per-particle modification factors contradict the
//! weighted-mean route whenever particle actions differ.

use chtn_core::many_body::{cm_modification_factor, cm_trajectory, modify_system, ParticleSystem};
use chtn_core::paths::{kinetic_action, LatticeTrajectory};
use chtn_core::units::PhysicalConstants;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_system(rng: &mut ChaCha8Rng, particles: usize) -> ParticleSystem<f64> {
    let segments = 6;
    let trajectories = (0..particles)
        .map(|_| {
            let mass = 0.5 + rng.random::<f64>() * 2.0;
            let positions = (0..=segments)
                .map(|_| [rng.random::<f64>() * 4.0 - 2.0, 0.0, 0.0])
                .collect();
            LatticeTrajectory::new(mass, 1, positions, 0.25).unwrap()
        })
        .collect();
    ParticleSystem::new(trajectories).unwrap()
}

/// The rejected scheme: each particle scaled by its own exp(−Sᵢ·α/ħ).
fn per_particle_modify(
    sys: &ParticleSystem<f64>,
    alpha: f64,
    constants: &PhysicalConstants<f64>,
) -> ParticleSystem<f64> {
    let hbar = constants.hbar.value();
    let trajectories = sys
        .particles()
        .iter()
        .map(|t| {
            let factor = (-kinetic_action(t).value() * alpha / hbar).exp();
            let positions = t
                .positions()
                .iter()
                .map(|p| [p[0] * factor, p[1] * factor, p[2] * factor])
                .collect();
            LatticeTrajectory::new(t.mass(), t.dimension(), positions, t.tau_step()).unwrap()
        })
        .collect();
    ParticleSystem::new(trajectories).unwrap()
}

#[test]
fn cm_of_modified_equals_modified_cm_on_random_systems() {
    let c = PhysicalConstants::<f64>::natural();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for trial in 0..50 {
        let particles = if trial % 2 == 0 { 2 } else { 3 };
        let sys = random_system(&mut rng, particles);
        let alpha = rng.random::<f64>();
        let factor = cm_modification_factor(&sys, alpha, &c).unwrap();
        let via_system = cm_trajectory(&modify_system(&sys, alpha, &c).unwrap());
        let via_cm = cm_trajectory(&sys);
        for (a, b) in via_system.positions().iter().zip(via_cm.positions()) {
            let expected = factor * b[0];
            assert!(
                (a[0] - expected).abs() <= 1e-13 * expected.abs().max(1.0),
                "trial {trial}: {} vs {expected}",
                a[0]
            );
        }
    }
}

#[test]
fn per_particle_scheme_contradicts_the_cm_route() {
    // Two particles with very different kinetic actions: scaling each by its
    // own factor moves the weighted mean off the common-factor line.
    let c = PhysicalConstants::<f64>::natural();
    let fast = LatticeTrajectory::straight_line(1.0, &[0.0], &[3.0], 1.0, 6).unwrap();
    let slow = LatticeTrajectory::straight_line(1.0, &[1.0], &[1.1], 1.0, 6).unwrap();
    let sys = ParticleSystem::new(vec![fast, slow]).unwrap();
    let alpha = 0.8;

    let common = cm_modification_factor(&sys, alpha, &c).unwrap();
    let wrong = per_particle_modify(&sys, alpha, &c);
    let wrong_cm = cm_trajectory(&wrong);
    let right_cm_end = common * cm_trajectory(&sys).positions().last().unwrap()[0];
    let wrong_cm_end = wrong_cm.positions().last().unwrap()[0];
    assert!(
        (wrong_cm_end - right_cm_end).abs() > 1e-3,
        "per-particle scheme unexpectedly agreed: {wrong_cm_end} vs {right_cm_end}"
    );

    // Equal actions are the degenerate case where the schemes coincide.
    let mirror_a = LatticeTrajectory::straight_line(1.0, &[0.0], &[2.0], 1.0, 6).unwrap();
    let mirror_b = LatticeTrajectory::straight_line(1.0, &[0.0], &[-2.0], 1.0, 6).unwrap();
    let equal = ParticleSystem::new(vec![mirror_a, mirror_b]).unwrap();
    let per = per_particle_modify(&equal, alpha, &c);
    let ratio = per.particles()[0].positions().last().unwrap()[0]
        / equal.particles()[0].positions().last().unwrap()[0];
    let other = per.particles()[1].positions().last().unwrap()[0]
        / equal.particles()[1].positions().last().unwrap()[0];
    assert!((ratio - other).abs() < 1e-12);
}
