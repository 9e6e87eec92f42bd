//! Center-of-mass aggregation of ν particle trajectories and the uniform,
//! CM-driven modification of all particles.
//!
//! The modification factor exp(−S_CM·α/ħ) is computed once from the
//! center-of-mass action and applied to every particle; per-particle factors
//! would contradict each other (the routes CM-then-modify and
//! modify-then-CM only commute for a common factor).

use crate::error::{Error, Result};
use crate::paths::{kinetic_action, LatticeTrajectory, Point};
use crate::scalar::Scalar;
use crate::units::PhysicalConstants;

/// ν particles on one shared lattice; each trajectory carries its own mass.
#[derive(Debug, Clone, PartialEq)]
pub struct ParticleSystem<F> {
    particles: Vec<LatticeTrajectory<F>>,
    total_mass: F,
}

impl<F: Scalar> ParticleSystem<F> {
    pub fn new(particles: Vec<LatticeTrajectory<F>>) -> Result<Self> {
        let first = particles
            .first()
            .ok_or_else(|| Error::invalid("particle_system", "need at least one particle"))?;
        for p in &particles[1..] {
            if !first.shares_lattice_with(p) {
                return Err(Error::invalid(
                    "particle_system",
                    "all trajectories must share dimension, segment count, and tau step",
                ));
            }
        }
        let total_mass = particles
            .iter()
            .map(LatticeTrajectory::mass)
            .fold(F::zero(), |acc, m| acc + m);
        if !(total_mass > F::zero()) {
            return Err(Error::NonPositive {
                what: "total_mass",
                value: total_mass.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self {
            particles,
            total_mass,
        })
    }

    pub fn particles(&self) -> &[LatticeTrajectory<F>] {
        &self.particles
    }

    pub fn total_mass(&self) -> F {
        self.total_mass
    }

    pub fn len(&self) -> usize {
        self.particles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.particles.is_empty()
    }
}

/// Mass-weighted mean trajectory (1/M)·Σ mᵢ·xᵢ, carrying the total mass M.
pub fn cm_trajectory<F: Scalar>(sys: &ParticleSystem<F>) -> LatticeTrajectory<F> {
    let template = &sys.particles()[0];
    let slices = template.positions().len();
    let dimension = template.dimension();
    let inv_m = sys.total_mass().recip();
    let mut positions: Vec<Point<F>> = vec![[F::zero(); 3]; slices];
    for particle in sys.particles() {
        let m = particle.mass();
        for (acc, p) in positions.iter_mut().zip(particle.positions()) {
            for i in 0..dimension {
                acc[i] += m * p[i];
            }
        }
    }
    for p in positions.iter_mut() {
        for c in p.iter_mut().take(dimension) {
            *c *= inv_m;
        }
    }
    LatticeTrajectory::new(sys.total_mass(), dimension, positions, template.tau_step())
        .expect("weighted mean of valid trajectories is valid")
}

/// Common scale factor exp(−S_CM·α/ħ) ∈ (0, 1] from the center-of-mass action.
pub fn cm_modification_factor<F: Scalar>(
    sys: &ParticleSystem<F>,
    alpha: F,
    constants: &PhysicalConstants<F>,
) -> Result<F> {
    if !(alpha >= F::zero() && alpha <= F::one()) {
        return Err(Error::AlphaOutOfRange(alpha.to_f64().unwrap_or(f64::NAN)));
    }
    let s_cm = kinetic_action(&cm_trajectory(sys)).value();
    Ok((-s_cm * alpha / constants.hbar.value()).exp())
}

/// Scale every particle's positions by the common CM factor; masses and the
/// lattice are unchanged.
pub fn modify_system<F: Scalar>(
    sys: &ParticleSystem<F>,
    alpha: F,
    constants: &PhysicalConstants<F>,
) -> Result<ParticleSystem<F>> {
    let factor = cm_modification_factor(sys, alpha, constants)?;
    let particles = sys
        .particles()
        .iter()
        .map(|p| p.scaled_positions(factor))
        .collect();
    ParticleSystem::new(particles)
}
