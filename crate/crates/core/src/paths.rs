//! Discretized imaginary-time trajectories of non-relativistic free particles:
//! kinetic action, event readout, original/modified classical probabilities,
//! trajectory contraction, and a Monte Carlo estimate of the free Euclidean
//! propagator.
//!
//! Positions, masses, and times are bare scalars in the caller's unit system;
//! actions and kernel densities come back as tagged quantities.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalar::{cast, Scalar};
use crate::units::{Dimension, PhysicalConstants, Quantity};

/// A point in up to three spatial dimensions; unused components stay zero.
pub type Point<F> = [F; 3];

/// Relative slack when detecting integer action-level crossings in
/// `readout_events`; absorbs roundoff in paths built to hit a level exactly.
const CROSSING_REL_TOL: f64 = 1e-9;

/// Hard cap on emitted readout events. In SI units a macroscopic action is
/// ~10^34 events; materializing that vector is not meaningful, so the readout
/// rejects it instead of exhausting memory.
pub const MAX_READOUT_EVENTS: usize = 10_000_000;

/// Proposal mass inflation for the bridge sampler; any value ≠ 1 gives the
/// importance weights genuine variance while keeping the estimator unbiased.
const PROPOSAL_MASS_RATIO: f64 = 1.05;

/// Samples per self-seeded Monte Carlo batch.
const MC_BATCH: usize = 4_096;
/// Bootstrap replicates for the kernel standard error.
const MC_BOOTSTRAP: usize = 200;

fn point_from_slice<F: Scalar>(x: &[F]) -> Point<F> {
    let mut p = [F::zero(); 3];
    p[..x.len()].copy_from_slice(x);
    p
}

fn sq_dist<F: Scalar>(a: &Point<F>, b: &Point<F>, dimension: usize) -> F {
    let mut acc = F::zero();
    for i in 0..dimension {
        let d = b[i] - a[i];
        acc += d * d;
    }
    acc
}

/// An off-shell lattice trajectory with fixed edges: K+1 positions separated
/// by the imaginary-time step Δτ.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeTrajectory<F> {
    mass: F,
    positions: Vec<Point<F>>,
    tau_step: F,
    dimension: usize,
}

impl<F: Scalar> LatticeTrajectory<F> {
    pub fn new(mass: F, dimension: usize, positions: Vec<Point<F>>, tau_step: F) -> Result<Self> {
        if !(1..=3).contains(&dimension) {
            return Err(Error::invalid(
                "trajectory",
                format!("dimension must be 1, 2, or 3, got {dimension}"),
            ));
        }
        if positions.len() < 2 {
            return Err(Error::invalid(
                "trajectory",
                "need at least two lattice points (K >= 1)",
            ));
        }
        if !(mass > F::zero()) {
            return Err(Error::NonPositive {
                what: "mass",
                value: mass.to_f64().unwrap_or(f64::NAN),
            });
        }
        if !(tau_step > F::zero()) {
            return Err(Error::NonPositive {
                what: "tau_step",
                value: tau_step.to_f64().unwrap_or(f64::NAN),
            });
        }
        for p in &positions {
            for (i, c) in p.iter().enumerate() {
                if !c.is_finite() {
                    return Err(Error::invalid("trajectory", "non-finite position"));
                }
                if i >= dimension && *c != F::zero() {
                    return Err(Error::invalid(
                        "trajectory",
                        format!("component {i} must be zero in dimension {dimension}"),
                    ));
                }
            }
        }
        Ok(Self {
            mass,
            positions,
            tau_step,
            dimension,
        })
    }

    /// The straight line from `start` to `end` over total imaginary time `tau`
    /// on K segments — the on-shell trajectory of a free particle.
    pub fn straight_line(
        mass: F,
        start: &[F],
        end: &[F],
        tau: F,
        segments: usize,
    ) -> Result<Self> {
        if start.len() != end.len() {
            return Err(Error::invalid("trajectory", "endpoint dimensions differ"));
        }
        if !(1..=3).contains(&start.len()) {
            return Err(Error::invalid(
                "trajectory",
                format!("dimension must be 1, 2, or 3, got {}", start.len()),
            ));
        }
        if segments < 1 {
            return Err(Error::invalid("trajectory", "need at least one segment"));
        }
        if !(tau > F::zero()) {
            return Err(Error::NonPositive {
                what: "tau",
                value: tau.to_f64().unwrap_or(f64::NAN),
            });
        }
        let dimension = start.len();
        let a = point_from_slice(start);
        let b = point_from_slice(end);
        let n = cast::<F>(segments as f64);
        let positions = (0..=segments)
            .map(|k| {
                let u = cast::<F>(k as f64) / n;
                let mut p = [F::zero(); 3];
                for i in 0..dimension {
                    p[i] = a[i] + (b[i] - a[i]) * u;
                }
                p
            })
            .collect();
        Self::new(mass, dimension, positions, tau / n)
    }

    pub fn mass(&self) -> F {
        self.mass
    }

    pub fn positions(&self) -> &[Point<F>] {
        &self.positions
    }

    pub fn tau_step(&self) -> F {
        self.tau_step
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn segments(&self) -> usize {
        self.positions.len() - 1
    }

    pub fn total_tau(&self) -> F {
        self.tau_step * cast(self.segments() as f64)
    }

    /// Same lattice (dimension, segment count, step) as another trajectory.
    pub fn shares_lattice_with(&self, other: &Self) -> bool {
        self.dimension == other.dimension
            && self.positions.len() == other.positions.len()
            && self.tau_step == other.tau_step
    }

    /// Copy with every position scaled by a common factor.
    pub(crate) fn scaled_positions(&self, factor: F) -> Self {
        let positions = self
            .positions
            .iter()
            .map(|p| [p[0] * factor, p[1] * factor, p[2] * factor])
            .collect();
        Self {
            mass: self.mass,
            positions,
            tau_step: self.tau_step,
            dimension: self.dimension,
        }
    }
}

/// Forward-difference Euclidean kinetic action Σ m·|Δx|²/(2Δτ). Rest energy
/// is excluded by construction.
pub fn kinetic_action<F: Scalar>(traj: &LatticeTrajectory<F>) -> Quantity<F> {
    let half_m = traj.mass * cast(0.5);
    let mut acc = F::zero();
    for w in traj.positions.windows(2) {
        acc += sq_dist(&w[0], &w[1], traj.dimension);
    }
    Quantity::new(half_m * acc / traj.tau_step, Dimension::ACTION)
}

/// Imaginary-time event count N_τ = S/(ħ·b), kept real-valued.
pub fn event_count<F: Scalar>(action: Quantity<F>, constants: &PhysicalConstants<F>) -> Result<F> {
    let s = action.expect_dim(Dimension::ACTION, "event_count")?;
    if !(s >= F::zero()) {
        return Err(Error::Negative {
            what: "action",
            value: s.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(s / constants.bit_action().value())
}

/// Original classical probability e^(−S/ħ) = 2^(−N_τ) of an off-shell path.
pub fn original_probability<F: Scalar>(
    action: Quantity<F>,
    constants: &PhysicalConstants<F>,
) -> Result<F> {
    let s = action.expect_dim(Dimension::ACTION, "original_probability")?;
    if !(s >= F::zero()) {
        return Err(Error::Negative {
            what: "action",
            value: s.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok((-s / constants.hbar.value()).exp())
}

/// Modified classical probability 2^(−N_τ·(1−α)) = W^(−N_τ).
pub fn modified_probability<F: Scalar>(
    action: Quantity<F>,
    alpha: F,
    constants: &PhysicalConstants<F>,
) -> Result<F> {
    if !(alpha >= F::zero() && alpha <= F::one()) {
        return Err(Error::AlphaOutOfRange(alpha.to_f64().unwrap_or(f64::NAN)));
    }
    let n_tau = event_count(action, constants)?;
    Ok(cast::<F>(2.0).powf(-n_tau * (F::one() - alpha)))
}

/// Growth factor 2^(N_τ·α) of the modified over the original probability.
pub fn probability_ratio<F: Scalar>(
    action: Quantity<F>,
    alpha: F,
    constants: &PhysicalConstants<F>,
) -> Result<F> {
    if !(alpha >= F::zero() && alpha <= F::one()) {
        return Err(Error::AlphaOutOfRange(alpha.to_f64().unwrap_or(f64::NAN)));
    }
    let n_tau = event_count(action, constants)?;
    Ok(cast::<F>(2.0).powf(n_tau * alpha))
}

/// The (original, modified, ratio) probability triple of one path.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathProbability<F> {
    pub original: F,
    pub modified: F,
    pub ratio: F,
}

pub fn path_probability<F: Scalar>(
    action: Quantity<F>,
    alpha: F,
    constants: &PhysicalConstants<F>,
) -> Result<PathProbability<F>> {
    Ok(PathProbability {
        original: original_probability(action, constants)?,
        modified: modified_probability(action, alpha, constants)?,
        ratio: probability_ratio(action, alpha, constants)?,
    })
}

/// Readout events along a trajectory: (position, τ) pairs, the first entry at
/// τ = 0 and one entry per accumulated ħ·b of action.
#[derive(Debug, Clone, PartialEq)]
pub struct EventVector<F> {
    entries: Vec<(Point<F>, F)>,
    dimension: usize,
}

impl<F: Scalar> EventVector<F> {
    pub fn new(entries: Vec<(Point<F>, F)>, dimension: usize) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::invalid("event_vector", "no entries"));
        }
        if entries[0].1 != F::zero() {
            return Err(Error::invalid("event_vector", "first tau must be 0"));
        }
        for w in entries.windows(2) {
            if !(w[1].1 > w[0].1) {
                return Err(Error::invalid(
                    "event_vector",
                    "tau values must be strictly increasing",
                ));
            }
        }
        Ok(Self { entries, dimension })
    }

    pub fn entries(&self) -> &[(Point<F>, F)] {
        &self.entries
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Number of readout events N (entries minus the starting point).
    pub fn count(&self) -> usize {
        self.entries.len() - 1
    }
}

/// Contract every event position by 2^(−N_τ·α); τ values are untouched.
pub fn contract_event_vector<F: Scalar>(
    v: &EventVector<F>,
    n_tau: F,
    alpha: F,
) -> Result<EventVector<F>> {
    if !(alpha >= F::zero() && alpha <= F::one()) {
        return Err(Error::AlphaOutOfRange(alpha.to_f64().unwrap_or(f64::NAN)));
    }
    if !(n_tau >= F::zero()) {
        return Err(Error::Negative {
            what: "n_tau",
            value: n_tau.to_f64().unwrap_or(f64::NAN),
        });
    }
    let factor = cast::<F>(2.0).powf(-n_tau * alpha);
    let entries = v
        .entries
        .iter()
        .map(|(p, tau)| ([p[0] * factor, p[1] * factor, p[2] * factor], *tau))
        .collect();
    EventVector::new(entries, v.dimension)
}

/// Walk the trajectory accumulating kinetic action and emit an event at each
/// crossing of an integer multiple of ħ·b, interpolating position and τ
/// linearly inside the segment. The final count is ⌊N_τ⌋, capped at
/// [`MAX_READOUT_EVENTS`].
pub fn readout_events<F: Scalar>(
    traj: &LatticeTrajectory<F>,
    constants: &PhysicalConstants<F>,
) -> Result<EventVector<F>> {
    let hb = constants.bit_action().value();
    let n_tau = event_count(kinetic_action(traj), constants)?;
    if n_tau > cast(MAX_READOUT_EVENTS as f64) {
        return Err(Error::invalid(
            "readout_events",
            format!(
                "event count {:.3e} exceeds the cap {MAX_READOUT_EVENTS}; rescale to natural units or shorten the trajectory",
                n_tau.to_f64().unwrap_or(f64::NAN)
            ),
        ));
    }
    let rel = cast::<F>(CROSSING_REL_TOL);
    let mut entries: Vec<(Point<F>, F)> = vec![(traj.positions[0], F::zero())];
    let mut cumulative = F::zero();
    let mut next_level = 1u64;
    let half_m = traj.mass * cast(0.5);
    for (k, w) in traj.positions.windows(2).enumerate() {
        let seg_action = half_m * sq_dist(&w[0], &w[1], traj.dimension) / traj.tau_step;
        if seg_action <= F::zero() {
            cumulative += seg_action;
            continue;
        }
        let end = cumulative + seg_action;
        loop {
            let level = cast::<F>(next_level as f64) * hb;
            if level > end + rel * level {
                break;
            }
            let u = ((level - cumulative) / seg_action).min(F::one()).max(F::zero());
            let mut pos = [F::zero(); 3];
            for i in 0..traj.dimension {
                pos[i] = w[0][i] + (w[1][i] - w[0][i]) * u;
            }
            let tau = (cast::<F>(k as f64) + u) * traj.tau_step;
            entries.push((pos, tau));
            next_level += 1;
        }
        cumulative = end;
    }
    EventVector::new(entries, traj.dimension)
}

/// Monte Carlo kernel estimate with its bootstrap standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelEstimate<F> {
    pub estimate: Quantity<F>,
    pub std_error: Quantity<F>,
    pub samples: usize,
    pub segments: usize,
}

/// Closed-form free Euclidean kernel (m/(2πħτ))^(D/2)·exp(−m|Δx|²/(2ħτ)).
pub fn analytic_free_kernel<F: Scalar>(
    mass: F,
    x_start: &[F],
    x_end: &[F],
    tau: F,
    constants: &PhysicalConstants<F>,
) -> Result<Quantity<F>> {
    let d = x_start.len();
    if d == 0 || d > 3 || x_end.len() != d {
        return Err(Error::invalid("kernel", "endpoints must share dimension 1..=3"));
    }
    if !(tau > F::zero()) {
        return Err(Error::NonPositive {
            what: "tau",
            value: tau.to_f64().unwrap_or(f64::NAN),
        });
    }
    let hbar = constants.hbar.value();
    let two = cast::<F>(2.0);
    let norm = (mass / (two * F::PI() * hbar * tau)).powf(cast(d as f64 / 2.0));
    let a = point_from_slice(x_start);
    let b = point_from_slice(x_end);
    let value = norm * (-mass * sq_dist(&a, &b, d) / (two * hbar * tau)).exp();
    Ok(Quantity::new(value, Dimension::inverse_volume(d as u8)))
}

/// Estimate the free Euclidean kernel by importance sampling over lattice
/// paths.
///
/// Interior points are drawn from the Brownian bridge of a proposal particle
/// with mass κ·m (exact Gaussian step measure conditioned on the fixed
/// edges), so the estimator is the analytically-known proposal kernel times
/// the mean importance weight
///
///   w = κ^(−DK/2) · exp(−m(1−κ)·Σ|Δx|²/(2ħΔτ)).
///
/// Gaussian convolutions are exact at every K, so the estimate is unbiased
/// for the continuum kernel at any lattice resolution; the bootstrap standard
/// error is over per-path weights. Deterministic for fixed (seed, K, samples),
/// independent of worker count (each batch derives its stream from the batch
/// index).
#[allow(clippy::too_many_arguments)]
pub fn mc_propagator<F: Scalar>(
    mass: F,
    x_start: &[F],
    x_end: &[F],
    tau: F,
    segments: usize,
    samples: usize,
    seed: u64,
    constants: &PhysicalConstants<F>,
) -> Result<KernelEstimate<F>>
where
    StandardNormal: Distribution<F>,
{
    let d = x_start.len();
    if d == 0 || d > 3 || x_end.len() != d {
        return Err(Error::invalid(
            "mc_propagator",
            "endpoints must share dimension 1..=3",
        ));
    }
    if !(tau > F::zero()) || !tau.is_finite() {
        return Err(Error::NonPositive {
            what: "tau",
            value: tau.to_f64().unwrap_or(f64::NAN),
        });
    }
    if segments < 2 {
        return Err(Error::invalid("mc_propagator", "need K >= 2 segments"));
    }
    if samples < 100 {
        return Err(Error::invalid("mc_propagator", "need at least 100 samples"));
    }
    if !(mass > F::zero()) {
        return Err(Error::NonPositive {
            what: "mass",
            value: mass.to_f64().unwrap_or(f64::NAN),
        });
    }

    let hbar = constants.hbar.value();
    let kappa = cast::<F>(PROPOSAL_MASS_RATIO);
    let proposal_mass = mass * kappa;
    let tau_step = tau / cast(segments as f64);
    let step_var = hbar * tau_step / proposal_mass;
    let start = point_from_slice(x_start);
    let end = point_from_slice(x_end);

    // log-space pieces of the weight: w = exp(log_norm - coeff·Σ|Δx|²)
    let log_norm = -cast::<F>(d as f64 * segments as f64 / 2.0) * kappa.ln();
    let coeff = mass * (F::one() - kappa) / (cast::<F>(2.0) * hbar * tau_step);

    let n_batches = samples.div_ceil(MC_BATCH);
    let weights: Vec<F> = (0..n_batches)
        .into_par_iter()
        .flat_map_iter(|batch| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(batch as u64);
            let lo = batch * MC_BATCH;
            let hi = (lo + MC_BATCH).min(samples);
            (lo..hi)
                .map(|_| {
                    let mut cur = start;
                    let mut sum_sq = F::zero();
                    for k in 0..segments - 1 {
                        let remaining = cast::<F>((segments - k) as f64);
                        let var = step_var * (remaining - F::one()) / remaining;
                        let sd = var.sqrt();
                        let mut nxt = [F::zero(); 3];
                        for i in 0..d {
                            let mean = cur[i] + (end[i] - cur[i]) / remaining;
                            let z: F = rng.sample(StandardNormal);
                            nxt[i] = mean + sd * z;
                        }
                        sum_sq += sq_dist(&cur, &nxt, d);
                        cur = nxt;
                    }
                    sum_sq += sq_dist(&cur, &end, d);
                    (log_norm - coeff * sum_sq).exp()
                })
                .collect::<Vec<F>>()
        })
        .collect();

    let proposal_kernel =
        analytic_free_kernel(proposal_mass, x_start, x_end, tau, constants)?.value();
    let n = cast::<F>(samples as f64);
    let mean_w = weights.iter().copied().sum::<F>() / n;
    let estimate = proposal_kernel * mean_w;

    // Bootstrap over per-path weights, seeded from a reserved stream.
    let mut boot_rng = ChaCha8Rng::seed_from_u64(seed);
    boot_rng.set_stream(u64::MAX);
    let mut boot_means = Vec::with_capacity(MC_BOOTSTRAP);
    for _ in 0..MC_BOOTSTRAP {
        let mut acc = F::zero();
        for _ in 0..samples {
            acc += weights[boot_rng.random_range(0..samples)];
        }
        boot_means.push((acc / n).to_f64().expect("finite weight mean"));
    }
    let bm = boot_means.iter().sum::<f64>() / boot_means.len() as f64;
    let bv = boot_means.iter().map(|x| (x - bm).powi(2)).sum::<f64>()
        / (boot_means.len() - 1) as f64;
    let std_error = proposal_kernel * cast::<F>(bv.sqrt());

    let dim = Dimension::inverse_volume(d as u8);
    Ok(KernelEstimate {
        estimate: Quantity::new(estimate, dim),
        std_error: Quantity::new(std_error, dim),
        samples,
        segments,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn natural() -> PhysicalConstants<f64> {
        PhysicalConstants::natural()
    }

    fn straight(mass: f64, from: f64, to: f64, tau: f64, k: usize) -> LatticeTrajectory<f64> {
        LatticeTrajectory::straight_line(mass, &[from], &[to], tau, k).unwrap()
    }

    #[test]
    fn constant_path_has_zero_action() {
        let t = straight(1.0, 1.5, 1.5, 1.0, 8);
        assert_eq!(kinetic_action(&t).value(), 0.0);
    }

    #[test]
    fn straight_line_action_matches_closed_form_for_every_k() {
        // Telescoping: Σ m (Δx/K)² K / (2 τ/K) = m Δx² / (2τ) exactly.
        for k in [1usize, 2, 3, 7, 64, 501] {
            let t = straight(1.0, 0.0, 2.0, 1.0, k);
            assert_relative_eq!(kinetic_action(&t).value(), 2.0, max_relative = 1e-12);
        }
    }

    #[test]
    fn action_scales_quadratically_with_displacement() {
        let s1 = kinetic_action(&straight(1.0, 0.0, 1.0, 1.0, 16)).value();
        let s2 = kinetic_action(&straight(1.0, 0.0, 2.0, 1.0, 16)).value();
        assert_relative_eq!(s2 / s1, 4.0, max_relative = 1e-12);
    }

    #[test]
    fn curved_path_action_converges_with_richardson_check() {
        // Smooth curved path x(τ) = sin(πτ) sampled on the lattice.
        let sample = |k: usize| {
            let positions: Vec<Point<f64>> = (0..=k)
                .map(|i| {
                    let tau = i as f64 / k as f64;
                    [(std::f64::consts::PI * tau).sin(), 0.0, 0.0]
                })
                .collect();
            let t = LatticeTrajectory::new(1.0, 1, positions, 1.0 / k as f64).unwrap();
            kinetic_action(&t).value()
        };
        let s1024 = sample(1024);
        let s2048 = sample(2048);
        // O(1/K²) error: Richardson with factor 2
        let extrapolated = (4.0 * s2048 - s1024) / 3.0;
        assert!(
            ((s2048 - extrapolated) / extrapolated).abs() < 1e-4,
            "K=2048 action {s2048} vs extrapolated {extrapolated}"
        );
        // and the extrapolation approaches the exact ∫ (1/2)(π cos πτ)² dτ = π²/4
        assert_relative_eq!(
            extrapolated,
            std::f64::consts::PI.powi(2) / 4.0,
            max_relative = 1e-6
        );
    }

    #[test]
    fn event_count_is_linear_in_action() {
        let c = natural();
        let hb = c.bit_action();
        assert_relative_eq!(event_count(hb, &c).unwrap(), 1.0, max_relative = 1e-15);
        assert_eq!(
            event_count(Quantity::new(0.0, Dimension::ACTION), &c).unwrap(),
            0.0
        );
        assert_relative_eq!(
            event_count(hb.scale(10.0), &c).unwrap(),
            10.0,
            max_relative = 1e-15
        );
    }

    #[test]
    fn original_probability_values() {
        let c = natural();
        let hb = c.bit_action();
        assert_relative_eq!(
            original_probability(hb, &c).unwrap(),
            0.5,
            max_relative = 1e-15
        );
        assert_eq!(
            original_probability(Quantity::new(0.0, Dimension::ACTION), &c).unwrap(),
            1.0
        );
        assert_relative_eq!(
            original_probability(hb.scale(10.0), &c).unwrap(),
            2.0f64.powi(-10),
            max_relative = 1e-13
        );
        assert_relative_eq!(
            original_probability(hb.scale(10.0), &c).unwrap(),
            9.7656e-4,
            max_relative = 1e-4
        );
    }

    #[test]
    fn modified_probability_values() {
        let c = natural();
        let hb = c.bit_action();
        for alpha in [0.0, 0.3, 0.9] {
            assert_relative_eq!(
                modified_probability(hb, alpha, &c).unwrap(),
                2.0f64.powf(-(1.0 - alpha)),
                max_relative = 1e-14
            );
        }
        // alpha = 0 reduces to the original probability
        let s = hb.scale(3.7);
        assert_relative_eq!(
            modified_probability(s, 0.0, &c).unwrap(),
            original_probability(s, &c).unwrap(),
            max_relative = 1e-13
        );
        assert_relative_eq!(
            modified_probability(hb.scale(3.0), 0.5, &c).unwrap(),
            0.35355,
            max_relative = 1e-4
        );
        assert!(modified_probability(s, 1.2, &c).is_err());
    }

    #[test]
    fn ratio_values_and_identity() {
        let c = natural();
        let hb = c.bit_action();
        assert_eq!(
            probability_ratio(Quantity::new(0.0, Dimension::ACTION), 0.7, &c).unwrap(),
            1.0
        );
        assert_relative_eq!(
            probability_ratio(hb.scale(3.0), 0.5, &c).unwrap(),
            2.8284,
            max_relative = 1e-4
        );
    }

    #[test]
    fn exp_and_power_of_two_forms_agree_on_grid() {
        let c = natural();
        let hbar = c.hbar.value();
        for i in 0..=1000 {
            let s = 50.0 * i as f64 / 1000.0 * hbar;
            let q = Quantity::new(s, Dimension::ACTION);
            let exp_form = original_probability(q, &c).unwrap();
            let pow_form = 2.0f64.powf(-s / (hbar * std::f64::consts::LN_2));
            assert!(
                (exp_form - pow_form).abs() <= 1e-12 * exp_form,
                "s/ħ = {}: {exp_form} vs {pow_form}",
                s / hbar
            );
        }
    }

    fn sample_events(n: usize, seed: u64) -> EventVector<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let entries = (0..n)
            .map(|i| {
                let p = [
                    rng.random::<f64>() * 4.0 - 2.0,
                    rng.random::<f64>() * 4.0 - 2.0,
                    0.0,
                ];
                (p, i as f64 * 0.25)
            })
            .collect();
        EventVector::new(entries, 2).unwrap()
    }

    #[test]
    fn contraction_identity_examples() {
        let v = sample_events(5, 3);
        let same = contract_event_vector(&v, 7.0, 0.0).unwrap();
        assert_eq!(same, v);

        let one = EventVector::new(vec![([2.0, 4.0, 0.0], 0.0), ([2.0, 4.0, 0.0], 1.0)], 2);
        // strictly increasing tau holds; halving with N=1, alpha=1
        let one = one.unwrap();
        let contracted = contract_event_vector(&one, 1.0, 1.0).unwrap();
        assert_eq!(contracted.entries()[0].0, [1.0, 2.0, 0.0]);
        assert_eq!(contracted.entries()[1].1, 1.0);
    }

    #[test]
    fn contraction_preserves_probability_weighted_positions() {
        // p̃·γ̃ = p·γ componentwise
        let c = natural();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..100 {
            let n_tau = rng.random::<f64>() * 30.0;
            let alpha = rng.random::<f64>();
            let v = sample_events(4, rng.random());
            let s = c.bit_action().scale(n_tau);
            let p = original_probability(s, &c).unwrap();
            let p_mod = modified_probability(s, alpha, &c).unwrap();
            let contracted = contract_event_vector(&v, n_tau, alpha).unwrap();
            for (orig, cont) in v.entries().iter().zip(contracted.entries()) {
                for i in 0..2 {
                    let lhs = p_mod * cont.0[i];
                    let rhs = p * orig.0[i];
                    assert!(
                        (lhs - rhs).abs() <= 1e-12 * rhs.abs().max(1e-300),
                        "residual {lhs} vs {rhs}"
                    );
                }
            }
        }
    }

    #[test]
    fn readout_straight_line_three_events() {
        let c = natural();
        // S = 3 ħ ln2 on a straight line: x = sqrt(2 τ S / m) = sqrt(6 ln2)
        let x = (6.0 * std::f64::consts::LN_2).sqrt();
        let t = straight(1.0, 0.0, x, 1.0, 4);
        let events = readout_events(&t, &c).unwrap();
        assert_eq!(events.entries().len(), 4, "start + 3 events");
        assert_eq!(events.count(), 3);
        // equally spaced in action means equally spaced in tau on a straight line
        let taus: Vec<f64> = events.entries().iter().map(|e| e.1).collect();
        for (i, tau) in taus.iter().enumerate() {
            assert_relative_eq!(*tau, i as f64 / 3.0, max_relative = 1e-9);
        }
        for w in events.entries().windows(2) {
            assert!(w[1].1 > w[0].1);
        }
    }

    #[test]
    fn readout_constant_path_has_single_entry() {
        let c = natural();
        let t = straight(1.0, 0.7, 0.7, 2.0, 6);
        let events = readout_events(&t, &c).unwrap();
        assert_eq!(events.entries().len(), 1);
        assert_eq!(events.count(), 0);
    }

    #[test]
    fn readout_rejects_astronomical_event_counts() {
        // SI-unit macroscopic action: ~1e33 events
        let si = PhysicalConstants::<f64>::si();
        let t = straight(1.0, 0.0, 1.0, 1.0, 4);
        let err = readout_events(&t, &si).unwrap_err();
        assert!(err.to_string().contains("exceeds the cap"), "{err}");
    }

    #[test]
    fn readout_count_is_floor_of_event_count() {
        let c = natural();
        for x in [0.3, 1.0, 1.7, 2.9] {
            let t = straight(1.0, 0.0, x, 1.0, 32);
            let n_tau = event_count(kinetic_action(&t), &c).unwrap();
            let events = readout_events(&t, &c).unwrap();
            assert_eq!(events.count(), n_tau.floor() as usize, "x = {x}");
        }
    }

    #[test]
    fn propagator_rejects_degenerate_input() {
        let c = natural();
        assert!(mc_propagator(1.0, &[0.0], &[1.0], 0.0, 16, 1000, 1, &c).is_err());
        assert!(mc_propagator(1.0, &[0.0], &[1.0], 1.0, 1, 1000, 1, &c).is_err());
        assert!(mc_propagator(1.0, &[0.0], &[1.0], 1.0, 16, 50, 1, &c).is_err());
        assert!(mc_propagator(1.0, &[0.0], &[1.0, 2.0], 1.0, 16, 1000, 1, &c).is_err());
    }

    #[test]
    fn propagator_is_deterministic_and_parity_symmetric() {
        let c = natural();
        let a = mc_propagator(1.0, &[0.0], &[1.0], 1.0, 16, 4000, 5, &c).unwrap();
        let b = mc_propagator(1.0, &[0.0], &[1.0], 1.0, 16, 4000, 5, &c).unwrap();
        assert_eq!(a, b);

        let plus = mc_propagator(1.0, &[0.0], &[0.8], 1.0, 16, 20_000, 5, &c).unwrap();
        let minus = mc_propagator(1.0, &[0.0], &[-0.8], 1.0, 16, 20_000, 9, &c).unwrap();
        let combined = (plus.std_error.value().powi(2) + minus.std_error.value().powi(2)).sqrt();
        assert!(
            (plus.estimate.value() - minus.estimate.value()).abs() <= 3.0 * combined,
            "parity violated: {} vs {}",
            plus.estimate.value(),
            minus.estimate.value()
        );
    }

    #[test]
    fn propagator_dimension_tag_tracks_spatial_dimension() {
        let c = natural();
        let est =
            mc_propagator(1.0, &[0.0, 0.0], &[0.5, 0.5], 1.0, 8, 2000, 3, &c).unwrap();
        assert_eq!(est.estimate.dim(), Dimension::inverse_volume(2));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn ratio_times_original_equals_modified(
            s_over_hbar in 0.0f64..40.0,
            alpha in 0.0f64..=1.0,
        ) {
            let c = natural();
            let s = Quantity::new(s_over_hbar * c.hbar.value(), Dimension::ACTION);
            let p = original_probability(s, &c).unwrap();
            let m = modified_probability(s, alpha, &c).unwrap();
            let r = probability_ratio(s, alpha, &c).unwrap();
            prop_assert!((r * p - m).abs() <= 1e-12 * m.max(1e-300));
            prop_assert!(r >= 1.0);
        }

        #[test]
        fn contraction_composes_additively(
            n1 in 0.0f64..20.0,
            n2 in 0.0f64..20.0,
            alpha in 0.0f64..=1.0,
        ) {
            let v = sample_events(4, 23);
            let two_step = contract_event_vector(
                &contract_event_vector(&v, n1, alpha).unwrap(),
                n2,
                alpha,
            ).unwrap();
            let one_step = contract_event_vector(&v, n1 + n2, alpha).unwrap();
            for (a, b) in two_step.entries().iter().zip(one_step.entries()) {
                for i in 0..2 {
                    prop_assert!((a.0[i] - b.0[i]).abs() <= 1e-14 * b.0[i].abs().max(1e-30));
                }
            }
        }
    }
}
