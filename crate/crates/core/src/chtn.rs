//! Classicalized holographic tensor network bookkeeping: measurement entropy,
//! spin action, membrane tensions, central charges, and a Bernoulli sampler
//! standing in for the classical mixed state.

use rand::distr::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Binomial;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalar::{cast, Scalar};
use crate::units::{Dimension, PhysicalConstants, Quantity};
use crate::weight::binary_entropy;

/// Default upper bound enforced on the contraction parameter ε.
pub const DEFAULT_EPSILON_LIMIT: f64 = 0.1;

/// Sampler batch size; each batch draws from its own seeded stream.
const SAMPLER_BATCH: usize = 8_192;
/// Bootstrap replicates for the sampler standard error.
const SAMPLER_BOOTSTRAP: usize = 200;

/// Network-level state: discretized area, violation parameter, site area,
/// purity duration, AdS radius, and the contraction parameter ε.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CHTNState<F> {
    area_tn: F,
    alpha: F,
    site_area: Quantity<F>,
    t2_flat: Quantity<F>,
    r_ads: Quantity<F>,
    epsilon: F,
}

impl<F: Scalar> CHTNState<F> {
    pub fn new(
        area_tn: F,
        alpha: F,
        site_area: Quantity<F>,
        t2_flat: Quantity<F>,
        r_ads: Quantity<F>,
        epsilon: F,
    ) -> Result<Self> {
        Self::with_epsilon_limit(
            area_tn,
            alpha,
            site_area,
            t2_flat,
            r_ads,
            epsilon,
            cast(DEFAULT_EPSILON_LIMIT),
        )
    }

    #[allow(clippy::too_many_arguments)]
    pub fn with_epsilon_limit(
        area_tn: F,
        alpha: F,
        site_area: Quantity<F>,
        t2_flat: Quantity<F>,
        r_ads: Quantity<F>,
        epsilon: F,
        epsilon_limit: F,
    ) -> Result<Self> {
        if !(area_tn >= F::zero()) {
            return Err(Error::Negative {
                what: "area_tn",
                value: area_tn.to_f64().unwrap_or(f64::NAN),
            });
        }
        if !(alpha >= F::zero() && alpha <= F::one()) {
            return Err(Error::AlphaOutOfRange(alpha.to_f64().unwrap_or(f64::NAN)));
        }
        for (what, q, dim) in [
            ("site_area", site_area, Dimension::AREA),
            ("t2_flat", t2_flat, Dimension::TIME),
            ("r_ads", r_ads, Dimension::LENGTH),
        ] {
            q.expect_dim(dim, what)?;
            if !(q.value() > F::zero()) {
                return Err(Error::NonPositive {
                    what,
                    value: q.value().to_f64().unwrap_or(f64::NAN),
                });
            }
        }
        if !(epsilon > F::zero() && epsilon < epsilon_limit) {
            return Err(Error::invalid(
                "epsilon",
                format!(
                    "must lie in (0, {}), got {}",
                    epsilon_limit.to_f64().unwrap_or(f64::NAN),
                    epsilon.to_f64().unwrap_or(f64::NAN)
                ),
            ));
        }
        Ok(Self {
            area_tn,
            alpha,
            site_area,
            t2_flat,
            r_ads,
            epsilon,
        })
    }

    pub fn area_tn(&self) -> F {
        self.area_tn
    }

    pub fn alpha(&self) -> F {
        self.alpha
    }

    pub fn site_area(&self) -> Quantity<F> {
        self.site_area
    }

    pub fn t2_flat(&self) -> Quantity<F> {
        self.t2_flat
    }

    pub fn r_ads(&self) -> Quantity<F> {
        self.r_ads
    }

    pub fn epsilon(&self) -> F {
        self.epsilon
    }

    /// Measurement entropy (1 − α)·A_TN in bits.
    pub fn measurement_entropy(&self) -> F {
        (F::one() - self.alpha) * self.area_tn
    }
}

/// Classicalized spin action −ħ·b·H of a measurement entropy H in bits.
pub fn classicalized_action<F: Scalar>(
    entropy_bits: F,
    constants: &PhysicalConstants<F>,
) -> Result<Quantity<F>> {
    if !(entropy_bits >= F::zero()) {
        return Err(Error::Negative {
            what: "entropy_bits",
            value: entropy_bits.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(-constants.bit_action().scale(entropy_bits))
}

/// Deviation-term membrane tension, with a degeneracy flag for α = 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tension<F> {
    pub value: Quantity<F>,
    /// True when α = 0 and the deviation term vanishes identically.
    pub degenerate: bool,
}

/// 𝒯_α = −ħ·b·α/(𝒜·T₂) < 0, or 0 with the degenerate flag when α = 0.
pub fn tension_alpha<F: Scalar>(
    state: &CHTNState<F>,
    constants: &PhysicalConstants<F>,
) -> Tension<F> {
    let dim = Dimension::ACTION
        .div(Dimension::AREA.mul(Dimension::TIME));
    if state.alpha == F::zero() {
        return Tension {
            value: Quantity::new(F::zero(), dim),
            degenerate: true,
        };
    }
    let value = -(constants.bit_action().scale(state.alpha))
        / (state.site_area * state.t2_flat);
    Tension {
        value,
        degenerate: false,
    }
}

/// 𝒯_{−1} = +ħ·b/(𝒜·T₂) > 0, the flat-phase world-volume tension.
pub fn tension_flat<F: Scalar>(
    state: &CHTNState<F>,
    constants: &PhysicalConstants<F>,
) -> Quantity<F> {
    constants.bit_action() / (state.site_area * state.t2_flat)
}

/// Boundary central charge C = 3·R_AdS/(2·G_N) from the AdS radius and the
/// three-dimensional gravitational constant. Both copies are equal.
pub fn brown_henneaux<F: Scalar>(r_ads: Quantity<F>, g_newton_3d: Quantity<F>) -> Result<F> {
    let r = r_ads.expect_dim(Dimension::LENGTH, "brown_henneaux r_ads")?;
    let g = g_newton_3d.expect_dim(Dimension::NEWTON_3D, "brown_henneaux g_newton_3d")?;
    for (what, v) in [("r_ads", r), ("g_newton_3d", g)] {
        if !(v > F::zero()) {
            return Err(Error::NonPositive {
                what,
                value: v.to_f64().unwrap_or(f64::NAN),
            });
        }
    }
    Ok(cast::<F>(1.5) * r / g)
}

/// The time-contracted boundary theory's two redefined central charges.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CentralCharges<F> {
    pub c_left: F,
    pub c_right: F,
    pub c1: F,
    pub c2: F,
}

/// C₁ = C − C̄ and C₂ = ε·(C + C̄).
pub fn redefine_central_charges<F: Scalar>(
    c_left: F,
    c_right: F,
    epsilon: F,
) -> Result<CentralCharges<F>> {
    if !(epsilon > F::zero()) {
        return Err(Error::NonPositive {
            what: "epsilon",
            value: epsilon.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(CentralCharges {
        c_left,
        c_right,
        c1: c_left - c_right,
        c2: epsilon * (c_left + c_right),
    })
}

/// Plug-in entropy estimate with its bootstrap standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixedStateEntropy<F> {
    pub bits_per_site: F,
    pub std_error: F,
    pub sites: usize,
    pub samples: usize,
}

/// Sample product configurations of bivalent eigenstates with per-site
/// Bernoulli(p) statistics and estimate the Shannon entropy per site.
///
/// Sites are independent, so the per-site empirical frequencies are a
/// sufficient statistic; the standard error comes from binomial resampling
/// of the counts. Deterministic for a fixed (p, sites, samples, seed).
pub fn sample_mixed_state_entropy<F: Scalar>(
    p: F,
    sites: usize,
    samples: usize,
    seed: u64,
) -> Result<MixedStateEntropy<F>> {
    if !(p >= F::zero() && p <= F::one()) {
        return Err(Error::ProbabilityOutOfRange(p.to_f64().unwrap_or(f64::NAN)));
    }
    if sites == 0 || samples == 0 {
        return Err(Error::invalid(
            "sampler",
            "sites and samples must both be at least 1",
        ));
    }
    let p64 = p.to_f64().expect("finite probability");

    let n_batches = samples.div_ceil(SAMPLER_BATCH);
    let counts: Vec<Vec<u64>> = (0..n_batches)
        .into_par_iter()
        .map(|batch| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(batch as u64);
            let lo = batch * SAMPLER_BATCH;
            let hi = (lo + SAMPLER_BATCH).min(samples);
            let mut batch_counts = vec![0u64; sites];
            for _ in lo..hi {
                for count in batch_counts.iter_mut() {
                    if rng.random::<f64>() < p64 {
                        *count += 1;
                    }
                }
            }
            batch_counts
        })
        .collect();

    let mut per_site = vec![0u64; sites];
    for batch_counts in &counts {
        for (total, c) in per_site.iter_mut().zip(batch_counts) {
            *total += c;
        }
    }

    let estimate = plug_in_entropy::<F>(&per_site, samples)?;

    // Parametric bootstrap: resample each site's count from Binomial(n, p̂).
    let mut boot_rng = ChaCha8Rng::seed_from_u64(seed);
    boot_rng.set_stream(u64::MAX);
    let mut boot = Vec::with_capacity(SAMPLER_BOOTSTRAP);
    for _ in 0..SAMPLER_BOOTSTRAP {
        let resampled: Vec<u64> = per_site
            .iter()
            .map(|&k| {
                let phat = k as f64 / samples as f64;
                if phat == 0.0 || phat == 1.0 {
                    k
                } else {
                    Binomial::new(samples as u64, phat)
                        .expect("valid binomial parameters")
                        .sample(&mut boot_rng)
                }
            })
            .collect();
        boot.push(
            plug_in_entropy::<F>(&resampled, samples)?
                .to_f64()
                .expect("finite entropy"),
        );
    }
    let mean = boot.iter().sum::<f64>() / boot.len() as f64;
    let var = boot.iter().map(|b| (b - mean).powi(2)).sum::<f64>() / (boot.len() - 1) as f64;

    Ok(MixedStateEntropy {
        bits_per_site: estimate,
        std_error: cast(var.sqrt()),
        sites,
        samples,
    })
}

fn plug_in_entropy<F: Scalar>(per_site: &[u64], samples: usize) -> Result<F> {
    let mut acc = F::zero();
    for &k in per_site {
        let phat = cast::<F>(k as f64 / samples as f64);
        acc += binary_entropy(phat)?;
    }
    Ok(acc / cast(per_site.len() as f64))
}
