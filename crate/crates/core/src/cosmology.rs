//! Metric slicing checks, horizon-radius quadrature, the Wick rotation from
//! the flat phase to the de Sitter phase, scale-factor evolution, and the
//! cosmological-constant pipeline with its observed-value inversion.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::scalar::{cast, Scalar};
use crate::units::{Dimension, PhysicalConstants, Quantity};

/// Which side of the Wick rotation a parameter set lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    /// Euclidean-contracting flat phase (a limit of the AdS phase).
    Flat,
    /// Lorentzian, exponentially expanding de Sitter phase.
    DeSitter,
}

/// Contraction parameter, radii, purity duration, and cosmological constant.
///
/// `wick_rotate` carries the recorded deviation tension across the rotation
/// unchanged; it is kept here so the invariance is checkable on the rotated
/// parameter set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CosmologyParams<F> {
    epsilon: F,
    r_ads: Quantity<F>,
    t2_flat: Quantity<F>,
    r_h: Quantity<F>,
    lambda: Quantity<F>,
    phase: Phase,
    tension_alpha: Option<Quantity<F>>,
}

impl<F: Scalar> CosmologyParams<F> {
    /// Flat-phase parameters; the horizon radius follows the contraction
    /// R_h = ε·R_AdS and the cosmological constant starts at zero.
    pub fn flat(epsilon: F, r_ads: Quantity<F>, t2_flat: Quantity<F>) -> Result<Self> {
        if !(epsilon > F::zero()) {
            return Err(Error::NonPositive {
                what: "epsilon",
                value: epsilon.to_f64().unwrap_or(f64::NAN),
            });
        }
        let r = r_ads.expect_dim(Dimension::LENGTH, "cosmology r_ads")?;
        let t2 = t2_flat.expect_dim(Dimension::TIME, "cosmology t2_flat")?;
        for (what, v) in [("r_ads", r), ("t2_flat", t2)] {
            if !(v > F::zero()) {
                return Err(Error::NonPositive {
                    what,
                    value: v.to_f64().unwrap_or(f64::NAN),
                });
            }
        }
        Ok(Self {
            epsilon,
            r_ads,
            t2_flat,
            r_h: r_ads.scale(epsilon),
            lambda: Quantity::new(F::zero(), Dimension::CURVATURE),
            phase: Phase::Flat,
            tension_alpha: None,
        })
    }

    pub fn with_tension(mut self, tension: Quantity<F>) -> Self {
        self.tension_alpha = Some(tension);
        self
    }

    pub fn epsilon(&self) -> F {
        self.epsilon
    }

    pub fn r_ads(&self) -> Quantity<F> {
        self.r_ads
    }

    pub fn t2_flat(&self) -> Quantity<F> {
        self.t2_flat
    }

    pub fn r_h(&self) -> Quantity<F> {
        self.r_h
    }

    pub fn lambda(&self) -> Quantity<F> {
        self.lambda
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn tension_alpha(&self) -> Option<Quantity<F>> {
        self.tension_alpha
    }

    /// Horizon radius implied by Λ = 1/R_h² in the de Sitter phase.
    pub fn horizon_from_lambda(&self) -> Result<Quantity<F>> {
        if self.phase != Phase::DeSitter {
            return Err(Error::invalid(
                "horizon_from_lambda",
                "defined in the de Sitter phase only",
            ));
        }
        self.lambda.recip().try_sqrt()
    }
}

/// Rotate flat-phase parameters to the de Sitter phase: |Λ| = ε²/(c·T₂)²,
/// the magnitude of T₂ is preserved, and the recorded deviation tension is
/// carried over unchanged.
pub fn wick_rotate<F: Scalar>(
    params: &CosmologyParams<F>,
    constants: &PhysicalConstants<F>,
) -> Result<CosmologyParams<F>> {
    if params.phase != Phase::Flat {
        return Err(Error::invalid(
            "wick_rotate",
            "rotation is defined flat -> de Sitter; input already rotated",
        ));
    }
    let ct2 = constants.c * params.t2_flat;
    let lambda = ct2.powi(-2).scale(params.epsilon * params.epsilon);
    Ok(CosmologyParams {
        epsilon: params.epsilon,
        r_ads: params.r_ads,
        t2_flat: params.t2_flat.abs(),
        r_h: params.r_h,
        lambda,
        phase: Phase::DeSitter,
        tension_alpha: params.tension_alpha,
    })
}

/// One tangent displacement at a point of the flat slice: the slice
/// coordinate y and the (dt, dx, dy) components.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlicingSample<F> {
    pub y: F,
    pub dt: F,
    pub dx: F,
    pub dy: F,
}

/// Seeded sample grid for the slicing check, components in [−2, 2].
pub fn slicing_grid<F: Scalar>(n: usize, seed: u64) -> Vec<SlicingSample<F>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = move || cast::<F>(rng.random::<f64>() * 4.0 - 2.0);
    (0..n)
        .map(|_| SlicingSample {
            y: draw(),
            dt: draw(),
            dx: draw(),
            dy: draw(),
        })
        .collect()
}

/// The two line-element forms evaluated on one displacement: the warped form
/// dy² + e^(−2y/R)(−c²dt² + dx²) and the flat form −c²dT² + dX² + dY² after
/// rescaling the slice coordinates by the local conformal factor e^(−y/R).
pub fn slicing_forms<F: Scalar>(
    r_ads: Quantity<F>,
    sample: &SlicingSample<F>,
    constants: &PhysicalConstants<F>,
) -> Result<(F, F)> {
    let r = r_ads.expect_dim(Dimension::LENGTH, "flat_slicing_check")?;
    if !(r > F::zero()) {
        return Err(Error::NonPositive {
            what: "r_ads",
            value: r.to_f64().unwrap_or(f64::NAN),
        });
    }
    let c = constants.c.value();
    let conf = (-sample.y / r).exp();
    let c2dt2 = c * c * sample.dt * sample.dt;
    let warped = sample.dy * sample.dy + conf * conf * (-c2dt2 + sample.dx * sample.dx);
    let dt_s = conf * sample.dt;
    let dx_s = conf * sample.dx;
    let flat = -(c * c * dt_s * dt_s) + dx_s * dx_s + sample.dy * sample.dy;
    Ok((warped, flat))
}

/// Maximum relative residual between the two line-element forms over a grid
/// of tangent displacements; the identity is exact, so the residual is
/// floating-point roundoff.
pub fn flat_slicing_check<F: Scalar>(
    r_ads: Quantity<F>,
    grid: &[SlicingSample<F>],
    constants: &PhysicalConstants<F>,
) -> Result<F> {
    let c = constants.c.value();
    let r = r_ads.expect_dim(Dimension::LENGTH, "flat_slicing_check")?;
    let mut max_residual = F::zero();
    for sample in grid {
        for v in [sample.y, sample.dt, sample.dx, sample.dy] {
            if !v.is_finite() {
                return Err(Error::invalid("flat_slicing_check", "non-finite sample"));
            }
        }
        let (warped, flat) = slicing_forms(r_ads, sample, constants)?;
        let conf = (-sample.y / r).exp();
        // magnitude scale of the expression, immune to light-cone cancellation
        let scale = sample.dy * sample.dy
            + conf * conf * (c * c * sample.dt * sample.dt + sample.dx * sample.dx);
        let residual = (warped - flat).abs() / scale.max(cast(1e-300));
        if residual > max_residual {
            max_residual = residual;
        }
    }
    Ok(max_residual)
}

/// Adaptive Simpson quadrature with a depth cap.
fn adaptive_simpson<F: Scalar>(
    f: &impl Fn(F) -> F,
    a: F,
    b: F,
    tol: F,
    max_depth: usize,
) -> Result<F> {
    fn simpson<F: Scalar>(f: &impl Fn(F) -> F, a: F, b: F) -> F {
        let mid = (a + b) * cast(0.5);
        (b - a) / cast(6.0) * (f(a) + cast::<F>(4.0) * f(mid) + f(b))
    }
    fn recurse<F: Scalar>(
        f: &impl Fn(F) -> F,
        a: F,
        b: F,
        whole: F,
        tol: F,
        depth: usize,
    ) -> Result<F> {
        let mid = (a + b) * cast(0.5);
        let left = simpson(f, a, mid);
        let right = simpson(f, mid, b);
        let delta = left + right - whole;
        if delta.abs() <= cast::<F>(15.0) * tol {
            return Ok(left + right + delta / cast(15.0));
        }
        if depth == 0 {
            return Err(Error::QuadratureNonConvergence(format!(
                "depth cap on [{}, {}], interval estimate error {}",
                a.to_f64().unwrap_or(f64::NAN),
                b.to_f64().unwrap_or(f64::NAN),
                delta.to_f64().unwrap_or(f64::NAN),
            )));
        }
        let half_tol = tol * cast(0.5);
        Ok(recurse(f, a, mid, left, half_tol, depth - 1)?
            + recurse(f, mid, b, right, half_tol, depth - 1)?)
    }
    recurse(f, a, b, simpson(f, a, b), tol, max_depth)
}

/// Comoving light-travel distance a(t)·∫_t^∞ c dt'/a(t') in the de Sitter
/// slicing a(t) = e^(ct/R_h), by adaptive quadrature with an analytic tail.
/// Equals R_h independently of t.
pub fn horizon_radius_quadrature<F: Scalar>(
    r_h: Quantity<F>,
    t: Quantity<F>,
    tol: F,
    constants: &PhysicalConstants<F>,
) -> Result<Quantity<F>> {
    let r = r_h.expect_dim(Dimension::LENGTH, "horizon_radius_quadrature")?;
    let t0 = t.expect_dim(Dimension::TIME, "horizon_radius_quadrature")?;
    if !(r > F::zero()) {
        return Err(Error::NonPositive {
            what: "r_h",
            value: r.to_f64().unwrap_or(f64::NAN),
        });
    }
    if !(tol > F::zero()) {
        return Err(Error::NonPositive {
            what: "tolerance",
            value: tol.to_f64().unwrap_or(f64::NAN),
        });
    }
    // In u = c·t'/R_h the integral is R_h·a(u0)·∫_{u0}^∞ e^(−u) du with an
    // analytic tail beyond u0 + 40. The scale factor is folded into the
    // integrand as the redshift ratio e^(u0 − u), which never overflows;
    // node placement still depends on t, so t-independence is a real check.
    let u0 = constants.c.value() * t0 / r;
    let cut = u0 + cast(40.0);
    let integrand = |u: F| (u0 - u).exp();
    let numeric = adaptive_simpson(&integrand, u0, cut, tol * cast(0.1), 48)?;
    let tail = cast::<F>(-40.0).exp();
    Ok(Quantity::new(r * (numeric + tail), Dimension::LENGTH))
}

/// Euclidean-phase scale factor 2^(−N_τ·α) with a = 1.
pub fn scale_factor_euclidean<F: Scalar>(n_tau: F, alpha: F) -> Result<F> {
    if !(n_tau >= F::zero()) {
        return Err(Error::Negative {
            what: "n_tau",
            value: n_tau.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(cast::<F>(2.0).powf(-n_tau * alpha))
}

/// De Sitter-phase scale factor 2^(+N_t·α) with a = 1.
pub fn scale_factor_ds<F: Scalar>(n_t: F, alpha: F) -> Result<F> {
    if !(n_t >= F::zero()) {
        return Err(Error::Negative {
            what: "n_t",
            value: n_t.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(cast::<F>(2.0).powf(n_t * alpha))
}

/// Scale factors sampled on an event-count grid, tagged with their phase.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaleFactorSeries<F> {
    samples: Vec<(F, F)>,
    phase: Phase,
}

impl<F: Scalar> ScaleFactorSeries<F> {
    /// Validates the phase's monotonicity: non-increasing in the Euclidean
    /// phase, non-decreasing in the de Sitter phase.
    pub fn new(samples: Vec<(F, F)>, phase: Phase) -> Result<Self> {
        for w in samples.windows(2) {
            if !(w[1].0 > w[0].0) {
                return Err(Error::invalid(
                    "scale_factor_series",
                    "event counts must be strictly increasing",
                ));
            }
            let ok = match phase {
                Phase::Flat => w[1].1 <= w[0].1,
                Phase::DeSitter => w[1].1 >= w[0].1,
            };
            if !ok {
                return Err(Error::invalid(
                    "scale_factor_series",
                    "scale factors violate the phase's monotonicity",
                ));
            }
        }
        Ok(Self { samples, phase })
    }

    pub fn euclidean(alpha: F, n_grid: &[F]) -> Result<Self> {
        let samples = n_grid
            .iter()
            .map(|&n| Ok((n, scale_factor_euclidean(n, alpha)?)))
            .collect::<Result<_>>()?;
        Self::new(samples, Phase::Flat)
    }

    pub fn de_sitter(alpha: F, n_grid: &[F]) -> Result<Self> {
        let samples = n_grid
            .iter()
            .map(|&n| Ok((n, scale_factor_ds(n, alpha)?)))
            .collect::<Result<_>>()?;
        Self::new(samples, Phase::DeSitter)
    }

    pub fn samples(&self) -> &[(F, F)] {
        &self.samples
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }
}

/// Kinetic energy, minimal orthogonalization time, and their inputs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MLEstimate<F> {
    pub energy: Quantity<F>,
    pub t_ml: Quantity<F>,
    pub velocity: Quantity<F>,
    pub mass_universe: Quantity<F>,
}

impl<F: Scalar> MLEstimate<F> {
    /// The velocity-independent prefactor t_ML·(v/c)² of the scaling form.
    pub fn scaling_coefficient(&self, constants: &PhysicalConstants<F>) -> Quantity<F> {
        let ratio = self.velocity.value() / constants.c.value();
        self.t_ml.scale(ratio * ratio)
    }
}

/// Margolus–Levitin time h/(4E): the minimum time to reach an orthogonal
/// state at mean energy E.
pub fn margolus_levitin<F: Scalar>(
    energy: Quantity<F>,
    constants: &PhysicalConstants<F>,
) -> Result<Quantity<F>> {
    let e = energy.expect_dim(Dimension::ENERGY, "margolus_levitin")?;
    if !(e > F::zero()) {
        return Err(Error::NonPositive {
            what: "energy",
            value: e.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(constants.planck_constant / energy.scale(cast(4.0)))
}

/// Kinetic energy E = ½Mv² of the center of mass and its Margolus–Levitin
/// time t_ML = h/(4E) = h/(2Mv²).
pub fn lloyd_estimate<F: Scalar>(
    velocity: Quantity<F>,
    mass_universe: Quantity<F>,
    constants: &PhysicalConstants<F>,
) -> Result<MLEstimate<F>> {
    let v = velocity.expect_dim(Dimension::SPEED, "lloyd_estimate")?;
    let m = mass_universe.expect_dim(Dimension::MASS, "lloyd_estimate")?;
    if !(v > F::zero()) {
        return Err(Error::NonPositive {
            what: "velocity",
            value: v.to_f64().unwrap_or(f64::NAN),
        });
    }
    if v > constants.c.value() {
        return Err(Error::invalid(
            "lloyd_estimate",
            format!(
                "superluminal velocity {} > c = {}",
                v.to_f64().unwrap_or(f64::NAN),
                constants.c.value().to_f64().unwrap_or(f64::NAN)
            ),
        ));
    }
    if !(m > F::zero()) {
        return Err(Error::NonPositive {
            what: "mass_universe",
            value: m.to_f64().unwrap_or(f64::NAN),
        });
    }
    let energy = (mass_universe * velocity * velocity).scale(cast(0.5));
    let t_ml = margolus_levitin(energy, constants)?;
    Ok(MLEstimate {
        energy,
        t_ml,
        velocity,
        mass_universe,
    })
}

/// The Λ estimate in both reported normalizations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaEstimate<F> {
    /// Bare order-of-magnitude form α²/(c·t_ML)².
    pub order_form: Quantity<F>,
    /// (π²/4)·α²/(c·t_ML)², from the chain a = 2^(αN_t), N_t = E·t/(ħ·ln2),
    /// H = αE/ħ, E = h/(4t_ML), Λ = H²/c².
    pub coefficient_form: Quantity<F>,
}

/// Coefficient fixed by the expansion-rate chain (see `LambdaEstimate`).
pub fn lambda_coefficient<F: Scalar>() -> F {
    F::PI() * F::PI() / cast(4.0)
}

/// Positive cosmological constant of the de Sitter phase at violation α.
pub fn lambda_ds_estimate<F: Scalar>(
    alpha: F,
    t_ml: Quantity<F>,
    constants: &PhysicalConstants<F>,
) -> Result<LambdaEstimate<F>> {
    if !(alpha >= F::zero()) {
        return Err(Error::Negative {
            what: "alpha",
            value: alpha.to_f64().unwrap_or(f64::NAN),
        });
    }
    let t = t_ml.expect_dim(Dimension::TIME, "lambda_ds_estimate")?;
    if !(t > F::zero()) {
        return Err(Error::NonPositive {
            what: "t_ml",
            value: t.to_f64().unwrap_or(f64::NAN),
        });
    }
    let order_form = (constants.c * t_ml).powi(-2).scale(alpha * alpha);
    Ok(LambdaEstimate {
        order_form,
        coefficient_form: order_form.scale(lambda_coefficient::<F>()),
    })
}

/// Invert the coefficient form: α = (2/π)·c·t_ML·√Λ_obs.
pub fn infer_alpha<F: Scalar>(
    lambda_obs: Quantity<F>,
    t_ml: Quantity<F>,
    constants: &PhysicalConstants<F>,
) -> Result<F> {
    let lam = lambda_obs.expect_dim(Dimension::CURVATURE, "infer_alpha")?;
    let t = t_ml.expect_dim(Dimension::TIME, "infer_alpha")?;
    for (what, v) in [("lambda_obs", lam), ("t_ml", t)] {
        if !(v > F::zero()) {
            return Err(Error::NonPositive {
                what,
                value: v.to_f64().unwrap_or(f64::NAN),
            });
        }
    }
    let alpha = (constants.c * t_ml * lambda_obs.try_sqrt()?)
        .scale(cast::<F>(2.0) / F::PI());
    alpha.expect_dim(Dimension::DIMENSIONLESS, "infer_alpha result")
}
