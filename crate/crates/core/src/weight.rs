//! Statistical weight W, site probability p, and the violation parameter α.
//!
//! The defining relation is W^n = C(n, pn) in the large-n limit, which pins
//! W = 2^(1−α) and H₂(p) = 1 − α bits. `binomial_log2` provides the exact
//! big-integer route for moderate n and a log-gamma route above it, and
//! `verify_weight_asymptotics` measures how fast the finite-n binomial count
//! approaches the weight.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::scalar::{cast, ln_gamma, round_ties_even, Scalar};

/// Largest n handled by the exact big-integer binomial path.
pub const EXACT_BINOMIAL_LIMIT: u64 = 10_000;

/// Iteration cap for the entropy inversion.
const BISECTION_MAX_ITERATIONS: usize = 200;

fn check_alpha<F: Scalar>(alpha: F) -> Result<()> {
    if !(alpha >= F::zero() && alpha <= F::one()) {
        return Err(Error::AlphaOutOfRange(alpha.to_f64().unwrap_or(f64::NAN)));
    }
    Ok(())
}

/// Binary (Shannon) entropy of a Bernoulli(p) bit, in bits.
pub fn binary_entropy<F: Scalar>(p: F) -> Result<F> {
    if !(p >= F::zero() && p <= F::one()) {
        return Err(Error::ProbabilityOutOfRange(p.to_f64().unwrap_or(f64::NAN)));
    }
    if p == F::zero() || p == F::one() {
        return Ok(F::zero());
    }
    let q = F::one() - p;
    Ok(-(p * p.log2() + q * q.log2()))
}

/// W = 2^(1−α) for α ∈ [0, 1]; W ∈ [1, 2].
pub fn weight_from_alpha<F: Scalar>(alpha: F) -> Result<F> {
    check_alpha(alpha)?;
    Ok(cast::<F>(2.0).powf(F::one() - alpha))
}

/// Invert H₂(p) = 1 − α on the branch p ∈ [0, 1/2] by bisection.
///
/// Converges when |H₂(p) − (1 − α)| < tol; the entropy is strictly increasing
/// on the bracket so the root is unique.
pub fn p_from_alpha<F: Scalar>(alpha: F, tol: F) -> Result<F> {
    check_alpha(alpha)?;
    if !(tol > F::zero()) {
        return Err(Error::NonPositive {
            what: "tolerance",
            value: tol.to_f64().unwrap_or(f64::NAN),
        });
    }
    let target = F::one() - alpha;
    if target == F::zero() {
        return Ok(F::zero());
    }
    if target == F::one() {
        return Ok(cast(0.5));
    }

    let mut lo = F::zero();
    let mut hi = cast::<F>(0.5);
    let mut mid = (lo + hi) * cast(0.5);
    for _ in 0..BISECTION_MAX_ITERATIONS {
        let residual = binary_entropy(mid)? - target;
        if residual.abs() < tol {
            return Ok(mid);
        }
        if residual < F::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
        mid = (lo + hi) * cast(0.5);
    }
    let residual = binary_entropy(mid)? - target;
    Err(Error::RootNonConvergence {
        iterations: BISECTION_MAX_ITERATIONS,
        lo: lo.to_f64().unwrap_or(f64::NAN),
        hi: hi.to_f64().unwrap_or(f64::NAN),
        residual: residual.to_f64().unwrap_or(f64::NAN),
    })
}

fn exact_binomial(n: u64, k: u64) -> BigUint {
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 1..=k {
        acc *= BigUint::from(n - k + i);
        acc /= BigUint::from(i);
    }
    acc
}

/// log₂ of a positive big integer, exact to a few ulps.
fn log2_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 53 {
        return (x.to_u64().expect("fits in u64") as f64).log2();
    }
    let shift = bits - 53;
    let top = (x >> shift).to_u64().expect("53 bits fit in u64") as f64;
    shift as f64 + top.log2()
}

/// Exact log₂ C(n, k) from arbitrary-precision integers.
pub fn binomial_log2_exact<F: Scalar>(n: u64, k: u64) -> Result<F> {
    if k > n {
        return Err(Error::invalid(
            "binomial",
            format!("k = {k} exceeds n = {n}"),
        ));
    }
    Ok(cast(log2_biguint(&exact_binomial(n, k))))
}

/// log₂ C(n, k) via the log-gamma function.
pub fn binomial_log2_lgamma<F: Scalar>(n: u64, k: u64) -> Result<F> {
    if k > n {
        return Err(Error::invalid(
            "binomial",
            format!("k = {k} exceeds n = {n}"),
        ));
    }
    let ln = ln_gamma::<F>(cast(n as f64 + 1.0))
        - ln_gamma::<F>(cast(k as f64 + 1.0))
        - ln_gamma::<F>(cast((n - k) as f64 + 1.0));
    Ok(ln / F::LN_2())
}

/// log₂ C(n, k): exact big-integer arithmetic up to n = 10⁴, log-gamma above.
pub fn binomial_log2<F: Scalar>(n: u64, k: u64) -> Result<F> {
    if n <= EXACT_BINOMIAL_LIMIT {
        binomial_log2_exact(n, k)
    } else {
        binomial_log2_lgamma(n, k)
    }
}

/// The (α, W, p) triple with its consistency relations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightModel<F> {
    alpha: F,
    weight: F,
    site_probability: F,
}

impl<F: Scalar> WeightModel<F> {
    /// Build the model from α, inverting the binary entropy to `tol`.
    pub fn from_alpha(alpha: F, tol: F) -> Result<Self> {
        Ok(Self {
            alpha,
            weight: weight_from_alpha(alpha)?,
            site_probability: p_from_alpha(alpha, tol)?,
        })
    }

    pub fn alpha(&self) -> F {
        self.alpha
    }

    pub fn weight(&self) -> F {
        self.weight
    }

    pub fn site_probability(&self) -> F {
        self.site_probability
    }

    pub fn log2_weight(&self) -> F {
        F::one() - self.alpha
    }
}

/// Residual |log₂C(n, round(pn))/n − log₂W| of the defining relation.
///
/// Shrinks with an O(log n / n) envelope; the rounding of p·n is the only
/// non-monotone ingredient.
pub fn verify_weight_asymptotics<F: Scalar>(model: &WeightModel<F>, n: u64) -> Result<F> {
    if n < 2 {
        return Err(Error::invalid("asymptotics", format!("n = {n} below 2")));
    }
    let k_real = round_ties_even(model.site_probability() * cast(n as f64));
    let k = k_real.to_f64().unwrap_or(0.0).max(0.0) as u64;
    let k = k.min(n);
    let per_copy = binomial_log2::<F>(n, k)? / cast(n as f64);
    Ok((per_copy - model.log2_weight()).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    const TOL: f64 = 1e-12;

    #[test]
    #[allow(clippy::approx_constant)] // frozen example values
    fn weight_endpoints() {
        assert_eq!(weight_from_alpha(0.0f64).unwrap(), 2.0);
        assert_eq!(weight_from_alpha(1.0f64).unwrap(), 1.0);
        assert_relative_eq!(
            weight_from_alpha(0.5f64).unwrap(),
            1.41421356,
            max_relative = 1e-8
        );
    }

    #[test]
    fn weight_rejects_alpha_outside_unit_interval() {
        assert!(matches!(
            weight_from_alpha(1.5f64),
            Err(Error::AlphaOutOfRange(_))
        ));
        assert!(matches!(
            weight_from_alpha(-0.1f64),
            Err(Error::AlphaOutOfRange(_))
        ));
        assert!(weight_from_alpha(f64::NAN).is_err());
    }

    #[test]
    fn p_endpoints_are_exact() {
        assert_eq!(p_from_alpha(0.0f64, TOL).unwrap(), 0.5);
        assert_eq!(p_from_alpha(1.0f64, TOL).unwrap(), 0.0);
    }

    #[test]
    fn p_half_entropy_matches_fine_grid_scan() {
        // Independent oracle: scan H₂ over a fine grid for the H₂(p) = 1/2 root.
        let target = 0.5f64;
        let mut best = (f64::MAX, 0.0);
        let mut p = 1e-6;
        while p < 0.5 {
            let r = (binary_entropy(p).unwrap() - target).abs();
            if r < best.0 {
                best = (r, p);
            }
            p += 1e-6;
        }
        let inverted = p_from_alpha(0.5f64, TOL).unwrap();
        assert!((inverted - best.1).abs() < 2e-6);
        assert_relative_eq!(inverted, 0.110028, max_relative = 1e-5);
    }

    #[test]
    fn p_inversion_reports_bracket_on_unreachable_tolerance() {
        // At alpha = 0.1 the f64 residual floors at ~1e-16 (verified by
        // probing), so a 1e-30 tolerance must stall and report the bracket.
        let err = p_from_alpha(0.1f64, 1e-30).unwrap_err();
        match err {
            Error::RootNonConvergence { lo, hi, residual, .. } => {
                assert!(lo <= hi && hi <= 0.5);
                assert!(residual.abs() > 0.0);
            }
            other => panic!("expected RootNonConvergence, got {other}"),
        }
    }

    #[test]
    fn p_is_monotone_non_increasing_on_alpha_grid() {
        let mut last = f64::MAX;
        for i in 0..=100 {
            let alpha = i as f64 / 100.0;
            let p = p_from_alpha(alpha, TOL).unwrap();
            assert!(p <= last + 1e-12, "alpha = {alpha}: p = {p} > {last}");
            last = p;
        }
    }

    #[test]
    fn binomial_small_cases() {
        assert_relative_eq!(
            binomial_log2::<f64>(4, 2).unwrap(),
            6.0f64.log2(),
            max_relative = 1e-14
        );
        assert_relative_eq!(
            binomial_log2::<f64>(4, 2).unwrap(),
            2.584963,
            max_relative = 1e-6
        );
        assert_eq!(binomial_log2::<f64>(10, 0).unwrap(), 0.0);
        assert_eq!(binomial_log2::<f64>(10, 10).unwrap(), 0.0);
    }

    #[test]
    fn binomial_rejects_k_above_n() {
        assert!(binomial_log2::<f64>(5, 6).is_err());
    }

    #[test]
    fn binomial_central_value_against_streaming_oracle() {
        // Independent oracle: accumulate log2 of the multiplicative formula in f64.
        let (n, k) = (1000u64, 500u64);
        let mut oracle = 0.0f64;
        for i in 1..=k {
            oracle += ((n - k + i) as f64).log2() - (i as f64).log2();
        }
        let exact = binomial_log2_exact::<f64>(n, k).unwrap();
        assert_relative_eq!(exact, oracle, max_relative = 1e-10);
        // Frozen from the big-integer oracle.
        assert_relative_eq!(exact, 994.690999119, max_relative = 1e-10);
    }

    #[test]
    fn binomial_paths_agree_near_the_crossover() {
        for (n, k) in [
            (10_000u64, 5_000u64),
            (10_000, 1_234),
            (9_999, 4_000),
            (8_192, 777),
        ] {
            let exact = binomial_log2_exact::<f64>(n, k).unwrap();
            let lg = binomial_log2_lgamma::<f64>(n, k).unwrap();
            assert!(
                (exact - lg).abs() < 1e-9,
                "paths disagree at ({n}, {k}): {exact} vs {lg}"
            );
        }
    }

    #[test]
    fn asymptotics_trivial_values() {
        let m0 = WeightModel::from_alpha(0.0f64, TOL).unwrap();
        // C(2,1) = 2: |log2(2)/2 - 1| = 0.5
        assert_relative_eq!(
            verify_weight_asymptotics(&m0, 2).unwrap(),
            0.5,
            max_relative = 1e-14
        );
        let m1 = WeightModel::from_alpha(1.0f64, TOL).unwrap();
        for n in [2u64, 17, 4096] {
            assert_eq!(verify_weight_asymptotics(&m1, n).unwrap(), 0.0);
        }
    }

    #[test]
    fn asymptotics_rejects_tiny_n() {
        let m = WeightModel::from_alpha(0.5f64, TOL).unwrap();
        assert!(verify_weight_asymptotics(&m, 1).is_err());
    }

    #[test]
    fn model_invariants() {
        for i in 0..=10 {
            let alpha = i as f64 / 10.0;
            let m = WeightModel::from_alpha(alpha, TOL).unwrap();
            assert_relative_eq!(m.weight(), 2.0f64.powf(1.0 - alpha), max_relative = 1e-12);
            assert!((binary_entropy(m.site_probability()).unwrap() - (1.0 - alpha)).abs() < TOL);
        }
        let m0 = WeightModel::from_alpha(0.0f64, TOL).unwrap();
        assert_eq!(m0.weight(), 2.0);
        assert_eq!(m0.site_probability(), 0.5);
    }

    proptest! {
        #[test]
        fn entropy_of_inverted_p_reproduces_weight(alpha in 0.0f64..=1.0) {
            let m = WeightModel::from_alpha(alpha, TOL).unwrap();
            let w = 2.0f64.powf(binary_entropy(m.site_probability()).unwrap());
            prop_assert!((w - m.weight()).abs() <= 10.0 * TOL * m.weight().max(1.0));
        }

        #[test]
        fn binary_entropy_is_symmetric(p in 0.0f64..=1.0) {
            let a = binary_entropy(p).unwrap();
            let b = binary_entropy(1.0 - p).unwrap();
            prop_assert!((a - b).abs() < 1e-12);
        }
    }
}
