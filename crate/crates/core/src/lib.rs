//! Numerics for classicalized holographic tensor networks: the statistical
//! weight model for inexact bulk quantum mechanics, imaginary-time paths of
//! free particles with their modified probabilities and contraction,
//! center-of-mass aggregation, and the de Sitter cosmological-constant
//! pipeline with its observed-value inversion.
//!
//! Everything is generic over the floating-point scalar via [`scalar::Scalar`]
//! (f32 or f64); the `*64`/`*32` aliases below fix the common choices. Default
//! constants are natural units (ħ = c = 1); SI values exist for the
//! cosmological numbers.

#![forbid(unsafe_code)]
// Negated comparisons (`!(x > 0)`) are load-bearing: they reject NaN inputs
// that a plain `x <= 0` would let through.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod chtn;
pub mod cosmology;
pub mod error;
pub mod many_body;
pub mod paths;
pub mod scalar;
pub mod units;
pub mod weight;

pub use error::{Error, Result};
pub use scalar::Scalar;

// Concrete f64 working set.
pub type Quantity64 = units::Quantity<f64>;
pub type UnitSystem64 = units::UnitSystem<f64>;
pub type PhysicalConstants64 = units::PhysicalConstants<f64>;
pub type WeightModel64 = weight::WeightModel<f64>;
pub type ChtnState64 = chtn::CHTNState<f64>;
pub type Trajectory64 = paths::LatticeTrajectory<f64>;
pub type EventVector64 = paths::EventVector<f64>;
pub type ParticleSystem64 = many_body::ParticleSystem<f64>;
pub type CosmologyParams64 = cosmology::CosmologyParams<f64>;

// f32 twins for the embedded/throughput-minded.
pub type Quantity32 = units::Quantity<f32>;
pub type UnitSystem32 = units::UnitSystem<f32>;
pub type PhysicalConstants32 = units::PhysicalConstants<f32>;
pub type WeightModel32 = weight::WeightModel<f32>;
pub type ChtnState32 = chtn::CHTNState<f32>;
pub type Trajectory32 = paths::LatticeTrajectory<f32>;
pub type EventVector32 = paths::EventVector<f32>;
pub type ParticleSystem32 = many_body::ParticleSystem<f32>;
pub type CosmologyParams32 = cosmology::CosmologyParams<f32>;
