//! Physical constants, unit systems, and dimension-checked scalar quantities.
//!
//! Dimensions are tracked at runtime as integer exponents over (length, mass,
//! time). Mixing incompatible dimensions in additive operations is rejected,
//! and conversion between the natural (ħ = c = 1) and SI systems is restricted
//! to the dimension tags this crate actually produces.

use std::fmt;
use std::ops::{Div, Mul, Neg};

use crate::error::{Error, Result};
use crate::scalar::{cast, Scalar};

/// Speed of light in vacuum, m/s (exact).
pub const SPEED_OF_LIGHT_SI: f64 = 299_792_458.0;
/// Planck constant h, J·s (exact).
pub const PLANCK_CONSTANT_SI: f64 = 6.626_070_15e-34;
/// Reduced Planck constant ħ = h / 2π, J·s.
pub const HBAR_SI: f64 = PLANCK_CONSTANT_SI / (2.0 * std::f64::consts::PI);
/// Planck time, s (CODATA).
pub const PLANCK_TIME_SI: f64 = 5.391_247e-44;

/// Exponents over the (length, mass, time) base.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dimension {
    pub length: i8,
    pub mass: i8,
    pub time: i8,
}

impl Dimension {
    pub const fn new(length: i8, mass: i8, time: i8) -> Self {
        Self { length, mass, time }
    }

    pub const DIMENSIONLESS: Self = Self::new(0, 0, 0);
    pub const LENGTH: Self = Self::new(1, 0, 0);
    pub const MASS: Self = Self::new(0, 1, 0);
    pub const TIME: Self = Self::new(0, 0, 1);
    pub const AREA: Self = Self::new(2, 0, 0);
    pub const SPEED: Self = Self::new(1, 0, -1);
    /// J·s = kg·m²/s.
    pub const ACTION: Self = Self::new(2, 1, -1);
    /// J = kg·m²/s².
    pub const ENERGY: Self = Self::new(2, 1, -2);
    /// Membrane tension J·s/(m²·s) = kg/s².
    pub const TENSION: Self = Self::new(0, 1, -2);
    /// Spacetime curvature / cosmological constant, 1/m².
    pub const CURVATURE: Self = Self::new(-2, 0, 0);
    /// Three-dimensional gravitational constant, m/kg.
    pub const NEWTON_3D: Self = Self::new(1, -1, 0);

    /// Propagator density over a D-dimensional volume, 1/m^d.
    pub const fn inverse_volume(d: u8) -> Self {
        Self::new(-(d as i8), 0, 0)
    }

    pub const fn mul(self, other: Self) -> Self {
        Self::new(
            self.length + other.length,
            self.mass + other.mass,
            self.time + other.time,
        )
    }

    pub const fn div(self, other: Self) -> Self {
        Self::new(
            self.length - other.length,
            self.mass - other.mass,
            self.time - other.time,
        )
    }

    pub const fn powi(self, n: i8) -> Self {
        Self::new(self.length * n, self.mass * n, self.time * n)
    }

    /// Tags covered by the unit-conversion table.
    pub const SUPPORTED: [Dimension; 14] = [
        Self::DIMENSIONLESS,
        Self::LENGTH,
        Self::MASS,
        Self::TIME,
        Self::AREA,
        Self::SPEED,
        Self::ACTION,
        Self::ENERGY,
        Self::TENSION,
        Self::CURVATURE,
        Self::NEWTON_3D,
        Self::inverse_volume(1),
        Self::inverse_volume(2),
        Self::inverse_volume(3),
    ];

    pub fn is_supported(&self) -> bool {
        Self::SUPPORTED.contains(self)
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self == Self::DIMENSIONLESS {
            return write!(f, "1");
        }
        let mut parts = Vec::new();
        for (sym, exp) in [("m", self.length), ("kg", self.mass), ("s", self.time)] {
            match exp {
                0 => {}
                1 => parts.push(sym.to_string()),
                e => parts.push(format!("{sym}^{e}")),
            }
        }
        write!(f, "{}", parts.join(" "))
    }
}

/// A scalar with a runtime dimension tag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quantity<F> {
    value: F,
    dim: Dimension,
}

impl<F: Scalar> Quantity<F> {
    pub fn new(value: F, dim: Dimension) -> Self {
        Self { value, dim }
    }

    pub fn dimensionless(value: F) -> Self {
        Self::new(value, Dimension::DIMENSIONLESS)
    }

    pub fn value(&self) -> F {
        self.value
    }

    pub fn dim(&self) -> Dimension {
        self.dim
    }

    /// Value extraction that enforces the expected tag.
    pub fn expect_dim(&self, dim: Dimension, what: &'static str) -> Result<F> {
        if self.dim != dim {
            return Err(Error::DimensionMismatch {
                op: what,
                left: self.dim,
                right: dim,
            });
        }
        Ok(self.value)
    }

    pub fn try_add(self, other: Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                op: "add",
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(Self::new(self.value + other.value, self.dim))
    }

    pub fn try_sub(self, other: Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                op: "sub",
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(Self::new(self.value - other.value, self.dim))
    }

    /// Multiply by a bare scalar; the dimension is unchanged.
    pub fn scale(self, k: F) -> Self {
        Self::new(self.value * k, self.dim)
    }

    pub fn recip(self) -> Self {
        Self::new(self.value.recip(), self.dim.powi(-1))
    }

    pub fn powi(self, n: i8) -> Self {
        Self::new(
            cast::<F>(self.value.to_f64().unwrap_or(f64::NAN).powi(n as i32)),
            self.dim.powi(n),
        )
    }

    /// Square root; every dimension exponent must be even.
    pub fn try_sqrt(self) -> Result<Self> {
        let d = self.dim;
        if d.length % 2 != 0 || d.mass % 2 != 0 || d.time % 2 != 0 {
            return Err(Error::invalid(
                "sqrt",
                format!("dimension {d} has an odd exponent"),
            ));
        }
        if self.value < F::zero() {
            return Err(Error::Negative {
                what: "sqrt argument",
                value: self.value.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self::new(
            self.value.sqrt(),
            Dimension::new(d.length / 2, d.mass / 2, d.time / 2),
        ))
    }

    pub fn abs(self) -> Self {
        Self::new(self.value.abs(), self.dim)
    }
}

impl<F: Scalar> Mul for Quantity<F> {
    type Output = Quantity<F>;
    fn mul(self, rhs: Self) -> Self {
        Self::new(self.value * rhs.value, self.dim.mul(rhs.dim))
    }
}

impl<F: Scalar> Div for Quantity<F> {
    type Output = Quantity<F>;
    fn div(self, rhs: Self) -> Self {
        Self::new(self.value / rhs.value, self.dim.div(rhs.dim))
    }
}

impl<F: Scalar> Neg for Quantity<F> {
    type Output = Quantity<F>;
    fn neg(self) -> Self {
        Self::new(-self.value, self.dim)
    }
}

impl<F: Scalar> fmt::Display for Quantity<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}]", self.value, self.dim)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnitMode {
    /// ħ = c = 1, anchored to a reference length in metres.
    Natural,
    Si,
}

/// Unit system with the SI anchor values used for conversion factors.
///
/// The anchors are configurable so sensitivity studies can move ħ and c and
/// keep the conversion chain consistent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitSystem<F> {
    pub mode: UnitMode,
    length_scale_m: F,
    hbar_si: F,
    c_si: F,
}

impl<F: Scalar> UnitSystem<F> {
    pub fn si() -> Self {
        Self {
            mode: UnitMode::Si,
            length_scale_m: F::one(),
            hbar_si: cast(HBAR_SI),
            c_si: cast(SPEED_OF_LIGHT_SI),
        }
    }

    /// Natural units with a 1 m length anchor.
    pub fn natural() -> Self {
        Self::natural_scaled(F::one())
    }

    pub fn natural_scaled(length_scale_m: F) -> Self {
        Self {
            mode: UnitMode::Natural,
            length_scale_m,
            hbar_si: cast(HBAR_SI),
            c_si: cast(SPEED_OF_LIGHT_SI),
        }
    }

    pub fn with_anchors(mut self, hbar_si: F, c_si: F) -> Self {
        self.hbar_si = hbar_si;
        self.c_si = c_si;
        self
    }

    /// Factor turning a value of dimension `dim` in this system into SI.
    ///
    /// In natural units the base units are: length ℓ, mass ħ/(cℓ), time ℓ/c.
    /// Evaluated in f64 so that subnormal intermediates (the natural mass
    /// unit is ~3.5e-43 kg) do not wreck f32 conversions.
    fn si_factor(&self, dim: Dimension) -> f64 {
        match self.mode {
            UnitMode::Si => 1.0,
            UnitMode::Natural => {
                let l = self.length_scale_m.to_f64().unwrap_or(f64::NAN);
                let hbar = self.hbar_si.to_f64().unwrap_or(f64::NAN);
                let c = self.c_si.to_f64().unwrap_or(f64::NAN);
                let mass_unit = hbar / (c * l);
                let time_unit = l / c;
                l.powi(dim.length as i32)
                    * mass_unit.powi(dim.mass as i32)
                    * time_unit.powi(dim.time as i32)
            }
        }
    }
}

/// Re-express `q` in `target` units. The dimension tag is preserved.
pub fn convert<F: Scalar>(
    q: Quantity<F>,
    from: &UnitSystem<F>,
    target: &UnitSystem<F>,
) -> Result<Quantity<F>> {
    if !q.dim().is_supported() {
        return Err(Error::UnsupportedDimension(q.dim()));
    }
    let si_value = q.value().to_f64().unwrap_or(f64::NAN) * from.si_factor(q.dim());
    Ok(Quantity::new(
        cast(si_value / target.si_factor(q.dim())),
        q.dim(),
    ))
}

/// The constants every module consumes: ħ, c, b = ln 2, h, G_N (3D), t_P.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants<F> {
    pub hbar: Quantity<F>,
    pub c: Quantity<F>,
    pub bit_factor: F,
    pub planck_constant: Quantity<F>,
    pub newton_3d: Quantity<F>,
    pub planck_time: Quantity<F>,
}

impl<F: Scalar> PhysicalConstants<F> {
    /// CODATA SI values. The 3D gravitational constant has no measured value
    /// and defaults to 1 m/kg; override it for sensitivity studies.
    pub fn si() -> Self {
        let hbar = cast::<F>(HBAR_SI);
        Self {
            hbar: Quantity::new(hbar, Dimension::ACTION),
            c: Quantity::new(cast(SPEED_OF_LIGHT_SI), Dimension::SPEED),
            bit_factor: cast(std::f64::consts::LN_2),
            planck_constant: Quantity::new(
                hbar * (cast::<F>(2.0) * F::PI()),
                Dimension::ACTION,
            ),
            newton_3d: Quantity::new(F::one(), Dimension::NEWTON_3D),
            planck_time: Quantity::new(cast(PLANCK_TIME_SI), Dimension::TIME),
        }
    }

    /// ħ = c = 1 with a 1 m length anchor. The Planck time converts to
    /// t_P·c/ℓ natural time units; G_N (3D) is set to 1.
    pub fn natural() -> Self {
        Self::si()
            .to_system(&UnitSystem::si(), &UnitSystem::natural())
            .expect("constant dimensions are all in the conversion table")
    }

    /// Convert every dimensioned constant; G_N (3D) is reset to 1 in natural
    /// mode since it carries no SI reference value.
    pub fn to_system(&self, from: &UnitSystem<F>, target: &UnitSystem<F>) -> Result<Self> {
        let newton_3d = match target.mode {
            UnitMode::Natural => Quantity::new(F::one(), Dimension::NEWTON_3D),
            UnitMode::Si => self.newton_3d,
        };
        Ok(Self {
            hbar: convert(self.hbar, from, target)?,
            c: convert(self.c, from, target)?,
            bit_factor: self.bit_factor,
            planck_constant: convert(self.planck_constant, from, target)?,
            newton_3d,
            planck_time: convert(self.planck_time, from, target)?,
        })
    }

    pub fn with_hbar(mut self, hbar: F) -> Self {
        self.hbar = Quantity::new(hbar, Dimension::ACTION);
        self.planck_constant =
            Quantity::new(hbar * (cast::<F>(2.0) * F::PI()), Dimension::ACTION);
        self
    }

    pub fn with_c(mut self, c: F) -> Self {
        self.c = Quantity::new(c, Dimension::SPEED);
        self
    }

    pub fn with_newton_3d(mut self, g: F) -> Self {
        self.newton_3d = Quantity::new(g, Dimension::NEWTON_3D);
        self
    }

    pub fn with_planck_time(mut self, t: F) -> Self {
        self.planck_time = Quantity::new(t, Dimension::TIME);
        self
    }

    /// ħ·ln 2, the action of one readable bit.
    pub fn bit_action(&self) -> Quantity<F> {
        self.hbar.scale(self.bit_factor)
    }

    /// Check the defining invariants: b = ln 2, h = 2πħ, all positive.
    pub fn validate(&self) -> Result<()> {
        let ln2 = cast::<F>(std::f64::consts::LN_2);
        if (self.bit_factor - ln2).abs() > cast(1e-15) {
            return Err(Error::invalid("constants", "bit factor must equal ln 2"));
        }
        let two_pi_hbar = self.hbar.value() * (cast::<F>(2.0) * F::PI());
        let h = self.planck_constant.value();
        if (h - two_pi_hbar).abs() > cast::<F>(1e-12) * h.abs() {
            return Err(Error::invalid("constants", "h must equal 2π·ħ"));
        }
        for (name, v) in [
            ("hbar", self.hbar.value()),
            ("c", self.c.value()),
            ("planck_constant", self.planck_constant.value()),
            ("newton_3d", self.newton_3d.value()),
            ("planck_time", self.planck_time.value()),
        ] {
            if !(v > F::zero()) {
                return Err(Error::NonPositive {
                    what: name,
                    value: v.to_f64().unwrap_or(f64::NAN),
                });
            }
        }
        Ok(())
    }
}
