//! External potentials, control protocols and the nonlinearity.

use serde::Serialize;

use crate::error::{Error, Result};

/// A real potential `U(x, t)`.
pub trait Potential: Sync {
    fn value(&self, x: f64, t: f64) -> f64;
}

impl<F> Potential for F
where
    F: Fn(f64, f64) -> f64 + Sync,
{
    fn value(&self, x: f64, t: f64) -> f64 {
        self(x, t)
    }
}

/// `U ≡ 0`.
#[derive(Debug, Clone, Copy, Default)]
pub struct FreeSpace;

impl Potential for FreeSpace {
    fn value(&self, _x: f64, _t: f64) -> f64 {
        0.0
    }
}

/// Time-independent trap `½ m ω² x²`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct StaticHarmonic {
    pub mass: f64,
    pub omega: f64,
}

impl Potential for StaticHarmonic {
    fn value(&self, x: f64, _t: f64) -> f64 {
        0.5 * self.mass * self.omega * self.omega * x * x
    }
}

/// Linear ramp of the squared trap frequency,
/// `ω_t² = ω₀² − (ω₀² − ω₁²) t/τ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HarmonicRamp {
    omega0: f64,
    omega1: f64,
    tau: f64,
}

impl HarmonicRamp {
    pub fn new(omega0: f64, omega1: f64, tau: f64) -> Result<Self> {
        for (name, value) in [("omega0", omega0), ("omega1", omega1), ("tau", tau)] {
            if !(value > 0.0 && value.is_finite()) {
                return Err(Error::Domain { name, value, domain: "(0, ∞)" });
            }
        }
        Ok(Self { omega0, omega1, tau })
    }

    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    pub fn omega1(&self) -> f64 {
        self.omega1
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    /// `ω_t²`. Outside `[0, τ]` the ramp is continued linearly.
    pub fn omega_sq(&self, t: f64) -> f64 {
        let (w0, w1) = (self.omega0 * self.omega0, self.omega1 * self.omega1);
        w0 - (w0 - w1) * t / self.tau
    }

    /// `½ m ω_t² x²`.
    pub fn potential(&self, x: f64, t: f64, mass: f64) -> f64 {
        0.5 * mass * self.omega_sq(t) * x * x
    }

    /// Binds a particle mass, giving a [`Potential`].
    pub fn with_mass(self, mass: f64) -> RampedTrap {
        RampedTrap { ramp: self, mass }
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct RampedTrap {
    pub ramp: HarmonicRamp,
    pub mass: f64,
}

impl Potential for RampedTrap {
    fn value(&self, x: f64, t: f64) -> f64 {
        self.ramp.potential(x, t, self.mass)
    }
}

/// Time dependence of a length scale `λ_t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
pub enum LengthProtocol {
    /// `λ_t = λ₀ + v t`
    Linear { lambda0: f64, velocity: f64 },
    /// `λ_t = √(a t² + 2 b t + c)`
    Quadratic { a: f64, b: f64, c: f64 },
}

impl LengthProtocol {
    pub fn linear(lambda0: f64, velocity: f64) -> Result<Self> {
        if !(lambda0 > 0.0 && lambda0.is_finite()) || !velocity.is_finite() {
            return Err(Error::Domain { name: "lambda0", value: lambda0, domain: "(0, ∞)" });
        }
        Ok(Self::Linear { lambda0, velocity })
    }

    pub fn quadratic(a: f64, b: f64, c: f64) -> Result<Self> {
        if !(c > 0.0 && c.is_finite()) || !a.is_finite() || !b.is_finite() {
            return Err(Error::Domain { name: "c", value: c, domain: "(0, ∞)" });
        }
        Ok(Self::Quadratic { a, b, c })
    }

    /// `λ_t`; may be non-positive (or NaN) outside the valid window.
    pub fn length(&self, t: f64) -> f64 {
        match *self {
            Self::Linear { lambda0, velocity } => lambda0 + velocity * t,
            Self::Quadratic { a, b, c } => (a * t * t + 2.0 * b * t + c).sqrt(),
        }
    }

    /// `λ̇_t`
    pub fn velocity(&self, t: f64) -> f64 {
        match *self {
            Self::Linear { velocity, .. } => velocity,
            Self::Quadratic { a, b, .. } => (a * t + b) / self.length(t),
        }
    }

    /// `λ̈_t`
    pub fn acceleration(&self, t: f64) -> f64 {
        match *self {
            Self::Linear { .. } => 0.0,
            Self::Quadratic { a, b, c } => (a * c - b * b) / self.length(t).powi(3),
        }
    }

    /// `λ_t³ λ̈_t`, constant for both families.
    pub fn curvature(&self) -> f64 {
        match *self {
            Self::Linear { .. } => 0.0,
            Self::Quadratic { a, b, c } => a * c - b * b,
        }
    }

    /// `λ_t` checked to be positive.
    pub fn length_checked(&self, t: f64) -> Result<f64> {
        let l = self.length(t);
        if l > 0.0 {
            Ok(l)
        } else {
            Err(Error::NonPositiveLength { t })
        }
    }

    /// Fails if `λ` vanishes anywhere on the closed window.
    pub fn check_window(&self, t0: f64, t1: f64) -> Result<()> {
        let (lo, hi) = if t0 <= t1 { (t0, t1) } else { (t1, t0) };
        self.length_checked(lo)?;
        self.length_checked(hi)?;
        if let Self::Quadratic { a, b, .. } = *self {
            if a != 0.0 {
                let vertex = -b / a;
                if vertex > lo && vertex < hi {
                    self.length_checked(vertex)?;
                }
            }
        }
        Ok(())
    }
}

/// The `κ|ψ|^{2p}` term.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NonlinearitySpec {
    order: u8,
    strength: f64,
}

impl NonlinearitySpec {
    /// `order = 0` silently forces `strength = 0`.
    pub fn new(order: u8, strength: f64) -> Result<Self> {
        if order > 2 {
            return Err(Error::InvalidParameter(format!("nonlinearity order {order} not in {{0, 1, 2}}")));
        }
        if !(strength >= 0.0 && strength.is_finite()) {
            return Err(Error::Domain { name: "kappa", value: strength, domain: "[0, ∞)" });
        }
        let strength = if order == 0 { 0.0 } else { strength };
        Ok(Self { order, strength })
    }

    pub fn linear() -> Self {
        Self { order: 0, strength: 0.0 }
    }

    pub fn cubic(strength: f64) -> Result<Self> {
        Self::new(1, strength)
    }

    pub fn quintic(strength: f64) -> Result<Self> {
        Self::new(2, strength)
    }

    pub fn order(&self) -> u8 {
        self.order
    }

    pub fn strength(&self) -> f64 {
        self.strength
    }

    pub fn is_linear(&self) -> bool {
        self.strength == 0.0
    }

    /// Same order, different strength.
    pub fn with_strength(&self, strength: f64) -> Result<Self> {
        Self::new(self.order, strength)
    }

    /// `κ ρ^p` for a density `ρ = |ψ|²`.
    pub fn energy_density(&self, density: f64) -> f64 {
        match self.order {
            0 => 0.0,
            1 => self.strength * density,
            _ => self.strength * density * density,
        }
    }
}
