//! Exact scale-invariant solutions
//! `ψ_t(x) = e^{−iμ₀τ(t)/ħ} e^{imλ̇x²/2ħλ} Φ(x/λ_t)/λ_t^s`, `τ(t) = ∫₀ᵗ ds/λ_s²`,
//! of `iħψ̇ = [−ħ²/2m ∂ₓ² + U(x/λ)/λ² + (κ/λ)|ψ|²]ψ`.
//!
//! Substituting the ansatz (with `s = ½`) leaves the profile equation
//! `μ₀Φ = −ħ²/2m Φ'' + [U(y) + ½m λ³λ̈ y²]Φ + κΦ³`. For
//! `λ = √(at² + 2bt + c)` the product `λ³λ̈ = ac − b²` is constant, so the
//! profile is an ordinary stationary state of a shifted trap. A harmonic
//! profile of frequency `Ω` therefore runs in the trap `ω_U² = Ω² − (ac − b²)`,
//! and the hard-wall box only admits protocols with `ac = b²`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::dynamics::{Hamiltonian, LengthProtocol, NonlinearitySpec, Potential};
use crate::error::{Error, Result};
use crate::quad;
use crate::special::EllipticParams;
use crate::square_well;
use crate::wave::{SpatialGrid, WaveFunction};

const TAU_TOLERANCE: f64 = 1e-10;
/// Half-width of the centred time difference used by [`ScaleInvariantSolution::verify`].
pub const VERIFY_DT: f64 = 1e-6;

/// `τ(t) = ∫₀ᵗ ds / λ_s²`.
pub fn tau_integral(protocol: &LengthProtocol, t: f64) -> Result<f64> {
    protocol.check_window(0.0, t)?;
    quad::integrate(|s| protocol.length(s).powi(-2), 0.0, t, TAU_TOLERANCE)
}

/// What the profile does beyond the walls of the box.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WallHandling {
    /// Zero outside `[0, λ]`.
    Zero,
    /// Odd periodic continuation (smooth on a `[−λ, λ)` grid).
    OddContinuation,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BaseProfile {
    /// `(mΩ/πħ)^{1/4} exp(−mΩy²/2ħ)`
    Gaussian { omega: f64 },
    /// Level `n` of the nonlinear box of unit length.
    SquareWell { n: u32, nu: f64, walls: WallHandling },
}

/// `U(x/λ_t)/λ_t²` for the harmonic family, i.e. `½ m ω_U² x²/λ_t⁴`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ScaledTrap {
    pub mass: f64,
    pub omega_sq: f64,
    pub protocol: LengthProtocol,
}

impl Potential for ScaledTrap {
    fn value(&self, x: f64, t: f64) -> f64 {
        0.5 * self.mass * self.omega_sq * x * x / self.protocol.length(t).powi(4)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResidualReport {
    /// `‖iħψ̇ − Hψ‖`
    pub residual: f64,
    /// `‖Hψ‖`
    pub h_norm: f64,
    pub relative: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScaleInvariantSolution {
    profile: BaseProfile,
    protocol: LengthProtocol,
    mass: f64,
    hbar: f64,
    kappa: f64,
    mu0: f64,
    trap_omega_sq: f64,
    exponent: f64,
    #[serde(skip)]
    elliptic: Option<(f64, f64)>,
}

impl ScaleInvariantSolution {
    /// Linear (`κ = 0`) solution seeded by the harmonic ground state of
    /// effective frequency `omega`.
    pub fn harmonic(omega: f64, protocol: LengthProtocol, mass: f64, hbar: f64) -> Result<Self> {
        if !(omega > 0.0 && omega.is_finite()) {
            return Err(Error::Domain { name: "omega", value: omega, domain: "(0, ∞)" });
        }
        Ok(Self {
            profile: BaseProfile::Gaussian { omega },
            protocol,
            mass,
            hbar,
            kappa: 0.0,
            mu0: 0.5 * hbar * omega,
            trap_omega_sq: omega * omega - protocol.curvature(),
            exponent: 0.5,
            elliptic: None,
        })
    }

    /// Box solution seeded by level `n` of the unit-length box at coupling
    /// `κ`. Requires `λ³λ̈ = 0`.
    pub fn square_well(
        kappa: f64,
        n: u32,
        protocol: LengthProtocol,
        mass: f64,
        hbar: f64,
        walls: WallHandling,
    ) -> Result<Self> {
        if protocol.curvature().abs() > 1e-14 {
            return Err(Error::InvalidParameter(format!(
                "box profiles need λ³λ̈ = 0, protocol has ac − b² = {}",
                protocol.curvature()
            )));
        }
        let sol = square_well::BoxEigenSolution::exact(kappa, 1.0, n, mass, hbar)?;
        let params = EllipticParams::new(sol.nu)?;
        Ok(Self {
            profile: BaseProfile::SquareWell { n, nu: sol.nu, walls },
            protocol,
            mass,
            hbar,
            kappa,
            mu0: sol.mu,
            trap_omega_sq: 0.0,
            exponent: 0.5,
            elliptic: Some((params.k, params.e)),
        })
    }

    /// Overrides the rescaling exponent `s` in `Φ(x/λ)/λ^s`. Only `s = ½`
    /// preserves the norm (and solves the equation of motion).
    pub fn with_exponent(mut self, exponent: f64) -> Self {
        self.exponent = exponent;
        self
    }

    pub fn exponent(&self) -> f64 {
        self.exponent
    }

    pub fn is_norm_preserving(&self) -> bool {
        self.exponent == 0.5
    }

    pub fn profile(&self) -> BaseProfile {
        self.profile
    }

    pub fn protocol(&self) -> &LengthProtocol {
        &self.protocol
    }

    pub fn chemical_potential(&self) -> f64 {
        self.mu0
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    /// `ω_U²` of the base trap `U(y) = ½ m ω_U² y²` (zero for the box).
    pub fn trap_omega_sq(&self) -> f64 {
        self.trap_omega_sq
    }

    /// `Φ(y)` at unit length.
    pub fn base_value(&self, y: f64) -> f64 {
        match self.profile {
            BaseProfile::Gaussian { omega } => {
                let alpha = self.mass * omega / self.hbar;
                (alpha / PI).powf(0.25) * (-0.5 * alpha * y * y).exp()
            }
            BaseProfile::SquareWell { n, nu, walls } => {
                if walls == WallHandling::Zero && !(0.0..=1.0).contains(&y) {
                    return 0.0;
                }
                let (k, e) = self.elliptic.unwrap_or((PI / 2.0, PI / 2.0));
                let params = EllipticParams { nu, k, e };
                let amp = square_well::stationary_amplitude(1.0, nu).unwrap_or(f64::NAN);
                square_well::stationary_profile(n, 1.0, &params, amp, y)
            }
        }
    }

    /// The potential entering the equation of motion.
    pub fn potential(&self) -> ScaledTrap {
        ScaledTrap { mass: self.mass, omega_sq: self.trap_omega_sq, protocol: self.protocol }
    }

    /// Cubic coupling `κ/λ_t` at time `t`.
    pub fn nonlinearity_at(&self, t: f64) -> Result<NonlinearitySpec> {
        let lambda = self.protocol.length_checked(t)?;
        NonlinearitySpec::cubic(self.kappa / lambda)
    }

    /// Real instantaneous profile `Φ(x/λ_t)/λ_t^s`, without phases.
    pub fn profile_at(&self, t: f64, grid: SpatialGrid) -> Result<WaveFunction> {
        let lambda = self.protocol.length_checked(t)?;
        let scale = lambda.powf(-self.exponent);
        WaveFunction::from_fn(grid, self.hbar, self.mass, |x| Complex64::new(scale * self.base_value(x / lambda), 0.0))
    }

    /// The full state `ψ_t` on `grid`.
    pub fn build(&self, t: f64, grid: SpatialGrid) -> Result<WaveFunction> {
        let lambda = self.protocol.length_checked(t)?;
        let chirp = self.mass * self.protocol.velocity(t) / (2.0 * self.hbar * lambda);
        let global = -self.mu0 * tau_integral(&self.protocol, t)? / self.hbar;
        let scale = lambda.powf(-self.exponent);
        WaveFunction::from_fn(grid, self.hbar, self.mass, |x| {
            Complex64::from_polar(scale * self.base_value(x / lambda), global + chirp * x * x)
        })
    }

    /// Residual of the equation of motion on the built state, with `ψ̇` from
    /// a centred difference of half-width [`VERIFY_DT`]. `region` restricts
    /// the norms to `x ∈ [lo, hi]`.
    pub fn verify(&self, t: f64, grid: SpatialGrid, region: Option<(f64, f64)>) -> Result<ResidualReport> {
        let psi = self.build(t, grid)?;
        let ahead = self.build(t + VERIFY_DT, grid)?;
        let behind = self.build(t - VERIFY_DT, grid)?;
        let nl = self.nonlinearity_at(t)?;
        let h = Hamiltonian::for_state(&psi).apply(&psi, &self.potential(), t, &nl)?;
        let (lo, hi) = region.unwrap_or((f64::NEG_INFINITY, f64::INFINITY));
        let i_hbar = Complex64::new(0.0, self.hbar);
        let (mut res, mut hn) = (0.0, 0.0);
        for (j, x) in grid.points().enumerate() {
            if x < lo || x > hi {
                continue;
            }
            let dot = (ahead.amplitudes()[j] - behind.amplitudes()[j]) / (2.0 * VERIFY_DT);
            let hpsi = h.amplitudes()[j];
            res += (i_hbar * dot - hpsi).norm_sqr();
            hn += hpsi.norm_sqr();
        }
        let dx = grid.dx();
        let (residual, h_norm) = ((res * dx).sqrt(), (hn * dx).sqrt());
        Ok(ResidualReport { residual, h_norm, relative: residual / h_norm })
    }
}
