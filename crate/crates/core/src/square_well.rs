//! The infinite square well `[0, λ]` with a repulsive cubic nonlinearity.
//!
//! Stationary states are `ψ_n = A sn(2nK(ν)x/λ | ν)` with
//! `A² = νK/(λ(K − E))`; the parameter `ν` is fixed by
//! `K(ν)(K(ν) − E(ν)) = mλκ/(4n²ħ²)` and the chemical potential is
//! `μ_n = ħ²n²(2K)²(1 + ν)/(2mλ²)`. Small-`κ` expansions of all of these are
//! provided next to the exact routines so the two can be compared.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::dynamics::LengthProtocol;
use crate::error::{Error, Result};
use crate::qsl::{qsl_scale_invariant, ProfileMoments, QslTerms};
use crate::quad;
use crate::special::{jacobi_sn, EllipticParams};
use crate::wave::{SpatialGrid, WaveFunction};

/// Upper end of the `ν` bisection bracket.
pub const NU_BRACKET_MAX: f64 = 1.0 - 1e-12;
const BISECTION_MAX_ITER: usize = 200;
const MOMENT_TOLERANCE: f64 = 1e-10;
/// Allowed `|norm − 1|` of a freshly sampled state before renormalization.
const SAMPLING_NORM_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    Exact,
    Perturbative,
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Exact => "exact",
            Self::Perturbative => "perturbative",
        })
    }
}

fn check_level(n: u32, lambda: f64) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter("quantum number n must be >= 1".into()));
    }
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::Domain { name: "lambda", value: lambda, domain: "(0, ∞)" });
    }
    Ok(())
}

fn check_kappa(kappa: f64) -> Result<()> {
    if !(kappa >= 0.0 && kappa.is_finite()) {
        return Err(Error::Domain { name: "kappa", value: kappa, domain: "[0, ∞)" });
    }
    Ok(())
}

/// `E_n(λ) = ħ²π²n²/(2mλ²)`.
pub fn linear_energy(n: u32, lambda: f64, mass: f64, hbar: f64) -> f64 {
    let n = n as f64;
    hbar * hbar * PI * PI * n * n / (2.0 * mass * lambda * lambda)
}

/// `√(2/λ) sin(nπx/λ)` on `[0, λ]`, zero elsewhere, with its energy.
pub fn linear_eigenstate(n: u32, lambda: f64, grid: SpatialGrid, mass: f64, hbar: f64) -> Result<(WaveFunction, f64)> {
    check_level(n, lambda)?;
    let amp = (2.0 / lambda).sqrt();
    let k = n as f64 * PI / lambda;
    let psi = WaveFunction::from_fn(grid, hbar, mass, |x| {
        let v = if (0.0..=lambda).contains(&x) { amp * (k * x).sin() } else { 0.0 };
        Complex64::new(v, 0.0)
    })?;
    Ok((psi, linear_energy(n, lambda, mass, hbar)))
}

/// Right side of the quantization condition, `mλκ/(4n²ħ²)`.
fn quantization_rhs(kappa: f64, lambda: f64, mass: f64, n: u32, hbar: f64) -> f64 {
    mass * lambda * kappa / (4.0 * (n as f64).powi(2) * hbar * hbar)
}

/// The unique `ν ∈ [0, 1)` with `K(ν)(K(ν) − E(ν)) = mλκ/(4n²ħ²)`, by
/// bisection.
pub fn solve_nu(kappa: f64, lambda: f64, mass: f64, n: u32, hbar: f64) -> Result<f64> {
    check_kappa(kappa)?;
    check_level(n, lambda)?;
    if kappa == 0.0 {
        return Ok(0.0);
    }
    let target = quantization_rhs(kappa, lambda, mass, n, hbar);
    let residual = |nu: f64| EllipticParams::new(nu).map(|p| p.quantization_lhs() - target);
    let (mut lo, mut hi) = (0.0_f64, NU_BRACKET_MAX);
    if residual(hi)? < 0.0 {
        return Err(Error::Domain { name: "kappa", value: kappa, domain: "ν root below 1 − 1e−12" });
    }
    for _ in 0..BISECTION_MAX_ITER {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if residual(mid)? < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // pick whichever end of the final bracket has the smaller residual
    let (r_lo, r_hi) = (residual(lo)?.abs(), residual(hi)?.abs());
    Ok(if r_lo <= r_hi { lo } else { hi })
}

/// Leading-order root `ν ≈ 2mλκ/(n²ħ²π²)`.
pub fn nu_first_order(kappa: f64, lambda: f64, mass: f64, n: u32, hbar: f64) -> f64 {
    2.0 * mass * lambda * kappa / ((n as f64).powi(2) * hbar * hbar * PI * PI)
}

/// `A = √(νK/(λ(K − E)))`, continuous at `ν = 0` where it is `√(2/λ)`.
pub fn stationary_amplitude(lambda: f64, nu: f64) -> Result<f64> {
    if nu == 0.0 {
        return Ok((2.0 / lambda).sqrt());
    }
    let p = EllipticParams::new(nu)?;
    Ok((nu * p.k / (lambda * (p.k - p.e))).sqrt())
}

/// `A sn(2nKx/λ | ν)` at any real `x`: inside `[0, λ]` the box state, outside
/// its odd periodic continuation (period `2λ`).
pub fn stationary_profile(n: u32, lambda: f64, params: &EllipticParams, amplitude: f64, x: f64) -> f64 {
    let arg = 2.0 * n as f64 * params.k * x / lambda;
    // the domain was validated when `params` was built
    amplitude * jacobi_sn(arg, params.nu).unwrap_or(f64::NAN)
}

/// Samples the nonlinear stationary state on `grid` (zero outside `[0, λ]`)
/// and renormalizes it. `ν = 0` falls back to [`linear_eigenstate`].
pub fn stationary_state(n: u32, lambda: f64, nu: f64, grid: SpatialGrid, mass: f64, hbar: f64) -> Result<WaveFunction> {
    check_level(n, lambda)?;
    if nu == 0.0 {
        return linear_eigenstate(n, lambda, grid, mass, hbar).map(|(psi, _)| psi);
    }
    let params = EllipticParams::new(nu)?;
    let amp = stationary_amplitude(lambda, nu)?;
    let psi = WaveFunction::from_fn(grid, hbar, mass, |x| {
        let v = if (0.0..=lambda).contains(&x) { stationary_profile(n, lambda, &params, amp, x) } else { 0.0 };
        Complex64::new(v, 0.0)
    })?;
    let norm = psi.norm()?;
    if (norm - 1.0).abs() > SAMPLING_NORM_TOLERANCE {
        return Err(Error::NotNormalized { norm });
    }
    psi.normalized()
}

/// The stationary state continued oddly past both walls, sampled without
/// renormalization.
///
/// On a grid spanning a whole period (`2λ`) this is a smooth periodic
/// function, so spectral derivatives are exact; the Dirichlet problem on
/// `[0, λ]` is the odd sector of the periodic problem on `[−λ, λ)`.
pub fn stationary_state_extended(
    n: u32,
    lambda: f64,
    nu: f64,
    grid: SpatialGrid,
    mass: f64,
    hbar: f64,
) -> Result<WaveFunction> {
    check_level(n, lambda)?;
    let params = EllipticParams::new(nu)?;
    let amp = stationary_amplitude(lambda, nu)?;
    WaveFunction::from_fn(grid, hbar, mass, |x| Complex64::new(stationary_profile(n, lambda, &params, amp, x), 0.0))
}

/// `μ_n = ħ²n²(2K(ν))²(1 + ν)/(2mλ²)`.
pub fn chemical_potential(n: u32, lambda: f64, nu: f64, mass: f64, hbar: f64) -> Result<f64> {
    check_level(n, lambda)?;
    let k = crate::special::ellip_k(nu)?;
    let n = n as f64;
    Ok(hbar * hbar * n * n * (2.0 * k).powi(2) * (1.0 + nu) / (2.0 * mass * lambda * lambda))
}

/// `μ_n ≈ E_n(λ) + 3κ/(2λ)`.
pub fn chemical_potential_perturbative(n: u32, lambda: f64, kappa: f64, mass: f64, hbar: f64) -> f64 {
    linear_energy(n, lambda, mass, hbar) + 1.5 * kappa / lambda
}

/// Closed-form `⟨p²⟩` of the ground state (`n = 1`),
/// `ħ²(2K)²[K(ν − 1) + E(ν + 1)] / (3λ²(K − E))`.
pub fn p2_exact(lambda: f64, nu: f64, hbar: f64) -> Result<f64> {
    if nu == 0.0 {
        return Ok(hbar * hbar * PI * PI / (lambda * lambda));
    }
    let EllipticParams { k, e, .. } = EllipticParams::new(nu)?;
    Ok(hbar * hbar * (2.0 * k).powi(2) * (k * (nu - 1.0) + e * (nu + 1.0)) / (3.0 * lambda * lambda * (k - e)))
}

/// Linear ground-state moments `λ²(1/3 − 1/2π²)`, `λ⁴(1/5 − 1/π² + 3/2π⁴)`, `ħ²π²/λ²`.
pub fn moments_linear(lambda: f64, hbar: f64) -> ProfileMoments {
    let pi2 = PI * PI;
    ProfileMoments {
        x2: lambda.powi(2) * (1.0 / 3.0 - 0.5 / pi2),
        x4: lambda.powi(4) * (0.2 - 1.0 / pi2 + 1.5 / (pi2 * pi2)),
        p2: hbar * hbar * pi2 / (lambda * lambda),
    }
}

/// Ground-state moments of the exact nonlinear state: `⟨x²⟩`, `⟨x⁴⟩` by
/// adaptive quadrature, `⟨p²⟩` in closed form.
pub fn moments_exact(kappa: f64, lambda: f64, mass: f64, hbar: f64) -> Result<ProfileMoments> {
    let nu = solve_nu(kappa, lambda, mass, 1, hbar)?;
    if nu == 0.0 {
        return Ok(moments_linear(lambda, hbar));
    }
    let params = EllipticParams::new(nu)?;
    let amp = stationary_amplitude(lambda, nu)?;
    let density = |x: f64| stationary_profile(1, lambda, &params, amp, x).powi(2);
    let x2 = quad::integrate(|x| x * x * density(x), 0.0, lambda, MOMENT_TOLERANCE)?;
    let x4 = quad::integrate(|x| x.powi(4) * density(x), 0.0, lambda, MOMENT_TOLERANCE)?;
    Ok(ProfileMoments { x2, x4, p2: p2_exact(lambda, nu, hbar)? })
}

/// First-order-in-`κ` ground-state moments:
/// `⟨x²⟩_lin + 3mλ³κ/(32ħ²π⁴)`, `⟨x⁴⟩_lin + 3(8π² − 15)mλ⁵κ/(128ħ²π⁶)` and
/// `⟨p²⟩_lin + m²κ²/(8ħ²π²)`.
pub fn moments_perturbative(kappa: f64, lambda: f64, mass: f64, hbar: f64) -> ProfileMoments {
    let lin = moments_linear(lambda, hbar);
    let (pi2, hbar2) = (PI * PI, hbar * hbar);
    ProfileMoments {
        x2: lin.x2 + 3.0 * mass * lambda.powi(3) * kappa / (32.0 * hbar2 * pi2 * pi2),
        x4: lin.x4 + 3.0 * (8.0 * pi2 - 15.0) * mass * lambda.powi(5) * kappa / (128.0 * hbar2 * pi2.powi(3)),
        p2: lin.p2 + mass * mass * kappa * kappa / (8.0 * hbar2 * pi2),
    }
}

/// First-order normalization `A ≈ √(2/λ) − ν/(8√(2λ))`.
pub fn normalization_perturbative(lambda: f64, nu: f64) -> f64 {
    (2.0 / lambda).sqrt() - nu / (8.0 * (2.0 * lambda).sqrt())
}

/// A solved level of the nonlinear box.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoxEigenSolution {
    pub n: u32,
    pub lambda: f64,
    pub nu: f64,
    pub mu: f64,
    pub amplitude: f64,
    pub regime: Regime,
}

impl BoxEigenSolution {
    pub fn exact(kappa: f64, lambda: f64, n: u32, mass: f64, hbar: f64) -> Result<Self> {
        let nu = solve_nu(kappa, lambda, mass, n, hbar)?;
        Ok(Self {
            n,
            lambda,
            nu,
            mu: chemical_potential(n, lambda, nu, mass, hbar)?,
            amplitude: stationary_amplitude(lambda, nu)?,
            regime: Regime::Exact,
        })
    }

    pub fn perturbative(kappa: f64, lambda: f64, n: u32, mass: f64, hbar: f64) -> Result<Self> {
        check_kappa(kappa)?;
        check_level(n, lambda)?;
        let nu = nu_first_order(kappa, lambda, mass, n, hbar);
        Ok(Self {
            n,
            lambda,
            nu,
            mu: chemical_potential_perturbative(n, lambda, kappa, mass, hbar),
            amplitude: normalization_perturbative(lambda, nu),
            regime: Regime::Perturbative,
        })
    }

    pub fn state(&self, grid: SpatialGrid, mass: f64, hbar: f64) -> Result<WaveFunction> {
        stationary_state(self.n, self.lambda, self.nu, grid, mass, hbar)
    }
}

/// Ground-state box expanded at constant rate, `λ_t = λ₀ + vt`.
///
/// The chemical potential at `λ₀` is carried along as `μ_t = μ(λ₀)λ₀²/λ_t²`;
/// the moments are those of the regime-selected ground state at `λ_t`.
pub fn qsl_box(
    kappa: f64,
    lambda0: f64,
    velocity: f64,
    t: f64,
    mass: f64,
    hbar: f64,
    regime: Regime,
) -> Result<QslTerms> {
    check_kappa(kappa)?;
    let protocol = LengthProtocol::linear(lambda0, velocity)?;
    let lambda_t = protocol.length_checked(t)?;
    let (mu0, moments) = match regime {
        Regime::Exact => {
            (BoxEigenSolution::exact(kappa, lambda0, 1, mass, hbar)?.mu, moments_exact(kappa, lambda_t, mass, hbar)?)
        }
        Regime::Perturbative => (
            chemical_potential_perturbative(1, lambda0, kappa, mass, hbar),
            moments_perturbative(kappa, lambda_t, mass, hbar),
        ),
    };
    // qsl_scale_invariant divides by λ_t², so hand it the λ = 1 value
    qsl_scale_invariant(mu0 * lambda0 * lambda0, &protocol, t, moments, mass, hbar)
}

#[cfg(test)]
mod tests;
