//! Quantum speed limit `v_QSL = ∫ dx |ψ̇_t(x)|²`.
//!
//! The numeric evaluator never differentiates in time: on a solution of the
//! equation of motion `ψ̇ = −(i/ħ) H[ψ] ψ`, so `v_QSL = ‖H[ψ]ψ‖² / ħ²`.

use num_complex::Complex64;
use serde::Serialize;

use crate::dynamics::{Hamiltonian, LengthProtocol, NonlinearitySpec, Potential, Trajectory};
use crate::error::{Error, Result};
use crate::par::{self, Execution};
use crate::spectral::Spectral;
use crate::wave::WaveFunction;

/// Fewest samples accepted by [`qsl_trace`].
pub const MIN_TRACE_SAMPLES: usize = 100;

/// `‖Hψ‖²/ħ²` for a normalized state.
pub fn qsl_numeric(psi: &WaveFunction, potential: &dyn Potential, t: f64, nl: &NonlinearitySpec) -> Result<f64> {
    qsl_numeric_with(&Hamiltonian::for_state(psi), psi, potential, t, nl)
}

/// [`qsl_numeric`] reusing a prepared [`Hamiltonian`].
pub fn qsl_numeric_with(
    hamiltonian: &Hamiltonian,
    psi: &WaveFunction,
    potential: &dyn Potential,
    t: f64,
    nl: &NonlinearitySpec,
) -> Result<f64> {
    psi.require_normalized()?;
    let image = hamiltonian.apply(psi, potential, t, nl)?;
    Ok(image.norm()? / psi.hbar().powi(2))
}

/// The four non-negative summands of the scale-invariant speed limit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QslTerms {
    /// `μ_t²/ħ²`
    pub chemical: f64,
    /// `(mμ_t/ħ²)(λ̇²/λ² − λ̈/λ)⟨x²⟩`
    pub position2: f64,
    /// `(m²/4ħ²)(λ̇²/λ² − λ̈/λ)²⟨x⁴⟩`
    pub position4: f64,
    /// kinetic (dilation) contribution
    pub momentum: f64,
}

impl QslTerms {
    pub fn total(&self) -> f64 {
        self.chemical + self.position2 + self.position4 + self.momentum
    }
}

/// Moments of the instantaneous profile `Φ(x, λ_t)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProfileMoments {
    pub x2: f64,
    pub x4: f64,
    pub p2: f64,
}

fn shared_terms(
    mu0: f64,
    protocol: &LengthProtocol,
    t: f64,
    x2: f64,
    x4: f64,
    mass: f64,
    hbar: f64,
) -> Result<(QslTerms, f64)> {
    let lambda = protocol.length_checked(t)?;
    let rate = protocol.velocity(t) / lambda;
    let accel = protocol.acceleration(t) / lambda;
    let mu = mu0 / (lambda * lambda);
    let hbar2 = hbar * hbar;
    // (λ̇⁴/λ⁴ − 2λ̇²λ̈/λ³ + λ̈²/λ²) is the square of the chirp rate below
    let chirp = rate * rate - accel;
    let terms = QslTerms {
        chemical: mu * mu / hbar2,
        position2: mass * mu / hbar2 * chirp * x2,
        position4: mass * mass / (4.0 * hbar2) * chirp * chirp * x4,
        momentum: 0.0,
    };
    Ok((terms, protocol.velocity(t)))
}

/// Closed-form speed limit along a scale-invariant solution, with the
/// kinetic term written as `(λ̇²/ħ²)⟨p²⟩` and `μ_t = μ₀/λ_t²`.
pub fn qsl_scale_invariant(
    mu0: f64,
    protocol: &LengthProtocol,
    t: f64,
    moments: ProfileMoments,
    mass: f64,
    hbar: f64,
) -> Result<QslTerms> {
    let (mut terms, velocity) = shared_terms(mu0, protocol, t, moments.x2, moments.x4, mass, hbar)?;
    terms.momentum = velocity * velocity / (hbar * hbar) * moments.p2;
    Ok(terms)
}

/// Same as [`qsl_scale_invariant`] but with the kinetic term computed from
/// the dilation moment `D = ∫|(x∂ₓ + s)Φ_λ|² dx` as `(λ̇/λ)² D`, which is
/// what `∫|ψ̇|²` produces for a real profile.
#[allow(clippy::too_many_arguments)]
pub fn qsl_scale_invariant_dilation(
    mu0: f64,
    protocol: &LengthProtocol,
    t: f64,
    x2: f64,
    x4: f64,
    dilation: f64,
    mass: f64,
    hbar: f64,
) -> Result<QslTerms> {
    let (mut terms, velocity) = shared_terms(mu0, protocol, t, x2, x4, mass, hbar)?;
    let lambda = protocol.length(t);
    terms.momentum = (velocity / lambda).powi(2) * dilation;
    Ok(terms)
}

/// `∫|x ∂ₓψ + s ψ|² dx` with a spectral derivative.
pub fn dilation_moment(psi: &WaveFunction, exponent: f64) -> Result<f64> {
    psi.norm()?;
    let spectral = Spectral::new(psi.grid());
    let derivative = spectral.derivative(psi.amplitudes());
    let dx = psi.grid().dx();
    Ok(psi
        .grid()
        .points()
        .zip(psi.amplitudes().iter().zip(&derivative))
        .map(|(x, (&z, &dz))| (dz * x + z * exponent).norm_sqr())
        .sum::<f64>()
        * dx)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QslTrace {
    pub times: Vec<f64>,
    pub v_qsl: Vec<f64>,
    pub breakdown: Option<Vec<QslTerms>>,
}

impl QslTrace {
    /// Linear interpolation at `t` (clamped to the sampled window).
    pub fn value_at(&self, t: f64) -> Option<f64> {
        let idx = self.times.partition_point(|&s| s < t);
        match idx {
            0 => self.v_qsl.first().copied(),
            i if i >= self.times.len() => self.v_qsl.last().copied(),
            i => {
                let (t0, t1) = (self.times[i - 1], self.times[i]);
                let w = (t - t0) / (t1 - t0);
                Some(self.v_qsl[i - 1] * (1.0 - w) + self.v_qsl[i] * w)
            }
        }
    }
}

/// [`qsl_numeric`] at every recorded sample of a trajectory.
pub fn qsl_trace(
    trajectory: &Trajectory,
    potential: &dyn Potential,
    nl: &NonlinearitySpec,
    exec: Execution,
) -> Result<QslTrace> {
    if trajectory.len() < MIN_TRACE_SAMPLES {
        return Err(Error::InvalidParameter(format!(
            "trajectory has {} samples, need at least {MIN_TRACE_SAMPLES}",
            trajectory.len()
        )));
    }
    let first = &trajectory.states[0];
    let hamiltonian = Hamiltonian::for_state(first);
    let samples: Vec<(f64, &WaveFunction)> = trajectory.iter().collect();
    let v_qsl = par::try_map(&samples, exec, |&(t, psi)| qsl_numeric_with(&hamiltonian, psi, potential, t, nl))?;
    Ok(QslTrace { times: trajectory.times.clone(), v_qsl, breakdown: None })
}

/// `⟨ψ|H²|ψ⟩/ħ²` by applying `H` twice, for linear dynamics.
pub fn expected_h_squared(psi: &WaveFunction, potential: &dyn Potential, t: f64) -> Result<f64> {
    let linear = NonlinearitySpec::linear();
    let hamiltonian = Hamiltonian::for_state(psi);
    let once = hamiltonian.apply(psi, potential, t, &linear)?;
    let twice = hamiltonian.apply(&once, potential, t, &linear)?;
    let value: Complex64 = psi.inner(&twice)?;
    Ok(value.re / psi.hbar().powi(2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{ground_state_gaussian, StaticHarmonic};
    use crate::wave::SpatialGrid;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn gaussian() -> WaveFunction {
        ground_state_gaussian(SpatialGrid::new(-8.0, 8.0, 1024).unwrap(), 1.0, 5.0, 1.0).unwrap()
    }

    #[test]
    fn eigenstate_speed_is_energy_squared() {
        let trap = StaticHarmonic { mass: 1.0, omega: 5.0 };
        let v = qsl_numeric(&gaussian(), &trap, 0.0, &NonlinearitySpec::linear()).unwrap();
        assert_relative_eq!(v, 6.25, max_relative = 1e-10);
    }

    #[test]
    fn unnormalized_input_is_rejected() {
        let trap = StaticHarmonic { mass: 1.0, omega: 5.0 };
        let psi = gaussian().scaled(Complex64::new(2.0, 0.0));
        assert!(matches!(qsl_numeric(&psi, &trap, 0.0, &NonlinearitySpec::linear()), Err(Error::NotNormalized { .. })));
    }

    #[test]
    fn stationary_protocol_keeps_only_chemical_term() {
        let p = LengthProtocol::linear(2.0, 0.0).unwrap();
        let m = ProfileMoments { x2: 1.0, x4: 2.0, p2: 3.0 };
        let terms = qsl_scale_invariant(3.0, &p, 0.7, m, 1.0, 1.0).unwrap();
        assert_eq!(terms.total(), terms.chemical);
        assert_abs_diff_eq!(terms.chemical, (3.0f64 / 4.0).powi(2), epsilon = 1e-15);
    }

    #[test]
    fn linear_expansion_matches_constant_rate_form() {
        // λ̈ = 0: μ_t²/ħ² + (mμ_t/ħ²)(v²/λ²)⟨x²⟩ + (m²/4ħ²)(v⁴/λ⁴)⟨x⁴⟩ + (v²/ħ²)⟨p²⟩
        let (mu0, v, lambda0, t, m, hbar) = (4.0, 1.5, 1.0, 0.4, 2.0, 0.5);
        let p = LengthProtocol::linear(lambda0, v).unwrap();
        let mo = ProfileMoments { x2: 0.3, x4: 0.12, p2: 9.0 };
        let l = lambda0 + v * t;
        let eps = mu0 / (l * l);
        let expected = eps * eps / (hbar * hbar)
            + m * eps / (hbar * hbar) * v * v / (l * l) * mo.x2
            + m * m / (4.0 * hbar * hbar) * v.powi(4) / l.powi(4) * mo.x4
            + v * v / (hbar * hbar) * mo.p2;
        let terms = qsl_scale_invariant(mu0, &p, t, mo, m, hbar).unwrap();
        assert_relative_eq!(terms.total(), expected, max_relative = 1e-14);
    }

    #[test]
    fn quartic_prefactor_is_the_expanded_polynomial() {
        let p = LengthProtocol::quadratic(1.3, 0.4, 0.9).unwrap();
        let t = 0.8;
        let (l, ld, ldd) = (p.length(t), p.velocity(t), p.acceleration(t));
        let poly = ld.powi(4) / l.powi(4) - 2.0 * ld * ld * ldd / l.powi(3) + ldd * ldd / (l * l);
        let terms = qsl_scale_invariant(1.0, &p, t, ProfileMoments { x2: 0.0, x4: 1.0, p2: 0.0 }, 1.0, 1.0).unwrap();
        assert_relative_eq!(terms.position4, poly / 4.0, max_relative = 1e-12);
        assert!(qsl_scale_invariant(
            1.0,
            &LengthProtocol::linear(1.0, -1.0).unwrap(),
            2.0,
            ProfileMoments { x2: 0.0, x4: 0.0, p2: 0.0 },
            1.0,
            1.0
        )
        .is_err());
    }

    #[test]
    fn dilation_of_gaussian() {
        // ∫|(x∂ + ½)φ|² = α²⟨x⁴⟩ − ¼ = ½ for any width
        for omega in [1.0, 5.0] {
            let psi = ground_state_gaussian(SpatialGrid::new(-8.0, 8.0, 1024).unwrap(), 1.0, omega, 1.0).unwrap();
            assert_abs_diff_eq!(dilation_moment(&psi, 0.5).unwrap(), 0.5, epsilon = 1e-10);
        }
    }

    #[test]
    fn double_application_matches_numeric() {
        let trap = StaticHarmonic { mass: 1.0, omega: 2.0 };
        let psi = WaveFunction::from_fn(SpatialGrid::new(-10.0, 10.0, 512).unwrap(), 1.0, 1.0, |x| {
            Complex64::from_polar((-(x - 0.5).powi(2)).exp(), 0.3 * x * x)
        })
        .unwrap()
        .normalized()
        .unwrap();
        let a = qsl_numeric(&psi, &trap, 0.0, &NonlinearitySpec::linear()).unwrap();
        let b = expected_h_squared(&psi, &trap, 0.0).unwrap();
        assert_relative_eq!(a, b, max_relative = 1e-10);
    }

    #[test]
    fn trace_interpolation() {
        let tr = QslTrace { times: vec![0.0, 1.0, 2.0], v_qsl: vec![1.0, 3.0, 2.0], breakdown: None };
        assert_eq!(tr.value_at(0.5), Some(2.0));
        assert_eq!(tr.value_at(2.0), Some(2.0));
        assert_eq!(tr.value_at(-1.0), Some(1.0));
    }
}
