//! Time-dependent potentials, initial states and split-step propagation of
//! `iħψ̇ = [−ħ²/2m ∂ₓ² + U(x, t) + κ|ψ|^{2p}]ψ`.

mod hamiltonian;
mod potential;
mod propagator;

use std::f64::consts::PI;

use num_complex::Complex64;

pub use hamiltonian::{apply_hamiltonian, Hamiltonian};
pub use potential::{FreeSpace, HarmonicRamp, LengthProtocol, NonlinearitySpec, Potential, RampedTrap, StaticHarmonic};
pub use propagator::{
    propagate, step_strang, PropagationSettings, SplitStep, Trajectory, TrajectoryMeta, NORM_DRIFT_LIMIT,
    PHASE_STEP_LIMIT,
};

use crate::error::{Error, Result};
use crate::wave::{SpatialGrid, WaveFunction};

/// Largest edge amplitude tolerated by [`ground_state_gaussian`].
pub const GAUSSIAN_TAIL_LIMIT: f64 = 1e-8;

/// Linear harmonic ground state `(mω/πħ)^{1/4} exp(−mωx²/2ħ)`, renormalized on
/// the grid.
pub fn ground_state_gaussian(grid: SpatialGrid, mass: f64, omega: f64, hbar: f64) -> Result<WaveFunction> {
    if !(omega > 0.0 && omega.is_finite()) {
        return Err(Error::Domain { name: "omega", value: omega, domain: "(0, ∞)" });
    }
    let alpha = mass * omega / hbar;
    let amp = (alpha / PI).powf(0.25);
    let psi = WaveFunction::from_fn(grid, hbar, mass, |x| Complex64::new(amp * (-0.5 * alpha * x * x).exp(), 0.0))?;
    let edge = psi.amplitudes()[0].norm().max(psi.amplitudes()[grid.len() - 1].norm());
    if edge >= GAUSSIAN_TAIL_LIMIT {
        return Err(Error::GridTooNarrow { edge, limit: GAUSSIAN_TAIL_LIMIT });
    }
    psi.normalized()
}
