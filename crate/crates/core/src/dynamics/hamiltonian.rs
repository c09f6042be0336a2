use num_complex::Complex64;

use super::potential::{NonlinearitySpec, Potential};
use crate::error::{Error, Result};
use crate::spectral::Spectral;
use crate::wave::{SpatialGrid, WaveFunction};

/// `H = −ħ²/2m ∂ₓ² + U(x, t) + κ|ψ|^{2p}` on one grid, with cached FFT plans.
#[derive(Debug, Clone)]
pub struct Hamiltonian {
    grid: SpatialGrid,
    spectral: Spectral,
    hbar: f64,
    mass: f64,
}

impl Hamiltonian {
    pub fn new(grid: SpatialGrid, hbar: f64, mass: f64) -> Self {
        Self { spectral: Spectral::new(&grid), grid, hbar, mass }
    }

    pub fn for_state(psi: &WaveFunction) -> Self {
        Self::new(*psi.grid(), psi.hbar(), psi.mass())
    }

    /// `Hψ`, unnormalized.
    pub fn apply(
        &self,
        psi: &WaveFunction,
        potential: &dyn Potential,
        t: f64,
        nl: &NonlinearitySpec,
    ) -> Result<WaveFunction> {
        if *psi.grid() != self.grid {
            return Err(Error::GridMismatch);
        }
        psi.norm()?;
        let kinetic_scale = self.hbar * self.hbar / (2.0 * self.mass);
        let kinetic = self.spectral.apply_multiplier(psi.amplitudes(), |k| kinetic_scale * k * k);
        let out: Vec<Complex64> = kinetic
            .into_iter()
            .zip(psi.amplitudes())
            .zip(self.grid.points())
            .map(|((kin, &z), x)| kin + z * (potential.value(x, t) + nl.energy_density(z.norm_sqr())))
            .collect();
        let image = psi.with_amplitudes(out)?;
        image.norm()?;
        Ok(image)
    }
}

/// One-shot `Hψ`; use [`Hamiltonian`] when applying repeatedly.
pub fn apply_hamiltonian(
    psi: &WaveFunction,
    potential: &dyn Potential,
    t: f64,
    nl: &NonlinearitySpec,
) -> Result<WaveFunction> {
    Hamiltonian::for_state(psi).apply(psi, potential, t, nl)
}
