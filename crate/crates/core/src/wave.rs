//! Uniform periodic grids, sampled wavefunctions and their observables.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::spectral::Spectral;

/// `|norm − 1|` below which a state counts as normalized.
pub const NORMALIZED_TOLERANCE: f64 = 1e-8;

/// Looser tolerance accepted by moment and QSL evaluators.
pub const INPUT_NORM_TOLERANCE: f64 = 1e-6;

/// Edge amplitude above which `moment_p2` reports boundary contamination.
pub const EDGE_THRESHOLD: f64 = 1e-6;

/// Uniform periodic grid `x_j = x_min + j·dx`, `j = 0..n`; `x_max` is
/// identified with `x_min`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpatialGrid {
    x_min: f64,
    x_max: f64,
    n_points: usize,
}

impl SpatialGrid {
    pub fn new(x_min: f64, x_max: f64, n_points: usize) -> Result<Self> {
        if !(x_min.is_finite() && x_max.is_finite()) || x_max <= x_min {
            return Err(Error::InvalidGrid(format!("need finite x_max > x_min, got [{x_min}, {x_max})")));
        }
        if n_points < 16 || !n_points.is_power_of_two() {
            return Err(Error::InvalidGrid(format!("n_points must be a power of two >= 16, got {n_points}")));
        }
        Ok(Self { x_min, x_max, n_points })
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn len(&self) -> usize {
        self.n_points
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn length(&self) -> f64 {
        self.x_max - self.x_min
    }

    pub fn dx(&self) -> f64 {
        self.length() / self.n_points as f64
    }

    pub fn x(&self, j: usize) -> f64 {
        self.x_min + j as f64 * self.dx()
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        (0..self.n_points).map(|j| self.x(j))
    }
}

/// Complex samples `ψ(x_j)` together with the units they live in.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveFunction {
    grid: SpatialGrid,
    amplitudes: Vec<Complex64>,
    hbar: f64,
    mass: f64,
}

/// `⟨p²⟩` together with a flag raised when the state does not decay at the
/// grid edges (wrap-around makes the spectral value unreliable).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentP2 {
    pub value: f64,
    pub boundary_contaminated: bool,
}

impl WaveFunction {
    pub fn new(grid: SpatialGrid, amplitudes: Vec<Complex64>, hbar: f64, mass: f64) -> Result<Self> {
        if amplitudes.len() != grid.len() {
            return Err(Error::InvalidParameter(format!(
                "{} amplitudes for a grid of {} points",
                amplitudes.len(),
                grid.len()
            )));
        }
        if !(hbar > 0.0 && hbar.is_finite()) {
            return Err(Error::Domain { name: "hbar", value: hbar, domain: "(0, ∞)" });
        }
        if !(mass > 0.0 && mass.is_finite()) {
            return Err(Error::Domain { name: "mass", value: mass, domain: "(0, ∞)" });
        }
        Ok(Self { grid, amplitudes, hbar, mass })
    }

    /// Samples `f` at every grid point.
    pub fn from_fn(grid: SpatialGrid, hbar: f64, mass: f64, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        let amplitudes = grid.points().map(f).collect();
        Self::new(grid, amplitudes, hbar, mass)
    }

    pub fn grid(&self) -> &SpatialGrid {
        &self.grid
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    /// Same grid and units, new samples.
    pub fn with_amplitudes(&self, amplitudes: Vec<Complex64>) -> Result<Self> {
        Self::new(self.grid, amplitudes, self.hbar, self.mass)
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        Self { amplitudes: self.amplitudes.iter().map(|z| z * c).collect(), ..self.clone() }
    }

    fn check_finite(&self) -> Result<()> {
        if self.amplitudes.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            Ok(())
        } else {
            Err(Error::NonFiniteState)
        }
    }

    /// `Σ_j |ψ_j|² dx`.
    pub fn norm(&self) -> Result<f64> {
        self.check_finite()?;
        Ok(self.amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>() * self.grid.dx())
    }

    pub fn is_normalized(&self) -> bool {
        self.norm().is_ok_and(|n| (n - 1.0).abs() < NORMALIZED_TOLERANCE)
    }

    /// Rescales to unit norm.
    pub fn normalized(&self) -> Result<Self> {
        let norm = self.norm()?;
        if norm <= 0.0 {
            return Err(Error::NotNormalized { norm });
        }
        Ok(self.scaled(Complex64::new(norm.sqrt().recip(), 0.0)))
    }

    pub(crate) fn require_normalized(&self) -> Result<()> {
        let norm = self.norm()?;
        if (norm - 1.0).abs() > INPUT_NORM_TOLERANCE {
            return Err(Error::NotNormalized { norm });
        }
        Ok(())
    }

    /// `⟨xⁿ⟩ = Σ_j x_jⁿ |ψ_j|² dx` for `n ∈ {1, 2, 3, 4}`.
    pub fn moment_x(&self, n: u32) -> Result<f64> {
        if !(1..=4).contains(&n) {
            return Err(Error::InvalidParameter(format!("moment order {n} not in 1..=4")));
        }
        self.require_normalized()?;
        let dx = self.grid.dx();
        Ok(self.grid.points().zip(&self.amplitudes).map(|(x, z)| x.powi(n as i32) * z.norm_sqr()).sum::<f64>() * dx)
    }

    /// `⟨p²⟩ = ∫|ħ ∂ₓψ|² dx` from the discrete Fourier derivative.
    pub fn moment_p2(&self) -> Result<MomentP2> {
        self.require_normalized()?;
        let spectral = Spectral::new(&self.grid);
        let hat = spectral.transform(&self.amplitudes);
        let dk = 2.0 * std::f64::consts::PI / self.grid.length();
        let value = self.hbar.powi(2)
            * hat.iter().zip(spectral.wavenumbers()).map(|(z, k)| k * k * z.norm_sqr()).sum::<f64>()
            * dk;
        let edge = self.amplitudes[0].norm().max(self.amplitudes[self.grid.len() - 1].norm());
        Ok(MomentP2 { value, boundary_contaminated: edge > EDGE_THRESHOLD })
    }

    /// `⟨ψ|φ⟩ = Σ_j ψ_j* φ_j dx`.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        self.same_grid(other)?;
        Ok(self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a.conj() * b).sum::<Complex64>() * self.grid.dx())
    }

    /// `sqrt(Σ_j |ψ_j − φ_j|² dx)`.
    pub fn l2_distance(&self, other: &Self) -> Result<f64> {
        self.same_grid(other)?;
        self.check_finite()?;
        other.check_finite()?;
        let sum: f64 = self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| (a - b).norm_sqr()).sum();
        Ok((sum * self.grid.dx()).sqrt())
    }

    fn same_grid(&self, other: &Self) -> Result<()> {
        if self.grid == other.grid {
            Ok(())
        } else {
            Err(Error::GridMismatch)
        }
    }
}
