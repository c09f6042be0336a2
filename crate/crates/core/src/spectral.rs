//! FFT plans and wavenumber tables for a periodic grid.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::wave::SpatialGrid;

/// Forward/inverse transforms for one grid size.
///
/// The raw transforms are unnormalized; `inverse` divides by `N` so that
/// `inverse(forward(ψ)) == ψ`.
#[derive(Clone)]
pub struct Spectral {
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
    wavenumbers: Vec<f64>,
    dx: f64,
}

impl fmt::Debug for Spectral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Spectral").field("n", &self.wavenumbers.len()).field("dx", &self.dx).finish()
    }
}

impl Spectral {
    pub fn new(grid: &SpatialGrid) -> Self {
        let n = grid.len();
        let mut planner = FftPlanner::new();
        Self {
            forward: planner.plan_fft_forward(n),
            inverse: planner.plan_fft_inverse(n),
            wavenumbers: wavenumbers(grid),
            dx: grid.dx(),
        }
    }

    pub fn len(&self) -> usize {
        self.wavenumbers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.wavenumbers.is_empty()
    }

    /// Wavenumbers in FFT storage order.
    pub fn wavenumbers(&self) -> &[f64] {
        &self.wavenumbers
    }

    pub fn forward(&self, buf: &mut [Complex64]) {
        self.forward.process(buf);
    }

    pub fn inverse(&self, buf: &mut [Complex64]) {
        self.inverse.process(buf);
        let scale = 1.0 / buf.len() as f64;
        for z in buf.iter_mut() {
            *z *= scale;
        }
    }

    /// Continuum-normalized transform `ψ̂_k = dx/√(2π) Σ_j ψ_j e^{-i k x_j}`
    /// (up to the global phase from `x_min`), so that
    /// `Σ_j |ψ_j|² dx = Σ_k |ψ̂_k|² dk`.
    pub fn transform(&self, samples: &[Complex64]) -> Vec<Complex64> {
        let mut buf = samples.to_vec();
        self.forward(&mut buf);
        let scale = self.dx / (2.0 * PI).sqrt();
        buf.iter_mut().for_each(|z| *z *= scale);
        buf
    }

    /// Applies `f(k)` as a Fourier multiplier.
    pub fn apply_multiplier(&self, samples: &[Complex64], f: impl Fn(f64) -> f64) -> Vec<Complex64> {
        let mut buf = samples.to_vec();
        self.forward(&mut buf);
        for (z, &k) in buf.iter_mut().zip(&self.wavenumbers) {
            *z *= f(k);
        }
        self.inverse(&mut buf);
        buf
    }

    /// Spectral first derivative.
    pub fn derivative(&self, samples: &[Complex64]) -> Vec<Complex64> {
        let mut buf = samples.to_vec();
        self.forward(&mut buf);
        let n = buf.len();
        for (j, (z, &k)) in buf.iter_mut().zip(&self.wavenumbers).enumerate() {
            // The Nyquist mode has no sign; drop it for odd derivatives.
            *z = if j == n / 2 { Complex64::new(0.0, 0.0) } else { *z * Complex64::new(0.0, k) };
        }
        self.inverse(&mut buf);
        buf
    }
}

/// `k_j = 2π j / L` for `j ∈ [-N/2, N/2)`, laid out in FFT order.
pub fn wavenumbers(grid: &SpatialGrid) -> Vec<f64> {
    let n = grid.len() as i64;
    let dk = 2.0 * PI / grid.length();
    (0..n)
        .map(|j| {
            let m = if j < n / 2 { j } else { j - n };
            m as f64 * dk
        })
        .collect()
}
