use num_complex::Complex64;
use serde::Serialize;

use super::potential::{NonlinearitySpec, Potential};
use crate::error::{Error, Result};
use crate::spectral::Spectral;
use crate::wave::{SpatialGrid, WaveFunction};

/// Propagation aborts once `|norm − norm₀|` exceeds this.
pub const NORM_DRIFT_LIMIT: f64 = 1e-6;

/// Upper bound on `dt · max|U + κ|ψ|^{2p}| / ħ`.
pub const PHASE_STEP_LIMIT: f64 = 0.5;

/// Strang split-step integrator for a fixed grid and step size:
/// half kinetic step, full potential + nonlinear step at the midpoint time,
/// half kinetic step.
#[derive(Debug, Clone)]
pub struct SplitStep {
    grid: SpatialGrid,
    spectral: Spectral,
    kinetic_half: Vec<Complex64>,
    dt: f64,
    hbar: f64,
}

impl SplitStep {
    /// `dt` may be negative (backward propagation).
    pub fn new(grid: SpatialGrid, hbar: f64, mass: f64, dt: f64) -> Result<Self> {
        if !(dt.is_finite() && dt != 0.0) {
            return Err(Error::Domain { name: "dt", value: dt, domain: "finite, non-zero" });
        }
        let spectral = Spectral::new(&grid);
        let kinetic_half = spectral
            .wavenumbers()
            .iter()
            .map(|&k| Complex64::from_polar(1.0, -hbar * k * k * dt / (4.0 * mass)))
            .collect();
        Ok(Self { grid, spectral, kinetic_half, dt, hbar })
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    fn kinetic(&self, buf: &mut [Complex64]) {
        self.spectral.forward(buf);
        for (z, phase) in buf.iter_mut().zip(&self.kinetic_half) {
            *z *= phase;
        }
        self.spectral.inverse(buf);
    }

    /// Advances the samples in place from `t` to `t + dt`.
    pub fn advance(&self, buf: &mut [Complex64], t: f64, potential: &dyn Potential, nl: &NonlinearitySpec) {
        self.kinetic(buf);
        let t_mid = t + 0.5 * self.dt;
        for (z, x) in buf.iter_mut().zip(self.grid.points()) {
            // |ψ| is constant under this sub-step, so freezing the density is exact.
            let energy = potential.value(x, t_mid) + nl.energy_density(z.norm_sqr());
            *z *= Complex64::from_polar(1.0, -energy * self.dt / self.hbar);
        }
        self.kinetic(buf);
    }

    pub fn step(
        &self,
        psi: &WaveFunction,
        t: f64,
        potential: &dyn Potential,
        nl: &NonlinearitySpec,
    ) -> Result<WaveFunction> {
        if *psi.grid() != self.grid {
            return Err(Error::GridMismatch);
        }
        let mut buf = psi.amplitudes().to_vec();
        self.advance(&mut buf, t, potential, nl);
        psi.with_amplitudes(buf)
    }
}

/// A single Strang step of size `dt > 0`.
pub fn step_strang(
    psi: &WaveFunction,
    t: f64,
    dt: f64,
    potential: &dyn Potential,
    nl: &NonlinearitySpec,
) -> Result<WaveFunction> {
    if dt.is_nan() || dt <= 0.0 {
        return Err(Error::Domain { name: "dt", value: dt, domain: "(0, ∞)" });
    }
    SplitStep::new(*psi.grid(), psi.hbar(), psi.mass(), dt)?.step(psi, t, potential, nl)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PropagationSettings {
    pub t_final: f64,
    pub dt: f64,
    /// Record every this many steps; the final state is always recorded.
    pub sample_every: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrajectoryMeta {
    pub settings: PropagationSettings,
    pub steps: usize,
    pub nonlinearity: NonlinearitySpec,
    pub grid: SpatialGrid,
    pub initial_norm: f64,
    /// Largest `|norm − norm₀|` over the recorded samples.
    pub max_norm_drift: f64,
}

#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<WaveFunction>,
    pub meta: TrajectoryMeta,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn last(&self) -> Option<(f64, &WaveFunction)> {
        self.times.last().copied().zip(self.states.last())
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, &WaveFunction)> {
        self.times.iter().copied().zip(&self.states)
    }
}

fn step_count(t_final: f64, dt: f64) -> Result<usize> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::Domain { name: "dt", value: dt, domain: "(0, ∞)" });
    }
    if !(t_final > 0.0 && t_final.is_finite()) {
        return Err(Error::Domain { name: "t_final", value: t_final, domain: "(0, ∞)" });
    }
    let steps = (t_final / dt).round();
    if (steps * dt - t_final).abs() > 1e-9 * t_final || steps < 1.0 {
        return Err(Error::InvalidParameter(format!("t_final = {t_final} is not a whole number of steps dt = {dt}")));
    }
    Ok(steps as usize)
}

fn check_phase_step(
    psi: &WaveFunction,
    potential: &dyn Potential,
    nl: &NonlinearitySpec,
    dt: f64,
    t_final: f64,
) -> Result<()> {
    let grid = psi.grid();
    let worst = [0.0, t_final]
        .iter()
        .flat_map(|&t| {
            grid.points()
                .zip(psi.amplitudes())
                .map(move |(x, z)| (potential.value(x, t) + nl.energy_density(z.norm_sqr())).abs())
        })
        .fold(0.0, f64::max);
    let phase = dt * worst / psi.hbar();
    if phase >= PHASE_STEP_LIMIT {
        return Err(Error::InvalidParameter(format!(
            "dt = {dt} too large: per-step phase {phase:.3} exceeds {PHASE_STEP_LIMIT}"
        )));
    }
    Ok(())
}

/// Integrates from `t = 0` to `t_final` with repeated Strang steps.
pub fn propagate(
    psi0: &WaveFunction,
    potential: &dyn Potential,
    nl: &NonlinearitySpec,
    settings: PropagationSettings,
) -> Result<Trajectory> {
    let steps = step_count(settings.t_final, settings.dt)?;
    if settings.sample_every == 0 {
        return Err(Error::InvalidParameter("sample_every must be at least 1".into()));
    }
    check_phase_step(psi0, potential, nl, settings.dt, settings.t_final)?;
    let stepper = SplitStep::new(*psi0.grid(), psi0.hbar(), psi0.mass(), settings.dt)?;
    let norm0 = psi0.norm()?;

    let mut times = vec![0.0];
    let mut states = vec![psi0.clone()];
    let mut buf = psi0.amplitudes().to_vec();
    let mut max_drift = 0.0_f64;
    for i in 0..steps {
        let t = i as f64 * settings.dt;
        stepper.advance(&mut buf, t, potential, nl);
        let done = i + 1;
        if done % settings.sample_every == 0 || done == steps {
            let state = psi0.with_amplitudes(buf.clone())?;
            let t_now = done as f64 * settings.dt;
            let drift = match state.norm() {
                Ok(n) => (n - norm0).abs(),
                Err(_) => f64::INFINITY,
            };
            if drift > NORM_DRIFT_LIMIT {
                return Err(Error::NormDrift { t: t_now, drift });
            }
            max_drift = max_drift.max(drift);
            times.push(t_now);
            states.push(state);
        }
    }
    Ok(Trajectory {
        times,
        states,
        meta: TrajectoryMeta {
            settings,
            steps,
            nonlinearity: *nl,
            grid: *psi0.grid(),
            initial_norm: norm0,
            max_norm_drift: max_drift,
        },
    })
}
