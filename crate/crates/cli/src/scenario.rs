//! The figure scenarios. Everything here is pure computation; writing the
//! curves out is left to [`RunOutput::write`].

use std::path::Path;

use nlqsl_core::dynamics::{
    ground_state_gaussian, propagate, HarmonicRamp, NonlinearitySpec, PropagationSettings, RampedTrap, Trajectory,
};
use nlqsl_core::par::{self, Execution};
use nlqsl_core::qsl::{qsl_numeric, qsl_trace, QslTerms};
use nlqsl_core::square_well::{qsl_box, Regime};
use nlqsl_core::{SpatialGrid, WaveFunction};

use crate::config::{Scenario, ScenarioConfig};
use crate::error::{CliError, Result};
use crate::output::{label, Curve, Diagnostics, FileEntry, Manifest, Method};

pub struct RunOutput {
    pub curves: Vec<Curve>,
    pub manifest: Manifest,
}

impl RunOutput {
    pub fn curve(&self, file: &str) -> Option<&Curve> {
        self.curves.iter().find(|c| c.file == file)
    }

    /// Writes every curve, then the manifest, into `dir` (created if needed).
    pub fn write(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir).map_err(|source| CliError::Io { path: dir.display().to_string(), source })?;
        for curve in &self.curves {
            curve.write(dir)?;
        }
        self.manifest.write(dir)?;
        Ok(())
    }
}

/// One propagated harmonic-ramp run.
struct Harmonic<'a> {
    cfg: &'a ScenarioConfig,
    trap: RampedTrap,
    psi0: WaveFunction,
}

/// `|‖ψ‖² − 1|` maximized over every recorded sample.
fn norm_drift(traj: &Trajectory) -> Result<f64> {
    let mut worst = 0.0_f64;
    for (_, psi) in traj.iter() {
        worst = worst.max((psi.norm()? - 1.0).abs());
    }
    Ok(worst)
}

impl<'a> Harmonic<'a> {
    fn new(cfg: &'a ScenarioConfig) -> Result<Self> {
        let grid = SpatialGrid::new(cfg.x_min, cfg.x_max, cfg.grid)?;
        let trap = HarmonicRamp::new(cfg.omega0, cfg.omega1, cfg.tau)?.with_mass(cfg.mass);
        let psi0 = ground_state_gaussian(grid, cfg.mass, cfg.omega0, cfg.hbar)?;
        Ok(Self { cfg, trap, psi0 })
    }

    fn run(&self, nl: &NonlinearitySpec, t_final: f64, sample_every: usize) -> Result<Trajectory> {
        let settings = PropagationSettings { t_final, dt: self.cfg.dt, sample_every };
        Ok(propagate(&self.psi0, &self.trap, nl, settings)?)
    }

    fn sample_every(&self) -> Result<usize> {
        let steps = (self.cfg.tau / self.cfg.dt).round();
        if (steps * self.cfg.dt - self.cfg.tau).abs() > 1e-9 * self.cfg.tau || steps < 1.0 {
            return Err(CliError::field("dt", format!("tau = {} is not a whole number of steps", self.cfg.tau)));
        }
        let steps = steps as usize;
        if !steps.is_multiple_of(self.cfg.samples) {
            return Err(CliError::field(
                "samples",
                format!("{} steps over tau do not split into {} equal intervals", steps, self.cfg.samples),
            ));
        }
        Ok(steps / self.cfg.samples)
    }

    /// `(x, |ψ|, Re ψ, Im ψ)` at `t = τ`.
    fn final_state(&self, nl: &NonlinearitySpec) -> Result<(Curve, f64)> {
        let traj = self.run(nl, self.cfg.tau, usize::MAX)?;
        let drift = norm_drift(&traj)?;
        let (_, psi) = traj.last().expect("trajectory holds the initial state");
        let mut curve = Curve::new(
            format!("wavefunction_p{}_kappa{}.csv", nl.order(), label(nl.strength())),
            &["x", "abs_psi", "re_psi", "im_psi"],
        );
        for (x, z) in psi.grid().points().zip(psi.amplitudes()) {
            curve.push(vec![x, z.norm(), z.re, z.im]);
        }
        Ok((curve, drift))
    }

    /// `v_QSL(t)` over `[0, τ]`.
    fn trace(&self, nl: &NonlinearitySpec) -> Result<(Curve, f64)> {
        let traj = self.run(nl, self.cfg.tau, self.sample_every()?)?;
        let drift = norm_drift(&traj)?;
        let trace = qsl_trace(&traj, &self.trap, nl, Execution::Sequential)?;
        let mut curve =
            Curve::new(format!("qsl_trace_p{}_kappa{}.csv", nl.order(), label(nl.strength())), &["t", "v_qsl"]);
        for (t, v) in trace.times.iter().zip(&trace.v_qsl) {
            curve.push(vec![*t, checked(*v)?]);
        }
        Ok((curve, drift))
    }

    /// `v_QSL(τ/2)` as a function of the coupling.
    fn sweep(&self, order: u8) -> Result<(Curve, Diagnostics)> {
        let t_half = 0.5 * self.cfg.tau;
        let results = par::try_map(&self.cfg.sweep_kappa, Execution::Parallel, |&kappa| -> Result<(f64, f64)> {
            let nl = NonlinearitySpec::new(order, kappa)?;
            let traj = self.run(&nl, t_half, usize::MAX)?;
            let (t, psi) = traj.last().expect("trajectory holds the initial state");
            Ok((checked(qsl_numeric(psi, &self.trap, t, &nl)?)?, norm_drift(&traj)?))
        })?;
        let mut curve = Curve::new(format!("qsl_sweep_p{order}.csv"), &["kappa", "v_qsl"]);
        let mut diag = Diagnostics::default();
        for (&kappa, (v, drift)) in self.cfg.sweep_kappa.iter().zip(results) {
            curve.push(vec![kappa, v]);
            diag.max_norm_drift = diag.max_norm_drift.max(drift);
            diag.trajectories += 1;
        }
        Ok((curve, diag))
    }
}

fn checked(v: f64) -> Result<f64> {
    if v.is_finite() && v >= 0.0 {
        Ok(v)
    } else {
        Err(CliError::Numerical(nlqsl_core::Error::NonFiniteState))
    }
}

/// The (order, coupling) pairs a scenario propagates.
fn runs(cfg: &ScenarioConfig) -> Result<Vec<NonlinearitySpec>> {
    let mut specs = Vec::new();
    match cfg.scenario {
        Scenario::Fig4 | Scenario::Fig5 => {
            specs.push(NonlinearitySpec::linear());
            for order in [1, 2] {
                for &k in &cfg.kappa {
                    specs.push(NonlinearitySpec::new(order, k)?);
                }
            }
        }
        _ => {
            for &k in &cfg.kappa {
                specs.push(NonlinearitySpec::new(cfg.p, k)?);
            }
        }
    }
    Ok(specs)
}

fn collect<F>(specs: &[NonlinearitySpec], curves: &mut Vec<Curve>, diag: &mut Diagnostics, f: F) -> Result<()>
where
    F: Fn(&NonlinearitySpec) -> Result<(Curve, f64)> + Sync + Send,
{
    for (curve, drift) in par::try_map(specs, Execution::Parallel, f)? {
        curves.push(curve);
        diag.max_norm_drift = diag.max_norm_drift.max(drift);
        diag.trajectories += 1;
    }
    Ok(())
}

fn merge(into: &mut Diagnostics, other: Diagnostics) {
    into.max_norm_drift = into.max_norm_drift.max(other.max_norm_drift);
    into.trajectories += other.trajectories;
}

fn harmonic_scenario(cfg: &ScenarioConfig, curves: &mut Vec<Curve>, notes: &mut Vec<String>) -> Result<Diagnostics> {
    let model = Harmonic::new(cfg)?;
    let specs = runs(cfg)?;
    let mut diag = Diagnostics::default();
    match cfg.scenario {
        Scenario::Fig1 | Scenario::Fig4 => {
            notes.push("wavefunction files hold the state at t = tau".into());
            collect(&specs, curves, &mut diag, |nl| model.final_state(nl))?;
        }
        Scenario::Fig2 | Scenario::Fig5 | Scenario::Custom => {
            model.sample_every()?;
            collect(&specs, curves, &mut diag, |nl| model.trace(nl))?;
            let sweep_orders: &[u8] = match cfg.scenario {
                Scenario::Fig2 => &[cfg.p],
                Scenario::Fig5 => &[1, 2],
                _ => &[],
            };
            if cfg.p == 0 && sweep_orders.contains(&0) && cfg.sweep_kappa.iter().any(|&k| k != 0.0) {
                return Err(CliError::field("sweep_kappa", "p = 0 is linear dynamics; every coupling must be 0"));
            }
            if !sweep_orders.is_empty() {
                notes.push("sweep files hold v_qsl at t = tau/2".into());
            }
            for &order in sweep_orders {
                let (curve, d) = model.sweep(order)?;
                curves.push(curve);
                merge(&mut diag, d);
            }
        }
        Scenario::Fig3 => unreachable!("box scenario has no propagation"),
    }
    Ok(diag)
}

fn box_row(t: f64, terms: QslTerms) -> Result<Vec<f64>> {
    Ok(vec![t, checked(terms.total())?, terms.chemical, terms.position2, terms.position4, terms.momentum])
}

const BOX_HEADER: [&str; 6] = ["t", "v_qsl", "chemical", "position2", "position4", "momentum"];

fn box_scenario(cfg: &ScenarioConfig, curves: &mut Vec<Curve>, notes: &mut Vec<String>) -> Result<()> {
    let times: Vec<f64> = (0..cfg.box_points).map(|i| cfg.box_t_max * i as f64 / (cfg.box_points - 1) as f64).collect();
    let qsl =
        |kappa: f64, t: f64, regime: Regime| qsl_box(kappa, cfg.lambda0, cfg.velocity, t, cfg.mass, cfg.hbar, regime);
    for regime in [Regime::Exact, Regime::Perturbative] {
        let rows = par::try_map(&cfg.kappa, Execution::Parallel, |&kappa| -> Result<Curve> {
            let mut curve = Curve::new(format!("box_qsl_{regime}_kappa{}.csv", label(kappa)), &BOX_HEADER);
            for &t in &times {
                curve.push(box_row(t, qsl(kappa, t, regime)?)?);
            }
            Ok(curve)
        })?;
        curves.extend(rows);
        let sweep = par::try_map(&cfg.sweep_kappa, Execution::Parallel, |&kappa| -> Result<Vec<f64>> {
            let mut row = box_row(kappa, qsl(kappa, cfg.box_sweep_time, regime)?)?;
            row[0] = kappa;
            Ok(row)
        })?;
        let mut header = BOX_HEADER;
        header[0] = "kappa";
        let mut curve = Curve::new(format!("box_sweep_{regime}.csv"), &header);
        for row in sweep {
            curve.push(row);
        }
        curves.push(curve);
    }
    notes.push(format!("box sweep files hold v_qsl at t = {}", cfg.box_sweep_time));
    notes.push("box length grows as lambda0 + velocity * t; moments use the ground state of the box at the current length with the fixed coupling".into());
    notes.push("grid, dt and samples are unused by the analytic box scenario".into());
    Ok(())
}

/// Runs a scenario and returns its curves and manifest without touching disk.
pub fn run_scenario(cfg: &ScenarioConfig) -> Result<RunOutput> {
    cfg.validate()?;
    let mut curves = Vec::new();
    let mut notes = Vec::new();
    let diagnostics = match cfg.scenario {
        Scenario::Fig3 => {
            box_scenario(cfg, &mut curves, &mut notes)?;
            Diagnostics::default()
        }
        _ => harmonic_scenario(cfg, &mut curves, &mut notes)?,
    };
    let files = curves
        .iter()
        .map(|c| FileEntry { file: c.file.clone(), columns: c.header.clone(), rows: c.rows.len() })
        .collect();
    let manifest = Manifest {
        tool: "nlqsl",
        version: env!("CARGO_PKG_VERSION"),
        core_version: nlqsl_core::VERSION,
        config: cfg.clone(),
        method: Method {
            propagator: "Strang split-step Fourier, potential and nonlinearity at the step midpoint",
            speed_limit: "||H psi||^2 / hbar^2 with a spectral kinetic term",
        },
        diagnostics,
        notes,
        files,
    };
    Ok(RunOutput { curves, manifest })
}
