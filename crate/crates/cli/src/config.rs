//! Scenario parameters, the flat `key = value` config format, and the frozen
//! per-scenario defaults.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scenario {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Custom,
}

impl Scenario {
    pub const ALL: [Scenario; 6] =
        [Scenario::Fig1, Scenario::Fig2, Scenario::Fig3, Scenario::Fig4, Scenario::Fig5, Scenario::Custom];

    pub fn name(self) -> &'static str {
        match self {
            Scenario::Fig1 => "fig1",
            Scenario::Fig2 => "fig2",
            Scenario::Fig3 => "fig3",
            Scenario::Fig4 => "fig4",
            Scenario::Fig5 => "fig5",
            Scenario::Custom => "custom",
        }
    }

    /// fig4 and fig5 compare the three orders against each other, so `p` is
    /// not a free parameter there; the box scenario is cubic only.
    pub fn fixed_order(self) -> Option<&'static str> {
        match self {
            Scenario::Fig3 => Some("the box scenario is cubic (p = 1)"),
            Scenario::Fig4 | Scenario::Fig5 => Some("this scenario runs p = 0, 1 and 2 side by side"),
            _ => None,
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scenario {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        Scenario::ALL
            .into_iter()
            .find(|sc| sc.name() == s)
            .ok_or_else(|| CliError::field("scenario", format!("unknown scenario {s:?} (fig1..fig5, custom)")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioConfig {
    pub scenario: Scenario,
    pub hbar: f64,
    pub mass: f64,
    pub omega0: f64,
    pub omega1: f64,
    pub tau: f64,
    /// Box length at `t = 0` and its constant rate of change.
    pub lambda0: f64,
    pub velocity: f64,
    pub kappa: Vec<f64>,
    pub p: u8,
    pub x_min: f64,
    pub x_max: f64,
    pub grid: usize,
    pub dt: f64,
    /// Trace intervals over `[0, τ]`.
    pub samples: usize,
    /// Couplings for the speed limit at `τ/2` (fig2, fig5) or at `box_sweep_time` (fig3).
    pub sweep_kappa: Vec<f64>,
    pub box_t_max: f64,
    pub box_points: usize,
    pub box_sweep_time: f64,
}

fn linspace(start: f64, stop: f64, count: usize) -> Vec<f64> {
    (0..count).map(|i| start + (stop - start) * i as f64 / (count - 1) as f64).collect()
}

impl ScenarioConfig {
    pub fn defaults(scenario: Scenario) -> Self {
        let mut cfg = Self {
            scenario,
            hbar: 1.0,
            mass: 1.0,
            omega0: 5.0,
            omega1: 1.0,
            tau: 2.0,
            lambda0: 1.0,
            velocity: 1.0,
            kappa: vec![0.0, 5.0, 10.0],
            p: 1,
            x_min: -8.0,
            x_max: 8.0,
            grid: 1024,
            dt: 1e-4,
            samples: 200,
            sweep_kappa: linspace(0.0, 10.0, 21),
            box_t_max: 1.0,
            box_points: 101,
            box_sweep_time: 1.0,
        };
        match scenario {
            Scenario::Fig1 | Scenario::Fig2 => {}
            Scenario::Fig3 => {
                cfg.kappa = vec![0.0, 0.25, 0.5];
                cfg.sweep_kappa = linspace(0.0, 0.5, 21);
            }
            Scenario::Fig4 | Scenario::Fig5 => cfg.kappa = vec![10.0],
            Scenario::Custom => cfg.kappa = vec![1.0],
        }
        cfg
    }

    /// Applies one `key = value` assignment.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let value = value.trim();
        match key.trim() {
            "hbar" => self.hbar = parse(key, value)?,
            "mass" | "m" => self.mass = parse(key, value)?,
            "omega0" => self.omega0 = parse(key, value)?,
            "omega1" => self.omega1 = parse(key, value)?,
            "tau" => self.tau = parse(key, value)?,
            "lambda0" => self.lambda0 = parse(key, value)?,
            "velocity" | "v" => self.velocity = parse(key, value)?,
            "kappa" => self.kappa = parse_list(key, value)?,
            "p" => self.p = parse(key, value)?,
            "x_min" => self.x_min = parse(key, value)?,
            "x_max" => self.x_max = parse(key, value)?,
            "grid" => self.grid = parse(key, value)?,
            "dt" => self.dt = parse(key, value)?,
            "samples" => self.samples = parse(key, value)?,
            "sweep_kappa" => self.sweep_kappa = parse_list(key, value)?,
            "box_t_max" => self.box_t_max = parse(key, value)?,
            "box_points" => self.box_points = parse(key, value)?,
            "box_sweep_time" => self.box_sweep_time = parse(key, value)?,
            other => return Err(CliError::field(other, "unknown key")),
        }
        Ok(())
    }

    /// Reads a flat config: one `key = value` per line, `#` starts a comment.
    pub fn apply_file(&mut self, text: &str) -> Result<()> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Config(format!("line {}: expected key = value, got {line:?}", lineno + 1)))?;
            self.set(key, value)?;
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("hbar", self.hbar),
            ("mass", self.mass),
            ("omega0", self.omega0),
            ("omega1", self.omega1),
            ("tau", self.tau),
            ("lambda0", self.lambda0),
            ("dt", self.dt),
        ];
        for (name, value) in positive {
            if !(value > 0.0 && value.is_finite()) {
                return Err(CliError::field(name, format!("must be positive and finite, got {value}")));
            }
        }
        if !self.velocity.is_finite() {
            return Err(CliError::field("velocity", "must be finite"));
        }
        if self.kappa.is_empty() {
            return Err(CliError::field("kappa", "list must not be empty"));
        }
        for (name, list) in [("kappa", &self.kappa), ("sweep_kappa", &self.sweep_kappa)] {
            if let Some(bad) = list.iter().find(|k| !(k.is_finite() && **k >= 0.0)) {
                return Err(CliError::field(name, format!("couplings must be finite and ≥ 0, got {bad}")));
            }
        }
        if self.p > 2 {
            return Err(CliError::field("p", format!("must be 0, 1 or 2, got {}", self.p)));
        }
        if self.p == 0 && self.kappa.iter().any(|&k| k != 0.0) {
            return Err(CliError::field("p", "p = 0 is linear dynamics; every kappa must be 0"));
        }
        if self.x_max.partial_cmp(&self.x_min) != Some(std::cmp::Ordering::Greater) {
            return Err(CliError::field("x_max", "must exceed x_min"));
        }
        if self.grid < 16 || !self.grid.is_power_of_two() {
            return Err(CliError::field("grid", format!("must be a power of two ≥ 16, got {}", self.grid)));
        }
        if self.samples == 0 {
            return Err(CliError::field("samples", "must be ≥ 1"));
        }
        if self.box_points < 2 {
            return Err(CliError::field("box_points", "must be ≥ 2"));
        }
        if !(self.box_t_max >= 0.0 && self.box_sweep_time >= 0.0) {
            return Err(CliError::field("box_t_max", "box times must be ≥ 0"));
        }
        Ok(())
    }
}

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T>
where
    T::Err: fmt::Display,
{
    value.parse().map_err(|e| CliError::field(key.trim(), format!("{value:?}: {e}")))
}

pub fn parse_list(key: &str, value: &str) -> Result<Vec<f64>> {
    value.split(',').map(|item| parse(key, item.trim())).collect()
}
