use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use nlqsl::config::parse_list;
use nlqsl::{run_scenario, thread_cap, with_threads, CliError, Scenario, ScenarioConfig, THREADS_ENV};

#[derive(Parser)]
#[command(name = "nlqsl", version, about = "Quantum speed limits of nonlinear Schrödinger dynamics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario and write its CSV curves and manifest.
    Run {
        /// fig1, fig2, fig3, fig4, fig5 or custom
        scenario: String,
        /// Flat `key = value` file; flags below take precedence.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value = "out")]
        out: PathBuf,
        /// Comma-separated couplings.
        #[arg(long, allow_hyphen_values = true)]
        kappa: Option<String>,
        /// Nonlinearity order: 0 linear, 1 cubic, 2 quintic.
        #[arg(long)]
        p: Option<u8>,
        /// Number of grid points.
        #[arg(long)]
        grid: Option<usize>,
        #[arg(long)]
        dt: Option<f64>,
    },
}

fn build_config(command: &Command) -> Result<(ScenarioConfig, PathBuf), CliError> {
    let Command::Run { scenario, config, out, kappa, p, grid, dt } = command;
    let scenario: Scenario = scenario.parse()?;
    let mut cfg = ScenarioConfig::defaults(scenario);
    if let Some(path) = config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("config: cannot read {}: {e}", path.display())))?;
        cfg.apply_file(&text)?;
    }
    if let Some(k) = kappa {
        cfg.kappa = parse_list("kappa", k)?;
    }
    if let Some(p) = *p {
        if let Some(why) = scenario.fixed_order() {
            return Err(CliError::Config(format!("p: {why}")));
        }
        cfg.p = p;
    }
    if let Some(n) = *grid {
        cfg.grid = n;
    }
    if let Some(dt) = *dt {
        cfg.dt = dt;
    }
    Ok((cfg, out.clone()))
}

fn run(cli: &Cli) -> Result<usize, CliError> {
    let (cfg, out) = build_config(&cli.command)?;
    let threads = thread_cap(std::env::var(THREADS_ENV).ok().as_deref())?;
    let output = with_threads(threads, || run_scenario(&cfg))??;
    output.write(&out)?;
    Ok(output.curves.len())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(n) => {
            let Command::Run { out, .. } = &cli.command;
            eprintln!("wrote {n} curves and manifest.json to {}", out.display());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("nlqsl: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
