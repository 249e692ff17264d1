use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::commands::{emit, run_scenario};
use crate::config::{Command, ScenarioConfig, Settings, ValidateConfig};
use crate::error::{CliError, CliResult};
use crate::format::write_text;
use crate::validate::{self, Fault};

#[derive(Debug, Parser)]
#[command(
    name = "nonmarkov",
    version,
    about = "Entanglement dynamics of two qubits in independent non-Markovian reservoirs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Sub,
    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Debug, Clone, Copy, Subcommand)]
pub enum Sub {
    /// Memory function by every method: closed form, both Volterra solvers, Markov limit.
    Pfunc,
    /// Concurrence against time for one initial state, with death and revival events.
    Concurrence,
    /// Concurrence over a (time, alpha^2) grid.
    Surface,
    /// Concurrence for two reservoir widths on a shared grid.
    Compare,
    /// Run the oracle suite; exit 1 if any check fails.
    Validate,
}

impl From<Sub> for Command {
    fn from(s: Sub) -> Self {
        match s {
            Sub::Pfunc => Command::Pfunc,
            Sub::Concurrence => Command::Concurrence,
            Sub::Surface => Command::Surface,
            Sub::Compare => Command::Compare,
            Sub::Validate => Command::Validate,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FaultArg {
    BasisOrder,
}

/// Flags override values read from `--config`.
#[derive(Debug, Clone, Default, Args)]
pub struct Flags {
    /// Initial state: phi, psi, werner or custom.
    #[arg(long, global = true)]
    pub family: Option<String>,
    /// Weight alpha^2, or a sweep `start:end:count` for surface.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub alpha2: Option<String>,
    /// Relative phase of the superposition.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub delta: Option<String>,
    /// Reservoir width lambda / gamma0; compare takes two, `0.1,5`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    /// closed, closed-strong, closed-weak, ode, quadrature or markov.
    #[arg(long, global = true)]
    pub method: Option<String>,
    /// End of the time grid in units of 1/gamma0.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub tmax: Option<String>,
    /// Number of time samples.
    #[arg(long, global = true)]
    pub samples: Option<String>,
    /// Integration step of the Volterra solvers.
    #[arg(long, global = true)]
    pub step: Option<String>,
    /// Werner fidelity.
    #[arg(long, global = true)]
    pub fidelity: Option<String>,
    /// Custom initial state: 16 lines of `re im`, row-major.
    #[arg(long, global = true)]
    pub state_file: Option<String>,
    /// Reference curve of compare: closed or exponential.
    #[arg(long, global = true)]
    pub markov_model: Option<String>,
    /// Concurrence below this counts as dead.
    #[arg(long, global = true)]
    pub dead_tol: Option<String>,
    /// Output file; stdout when absent or `-`.
    #[arg(long, global = true)]
    pub out: Option<String>,
    /// Scenario file of `key = value` lines.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Also write a gnuplot script next to the CSV.
    #[arg(long, global = true)]
    pub emit_gnuplot: bool,
    /// Seed of the validation sampling.
    #[arg(long, global = true)]
    pub seed: Option<String>,
    /// Replace every validation tolerance.
    #[arg(long, global = true)]
    pub tol: Option<String>,
    #[arg(long, global = true, hide = true, value_enum)]
    pub inject_fault: Option<FaultArg>,
}

impl Flags {
    pub fn settings(&self) -> CliResult<Settings> {
        let mut s = Settings::new();
        let pairs = [
            ("family", &self.family),
            ("alpha2", &self.alpha2),
            ("delta", &self.delta),
            ("lambda", &self.lambda),
            ("method", &self.method),
            ("tmax", &self.tmax),
            ("samples", &self.samples),
            ("step", &self.step),
            ("fidelity", &self.fidelity),
            ("state_file", &self.state_file),
            ("markov_model", &self.markov_model),
            ("dead_tol", &self.dead_tol),
            ("out", &self.out),
            ("seed", &self.seed),
            ("tol", &self.tol),
        ];
        for (key, value) in pairs {
            if let Some(v) = value {
                s.set(key, v.clone())?;
            }
        }
        if self.emit_gnuplot {
            s.set("emit_gnuplot", "true")?;
        }
        Ok(s)
    }
}

pub fn settings(flags: &Flags) -> CliResult<Settings> {
    let base = match &flags.config {
        Some(path) => Settings::from_file(path)?,
        None => Settings::new(),
    };
    Ok(base.merged(&flags.settings()?))
}

pub fn run(cli: &Cli) -> CliResult<()> {
    let settings = settings(&cli.flags)?;
    let command = Command::from(cli.command);
    if command == Command::Validate {
        let cfg = ValidateConfig::resolve(&settings)?;
        let fault = cli
            .flags
            .inject_fault
            .map(|FaultArg::BasisOrder| Fault::BasisOrder);
        let report = validate::run(&cfg, fault);
        let text = report.render();
        if let Some(path) = &cfg.out {
            write_text(Some(path), &text)?;
        }
        write_text(None, &text)?;
        return match report.failures() {
            0 => Ok(()),
            n => Err(CliError::ValidationFailed(n)),
        };
    }
    let cfg = ScenarioConfig::resolve(command, &settings)?;
    let table = run_scenario(&cfg)?;
    emit(&cfg, &table)
}
