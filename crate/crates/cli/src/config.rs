//! Flat `key = value` scenario files, flag overrides and the resolved
//! scenario each subcommand runs.
//!
//! Lines are `key = value`; `#` starts a comment. Unknown keys are errors so
//! a misspelled parameter never falls back to a default silently.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use nonmarkov::kernel::{MemoryFunction, MemoryMethod, Regime, ReservoirSpec, DEFAULT_STEP};
use nonmarkov::numerics::ComplexMatrix;
use nonmarkov::state::{make_phi, make_psi, make_werner, pure_to_density, DensityMatrix};
use nonmarkov::Complex64;

use crate::error::{CliError, CliResult};
use crate::format::fmt_g;

/// Canonical keys, in the order they are recorded.
pub const KEYS: [&str; 16] = [
    "family",
    "alpha2",
    "delta",
    "lambda",
    "method",
    "tmax",
    "samples",
    "step",
    "fidelity",
    "state_file",
    "markov_model",
    "dead_tol",
    "out",
    "emit_gnuplot",
    "seed",
    "tol",
];

fn canonical(key: &str) -> Option<&'static str> {
    let key = key.trim().replace('-', "_");
    let alias = match key.as_str() {
        "state_family" => "family",
        "lambda_over_gamma0" => "lambda",
        "t_max" => "tmax",
        "output_path" => "out",
        other => other,
    };
    KEYS.iter().copied().find(|k| *k == alias)
}

fn config_err(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

/// Raw settings before resolution: later writes win.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Settings {
    values: BTreeMap<&'static str, String>,
}

impl Settings {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn parse(text: &str) -> CliResult<Self> {
        let mut settings = Self::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                config_err(format!(
                    "line {}: expected `key = value`, got `{line}`",
                    lineno + 1
                ))
            })?;
            settings
                .set(key, value.trim())
                .map_err(|e| config_err(format!("line {}: {}", lineno + 1, strip(e))))?;
        }
        Ok(settings)
    }

    pub fn from_file(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::parse(&text)
    }

    pub fn set(&mut self, key: &str, value: impl Into<String>) -> CliResult<()> {
        let k =
            canonical(key).ok_or_else(|| config_err(format!("unknown key `{}`", key.trim())))?;
        self.values.insert(k, value.into());
        Ok(())
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        canonical(key)
            .and_then(|k| self.values.get(k))
            .map(String::as_str)
    }

    /// `other` overrides `self`.
    pub fn merged(mut self, other: &Settings) -> Self {
        for (k, v) in &other.values {
            self.values.insert(k, v.clone());
        }
        self
    }

    fn number(&self, key: &str) -> CliResult<Option<f64>> {
        self.get(key).map(|v| parse_number(key, v)).transpose()
    }
}

fn strip(e: CliError) -> String {
    match e {
        CliError::Config(m) => m,
        other => other.to_string(),
    }
}

fn parse_number(key: &str, value: &str) -> CliResult<f64> {
    let x: f64 = value
        .trim()
        .parse()
        .map_err(|_| config_err(format!("{key}: `{value}` is not a number")))?;
    if !x.is_finite() {
        return Err(config_err(format!(
            "{key}: value must be finite, got {value}"
        )));
    }
    Ok(x)
}

fn parse_count(key: &str, value: &str) -> CliResult<usize> {
    value
        .trim()
        .parse()
        .map_err(|_| config_err(format!("{key}: `{value}` is not a non-negative integer")))
}

fn parse_bool(key: &str, value: &str) -> CliResult<bool> {
    match value.trim() {
        "true" | "yes" | "1" | "on" => Ok(true),
        "false" | "no" | "0" | "off" => Ok(false),
        other => Err(config_err(format!("{key}: `{other}` is not a boolean"))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Pfunc,
    Concurrence,
    Surface,
    Compare,
    Validate,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Pfunc => "pfunc",
            Command::Concurrence => "concurrence",
            Command::Surface => "surface",
            Command::Compare => "compare",
            Command::Validate => "validate",
        }
    }
}

/// Inclusive linear range `start:end:count`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sweep {
    pub start: f64,
    pub end: f64,
    pub count: usize,
}

impl Sweep {
    pub fn parse(key: &str, text: &str) -> CliResult<Self> {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 {
            return Err(config_err(format!(
                "{key}: sweep must be `start:end:count`, got `{text}`"
            )));
        }
        let sweep = Sweep {
            start: parse_number(key, parts[0])?,
            end: parse_number(key, parts[1])?,
            count: parse_count(key, parts[2])?,
        };
        if sweep.count == 0 {
            return Err(config_err(format!("{key}: sweep `{text}` is empty")));
        }
        if sweep.count > 1 && !(sweep.end > sweep.start) {
            return Err(config_err(format!(
                "{key}: sweep `{text}` needs end > start"
            )));
        }
        Ok(sweep)
    }

    pub fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        let step = (self.end - self.start) / (self.count - 1) as f64;
        (0..self.count)
            .map(|k| {
                if k + 1 == self.count {
                    self.end
                } else {
                    self.start + k as f64 * step
                }
            })
            .collect()
    }

    fn record(&self) -> String {
        format!("{}:{}:{}", fmt_g(self.start), fmt_g(self.end), self.count)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Alpha2 {
    Fixed(f64),
    Sweep(Sweep),
}

impl Alpha2 {
    fn parse(text: &str) -> CliResult<Self> {
        let a = if text.contains(':') {
            Alpha2::Sweep(Sweep::parse("alpha2", text)?)
        } else {
            Alpha2::Fixed(parse_number("alpha2", text)?)
        };
        let (lo, hi) = match a {
            Alpha2::Fixed(x) => (x, x),
            Alpha2::Sweep(s) => (s.start, s.end),
        };
        if lo < 0.0 || hi > 1.0 {
            return Err(config_err(format!(
                "alpha2 must lie in [0, 1], got `{text}`"
            )));
        }
        Ok(a)
    }

    pub fn values(&self) -> Vec<f64> {
        match self {
            Alpha2::Fixed(x) => vec![*x],
            Alpha2::Sweep(s) => s.values(),
        }
    }

    fn record(&self) -> String {
        match self {
            Alpha2::Fixed(x) => fmt_g(*x),
            Alpha2::Sweep(s) => s.record(),
        }
    }
}

/// Initial two-qubit state.
#[derive(Debug, Clone)]
pub enum InitialState {
    /// `alpha |01> + beta |10>`
    Phi,
    /// `alpha |00> + beta |11>`
    Psi,
    Werner {
        fidelity: f64,
    },
    Custom {
        path: String,
        rho: DensityMatrix,
    },
}

impl InitialState {
    pub fn name(&self) -> &'static str {
        match self {
            InitialState::Phi => "phi",
            InitialState::Psi => "psi",
            InitialState::Werner { .. } => "werner",
            InitialState::Custom { .. } => "custom",
        }
    }

    fn uses_alpha(&self) -> bool {
        matches!(self, InitialState::Phi | InitialState::Psi)
    }

    /// Density matrix at `alpha2` (ignored by Werner and custom states).
    pub fn density(&self, alpha2: f64, delta: f64) -> CliResult<DensityMatrix> {
        let alpha = alpha2.clamp(0.0, 1.0).sqrt();
        Ok(match self {
            InitialState::Phi => pure_to_density(&make_phi(alpha, delta)?)?,
            InitialState::Psi => pure_to_density(&make_psi(alpha, delta)?)?,
            InitialState::Werner { fidelity } => make_werner(*fidelity)?,
            InitialState::Custom { rho, .. } => rho.clone(),
        })
    }
}

/// Reads a 4x4 complex matrix written as 16 lines of `re im`, row-major.
pub fn read_state_file(path: &Path) -> CliResult<DensityMatrix> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let mut entries = Vec::with_capacity(16);
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [re, im] = fields[..] else {
            return Err(config_err(format!(
                "{}: line {}: expected `re im`, got `{line}`",
                path.display(),
                lineno + 1
            )));
        };
        entries.push(Complex64::new(
            parse_number("state_file", re)?,
            parse_number("state_file", im)?,
        ));
    }
    if entries.len() != 16 {
        return Err(config_err(format!(
            "{}: expected 16 entries, found {}",
            path.display(),
            entries.len()
        )));
    }
    let m = ComplexMatrix::from_vec(4, 4, entries)?;
    DensityMatrix::new(m).map_err(|e| config_err(format!("{}: {e}", path.display())))
}

/// Memory-function evaluation requested on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodChoice {
    /// Closed form in whichever regime applies.
    Closed,
    /// Closed form, insisting on strong coupling.
    ClosedStrong,
    /// Closed form, insisting on weak coupling.
    ClosedWeak,
    Ode,
    Quadrature,
    /// `P = e^{-t}` regardless of lambda.
    Markov,
}

impl MethodChoice {
    fn parse(text: &str) -> CliResult<Self> {
        Ok(match text.trim() {
            "closed" => MethodChoice::Closed,
            "closed-strong" => MethodChoice::ClosedStrong,
            "closed-weak" => MethodChoice::ClosedWeak,
            "ode" => MethodChoice::Ode,
            "quadrature" => MethodChoice::Quadrature,
            "markov" => MethodChoice::Markov,
            other => {
                return Err(config_err(format!(
                    "method: unknown `{other}` (closed, closed-strong, closed-weak, ode, quadrature, markov)"
                )))
            }
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            MethodChoice::Closed => "closed",
            MethodChoice::ClosedStrong => "closed-strong",
            MethodChoice::ClosedWeak => "closed-weak",
            MethodChoice::Ode => "ode",
            MethodChoice::Quadrature => "quadrature",
            MethodChoice::Markov => "markov",
        }
    }

    /// Whether `P` is evaluated exactly, so event endpoints can be refined.
    pub fn is_exact(self) -> bool {
        !matches!(self, MethodChoice::Ode | MethodChoice::Quadrature)
    }
}

/// Reference curve of `compare`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MarkovModel {
    /// Closed form at the second lambda.
    Closed,
    /// Pure exponential `e^{-t}`.
    Exponential,
}

impl MarkovModel {
    fn parse(text: &str) -> CliResult<Self> {
        match text.trim() {
            "closed" => Ok(MarkovModel::Closed),
            "exponential" => Ok(MarkovModel::Exponential),
            other => Err(config_err(format!(
                "markov_model: unknown `{other}` (closed, exponential)"
            ))),
        }
    }

    fn name(self) -> &'static str {
        match self {
            MarkovModel::Closed => "closed",
            MarkovModel::Exponential => "exponential",
        }
    }
}

pub const DEFAULT_SAMPLES: usize = 2001;
pub const DEFAULT_TMAX: f64 = 20.0;
pub const DEFAULT_ALPHA2_SWEEP: Sweep = Sweep {
    start: 0.0,
    end: 1.0,
    count: 201,
};
pub const DEFAULT_LAMBDA: f64 = 0.1;
pub const DEFAULT_MARKOV_LAMBDA: f64 = 5.0;

/// Everything a sweep subcommand needs, validated.
#[derive(Debug, Clone)]
pub struct ScenarioConfig {
    pub command: Command,
    pub state: InitialState,
    pub alpha2: Alpha2,
    pub delta: f64,
    /// One value, or two for `compare` (non-Markovian first).
    pub lambdas: Vec<f64>,
    pub method: MethodChoice,
    pub t_max: f64,
    pub samples: usize,
    pub step: f64,
    pub markov_model: MarkovModel,
    pub dead_tol: f64,
    pub out: Option<PathBuf>,
    pub emit_gnuplot: bool,
}

impl ScenarioConfig {
    pub fn resolve(command: Command, s: &Settings) -> CliResult<Self> {
        if command == Command::Validate {
            return Err(config_err("validate takes a ValidateConfig"));
        }
        let state = match s.get("family").unwrap_or("phi").trim() {
            "phi" => InitialState::Phi,
            "psi" => InitialState::Psi,
            "werner" => {
                let fidelity = s
                    .number("fidelity")?
                    .ok_or_else(|| config_err("family werner needs `fidelity`"))?;
                if !(0.0..=1.0).contains(&fidelity) {
                    return Err(config_err(format!(
                        "fidelity must lie in [0, 1], got {fidelity}"
                    )));
                }
                InitialState::Werner { fidelity }
            }
            "custom" | "custom-matrix-file" => {
                let path = s
                    .get("state_file")
                    .ok_or_else(|| config_err("family custom needs `state_file`"))?
                    .trim()
                    .to_string();
                let rho = read_state_file(Path::new(&path))?;
                InitialState::Custom { path, rho }
            }
            other => {
                return Err(config_err(format!(
                    "family: unknown `{other}` (phi, psi, werner, custom)"
                )))
            }
        };

        let alpha2 = match s.get("alpha2") {
            Some(text) => Alpha2::parse(text)?,
            None if command == Command::Surface => Alpha2::Sweep(DEFAULT_ALPHA2_SWEEP),
            None => Alpha2::Fixed(0.5),
        };
        match (command, alpha2) {
            (Command::Surface, Alpha2::Fixed(_)) => {
                return Err(config_err(
                    "surface needs alpha2 as a sweep `start:end:count`",
                ))
            }
            (Command::Concurrence | Command::Compare, Alpha2::Sweep(_)) => {
                return Err(config_err(format!(
                    "{} needs a single alpha2 value",
                    command.name()
                )))
            }
            _ => {}
        }
        if command == Command::Surface && !state.uses_alpha() {
            return Err(config_err(
                "surface sweeps alpha2 and needs family phi or psi",
            ));
        }

        let lambdas: Vec<f64> = match s.get("lambda") {
            Some(text) => text
                .split(',')
                .map(|v| parse_number("lambda", v))
                .collect::<CliResult<_>>()?,
            None if command == Command::Compare => vec![DEFAULT_LAMBDA, DEFAULT_MARKOV_LAMBDA],
            None => vec![DEFAULT_LAMBDA],
        };
        let wanted = if command == Command::Compare { 2 } else { 1 };
        if lambdas.len() != wanted {
            return Err(config_err(format!(
                "{} needs {wanted} lambda value(s), got {}",
                command.name(),
                lambdas.len()
            )));
        }
        if let Some(bad) = lambdas.iter().find(|&&l| !(l > 0.0)) {
            return Err(config_err(format!("lambda must be positive, got {bad}")));
        }

        let cfg = ScenarioConfig {
            command,
            state,
            alpha2,
            delta: s.number("delta")?.unwrap_or(0.0),
            lambdas,
            method: s
                .get("method")
                .map(MethodChoice::parse)
                .transpose()?
                .unwrap_or(MethodChoice::Closed),
            t_max: s.number("tmax")?.unwrap_or(DEFAULT_TMAX),
            samples: s
                .get("samples")
                .map(|v| parse_count("samples", v))
                .transpose()?
                .unwrap_or(DEFAULT_SAMPLES),
            step: s.number("step")?.unwrap_or(DEFAULT_STEP),
            markov_model: s
                .get("markov_model")
                .map(MarkovModel::parse)
                .transpose()?
                .unwrap_or(MarkovModel::Closed),
            dead_tol: s
                .number("dead_tol")?
                .unwrap_or(nonmarkov::entanglement::DEFAULT_DEAD_TOL),
            out: s
                .get("out")
                .map(str::trim)
                .filter(|p| *p != "-")
                .map(PathBuf::from),
            emit_gnuplot: s
                .get("emit_gnuplot")
                .map(|v| parse_bool("emit_gnuplot", v))
                .transpose()?
                .unwrap_or(false),
        };
        if cfg.samples < 2 {
            return Err(config_err(format!(
                "samples must be at least 2, got {}",
                cfg.samples
            )));
        }
        if !(cfg.t_max > 0.0) {
            return Err(config_err(format!(
                "tmax must be positive, got {}",
                cfg.t_max
            )));
        }
        if !(cfg.step > 0.0) {
            return Err(config_err(format!(
                "step must be positive, got {}",
                cfg.step
            )));
        }
        if !(cfg.dead_tol > 0.0) {
            return Err(config_err(format!(
                "dead_tol must be positive, got {}",
                cfg.dead_tol
            )));
        }
        if cfg.emit_gnuplot && cfg.out.is_none() {
            return Err(config_err("emit_gnuplot needs an output file (`out`)"));
        }
        // Surface regime mismatches before any work is done.
        for &lambda in cfg.memory_lambdas() {
            cfg.memory(lambda)?;
        }
        Ok(cfg)
    }

    /// The lambdas evaluated with `method`; the Markov reference of
    /// `compare` always uses the closed form or the exponential.
    fn memory_lambdas(&self) -> &[f64] {
        &self.lambdas[..1]
    }

    /// `P` evaluator for `lambda` under the configured method.
    pub fn memory(&self, lambda: f64) -> CliResult<MemoryFunction> {
        let spec = ReservoirSpec::from_ratio(lambda)?;
        let method = match self.method {
            MethodChoice::Closed => MemoryMethod::ClosedForm,
            MethodChoice::ClosedStrong | MethodChoice::ClosedWeak => {
                let need = if self.method == MethodChoice::ClosedStrong {
                    Regime::Strong
                } else {
                    Regime::Weak
                };
                if spec.regime() != need {
                    return Err(config_err(format!(
                        "method {} needs {} coupling, but lambda = {} is {}",
                        self.method.name(),
                        need.name(),
                        fmt_g(lambda),
                        spec.regime().name()
                    )));
                }
                MemoryMethod::ClosedForm
            }
            MethodChoice::Ode => MemoryMethod::VolterraOde { step: self.step },
            MethodChoice::Quadrature => MemoryMethod::VolterraQuadrature { step: self.step },
            MethodChoice::Markov => MemoryMethod::MarkovLimit,
        };
        Ok(MemoryFunction::new(spec, method))
    }

    /// Reference curve of `compare`.
    pub fn markov_memory(&self) -> CliResult<MemoryFunction> {
        let spec = ReservoirSpec::from_ratio(self.lambdas[self.lambdas.len() - 1])?;
        let method = match self.markov_model {
            MarkovModel::Closed => MemoryMethod::ClosedForm,
            MarkovModel::Exponential => MemoryMethod::MarkovLimit,
        };
        Ok(MemoryFunction::new(spec, method))
    }

    pub fn times(&self) -> CliResult<Vec<f64>> {
        Ok(nonmarkov::kernel::time_grid(self.t_max, self.samples)?)
    }

    /// One line recording every setting that affects the numbers written.
    /// Output location is left out so the same scenario always produces the
    /// same bytes.
    pub fn record(&self) -> String {
        let mut line = format!(
            "command={} family={}",
            self.command.name(),
            self.state.name()
        );
        match &self.state {
            InitialState::Phi | InitialState::Psi => {
                let _ = write!(
                    line,
                    " alpha2={} delta={}",
                    self.alpha2.record(),
                    fmt_g(self.delta)
                );
            }
            InitialState::Werner { fidelity } => {
                let _ = write!(line, " fidelity={}", fmt_g(*fidelity));
            }
            InitialState::Custom { path, .. } => {
                let _ = write!(line, " state_file={path}");
            }
        }
        let lambdas: Vec<String> = self.lambdas.iter().map(|&l| fmt_g(l)).collect();
        let _ = write!(
            line,
            " lambda={} method={} tmax={} samples={}",
            lambdas.join(","),
            self.method.name(),
            fmt_g(self.t_max),
            self.samples
        );
        if !self.method.is_exact() || self.command == Command::Pfunc {
            let _ = write!(line, " step={}", fmt_g(self.step));
        }
        if self.command == Command::Compare {
            let _ = write!(line, " markov_model={}", self.markov_model.name());
        }
        if self.command == Command::Concurrence {
            let _ = write!(line, " dead_tol={}", fmt_g(self.dead_tol));
        }
        line
    }
}

pub const DEFAULT_SEED: u64 = 20_100_101;

/// Settings of the `validate` suite.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidateConfig {
    pub seed: u64,
    /// Replaces every check tolerance when set.
    pub tol: Option<f64>,
    pub out: Option<PathBuf>,
}

impl ValidateConfig {
    pub fn resolve(s: &Settings) -> CliResult<Self> {
        let seed = match s.get("seed") {
            Some(v) => v
                .trim()
                .parse()
                .map_err(|_| config_err(format!("seed: `{v}` is not an unsigned integer")))?,
            None => DEFAULT_SEED,
        };
        let tol = s.number("tol")?;
        if let Some(t) = tol {
            if !(t > 0.0) {
                return Err(config_err(format!("tol must be positive, got {t}")));
            }
        }
        Ok(Self {
            seed,
            tol,
            out: s
                .get("out")
                .map(str::trim)
                .filter(|p| *p != "-")
                .map(PathBuf::from),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn settings(text: &str) -> Settings {
        Settings::parse(text).unwrap()
    }

    #[test]
    fn parses_comments_and_aliases() {
        let s = settings(
            "# scenario\nstate_family = psi\nlambda_over_gamma0 = 0.01 # strong\n\nt_max=50\n",
        );
        assert_eq!(s.get("family"), Some("psi"));
        assert_eq!(s.get("lambda"), Some("0.01"));
        assert_eq!(s.get("tmax"), Some("50"));
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let err = Settings::parse("lamda = 0.1").unwrap_err();
        assert!(
            matches!(err, CliError::Config(ref m) if m.contains("lamda")),
            "{err}"
        );
        assert!(Settings::parse("just words").is_err());
    }

    #[test]
    fn flags_override_file() {
        let file = settings("lambda = 0.1\nfamily = psi");
        let mut flags = Settings::new();
        flags.set("lambda", "5").unwrap();
        let merged = file.merged(&flags);
        assert_eq!(merged.get("lambda"), Some("5"));
        assert_eq!(merged.get("family"), Some("psi"));
    }

    #[test]
    fn sweeps() {
        let s = Sweep::parse("alpha2", "0:1:5").unwrap();
        assert_eq!(s.values(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        assert_eq!(
            Sweep::parse("alpha2", "0.3:0.3:1").unwrap().values(),
            vec![0.3]
        );
        assert!(Sweep::parse("alpha2", "0:1:0").is_err());
        assert!(Sweep::parse("alpha2", "1:0:3").is_err());
        assert!(Sweep::parse("alpha2", "0:1").is_err());
    }

    #[test]
    fn defaults_per_command() {
        let empty = Settings::new();
        let surface = ScenarioConfig::resolve(Command::Surface, &empty).unwrap();
        assert_eq!(surface.alpha2, Alpha2::Sweep(DEFAULT_ALPHA2_SWEEP));
        assert_eq!(surface.samples, 2001);
        assert_eq!(surface.t_max, 20.0);
        let compare = ScenarioConfig::resolve(Command::Compare, &empty).unwrap();
        assert_eq!(compare.lambdas, vec![0.1, 5.0]);
        assert_eq!(compare.alpha2, Alpha2::Fixed(0.5));
    }

    #[test]
    fn command_shape_errors() {
        let sweep = settings("alpha2 = 0:1:3");
        assert!(ScenarioConfig::resolve(Command::Concurrence, &sweep).is_err());
        assert!(ScenarioConfig::resolve(Command::Surface, &settings("alpha2 = 0.5")).is_err());
        assert!(ScenarioConfig::resolve(
            Command::Surface,
            &settings("family = werner\nfidelity = 0.5")
        )
        .is_err());
        assert!(ScenarioConfig::resolve(Command::Compare, &settings("lambda = 0.1")).is_err());
        assert!(ScenarioConfig::resolve(Command::Pfunc, &settings("lambda = 0.1,5")).is_err());
        assert!(
            ScenarioConfig::resolve(Command::Concurrence, &settings("family = werner")).is_err()
        );
        assert!(ScenarioConfig::resolve(Command::Concurrence, &settings("samples = 1")).is_err());
        assert!(ScenarioConfig::resolve(Command::Concurrence, &settings("tmax = -2")).is_err());
        assert!(
            ScenarioConfig::resolve(Command::Concurrence, &settings("emit_gnuplot = true"))
                .is_err()
        );
        assert!(ScenarioConfig::resolve(Command::Concurrence, &settings("alpha2 = 1.5")).is_err());
    }

    #[test]
    fn regime_mismatch_is_a_config_error() {
        let err = ScenarioConfig::resolve(
            Command::Pfunc,
            &settings("method = closed-strong\nlambda = 5"),
        )
        .unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(ScenarioConfig::resolve(
            Command::Pfunc,
            &settings("method = closed-weak\nlambda = 5")
        )
        .is_ok());
        assert!(ScenarioConfig::resolve(
            Command::Pfunc,
            &settings("method = closed-weak\nlambda = 0.1")
        )
        .is_err());
    }

    #[test]
    fn record_is_stable() {
        let cfg = ScenarioConfig::resolve(
            Command::Concurrence,
            &settings("family = psi\nalpha2 = 0.3333\nout = x.csv"),
        )
        .unwrap();
        assert_eq!(
            cfg.record(),
            "command=concurrence family=psi alpha2=0.3333 delta=0 lambda=0.1 method=closed tmax=20 samples=2001 dead_tol=1e-09"
        );
    }

    #[test]
    fn validate_settings() {
        let v = ValidateConfig::resolve(&settings("seed = 7\ntol = 1e-16")).unwrap();
        assert_eq!(v.seed, 7);
        assert_eq!(v.tol, Some(1e-16));
        assert!(ValidateConfig::resolve(&settings("seed = -1")).is_err());
        assert_eq!(
            ValidateConfig::resolve(&Settings::new()).unwrap().seed,
            DEFAULT_SEED
        );
    }
}
