//! Configuration, dispatch and report writing for the `ncym` binary.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use ncym::fields::solver::{random_start, solve_stationary, FieldReport, SolverOptions};
use ncym::io::{spectrum_csv, ConnectionJson};
use ncym::qbundle::QvbForm;
use ncym::random;
use ncym::verify::{self, VerifySummary};
use ncym::{Calculus, GaugeConnection, PolynomialPotential, Side, C64};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RunMode {
    #[default]
    Verify,
    Solve,
    Spectrum,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectrumSide {
    #[default]
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub mode: RunMode,
    pub algebra_size: usize,
    pub charge: i64,
    pub potential: Vec<f64>,
    pub solver: SolverOptions,
    pub out: PathBuf,
    /// Spectrum grade; every grade when absent.
    pub grade: Option<usize>,
    pub side: SpectrumSide,
    /// Starting connection for `solve`, replacing the random one.
    pub connection: Option<ConnectionJson>,
    /// Count convention-sensitive verify checks as failures.
    pub strict: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            mode: RunMode::Verify,
            algebra_size: 2,
            charge: 1,
            potential: Vec::new(),
            solver: SolverOptions::default(),
            out: PathBuf::from("out"),
            grade: None,
            side: SpectrumSide::Left,
            connection: None,
            strict: false,
        }
    }
}

/// A rejected configuration: where, and what was wrong.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigError {
    pub field: String,
    pub line: Option<usize>,
    pub column: Option<usize>,
    pub message: String,
}

impl ConfigError {
    pub fn field(field: &str, message: impl Into<String>) -> Self {
        ConfigError {
            field: field.to_string(),
            line: None,
            column: None,
            message: message.into(),
        }
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "config error")?;
        if let (Some(l), Some(c)) = (self.line, self.column) {
            write!(f, " at line {l} column {c}")?;
        }
        if !self.field.is_empty() && self.field != "." {
            write!(f, " in field `{}`", self.field)?;
        }
        write!(f, ": {}", self.message)
    }
}

impl std::error::Error for ConfigError {}

impl RunConfig {
    /// Parses a JSON document. Unknown fields are rejected.
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let field = e.path().to_string();
            let inner = e.into_inner();
            let line = (inner.line() > 0).then_some(inner.line());
            let column = (inner.column() > 0).then_some(inner.column());
            let full = inner.to_string();
            let message = match full.rfind(" at line ") {
                Some(i) => full[..i].to_string(),
                None => full,
            };
            ConfigError {
                field,
                line,
                column,
                message,
            }
        })
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.algebra_size < 2 {
            return Err(ConfigError::field("algebra_size", "must be at least 2"));
        }
        if let Err(e) = Calculus::<C64>::new(self.algebra_size) {
            return Err(ConfigError::field("algebra_size", e.to_string()));
        }
        if self.mode == RunMode::Verify && self.algebra_size != 2 {
            return Err(ConfigError::field("algebra_size", "verify runs on M_2 only"));
        }
        if let Some(i) = self.potential.iter().position(|c| !c.is_finite()) {
            return Err(ConfigError::field(&format!("potential[{i}]"), "coefficient is not finite"));
        }
        if !(self.solver.tolerance > 0.0 && self.solver.tolerance.is_finite()) {
            return Err(ConfigError::field("solver.tolerance", "must be positive and finite"));
        }
        if let Err(e) = self.solver.validate() {
            return Err(ConfigError::field("solver", e.to_string()));
        }
        let dim = self.algebra_size * self.algebra_size - 1;
        if let Some(k) = self.grade {
            if k > dim {
                return Err(ConfigError::field("grade", format!("grade {k} exceeds the top grade {dim}")));
            }
        }
        if let Some(c) = &self.connection {
            let a = c
                .to_connection()
                .map_err(|e| ConfigError::field("connection", e.to_string()))?;
            if a.potential().dim() != dim || a.potential().size() != self.algebra_size {
                return Err(ConfigError::field(
                    "connection.A",
                    format!("expected {dim} matrices of size {0}x{0}", self.algebra_size),
                ));
            }
        }
        Ok(())
    }
}

/// Command-line overrides; `None` leaves the file value alone.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Overrides {
    pub mode: Option<RunMode>,
    pub seed: Option<u64>,
    pub tolerance: Option<f64>,
    pub max_iter: Option<usize>,
    pub charge: Option<i64>,
    pub potential: Option<String>,
    pub out: Option<PathBuf>,
    pub grade: Option<usize>,
    pub algebra_size: Option<usize>,
    pub equations: Option<ncym::fields::solver::SolveMode>,
    pub method: Option<ncym::fields::solver::Method>,
    pub connection: Option<PathBuf>,
    pub strict: bool,
}

impl Overrides {
    pub fn apply(&self, cfg: &mut RunConfig) -> Result<(), ConfigError> {
        if let Some(m) = self.mode {
            cfg.mode = m;
        }
        if let Some(s) = self.seed {
            cfg.solver.seed = s;
        }
        if let Some(t) = self.tolerance {
            cfg.solver.tolerance = t;
        }
        if let Some(m) = self.max_iter {
            cfg.solver.max_iter = m;
        }
        if let Some(n) = self.charge {
            cfg.charge = n;
        }
        if let Some(p) = &self.potential {
            let v = PolynomialPotential::parse(p).map_err(|e| ConfigError::field("--potential", e.to_string()))?;
            cfg.potential = v.coeffs().to_vec();
        }
        if let Some(o) = &self.out {
            cfg.out = o.clone();
        }
        if let Some(k) = self.grade {
            cfg.grade = Some(k);
        }
        if let Some(n) = self.algebra_size {
            cfg.algebra_size = n;
        }
        if let Some(e) = self.equations {
            cfg.solver.mode = e;
        }
        if let Some(m) = self.method {
            cfg.solver.method = m;
        }
        if let Some(path) = &self.connection {
            let text = fs::read_to_string(path)
                .map_err(|e| ConfigError::field("--connection", format!("{}: {e}", path.display())))?;
            let c: ConnectionJson = serde_json::from_str(&text)
                .map_err(|e| ConfigError::field("--connection", e.to_string()))?;
            cfg.connection = Some(c);
        }
        cfg.strict |= self.strict;
        Ok(())
    }
}

/// Adjointness of the covariant derivative at one extra charge.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChargeTest {
    pub charge: i64,
    pub adjoint_defect: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    #[serde(flatten)]
    pub field: FieldReport,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub charge_tests: Vec<ChargeTest>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Outcome {
    Verify(VerifySummary),
    Solve(Box<SolveReport>),
    Spectrum(Vec<(usize, Vec<f64>)>),
}

impl Outcome {
    /// 0 on success, 1 on a failed check or non-convergence.
    pub fn exit_code(&self) -> i32 {
        match self {
            Outcome::Verify(s) if !s.ok() => 1,
            Outcome::Solve(r) if !r.field.converged => 1,
            _ => 0,
        }
    }
}

#[derive(Debug)]
pub enum RunError {
    Config(ConfigError),
    Io(std::io::Error),
    Compute(ncym::Error),
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunError::Config(e) => e.fmt(f),
            RunError::Io(e) => write!(f, "i/o error: {e}"),
            RunError::Compute(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for RunError {}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Config(_) => 2,
            RunError::Io(_) | RunError::Compute(_) => 1,
        }
    }
}

impl From<ConfigError> for RunError {
    fn from(e: ConfigError) -> Self {
        RunError::Config(e)
    }
}

impl From<std::io::Error> for RunError {
    fn from(e: std::io::Error) -> Self {
        RunError::Io(e)
    }
}

impl From<ncym::Error> for RunError {
    fn from(e: ncym::Error) -> Self {
        RunError::Compute(e)
    }
}

fn charge_test(calc: &Calculus<C64>, a: &GaugeConnection<C64>, n: i64, seed: u64) -> ncym::Result<ChargeTest> {
    let mut rng = random::rng(seed ^ n as u64);
    let mut worst: f64 = 0.0;
    for i in 0..20 {
        let side = if i % 2 == 0 { Side::Left } else { Side::Right };
        let k = i % 3;
        let x = QvbForm::new(n, side, random::form(calc, &mut rng, k));
        let y = QvbForm::new(n, side, random::form(calc, &mut rng, k + 1));
        let lhs = calc.qvb_inner(&calc.cov_exterior(a, &x)?, &y)?;
        let rhs = calc.qvb_inner(&x, &calc.cov_codifferential(a, &y)?)?;
        worst = worst.max((lhs - rhs).norm());
    }
    Ok(ChargeTest {
        charge: n,
        adjoint_defect: worst,
    })
}

fn write_json<T: Serialize>(dir: &Path, name: &str, value: &T) -> Result<(), RunError> {
    fs::create_dir_all(dir)?;
    let mut text = serde_json::to_string_pretty(value).map_err(|e| RunError::Compute(e.into()))?;
    text.push('\n');
    fs::write(dir.join(name), text)?;
    Ok(())
}

/// Validates, runs and writes `report.json` or `spectrum.csv` under `cfg.out`.
pub fn run(cfg: &RunConfig) -> Result<Outcome, RunError> {
    cfg.validate()?;
    let outcome = match cfg.mode {
        RunMode::Verify => {
            let summary = verify::run(cfg.solver.seed, cfg.strict);
            write_json(&cfg.out, "report.json", &summary)?;
            Outcome::Verify(summary)
        }
        RunMode::Solve => {
            let calc = Calculus::<C64>::new(cfg.algebra_size)?;
            let v = PolynomialPotential::new(cfg.potential.clone())?;
            let mut start = random_start(&calc, cfg.solver.mode, cfg.charge, v, cfg.solver.seed)?;
            let mut tests = Vec::new();
            if let Some(c) = &cfg.connection {
                start = start.with_connection(c.to_connection()?);
                tests = c.charge_tests.clone();
            }
            let (end, field) = solve_stationary(&calc, &start, &cfg.solver)?;
            let charge_tests = tests
                .iter()
                .map(|n| charge_test(&calc, &end.connection, *n, cfg.solver.seed))
                .collect::<ncym::Result<Vec<_>>>()?;
            let report = SolveReport { field, charge_tests };
            write_json(&cfg.out, "report.json", &report)?;
            Outcome::Solve(Box::new(report))
        }
        RunMode::Spectrum => {
            let calc = Calculus::<C64>::new(cfg.algebra_size)?;
            let side = match cfg.side {
                SpectrumSide::Left => Side::Left,
                SpectrumSide::Right => Side::Right,
            };
            let grades: Vec<usize> = match cfg.grade {
                Some(k) => vec![k],
                None => (0..=calc.dim()).collect(),
            };
            let spectra = grades
                .into_iter()
                .map(|k| Ok((k, calc.spectrum(k, side)?)))
                .collect::<Result<Vec<_>, RunError>>()?;
            fs::create_dir_all(&cfg.out)?;
            fs::write(cfg.out.join("spectrum.csv"), spectrum_csv(&spectra))?;
            Outcome::Spectrum(spectra)
        }
    };
    Ok(outcome)
}
