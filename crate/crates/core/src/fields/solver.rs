//! Stationary points by descent on the squared residual norms.
//!
//! The unknowns are the real and imaginary parts of the potential
//! coefficients and of the section coefficients, as far as the mode uses
//! them. The objective is `½Σ‖R‖²` over the mode's field equations, with
//! Hodge norms. Its gradient `Jᵀr` takes the Jacobian from central
//! differences of the residual map.

use std::collections::BTreeMap;
use std::time::Instant;

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::fd::{relative_error, ActionKind, Variation};
use super::{hodge_norm, FieldConfiguration, PolynomialPotential};
use crate::error::{Error, Result};
use crate::io::{form_to_json, matrix_to_json, FormJson, MatrixJson};
use crate::matforms::{blade, Calculus, DiffForm};
use crate::matrix::Matrix;
use crate::qbundle::GaugeConnection;
use crate::random;
use crate::scalar::C64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveMode {
    /// Connection only, residual `d^{⋆L}dA`.
    YangMills,
    /// Charge-0 sections, connection fixed to `ω^triv`.
    ScalarMatter,
    /// Connection and both sections.
    Ymsm,
}

impl SolveMode {
    fn uses_connection(self) -> bool {
        self != SolveMode::ScalarMatter
    }

    fn uses_sections(self) -> bool {
        self != SolveMode::YangMills
    }

    pub fn action(self) -> ActionKind {
        match self {
            SolveMode::YangMills => ActionKind::YangMills,
            SolveMode::ScalarMatter => ActionKind::ScalarMatter,
            SolveMode::Ymsm => ActionKind::Total,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Steepest descent, Barzilai–Borwein trial steps, Armijo backtracking.
    GradientDescent,
    /// Levenberg–Marquardt damped Gauss–Newton.
    GaussNewton,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SolverOptions {
    pub mode: SolveMode,
    pub method: Method,
    pub tolerance: f64,
    pub max_iter: usize,
    pub seed: u64,
    /// Step of the central differences used for the Jacobian.
    pub jacobian_step: f64,
    /// Random directions per equation in the report's gradient check.
    pub gradient_checks: usize,
    pub check_step: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            mode: SolveMode::YangMills,
            method: Method::GradientDescent,
            tolerance: 1e-8,
            max_iter: 100_000,
            seed: 42,
            jacobian_step: 1e-6,
            gradient_checks: 5,
            check_step: 1e-6,
        }
    }
}

impl SolverOptions {
    pub fn validate(&self) -> Result<()> {
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(Error::Domain(format!("tolerance {} must be positive", self.tolerance)));
        }
        if !(self.jacobian_step > 0.0 && self.check_step > 0.0) {
            return Err(Error::Domain("difference steps must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Converged,
    MaxIterations,
    /// The line search could not decrease the objective any further.
    Stalled,
    /// Not run; the report only evaluates the configuration.
    Evaluated,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ActionValues {
    pub ym: f64,
    /// `[re, im]`.
    pub gsm: [f64; 2],
    pub total: [f64; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GradientRow {
    pub direction: String,
    pub index: usize,
    pub analytic: f64,
    pub finite_difference: f64,
    pub relative_error: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GradientCheck {
    pub action: ActionKind,
    pub step: f64,
    pub rows: Vec<GradientRow>,
    pub max_relative_error: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConfigurationJson {
    pub charge: i64,
    #[serde(rename = "A")]
    pub a: FormJson,
    pub left: MatrixJson,
    pub right: MatrixJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub wall_seconds: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldReport {
    pub ledger: String,
    pub mode: SolveMode,
    pub method: Method,
    pub algebra_size: usize,
    pub charge: i64,
    pub potential: Vec<f64>,
    pub seed: u64,
    pub tolerance: f64,
    pub max_iter: usize,
    pub iterations: usize,
    pub converged: bool,
    pub status: Status,
    pub actions: ActionValues,
    /// Hodge norm of each field equation's residual.
    pub residuals: BTreeMap<String, f64>,
    pub total_residual: f64,
    pub curvature_norm: f64,
    pub gradient_check: GradientCheck,
    pub configuration: ConfigurationJson,
    pub timing: Timing,
}

impl FieldReport {
    /// The report with the wall-clock field zeroed, for byte comparisons.
    pub fn without_timing(&self) -> Self {
        FieldReport {
            timing: Timing { wall_seconds: 0.0 },
            ..self.clone()
        }
    }
}

/// Random initial data for a mode: potential and section entries uniform in
/// `[−1, 1)` where the mode uses them, zero elsewhere. Scalar matter forces
/// charge 0.
pub fn random_start(
    calc: &Calculus<C64>,
    mode: SolveMode,
    charge: i64,
    potential: PolynomialPotential,
    seed: u64,
) -> Result<FieldConfiguration<C64>> {
    let mut rng = random::rng(seed);
    let n = calc.size();
    let connection = if mode.uses_connection() {
        GaugeConnection::new(random::form(calc, &mut rng, 1))?
    } else {
        GaugeConnection::trivial(n)
    };
    let (p1, p2) = if mode.uses_sections() {
        (random::matrix(&mut rng, n), random::matrix(&mut rng, n))
    } else {
        (Matrix::zeros(n), Matrix::zeros(n))
    };
    let charge = if mode == SolveMode::ScalarMatter { 0 } else { charge };
    FieldConfiguration::new(connection, charge, p1, p2, potential)
}

struct Problem<'a> {
    calc: &'a Calculus<C64>,
    base: FieldConfiguration<C64>,
    mode: SolveMode,
    weight: f64,
}

impl Problem<'_> {
    fn pack(&self, cfg: &FieldConfiguration<C64>) -> Vec<f64> {
        let mut x = Vec::new();
        let mut push = |p: &Matrix<C64>| {
            for z in p.entries() {
                x.push(z.re);
                x.push(z.im);
            }
        };
        if self.mode.uses_connection() {
            for b in blade::of_grade(self.calc.dim(), 1) {
                push(&cfg.connection.potential().coeff(b));
            }
        }
        if self.mode.uses_sections() {
            push(&cfg.left.coeff);
            push(&cfg.right.coeff);
        }
        x
    }

    fn unpack(&self, x: &[f64]) -> Result<FieldConfiguration<C64>> {
        let n = self.calc.size();
        let mut chunks = x.chunks(2 * n * n).map(|c| {
            Matrix::from_row_major(c.chunks(2).map(|z| C64::new(z[0], z[1])).collect())
        });
        let mut cfg = self.base.clone();
        if self.mode.uses_connection() {
            let coeffs = (0..self.calc.dim())
                .map(|_| chunks.next().expect("coordinate vector too short"))
                .collect::<Result<Vec<_>>>()?;
            cfg.connection = GaugeConnection::new(DiffForm::one_form(&coeffs)?)?;
        }
        if self.mode.uses_sections() {
            let p1 = chunks.next().expect("coordinate vector too short")?;
            let p2 = chunks.next().expect("coordinate vector too short")?;
            cfg = cfg.with_sections(p1, p2);
        }
        Ok(cfg)
    }

    fn residual(&self, x: &[f64]) -> Result<DVector<f64>> {
        let cfg = self.unpack(x)?;
        let mut r = Vec::new();
        for (_, form, k) in residual_forms(self.calc, &cfg, self.mode)? {
            for z in self.calc.coordinates(&form, k) {
                r.push(z.re * self.weight);
                r.push(z.im * self.weight);
            }
        }
        let r = DVector::from_vec(r);
        if r.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("residual evaluation".into()));
        }
        Ok(r)
    }

    fn jacobian(&self, x: &[f64], m: usize, h: f64) -> Result<DMatrix<f64>> {
        let mut j = DMatrix::zeros(m, x.len());
        let mut xp = x.to_vec();
        for i in 0..x.len() {
            xp[i] = x[i] + h;
            let plus = self.residual(&xp)?;
            xp[i] = x[i] - h;
            let minus = self.residual(&xp)?;
            xp[i] = x[i];
            j.set_column(i, &((plus - minus) / (2.0 * h)));
        }
        Ok(j)
    }
}

/// The residual forms of a mode with their names and grades.
pub fn residual_forms(
    calc: &Calculus<C64>,
    cfg: &FieldConfiguration<C64>,
    mode: SolveMode,
) -> Result<Vec<(&'static str, DiffForm<C64>, usize)>> {
    Ok(match mode {
        SolveMode::YangMills => vec![("yang_mills", calc.ym_residual(&cfg.connection).left, 1)],
        SolveMode::ScalarMatter => {
            let (l, r) = calc.sm_residuals(
                std::slice::from_ref(&cfg.left.coeff),
                std::slice::from_ref(&cfg.right.coeff),
                &cfg.potential,
            );
            vec![
                ("scalar_matter_left", DiffForm::function(l[0].clone()), 0),
                ("scalar_matter_right", DiffForm::function(r[0].clone()), 0),
            ]
        }
        SolveMode::Ymsm => {
            let conn = calc.ymsm_connection_residual(cfg)?;
            let (r1, r2) = calc.ymsm_section_residuals(cfg)?;
            vec![
                ("connection", conn, 1),
                ("section_left", r1.form, 0),
                ("section_right", r2.form, 0),
            ]
        }
    })
}

/// Evaluates actions, residuals and the gradient check at `cfg`.
pub fn evaluate(
    calc: &Calculus<C64>,
    cfg: &FieldConfiguration<C64>,
    opts: &SolverOptions,
    iterations: usize,
    status: Status,
) -> Result<FieldReport> {
    let residuals: BTreeMap<String, f64> = residual_forms(calc, cfg, opts.mode)?
        .into_iter()
        .map(|(name, f, _)| (name.to_string(), hodge_norm(calc, &f)))
        .collect();
    let total_residual = residuals.values().map(|v| v * v).sum::<f64>().sqrt();
    let gsm = calc.gsm_action(cfg)?;
    let total = calc.total_action(cfg)?;
    let actions = ActionValues {
        ym: calc.ym_action(&cfg.connection).re,
        gsm: [gsm.re, gsm.im],
        total: [total.re, total.im],
    };
    let converged = residuals.values().all(|v| *v <= opts.tolerance);
    Ok(FieldReport {
        ledger: calc.ledger().id.to_string(),
        mode: opts.mode,
        method: opts.method,
        algebra_size: calc.size(),
        charge: cfg.charge(),
        potential: cfg.potential.coeffs().to_vec(),
        seed: opts.seed,
        tolerance: opts.tolerance,
        max_iter: opts.max_iter,
        iterations,
        converged: converged && status != Status::Stalled,
        status,
        actions,
        residuals,
        total_residual,
        curvature_norm: hodge_norm(calc, &calc.curvature(&cfg.connection)),
        gradient_check: gradient_check(calc, cfg, opts)?,
        configuration: ConfigurationJson {
            charge: cfg.charge(),
            a: form_to_json(cfg.connection.potential()),
            left: matrix_to_json(&cfg.left.coeff),
            right: matrix_to_json(&cfg.right.coeff),
        },
        timing: Timing { wall_seconds: 0.0 },
    })
}

/// Finite-difference against analytic derivatives of the mode's action along
/// seeded random directions.
pub fn gradient_check(
    calc: &Calculus<C64>,
    cfg: &FieldConfiguration<C64>,
    opts: &SolverOptions,
) -> Result<GradientCheck> {
    let mut rng = random::rng(opts.seed ^ 0x9e37_79b9_7f4a_7c15);
    let kind = opts.mode.action();
    let mut rows = Vec::new();
    for index in 0..opts.gradient_checks {
        let mut dirs = Vec::new();
        if opts.mode.uses_connection() {
            dirs.push(Variation::Connection(random::form(calc, &mut rng, 1)));
        }
        if opts.mode.uses_sections() {
            dirs.push(Variation::LeftSection(random::matrix(&mut rng, calc.size())));
            dirs.push(Variation::RightSection(random::matrix(&mut rng, calc.size())));
        }
        for v in dirs {
            let analytic = calc.action_gradient_analytic(cfg, kind, &v)?;
            let finite_difference = calc.action_gradient_fd(cfg, kind, &v, opts.check_step)?;
            rows.push(GradientRow {
                direction: v.label().to_string(),
                index,
                analytic,
                finite_difference,
                relative_error: relative_error(analytic, finite_difference),
            });
        }
    }
    let max_relative_error = rows.iter().map(|r| r.relative_error).fold(0.0, f64::max);
    Ok(GradientCheck {
        action: kind,
        step: opts.check_step,
        rows,
        max_relative_error,
    })
}

/// Descends `½Σ‖R‖²` from `start`. Running out of iterations or stalling
/// yields a non-converged report; a non-finite residual is an error.
pub fn solve_stationary(
    calc: &Calculus<C64>,
    start: &FieldConfiguration<C64>,
    opts: &SolverOptions,
) -> Result<(FieldConfiguration<C64>, FieldReport)> {
    opts.validate()?;
    start.check()?;
    if opts.mode == SolveMode::ScalarMatter && start.charge() != 0 {
        return Err(Error::Domain("scalar matter needs charge-0 sections".into()));
    }
    let clock = Instant::now();
    let problem = Problem {
        calc,
        base: start.clone(),
        mode: opts.mode,
        weight: (1.0 / calc.size() as f64).sqrt(),
    };
    let mut x = DVector::from_vec(problem.pack(start));
    let mut r = problem.residual(x.as_slice())?;
    let mut iterations = 0;
    let mut status = Status::MaxIterations;
    let mut bb_step = 1.0;
    let mut prev: Option<(DVector<f64>, DVector<f64>)> = None;
    let mut damping = 1e-3;
    let converged = |p: &Problem, x: &DVector<f64>| -> Result<bool> {
        let cfg = p.unpack(x.as_slice())?;
        Ok(residual_forms(calc, &cfg, opts.mode)?
            .iter()
            .all(|(_, f, _)| hodge_norm(calc, f) <= opts.tolerance))
    };
    while iterations < opts.max_iter {
        if converged(&problem, &x)? {
            status = Status::Converged;
            break;
        }
        iterations += 1;
        let phi = 0.5 * r.norm_squared();
        let jac = problem.jacobian(x.as_slice(), r.len(), opts.jacobian_step)?;
        let grad = jac.transpose() * &r;
        let gnorm2 = grad.norm_squared();
        if !gnorm2.is_finite() {
            return Err(Error::NonFinite("gradient".into()));
        }
        if gnorm2 == 0.0 {
            status = Status::Stalled;
            break;
        }
        let accepted = match opts.method {
            Method::GradientDescent => {
                if let Some((xo, go)) = &prev {
                    let s = &x - xo;
                    let y = &grad - go;
                    let sy = s.dot(&y);
                    bb_step = if sy > 0.0 { s.norm_squared() / sy } else { 1.0 };
                }
                prev = Some((x.clone(), grad.clone()));
                let mut alpha = bb_step;
                let mut found = None;
                for _ in 0..80 {
                    let xn = &x - &grad * alpha;
                    let rn = problem.residual(xn.as_slice())?;
                    let phin = 0.5 * rn.norm_squared();
                    if phin <= phi - 1e-4 * alpha * gnorm2 {
                        found = Some((xn, rn));
                        break;
                    }
                    alpha *= 0.5;
                }
                found
            }
            Method::GaussNewton => {
                let jtj = jac.transpose() * &jac;
                let mut found = None;
                for _ in 0..60 {
                    let mut lhs = jtj.clone();
                    for i in 0..lhs.nrows() {
                        lhs[(i, i)] += damping * (1.0 + jtj[(i, i)]);
                    }
                    let step = lhs
                        .cholesky()
                        .map(|c| c.solve(&grad))
                        .ok_or_else(|| Error::NonFinite("damped normal equations".into()))?;
                    let xn = &x - &step;
                    let rn = problem.residual(xn.as_slice())?;
                    if 0.5 * rn.norm_squared() < phi {
                        damping = (damping / 3.0).max(1e-12);
                        found = Some((xn, rn));
                        break;
                    }
                    damping *= 4.0;
                }
                found
            }
        };
        match accepted {
            Some((xn, rn)) => {
                x = xn;
                r = rn;
            }
            None => {
                status = if converged(&problem, &x)? { Status::Converged } else { Status::Stalled };
                break;
            }
        }
    }
    if status == Status::MaxIterations && converged(&problem, &x)? {
        status = Status::Converged;
    }
    let cfg = problem.unpack(x.as_slice())?;
    let mut report = evaluate(calc, &cfg, opts, iterations, status)?;
    report.timing.wall_seconds = clock.elapsed().as_secs_f64();
    Ok((cfg, report))
}

/// Squared residual norm `Σ‖R‖²` of a mode at `cfg`.
pub fn residual_norm_sqr(
    calc: &Calculus<C64>,
    cfg: &FieldConfiguration<C64>,
    mode: SolveMode,
) -> Result<f64> {
    Ok(residual_forms(calc, cfg, mode)?
        .iter()
        .map(|(_, f, _)| hodge_norm(calc, f).powi(2))
        .sum())
}

/// A random unit-scale direction generator used by the reports and tests.
pub fn random_variation(calc: &Calculus<C64>, rng: &mut impl Rng, which: usize) -> Variation {
    match which % 3 {
        0 => Variation::Connection(random::form(calc, rng, 1)),
        1 => Variation::LeftSection(random::matrix(rng, calc.size())),
        _ => Variation::RightSection(random::matrix(rng, calc.size())),
    }
}
