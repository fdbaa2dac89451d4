use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use ncym_cli::{run, ConfigError, Outcome, Overrides, RunConfig};
use serde::de::DeserializeOwned;

/// Yang-Mills and scalar matter fields on the matrix algebra M_N.
#[derive(Parser, Debug)]
#[command(name = "ncym", version)]
struct Args {
    /// verify | solve | spectrum
    #[arg(long, value_parser = snake::<ncym_cli::RunMode>)]
    mode: Option<ncym_cli::RunMode>,
    /// JSON configuration file; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    max_iter: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    charge: Option<i64>,
    /// Coefficients "c0,c1,..." of V(q) = c0 + c1 q + ...
    #[arg(long, allow_hyphen_values = true)]
    potential: Option<String>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Spectrum grade.
    #[arg(long)]
    grade: Option<usize>,
    /// Algebra size N.
    #[arg(long)]
    size: Option<usize>,
    /// yang_mills | scalar_matter | ymsm
    #[arg(long, value_parser = snake::<ncym::fields::solver::SolveMode>)]
    equations: Option<ncym::fields::solver::SolveMode>,
    /// gradient_descent | gauss_newton
    #[arg(long, value_parser = snake::<ncym::fields::solver::Method>)]
    method: Option<ncym::fields::solver::Method>,
    /// Starting connection JSON for `solve`.
    #[arg(long)]
    connection: Option<PathBuf>,
    /// Treat convention-sensitive verify checks as mandatory.
    #[arg(long)]
    strict: bool,
}

fn snake<T: DeserializeOwned>(s: &str) -> Result<T, String> {
    serde_json::from_value(serde_json::Value::String(s.replace('-', "_"))).map_err(|e| e.to_string())
}

fn load(args: &Args) -> Result<RunConfig, ConfigError> {
    let mut cfg = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| ConfigError::field("--config", format!("{}: {e}", path.display())))?;
            RunConfig::parse(&text)?
        }
        None => RunConfig::default(),
    };
    let o = Overrides {
        mode: args.mode,
        seed: args.seed,
        tolerance: args.tol,
        max_iter: args.max_iter,
        charge: args.charge,
        potential: args.potential.clone(),
        out: args.out.clone(),
        grade: args.grade,
        algebra_size: args.size,
        equations: args.equations,
        method: args.method,
        connection: args.connection.clone(),
        strict: args.strict,
    };
    o.apply(&mut cfg)?;
    Ok(cfg)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let cfg = match load(&args) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(2);
        }
    };
    match run(&cfg) {
        Ok(outcome) => {
            match &outcome {
                Outcome::Verify(s) => {
                    for c in &s.checks {
                        let tag = if c.passed { "ok" } else { "FAIL" };
                        println!("{tag:4} {}::{} measured={:e} tol={:e}", c.module, c.name, c.measured, c.tolerance);
                    }
                    println!(
                        "{} checks: {} passed, {} failed, {} warnings",
                        s.total, s.passed, s.failed, s.warnings
                    );
                }
                Outcome::Solve(r) => {
                    let f = &r.field;
                    println!(
                        "{:?} after {} iterations, residual {:e}, |dA| {:e}",
                        f.status, f.iterations, f.total_residual, f.curvature_norm
                    );
                }
                Outcome::Spectrum(s) => {
                    for (k, v) in s {
                        println!("grade {k}: {} eigenvalues", v.len());
                    }
                }
            }
            println!("wrote {}", cfg.out.display());
            ExitCode::from(outcome.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
