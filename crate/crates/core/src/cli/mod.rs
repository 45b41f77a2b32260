//! Command-line front end.
//!
//! Exit codes: 0 success, 1 validation error, 2 constraint rejection,
//! 3 oracle non-convergence.

pub mod bench;
pub mod wire;

use std::io::{BufRead, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::detector::{classify_sextic, Classification};
use crate::error::Error;
use crate::model_two::A1Formula;
use crate::oracle::{oracle_solve, OracleConfig};
use crate::poly::{evaluate, residual_scale, ComplexScalar, MonicPolynomial};
use crate::sextic::{ConstraintReport, MonicSextic, SexticRoots};
use crate::{model_one, model_two, DEFAULT_TOLERANCE};

use wire::{complex_list_to_json, complex_to_json, Payload, SCHEMA_VERSION};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitCode {
    Success = 0,
    Validation = 1,
    ConstraintRejection = 2,
    NonConvergence = 3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    Json,
    #[default]
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "sextic", version, about = "Solve, detect and invert solvable sextic polynomials")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build coefficients and labelled roots from five parameters.
    Gen(GenArgs),
    /// Solve a sextic, by radicals when it lies in a family.
    Solve(SolveArgs),
    /// Classify a sextic against both families' constraints.
    Check(CheckArgs),
    /// Recover parameters of a family from coefficients.
    Recover(RecoverArgs),
    /// Run the iterative root finder.
    Oracle(OracleArgs),
    /// Time radical and iterative solves on random in-family instances.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub model: Option<u8>,
    /// a0 a1 a2 b0 b1, each `x`, `re,im` or `[re,im]`.
    #[arg(long, num_args = 5, allow_negative_numbers = true)]
    pub params: Option<Vec<String>>,
}

#[derive(Debug, Args)]
pub struct CoeffArgs {
    /// c0 .. c5, each `x`, `re,im` or `[re,im]`. Read from a JSON line on stdin when absent.
    #[arg(long, num_args = 1.., allow_negative_numbers = true)]
    pub coeffs: Option<Vec<String>>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub input: CoeffArgs,
    /// Force a family instead of detecting it.
    #[arg(long)]
    pub model: Option<u8>,
    #[arg(long, allow_hyphen_values = true)]
    pub free: Option<String>,
    #[arg(long)]
    pub tolerance: Option<f64>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub input: CoeffArgs,
    #[arg(long)]
    pub tolerance: Option<f64>,
}

#[derive(Debug, Args)]
pub struct RecoverArgs {
    #[command(flatten)]
    pub input: CoeffArgs,
    #[arg(long)]
    pub model: Option<u8>,
    /// Value of the free parameter (a0 for model 1, b0 for model 2).
    #[arg(long, allow_hyphen_values = true)]
    pub free: Option<String>,
    #[arg(long)]
    pub tolerance: Option<f64>,
    /// Model 2 only: use the published closed form for a1.
    #[arg(long)]
    pub printed_a1: bool,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[command(flatten)]
    pub input: CoeffArgs,
    #[arg(long, default_value_t = OracleConfig::default().max_iterations)]
    pub max_iterations: usize,
    #[arg(long, default_value_t = OracleConfig::default().convergence_tol)]
    pub convergence_tol: f64,
    #[arg(long, default_value_t = OracleConfig::default().seed_radius_factor)]
    pub seed_radius_factor: f64,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Solves per timing sample.
    #[arg(long, default_value_t = bench::DEFAULT_REPETITIONS)]
    pub repetitions: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    One,
    Two,
}

impl Model {
    fn parse(m: u8) -> Result<Self, CliError> {
        match m {
            1 => Ok(Model::One),
            2 => Ok(Model::Two),
            other => Err(CliError::validation(format!("model must be 1 or 2, got {other}"))),
        }
    }

    fn number(self) -> u8 {
        match self {
            Model::One => 1,
            Model::Two => 2,
        }
    }
}

/// A fully resolved job: command-line flags merged over any stdin payload.
#[derive(Debug, Clone, PartialEq)]
pub struct JobSpec {
    pub model: Option<Model>,
    pub params: Option<[ComplexScalar; 5]>,
    pub coefficients: Option<Vec<ComplexScalar>>,
    pub free: ComplexScalar,
    pub tolerance: f64,
}

#[derive(Debug, Clone)]
pub struct CliError {
    pub code: ExitCode,
    pub message: String,
    pub detail: Option<Value>,
}

impl CliError {
    fn validation(message: impl Into<String>) -> Self {
        Self {
            code: ExitCode::Validation,
            message: message.into(),
            detail: None,
        }
    }

    fn kind(&self) -> &'static str {
        match self.code {
            ExitCode::Success => "none",
            ExitCode::Validation => "validation",
            ExitCode::ConstraintRejection => "constraint_rejection",
            ExitCode::NonConvergence => "oracle_non_convergence",
        }
    }

    fn to_json(&self) -> Value {
        let mut error = json!({
            "kind": self.kind(),
            "exit_code": self.code as i32,
            "message": self.message,
        });
        if let Some(detail) = &self.detail {
            error["detail"] = detail.clone();
        }
        json!({ "schema": SCHEMA_VERSION, "error": error })
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let message = e.to_string();
        match e {
            Error::ConstraintsUnsatisfied(report) => CliError {
                code: ExitCode::ConstraintRejection,
                message,
                detail: Some(report_to_json(&report)),
            },
            Error::Inconsistent { .. } => CliError {
                code: ExitCode::ConstraintRejection,
                message,
                detail: None,
            },
            Error::NoConvergence {
                iterations,
                best,
                residuals,
            } => CliError {
                code: ExitCode::NonConvergence,
                message,
                detail: Some(json!({
                    "iterations": iterations,
                    "best": complex_list_to_json(&best),
                    "residuals": residuals,
                })),
            },
            _ => CliError::validation(message),
        }
    }
}

/// Parses `args` (including the program name) and runs the job.
pub fn run<I, S>(args: I, stdin: &mut dyn BufRead, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let args = args.into_iter().map(|a| bracket_negative_pair(a.into()));
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    ExitCode::Success as i32
                }
                _ => {
                    let _ = write!(stderr, "{e}");
                    ExitCode::Validation as i32
                }
            };
        }
    };
    let format = cli.format;
    match execute(&cli.command, stdin) {
        Ok(report) => {
            emit(&report, format, stdout);
            ExitCode::Success as i32
        }
        Err(err) => {
            let _ = writeln!(stderr, "error: {}", err.message);
            if format == Format::Json {
                emit(&err.to_json(), format, stdout);
            }
            err.code as i32
        }
    }
}

// `-1,2` is not a number to clap and would be taken for a flag.
fn bracket_negative_pair(arg: std::ffi::OsString) -> std::ffi::OsString {
    match arg.to_str() {
        Some(s) if s.starts_with('-') && s.contains(',') && s[1..].starts_with(|c: char| c.is_ascii_digit() || c == '.') => {
            format!("[{s}]").into()
        }
        _ => arg,
    }
}

fn emit(report: &Value, format: Format, out: &mut dyn Write) {
    let _ = match format {
        Format::Json => writeln!(out, "{report}"),
        Format::Text => write!(out, "{}", wire::render_text(report)),
    };
}

pub fn execute(command: &Command, stdin: &mut dyn BufRead) -> Result<Value, CliError> {
    match command {
        Command::Gen(a) => {
            let job = resolve_job(stdin, a.model, a.params.as_deref(), None, None, None, true)?;
            gen(&job)
        }
        Command::Solve(a) => {
            let job = resolve_job(
                stdin,
                a.model,
                None,
                a.input.coeffs.as_deref(),
                a.free.as_deref(),
                a.tolerance,
                false,
            )?;
            solve(&job)
        }
        Command::Check(a) => {
            let job = resolve_job(stdin, None, None, a.input.coeffs.as_deref(), None, a.tolerance, false)?;
            check(&job)
        }
        Command::Recover(a) => {
            let job = resolve_job(
                stdin,
                a.model,
                None,
                a.input.coeffs.as_deref(),
                a.free.as_deref(),
                a.tolerance,
                false,
            )?;
            recover(&job, a.printed_a1)
        }
        Command::Oracle(a) => {
            let job = resolve_job(stdin, None, None, a.input.coeffs.as_deref(), None, None, false)?;
            let cfg = OracleConfig {
                max_iterations: a.max_iterations,
                convergence_tol: a.convergence_tol,
                seed_radius_factor: a.seed_radius_factor,
            };
            oracle(&job, &cfg)
        }
        Command::Bench(a) => {
            if a.trials == 0 || a.repetitions == 0 {
                return Err(CliError::validation("trials and repetitions must be positive"));
            }
            bench::run(a.trials, a.seed, a.repetitions).map_err(CliError::from)
        }
    }
}

fn read_payload(stdin: &mut dyn BufRead) -> Result<Payload, CliError> {
    let mut line = String::new();
    loop {
        line.clear();
        let n = stdin
            .read_line(&mut line)
            .map_err(|e| CliError::validation(format!("cannot read stdin: {e}")))?;
        if n == 0 {
            return Err(CliError::validation("no input: pass values as flags or a JSON line on stdin"));
        }
        if !line.trim().is_empty() {
            return Payload::parse(line.trim()).map_err(CliError::validation);
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn resolve_job(
    stdin: &mut dyn BufRead,
    model: Option<u8>,
    params: Option<&[String]>,
    coeffs: Option<&[String]>,
    free: Option<&str>,
    tolerance: Option<f64>,
    wants_params: bool,
) -> Result<JobSpec, CliError> {
    let needs_stdin = if wants_params { params.is_none() } else { coeffs.is_none() };
    let payload = if needs_stdin {
        read_payload(stdin)?
    } else {
        Payload::default()
    };

    let model = model.or(payload.model).map(Model::parse).transpose()?;

    let params = match params {
        Some(tokens) => Some(wire::parse_complex_list(tokens).map_err(CliError::validation)?),
        None => payload
            .params
            .as_deref()
            .map(|p| wire::from_wire_list(p, "params"))
            .transpose()
            .map_err(CliError::validation)?,
    };
    let params = match params {
        Some(p) => Some(<[ComplexScalar; 5]>::try_from(p.as_slice()).map_err(|_| {
            CliError::validation(format!("expected 5 parameters (a0 a1 a2 b0 b1), got {}", p.len()))
        })?),
        None => None,
    };

    let coefficients = match coeffs {
        Some(tokens) => Some(wire::parse_complex_list(tokens).map_err(CliError::validation)?),
        None => payload
            .coefficients
            .as_deref()
            .map(|c| wire::from_wire_list(c, "coefficients"))
            .transpose()
            .map_err(CliError::validation)?,
    };

    let free = match free {
        Some(tok) => wire::parse_complex(tok).map_err(CliError::validation)?,
        None => match payload.free {
            Some(w) if w.to_complex().is_finite() => w.to_complex(),
            Some(_) => return Err(CliError::validation("non-finite free parameter")),
            None => ComplexScalar::new(0.0, 0.0),
        },
    };

    let tolerance = tolerance.or(payload.tolerance).unwrap_or(DEFAULT_TOLERANCE);
    if !(tolerance.is_finite() && tolerance > 0.0) {
        return Err(CliError::validation(format!("tolerance must be positive, got {tolerance}")));
    }

    Ok(JobSpec {
        model,
        params,
        coefficients,
        free,
        tolerance,
    })
}

fn require_sextic(job: &JobSpec) -> Result<MonicSextic, CliError> {
    let coeffs = job
        .coefficients
        .as_ref()
        .ok_or_else(|| CliError::validation("missing coefficients"))?;
    let arr: [ComplexScalar; 6] = coeffs.as_slice().try_into().map_err(|_| {
        CliError::validation(format!("expected 6 coefficients (c0 .. c5), got {}", coeffs.len()))
    })?;
    MonicSextic::new(arr).map_err(CliError::from)
}

fn report_to_json(r: &ConstraintReport) -> Value {
    json!({
        "residual_1": complex_to_json(r.residual_1),
        "residual_2": complex_to_json(r.residual_2),
        "scale_1": r.scale_1,
        "scale_2": r.scale_2,
        "satisfied": r.satisfied,
    })
}

fn classification_to_json(c: &Classification) -> Value {
    json!({
        "verdict": c.verdict.as_str(),
        "model_one": report_to_json(&c.report_one),
        "model_two": report_to_json(&c.report_two),
    })
}

fn root_entry(p: &MonicPolynomial, z: ComplexScalar) -> Value {
    let residual = evaluate(p, z).norm();
    json!({
        "value": complex_to_json(z),
        "residual": residual,
        "scaled_residual": residual / residual_scale(p, z),
    })
}

fn labeled_roots_json(p: &MonicPolynomial, roots: &SexticRoots) -> (Value, f64) {
    let mut worst: f64 = 0.0;
    let entries = roots
        .roots
        .iter()
        .map(|r| {
            let mut e = json!({ "lambda": r.lambda, "mu": r.mu });
            let base = root_entry(p, r.value);
            worst = worst.max(base["scaled_residual"].as_f64().unwrap_or(f64::INFINITY));
            for (k, v) in base.as_object().expect("object") {
                e[k] = v.clone();
            }
            e
        })
        .collect();
    (Value::Array(entries), worst)
}

fn resolvents_json(roots: &SexticRoots) -> Value {
    Value::Array(
        roots
            .resolvents
            .iter()
            .map(|r| json!({ "label": r.label, "value": complex_to_json(r.value) }))
            .collect(),
    )
}

struct RadicalSolution {
    coefficients: MonicSextic,
    params: [ComplexScalar; 5],
    roots: SexticRoots,
}

fn forward(model: Model, params: [ComplexScalar; 5]) -> Result<RadicalSolution, CliError> {
    Ok(match model {
        Model::One => {
            let p = model_one::ModelOneParams::from_array(params)?;
            RadicalSolution {
                coefficients: model_one::coefficients_from_params(&p),
                params,
                roots: model_one::solve(&p),
            }
        }
        Model::Two => {
            let p = model_two::ModelTwoParams::from_array(params)?;
            RadicalSolution {
                coefficients: model_two::coefficients_from_params(&p),
                params,
                roots: model_two::solve(&p),
            }
        }
    })
}

fn recover_params(
    model: Model,
    c: &MonicSextic,
    free: ComplexScalar,
    tol: f64,
    formula: A1Formula,
) -> Result<[ComplexScalar; 5], CliError> {
    let poly = c.to_polynomial();
    Ok(match model {
        Model::One => model_one::recover_params(&poly, free, tol)?.to_array(),
        Model::Two => model_two::recover_params_with(&poly, free, tol, formula)?.to_array(),
    })
}

fn gen(job: &JobSpec) -> Result<Value, CliError> {
    let model = job.model.ok_or_else(|| CliError::validation("gen requires --model"))?;
    let params = job.params.ok_or_else(|| CliError::validation("gen requires --params"))?;
    let sol = forward(model, params)?;
    let poly = sol.coefficients.to_polynomial();
    let (roots, worst) = labeled_roots_json(&poly, &sol.roots);
    Ok(json!({
        "schema": SCHEMA_VERSION,
        "command": "gen",
        "model": model.number(),
        "params": complex_list_to_json(&sol.params),
        "coefficients": complex_list_to_json(sol.coefficients.coeffs()),
        "resolvents": resolvents_json(&sol.roots),
        "roots": roots,
        "max_scaled_residual": worst,
    }))
}

fn solve(job: &JobSpec) -> Result<Value, CliError> {
    let c = require_sextic(job)?;
    let classification = classify_sextic(&c, job.tolerance)?;
    let poly = c.to_polynomial();

    let chosen = match job.model {
        Some(m) => Some(m),
        None if classification.verdict.includes_model_one() => Some(Model::One),
        None if classification.verdict.includes_model_two() => Some(Model::Two),
        None => None,
    };

    let mut report = json!({
        "schema": SCHEMA_VERSION,
        "command": "solve",
        "model": chosen.map(Model::number),
        "method": if chosen.is_some() { "radical" } else { "oracle" },
        "verdict": classification.verdict.as_str(),
        "tolerance": job.tolerance,
        "free": complex_to_json(job.free),
        "coefficients": complex_list_to_json(c.coeffs()),
    });

    match chosen {
        Some(model) => {
            let params = recover_params(model, &c, job.free, job.tolerance, A1Formula::DirectInversion)?;
            let sol = forward(model, params)?;
            let (roots, worst) = labeled_roots_json(&poly, &sol.roots);
            report["params"] = complex_list_to_json(&params);
            report["round_trip_residual"] = json!(sol.coefficients.max_abs_diff(&c));
            report["resolvents"] = resolvents_json(&sol.roots);
            report["roots"] = roots;
            report["max_scaled_residual"] = json!(worst);
        }
        None => {
            let out = oracle_solve(&poly, &OracleConfig::default())?;
            report["notice"] = json!("not in either family; roots computed by the iterative oracle");
            let entries: Vec<Value> = out.roots.as_slice().iter().map(|&z| root_entry(&poly, z)).collect();
            let worst = entries
                .iter()
                .filter_map(|e| e["scaled_residual"].as_f64())
                .fold(0.0, f64::max);
            report["roots"] = Value::Array(entries);
            report["max_scaled_residual"] = json!(worst);
        }
    }
    Ok(report)
}

fn check(job: &JobSpec) -> Result<Value, CliError> {
    let c = require_sextic(job)?;
    let classification = classify_sextic(&c, job.tolerance)?;
    let mut report = json!({
        "schema": SCHEMA_VERSION,
        "command": "check",
        "tolerance": classification.tolerance_used,
        "coefficients": complex_list_to_json(c.coeffs()),
    });
    for (k, v) in classification_to_json(&classification).as_object().expect("object") {
        report[k] = v.clone();
    }
    Ok(report)
}

fn recover(job: &JobSpec, printed_a1: bool) -> Result<Value, CliError> {
    let model = job.model.ok_or_else(|| CliError::validation("recover requires --model"))?;
    if printed_a1 && model != Model::Two {
        return Err(CliError::validation("--printed-a1 applies to model 2 only"));
    }
    let formula = if printed_a1 {
        A1Formula::Printed
    } else {
        A1Formula::DirectInversion
    };
    let c = require_sextic(job)?;
    let params = recover_params(model, &c, job.free, job.tolerance, formula)?;
    let regenerated = forward(model, params)?.coefficients;
    let round_trip = regenerated.max_abs_diff(&c);
    let mut report = json!({
        "schema": SCHEMA_VERSION,
        "command": "recover",
        "model": model.number(),
        "tolerance": job.tolerance,
        "free": complex_to_json(job.free),
        "coefficients": complex_list_to_json(c.coeffs()),
        "params": complex_list_to_json(&params),
        "round_trip_residual": round_trip,
        "round_trip_scaled": round_trip / c.cubic_scale(),
    });
    if model == Model::Two {
        report["a1_formula"] = json!(if printed_a1 { "printed" } else { "direct_inversion" });
    }
    Ok(report)
}

fn oracle(job: &JobSpec, cfg: &OracleConfig) -> Result<Value, CliError> {
    let coeffs = job
        .coefficients
        .clone()
        .ok_or_else(|| CliError::validation("missing coefficients"))?;
    let poly = MonicPolynomial::new(coeffs)?;
    let out = oracle_solve(&poly, cfg)?;
    let entries: Vec<Value> = out.roots.as_slice().iter().map(|&z| root_entry(&poly, z)).collect();
    Ok(json!({
        "schema": SCHEMA_VERSION,
        "command": "oracle",
        "coefficients": complex_list_to_json(poly.coeffs()),
        "config": {
            "max_iterations": cfg.max_iterations,
            "convergence_tol": cfg.convergence_tol,
            "seed_radius_factor": cfg.seed_radius_factor,
        },
        "iterations": out.iterations,
        "roots": entries,
    }))
}
