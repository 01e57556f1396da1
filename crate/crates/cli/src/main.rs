//! `xformlab` command-line front end.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex;
use serde_json::{json, Value};

use xformlab::cases::{parse_assignments, CASE_NAMES};
use xformlab::ode::real_axis_poles;
use xformlab::roots::{polynomial_roots, Root};
use xformlab::*;

#[derive(Parser)]
#[command(
    name = "xformlab",
    version,
    about = "Laplace and Fourier transforms with exact rules and a numeric oracle"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Relative quadrature tolerance.
    #[arg(long, global = true, default_value_t = 1e-9)]
    rel_tol: f64,
    /// Absolute quadrature tolerance.
    #[arg(long, global = true, default_value_t = 1e-12)]
    abs_tol: f64,
    /// Truncation point of improper integrals: `auto` or a positive number.
    #[arg(long, global = true, default_value = "auto", value_parser = parse_truncation)]
    trunc: Truncation,
    /// Seed for randomized commands (falls back to XFORMLAB_SEED, then 0).
    #[arg(long, global = true, env = "XFORMLAB_SEED")]
    seed: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Output::Json)]
    output: Output,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Laplace,
    Fourier,
}

#[derive(Subcommand)]
enum Command {
    /// Symbolic transform of a signal, optionally checked against the oracle at one point.
    Transform {
        #[arg(long, value_enum)]
        kind: Kind,
        /// Signal text, e.g. `causal(t*exp(-2*t))`.
        #[arg(long)]
        signal: String,
        /// Evaluation point: complex `s` for Laplace (`1/2+3 i`), real `omega` for Fourier.
        #[arg(long, allow_hyphen_values = true)]
        at: Option<String>,
    },
    /// Transfer function, frequency response, poles and zeros of an ODE file.
    Analyze { file: PathBuf },
    /// Bode samples of an ODE file's frequency response.
    Respond {
        file: PathBuf,
        #[arg(long)]
        wmin: f64,
        #[arg(long)]
        wmax: f64,
        #[arg(long, default_value_t = 50)]
        points: usize,
    },
    /// Case-study models.
    Case {
        #[command(subcommand)]
        action: CaseAction,
    },
    /// Run a randomized validation suite.
    Validate {
        #[arg(long, value_parser = |s: &str| s.parse::<Suite>())]
        suite: Suite,
        /// Cases per property.
        #[arg(long, default_value_t = 100)]
        n: usize,
    },
}

#[derive(Subcommand)]
enum CaseAction {
    /// Print a model as an ODE file.
    Export {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(CASE_NAMES))]
        name: String,
        /// Comma-separated assignments such as `R=1,L=2/3,C=1/2`; unset parameters are 1.
        #[arg(long, default_value = "")]
        params: String,
    },
}

fn parse_truncation(text: &str) -> Result<Truncation, String> {
    if text.eq_ignore_ascii_case("auto") {
        return Ok(Truncation::Auto);
    }
    match text.parse::<f64>() {
        Ok(b) if b > 0.0 && b.is_finite() => Ok(Truncation::Fixed(b)),
        _ => Err(format!(
            "expected `auto` or a positive number, got `{text}`"
        )),
    }
}

/// Failure with the process exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Syntax(_)
            | Error::InvalidArgument(_)
            | Error::NonPositiveParameter(_)
            | Error::InvalidConfig(_) => 2,
            Error::NotAbsolutelyIntegrable(_)
            | Error::DivergentTransform(_)
            | Error::NonCausalInput => 3,
            Error::ZeroLeadingCoefficient => 4,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<SyntaxError> for Failure {
    fn from(e: SyntaxError) -> Self {
        Error::Syntax(e).into()
    }
}

fn usage(message: String) -> Failure {
    Failure { code: 2, message }
}

type CmdResult = Result<(String, u8), Failure>;

fn complex_json(z: Complex<f64>) -> Value {
    json!({ "re": z.re, "im": z.im })
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serializable output")
}

fn read_ode(path: &Path) -> Result<LinearODE, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(parse_ode(&text)?)
}

fn parse_point(text: &str) -> Result<Complex<f64>, Failure> {
    if let Ok(g) = text.parse::<GaussianRational>() {
        return Ok(g.to_complex());
    }
    text.trim()
        .parse::<f64>()
        .map(|x| Complex::new(x, 0.0))
        .map_err(|_| {
            usage(format!(
                "cannot read `{text}` as a number (use forms like 2, -1/2, 1/2+3 i)"
            ))
        })
}

fn transform(kind: Kind, signal: &str, at: Option<&str>, cfg: &QuadratureConfig) -> CmdResult {
    let f = parse_signal(signal)?;
    let result = match kind {
        Kind::Laplace => laplace_symbolic(&f)?,
        Kind::Fourier => fourier_symbolic(&f)?,
    };
    let mut out = serde_json::to_value(&result).expect("serializable result");
    out["expr"] = json!(result.expr.to_string());
    if let Some(at) = at {
        let point = parse_point(at)?;
        let (z, numeric) = match kind {
            Kind::Laplace => (point, laplace_numeric(&f, point, cfg)?),
            Kind::Fourier => {
                if point.im != 0.0 {
                    return Err(usage(format!(
                        "the Fourier evaluation point must be real, got {at}"
                    )));
                }
                (
                    Complex::new(0.0, point.re),
                    fourier_numeric(&f, point.re, cfg)?,
                )
            }
        };
        let symbolic = eval_rational(&result.expr, z)?;
        out["at"] = complex_json(point);
        out["symbolic"] = complex_json(symbolic);
        out["oracle"] = complex_json(numeric);
        out["delta"] = json!((symbolic - numeric).norm());
    }
    Ok((pretty(&out), 0))
}

fn root_rows(kind: &str, roots: &[Root]) -> Vec<String> {
    roots
        .iter()
        .map(|r| format!("{kind},{},{},{}", r.re, r.im, r.multiplicity))
        .collect()
}

fn analyze(path: &Path, output: Output) -> CmdResult {
    let ode = read_ode(path)?;
    let h = transfer_function(&ode)?;
    let response = frequency_response(&ode);
    let poles = polynomial_roots(h.den());
    let zeros = polynomial_roots(h.num());
    if output == Output::Csv {
        let mut lines = vec!["kind,re,im,multiplicity".to_string()];
        lines.extend(root_rows("pole", &poles));
        lines.extend(root_rows("zero", &zeros));
        return Ok((lines.join("\n"), 0));
    }
    let roc = poles.iter().map(|r| r.re).fold(f64::NEG_INFINITY, f64::max);
    let transfer = TransformResult {
        expr: h.clone(),
        roc: None,
        conditions: vec!["zero initial conditions".into()],
    };
    let mut h_json = serde_json::to_value(&transfer).expect("serializable result");
    h_json["expr"] = json!(h.to_string());
    let mut w_json = serde_json::to_value(&response).expect("serializable result");
    w_json["expr"] = json!(response.expr.to_string());
    let out = json!({
        "ode": print_ode(&ode),
        "transfer_function": h_json,
        "frequency_response": w_json,
        "roc": if roc.is_finite() { json!(roc) } else { json!("-inf") },
        "poles": poles,
        "zeros": zeros,
        "approximate": true,
        "imaginary_axis_poles": real_axis_poles(&response.expr),
        "conditions": response.conditions,
    });
    Ok((pretty(&out), 0))
}

fn respond(path: &Path, wmin: f64, wmax: f64, points: usize, output: Output) -> CmdResult {
    let ode = read_ode(path)?;
    let h = frequency_response(&ode).expr;
    if h.is_improper() {
        eprintln!(
            "warning: numerator degree exceeds denominator degree; magnitude grows without bound"
        );
    }
    let grid = bode_grid(&h, wmin, wmax, points)?;
    let text = match output {
        Output::Json => pretty(&grid),
        Output::Csv => {
            let mut lines = vec!["omega,magnitude,magnitude_db,phase_rad".to_string()];
            lines.extend(grid.iter().map(|p| {
                format!(
                    "{},{},{},{}",
                    p.omega, p.magnitude, p.magnitude_db, p.phase_rad
                )
            }));
            lines.join("\n")
        }
    };
    Ok((text, 0))
}

fn export(name: &str, params: &str) -> CmdResult {
    let pairs = parse_assignments(params)?;
    let model = CaseStudyParams::from_assignments(name, &pairs)?;
    model.validate()?;
    Ok((model.export().trim_end().to_string(), 0))
}

fn validate(suite: Suite, seed: u64, n: usize, cfg: &QuadratureConfig) -> CmdResult {
    let report = run_suite(suite, seed, n, cfg);
    let code = if report.passed() { 0 } else { 1 };
    Ok((pretty(&report), code))
}

fn run(cli: Cli) -> CmdResult {
    let g = &cli.global;
    let cfg = QuadratureConfig {
        rel_tol: g.rel_tol,
        abs_tol: g.abs_tol,
        truncation: g.trunc,
        ..Default::default()
    };
    cfg.validate()?;
    let csv_only_for = |what: &str| -> Result<(), Failure> {
        if g.output == Output::Csv {
            return Err(usage(format!("{what} output is JSON only")));
        }
        Ok(())
    };
    match &cli.command {
        Command::Transform { kind, signal, at } => {
            csv_only_for("transform")?;
            transform(*kind, signal, at.as_deref(), &cfg)
        }
        Command::Analyze { file } => analyze(file, g.output),
        Command::Respond {
            file,
            wmin,
            wmax,
            points,
        } => respond(file, *wmin, *wmax, *points, g.output),
        Command::Case {
            action: CaseAction::Export { name, params },
        } => export(name, params),
        Command::Validate { suite, n } => {
            csv_only_for("validate")?;
            validate(*suite, g.seed.unwrap_or(0), *n, &cfg)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((text, code)) => {
            // a closed pipe (e.g. `| head`) is not an error worth reporting
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            ExitCode::from(code)
        }
        Err(Failure { code, message }) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}
