use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ratlimit::numerics::{self, limit_probe};
use ratlimit::serial::parse_rational;
use ratlimit::{
    build_certificate, check_certificate, decide, expr, find_nonexistence_witness,
    generalize, royal_path, Certificate, ExactRational, NonexistenceWitness, ProbeConfig, Profile,
    RoyalPath, Trend,
};

mod grid;
mod output;

use grid::{RadiiSpec, TGrid};
use output::*;

/// Decide whether x1^a1...xN^aN / (c1 x1^2m1 + ... + cN xN^2mN) has a limit at the origin.
#[derive(Parser, Debug)]
#[command(name = "ratlimit", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Input {
    /// Expression such as "x^3*y^2*z/(x^4 + y^12 + z^14)".
    expression: Option<String>,
    /// Read the profile from a JSON file ({"a": [...], "m": [...], "c": ["1", ...]}).
    #[arg(long, conflicts_with = "expression")]
    profile: Option<PathBuf>,
    /// Output format.
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact criterion and verdict.
    Decide(Input),
    /// Royal-path evidence that the limit does not exist.
    Witness(Input),
    /// Induction certificate that the limit exists.
    Certify(Input),
    /// Check a certificate produced by `certify` against an expression.
    Verify {
        #[command(flatten)]
        input: Input,
        /// Certificate JSON file.
        #[arg(long)]
        certificate: PathBuf,
    },
    /// Sample sup |f| on shrinking shells and classify the trend.
    Probe {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Geometric radii as start:end:count.
        #[arg(long, default_value = "1e-1:1e-6:11")]
        radii: RadiiSpec,
        /// Samples per shell.
        #[arg(long, default_value_t = 4096)]
        samples: usize,
        /// Skip the royal path point on each shell.
        #[arg(long)]
        no_royal_path: bool,
        #[arg(long, default_value_t = 1e-3)]
        decay: f64,
        #[arg(long, default_value_t = 10.0)]
        band: f64,
        #[arg(long, default_value_t = 1.0)]
        monotone_slack: f64,
    },
    /// CSV samples t,x1,...,xN,f along a royal path.
    Path {
        #[command(flatten)]
        input: Input,
        /// Comma-separated positive rationals, one per variable (default all 1).
        #[arg(long)]
        lambda: Option<String>,
        /// start:end:geometric|linear:count.
        #[arg(long, default_value = "1:1e-6:geometric:13")]
        t_grid: TGrid,
    },
    /// Sufficient condition for C1 at the origin.
    C1(Input),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Human,
}

struct Failure {
    message: String,
    code: u8,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            message: message.into(),
            code: 1,
        }
    }
}

struct Outcome {
    stdout: String,
    code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { stdout, code: 0 }
    }
}

struct Loaded {
    profile: Profile,
}

impl Loaded {
    fn canonical(&self) -> String {
        expr::format(&self.profile)
    }
}

fn load(input: &Input) -> Result<Loaded, Failure> {
    match (&input.expression, &input.profile) {
        (Some(text), None) => expr::parse(text)
            .map(|profile| Loaded { profile })
            .map_err(|diag| Failure::usage(diag.render(text))),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
            let profile: Profile = serde_json::from_str(&text)
                .map_err(|e| Failure::usage(format!("invalid profile file {}: {e}", path.display())))?;
            Ok(Loaded { profile })
        }
        _ => Err(Failure::usage("give an expression or --profile FILE")),
    }
}

fn format_or(input: &Input, default: Format, allowed: &[Format]) -> Result<Format, Failure> {
    let format = input.format.unwrap_or(default);
    if allowed.contains(&format) {
        Ok(format)
    } else {
        Err(Failure::usage(format!(
            "format {:?} is not available for this command",
            format
        )))
    }
}

fn run(cli: Cli) -> Result<Outcome, Failure> {
    match cli.command {
        Command::Decide(input) => cmd_decide(&input),
        Command::Witness(input) => cmd_witness(&input),
        Command::Certify(input) => cmd_certify(&input),
        Command::Verify { input, certificate } => cmd_verify(&input, &certificate),
        Command::Probe {
            input,
            seed,
            radii,
            samples,
            no_royal_path,
            decay,
            band,
            monotone_slack,
        } => {
            let cfg = ProbeConfig {
                inject_royal_path: !no_royal_path,
                decay_factor: decay,
                band,
                monotone_slack,
            };
            cmd_probe(&input, seed, &radii, samples, &cfg)
        }
        Command::Path {
            input,
            lambda,
            t_grid,
        } => cmd_path(&input, lambda.as_deref(), &t_grid),
        Command::C1(input) => cmd_c1(&input),
    }
}

fn cmd_decide(input: &Input) -> Result<Outcome, Failure> {
    let format = format_or(input, Format::Json, &[Format::Json, Format::Human])?;
    let loaded = load(input)?;
    let decision = decide(&loaded.profile);
    let stdout = match format {
        Format::Human => {
            let limit = decision
                .limit_value
                .as_ref()
                .map_or("does not exist".to_owned(), |v| format!("= {v}"));
            format!(
                "{}\nsigma = {}\nverdict: {} (limit {limit})\n",
                loaded.canonical(),
                decision.sigma,
                decision.verdict.as_str()
            )
        }
        _ => to_json(&DecisionDoc {
            schema: DECISION_SCHEMA,
            expression: loaded.canonical(),
            n: loaded.profile.n(),
            decision: &decision,
        }),
    };
    Ok(Outcome::ok(stdout))
}

fn describe_path(out: &mut String, label: &str, path: &RoyalPath) {
    let join = |v: Vec<String>| v.join(", ");
    let _ = writeln!(
        out,
        "{label}: lambda = ({}), p = ({}), e = {}, g = {}",
        join(path.lambda.iter().map(ToString::to_string).collect()),
        join(path.weights.p_vec.iter().map(ToString::to_string).collect()),
        path.e,
        path.g_lambda
    );
}

fn cmd_witness(input: &Input) -> Result<Outcome, Failure> {
    let format = format_or(input, Format::Json, &[Format::Json, Format::Human])?;
    let loaded = load(input)?;
    let witness = find_nonexistence_witness(&generalize(&loaded.profile))
        .map_err(|e| Failure::usage(e.to_string()))?;
    let stdout = match format {
        Format::Human => {
            let mut out = format!("{}\n", loaded.canonical());
            match &witness {
                NonexistenceWitness::Divergent { path } => {
                    out.push_str("DIVERGENT: |f| = g t^e grows without bound as t -> 0\n");
                    describe_path(&mut out, "path", path);
                }
                NonexistenceWitness::PathDependent {
                    path_a,
                    path_b,
                    value_a,
                    value_b,
                } => {
                    let _ = writeln!(out, "PATH_DEPENDENT: f is {value_a} along one path and {value_b} along another");
                    describe_path(&mut out, "path a", path_a);
                    describe_path(&mut out, "path b", path_b);
                }
            }
            out
        }
        _ => to_json(&WitnessDoc {
            schema: WITNESS_SCHEMA,
            expression: loaded.canonical(),
            witness: &witness,
        }),
    };
    Ok(Outcome::ok(stdout))
}

fn describe_certificate(out: &mut String, cert: &Certificate, depth: usize) {
    let pad = "  ".repeat(depth);
    match cert {
        Certificate::Base1d { d, m } => {
            let _ = writeln!(out, "{pad}BASE_1D: |x|^{d} / x^{} -> 0", 2 * m);
        }
        Certificate::Sandwich { j, bound_exponents } => {
            let b: Vec<String> = bound_exponents.iter().map(ToString::to_string).collect();
            let _ = writeln!(out, "{pad}SANDWICH on variable {j}: |f| <= prod |x_i|^b_i, b = ({})", b.join(", "));
        }
        Certificate::Inductive {
            j,
            k_const,
            child_d,
            child,
        } => {
            let d: Vec<String> = child_d.iter().map(ToString::to_string).collect();
            let _ = writeln!(
                out,
                "{pad}INDUCTIVE on variable {j}: K = {} * {}^({}), reduced exponents ({})",
                k_const.factor,
                k_const.base,
                k_const.exponent,
                d.join(", ")
            );
            describe_certificate(out, child, depth + 1);
        }
    }
}

fn cmd_certify(input: &Input) -> Result<Outcome, Failure> {
    let format = format_or(input, Format::Json, &[Format::Json, Format::Human])?;
    let loaded = load(input)?;
    let certificate =
        build_certificate(&generalize(&loaded.profile)).map_err(|e| Failure::usage(e.to_string()))?;
    let stdout = match format {
        Format::Human => {
            let mut out = format!("{}\n", loaded.canonical());
            describe_certificate(&mut out, &certificate, 0);
            out
        }
        _ => to_json(&CertificateDoc {
            schema: CERTIFICATE_SCHEMA.to_owned(),
            expression: loaded.canonical(),
            profile: loaded.profile.clone(),
            certificate,
        }),
    };
    Ok(Outcome::ok(stdout))
}

fn read_certificate(path: &PathBuf) -> Result<Certificate, Failure> {
    let reject = |category: &str, detail: String| {
        Failure::usage(format!(
            "invalid certificate file {} [{category}]: {detail}",
            path.display()
        ))
    };
    let text = std::fs::read_to_string(path).map_err(|e| reject("IO", e.to_string()))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| reject("MALFORMED_JSON", e.to_string()))?;
    let node = match value.get("certificate") {
        Some(inner) => {
            match value.get("schema").and_then(|s| s.as_str()) {
                Some(CERTIFICATE_SCHEMA) | None => {}
                Some(other) => return Err(reject("SCHEMA", format!("unsupported schema {other:?}"))),
            }
            inner.clone()
        }
        None => value,
    };
    serde_json::from_value(node).map_err(|e| reject("SCHEMA", e.to_string()))
}

fn cmd_verify(input: &Input, certificate: &PathBuf) -> Result<Outcome, Failure> {
    let format = format_or(input, Format::Json, &[Format::Json, Format::Human])?;
    let loaded = load(input)?;
    let cert = read_certificate(certificate)?;
    let result = check_certificate(&generalize(&loaded.profile), &cert);
    let code = if result.is_ok() { 0 } else { 1 };
    let stdout = match format {
        Format::Human => match &result {
            Ok(()) => format!("PASS {}\n", loaded.canonical()),
            Err(f) => format!("FAIL {}\n{f}\n", loaded.canonical()),
        },
        _ => to_json(&VerificationDoc {
            schema: VERIFICATION_SCHEMA,
            expression: loaded.canonical(),
            valid: result.is_ok(),
            failure: result.err().map(|f| FailureDoc {
                location: f.location,
                reason: f.reason,
            }),
        }),
    };
    Ok(Outcome { stdout, code })
}

fn cmd_probe(
    input: &Input,
    seed: u64,
    radii: &RadiiSpec,
    samples: usize,
    cfg: &ProbeConfig,
) -> Result<Outcome, Failure> {
    let format = format_or(input, Format::Json, &[Format::Json, Format::Csv, Format::Human])?;
    let loaded = load(input)?;
    let report = limit_probe(&loaded.profile, &radii.radii(), samples, seed, cfg)
        .map_err(|e| Failure::usage(e.to_string()))?;
    let stdout = match format {
        Format::Csv => {
            let mut out = "radius,sup\n".to_owned();
            for (r, s) in report.radii.iter().zip(&report.sup_estimates) {
                let _ = writeln!(out, "{r:e},{s:e}");
            }
            out
        }
        Format::Human => {
            let mut out = format!("{}\n", loaded.canonical());
            for (r, s) in report.radii.iter().zip(&report.sup_estimates) {
                let _ = writeln!(out, "  r = {r:e}  sup|f| ~ {s:e}");
            }
            let _ = writeln!(out, "trend: {}", label(&report.trend_verdict));
            out
        }
        Format::Json => to_json(&ProbeDoc {
            schema: PROBE_SCHEMA,
            expression: loaded.canonical(),
            report: &report,
            config: cfg,
        }),
    };
    let code = if report.trend_verdict == Trend::Inconclusive { 2 } else { 0 };
    Ok(Outcome { stdout, code })
}

fn cmd_path(input: &Input, lambda: Option<&str>, grid: &TGrid) -> Result<Outcome, Failure> {
    format_or(input, Format::Csv, &[Format::Csv])?;
    let loaded = load(input)?;
    let n = loaded.profile.n();
    let lambda: Vec<ExactRational> = match lambda {
        None => vec![ExactRational::from_integer(1.into()); n],
        Some(text) => text
            .split(',')
            .map(|part| parse_rational(part).map_err(|e| Failure::usage(e.to_string())))
            .collect::<Result<_, _>>()?,
    };
    let path = royal_path(&generalize(&loaded.profile), &lambda).map_err(|e| Failure::usage(e.to_string()))?;
    let mut out = String::from("t");
    for i in 1..=n {
        let _ = write!(out, ",x{i}");
    }
    out.push_str(",f\n");
    for t in grid.values() {
        let x: Vec<f64> = numerics::path_point(&path, t);
        let f: f64 =
            numerics::eval_along_path(&loaded.profile, &path, t).map_err(|e| Failure::usage(e.to_string()))?;
        let _ = write!(out, "{t:e}");
        for xi in x {
            let _ = write!(out, ",{xi:e}");
        }
        let _ = writeln!(out, ",{f:e}");
    }
    Ok(Outcome::ok(out))
}

fn cmd_c1(input: &Input) -> Result<Outcome, Failure> {
    let format = format_or(input, Format::Json, &[Format::Json, Format::Human])?;
    let loaded = load(input)?;
    let report = numerics::c1_sufficient(&loaded.profile);
    let stdout = match format {
        Format::Human => {
            let mut out = format!(
                "{}\nsigma = {}, max a_j/2m_j = {}\nverdict: {}\n",
                loaded.canonical(),
                report.sigma,
                report.max_ratio,
                label(&report.verdict)
            );
            if let Some(note) = &report.note {
                let _ = writeln!(out, "note: {note}");
            }
            out
        }
        _ => to_json(&C1Doc {
            schema: C1_SCHEMA,
            expression: loaded.canonical(),
            report: &report,
        }),
    };
    Ok(Outcome::ok(stdout))
}

fn label<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_value(value)
        .ok()
        .and_then(|v| v.as_str().map(str::to_owned))
        .unwrap_or_default()
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return if err.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            ExitCode::from(outcome.code)
        }
        Err(failure) => {
            eprintln!("{}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
