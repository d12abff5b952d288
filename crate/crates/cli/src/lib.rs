//! Command-line front end of `germlab`.
//!
//! Every subcommand prints one JSON object on standard output. Exit status
//! is 0 on success, 1 when the computation fails for a mathematical reason
//! (the error name is printed on standard error) and 2 on usage or syntax
//! errors.

pub mod document;
pub mod report;

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use germlab_core::algebra::GaussianRational;
use germlab_core::curvegerm::{eval_fiber, CurveGerm, FamilyCurve};
use germlab_core::family::{builtin_example, classify_family, default_samples, theorem_consistency_check};
use germlab_core::hypersurface::{count_exceptional_tangents, BinaryForm};
use germlab_core::local_invariants::{intersection_matrix, invariant_report};
use germlab_core::projection::{
    apply_projection, certify_generic, CertificateVerdict, LinearProjection, DEFAULT_SEED, DEFAULT_TRIALS,
};
use germlab_core::Error;
use serde_json::{json, Value};

pub use document::{parse_curve_document, CurveDocument, ParsedCurve};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}, column {column}: unsupported coefficient `{text}` (only Gaussian rationals are allowed)")]
    UnsupportedCoefficient {
        line: usize,
        column: usize,
        text: String,
    },
    #[error("{0}")]
    InvalidDocument(String),
    #[error("{0}")]
    Usage(String),
    #[error("cannot read `{path}`: {message}")]
    Io { path: String, message: String },
    #[error(transparent)]
    Domain(#[from] Error),
}

impl CliError {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Syntax { .. } => "SyntaxError",
            Self::UnsupportedCoefficient { .. } => "UnsupportedCoefficient",
            Self::InvalidDocument(_) => "InvalidDocument",
            Self::Usage(_) => "UsageError",
            Self::Io { .. } => "IoError",
            Self::Domain(e) => e.name(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Domain(_) | Self::UnsupportedCoefficient { .. } => 1,
            _ => 2,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "germlab", version, about = "Invariants of curve germs and their one-parameter families")]
struct Cli {
    /// Emit JSON (the only output format).
    #[arg(long, global = true)]
    json: bool,
    /// Seed of the projection sampler.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct Input {
    /// A `.gl` curve document.
    file: Option<PathBuf>,
    /// A built-in example family instead of a file.
    #[arg(long)]
    example: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Invariants of a curve, or of every sampled fiber of a family.
    Invariants {
        #[command(flatten)]
        input: Input,
        /// Comma-separated parameter values, for families.
        #[arg(long)]
        samples: Option<String>,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
    },
    /// Invariant table and equisingularity verdicts of a family.
    Classify {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        samples: Option<String>,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
        /// ε overrides as `t:ε` pairs, e.g. "0:1".
        #[arg(long)]
        epsilon: Option<String>,
    },
    /// Plane projection of a curve: a given matrix, or a certified generic one.
    Project {
        file: PathBuf,
        /// Row-major entries `a11,...,a1n,a21,...,a2n`.
        #[arg(long)]
        matrix: Option<String>,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
    },
    /// Number of distinct lines of the binary form `Σ c_k a^k b^(D−k)`.
    NashCount {
        #[arg(long)]
        degree: usize,
        /// Coefficients `c0,...,cD`.
        #[arg(long)]
        coeffs: String,
    },
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

fn parse_list(text: &str, what: &str) -> Result<Vec<GaussianRational>, CliError> {
    text.split(',')
        .map(|v| document::parse_value(v).map_err(|e| usage(format!("{what} `{v}`: {e}"))))
        .collect()
}

fn parse_epsilon(text: &str) -> Result<BTreeMap<GaussianRational, usize>, CliError> {
    text.split(',')
        .map(|pair| {
            let (t, e) = pair
                .split_once(':')
                .ok_or_else(|| usage(format!("expected `t:ε`, found `{pair}`")))?;
            let t = document::parse_value(t).map_err(|e| usage(format!("parameter `{t}`: {e}")))?;
            let e = e.trim().parse().map_err(|_| usage(format!("ε `{e}` is not a natural number")))?;
            Ok((t, e))
        })
        .collect()
}

fn load(input: &Input) -> Result<ParsedCurve, CliError> {
    match (&input.file, &input.example) {
        (_, Some(name)) => Ok(ParsedCurve::Family {
            curve: builtin_example(name)?,
            epsilon: BTreeMap::new(),
        }),
        (Some(path), None) => load_file(path),
        (None, None) => Err(usage("a file or --example is required")),
    }
}

fn load_file(path: &PathBuf) -> Result<ParsedCurve, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_curve_document(&text)
}

/// Invariants of `c`, with `s` and its certificate when `c` has two or more
/// branches.
fn germ_report(c: &CurveGerm, trials: usize, seed: u64) -> Result<(Value, Option<Value>), CliError> {
    let mut rep = invariant_report(c)?;
    let mut cert_json = None;
    if rep.r >= 2 {
        let (_, cert) = certify_generic(c, trials, seed)?;
        if cert.verdict != CertificateVerdict::Certified {
            return Err(Error::InconclusiveGenericity {
                reason: format!(
                    "least matrix attained by {} of {} samples, {} needed",
                    cert.samples_attaining, cert.samples_tried, cert.threshold
                ),
            }
            .into());
        }
        rep.s = Some(cert.total());
        cert_json = Some(report::certificate(None, &cert));
    }
    Ok((report::invariants(&rep), cert_json))
}

fn invariants(curve: &ParsedCurve, samples: Option<&str>, trials: usize, seed: u64) -> Result<Value, CliError> {
    match curve {
        ParsedCurve::Germ(c) => {
            if samples.is_some() {
                return Err(usage("--samples applies to families only"));
            }
            let (row, cert) = germ_report(c, trials, seed)?;
            Ok(json!({
                "table": [row],
                "certificates": cert.into_iter().collect::<Vec<_>>(),
                "caveats": [],
            }))
        }
        ParsedCurve::Family { curve, .. } => {
            let samples = samples.map_or_else(|| Ok(default_samples()), |s| parse_list(s, "sample"))?;
            family_invariants(curve, &samples, trials, seed)
        }
    }
}

fn family_invariants(
    f: &FamilyCurve,
    samples: &[GaussianRational],
    trials: usize,
    seed: u64,
) -> Result<Value, CliError> {
    let mut table = Vec::new();
    let mut certificates = Vec::new();
    for t in samples {
        let (mut row, cert) = germ_report(&eval_fiber(f, t)?, trials, seed)?;
        row["t"] = report::value(t);
        table.push(row);
        if let Some(mut cert) = cert {
            cert["t"] = report::value(t);
            certificates.push(cert);
        }
    }
    Ok(json!({
        "samples": samples.iter().map(report::value).collect::<Vec<_>>(),
        "table": table,
        "certificates": certificates,
        "caveats": ["s is computed with a projection certified separately for each sample"],
    }))
}

fn classify(
    curve: &ParsedCurve,
    samples: Option<&str>,
    trials: usize,
    seed: u64,
    epsilon: Option<&str>,
) -> Result<Value, CliError> {
    let ParsedCurve::Family { curve, epsilon: from_doc } = curve else {
        return Err(usage("classify needs a family"));
    };
    let samples = samples.map_or_else(|| Ok(default_samples()), |s| parse_list(s, "sample"))?;
    let mut eps = from_doc.clone();
    if let Some(text) = epsilon {
        eps.extend(parse_epsilon(text)?);
    }
    let rep = classify_family(curve, &samples, trials, seed, Some(&eps))?;
    Ok(report::classification(&rep, &theorem_consistency_check(&rep)))
}

fn project(curve: &ParsedCurve, matrix: Option<&str>, trials: usize, seed: u64) -> Result<Value, CliError> {
    let ParsedCurve::Germ(c) = curve else {
        return Err(usage("project needs a single curve (\"family\": false)"));
    };
    let (p, cert) = match matrix {
        Some(text) => {
            let entries = parse_list(text, "matrix entry")?;
            if entries.len() % 2 != 0 {
                return Err(usage("the matrix needs an even number of entries"));
            }
            let n = entries.len() / 2;
            (LinearProjection::new(vec![entries[..n].to_vec(), entries[n..].to_vec()])?, None)
        }
        None => {
            let (p, cert) = certify_generic(c, trials, seed)?;
            (p, Some(report::certificate(None, &cert)))
        }
    };
    let image = apply_projection(&p, c)?;
    let m = intersection_matrix(&image)?;
    let s: usize = m.iter().enumerate().map(|(i, row)| row[i + 1..].iter().sum::<usize>()).sum();
    let doc = CurveDocument::from_curve(&ParsedCurve::Germ(image));
    Ok(json!({
        "projection": report::projection(&p),
        "image": doc.branches,
        "intersection_matrix": m,
        "s": (c.branch_count() >= 2).then_some(s),
        "certificate": cert,
    }))
}

fn nash_count(degree: usize, coeffs: &str) -> Result<Value, CliError> {
    let coeffs = parse_list(coeffs, "coefficient")?;
    if coeffs.len() != degree + 1 {
        return Err(usage(format!(
            "degree {degree} needs {} coefficients, found {}",
            degree + 1,
            coeffs.len()
        )));
    }
    let form = BinaryForm::new(coeffs)?;
    Ok(json!({
        "degree": degree,
        "exceptional_tangents": count_exceptional_tangents(&form),
    }))
}

fn execute(cli: &Cli) -> Result<Value, CliError> {
    match &cli.command {
        Command::Invariants { input, samples, trials } => {
            invariants(&load(input)?, samples.as_deref(), *trials, cli.seed)
        }
        Command::Classify {
            input,
            samples,
            trials,
            epsilon,
        } => classify(&load(input)?, samples.as_deref(), *trials, cli.seed, epsilon.as_deref()),
        Command::Project { file, matrix, trials } => {
            project(&load_file(file)?, matrix.as_deref(), *trials, cli.seed)
        }
        Command::NashCount { degree, coeffs } => nash_count(*degree, coeffs),
    }
}

/// Runs the command line `argv` (program name first), writing the report
/// to `out` and diagnostics to `err`. Returns the exit status.
pub fn run_with<I, T>(argv: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(err, "{e}");
                2
            } else {
                let _ = write!(out, "{e}");
                0
            };
            return code;
        }
    };
    match execute(&cli) {
        Ok(v) => {
            let text = serde_json::to_string_pretty(&v).expect("reports serialize");
            let _ = writeln!(out, "{text}");
            0
        }
        Err(e) => {
            let _ = writeln!(err, "{}: {e}", e.name());
            e.exit_code()
        }
    }
}

/// [`run_with`] on the process's standard streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_with(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
