//! Command-line driver for the regularity toolkit.
//!
//! Every subcommand prints a JSON run report to stdout (and optionally to a
//! file via `--out`). Reports echo all inputs needed to reproduce the run,
//! so re-running with identical flags yields byte-identical output except
//! for `wall_time_ms`.
//!
//! Exit codes are a stable contract:
//! `0` success / everything regular, `1` usage or input error,
//! `2` a violation (or violation candidate) was found, `3` the reduction
//! pipeline failed after exhausting retries.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use klreg::rational::parse_rational;
use klreg::verifier::check_configuration_with_delta;
use klreg::{
    adversarial_search, bounds_table, check_subspace_configuration, complex_moment_curve,
    confluent_vandermonde_certificate, count_roots_with_multiplicity, find_violating_hyperplane,
    moment_curve, reduce_dimension, sample_verify, sampled_from_csv, tensor_product, trig_curve,
    truncate, Configuration, EmbeddingSpec, Error, IncidencePolynomial, PolynomialBasis,
    RootDomain, DEFAULT_TOLERANCE,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VIOLATION: i32 = 2;
pub const EXIT_PIPELINE: i32 = 3;

const DEFAULT_DELTA: f64 = 1e-6;

/// One machine-readable record per invocation.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub parameters: BTreeMap<String, Value>,
    pub results: Value,
    pub seed: u64,
    pub wall_time_ms: u128,
    pub version: String,
}

impl RunReport {
    fn new(command: &str, parameters: BTreeMap<String, Value>, results: Value, seed: u64) -> Self {
        Self {
            command: command.to_string(),
            parameters,
            results,
            seed,
            wall_time_ms: 0,
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "klreg",
    version,
    about = "Verify, attack, bound, certify, and project multi-point regular embeddings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check regularity of random or supplied configurations on a map
    Verify(VerifyArgs),
    /// Minimize the regularity margin to hunt for violations
    Search(SearchArgs),
    /// Print dimension bounds for (n, k, l)
    Bounds(BoundsArgs),
    /// Exact node certificates and root counts
    Certify(CertifyArgs),
    /// Reduce ambient dimension by validated central projections
    Reduce(ReduceArgs),
}

/// Map descriptors: `moment:M`, `trig:H`, `cmoment:M`,
/// `tensor:<desc>,<desc>`, `trunc:<keep>:<desc>`, `sampled:<file.csv>`.
#[derive(Args)]
struct VerifyArgs {
    /// Map descriptor (e.g. moment:3, trig:2, tensor:moment:2,moment:2)
    #[arg(long)]
    map: String,
    /// Number of through points
    #[arg(long)]
    k: usize,
    /// Number of tangency points
    #[arg(long)]
    l: usize,
    /// CSV file holding one configuration to check instead of sampling
    #[arg(long)]
    config: Option<PathBuf>,
    /// Number of random configurations to draw
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Relative tolerance for the rank decision
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    tol: f64,
    /// Minimum chart distance between configuration points
    #[arg(long, default_value_t = DEFAULT_DELTA)]
    delta: f64,
    /// Also write the JSON report to this file
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SearchArgs {
    #[command(flatten)]
    base: VerifyArgs,
    /// Independent descent restarts
    #[arg(long, default_value_t = 16)]
    restarts: usize,
    /// Coordinate-descent iterations per restart
    #[arg(long, default_value_t = 1000)]
    iters: usize,
    /// Half-width of the sampling box around the chart origin
    #[arg(long = "box", default_value_t = 1.0)]
    box_half_width: f64,
}

#[derive(Copy, Clone, ValueEnum)]
enum OutputFormat {
    Json,
    Table,
}

#[derive(Args)]
struct BoundsArgs {
    /// Domain dimension
    #[arg(long)]
    n: u32,
    #[arg(long)]
    k: u32,
    #[arg(long)]
    l: u32,
    /// Treat the domain as closed (compact without boundary)
    #[arg(long)]
    closed: bool,
    /// Sweep the whole grid n' <= n, k' <= k, l' <= l
    #[arg(long)]
    range: bool,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, ValueEnum)]
enum CoefficientBasis {
    /// Coefficients a0,a1,... of a0 + a1 t + a2 t^2 + ...
    Monomial,
    /// Coefficients a0,a1,b1,a2,b2,... of a0 + sum_i (ai cos(i t) + bi sin(i t))
    Trig,
}

#[derive(Args)]
struct CertifyArgs {
    /// Comma-separated simple nodes as rationals ("1/3,-2")
    #[arg(long)]
    simple: Option<String>,
    /// Comma-separated double (tangency) nodes as rationals
    #[arg(long)]
    double: Option<String>,
    /// Comma-separated polynomial coefficients (floating point)
    #[arg(long, conflicts_with_all = ["simple", "double"])]
    poly: Option<String>,
    #[arg(long, value_enum, default_value_t = CoefficientBasis::Monomial)]
    basis: CoefficientBasis,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ReduceArgs {
    #[arg(long)]
    map: String,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    l: usize,
    /// Ambient dimension to reach
    #[arg(long)]
    target: usize,
    /// Random configurations per validation pass
    #[arg(long, default_value_t = 1000)]
    budget: usize,
    /// Center retries per projection step
    #[arg(long, default_value_t = 32)]
    retries: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Parses a map descriptor. Tensor parts may be wrapped in parentheses to
/// disambiguate nesting: `tensor:(tensor:moment:1,moment:1),moment:2`.
pub fn parse_map(descriptor: &str) -> Result<EmbeddingSpec, Error> {
    let descriptor = descriptor.trim();
    let stripped = descriptor
        .strip_prefix('(')
        .and_then(|rest| rest.strip_suffix(')'))
        .unwrap_or(descriptor);
    let (head, rest) = stripped
        .split_once(':')
        .ok_or_else(|| Error::InvalidParameter(format!("malformed map descriptor `{descriptor}`")))?;
    let parse_count = |what: &str, s: &str| -> Result<usize, Error> {
        s.trim()
            .parse::<usize>()
            .map_err(|_| Error::InvalidParameter(format!("{what} must be an integer, got `{s}`")))
    };
    match head.trim() {
        "moment" => moment_curve(parse_count("moment degree", rest)?),
        "trig" => trig_curve(parse_count("harmonic count", rest)?),
        "cmoment" => complex_moment_curve(parse_count("complex degree", rest)?),
        "trunc" => {
            let (keep, inner) = rest.split_once(':').ok_or_else(|| {
                Error::InvalidParameter("trunc needs `trunc:<keep>:<descriptor>`".into())
            })?;
            truncate(parse_map(inner)?, parse_count("kept coordinates", keep)?)
        }
        "tensor" => {
            let (left, right) = split_top_level(rest).ok_or_else(|| {
                Error::InvalidParameter("tensor needs two comma-separated descriptors".into())
            })?;
            Ok(tensor_product(parse_map(left)?, parse_map(right)?))
        }
        "sampled" => {
            let file = fs::File::open(rest.trim()).map_err(|e| {
                Error::InvalidInput(format!("cannot open sampled map `{}`: {e}", rest.trim()))
            })?;
            sampled_from_csv(file)
        }
        other => Err(Error::InvalidParameter(format!("unknown map family `{other}`"))),
    }
}

/// Splits at the first comma that is not inside parentheses.
fn split_top_level(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0usize;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.checked_sub(1)?,
            ',' if depth == 0 => return Some((&s[..i], &s[i + 1..])),
            _ => {}
        }
    }
    None
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::ReductionFailed { .. } => EXIT_PIPELINE,
        _ => EXIT_USAGE,
    }
}


fn parameter_map(entries: &[(&str, Value)]) -> BTreeMap<String, Value> {
    entries.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn parse_rational_list(raw: &str) -> Result<Vec<num_rational::BigRational>, Error> {
    raw.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(parse_rational)
        .collect()
}

fn parse_float_list(raw: &str) -> Result<Vec<f64>, Error> {
    raw.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<f64>()
                .map_err(|_| Error::InvalidParameter(format!("not a number: `{s}`")))
        })
        .collect()
}

struct Outcome {
    code: i32,
    report: RunReport,
    out: Option<PathBuf>,
    /// Pre-rendered non-JSON text (table output); replaces the JSON on stdout.
    rendered: Option<String>,
}

fn cmd_verify(a: VerifyArgs) -> Result<Outcome, Error> {
    let spec = parse_map(&a.map)?;
    let mut parameters = parameter_map(&[
        ("map", json!(a.map)),
        ("k", json!(a.k)),
        ("l", json!(a.l)),
        ("tol", json!(a.tol)),
        ("delta", json!(a.delta)),
    ]);

    let (code, results) = if let Some(path) = &a.config {
        parameters.insert("config".into(), json!(path.display().to_string()));
        let file = fs::File::open(path)
            .map_err(|e| Error::InvalidInput(format!("cannot open `{}`: {e}", path.display())))?;
        let config = Configuration::from_csv(file, spec.domain_dim())?;
        if config.k() != a.k || config.l() != a.l {
            return Err(Error::InvalidParameter(format!(
                "configuration file holds (k,l)=({},{}) but flags say ({},{})",
                config.k(),
                config.l(),
                a.k,
                a.l
            )));
        }
        let has_subspaces = config.directions.iter().any(|group| group.len() > 1);
        let verdict = if has_subspaces {
            check_subspace_configuration(&spec, &config, a.tol)?
        } else {
            check_configuration_with_delta(&spec, &config, a.tol, a.delta)?
        };
        let witness = if verdict.regular {
            None
        } else {
            find_violating_hyperplane(&spec, &config, a.tol)?
        };
        let code = if verdict.regular { EXIT_OK } else { EXIT_VIOLATION };
        (code, json!({ "mode": "config", "verdict": verdict, "flat_witness": witness }))
    } else {
        parameters.insert("samples".into(), json!(a.samples));
        let report = sample_verify(&spec, a.k, a.l, a.samples, a.delta, a.seed, a.tol)?;
        let witness = if report.converged {
            find_violating_hyperplane(&spec, &report.best_configuration, a.tol.max(1e-6))?
        } else {
            None
        };
        let code = if report.converged { EXIT_VIOLATION } else { EXIT_OK };
        (code, json!({ "mode": "samples", "search": report, "flat_witness": witness }))
    };

    let report = RunReport::new("verify", parameters, results, a.seed);
    Ok(Outcome { code, report, out: a.out, rendered: None })
}

fn cmd_search(a: SearchArgs) -> Result<Outcome, Error> {
    let b = a.base;
    let spec = parse_map(&b.map)?;
    let parameters = parameter_map(&[
        ("map", json!(b.map)),
        ("k", json!(b.k)),
        ("l", json!(b.l)),
        ("tol", json!(b.tol)),
        ("delta", json!(b.delta)),
        ("restarts", json!(a.restarts)),
        ("iters", json!(a.iters)),
        ("box", json!(a.box_half_width)),
    ]);

    let report = adversarial_search(
        &spec,
        b.k,
        b.l,
        a.restarts,
        a.iters,
        b.delta,
        a.box_half_width,
        b.seed,
    )?;
    let verdict =
        check_configuration_with_delta(&spec, &report.best_configuration, b.tol, b.delta)?;
    let witness = if verdict.regular {
        None
    } else {
        find_violating_hyperplane(&spec, &report.best_configuration, b.tol.max(1e-6))?
    };
    let code = if verdict.regular { EXIT_OK } else { EXIT_VIOLATION };
    let results = json!({
        "search": report,
        "best_verdict": verdict,
        "flat_witness": witness,
    });
    let report = RunReport::new("search", parameters, results, b.seed);
    Ok(Outcome { code, report, out: b.out, rendered: None })
}

fn render_bounds_table(rows: &[klreg::BoundsResult]) -> String {
    let mut out = String::from(
        "n  k  l  closed  lower_count  lower_main  best_lower  upper  exact\n",
    );
    for r in rows {
        let exact = r
            .exact
            .as_ref()
            .map_or_else(|| "-".to_string(), |e| e.value.to_string());
        out.push_str(&format!(
            "{:<2} {:<2} {:<2} {:<7} {:<12} {:<11} {:<11} {:<6} {}\n",
            r.n,
            r.k,
            r.l,
            r.closed,
            r.lower_count,
            r.lower_main,
            r.best_lower(),
            r.upper_main,
            exact
        ));
    }
    out
}

fn cmd_bounds(a: BoundsArgs) -> Result<Outcome, Error> {
    let parameters = parameter_map(&[
        ("n", json!(a.n)),
        ("k", json!(a.k)),
        ("l", json!(a.l)),
        ("closed", json!(a.closed)),
        ("range", json!(a.range)),
    ]);
    let rows = if a.range {
        let mut rows = Vec::new();
        for n in 1..=a.n {
            for k in 0..=a.k {
                for l in 0..=a.l {
                    if k + l == 0 {
                        continue;
                    }
                    rows.push(bounds_table(n, k, l, a.closed)?);
                }
            }
        }
        rows
    } else {
        vec![bounds_table(a.n, a.k, a.l, a.closed)?]
    };
    let rendered = match a.format {
        OutputFormat::Json => None,
        OutputFormat::Table => Some(render_bounds_table(&rows)),
    };
    let results = if a.range { json!({ "grid": rows }) } else { serde_json::to_value(&rows[0]).expect("serializable") };
    let report = RunReport::new("bounds", parameters, results, 0);
    Ok(Outcome { code: EXIT_OK, report, out: a.out, rendered })
}

fn cmd_certify(a: CertifyArgs) -> Result<Outcome, Error> {
    if let Some(raw) = &a.poly {
        let coefficients = parse_float_list(raw)?;
        if coefficients.is_empty() {
            return Err(Error::InvalidParameter("need at least one coefficient".into()));
        }
        let (poly, domain, bound, basis_name) = match a.basis {
            CoefficientBasis::Monomial => {
                let degree = coefficients.len() - 1;
                let poly = IncidencePolynomial {
                    basis: PolynomialBasis::Monomial { degree },
                    coefficients,
                };
                (poly, RootDomain::RealLine, degree, "monomial")
            }
            CoefficientBasis::Trig => {
                if coefficients.len() % 2 == 0 {
                    return Err(Error::InvalidParameter(
                        "trig coefficients come as a0,a1,b1,...,ah,bh (odd count)".into(),
                    ));
                }
                let harmonics = coefficients.len() / 2;
                let poly = IncidencePolynomial {
                    basis: PolynomialBasis::Trigonometric { harmonics },
                    coefficients,
                };
                (poly, RootDomain::Circle, 2 * harmonics, "trig")
            }
        };
        let parameters = parameter_map(&[
            ("poly", json!(raw)),
            ("basis", json!(basis_name)),
        ]);
        let count = count_roots_with_multiplicity(&poly, domain)?;
        let code = if count <= bound { EXIT_OK } else { EXIT_VIOLATION };
        let results = json!({
            "mode": "root-count",
            "root_count": count,
            "bound": bound,
        });
        let report = RunReport::new("certify", parameters, results, 0);
        return Ok(Outcome { code, report, out: a.out, rendered: None });
    }

    if a.simple.is_none() && a.double.is_none() {
        return Err(Error::InvalidParameter(
            "certify needs --simple/--double nodes or --poly coefficients".into(),
        ));
    }
    let simple = parse_rational_list(a.simple.as_deref().unwrap_or(""))?;
    let double = parse_rational_list(a.double.as_deref().unwrap_or(""))?;
    let parameters = parameter_map(&[
        ("simple", json!(simple.iter().map(ToString::to_string).collect::<Vec<_>>())),
        ("double", json!(double.iter().map(ToString::to_string).collect::<Vec<_>>())),
    ]);
    let det = confluent_vandermonde_certificate(&simple, &double)?;
    let nonzero = det != num_rational::BigRational::from_integer(0.into());
    let code = if nonzero { EXIT_OK } else { EXIT_VIOLATION };
    let results = json!({
        "mode": "certificate",
        "determinant": det.to_string(),
        "nonzero": nonzero,
    });
    let report = RunReport::new("certify", parameters, results, 0);
    Ok(Outcome { code, report, out: a.out, rendered: None })
}

fn cmd_reduce(a: ReduceArgs) -> Result<Outcome, Error> {
    let spec = parse_map(&a.map)?;
    let parameters = parameter_map(&[
        ("map", json!(a.map)),
        ("k", json!(a.k)),
        ("l", json!(a.l)),
        ("target", json!(a.target)),
        ("budget", json!(a.budget)),
        ("retries", json!(a.retries)),
    ]);
    let plan = reduce_dimension(&spec, a.k, a.l, a.target, a.retries, a.seed, a.budget)?;
    let results = serde_json::to_value(&plan).expect("plans are serializable");
    let report = RunReport::new("reduce", parameters, results, a.seed);
    Ok(Outcome { code: EXIT_OK, report, out: a.out, rendered: None })
}

fn finalize(mut outcome: Outcome, started: Instant) -> i32 {
    outcome.report.wall_time_ms = started.elapsed().as_millis();
    let text =
        serde_json::to_string_pretty(&outcome.report).expect("reports are serializable");
    match &outcome.rendered {
        Some(table) => print!("{table}"),
        None => println!("{text}"),
    }
    if let Some(path) = &outcome.out {
        if let Err(e) = write_report(path, &text) {
            eprintln!("error: cannot write report to `{}`: {e}", path.display());
            return EXIT_USAGE;
        }
    }
    outcome.code
}

fn write_report(path: &Path, text: &str) -> std::io::Result<()> {
    fs::write(path, format!("{text}\n"))
}

/// Runs the CLI on `args` (without the program name) and returns the exit
/// code. Reports go to stdout, diagnostics to stderr.
pub fn run<I>(args: I) -> i32
where
    I: IntoIterator,
    I::Item: Into<String>,
{
    let mut argv = vec!["klreg".to_string()];
    argv.extend(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            let benign = matches!(
                err.kind(),
                ErrorKind::DisplayHelp
                    | ErrorKind::DisplayVersion
                    | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand
            );
            let _ = err.print();
            return if benign { EXIT_OK } else { EXIT_USAGE };
        }
    };
    let started = Instant::now();
    let outcome = match cli.command {
        Command::Verify(a) => cmd_verify(a),
        Command::Search(a) => cmd_search(a),
        Command::Bounds(a) => cmd_bounds(a),
        Command::Certify(a) => cmd_certify(a),
        Command::Reduce(a) => cmd_reduce(a),
    };
    match outcome {
        Ok(outcome) => finalize(outcome, started),
        Err(err) => {
            eprintln!("error: {err}");
            exit_code_for(&err)
        }
    }
}
