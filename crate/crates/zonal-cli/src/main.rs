//! `zonal` — construct, evaluate, and verify zonal spherical functions on
//! SU(N)/SO(N) from the command line.
//!
//! Subcommands: coeffs, eval, mc, genfun, series, eigencheck, verify.
//! Structured results go to stdout (JSON by default); diagnostics to
//! stderr. Exit codes: 0 success, 1 numerical failure (tolerance/branch),
//! 2 usage error. All randomness is seeded (fixed default seed), so
//! identical invocations print identical bytes.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};

use zonal::algebra::{poly_to_json, EvalPoint, MultiPoly};
use zonal::genfun::{closed_form_n2, quad_f, series_extract, GenFunParams};
use zonal::haar::mc_phi;
use zonal::radial::{eigencheck, eigencheck_to_json, Convention, OperatorSpec};
use zonal::spherical::{phi_fundamental, phi_n2, phi_pq_oracle, SeriesTable, WeightLabel};
use zonal::{Error, DEFAULT_SEED};

#[derive(Parser)]
#[command(
    name = "zonal",
    version,
    about = "Zonal spherical functions on SU(N)/SO(N): exact tables, Monte Carlo and quadrature checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConventionArg {
    Jack,
    HalfAngle,
    PaperLiteral,
}

impl From<ConventionArg> for Convention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::Jack => Convention::JackForm,
            ConventionArg::HalfAngle => Convention::HalfAngle,
            ConventionArg::PaperLiteral => Convention::PaperLiteral,
        }
    }
}

/// Label selection shared by eval / mc / eigencheck.
#[derive(Args)]
struct LabelArgs {
    /// Number of variables N (inferred as 3 when -p/-q are used)
    #[arg(long)]
    n: Option<usize>,
    /// Fundamental weight l, or a comma list l1,l2,.. of all N-1 parts
    #[arg(long)]
    l: Option<String>,
    /// N = 3 label part p
    #[arg(short, long)]
    p: Option<u32>,
    /// N = 3 label part q
    #[arg(short, long)]
    q: Option<u32>,
}

/// Evaluation-point selection: real coordinates or torus angles.
#[derive(Args)]
struct PointArgs {
    /// Real coordinates x1,x2,..
    #[arg(long, value_name = "LIST")]
    x: Option<String>,
    /// Torus angles theta1,..: N values summing to 0, or N-1 values with
    /// the last angle filled in as minus their sum
    #[arg(long, value_name = "LIST")]
    theta: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the exact coefficient table of a fundamental-weight function
    Coeffs {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        l: u32,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Evaluate an exactly-constructed function at a point
    Eval {
        #[command(flatten)]
        label: LabelArgs,
        #[command(flatten)]
        point: PointArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Monte Carlo estimate of the integral representation
    Mc {
        #[command(flatten)]
        label: LabelArgs,
        #[command(flatten)]
        point: PointArgs,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Generating function: quadrature of the 1-d integral representation
    /// (N = 3), or the closed form (N = 2, omit --t2)
    Genfun {
        #[command(flatten)]
        point: PointArgs,
        #[arg(long)]
        t1: f64,
        #[arg(long)]
        t2: Option<f64>,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Exact Φ_pq table in the elementary-symmetric basis (z3 = 1)
    Series {
        #[arg(long)]
        pmax: u32,
        #[arg(long)]
        qmax: u32,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Exact eigenfunction check for the radial operator
    Eigencheck {
        #[command(flatten)]
        label: LabelArgs,
        #[arg(long, value_enum, default_value_t = ConventionArg::Jack)]
        convention: ConventionArg,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run the verification suite (every criterion, one report each)
    Verify {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Comma list of criterion ids to run (default: all)
        #[arg(long)]
        only: Option<String>,
        #[arg(long)]
        threads: Option<usize>,
    },
}

/// Usage errors exit 2; numerical failures exit 1.
struct CliError {
    message: String,
    code: u8,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError {
            message: message.into(),
            code: 2,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ToleranceNotMet { .. }
            | Error::BranchCut
            | Error::BranchAmbiguity { .. }
            | Error::NearSingularIntegrand { .. }
            | Error::InternalMismatch { .. } => 1,
            _ => 2,
        };
        CliError {
            message: e.to_string(),
            code,
        }
    }
}

fn parse_csv_f64(s: &str, what: &str) -> Result<Vec<f64>, CliError> {
    s.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<f64>()
                .map_err(|_| CliError::usage(format!("cannot parse {what} entry '{tok}'")))
        })
        .collect()
}

fn parse_point(n: usize, point: &PointArgs) -> Result<EvalPoint, CliError> {
    match (&point.x, &point.theta) {
        (Some(xs), None) => {
            let coords = parse_csv_f64(xs, "--x")?;
            if coords.len() != n {
                return Err(CliError::usage(format!(
                    "--x needs {n} coordinates, got {}",
                    coords.len()
                )));
            }
            Ok(EvalPoint::from_reals(&coords))
        }
        (None, Some(ts)) => {
            let mut angles = parse_csv_f64(ts, "--theta")?;
            if angles.len() + 1 == n {
                let sum: f64 = angles.iter().sum();
                angles.push(-sum);
            } else if angles.len() == n {
                let sum: f64 = angles.iter().sum();
                if sum.abs() > 1e-9 {
                    return Err(CliError::usage(format!(
                        "--theta angles must sum to 0 (got {sum:.3e}); \
                         or pass {} angles and the last is filled in",
                        n - 1
                    )));
                }
            } else {
                return Err(CliError::usage(format!(
                    "--theta needs {n} (or {}) angles, got {}",
                    n - 1,
                    angles.len()
                )));
            }
            Ok(EvalPoint::from_angles(&angles))
        }
        _ => Err(CliError::usage("exactly one of --x / --theta is required")),
    }
}

struct ResolvedLabel {
    n: usize,
    label: WeightLabel,
}

fn parse_label(args: &LabelArgs) -> Result<ResolvedLabel, CliError> {
    let pq_used = args.p.is_some() || args.q.is_some();
    if pq_used && args.l.is_some() {
        return Err(CliError::usage("use either --l or -p/-q, not both"));
    }
    if pq_used {
        let n = args.n.unwrap_or(3);
        if n != 3 {
            return Err(CliError::usage("-p/-q labels require N = 3"));
        }
        let p = args.p.unwrap_or(0);
        let q = args.q.unwrap_or(0);
        return Ok(ResolvedLabel {
            n,
            label: WeightLabel::pq(p, q),
        });
    }
    let n = args
        .n
        .ok_or_else(|| CliError::usage("--n is required with --l"))?;
    if n < 2 {
        return Err(CliError::usage(format!("N = {n} must be >= 2")));
    }
    let lspec = args
        .l
        .as_deref()
        .ok_or_else(|| CliError::usage("a label is required: --l or -p/-q"))?;
    let parts: Vec<u32> = lspec
        .split(',')
        .map(|tok| {
            tok.trim()
                .parse::<u32>()
                .map_err(|_| CliError::usage(format!("cannot parse --l entry '{tok}'")))
        })
        .collect::<Result<_, _>>()?;
    let label = if parts.len() == 1 {
        WeightLabel::fundamental(n, parts[0])
    } else {
        WeightLabel::new(n, parts)
    }
    .map_err(CliError::from)?;
    Ok(ResolvedLabel { n, label })
}

/// The exactly-constructed polynomial for a label, where one exists.
fn exact_polynomial(resolved: &ResolvedLabel) -> Result<MultiPoly, CliError> {
    let label = &resolved.label;
    if resolved.n == 2 {
        return Ok(phi_n2(label.parts()[0]));
    }
    if label.is_fundamental() {
        return Ok(phi_fundamental(resolved.n, label.parts()[0])?);
    }
    if resolved.n == 3 {
        return Ok(phi_pq_oracle(label.parts()[0], label.parts()[1])?);
    }
    Err(CliError::usage(
        "exact construction covers fundamental labels (any N) and (p,q) labels at N = 3",
    ))
}

fn complex_value_json(v: Complex64) -> Value {
    json!({ "value_re": v.re, "value_im": v.im })
}

/// Render a JSON value in the selected output format. Pretty and CSV
/// print floats with 17 significant digits (round-trip safe).
fn render(value: &Value, format: Format) -> String {
    match format {
        Format::Json => value.to_string(),
        Format::Pretty => {
            let mut out = String::new();
            render_pretty(value, 0, &mut out);
            out
        }
        Format::Csv => render_csv(value),
    }
}

fn fmt_number(n: &serde_json::Number) -> String {
    if let Some(i) = n.as_i64() {
        i.to_string()
    } else if let Some(u) = n.as_u64() {
        u.to_string()
    } else {
        format!("{:.16e}", n.as_f64().unwrap_or(f64::NAN))
    }
}

fn render_pretty(value: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                match v {
                    Value::Object(_) | Value::Array(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_pretty(v, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", scalar_pretty(v))),
                }
            }
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                match v {
                    Value::Object(_) | Value::Array(_) => {
                        out.push_str(&format!("{pad}[{i}]\n"));
                        render_pretty(v, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}[{i}] {}\n", scalar_pretty(v))),
                }
            }
        }
        _ => out.push_str(&format!("{pad}{}\n", scalar_pretty(value))),
    }
}

fn scalar_pretty(value: &Value) -> String {
    match value {
        Value::Number(n) => fmt_number(n),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn render_csv(value: &Value) -> String {
    let mut out = String::new();
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                match v {
                    Value::Number(n) => out.push_str(&format!("{k},{}\n", fmt_number(n))),
                    Value::String(s) => out.push_str(&format!("{k},{s}\n")),
                    other => out.push_str(&format!("{k},{other}\n")),
                }
            }
        }
        other => out.push_str(&format!("value,{other}\n")),
    }
    out
}

fn configure_threads(threads: Option<usize>) -> Result<(), CliError> {
    if let Some(t) = threads {
        if t == 0 {
            return Err(CliError::usage("--threads must be >= 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| CliError::usage(format!("thread pool: {e}")))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<Option<u8>, CliError> {
    match cli.command {
        Command::Coeffs { n, l, format } => {
            if n < 2 {
                return Err(CliError::usage(format!("N = {n} must be >= 2")));
            }
            let table = SeriesTable::fundamental(n, l)?;
            println!("{}", render(&poly_to_json(&table.to_poly()), format));
            Ok(None)
        }
        Command::Eval {
            label,
            point,
            format,
        } => {
            let resolved = parse_label(&label)?;
            let poly = exact_polynomial(&resolved)?;
            let pt = parse_point(resolved.n, &point)?;
            let v = poly.eval_point(&pt)?;
            println!("{}", render(&complex_value_json(v), format));
            Ok(None)
        }
        Command::Mc {
            label,
            point,
            samples,
            seed,
            threads,
            format,
        } => {
            configure_threads(threads)?;
            let resolved = parse_label(&label)?;
            let pt = parse_point(resolved.n, &point)?;
            let est = mc_phi(&resolved.label, &pt, samples, seed)?;
            println!("{}", render(&est.to_json(), format));
            Ok(None)
        }
        Command::Genfun {
            point,
            t1,
            t2,
            tol,
            format,
        } => {
            // Try N = 3 first; a 2-coordinate point selects the closed form.
            let n = match (&point.x, &point.theta) {
                (Some(s), _) => s.split(',').count(),
                (_, Some(s)) => {
                    let k = s.split(',').count();
                    if k <= 2 {
                        2
                    } else {
                        3
                    }
                }
                _ => return Err(CliError::usage("exactly one of --x / --theta is required")),
            };
            match n {
                2 => {
                    if t2.is_some() {
                        return Err(CliError::usage("--t2 does not apply at N = 2"));
                    }
                    let pt = parse_point(2, &point)?;
                    let v =
                        closed_form_n2(pt.coords()[0], pt.coords()[1], Complex64::new(t1, 0.0))?;
                    println!("{}", render(&complex_value_json(v), format));
                }
                3 => {
                    let pt = parse_point(3, &point)?;
                    let params = GenFunParams::real(t1, t2.unwrap_or(0.0))?;
                    let r = quad_f(&pt, &params, tol)?;
                    println!("{}", render(&r.to_json(), format));
                }
                k => {
                    return Err(CliError::usage(format!(
                        "genfun supports N = 2 or 3, got {k} coordinates"
                    )))
                }
            }
            Ok(None)
        }
        Command::Series { pmax, qmax, format } => {
            let table = series_extract(pmax, qmax)?;
            let rows: Vec<Value> = table
                .iter()
                .map(|((p, q), poly)| json!({ "p": p, "q": q, "polynomial": poly_to_json(poly) }))
                .collect();
            println!("{}", render(&Value::Array(rows), format));
            Ok(None)
        }
        Command::Eigencheck {
            label,
            convention,
            format,
        } => {
            let resolved = parse_label(&label)?;
            let poly = exact_polynomial(&resolved)?;
            let spec = OperatorSpec::new(convention.into(), resolved.n);
            let check = eigencheck(&spec, &poly)?;
            println!("{}", render(&eigencheck_to_json(&check), format));
            Ok(None)
        }
        Command::Verify {
            seed,
            only,
            threads,
        } => {
            configure_threads(threads)?;
            let ids: Vec<u32> = match only {
                None => zonal::acceptance::CRITERIA.to_vec(),
                Some(list) => list
                    .split(',')
                    .map(|tok| {
                        let id = tok.trim().parse::<u32>().map_err(|_| {
                            CliError::usage(format!("cannot parse --only entry '{tok}'"))
                        })?;
                        if !zonal::acceptance::CRITERIA.contains(&id) {
                            return Err(CliError::usage(format!("unknown criterion id {id}")));
                        }
                        Ok(id)
                    })
                    .collect::<Result<_, _>>()?,
            };
            let reports: Vec<_> = ids
                .iter()
                .filter_map(|&id| zonal::acceptance::run_criterion(id, seed))
                .collect();
            for r in &reports {
                eprintln!(
                    "criterion {:>2}: {} — {} ({})",
                    r.id,
                    if r.passed { "PASS" } else { "FAIL" },
                    r.name,
                    r.detail
                );
            }
            let all_passed = reports.iter().all(|r| r.passed);
            let doc = json!({
                "seed": seed,
                "all_passed": all_passed,
                "criteria": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
            });
            println!("{doc}");
            Ok(if all_passed { None } else { Some(1) })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(code)) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
