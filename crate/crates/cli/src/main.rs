//! `fllab`: run identity verifications, tabulate FL coefficients and
//! evaluate the `K(x)K(1-x)` moments.
//!
//! Exit status: 0 when everything passed, 1 when a verification failed,
//! 2 for usage, configuration or I/O errors.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};
use fllab_core::catalog::{self, moment_quadrature, Selection};
use fllab_core::fl::{coefficient_rows, moment_series_1, moment_series_2, write_coefficients_csv};
use fllab_core::report::{
    format_num, write_reports_csv, ReportDocument, Status, Summary, ToleranceConfig,
    VerificationReport, DEFAULT_FL_PARTIAL_N, DEFAULT_MAX_TERMS, DEFAULT_QUAD_TOL,
};
use fllab_core::{CoefficientFamily, DegreeNu};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "fllab",
    version,
    about = "Numerical checks of Fourier-Legendre series identities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate both sides of catalog identities and compare them
    Verify(VerifyArgs),
    /// Print a table of FL coefficients as CSV
    Coeff(CoeffArgs),
    /// Evaluate a K(x)K(1-x) moment from its finite sum
    Moment(MomentArgs),
    /// List catalog ids with their grid sizes
    List,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("select").required(true).args(["all", "id", "prefix"])))]
struct VerifyArgs {
    /// Every identity in the catalog
    #[arg(long)]
    all: bool,
    /// One or more identity ids
    #[arg(long, num_args = 1..)]
    id: Vec<String>,
    /// Identities whose id starts with this prefix
    #[arg(long)]
    prefix: Option<String>,
    /// Relative tolerance for every point, replacing per-identity values
    #[arg(long, env = "FLLAB_TOL_REL")]
    tol_rel: Option<f64>,
    /// Absolute tolerance for every point, replacing per-identity values
    #[arg(long, env = "FLLAB_TOL_ABS")]
    tol_abs: Option<f64>,
    #[arg(long, env = "FLLAB_MAX_TERMS", default_value_t = DEFAULT_MAX_TERMS)]
    max_terms: usize,
    /// Truncation N of FL partial sums
    #[arg(long, env = "FLLAB_FL_N", default_value_t = DEFAULT_FL_PARTIAL_N)]
    fl_n: usize,
    #[arg(long, env = "FLLAB_QUAD_TOL", default_value_t = DEFAULT_QUAD_TOL)]
    quad_tol: f64,
    /// Worker threads (default: available parallelism)
    #[arg(long, env = "FLLAB_WORKERS")]
    workers: Option<usize>,
    /// Write the JSON report document here
    #[arg(long)]
    json: Option<PathBuf>,
    /// Write one CSV row per report here
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CoeffArgs {
    /// cg, dougall or k
    #[arg(long)]
    family: String,
    /// Degree ν (not used by the k family)
    #[arg(long, allow_negative_numbers = true)]
    nu: Option<f64>,
    #[arg(long)]
    m_max: usize,
    /// Write the CSV here instead of standard output
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct MomentArgs {
    #[arg(long)]
    n: usize,
    /// 1: ∫ x^n K(x)K(1-x); 2: ∫ [x(1-x)]^(n-1) K(x)K(1-x)
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
    kind: u8,
    /// Also integrate numerically and print the difference
    #[arg(long)]
    oracle: bool,
    #[arg(long, env = "FLLAB_QUAD_TOL", default_value_t = DEFAULT_QUAD_TOL)]
    quad_tol: f64,
}

/// A failure that ends the run with the usage/config status.
#[derive(Debug)]
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::Verify(args) => cmd_verify(args),
        Command::Coeff(args) => cmd_coeff(args),
        Command::Moment(args) => cmd_moment(args),
        Command::List => cmd_list(),
    };
    match result {
        Ok(code) => code,
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn create(path: &Path) -> Result<BufWriter<File>, UsageError> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| UsageError(format!("cannot write {}: {e}", path.display())))
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, UsageError> {
    let mut config = ToleranceConfig {
        tol_rel: args.tol_rel,
        tol_abs: args.tol_abs,
        max_terms: args.max_terms,
        fl_partial_n: args.fl_n,
        quad_tol: args.quad_tol,
        ..Default::default()
    };
    if let Some(w) = args.workers {
        config.workers = w;
    }
    let selection = if args.all {
        Selection::All
    } else if let Some(p) = args.prefix {
        Selection::Prefix(p)
    } else {
        Selection::Ids(args.id)
    };
    let reports = catalog::verify_all(&config, &selection)?;
    if reports.is_empty() {
        return Err(UsageError("selection matched no identities".into()));
    }

    print_table(&reports, io::stdout().lock())?;
    let summary = Summary::tally(&reports);

    if let Some(path) = &args.json {
        let timestamp = chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true);
        let doc = ReportDocument::new(
            env!("CARGO_PKG_VERSION"),
            timestamp,
            &config,
            reports.clone(),
        );
        let mut out = create(path)?;
        doc.write_json(&mut out)?;
        out.flush()?;
    }
    if let Some(path) = &args.csv {
        write_reports_csv(&reports, create(path)?)?;
    }
    Ok(if summary.fail == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAIL)
    })
}

fn print_table(reports: &[VerificationReport], mut out: impl Write) -> io::Result<()> {
    let num = |x: f64| format_num(x).unwrap_or_else(|| "nan".into());
    writeln!(
        out,
        "{:<20} {:<34} {:>24} {:>24} {:>9} {:>9}  status",
        "id", "params", "lhs", "rhs", "abs_err", "rel_err"
    )?;
    for r in reports {
        writeln!(
            out,
            "{:<20} {:<34} {:>24} {:>24} {:>9.2e} {:>9.2e}  {}",
            r.id,
            r.params_label(),
            num(r.lhs),
            num(r.rhs),
            r.abs_err,
            r.rel_err,
            r.status
        )?;
        if r.status != Status::Pass {
            writeln!(out, "    {}", r.method)?;
        }
    }
    let s = Summary::tally(reports);
    writeln!(
        out,
        "\n{} pass, {} fail, {} skipped",
        s.pass, s.fail, s.skipped
    )
}

fn cmd_coeff(args: CoeffArgs) -> Result<ExitCode, UsageError> {
    let family: CoefficientFamily = args.family.parse()?;
    let nu = match (family, args.nu) {
        (CoefficientFamily::K, nu) => nu.unwrap_or(0.0),
        (_, Some(nu)) if nu.is_finite() => nu,
        (_, Some(nu)) => return Err(UsageError(format!("--nu must be finite, got {nu}"))),
        (_, None) => {
            return Err(UsageError(format!(
                "--nu is required for the {} family",
                args.family
            )))
        }
    };
    let rows = coefficient_rows(family, DegreeNu::new(nu), args.m_max);
    match &args.csv {
        Some(path) => {
            let mut out = create(path)?;
            write_coefficients_csv(&rows, &mut out)?;
            out.flush()?;
        }
        None => write_coefficients_csv(&rows, io::stdout().lock())?,
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_moment(args: MomentArgs) -> Result<ExitCode, UsageError> {
    let series = match args.kind {
        1 => moment_series_1(args.n),
        _ => moment_series_2(args.n)?,
    };
    let num = |x: f64| format_num(x).unwrap_or_else(|| "nan".into());
    println!("series  {}", num(series));
    if args.oracle {
        let q = moment_quadrature(args.kind, args.n, args.quad_tol)?;
        println!("oracle  {}", num(q.value));
        println!("diff    {:.3e}", (series - q.value).abs());
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_list() -> Result<ExitCode, UsageError> {
    let mut out = io::stdout().lock();
    for r in catalog::catalog() {
        writeln!(out, "{:<20} {:>3}  {}", r.id, r.grid.len(), r.description)?;
    }
    Ok(ExitCode::SUCCESS)
}
