//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when a computation fails or a hard-asserted
//! identity does not hold, 2 on usage errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use crate::error::Error;
use crate::identity::{self, Grid};
use crate::multi::OrderCap;
use crate::multilog::{self, MultiIndex, Recurrence};
use crate::numeric::{format_rational, int};
use crate::report::IdentityReport;
use crate::series::Builtin;
use crate::table::{Family, FamilyRequest, Format, NumberTable};
use crate::{classical, Rational};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Environment variable overriding the order cap.
pub const MAX_ORDER_VAR: &str = "POLYNUM_MAX_ORDER";

const IDENTITIES: [&str; 17] = [
    "eq1",
    "eq2",
    "eq4",
    "eq5",
    "eq6",
    "eq7",
    "eq11",
    "eq12",
    "eq13",
    "eq19",
    "lemma2.1",
    "thm2.2",
    "thm2.3",
    "thm2.4",
    "thm2.5",
    "reductions",
    "all",
];

#[derive(Debug, Parser)]
#[command(
    name = "polynum",
    version,
    about = "Exact multi-Stirling, multi-Bernoulli and multi-Lah numbers"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Tabulate a number family.
    Table(TableArgs),
    /// Check an identity with exact arithmetic.
    Verify(VerifyArgs),
    /// Print a builtin generating function.
    Series(SeriesArgs),
}

#[derive(Debug, Args)]
struct TableArgs {
    #[arg(long)]
    family: String,
    /// Comma-separated index, e.g. `1,2,-3`.
    #[arg(long, allow_hyphen_values = true)]
    index: Option<String>,
    #[arg(long = "max-n")]
    max_n: usize,
    /// Order r for bernoulli-order.
    #[arg(long)]
    order: Option<u32>,
    #[arg(long, default_value = "json")]
    format: String,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    cache: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long)]
    identity: String,
    #[arg(long, allow_hyphen_values = true)]
    index: Option<String>,
    #[arg(long = "max-n")]
    max_n: Option<usize>,
    #[arg(long = "r-max")]
    r_max: Option<usize>,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct SeriesArgs {
    #[arg(long)]
    expr: String,
    #[arg(long)]
    order: usize,
    /// Order r for bernoulli_gf_order_r.
    #[arg(long)]
    r: Option<u32>,
    /// Exponent k for power.
    #[arg(long)]
    k: Option<u32>,
}

/// Resolved runtime settings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliConfig {
    pub order_cap: OrderCap,
    pub format: Format,
    pub cache_dir: Option<PathBuf>,
    pub out: Option<PathBuf>,
}

impl CliConfig {
    /// Order cap from the environment value, if any.
    pub fn order_cap_from(value: Option<&str>) -> Result<OrderCap, String> {
        match value {
            None => Ok(OrderCap::default()),
            Some(v) => v
                .trim()
                .parse::<usize>()
                .ok()
                .and_then(|n| OrderCap::new(n).ok())
                .ok_or_else(|| format!("{MAX_ORDER_VAR} must be a positive integer, got {v:?}")),
        }
    }
}

enum Failure {
    Usage(String),
    Compute(String),
}

impl Failure {
    fn compute(e: Error) -> Self {
        Failure::Compute(e.to_string())
    }

    fn usage(e: impl ToString) -> Self {
        Failure::Usage(e.to_string())
    }
}

/// Entry point for the binary.
pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

/// Parses `args` (including the program name) and executes the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    let cap = match CliConfig::order_cap_from(std::env::var(MAX_ORDER_VAR).ok().as_deref()) {
        Ok(cap) => cap,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    let result = match cli.command {
        Command::Table(args) => cmd_table(args, cap, out, err),
        Command::Verify(args) => cmd_verify(args, cap, out, err),
        Command::Series(args) => cmd_series(args, out),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Compute(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_FAILURE
        }
    }
}

fn parse_index(s: &str) -> Result<MultiIndex, Failure> {
    s.parse().map_err(Failure::usage)
}

fn cmd_table(
    args: TableArgs,
    cap: OrderCap,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, Failure> {
    let family: Family = args.family.parse().map_err(Failure::usage)?;
    let format: Format = args.format.parse().map_err(Failure::usage)?;
    let mut request = FamilyRequest::new(family, args.max_n);
    if let Some(s) = &args.index {
        request = request.with_index(parse_index(s)?);
    }
    if let Some(r) = args.order {
        request = request.with_bernoulli_order(r);
    }
    request.validate().map_err(Failure::usage)?;
    let config = CliConfig {
        order_cap: cap,
        format,
        cache_dir: args.cache,
        out: args.out,
    };

    let table = match &config.cache_dir {
        Some(dir) => cached_table(&request, &config, dir, err)?,
        None => request
            .compute(config.order_cap)
            .map_err(Failure::compute)?,
    };
    let rendered = table.render(config.format);
    match &config.out {
        Some(path) => fs::write(path, rendered)
            .map_err(|e| Failure::Compute(format!("cannot write {}: {e}", path.display())))?,
        None => out
            .write_all(rendered.as_bytes())
            .map_err(|e| Failure::Compute(e.to_string()))?,
    }
    Ok(EXIT_OK)
}

fn cached_table(
    request: &FamilyRequest,
    config: &CliConfig,
    dir: &Path,
    err: &mut dyn Write,
) -> Result<NumberTable, Failure> {
    config
        .order_cap
        .check(request.max_n)
        .map_err(Failure::compute)?;
    let path = dir.join(format!("{}.json", request.cache_key()));
    if let Ok(text) = fs::read_to_string(&path) {
        match NumberTable::from_json(&text) {
            Ok(table) => {
                let _ = writeln!(err, "cache hit: {}", path.display());
                return Ok(table);
            }
            Err(e) => {
                let _ = writeln!(
                    err,
                    "warning: ignoring unreadable cache entry {}: {e}",
                    path.display()
                );
            }
        }
    }
    let table = request
        .compute(config.order_cap)
        .map_err(Failure::compute)?;
    fs::create_dir_all(dir)
        .and_then(|_| fs::write(&path, table.to_json()))
        .map_err(|e| Failure::Compute(format!("cannot write cache {}: {e}", path.display())))?;
    let _ = writeln!(err, "cache miss: {} (stored)", path.display());
    Ok(table)
}

fn cmd_series(args: SeriesArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let builtin = Builtin::from_name(&args.expr, args.k, args.r).map_err(Failure::usage)?;
    let series = builtin.series::<Rational>(args.order);
    writeln!(out, "{series}").map_err(|e| Failure::Compute(e.to_string()))?;
    Ok(EXIT_OK)
}

fn sample_points(n_max: usize) -> Vec<Rational> {
    (0..=n_max as i64).map(int).collect()
}

fn combine(id: &str, parts: Vec<IdentityReport>, n_max: usize) -> IdentityReport {
    let mut report = IdentityReport::new(id).param("n_max", n_max);
    for part in parts {
        report.absorb(part);
    }
    report.finish()
}

fn run_identity(args: &VerifyArgs, cap: OrderCap) -> Result<Vec<IdentityReport>, Failure> {
    let id = args.identity.as_str();
    if !IDENTITIES.contains(&id) {
        return Err(Failure::Usage(format!(
            "unknown identity {id:?}; expected one of {}",
            IDENTITIES.join(", ")
        )));
    }
    let max_n = args.max_n.unwrap_or(10);
    let r_max = args.r_max.unwrap_or(4);
    let index = args.index.as_deref().map(parse_index).transpose()?;
    let needs_index = id.starts_with("thm");
    let index = match (index, needs_index) {
        (None, true) => return Err(Failure::Usage(format!("{id} requires --index"))),
        (index, _) => index,
    };
    let depth = index.as_ref().map_or(0, MultiIndex::depth);
    let required = match id {
        "all" => identity::required_order(&Grid::default()),
        "thm2.2" | "thm2.4" => max_n + depth,
        "reductions" | "eq13" | "eq19" | "lemma2.1" => max_n + r_max,
        _ => max_n,
    };
    cap.check(required).map_err(Failure::compute)?;

    let usage_or_compute = |e: Error| match e {
        Error::InvalidArgument(_) | Error::InvalidIndex(_) => Failure::usage(e),
        other => Failure::compute(other),
    };
    let single = |r: crate::Result<IdentityReport>| r.map(|r| vec![r]).map_err(usage_or_compute);

    match id {
        "eq1" => {
            let points = sample_points(max_n);
            Ok(vec![combine(
                "eq1",
                vec![
                    classical::check_eq1(max_n, &points),
                    classical::check_eq1_inverse(max_n, &points),
                ],
                max_n,
            )])
        }
        "eq4" => Ok(vec![classical::check_eq4(max_n, &sample_points(max_n))]),
        "eq5" => Ok(vec![classical::check_eq5(max_n, &sample_points(max_n))]),
        "eq2" => Ok(vec![classical::check_eq2(max_n)]),
        "eq6" => Ok(vec![classical::check_eq6(max_n)]),
        "eq7" => Ok(vec![classical::check_eq7(max_n)]),
        "eq11" | "eq12" => {
            let branch = if id == "eq11" {
                Recurrence::LowerLast
            } else {
                Recurrence::DropLast
            };
            match &index {
                Some(k) => single(multilog::check_derivative_recurrence(k, max_n, branch)),
                None => single(identity::verify_derivative_grid(3, 3, max_n, branch)),
            }
        }
        "eq13" => Ok(vec![multilog::check_all_ones_closed_form(r_max, max_n)]),
        "eq19" => single(identity::verify_eq19(r_max, max_n)),
        "lemma2.1" => single(identity::verify_lemma21(r_max, max_n)),
        "reductions" => single(identity::verify_reductions(r_max, max_n)),
        "thm2.2" => single(identity::verify_thm22(index.as_ref().unwrap(), max_n)),
        "thm2.3" => {
            let k = index.unwrap();
            // accept either the positive input form or the literal negative-last index
            let k = if k.last() < 0 {
                k.with_last(-k.last())
            } else {
                k
            };
            single(identity::verify_thm23(&k, max_n))
        }
        "thm2.4" => single(identity::verify_thm24(index.as_ref().unwrap(), max_n)),
        "thm2.5" => single(identity::verify_thm25(index.as_ref().unwrap(), max_n)),
        "all" => identity::verify_all(&Grid::default()).map_err(Failure::compute),
        _ => unreachable!("identity list checked above"),
    }
}

fn summary_line(report: &IdentityReport) -> String {
    let status = if report.passed() { "PASS" } else { "FAIL" };
    let params: Vec<String> = report
        .params
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect();
    format!(
        "{status} {} [{}]: {}",
        report.identity,
        params.join(" "),
        report.note
    )
}

fn cmd_verify(
    args: VerifyArgs,
    cap: OrderCap,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, Failure> {
    let started = Instant::now();
    let reports = run_identity(&args, cap)?;
    let passed = reports.iter().all(IdentityReport::passed);
    let io = |e: std::io::Error| Failure::Compute(e.to_string());
    if args.json {
        let json = if args.identity == "all" {
            serde_json::to_string_pretty(&reports)
        } else {
            serde_json::to_string_pretty(&reports[0])
        }
        .expect("reports serialize");
        writeln!(out, "{json}").map_err(io)?;
    } else {
        for report in &reports {
            writeln!(out, "{}", summary_line(report)).map_err(io)?;
            let shown = if report.rhs_asserted { 5 } else { 0 };
            for case in report.failures().take(shown) {
                writeln!(
                    out,
                    "    {}: lhs={} rhs={}",
                    case.label,
                    format_rational(&case.lhs),
                    format_rational(&case.rhs)
                )
                .map_err(io)?;
            }
        }
        let failed = reports.iter().filter(|r| !r.passed()).count();
        writeln!(out, "{} report(s), {} failed", reports.len(), failed).map_err(io)?;
    }
    let _ = writeln!(err, "elapsed: {:.3}s", started.elapsed().as_secs_f64());
    Ok(if passed { EXIT_OK } else { EXIT_FAILURE })
}
