use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use qid_core::deriv::parse_dcheck_spec;
use qid_core::harness::{self, SampleSpec, SuiteReport, VerificationReport};
use qid_core::qcore::{poch, ComplexHP, NumericContext, PochIndex};
use qid_core::registry::{self, Mode, Side, SideValue, Strategy};
use qid_core::series::{eval_phi, eval_psi, PhiSpec, PsiSpec};
use qid_core::QError;

#[derive(Parser)]
#[command(
    name = "qid",
    version,
    about = "Verify basic hypergeometric series identities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the identity catalog.
    List {
        #[arg(long)]
        json: bool,
    },
    /// Verify the records whose id matches a glob, in every supported mode.
    Verify {
        /// Record id or glob, e.g. `qbinom-*`.
        pattern: String,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print both sides of a formal or exact-polynomial record.
    Expand {
        id: String,
        #[arg(long, default_value_t = harness::DEFAULT_ORDER)]
        order: i64,
    },
    /// Evaluate a single series or product.
    Eval {
        #[command(subcommand)]
        what: EvalCommand,
        #[arg(long, default_value_t = 60, global = true)]
        digits: u32,
    },
    /// Check a derivative identity given in the term DSL at `x = q^-m / a`.
    Dcheck {
        #[arg(long)]
        spec: PathBuf,
        /// Zero order of `(a x; q)_inf` to specialize at; all of 0..=3 when
        /// omitted.
        #[arg(long)]
        m: Option<i64>,
        /// Fixed `a`; sampled together with `q` when omitted.
        #[arg(long, allow_hyphen_values = true)]
        a: Option<String>,
        /// Fixed `q`, used with `--a`.
        #[arg(long, allow_hyphen_values = true, default_value = "0.3")]
        q: String,
        /// Number of sampled `(a, q)` points per `m`.
        #[arg(long, default_value_t = 5)]
        points: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 60)]
        digits: u32,
        #[arg(long, default_value_t = 1e-30)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run the suite over the catalog.
    Report {
        /// Run every record.
        #[arg(long, conflicts_with = "filter")]
        all: bool,
        /// Run the records matching this glob.
        #[arg(long)]
        filter: Option<String>,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, default_value_t = 20)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 60)]
    digits: u32,
    #[arg(long, default_value_t = 1e-30)]
    tol: f64,
    #[arg(long, default_value_t = harness::DEFAULT_ORDER)]
    order: i64,
    #[arg(long, value_enum, default_value_t = StrategyArg::Uniform)]
    strategy: StrategyArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Uniform,
    Boundary,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum EvalCommand {
    /// `r phi s [num; den; q, x]`.
    Phi(SeriesArgs),
    /// `r psi r [num; den; q, x]`.
    Psi(SeriesArgs),
    /// `(a; q)_n`.
    Poch {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        /// Integer length or `inf`.
        #[arg(long, allow_hyphen_values = true)]
        n: String,
    },
}

#[derive(Args)]
struct SeriesArgs {
    /// Comma-separated numerator parameters.
    #[arg(long, allow_hyphen_values = true, default_value = "")]
    num: String,
    /// Comma-separated denominator parameters.
    #[arg(long, allow_hyphen_values = true, default_value = "")]
    den: String,
    #[arg(long, allow_hyphen_values = true)]
    q: String,
    #[arg(long, allow_hyphen_values = true)]
    x: String,
}

/// Failures that mean the command line or its inputs were wrong.
#[derive(Debug)]
struct Usage(anyhow::Error);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:#}", self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(e: impl Into<anyhow::Error>) -> anyhow::Error {
    anyhow::Error::new(Usage(e.into()))
}

fn is_usage_error(e: &QError) -> bool {
    matches!(
        e.root(),
        QError::Config(_) | QError::NotFound(_) | QError::UnsupportedMode { .. } | QError::Parse { .. }
    )
}

/// Tag library errors that stem from bad input so they map to exit code 2.
fn lift(e: QError) -> anyhow::Error {
    if is_usage_error(&e) {
        usage(e)
    } else {
        e.into()
    }
}

fn context(digits: u32, tol: f64) -> Result<NumericContext> {
    NumericContext::with_digits(digits)
        .and_then(|c| c.with_tol(tol))
        .map_err(usage)
}

fn complex(text: &str, ctx: &NumericContext) -> Result<ComplexHP> {
    ComplexHP::parse(text, ctx.bits()).map_err(usage)
}

fn complex_list(text: &str, ctx: &NumericContext) -> Result<Vec<ComplexHP>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| complex(s, ctx))
        .collect()
}

fn print_json(v: &impl serde::Serialize) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn suite(filter: &str, run: &RunArgs) -> Result<SuiteReport> {
    if run.samples == 0 {
        return Err(usage(anyhow::anyhow!("--samples must be positive")));
    }
    let ctx = context(run.digits, run.tol)?;
    let spec = SampleSpec {
        seed: run.seed,
        count: run.samples,
        strategy: match run.strategy {
            StrategyArg::Uniform => Strategy::Uniform,
            StrategyArg::Boundary => Strategy::BoundaryBiased,
        },
    };
    harness::run_suite(filter, &spec, &ctx, run.order).map_err(lift)
}

fn sample_lines(r: &VerificationReport) -> String {
    let mut out = String::new();
    for s in &r.samples {
        let params: Vec<String> = s.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let detail = match (&s.discrepancy, &s.error) {
            (_, Some(e)) => format!("error: {e}"),
            (Some(d), None) => format!("discrepancy {d}"),
            (None, None) => String::new(),
        };
        out.push_str(&format!(
            "  #{:<3} {:<5} {}  [{}]\n",
            s.index,
            s.status.as_str(),
            detail,
            params.join(", ")
        ));
        if let Some(w) = &s.witness {
            out.push_str(&format!("       first mismatch at q^{}\n", w.first_mismatch));
            out.push_str(&format!("       LHS = {}\n       RHS = {}\n", w.lhs, w.rhs));
            if let Some(ratio) = &w.ratio {
                out.push_str(&format!("       LHS/RHS = {ratio}\n"));
            }
        }
    }
    out
}

fn cmd_list(json: bool) -> Result<u8> {
    let records = registry::catalog();
    if json {
        print_json(&records.iter().map(|r| r.to_json()).collect::<Vec<_>>())?;
    } else {
        for r in records {
            let modes: Vec<&str> = r.modes.iter().map(Mode::as_str).collect();
            println!(
                "{:<22} {:<18} {:<14} {}",
                r.id,
                modes.join(","),
                r.expected.to_string(),
                r.citation
            );
        }
    }
    Ok(0)
}

fn cmd_verify(pattern: &str, run: &RunArgs, format: Format) -> Result<u8> {
    let report = suite(pattern, run)?;
    if report.reports.is_empty() {
        eprintln!("no record matches `{pattern}`");
    }
    match format {
        Format::Json => print_json(&report.reports)?,
        Format::Text => {
            for r in &report.reports {
                println!("{} [{}] {}", r.identity, r.mode, r.aggregate);
                if let Some(e) = &r.error {
                    println!("  error: {e}");
                }
                print!("{}", sample_lines(r));
            }
        }
    }
    Ok(report.exit_code() as u8)
}

fn cmd_report(all: bool, filter: Option<String>, run: &RunArgs, format: Format) -> Result<u8> {
    let filter = match (all, filter) {
        (_, Some(f)) => f,
        (true, None) => "*".to_string(),
        (false, None) => return Err(usage(anyhow::anyhow!("pass --all or --filter <glob>"))),
    };
    let report = suite(&filter, run)?;
    match format {
        Format::Json => print_json(&report)?,
        Format::Text => print!("{}", harness::render_text(&report)),
    }
    Ok(report.exit_code() as u8)
}

fn cmd_expand(id: &str, order: i64) -> Result<u8> {
    let record = registry::lookup(id).map_err(lift)?;
    let Some(mode) = record.formal_mode() else {
        return Err(usage(anyhow::anyhow!(
            "`{id}` has no formal or exact-polynomial mode"
        )));
    };
    if order < 0 {
        return Err(usage(anyhow::anyhow!("--order must be >= 0")));
    }
    let spec = record.formal_spec(mode).map_err(lift)?;
    let ctx = NumericContext::default();
    let mut failed = false;
    for case in (spec.cases)(order) {
        let side = |s| -> Result<_> {
            match registry::evaluate_side(id, s, &case.params, mode, &ctx, case.order)? {
                SideValue::Formal(v) => Ok(v.truncate(case.order)),
                SideValue::Numeric(_) => bail!("formal mode returned a number"),
            }
        };
        let params: Vec<String> = case
            .params
            .to_strings()
            .into_iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        println!("{id} [{mode}] order {} {}", case.order, params.join(" "));
        let (l, r) = (side(Side::Lhs)?, side(Side::Rhs)?);
        let coeffs = |s: &qid_core::formal::LaurentSeriesQ| -> String {
            let lo = s.valuation().unwrap_or(0).min(0);
            (lo..=case.order)
                .map(|e| s.coeff(e).map(|c| c.to_string()).unwrap_or_default())
                .collect::<Vec<_>>()
                .join(" ")
        };
        println!("  LHS: {}", coeffs(&l));
        println!("  RHS: {}", coeffs(&r));
        match l.mismatch(&r) {
            Some(e) => {
                failed = true;
                println!("  first mismatch at q^{e}");
            }
            None => println!("  equal through q^{}", case.order),
        }
    }
    let expected_fail = record.expected == registry::Expected::ExpectedFail;
    Ok(if failed != expected_fail { 1 } else { 0 })
}

fn cmd_eval(what: &EvalCommand, digits: u32) -> Result<u8> {
    let ctx = context(digits, 1e-30_f64.max(10f64.powf(-(digits as f64) / 2.0)))?;
    let value = match what {
        EvalCommand::Phi(a) => {
            let spec = PhiSpec {
                num: complex_list(&a.num, &ctx)?,
                den: complex_list(&a.den, &ctx)?,
                q: complex(&a.q, &ctx)?,
                x: complex(&a.x, &ctx)?,
            };
            eval_phi(&spec, &ctx)?
        }
        EvalCommand::Psi(a) => {
            let spec = PsiSpec {
                num: complex_list(&a.num, &ctx)?,
                den: complex_list(&a.den, &ctx)?,
                q: complex(&a.q, &ctx)?,
                x: complex(&a.x, &ctx)?,
            };
            eval_psi(&spec, &ctx)?
        }
        EvalCommand::Poch { a, q, n } => {
            let n = match n.as_str() {
                "inf" => PochIndex::Infinite,
                s => PochIndex::Finite(
                    s.parse()
                        .map_err(|_| usage(anyhow::anyhow!("--n must be an integer or `inf`")))?,
                ),
            };
            poch(&complex(a, &ctx)?, &complex(q, &ctx)?, n, &ctx)?
        }
    };
    println!(
        "{}",
        value
            .with_precision(ctx.output_bits())
            .to_sci_string(digits as usize)
    );
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn cmd_dcheck(
    path: &PathBuf,
    m: Option<i64>,
    a: Option<&str>,
    q: &str,
    points: usize,
    seed: u64,
    digits: u32,
    tol: f64,
    format: Format,
) -> Result<u8> {
    let ctx = context(digits, tol)?;
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(usage)?;
    let spec = parse_dcheck_spec(&text).map_err(usage)?;
    let ms: Vec<i64> = match m {
        Some(m) if m < 0 => return Err(usage(anyhow::anyhow!("--m must be >= 0"))),
        Some(m) => vec![m],
        None => (0..=3).collect(),
    };
    let points: Vec<(i64, ComplexHP, ComplexHP)> = match a {
        Some(a) => {
            let (a, q) = (complex(a, &ctx)?, complex(q, &ctx)?);
            ms.iter().map(|&m| (m, a.clone(), q.clone())).collect()
        }
        None => ms
            .iter()
            .flat_map(|&m| {
                harness::dcheck_points(seed, m, points)
                    .into_iter()
                    .map(move |(a, q)| {
                        (
                            m,
                            ComplexHP::from_c64(a, ctx.bits()),
                            ComplexHP::from_c64(q, ctx.bits()),
                        )
                    })
            })
            .collect(),
    };
    let mut report = harness::verify_dcheck(&spec, &points, &ctx)?;
    report.seed = seed;
    match format {
        Format::Json => print_json(&report)?,
        Format::Text => {
            println!("dcheck {} {}", path.display(), report.aggregate);
            print!("{}", sample_lines(&report));
        }
    }
    Ok(if report.aggregate.is_success() { 0 } else { 1 })
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::List { json } => cmd_list(json),
        Command::Verify { pattern, run, format } => cmd_verify(&pattern, &run, format),
        Command::Expand { id, order } => cmd_expand(&id, order),
        Command::Eval { what, digits } => cmd_eval(&what, digits),
        Command::Dcheck {
            spec,
            m,
            a,
            q,
            points,
            seed,
            digits,
            tol,
            format,
        } => cmd_dcheck(&spec, m, a.as_deref(), &q, points, seed, digits, tol, format),
        Command::Report {
            all,
            filter,
            run,
            format,
        } => cmd_report(all, filter, &run, format),
    }
}

fn main() -> ExitCode {
    // die quietly when the reader of a pipe goes away, e.g. `qid list | head`
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(if e.is::<Usage>() { 2 } else { 1 })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cli_is_well_formed() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn usage_errors_are_classified() {
        assert!(is_usage_error(&QError::NotFound("x".into())));
        assert!(is_usage_error(&QError::Config("x".into()).in_record("id")));
        assert!(!is_usage_error(&QError::Pole("x".into())));
    }
}
