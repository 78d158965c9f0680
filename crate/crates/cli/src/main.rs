use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use modcancel::charforms::GenusKind;
use modcancel::expand::{expand, genus, ExpandParams, SeriesName, DEFAULT_EXPAND_CAP, SERIES_NAMES};
use modcancel::pushforward::{verify_fiber_reduction, verify_fiber_to_31};
use modcancel::qseries::UNIT;
use modcancel::report::VerificationReport;
use modcancel::suite::{run_suite, Depth};
use modcancel::theorems::{
    verify_agw, verify_degenerate, verify_han_zhang, verify_liu, verify_thm31, verify_thm32, verify_thm33, RunConfig,
    VConfig,
};
use modcancel::Error;

/// Exact verification of anomaly cancellation formulas.
#[derive(Parser)]
#[command(name = "modcancel", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify one cancellation formula instance.
    Verify(VerifyArgs),
    /// Print the q-expansion of a series.
    Expand(ExpandArgs),
    /// Print Â or L̂ of a manifold in Pontryagin forms.
    Genus(GenusArgs),
    /// Run the acceptance suite.
    Suite(SuiteArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Theorem {
    Agw,
    Liu,
    HanZhang,
    Thm31,
    Thm32,
    Thm33,
    Degenerate,
    #[value(name = "fiber-31")]
    Fiber31,
    FiberReduce,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Ahat,
    Lhat,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    theorem: Theorem,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    n: Option<u32>,
    /// Truncate q-series after q^N.
    #[arg(long)]
    qorder: Option<u32>,
    #[arg(long)]
    xi_trivial: bool,
    /// `tm` or `tm-plus-trivial:S`.
    #[arg(long, default_value = "tm")]
    v_config: VConfig,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct ExpandArgs {
    #[arg(long, help = format!("One of: {SERIES_NAMES}"))]
    series: String,
    #[arg(long, default_value_t = 0)]
    k: u32,
    #[arg(long, default_value_t = 2)]
    d: usize,
    #[arg(long, default_value_t = 0)]
    n: u32,
    #[arg(long)]
    qorder: Option<u32>,
    #[arg(long)]
    xi_trivial: bool,
    #[arg(long, default_value = "tm")]
    v_config: VConfig,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct GenusArgs {
    #[arg(long, value_enum)]
    which: Which,
    /// Manifold dimension 2d.
    #[arg(long)]
    dim: usize,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct SuiteArgs {
    /// Extend the grids to k ≤ 3 and d ≤ 11.
    #[arg(long)]
    full: bool,
    #[command(flatten)]
    output: Output,
}

/// A failure before or during computation, with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::InvalidParameters(_) | Error::Parse(_)) { 2 } else { 1 };
        Failure { code, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

fn need<T>(value: Option<T>, flag: &str, theorem: &str) -> Result<T, Failure> {
    value.ok_or_else(|| usage(format!("verify {theorem} requires --{flag}")))
}

fn run_verify(a: &VerifyArgs) -> Result<VerificationReport, Failure> {
    let cfg = RunConfig { q_cap: a.qorder.map(|n| n * UNIT), ..RunConfig::default() };
    let name = a.theorem.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
    let k = || need(a.k, "k", &name);
    let d = || need(a.d, "d", &name);
    let n = a.n.unwrap_or(0);
    let report = match a.theorem {
        Theorem::Agw => verify_agw(&cfg)?,
        Theorem::Liu => verify_liu(k()?, &cfg)?,
        Theorem::HanZhang => verify_han_zhang(k()?, a.v_config, a.xi_trivial, &cfg)?,
        Theorem::Thm31 => verify_thm31(k()?, &cfg)?,
        Theorem::Thm32 => verify_thm32(k()?, &cfg)?,
        Theorem::Thm33 => verify_thm33(d()?, n, &cfg)?,
        Theorem::Degenerate => verify_degenerate(d()?, n, &cfg)?,
        Theorem::Fiber31 => verify_fiber_to_31(k()?, &cfg)?,
        Theorem::FiberReduce => verify_fiber_reduction(d()?, n, &cfg)?,
    };
    Ok(report)
}

fn emit(output: &Output, body: String) -> Result<(), Failure> {
    match &output.out {
        Some(path) => std::fs::write(path, body)
            .map_err(|e| Failure { code: 2, message: format!("cannot write {}: {e}", path.display()) }),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json");
    s.push('\n');
    s
}

fn run(cli: Cli) -> Result<bool, Failure> {
    let start = Instant::now();
    match cli.command {
        Command::Verify(a) => {
            let report = run_verify(&a)?;
            let secs = start.elapsed().as_secs_f64();
            let body = match a.output.format {
                Format::Json => pretty(&json!({ "report": report.to_json(), "wall_time_s": secs })),
                Format::Text => format!("{}  wall time: {secs:.3}s\n", report.render_text()),
            };
            emit(&a.output, body)?;
            Ok(report.passed())
        }
        Command::Expand(a) => {
            let name: SeriesName = a.series.parse()?;
            let params = ExpandParams {
                k: a.k,
                d: a.d,
                n: a.n,
                xi_trivial: a.xi_trivial,
                v: a.v_config,
                q_cap: a.qorder.map_or(DEFAULT_EXPAND_CAP, |n| n * UNIT),
            };
            let e = expand(name, &a.series, &params)?;
            let body = match a.output.format {
                Format::Json => pretty(&serde_json::to_value(&e).expect("json")),
                Format::Text => {
                    let mut s = format!("{} through q^{}\n", e.series, e.q_cap);
                    for c in &e.coefficients {
                        let _ = writeln!(s, "  q^{}: {}", c.exp, c.value);
                    }
                    s
                }
            };
            emit(&a.output, body)?;
            Ok(true)
        }
        Command::Genus(a) => {
            let kind = match a.which {
                Which::Ahat => GenusKind::AHat,
                Which::Lhat => GenusKind::LHat,
            };
            let g = genus(kind, a.dim)?;
            let body = match a.output.format {
                Format::Json => pretty(&serde_json::to_value(&g).expect("json")),
                Format::Text => format!("{} (dim {}): {}\n  top: {}\n", g.genus, g.dim, g.form, g.top),
            };
            emit(&a.output, body)?;
            Ok(true)
        }
        Command::Suite(a) => {
            let summary = run_suite(if a.full { Depth::Full } else { Depth::Quick });
            let secs = start.elapsed().as_secs_f64();
            let body = match a.output.format {
                Format::Json => pretty(&json!({ "summary": summary, "wall_time_s": secs })),
                Format::Text => {
                    let mut s = String::new();
                    for c in &summary.criteria {
                        let status = if c.passed { "PASS" } else { "FAIL" };
                        let _ = writeln!(s, "criterion {:>2} {}: {status} ({:.2}s)", c.id, c.title, c.seconds);
                        if !c.passed {
                            for d in c.details.iter().filter(|d| d.ends_with(": fail")) {
                                let _ = writeln!(s, "    {d}");
                            }
                        }
                    }
                    let _ =
                        writeln!(s, "suite: {}  wall time: {secs:.2}s", if summary.passed { "pass" } else { "fail" });
                    s
                }
            };
            emit(&a.output, body)?;
            Ok(summary.passed)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
