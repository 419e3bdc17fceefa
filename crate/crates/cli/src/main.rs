use std::fs;
use std::io::{self, Write};
use std::net::{IpAddr, SocketAddr};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use wythoff_core::export::{self, Format};
use wythoff_core::sequences::{sequence_rows, MATERIALIZE_LIMIT};
use wythoff_core::solver::build_table_with;
use wythoff_core::verify::{run_all, CheckKind, InjectedFault, VerifyConfig};
use wythoff_core::{Execution, TerminalSpec};
use wythoff_service::ServiceConfig;

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "wythoff", version, about = "Wythoff's game with terminal set x + y <= k")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a bounded board and emit its P-positions.
    Solve(SolveArgs),
    /// Emit rows (n, a_n, b_n, c_n, d_n).
    Sequences(SequenceArgs),
    /// Run the verification checks and print JSON-lines reports.
    Verify(VerifyArgs),
    /// Start the HTTP play service.
    Serve(ServeArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
    Text,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Self {
        match f {
            OutputFormat::Csv => Format::Csv,
            OutputFormat::Json => Format::Json,
            OutputFormat::Text => Format::Text,
        }
    }
}

impl OutputFormat {
    fn extension(self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
            OutputFormat::Text => "txt",
        }
    }
}

#[derive(Args)]
struct Output {
    /// Output file; `-` or absent writes to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Directory for a generated file name when `--out` is absent.
    #[arg(long, env = "WYTHOFF_OUT_DIR")]
    out_dir: Option<PathBuf>,
}

impl Output {
    fn write(&self, default_name: &str, contents: &[u8]) -> Result<()> {
        let path = match (&self.out, &self.out_dir) {
            (Some(p), _) if p.as_os_str() == "-" => None,
            (Some(p), _) => Some(p.clone()),
            (None, Some(dir)) => Some(dir.join(default_name)),
            (None, None) => None,
        };
        match path {
            Some(path) => {
                if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                    fs::create_dir_all(parent).with_context(|| format!("creating {}", parent.display()))?;
                }
                fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))
            }
            None => io::stdout().lock().write_all(contents).context("writing to stdout"),
        }
    }
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long, default_value_t = 0)]
    k: u64,
    /// Board covers 0..=bound in each coordinate.
    #[arg(long)]
    bound: u64,
    #[arg(long, value_enum, default_value = "json")]
    format: OutputFormat,
    #[command(flatten)]
    output: Output,
    /// Also write the binary Grundy table to this path.
    #[arg(long)]
    dump: Option<PathBuf>,
    /// Run the solver on one thread.
    #[arg(long)]
    sequential: bool,
}

#[derive(Args)]
struct SequenceArgs {
    #[arg(long)]
    k: u64,
    #[arg(long)]
    max_index: u64,
    #[arg(long, value_enum, default_value = "csv")]
    format: OutputFormat,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct VerifyArgs {
    /// Run only these checks (repeatable).
    #[arg(long = "check", value_parser = parse_check)]
    checks: Vec<CheckKind>,
    /// Inject a named fault fixture (repeatable); the run is expected to fail.
    #[arg(long = "inject-fault", value_parser = clap::builder::PossibleValuesParser::new(InjectedFault::FIXTURES))]
    faults: Vec<String>,
    #[arg(long)]
    sequential: bool,
}

fn parse_check(s: &str) -> Result<CheckKind, String> {
    s.parse().map_err(|e: wythoff_core::verify::VerifyError| {
        let names: Vec<&str> = CheckKind::ALL.iter().map(|c| c.name()).collect();
        format!("{e}; expected one of {}", names.join(", "))
    })
}

#[derive(Args)]
struct ServeArgs {
    #[arg(long, default_value_t = 8080, value_parser = clap::value_parser!(u16).range(1..))]
    port: u16,
    #[arg(long, default_value = "127.0.0.1")]
    host: IpAddr,
    /// `k` for sessions that do not name one.
    #[arg(long, default_value_t = 5)]
    k: u64,
}

/// An argument combination rejected before any computation.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

fn solve(args: SolveArgs) -> Result<ExitCode> {
    if args.bound < args.k {
        return Err(usage(format!("--bound {} is below --k {}", args.bound, args.k)));
    }
    let exec = if args.sequential { Execution::Sequential } else { Execution::Parallel };
    let table = build_table_with(TerminalSpec::new(args.k), args.bound, exec).map_err(|e| usage(e.to_string()))?;
    let name = format!("solve-k{}-n{}.{}", args.k, args.bound, args.format.extension());
    args.output.write(&name, export::solved(args.format.into(), &table).as_bytes())?;
    if let Some(path) = &args.dump {
        let file = fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
        table.write_dump(io::BufWriter::new(file)).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn sequences(args: SequenceArgs) -> Result<ExitCode> {
    if args.max_index > MATERIALIZE_LIMIT {
        return Err(usage(format!("--max-index must be at most {MATERIALIZE_LIMIT}")));
    }
    let rows = sequence_rows(args.k, args.max_index as usize);
    let name = format!("sequences-k{}-m{}.{}", args.k, args.max_index, args.format.extension());
    args.output.write(&name, export::sequences(args.format.into(), args.k, &rows).as_bytes())?;
    Ok(ExitCode::SUCCESS)
}

fn verify(args: VerifyArgs) -> Result<ExitCode> {
    let faults = args
        .faults
        .iter()
        .map(|name| InjectedFault::fixture(name).map_err(|e| usage(e.to_string())))
        .collect::<Result<Vec<_>>>()?;
    let config = VerifyConfig {
        only: (!args.checks.is_empty()).then_some(args.checks),
        faults,
        exec: if args.sequential { Execution::Sequential } else { Execution::Parallel },
        ..VerifyConfig::default()
    };
    let reports = run_all(&config).map_err(|e| usage(e.to_string()))?;
    let mut out = io::stdout().lock();
    for r in &reports {
        writeln!(out, "{}", r.to_json_line())?;
    }
    Ok(if reports.iter().all(|r| r.passed()) { ExitCode::SUCCESS } else { ExitCode::from(EXIT_VERIFY_FAILED) })
}

fn serve(args: ServeArgs) -> Result<ExitCode> {
    let config = ServiceConfig { default_k: args.k, ..ServiceConfig::default() };
    let addr = SocketAddr::new(args.host, args.port);
    let runtime = tokio::runtime::Runtime::new().context("starting the async runtime")?;
    eprintln!("listening on http://{addr}");
    runtime.block_on(wythoff_service::serve(addr, config)).with_context(|| format!("serving on {addr}"))?;
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve(a) => solve(a),
        Command::Sequences(a) => sequences(a),
        Command::Verify(a) => verify(a),
        Command::Serve(a) => serve(a),
    };
    match result {
        Ok(code) => code,
        Err(e) if e.is::<Usage>() => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
