//! Command-line front end: parse a formula, load a trace, run the engine,
//! and emit verdicts, per-subformula truth-set reports, gap measures, or an
//! SVG timeline.
//!
//! Exit codes: `check` maps its three-valued verdict to 0 (satisfied),
//! 1 (violated), and 2 (unknown). Every error — bad flags, unparsable
//! formulas or traces, undeclared atoms — exits with 10, so scripts can
//! branch on verdicts without mistaking failures for them.

mod render;

use std::fs::File;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mitliq::{engine, parse, Endpoint, Rational, Report, Trace, Verdict};
use num_traits::Zero;
use serde_json::json;

const EXIT_ERROR: u8 = 10;

#[derive(Parser)]
#[command(name = "mitliq", version, about = "MITL verification over interval-queue approximations", disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Three-valued check of a formula at one time point
    Check {
        #[command(flatten)]
        input: InputArgs,
        /// Query time, a non-negative rational such as 3 or 7/2
        #[arg(long)]
        at: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print the under/over truth-set approximations of every subformula
    Truthset {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print the conservativeness gap of every subformula
    Gap {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Write an SVG timeline, one lane per subformula
    Render {
        #[command(flatten)]
        input: InputArgs,
        /// Right edge of the displayed time axis; required when any queue is
        /// unbounded
        #[arg(long)]
        window: Option<String>,
        /// Output path; standard output when omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct InputArgs {
    /// Formula text, e.g. "g1 U[1,2] (g2 | !g3)"
    #[arg(long)]
    formula: String,
    /// Path to a JSON trace file
    #[arg(long)]
    trace: PathBuf,
    /// Forget everything after this time before evaluating
    #[arg(long)]
    horizon: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version requests are not failures.
            let benign = matches!(
                err.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let _ = err.print();
            return if benign { ExitCode::SUCCESS } else { ExitCode::from(EXIT_ERROR) };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Check { input, at, format } => {
            let (formula, trace) = load(&input)?;
            let time = parse::parse_rational(&at).map_err(|e| format!("--at: {e}"))?;
            let verdict = engine::verdict(&formula, &trace, &time).map_err(stringify)?;
            match format {
                Format::Text => println!("{verdict}"),
                Format::Json => println!(
                    "{}",
                    json!({"verdict": verdict.to_string(), "formula": formula.to_string(), "at": time.to_string()})
                ),
            }
            Ok(ExitCode::from(match verdict {
                Verdict::Satisfied => 0,
                Verdict::Violated => 1,
                Verdict::Unknown => 2,
            }))
        }
        Command::Truthset { input, format } => {
            let (formula, trace) = load(&input)?;
            let report = engine::report(&formula, &trace).map_err(stringify)?;
            match format {
                Format::Text => {
                    for (i, row) in report.rows.iter().enumerate() {
                        println!("[{i}] {}", row.formula);
                        println!("    under: {}", row.approximation.under);
                        println!("    over:  {}", row.approximation.over);
                    }
                }
                Format::Json => println!("{}", report.to_json()),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Gap { input, format } => {
            let (formula, trace) = load(&input)?;
            let report = engine::report(&formula, &trace).map_err(stringify)?;
            match format {
                Format::Text => {
                    for row in &report.rows {
                        match &row.delta_bounded {
                            Some(bounded) => println!(
                                "delta({}) = {} ({} within the horizon)",
                                row.formula, row.delta, bounded
                            ),
                            None => println!("delta({}) = {}", row.formula, row.delta),
                        }
                    }
                }
                Format::Json => {
                    let rows: Vec<_> = report
                        .rows
                        .iter()
                        .map(|row| {
                            json!({
                                "formula": row.formula,
                                "delta": row.delta.to_string(),
                                "delta_bounded": row.delta_bounded.as_ref().map(|d| d.to_string()),
                            })
                        })
                        .collect();
                    println!("{}", serde_json::Value::Array(rows));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Render { input, window, out } => {
            let (formula, trace) = load(&input)?;
            let report = engine::report(&formula, &trace).map_err(stringify)?;
            let window = display_window(&report, window)?;
            let svg = render::render_svg(&report, &window);
            match out {
                Some(path) => {
                    let mut file = File::create(&path)
                        .map_err(|e| format!("{}: {e}", path.display()))?;
                    file.write_all(svg.as_bytes())
                        .map_err(|e| format!("{}: {e}", path.display()))?;
                }
                None => println!("{svg}"),
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn load(input: &InputArgs) -> Result<(mitliq::Formula, Trace), String> {
    let formula = parse::parse_formula(&input.formula).map_err(|e| format!("--formula: {e}"))?;
    let file = File::open(&input.trace)
        .map_err(|e| format!("{}: {e}", input.trace.display()))?;
    let mut trace = Trace::load(file).map_err(stringify)?;
    if let Some(text) = &input.horizon {
        let b = parse::parse_rational(text).map_err(|e| format!("--horizon: {e}"))?;
        trace = trace.apply_horizon(&b);
    }
    Ok((formula, trace))
}

/// The `[0, w]` span drawn by `render`: explicit, or the largest finite
/// endpoint in the report when every queue is bounded.
fn display_window(report: &Report, requested: Option<String>) -> Result<Rational, String> {
    if let Some(text) = requested {
        let w = parse::parse_rational(&text).map_err(|e| format!("--window: {e}"))?;
        if w.is_zero() {
            return Err("--window: the display window must be positive".to_string());
        }
        return Ok(w);
    }
    let mut max_endpoint = Rational::zero();
    for row in &report.rows {
        for item in row.approximation.under.iter().chain(row.approximation.over.iter()) {
            match item.hi() {
                Endpoint::Finite(h) => {
                    if *h > max_endpoint {
                        max_endpoint = h.clone();
                    }
                }
                _ => {
                    return Err(
                        "an interval queue is unbounded; pass an explicit --window".to_string()
                    )
                }
            }
        }
    }
    if max_endpoint.is_zero() {
        max_endpoint = Rational::from_integer(10.into());
    }
    Ok(max_endpoint)
}

fn stringify(err: impl std::fmt::Display) -> String {
    err.to_string()
}
