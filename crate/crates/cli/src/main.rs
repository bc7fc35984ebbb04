use std::panic;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use gfd::error::CliError;
use gfd::render;
use gfd::run::{self, Command, FixtureKind, PolicyArg, Request, TheoryArg};
use serde_json::json;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

/// Gorenstein homological dimensions and cohomology of complexes over
/// Z, Z/p^k, F_p[x]/(x^n) and finite products of these.
#[derive(Debug, Parser)]
#[command(name = "gfd", version)]
struct Args {
    command: Command,
    /// Input document path or inline JSON; `ext`, `les` and `compare` take two.
    #[arg(long = "in")]
    inputs: Vec<String>,
    /// Ring for `verify` and `fixtures`, e.g. `Z`, `Zmod4`, `TruncPoly(2,3)`, `Z*Zmod9`.
    #[arg(long)]
    ring: Option<String>,
    /// Degree range `a:b`, inclusive.
    #[arg(long, allow_hyphen_values = true)]
    range: Option<String>,
    #[arg(long, value_enum)]
    theory: Option<TheoryArg>,
    #[arg(long, value_enum, default_value = "lemma7")]
    policy: PolicyArg,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    suite: Option<String>,
    #[arg(long)]
    count: Option<usize>,
    #[arg(long, value_enum, default_value = "module")]
    kind: FixtureKind,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

fn parse_range(s: &str) -> Result<(i64, i64), CliError> {
    let bad = || CliError::Parse { at: "--range".to_string(), message: format!("expected a:b, got {s:?}") };
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    let (a, b): (i64, i64) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
    if a > b {
        return Err(CliError::Validation(format!("empty range {a}:{b}")));
    }
    Ok((a, b))
}

fn request(args: &Args) -> Result<Request, CliError> {
    Ok(Request {
        command: args.command,
        inputs: args.inputs.clone(),
        ring: args.ring.clone(),
        range: args.range.as_deref().map(parse_range).transpose()?,
        theory: args.theory,
        policy: args.policy,
        seed: args.seed,
        suite: args.suite.clone(),
        count: args.count,
        kind: args.kind,
        out: args.out.clone(),
    })
}

fn main() -> ExitCode {
    let args = Args::parse();
    panic::set_hook(Box::new(|_| {}));
    let result = panic::catch_unwind(|| request(&args).and_then(|r| run::run(&r))).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "unknown panic".to_string());
        Err(CliError::Panic(msg))
    });
    match result {
        Ok(outcome) => {
            match args.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&outcome.report).unwrap()),
                Format::Table => print!("{}", render::table(&outcome.report)),
            }
            if outcome.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            }
        }
        Err(e) => {
            let doc = json!({
                "version": gfd::doc::VERSION,
                "command": args.command.name(),
                "error": { "name": e.name(), "message": e.to_string() },
            });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
            eprintln!("gfd: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
