//! `squares`: generate, verify and catalog systems of squares whose sum is
//! a square after dropping any one of them.

mod json;

use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use squares_core::catalog::{cross_check, eval_family, list_families, FamilyParams};
use squares_core::derive::pipeline;
use squares_core::evolve::method1;
use squares_core::verify::validate_system;
use squares_core::{BigInt, Error, SquareSystem};

use json::{SweepLine, SystemInput, SystemOutput};

#[derive(Parser)]
#[command(name = "squares", version, about = "Systems of squares whose sum is a square after dropping any one")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct one system and print it as JSON.
    Gen(GenArgs),
    /// Check a JSON system read from a file or stdin.
    Verify {
        /// Input file; stdin when omitted.
        file: Option<String>,
        /// Accept equal roots.
        #[arg(long)]
        allow_repeats: bool,
    },
    /// Work with the built-in parametric families.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Construct systems over a parameter range, one JSON line each.
    Sweep(SweepArgs),
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    n: usize,
    /// 1: repeated-square seed with sign flips; 2: chain assignment.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
    method: u8,
    #[command(flatten)]
    point: PointArgs,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct PointArgs {
    /// Single parameter.
    #[arg(long, allow_hyphen_values = true)]
    t: Option<BigInt>,
    /// Parameter pair `a,b`.
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
    params: Option<(BigInt, BigInt)>,
}

#[derive(Subcommand)]
enum CatalogAction {
    /// Print the family ids.
    List,
    /// Evaluate a family and print the reduced system as JSON.
    Eval {
        id: String,
        #[command(flatten)]
        point: PointArgs,
    },
    /// Regenerate a family through the constructions and compare.
    CrossCheck { id: String },
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
    method: u8,
    /// Method 1: first `t`. Method 2: smallest `a + b`.
    #[arg(long, allow_hyphen_values = true)]
    from: i64,
    /// Method 1: last `t`. Method 2: largest `a + b`.
    #[arg(long, allow_hyphen_values = true)]
    to: i64,
    /// Evaluate points on all cores; output order is unchanged.
    #[arg(long)]
    parallel: bool,
}

fn parse_pair(s: &str) -> Result<(BigInt, BigInt), String> {
    let (a, b) = s.split_once(',').ok_or("expected `a,b`")?;
    let parse = |v: &str| v.trim().parse::<BigInt>().map_err(|e| format!("`{}`: {e}", v.trim()));
    Ok((parse(a)?, parse(b)?))
}

/// Failure with its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    const VERIFY: u8 = 1;
    const INPUT: u8 = 2;
    const IO: u8 = 3;

    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } => Failure::IO,
            _ => Failure::INPUT,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::new(Failure::IO, e.to_string())
    }
}

type CliResult<T = ()> = Result<T, Failure>;

fn point_params(point: &PointArgs) -> FamilyParams {
    match (&point.t, &point.params) {
        (Some(t), _) => FamilyParams::T(t.clone()),
        (None, Some((a, b))) => FamilyParams::Pair(a.clone(), b.clone()),
        (None, None) => unreachable!("clap requires one of --t and --params"),
    }
}

fn generate(n: usize, method: u8, params: &FamilyParams) -> squares_core::Result<SquareSystem> {
    match (method, params) {
        (1, FamilyParams::T(t)) => Ok(method1(n, t)?.system),
        (2, FamilyParams::Pair(a, b)) => pipeline(n, a, b),
        (1, _) => Err(Error::Domain("method 1 takes --t".into())),
        _ => Err(Error::Domain("method 2 takes --params a,b".into())),
    }
}

fn print_json<T: serde::Serialize>(value: &T) -> CliResult {
    let mut out = io::stdout().lock();
    serde_json::to_writer(&mut out, value).map_err(|e| Failure::new(Failure::IO, e.to_string()))?;
    writeln!(out)?;
    Ok(())
}

fn cmd_gen(args: &GenArgs) -> CliResult {
    let system = generate(args.n, args.method, &point_params(&args.point))?;
    print_json(&SystemOutput::from(&system))
}

fn cmd_verify(file: Option<&str>, allow_repeats: bool) -> CliResult {
    let text = match file {
        Some(path) => fs::read_to_string(path)?,
        None => {
            let mut buf = String::new();
            io::stdin().read_to_string(&mut buf)?;
            buf
        }
    };
    let input: SystemInput =
        serde_json::from_str(&text).map_err(|e| Failure::new(Failure::IO, format!("malformed system: {e}")))?;
    let declared_n = input.n;
    let system = input.into_system().map_err(|m| Failure::new(Failure::IO, m))?;
    if let Some(n) = declared_n.filter(|&n| n != system.n()) {
        return Err(Failure::new(
            Failure::VERIFY,
            format!("declared n = {n} but {} roots given", system.n()),
        ));
    }
    let report = validate_system(&system, !allow_repeats);
    if report.is_valid() {
        println!("{report}");
        Ok(())
    } else {
        Err(Failure::new(Failure::VERIFY, report.to_string()))
    }
}

fn cmd_catalog(action: &CatalogAction) -> CliResult {
    match action {
        CatalogAction::List => {
            for id in list_families() {
                println!("{id}");
            }
            Ok(())
        }
        CatalogAction::Eval { id, point } => {
            let system = eval_family(id, &point_params(point))?;
            print_json(&SystemOutput::from(&system))
        }
        CatalogAction::CrossCheck { id } => {
            let report = cross_check(id)?;
            if report.is_ok() {
                println!("{report}");
                Ok(())
            } else {
                Err(Failure::new(Failure::VERIFY, report.to_string()))
            }
        }
    }
}

fn sweep_points(method: u8, from: i64, to: i64) -> Vec<FamilyParams> {
    if method == 1 {
        return (from..=to).map(|t| FamilyParams::T(t.into())).collect();
    }
    (from.max(2)..=to)
        .flat_map(|sum| {
            (1..sum).filter_map(move |a| {
                let b = sum - a;
                (num_integer_gcd(a, b) == 1).then(|| FamilyParams::Pair(a.into(), b.into()))
            })
        })
        .collect()
}

fn num_integer_gcd(mut a: i64, mut b: i64) -> i64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.abs()
}

enum SweepOutcome {
    Emitted(String),
    Skipped(String),
    Invalid(String),
}

fn sweep_one(n: usize, method: u8, params: &FamilyParams) -> SweepOutcome {
    match generate(n, method, params) {
        Ok(system) => {
            let report = validate_system(&system, true);
            if !report.is_valid() {
                return SweepOutcome::Invalid(format!("{params}: {report}"));
            }
            let line = SweepLine::new(params, &system);
            match serde_json::to_string(&line) {
                Ok(text) => SweepOutcome::Emitted(text),
                Err(e) => SweepOutcome::Invalid(format!("{params}: {e}")),
            }
        }
        Err(Error::Degenerate(reason)) => SweepOutcome::Skipped(format!("skip {params}: {reason}")),
        Err(e) => SweepOutcome::Invalid(format!("{params}: {e}")),
    }
}

fn cmd_sweep(args: &SweepArgs) -> CliResult {
    let points = sweep_points(args.method, args.from, args.to);
    let run = |p: &FamilyParams| sweep_one(args.n, args.method, p);
    let outcomes: Vec<SweepOutcome> = if args.parallel {
        points.par_iter().map(run).collect()
    } else {
        points.iter().map(run).collect()
    };
    let mut out = io::stdout().lock();
    let mut invalid = 0;
    for outcome in outcomes {
        match outcome {
            SweepOutcome::Emitted(line) => writeln!(out, "{line}")?,
            SweepOutcome::Skipped(reason) => eprintln!("{reason}"),
            SweepOutcome::Invalid(reason) => {
                invalid += 1;
                eprintln!("error {reason}");
            }
        }
    }
    out.flush()?;
    if invalid > 0 {
        return Err(Failure::new(Failure::VERIFY, format!("{invalid} points failed")));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Gen(args) => cmd_gen(args),
        Command::Verify { file, allow_repeats } => cmd_verify(file.as_deref(), *allow_repeats),
        Command::Catalog { action } => cmd_catalog(action),
        Command::Sweep(args) => cmd_sweep(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("squares: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
