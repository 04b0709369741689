//! `lipfree`: JSON-in, JSON-out front end to the library.
//!
//! Every verb prints one JSON report on stdout and exits 0, including when
//! the verdict is negative. Unreadable, malformed or invalid input exits 2
//! with a JSON error on stderr.

mod input;
mod json;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lipfree::asymptotics::Ladder;
use serde_json::{json, Value};

use input::{InputError, Result};

#[derive(Parser)]
#[command(name = "lipfree", version, about = "Weighted Lipschitz operators between finite pointed metric spaces")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args)]
struct Opts {
    /// Polygon order for complex norms (even, at least 8).
    #[arg(short = 'k', long = "order", global = true, default_value_t = lipfree::DEFAULT_POLYGON_ORDER)]
    order: usize,
    /// Ladder 2^4 ..= 2^DEPTH for limit detection.
    #[arg(long, global = true, default_value_t = 20, value_parser = clap::value_parser!(u32).range(9..=40))]
    ladder_depth: u32,
    /// Read the operator input as a problem on Lip spaces.
    #[arg(long, global = true)]
    lip: bool,
    /// Indented output.
    #[arg(long, global = true)]
    pretty: bool,
    /// Worker threads for the library (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Subcommand)]
enum Verb {
    /// Check the metric axioms of a space.
    Validate { input: PathBuf },
    /// Norm of a finitely supported element of the free space.
    Norm { input: PathBuf },
    /// Operator norm as a maximum over molecules.
    Opnorm { input: PathBuf },
    /// Pair statistics and the boundedness estimate.
    Bounded { input: PathBuf },
    /// Injectivity criterion with its rank cross-check.
    Inject { input: PathBuf },
    /// Surjectivity criterion with its rank cross-check.
    Surject { input: PathBuf },
    /// Asymptotic compactness checks on pair-sequence families.
    CompactFamily { input: PathBuf },
    /// Truncated matrix of the weighted backward shift.
    ShiftDemo {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        beta: f64,
        #[arg(long, default_value_t = 64)]
        nmax: usize,
    },
    /// Boundedness data of an operator between Lip spaces.
    LipBounded { input: PathBuf },
}

fn run(cli: Cli) -> Result<(Value, &'static str)> {
    let o = &cli.opts;
    if o.order < 8 || o.order % 2 != 0 {
        return Err(InputError::Usage(format!("polygon order {} must be even and at least 8", o.order)));
    }
    let operator = |path: &PathBuf| input::operator(input::read_json(path)?);
    let lifted = |path: &PathBuf| -> Result<_> {
        let p = input::lip_problem(input::read_json(path)?)?;
        Ok(p.to_lip0()?)
    };
    Ok(match &cli.verb {
        Verb::Validate { input } => {
            let js = serde_json::from_value(input::read_json(input)?)?;
            let s: lipfree::Space = lipfree::SpaceJson::into_space(js)?;
            (report::validate(&s), report::METRIC)
        }
        Verb::Norm { input } => (report::norm(&input::element(input::read_json(input)?)?, o.order)?, report::FREE_NORM),
        Verb::Opnorm { input } if o.lip => (report::opnorm(&lifted(input)?, o.order, report::LIP)?, report::LIP),
        Verb::Opnorm { input } => (report::opnorm(&operator(input)?, o.order, report::NORM_ESTIMATE)?, report::NORM_ESTIMATE),
        Verb::Bounded { input } | Verb::LipBounded { input }
            if o.lip || matches!(cli.verb, Verb::LipBounded { .. }) =>
        {
            let p = input::lip_problem(input::read_json(input)?)?;
            (report::lip_bounded(&p)?, report::LIP_BOUNDED)
        }
        Verb::Bounded { input } => (report::bounded(&operator(input)?), report::BOUNDED),
        Verb::Inject { input } => {
            let op = if o.lip { lifted(input)? } else { operator(input)? };
            (report::inject(&op), report::INJECTIVE)
        }
        Verb::Surject { input } => {
            let op = if o.lip { lifted(input)? } else { operator(input)? };
            (report::surject(&op), report::SURJECTIVE)
        }
        Verb::CompactFamily { input } => {
            let job = input::family_job(input::read_json(input)?)?;
            let ladder = Ladder::powers_of_two(4, o.ladder_depth)?;
            (report::compact_family(job, &ladder, o.order)?, report::GENERAL_CASES)
        }
        Verb::ShiftDemo { alpha, beta, nmax } => (report::shift_demo(*alpha, *beta, *nmax)?, report::SHIFT),
        Verb::LipBounded { .. } => unreachable!("handled with --lip"),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let pretty = cli.opts.pretty;
    if let Some(n) = cli.opts.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global() {
            eprintln!("{}", json!({"error": e.to_string()}));
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok((report, criterion)) => {
            let text = json::render(&json::finish(report, criterion), pretty);
            // A closed pipe downstream is not an error of ours.
            match writeln!(std::io::stdout().lock(), "{text}") {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => ExitCode::FAILURE,
                _ => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            eprintln!("{}", json!({"error": e.to_string(), "criterion": "input"}));
            ExitCode::from(2)
        }
    }
}
