//! `binmom`: experiments on exact binomial raw moments.
//!
//! Exit codes: 0 success, 1 domain or I/O error, 2 property violation,
//! 64 malformed command line.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use binomial_moments::ExactRational;

pub const EXIT_DOMAIN: u8 = 1;
pub const EXIT_VIOLATION: u8 = 2;
pub const EXIT_USAGE: u8 = 64;

#[derive(Parser, Debug)]
#[command(name = "binmom", version, about = "Exact raw moments of the binomial distribution")]
struct Cli {
    /// Write CSV to this path instead of a table to standard output.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact E(R^k) for R ~ B(n, p).
    Moment(MomentArgs),
    /// Saddle point and asymptotic base Psi for n/k -> beta.
    Asymptote(AsymptoteArgs),
    /// Exact moment against every lower and upper bound, in log space.
    Bounds(QueryArgs),
    /// Saddle-point approximation of log {k j} against the exact value.
    Temme(TemmeArgs),
    /// Convergence of (log E(R^k) - k log k)/k to log Psi at n = round(beta k).
    Converge(ConvergeArgs),
    /// Log-concavity and unimodality sweep over k <= kmax.
    Check(CheckArgs),
    /// Monte Carlo estimate of the all-red probability.
    Mc(McArgs),
}

#[derive(Args, Debug)]
struct QueryArgs {
    #[arg(long)]
    n: u64,
    /// Exact probability: `a/b`, integer, or decimal literal.
    #[arg(long)]
    p: ExactRational,
    #[arg(long)]
    k: u64,
}

#[derive(Args, Debug)]
struct MomentArgs {
    #[command(flatten)]
    query: QueryArgs,
    /// Summation used for the exact value.
    #[arg(long, value_enum, default_value_t = commands::Method::Stirling)]
    method: commands::Method,
    /// Print P(all red) = E(R^k)/n^k instead of the moment.
    #[arg(long)]
    all_red: bool,
}

#[derive(Args, Debug)]
struct AsymptoteArgs {
    #[arg(long)]
    beta: f64,
    #[arg(long)]
    p: ExactRational,
}

#[derive(Args, Debug)]
struct TemmeArgs {
    #[arg(long)]
    k: u64,
    /// Single block count; all of 1..k-1 when omitted.
    #[arg(long)]
    j: Option<u64>,
}

#[derive(Args, Debug)]
struct ConvergeArgs {
    #[arg(long)]
    beta: f64,
    #[arg(long)]
    p: ExactRational,
    /// Comma-separated moment orders.
    #[arg(long, value_delimiter = ',', default_value = "50,100,200,400")]
    ks: Vec<u64>,
    /// Largest k accepted.
    #[arg(long, default_value_t = 1000)]
    kmax_hard: u64,
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[arg(long, default_value_t = 100)]
    kmax: u64,
    /// Comma-separated probabilities.
    #[arg(long, value_delimiter = ',', default_value = "1/3,1/2")]
    ps: Vec<ExactRational>,
}

#[derive(Args, Debug)]
struct McArgs {
    #[arg(long)]
    n: u64,
    #[arg(long)]
    p: ExactRational,
    #[arg(long)]
    k: u64,
    #[arg(long, default_value_t = 1_000_000)]
    samples: u64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Moment(a) => commands::moment(&a.query.into(), a.method, a.all_red),
        Command::Asymptote(a) => commands::asymptote(a.beta, &a.p),
        Command::Bounds(a) => commands::bounds(&a.into()),
        Command::Temme(a) => commands::temme(a.k, a.j),
        Command::Converge(a) => commands::converge(a.beta, &a.p, &a.ks, a.kmax_hard),
        Command::Check(a) => commands::check(a.kmax, &a.ps),
        Command::Mc(a) => commands::mc(a.n, &a.p, a.k, a.samples, a.seed),
    };
    let report = match result {
        Ok(report) => report,
        Err(err) => {
            eprintln!("error: {err}");
            return ExitCode::from(EXIT_DOMAIN);
        }
    };
    if let Err(err) = output::emit(&report, cli.out.as_deref()) {
        eprintln!("error: {err}");
        return ExitCode::from(EXIT_DOMAIN);
    }
    match &report.violation {
        Some(msg) => {
            eprintln!("property violation: {msg}");
            ExitCode::from(EXIT_VIOLATION)
        }
        None => ExitCode::SUCCESS,
    }
}

impl From<QueryArgs> for commands::RawQuery {
    fn from(a: QueryArgs) -> Self {
        commands::RawQuery { n: a.n, p: a.p, k: a.k }
    }
}
