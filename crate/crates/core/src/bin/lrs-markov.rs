use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use lrs_markov::cli::{self, Command, PipelineConfig, EXIT_INPUT_ERROR};
use lrs_markov::QueryKind;

#[derive(Clone, Copy, ValueEnum)]
enum Cmd {
    /// Decompose, window and reduce an LRS file; write instances, certificates and a manifest
    Reduce,
    /// Re-check an instance against its certificate
    Verify,
    /// Print exact terms u_0..u_horizon
    Eval,
    /// Print the stride decomposition
    Decompose,
    /// Turn a chain instance back into a recurrence
    Reverse,
    /// Search for a query witness up to the horizon
    Scan,
    /// Run the seeded randomized property suites
    Selftest,
}

#[derive(Clone, Copy, ValueEnum)]
enum Query {
    Equal,
    Less,
    InfinitelyOftenLess,
}

#[derive(Parser)]
#[command(
    name = "lrs-markov",
    version,
    about = "Reduce linear recurrence sequences to ergodic Markov chain reachability"
)]
struct Args {
    #[arg(value_enum)]
    command: Cmd,
    /// LRS file (reduce, eval, decompose) or instance file (verify, reverse, scan)
    input: Option<PathBuf>,
    /// Certificate file for verify
    certificate: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "equal")]
    query: Query,
    #[arg(long, default_value_t = lrs_markov::analysis::DEFAULT_HORIZON)]
    horizon: usize,
    #[arg(long, default_value_t = lrs_markov::degeneracy::DEFAULT_WINDOW_CAP)]
    window_cap: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output directory (reduce) or file (other commands)
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let cfg = PipelineConfig {
        command: match args.command {
            Cmd::Reduce => Command::Reduce,
            Cmd::Verify => Command::Verify,
            Cmd::Eval => Command::Eval,
            Cmd::Decompose => Command::Decompose,
            Cmd::Reverse => Command::Reverse,
            Cmd::Scan => Command::Scan,
            Cmd::Selftest => Command::Selftest,
        },
        input: args.input,
        certificate: args.certificate,
        output: args.out,
        query: match args.query {
            Query::Equal => QueryKind::Equal,
            Query::Less => QueryKind::Less,
            Query::InfinitelyOftenLess => QueryKind::InfinitelyOftenLess,
        },
        horizon: args.horizon,
        window_cap: args.window_cap,
        seed: args.seed,
    };
    match cli::run_command(&cfg) {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            ExitCode::from(outcome.status)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT_ERROR)
        }
    }
}
