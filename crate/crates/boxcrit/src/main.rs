//! `boxcrit` — batch evaluation of object detections under pluggable
//! box-similarity criteria, NMS filtering, report comparison, and
//! Monte-Carlo analysis of criterion value distributions.
//!
//! Exit codes: 0 success, 1 internal failure, 2 flag/usage error,
//! 3 input-parse error. Given identical flags, files, and seed, every
//! command's output is byte-identical across runs and thread counts.

mod commands;
mod shared;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "boxcrit",
    version,
    about = "Detection evaluation and box-similarity analysis toolkit",
    propagate_version = true
)]
struct Cli {
    /// Worker threads for parallel computation (default: all cores).
    /// Results are identical for every setting.
    #[arg(long, global = true, value_name = "N", value_parser = clap::value_parser!(u64).range(1..))]
    threads: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Score detections against ground truth (mAP, AR, size breakdown).
    Evaluate(commands::evaluate::EvaluateArgs),
    /// Sample criterion value distributions across box sizes.
    Analyze(commands::analyze::AnalyzeArgs),
    /// Filter detections with non-maximum suppression.
    Nms(commands::nms::NmsArgs),
    /// Relative mAP change between two evaluation reports.
    Compare(commands::compare::CompareArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();

    if let Some(threads) = cli.threads {
        let built = rayon::ThreadPoolBuilder::new()
            .num_threads(threads as usize)
            .build_global();
        if let Err(e) = built {
            eprintln!("error: cannot configure the thread pool: {e}");
            return ExitCode::from(1);
        }
    }

    let result = match &cli.command {
        Command::Evaluate(args) => commands::evaluate::run(args),
        Command::Analyze(args) => commands::analyze::run(args),
        Command::Nms(args) => commands::nms::run(args),
        Command::Compare(args) => commands::compare::run(args),
    };

    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.exit_code())
        }
    }
}
