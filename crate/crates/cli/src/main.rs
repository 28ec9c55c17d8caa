use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use kamp_cli::{Format, RunConfig};
use kamp_core::semantics::Density;

/// Translate first-order formulas over linear orders into Until/Since
/// temporal logic, and check the translation on finite chains.
#[derive(Parser)]
#[command(name = "kamp", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Largest chain size for exhaustive checking.
    #[arg(long = "max-size", default_value_t = 4, global = true)]
    max_size: usize,

    /// Number of additional random chains for `verify`.
    #[arg(long, default_value_t = 100, global = true)]
    random: usize,

    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,

    /// Alphabet for chain enumeration, e.g. `P,Q`.
    #[arg(long, value_delimiter = ',', global = true)]
    atoms: Option<Vec<String>>,

    #[arg(long, value_enum, default_value_t = FormatArg::Infix, global = true)]
    format: FormatArg,

    /// Print the translation trace to stderr.
    #[arg(long, global = true)]
    trace: bool,

    /// Size budget for intermediate normal forms and the output.
    #[arg(long, default_value_t = 1_000_000, global = true)]
    budget: u64,

    /// Chain file for `eval`, one chain per line, e.g. `n=3; P=1; Q=2`.
    #[arg(long, global = true)]
    chain: Option<PathBuf>,

    /// Labeling probability for random chains.
    #[arg(long, default_value = "1/2", global = true)]
    density: Density,
}

#[derive(Subcommand)]
enum Command {
    /// Print the temporal translation of a formula with one free variable.
    Translate { formula: String },
    /// Translate, then compare both formulas on finite chains.
    Verify { formula: String },
    /// Print the truth value at each position of each chain in `--chain`.
    Eval { formula: String },
    /// Report input and output sizes and the largest normal form per pass.
    Stats { formula: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Infix,
    Sexpr,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = RunConfig {
        max_size: cli.max_size,
        random: cli.random,
        seed: cli.seed,
        atoms: cli.atoms,
        format: match cli.format {
            FormatArg::Infix => Format::Infix,
            FormatArg::Sexpr => Format::Sexpr,
        },
        trace: cli.trace,
        budget: cli.budget,
        chain: cli.chain,
        density: cli.density,
    };
    let outcome = match &cli.command {
        Command::Translate { formula } => kamp_cli::translate(formula, &cfg),
        Command::Verify { formula } => kamp_cli::verify(formula, &cfg),
        Command::Eval { formula } => kamp_cli::eval_file(formula, &cfg),
        Command::Stats { formula } => kamp_cli::stats(formula, &cfg),
    };
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code)
}
