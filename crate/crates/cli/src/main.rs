//! `sbe`: solve, kernelize, generate and benchmark Swap Bribery instances.
//!
//! Exit status of `solve` and `verify`: 0 for yes / valid, 1 for no /
//! invalid, 2 for errors.

mod bench;
mod commands;
mod solve;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "sbe", version, about = "Swap bribery workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Algorithm {
    /// Flow for unit prices, otherwise integer programming for m ≤ 6,
    /// otherwise color coding.
    Auto,
    /// Exhaustive search.
    Brute,
    /// Min-cost flow (unit prices, k-approval).
    Flow,
    /// Flow solution repriced at the true costs (prices ≥ 1).
    Approx,
    /// Color coding (k-approval).
    Color,
    /// Integer program over ranking counts.
    Ilp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ColorKind {
    Exhaustive,
    Random,
}

#[derive(Args, Clone, Debug)]
pub struct SolverOpts {
    #[arg(long, value_enum, default_value_t = Algorithm::Auto)]
    pub algorithm: Algorithm,
    /// Coloring strategy for color coding (auto falls back to random when
    /// exhaustive search is over its cap).
    #[arg(long, value_enum)]
    pub color_mode: Option<ColorKind>,
    /// Random colorings per pattern; default (nk−1)^(nk−1).
    #[arg(long)]
    pub trials: Option<u64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Decide an election file and print a solution.
    Solve {
        file: PathBuf,
        #[command(flatten)]
        opts: SolverOpts,
        /// Also write the solution to this file.
        #[arg(long)]
        solution: Option<PathBuf>,
    },
    /// Check a solution file against an election file.
    Verify { election: PathBuf, solution: PathBuf },
    /// Shrink a k-approval instance with prices ≥ 1.
    Kernelize {
        file: PathBuf,
        /// Only drop candidates nobody ranks within the first k+β positions.
        #[arg(long)]
        simple: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Write `kernel-name original-name` lines here (`-` for dummies).
        #[arg(long)]
        provenance: Option<PathBuf>,
    },
    /// Write generated instances.
    Generate {
        #[command(subcommand)]
        kind: Generate,
    },
    /// Translate between possible-winner and zero-budget bribery files.
    Reduce {
        #[command(subcommand)]
        direction: Reduce,
    },
    /// Run solvers over election files and write CSV.
    Bench {
        files: Vec<PathBuf>,
        /// Comma-separated algorithms.
        #[arg(long, default_value = "auto")]
        solvers: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Write the point network for a target score of p as DOT.
    ExportNetwork {
        file: PathBuf,
        #[arg(long)]
        s_star: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Generate {
    /// Random k-approval instance; candidate `p` is preferred.
    Random {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// `unit`, `two-valued:LOW,HIGH,DENSITY` or `range:LO,HI`.
        #[arg(long, default_value = "unit")]
        costs: String,
        #[arg(long)]
        budget: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// 2-approval instance encoding Multicolored Clique on a colored graph.
    CliqueGadget {
        graph: PathBuf,
        #[arg(long, default_value = "1")]
        epsilon: String,
        /// Comma-separated clique vertices by color; writes the matching bribery.
        #[arg(long, requires = "witness")]
        clique: Option<String>,
        #[arg(long)]
        witness: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Single-vote instance deciding whether a graph has a k-clique.
    SingleVote {
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Reduce {
    /// Zero-budget election file with prices in {0, δ} to a partial-vote file.
    ToPw {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Partial-vote file to a zero-budget election file.
    FromPw {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also decide it by trying every extension.
        #[arg(long)]
        decide: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.command {
        Command::Solve { file, opts, solution } => solve::run_solve(&file, &opts, solution.as_deref()),
        Command::Verify { election, solution } => commands::verify(&election, &solution),
        Command::Kernelize {
            file,
            simple,
            output,
            provenance,
        } => commands::kernelize(&file, simple, output.as_deref(), provenance.as_deref()),
        Command::Generate { kind } => match kind {
            Generate::Random {
                m,
                n,
                k,
                costs,
                budget,
                seed,
                output,
            } => commands::generate_random(m, n, k, &costs, budget.as_deref(), seed, output.as_deref()),
            Generate::CliqueGadget {
                graph,
                epsilon,
                clique,
                witness,
                output,
            } => commands::generate_clique_gadget(
                &graph,
                &epsilon,
                clique.as_deref(),
                witness.as_deref(),
                output.as_deref(),
            ),
            Generate::SingleVote { graph, k, output } => {
                commands::generate_single_vote(&graph, k, output.as_deref())
            }
        },
        Command::Reduce { direction } => match direction {
            Reduce::ToPw { file, output } => commands::to_pw(&file, output.as_deref()),
            Reduce::FromPw { file, output, decide } => commands::from_pw(&file, output.as_deref(), decide),
        },
        Command::Bench {
            files,
            solvers,
            seed,
            output,
        } => bench::run(&files, &solvers, seed, output.as_deref()),
        Command::ExportNetwork { file, s_star, output } => {
            commands::export_network(&file, s_star, output.as_deref())
        }
    };
    match res {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
