mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::{CliError, RunConfig, Suite};

const DEFAULT_SEED: u64 = 20_241_019;

#[derive(Parser, Debug)]
#[command(name = "slnfoam", version, about = "Evaluate closed sl(N) foams and run consistency checks")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug)]
struct Opts {
    /// Rank N
    #[arg(long, global = true)]
    n: Option<usize>,
    /// Seed for specialization points
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Worker threads; output does not depend on this
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Largest decoration degree in relation closures (default 2N)
    #[arg(long, global = true)]
    closure_degree: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Record wall time per case (makes reports non-reproducible)
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Evaluate a closed foam file
    Eval { file: PathBuf },
    /// Littlewood–Richardson coefficient from a theta foam, against the tableau count
    Lr { alpha: String, beta: String, lambda: String, a: usize, b: usize },
    /// Run a check suite
    Check {
        #[arg(value_enum)]
        suite: Suite,
        /// Web for the gram suite, e.g. 1,1,1
        #[arg(long)]
        theta: Option<String>,
    },
    /// Count colorings of a MOY web
    MoyCount {
        /// MOY web in JSON
        file: Option<PathBuf>,
        /// Theta web with these strand labels instead of a file
        #[arg(long)]
        theta: Option<String>,
        /// A single circle with this label (needs --n)
        #[arg(long)]
        circle: Option<usize>,
    },
    /// Pairing matrix of the theta basis against its dual basis
    Gram {
        /// Strand labels, e.g. 1,1,1
        #[arg(long)]
        theta: String,
    },
    /// Structure constants of the theta state space
    StructConst {
        /// Strand labels, e.g. 1,1
        #[arg(long)]
        theta: String,
        /// Diagrams for strands 2..k, e.g. "[1] []"
        #[arg(long)]
        alpha: Option<String>,
        /// Second factor, same form as --alpha
        #[arg(long)]
        beta: Option<String>,
    },
    /// Degree of a closed foam file
    Degree { file: PathBuf },
}

fn run(cli: &Cli) -> Result<report::Report, CliError> {
    let o = &cli.opts;
    let cfg = RunConfig { n: o.n, seed: o.seed, jobs: o.jobs, closure_degree: o.closure_degree, timings: o.timings };
    match &cli.cmd {
        Cmd::Eval { file } => commands::cmd_eval(&cfg, file),
        Cmd::Lr { alpha, beta, lambda, a, b } => commands::cmd_lr(&cfg, alpha, beta, lambda, *a, *b),
        Cmd::Check { suite, theta } => commands::cmd_check(&cfg, *suite, theta.as_deref()),
        Cmd::MoyCount { file, theta, circle } => {
            commands::cmd_moy_count(&cfg, file.as_deref(), theta.as_deref(), *circle)
        }
        Cmd::Gram { theta } => commands::cmd_gram(&cfg, theta),
        Cmd::StructConst { theta, alpha, beta } => {
            commands::cmd_struct_const(&cfg, theta, alpha.as_deref(), beta.as_deref())
        }
        Cmd::Degree { file } => commands::cmd_degree(&cfg, file),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(rep) => {
            let out = match cli.opts.format {
                Format::Text => rep.to_text(),
                Format::Json => rep.to_json(),
            };
            print!("{out}");
            if rep.failed() > 0 {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
