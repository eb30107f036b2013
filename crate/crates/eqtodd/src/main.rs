use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use eqtodd::{cmd_act, cmd_count, cmd_rcoef, cmd_reduce, cmd_todd, cmd_verify, Options};

#[derive(Parser)]
#[command(name = "eqtodd", version, about = "Equivariant Todd classes and Euler-Maclaurin counts of toric data")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Truncation order T of all series.
    #[arg(long, global = true, default_value_t = eqtodd_core::DEFAULT_ORDER)]
    order: u32,
    /// Gram matrix of the inner product (identity if omitted).
    #[arg(long, global = true, value_name = "FILE")]
    gram: Option<PathBuf>,
    /// Disable memoization of Todd coefficients and reductions.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Compact single-line JSON (default).
    #[arg(long, global = true, conflicts_with = "pretty")]
    json: bool,
    /// Indented JSON.
    #[arg(long, global = true)]
    pretty: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Action of a Cartier divisor on a basis cycle.
    Act {
        #[arg(long)]
        fan: PathBuf,
        #[arg(long)]
        divisor: PathBuf,
        /// Cone label such as V1, V13 or V (zero cone).
        #[arg(long)]
        cycle: String,
    },
    /// Todd coefficient r of one cone, e.g. --cone '[[1,0],[0,1]]'.
    Rcoef {
        #[arg(long)]
        cone: String,
    },
    /// Square-free Todd class expansion of a fan.
    Todd {
        #[arg(long)]
        fan: PathBuf,
    },
    /// Lattice-point count with enumeration certificate.
    Count {
        #[arg(long)]
        polytope: PathBuf,
    },
    /// Compare the Euler-Maclaurin series with the exponential sum.
    Verify {
        #[arg(long)]
        polytope: PathBuf,
    },
    /// Square-free normal form of a D-polynomial.
    Reduce {
        #[arg(long)]
        fan: PathBuf,
        #[arg(long)]
        poly: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = &cli.global;
    let opts = Options { order: g.order, gram: g.gram.as_deref(), no_cache: g.no_cache };
    let result = match &cli.command {
        Command::Act { fan, divisor, cycle } => cmd_act(fan, divisor, cycle, &opts),
        Command::Rcoef { cone } => cmd_rcoef(cone, &opts),
        Command::Todd { fan } => cmd_todd(fan, &opts),
        Command::Count { polytope } => cmd_count(polytope, &opts),
        Command::Verify { polytope } => cmd_verify(polytope, &opts),
        Command::Reduce { fan, poly } => cmd_reduce(fan, poly, &opts),
    };
    match result {
        Ok(v) => {
            let text = if g.pretty { serde_json::to_string_pretty(&v) } else { serde_json::to_string(&v) };
            println!("{}", text.expect("JSON values always serialize"));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("eqtodd: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
