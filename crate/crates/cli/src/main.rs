mod commands;
mod exit;
mod table;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::exit::{CliError, Status};

#[derive(Parser, Debug)]
#[command(name = "tamelift", version, about = "Tame inertial pairs, crystalline lifts and Hodge-Tate types")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    pub format: Format,

    /// Seed for the randomized sweeps.
    #[arg(long, default_value_t = tamelift::selftest::DEFAULT_SEED, global = true)]
    pub seed: u64,

    /// Print diagnostics to stderr.
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    pub verbose: u8,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Describe a root datum.
    Datum(GroupArgs),
    /// Check the compatibility w·v̄ ≡ q·v̄ (mod N).
    Validate(PairArgs),
    /// Decide G-irreducibility, with a certificate when reducible.
    Irreducible {
        #[command(flatten)]
        pair: PairArgs,
        /// Also run the brute-force parabolic enumeration.
        #[arg(long)]
        oracle: bool,
    },
    /// Compute the canonical crystalline lift.
    Lift(PairArgs),
    /// Compute a Hodge-Tate regular crystalline lift.
    RegularLift(PairArgs),
    /// Print the Hodge-Tate type of a lift or of an explicit tuple.
    Ht {
        #[command(flatten)]
        pair: PairArgs,
        /// Explicit tuple, slots separated by `;`, as in "1,0;0,0".
        #[arg(long)]
        tuple: Option<String>,
        /// Use the regular lift instead of the canonical one.
        #[arg(long)]
        regular: bool,
        /// Exit with status 2 unless every colabel is regular.
        #[arg(long)]
        require_regular: bool,
    },
    /// Enumerate proper parabolics containing the torus and the image.
    Oracle(PairArgs),
    /// Run the desk-scale acceptance sweeps.
    Selftest {
        /// Run a single criterion (1-7).
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=7))]
        criterion: Option<u8>,
    },
    /// Compare the shipped golden fixtures.
    Fixtures,
}

#[derive(Args, Debug, Clone, Default)]
pub struct GroupArgs {
    /// Preset group, such as GL4, SL3, Sp4, SO5 or G2.
    #[arg(long, conflicts_with = "custom")]
    pub group: Option<String>,
    /// Custom root datum JSON file.
    #[arg(long)]
    pub custom: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Default)]
pub struct PairArgs {
    /// Pair JSON file.
    #[arg(long, conflicts_with_all = ["json", "group", "custom"])]
    pub pair: Option<PathBuf>,
    /// Inline pair JSON.
    #[arg(long, conflicts_with_all = ["group", "custom"])]
    pub json: Option<String>,
    #[command(flatten)]
    pub group: GroupArgs,
    /// Residue field size.
    #[arg(long)]
    pub q: Option<u64>,
    /// Degree of the coefficient extension.
    #[arg(long)]
    pub f: Option<u32>,
    /// Frobenius image as a word in simple reflections, such as "s0 s1".
    #[arg(long, allow_hyphen_values = true, conflicts_with = "weyl_matrix")]
    pub w: Option<String>,
    /// Frobenius image as a matrix on cocharacters, rows separated by `;`.
    #[arg(long)]
    pub weyl_matrix: Option<String>,
    /// Inertia data, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    pub vbar: Option<String>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { Status::InvalidInput } else { Status::Ok };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    if cli.verbose > 0 {
        eprintln!("{cli:?}");
    }
    match commands::run(&cli) {
        Ok(out) => {
            print!("{}", out.render(cli.format));
            for note in &out.notes {
                eprintln!("{note}");
            }
            ExitCode::from(out.status as u8)
        }
        Err(CliError { status, message }) => {
            eprintln!("error: {message}");
            ExitCode::from(status as u8)
        }
    }
}
