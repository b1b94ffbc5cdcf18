use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use planerot_cli::commands::{self, DetMethod, InvariantArgs, OutputFormat};
use planerot_cli::selftest::{self, SelftestOptions};
use planerot_cli::{CliError, Outcome};

/// Rotation matrices in R^n from planes and angles.
#[derive(Parser)]
#[command(name = "planerot", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the rotation matrix described by a spec file.
    Build {
        spec: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        output: OutputFormat,
        /// Reject plane vectors that are not already orthonormal.
        #[arg(long)]
        strict: bool,
    },
    /// Rotate a vector: "x1,x2,...".
    Apply {
        spec: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        vector: String,
        #[arg(long)]
        strict: bool,
    },
    /// Check orthogonality and unit determinant of a matrix or spec file.
    Verify { path: PathBuf },
    /// Classify the invariant planes of a rotation.
    Invariant {
        spec: PathBuf,
        /// Witness planes to print in the isoclinic case.
        #[arg(long, default_value_t = 8)]
        samples: usize,
        /// General-position planes to probe when the angles differ.
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Determinant of a square matrix.
    Det {
        matrix: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        method: DetMethod,
    },
    /// Compare det(AB) with det(A) det(B).
    DetProduct { a: PathBuf, b: PathBuf },
    /// Run the seeded invariant suite.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, hide = true)]
        corrupt: bool,
    },
}

fn dispatch(command: Command) -> Result<Outcome, CliError> {
    match command {
        Command::Build {
            spec,
            output,
            strict,
        } => commands::build(&spec, output, strict),
        Command::Apply {
            spec,
            vector,
            strict,
        } => commands::apply(&spec, &vector, strict),
        Command::Verify { path } => commands::verify(&path),
        Command::Invariant {
            spec,
            samples,
            trials,
            seed,
        } => commands::invariant(
            &spec,
            InvariantArgs {
                samples,
                trials,
                seed,
            },
        ),
        Command::Det { matrix, method } => commands::det(&matrix, method),
        Command::DetProduct { a, b } => commands::det_product(&a, &b),
        Command::Selftest { seed, corrupt } => Ok(selftest::run(SelftestOptions { seed, corrupt })),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            ExitCode::from(outcome.code)
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
