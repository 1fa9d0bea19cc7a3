use std::path::PathBuf;

use clap::{Parser, Subcommand};
use simpres::cli::{self, CoefficientChoice, TableOptions, Theory};

/// Exact-arithmetic Hochschild and secondary Hochschild (co)homology
/// from JSON problem statements.
#[derive(Parser)]
#[command(name = "simpres", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate everything the document defines: algebra laws, ε laws,
    /// simplicial identities, module compatibility.
    Check {
        path: PathBuf,
        /// Degree through which the identity suites run.
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
        /// Emit JSON instead of TSV.
        #[arg(long)]
        json: bool,
    },
    /// Betti numbers of the homology pipeline, degrees 0..=max_degree.
    Homology {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = Theory::Hochschild)]
        theory: Theory,
        #[arg(long, value_enum, default_value_t = CoefficientChoice::Regular)]
        coefficients: CoefficientChoice,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        /// Also print the independent classical table; exit nonzero on mismatch.
        #[arg(long)]
        oracle: bool,
        /// Emit JSON instead of TSV.
        #[arg(long)]
        json: bool,
    },
    /// Betti numbers of the cohomology pipeline, degrees 0..=max_degree.
    Cohomology {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = Theory::Hochschild)]
        theory: Theory,
        #[arg(long, value_enum, default_value_t = CoefficientChoice::Regular)]
        coefficients: CoefficientChoice,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        /// Also print the independent classical table; exit nonzero on mismatch.
        #[arg(long)]
        oracle: bool,
        /// Emit JSON instead of TSV.
        #[arg(long)]
        json: bool,
    },
    /// Verify the document's bundled homotopy-equivalence instance end to
    /// end: morphism and homotopy laws, the lifted identities on the
    /// coefficient complexes, and Betti agreement.
    HomotopyVerify {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = Theory::Hochschild)]
        theory: Theory,
        /// Defaults to the max_degree recorded in the document.
        #[arg(long)]
        max_degree: Option<usize>,
        /// Emit JSON instead of TSV.
        #[arg(long)]
        json: bool,
    },
}

fn main() {
    let args = Cli::parse();
    let result = match args.command {
        Command::Check {
            path,
            max_degree,
            json,
        } => cli::cmd_check(&path, max_degree, json),
        Command::Homology {
            path,
            theory,
            coefficients,
            max_degree,
            oracle,
            json,
        } => cli::cmd_homology(
            &path,
            &TableOptions {
                theory,
                coefficients,
                max_degree,
                oracle,
                json,
            },
        ),
        Command::Cohomology {
            path,
            theory,
            coefficients,
            max_degree,
            oracle,
            json,
        } => cli::cmd_cohomology(
            &path,
            &TableOptions {
                theory,
                coefficients,
                max_degree,
                oracle,
                json,
            },
        ),
        Command::HomotopyVerify {
            path,
            theory,
            max_degree,
            json,
        } => cli::cmd_homotopy_verify(&path, theory, max_degree, json),
    };
    print!("{}", result.stdout);
    std::process::exit(result.exit_code);
}
