mod commands;
mod config;
mod error;
mod grid;

use std::io::ErrorKind;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use spinsq::verify::Suite;

use config::{RunArgs, RunConfig, ScanConfig, Settings};
use error::CliError;

/// Spin squeezing and pairwise entanglement of symmetric qubit states.
#[derive(Debug, Parser)]
#[command(name = "spinsq", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evolve the all-down state and write one CSV row per time step.
    Evolve(RunArgs),
    /// Evolve every grid point and write one summary row per point.
    Scan(RunArgs),
    /// Report squeezing and concurrence of a Dicke state.
    Dicke {
        /// Number of qubits.
        n_qubits: usize,
        /// Number of excitations.
        excitations: usize,
    },
    /// Run a named verification suite; exits 1 if any check fails.
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SuiteArg {
    #[value(name = "lemma1")]
    Separable,
    #[value(name = "lemma2")]
    Reconstruction,
    #[value(name = "lemma3")]
    OneAxisMoments,
    #[value(name = "prop3")]
    SqueezingConcurrence,
    #[value(name = "prop4")]
    OneAxisEquivalence,
    Parity,
    Oracle,
    #[value(name = "x-form")]
    XForm,
    Dicke,
    All,
}

impl SuiteArg {
    fn suites(self) -> Vec<Suite> {
        match self {
            SuiteArg::Separable => vec![Suite::Separable],
            SuiteArg::Reconstruction => vec![Suite::Reconstruction],
            SuiteArg::OneAxisMoments => vec![Suite::OneAxisMoments],
            SuiteArg::SqueezingConcurrence => vec![Suite::SqueezingConcurrence],
            SuiteArg::OneAxisEquivalence => vec![Suite::OneAxisEquivalence],
            SuiteArg::Parity => vec![Suite::Parity],
            SuiteArg::Oracle => vec![Suite::Oracle],
            SuiteArg::XForm => vec![Suite::XForm],
            SuiteArg::Dicke => vec![Suite::Dicke],
            SuiteArg::All => Suite::ALL.to_vec(),
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Evolve(args) => {
            commands::evolve(&RunConfig::from_settings(&Settings::resolve(&args)?)?)
        }
        Command::Scan(args) => {
            commands::scan(&ScanConfig::from_settings(&Settings::resolve(&args)?)?)
        }
        Command::Dicke {
            n_qubits,
            excitations,
        } => commands::dicke(n_qubits, excitations),
        Command::Verify { suite, seed } => commands::verify(&suite.suites(), seed),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        // A closed pipe (e.g. `| head`) is the reader's choice, not a failure.
        Err(CliError::Io { source, .. }) if source.kind() == ErrorKind::BrokenPipe => {
            ExitCode::SUCCESS
        }
        Err(e) => {
            if !matches!(e, CliError::Verification) {
                eprintln!("error: {e}");
            }
            if let CliError::Usage(_) = e {
                eprintln!("run 'spinsq --help' for usage");
            }
            e.exit_code()
        }
    }
}
