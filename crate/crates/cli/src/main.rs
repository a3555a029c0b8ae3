//! `gateforge` — synthesize, decompose, evolve, verify, and search for
//! few-spin gate Hamiltonians, with stable JSON/CSV reports.
//!
//! Exit codes: `0` success (and, for `verify`/`search`, the quantitative
//! goal was met), `1` quantitative failure, `2` input error, `3`
//! constraint violation.

mod commands;
mod input;
mod report;

use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

/// Command-line front end for gate-Hamiltonian synthesis.
#[derive(Parser)]
#[command(name = "gateforge", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Gate families with closed-form generators.
#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum Family {
    /// Single-spin NOT, params `{"N": int, "gamma": float}`.
    Not1,
    /// Two-spin NOT, params `{"E": float, "N": int, "gamma": float}`.
    Not2,
    /// Three-spin XOR, params `{"alpha": float, "beta": float, "gamma": float}`.
    Xor,
}

/// Output encoding for the primary report.
#[derive(Copy, Clone, Debug, Default, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// Pulse shape used by `evolve`.
#[derive(Copy, Clone, Debug, Default, ValueEnum)]
pub enum Shape {
    /// Time-independent Hamiltonian over the gate window.
    #[default]
    Constant,
    /// Unit-area raised-cosine envelope over the gate window.
    RaisedCosine,
}

#[derive(Subcommand)]
enum Command {
    /// Synthesize a closed-form gate Hamiltonian and report its terms.
    Synth {
        /// Gate family to synthesize.
        family: Family,
        /// Family parameters as JSON (inline, a file path, or `-` for stdin).
        params: String,
        /// Gate duration.
        #[arg(long, default_value_t = 1.0)]
        delta_t: f64,
        /// Reduced Planck constant (sets the energy unit).
        #[arg(long, default_value_t = 1.0)]
        hbar: f64,
        /// Interpret input angles as degrees (output is always radians).
        #[arg(long)]
        degrees: bool,
        /// Write the report here (plus `<out>.manifest.json`); stdout if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Decompose a Hermitian matrix into weighted Pauli strings.
    Decompose {
        /// Matrix file as JSON (inline, a file path, or `-` for stdin).
        matrix: String,
        /// Gate duration recorded in the report.
        #[arg(long, default_value_t = 1.0)]
        delta_t: f64,
        /// Reduced Planck constant recorded in the report.
        #[arg(long, default_value_t = 1.0)]
        hbar: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Exponentiate a Hamiltonian report into its gate unitary.
    Evolve {
        /// Hamiltonian report (inline JSON, a file path, or `-` for stdin).
        hamiltonian: String,
        /// Pulse shape applied to the whole Hamiltonian.
        #[arg(long, value_enum, default_value_t)]
        shape: Shape,
        /// Time slices for shaped pulses.
        #[arg(long, default_value_t = 256)]
        steps: usize,
        /// Override the report's gate duration.
        #[arg(long)]
        delta_t: Option<f64>,
        /// Override the report's Planck constant.
        #[arg(long)]
        hbar: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Evolve a Hamiltonian report and check it implements a gate.
    Verify {
        /// Hamiltonian report (inline JSON, a file path, or `-` for stdin).
        hamiltonian: String,
        /// Gate semantics to verify against.
        spec: Family,
        /// Leakage tolerance.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Search a coupling ansatz for coefficients implementing a gate.
    Search {
        /// Ansatz description as JSON (inline, a file path, or `-` for stdin).
        ansatz: String,
        /// Gate semantics to target.
        spec: Family,
        /// Search configuration as JSON (inline, a file path, or `-` for stdin).
        config: Option<String>,
        /// Override the configured master seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Gate duration.
        #[arg(long, default_value_t = 1.0)]
        delta_t: f64,
        /// Reduced Planck constant.
        #[arg(long, default_value_t = 1.0)]
        hbar: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

/// A command failure carrying its process exit code.
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<gateforge_core::Error> for Failure {
    fn from(e: gateforge_core::Error) -> Self {
        use gateforge_core::Error;
        let code = match &e {
            Error::ConstraintViolation { .. }
            | Error::NotHermitian { .. }
            | Error::NotUnitary { .. }
            | Error::InvalidProtocol { .. } => 3,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::input(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::input(e.to_string())
    }
}

fn main() {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Synth {
            family,
            params,
            delta_t,
            hbar,
            degrees,
            out,
            format,
        } => commands::synth(family, &params, delta_t, hbar, degrees, out.as_deref(), format),
        Command::Decompose {
            matrix,
            delta_t,
            hbar,
            out,
            format,
        } => commands::decompose(&matrix, delta_t, hbar, out.as_deref(), format),
        Command::Evolve {
            hamiltonian,
            shape,
            steps,
            delta_t,
            hbar,
            out,
            format,
        } => commands::evolve(&hamiltonian, shape, steps, delta_t, hbar, out.as_deref(), format),
        Command::Verify {
            hamiltonian,
            spec,
            tol,
            out,
            format,
        } => commands::verify(&hamiltonian, spec, tol, out.as_deref(), format),
        Command::Search {
            ansatz,
            spec,
            config,
            seed,
            delta_t,
            hbar,
            out,
            format,
        } => commands::search(
            &ansatz,
            spec,
            config.as_deref(),
            seed,
            delta_t,
            hbar,
            out.as_deref(),
            format,
        ),
    };
    match outcome {
        Ok(code) => std::process::exit(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            std::process::exit(f.code);
        }
    }
}
