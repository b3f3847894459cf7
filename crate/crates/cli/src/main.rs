//! `cdg`: command-line front end for the CNOT-Dihedral engine.
//!
//! Exit status is 0 on success, 1 when a verification fails or a search
//! runs out of budget or depth, and 2 on usage or input errors.

mod commands;
mod output;

use clap::{Parser, Subcommand, ValueEnum};
use cnot_dihedral::layered::{CostMode, DEFAULT_BUDGET};
use cnot_dihedral::Modulus;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "cdg", version, about = "Exact CNOT-Dihedral group toolkit")]
pub struct Cli {
    /// Emit one JSON record per line instead of aligned text.
    #[arg(long, global = true)]
    json_lines: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List every two-qubit canonical form.
    Enumerate {
        #[arg(long, value_parser = parse_modulus)]
        m: Modulus,
        /// Restrict to one class: cs-dihedral, cx-like, double-cx, triple-cx.
        #[arg(long)]
        class: Option<String>,
        #[arg(long, value_enum, default_value_t = FormFormat::Circuits)]
        format: FormFormat,
    },
    /// Reduce a two-qubit circuit to its canonical form.
    Classify { file: PathBuf },
    /// Build cost layers and report sizes against the counting bounds.
    Generate {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=10))]
        n: u8,
        #[arg(long, value_parser = parse_modulus)]
        m: Modulus,
        #[arg(long, value_enum, default_value_t = Mode::Cx)]
        mode: Mode,
        #[arg(long)]
        rmax: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Minimal CX (or CS) count of a circuit, with a witness.
    Cost {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Cx)]
        mode: Mode,
        #[arg(long, default_value_t = 16)]
        rmax: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Check the identity catalog, and optionally class costs.
    Verify {
        #[arg(long, value_parser = parse_modulus)]
        m: Modulus,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=10))]
        n: u8,
        /// Also compare searched CX costs with class costs (two qubits).
        #[arg(long)]
        class_costs: bool,
    },
    /// Emit randomized-benchmarking sequences.
    RbSeq {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        length: u64,
        #[arg(long, value_parser = parse_modulus)]
        m: Modulus,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// Write `seq_NNNN.txt` files here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FormFormat {
    Circuits,
    Params,
    Keys,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Mode {
    Cx,
    Cs,
}

impl From<Mode> for CostMode {
    fn from(m: Mode) -> CostMode {
        match m {
            Mode::Cx => CostMode::Cx,
            Mode::Cs => CostMode::Cs,
        }
    }
}

fn parse_modulus(s: &str) -> Result<Modulus, String> {
    let v: u32 = s.parse().map_err(|e| format!("{e}"))?;
    Modulus::new(v).map_err(|e| e.to_string())
}

/// Error categories mapped onto exit codes.
#[derive(Debug)]
pub enum Failure {
    /// Bad input: unreadable or malformed files, invalid arguments.
    Input(anyhow::Error),
    /// The command ran but the answer is negative or incomplete.
    Check(String),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = output::Out::stdout(cli.json_lines);
    match commands::run(cli.command, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("cdg: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(e)) => {
            eprintln!("cdg: {e:#}");
            ExitCode::from(2)
        }
    }
}
