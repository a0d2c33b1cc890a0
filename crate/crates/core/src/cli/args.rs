use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use super::commands::{cmd_construct, cmd_report, cmd_simulate, cmd_uniformity, cmd_verify};
use super::{parse_count, RunReport, THREADS_ENV};
use crate::protosim::{CorrectionSchedule, RecoveryRoute};

/// Codeword-stabilized codes from uniform graph states: build, certify, simulate.
///
/// Every command prints a JSON report. Exit codes: 0 pass, 1 violation,
/// 2 input error, 3 work budget exceeded.
#[derive(Debug, Parser)]
#[command(name = "cws", version)]
pub struct Cli {
    /// Also write the JSON report to this file.
    #[arg(long, global = true, value_name = "FILE")]
    pub report: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a classical tent peg code and report its parameters.
    Construct(ConstructArgs),
    /// Certify the pure distance of a graph + code pair.
    Verify(VerifyArgs),
    /// Uniformity of a graph state.
    Uniformity(UniformityArgs),
    /// Run an encoding or recovery protocol on a statevector.
    Simulate(SimulateArgs),
    /// Parameter calculators and code summaries.
    Report(ReportArgs),
}

#[derive(Debug, Clone, Args, Default)]
pub struct ConstructArgs {
    /// Cyclic code of length 2^(2r) - 1.
    #[arg(long, value_name = "R", group = "source")]
    pub cr: Option<u32>,
    /// Two-dimensional cyclic code of length (2^(4r) - 1)^2.
    #[arg(long, value_name = "R", group = "source")]
    pub cu: Option<u32>,
    /// Repetition code of length N.
    #[arg(long, value_name = "N", group = "source")]
    pub repetition: Option<usize>,
    /// JSON construction spec.
    #[arg(long, value_name = "FILE", group = "source")]
    pub spec: Option<PathBuf>,
    /// Use alpha = g^T for the table generator g instead of the default choice.
    #[arg(long, value_name = "T")]
    pub alpha_exponent: Option<u64>,
    /// Write the code file here.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Largest weight searched when the dimension rules out enumeration.
    #[arg(long, default_value_t = 6)]
    pub max_weight: usize,
    /// Table entries allowed in the low-weight search.
    #[arg(long, value_parser = parse_count, default_value = "5e7")]
    pub budget: u128,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Graph name or JSON file.
    #[arg(long)]
    pub graph: String,
    /// Code name or JSON file.
    #[arg(long)]
    pub code: String,
    /// Check every error of weight <= m.
    #[arg(long, short)]
    pub m: usize,
    /// Maximum candidate errors; defaults to 1e9, or 1e11 with --heavy.
    #[arg(long, value_parser = parse_count)]
    pub budget: Option<u128>,
    #[arg(long, env = THREADS_ENV)]
    pub threads: Option<usize>,
    /// Lift the default budget for the large lattice certificates.
    #[arg(long)]
    pub heavy: bool,
    /// Skip the uniformity scan.
    #[arg(long)]
    pub no_uniformity: bool,
    /// Also evaluate the degree-based sufficient condition with this classical distance.
    #[arg(long, value_name = "D")]
    pub sufficient: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct UniformityArgs {
    #[arg(long)]
    pub graph: String,
    /// Largest stabilizer subset size scanned.
    #[arg(long, default_value_t = 4)]
    pub cap: usize,
    #[arg(long, value_parser = parse_count, default_value = "1e9")]
    pub budget: u128,
    #[arg(long, env = THREADS_ENV)]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProtocolName {
    Encode,
    Roundtrip,
    Sequential,
    Partial,
    ControlledU,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScheduleArg {
    Interleaved,
    Deferred,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RouteArg {
    Literal,
    Projector,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    #[arg(value_enum)]
    pub protocol: ProtocolName,
    #[arg(long)]
    pub graph: String,
    #[arg(long)]
    pub code: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub trials: usize,
    /// Force measurement outcomes, e.g. `101` (1 = outcome -1).
    #[arg(long, value_name = "BITS")]
    pub forced_outcomes: Option<String>,
    #[arg(long, value_enum, default_value = "interleaved")]
    pub schedule: ScheduleArg,
    #[arg(long, value_enum, default_value = "literal")]
    pub route: RouteArg,
    /// Logical qubit for partial recovery; defaults to the last.
    #[arg(long)]
    pub which: Option<usize>,
    /// First-stage size for sequential encoding; defaults to k - 1.
    #[arg(long)]
    pub split: Option<usize>,
    /// Pauli word for controlled-U recovery; defaults to S_p Z_A at the pivot p.
    #[arg(long)]
    pub u: Option<String>,
    /// Allow joint registers above 22 qubits.
    #[arg(long)]
    pub heavy: bool,
    /// Write the first trial's final physical amplitudes as CSV (n <= 12).
    #[arg(long, value_name = "FILE")]
    pub amplitudes: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Default)]
pub struct ReportArgs {
    /// Summarize a code: parameters, distance, forbidden patterns.
    #[arg(long)]
    pub code: Option<String>,
    /// Summarize a graph: degree and uniformity.
    #[arg(long)]
    pub graph: Option<String>,
    /// Parameters [[n^D, k, 2D+1]] from the D-dimensional lattice bound.
    #[arg(long, num_args = 2, value_names = ["D", "N"])]
    pub gv: Option<Vec<u64>>,
    /// Quantum Hamming ratio Q for [[n, k, d]].
    #[arg(long, num_args = 3, value_names = ["N", "K", "D"])]
    pub hamming: Option<Vec<u64>>,
    /// Primitive element of GF(2^(2r)) with log(1 + alpha) not 2 mod 3.
    #[arg(long, value_name = "R")]
    pub mod3: Option<u32>,
    #[arg(long, default_value_t = 6)]
    pub max_weight: usize,
    #[arg(long, default_value_t = 4)]
    pub uniformity_cap: usize,
    #[arg(long, value_parser = parse_count, default_value = "5e7")]
    pub budget: u128,
}

impl ScheduleArg {
    pub(crate) fn schedule(self) -> CorrectionSchedule {
        match self {
            ScheduleArg::Interleaved => CorrectionSchedule::Interleaved,
            ScheduleArg::Deferred => CorrectionSchedule::Deferred,
        }
    }
}

impl RouteArg {
    pub(crate) fn route(self) -> RecoveryRoute {
        match self {
            RouteArg::Literal => RecoveryRoute::Literal,
            RouteArg::Projector => RecoveryRoute::Projector,
        }
    }
}

pub fn run(cli: &Cli) -> RunReport {
    match &cli.command {
        Command::Construct(a) => cmd_construct(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Uniformity(a) => cmd_uniformity(a),
        Command::Simulate(a) => cmd_simulate(a),
        Command::Report(a) => cmd_report(a),
    }
}

/// Parses `args`, runs the command, prints the report and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let report = run(&cli);
    let json = report.to_json();
    println!("{json}");
    if let Some(path) = &cli.report {
        if let Err(e) = std::fs::write(path, format!("{json}\n")) {
            eprintln!("cannot write {}: {e}", path.display());
            return 2;
        }
    }
    report.exit_code()
}
