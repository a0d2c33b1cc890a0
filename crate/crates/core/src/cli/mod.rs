//! Report-producing commands behind the `cws` binary.
//!
//! Every command returns a [`RunReport`]. Reports are plain JSON with sorted
//! keys; everything that varies between identical runs lives under `timings`.

mod args;
mod commands;
mod resolve;

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

pub use args::{
    main_with_args, run, Cli, Command, ConstructArgs, ProtocolName, ReportArgs, SimulateArgs, UniformityArgs,
    VerifyArgs,
};
pub use commands::{cmd_construct, cmd_report, cmd_simulate, cmd_uniformity, cmd_verify, ConstructSpec};
pub use resolve::{resolve_code, resolve_graph};

use crate::cws::CwsError;
use crate::gf2m::FieldError;
use crate::graphstate::GraphError;
use crate::protosim::SimError;
use crate::tentpeg::CodeError;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
/// Environment variable holding the default worker thread count.
pub const THREADS_ENV: &str = "CWS_THREADS";
/// Protocol runs pass when every fidelity is at least `1 - FIDELITY_TOLERANCE`.
pub const FIDELITY_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    Pass,
    Violation,
    Error,
    BudgetExceeded,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok | Status::Pass => 0,
            Status::Violation => 1,
            Status::Error => 2,
            Status::BudgetExceeded => 3,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub status: Status,
    /// Echo of the configuration, enough to regenerate every input.
    pub inputs: Value,
    pub results: Value,
    /// Wall-clock milliseconds per phase.
    pub timings: BTreeMap<String, u64>,
    pub seed: Option<u64>,
    pub tool_version: String,
    pub error: Option<String>,
}

impl RunReport {
    pub(crate) fn new(command: &str, inputs: Value) -> Self {
        Self {
            command: command.to_string(),
            status: Status::Ok,
            inputs,
            results: Value::Object(Default::default()),
            timings: BTreeMap::new(),
            seed: None,
            tool_version: TOOL_VERSION.to_string(),
            error: None,
        }
    }

    pub(crate) fn fail(mut self, err: CliError) -> Self {
        self.status = err.status();
        self.error = Some(err.to_string());
        self
    }

    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    pub fn to_value(&self) -> Value {
        serde_json::to_value(self).expect("reports serialize")
    }

    /// Pretty JSON with sorted keys.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_value()).expect("reports serialize")
    }

    /// The report with `timings` emptied, for comparing runs.
    pub fn without_timings(&self) -> Value {
        let mut v = self.to_value();
        v["timings"] = Value::Object(Default::default());
        v
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Cws(#[from] CwsError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

impl CliError {
    pub fn status(&self) -> Status {
        match self {
            CliError::Code(CodeError::BudgetExceeded { .. })
            | CliError::Cws(CwsError::BudgetExceeded { .. })
            | CliError::Cws(CwsError::Graph(GraphError::CapTooLargeForBudget { .. }))
            | CliError::Graph(GraphError::CapTooLargeForBudget { .. }) => Status::BudgetExceeded,
            _ => Status::Error,
        }
    }
}

/// Parses counts like `1000000`, `1_000_000` or `1e9`.
pub fn parse_count(s: &str) -> Result<u128, String> {
    let t = s.replace('_', "");
    if let Some((mant, exp)) = t.split_once(['e', 'E']) {
        let mant: u128 = mant.parse().map_err(|_| format!("bad count {s:?}"))?;
        let exp: u32 = exp.parse().map_err(|_| format!("bad count {s:?}"))?;
        return 10u128
            .checked_pow(exp)
            .and_then(|p| p.checked_mul(mant))
            .ok_or_else(|| format!("count {s:?} overflows"));
    }
    t.parse().map_err(|_| format!("bad count {s:?}"))
}
