//! Exact statevector simulation of the encoding and recovery protocols.
//!
//! Physical qubits occupy the low bits of every basis index; input and
//! recovery qubits sit above them, qubit `n + i` carrying logical qubit `i`.
//! Logical basis state `x` has logical qubit `i` at bit `i`.

mod protocols;
mod state;

pub use protocols::{
    code_state, codespace_weight, encode, encode_sequential, partial_recover, prepare_graph_state, recover,
    recover_controlled_u, subcode_state, Correction, CorrectionSchedule, RecoveryRoute, SimOptions, Transcript,
    HEAVY_JOINT_QUBITS, MAX_JOINT_QUBITS, MAX_PHYSICAL_QUBITS,
};
#[cfg(test)]
mod tests;

pub use state::{Outcomes, StateVector, IMPOSSIBLE_OUTCOME, MAX_CSV_QUBITS, MAX_STATE_QUBITS, NORM_TOLERANCE};

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum SimError {
    #[error("{needed} qubits exceed the limit of {limit}")]
    TooManyQubits { needed: usize, limit: usize },
    #[error("{0} qubits need the heavy tier; pass allow_heavy")]
    NeedsHeavy(usize),
    #[error("amplitude count {0} is not a power of two")]
    BadAmplitudeCount(usize),
    #[error("state has zero norm")]
    ZeroState,
    #[error("state has {found} qubits, expected {expected}")]
    WrongQubitCount { expected: usize, found: usize },
    #[error("state is not in the code space (weight {weight:.6})")]
    NotInCodespace { weight: f64 },
    #[error("logical state is not a product across qubit {split}")]
    NotProductState { split: usize },
    #[error("split {split} must lie strictly between 0 and k = {k}")]
    BadSplit { split: usize, k: usize },
    #[error("recovered qubit is entangled with the residual (distance {residual:.3e})")]
    NotSeparable { residual: f64 },
    #[error("logical index {index} out of range for k = {k}")]
    IndexOutOfRange { index: usize, k: usize },
    #[error("controlled recovery needs k = 1, found k = {0}")]
    NeedsSingleLogical(usize),
    #[error("U Z_A is not a graph stabilizer")]
    PreconditionUZA,
    #[error("operator length {found} differs from n = {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("forced outcome {index} has probability zero")]
    ImpossibleOutcome { index: usize },
    #[error("forced outcome list of length {0} is exhausted")]
    ForcedOutcomesExhausted(usize),
    #[error("forced outcomes must be a 0/1 string, got {0:?}")]
    BadForcedOutcomes(String),
}
