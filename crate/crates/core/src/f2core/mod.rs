//! Linear algebra over GF(2) and the symplectic representation of Pauli operators.

mod matrix;
mod pauli;
pub mod subsets;
pub mod syndrome;
mod vector;

pub use matrix::{ColumnPermutation, F2Matrix, Rref};
pub use pauli::{symplectic_weight, symplectic_weight_naive, PauliWord};
pub use syndrome::Syndrome;
pub use vector::F2Vector;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum F2Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix with {rows} rows has rank {rank}")]
    RankDeficient { rows: usize, rank: usize },
    #[error("parse error: {0}")]
    Parse(String),
}
