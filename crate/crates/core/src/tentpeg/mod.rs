//! Classical tent peg codes: generic linear codes, the cyclic and
//! two-dimensional cyclic constructions, low-weight search, forbidden-pattern
//! scanning and the parameter bounds.

mod bounds;
mod code;
mod cyclic;
mod patterns;
mod search;

pub use bounds::{gv_parameters, hamming_bound_q, GvParameters};
pub use code::{CodeOrigin, CodeSpec, LinearCode, MatrixKind};
pub use cyclic::{
    bivariate_word, build_cr, build_cr_default, build_cu, build_cu_default, cr_parity_matrix, cu_exponent_pairs,
    log_one_plus,
};
pub use patterns::{
    match_patterns, pattern_scan, pattern_scan_templates, template_words, PatternMatch, PatternReport, PatternViolation,
};
pub use search::{
    find_low_weight_codeword, min_distance_bruteforce, min_distance_upto, DEFAULT_TABLE_BUDGET, MAX_BRUTEFORCE_K,
    MAX_MITM_WEIGHT,
};

use crate::f2core::F2Error;
use crate::gf2m::FieldError;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum CodeError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Matrix(#[from] F2Error),
    #[error("bad primitive element: {0}")]
    BadAlpha(String),
    #[error("unsupported field or parameters: {0}")]
    BadField(String),
    #[error("computed dimension {found} differs from the expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("work {needed} exceeds budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("weight cap {0} exceeds 8")]
    WeightCapTooLarge(usize),
    #[error("{0} parity rows exceed the packed syndrome width")]
    SyndromeTooWide(usize),
}
