//! CWS codes from a graph state and a tent peg code: assembly, the exhaustive
//! pure-distance certificate, the degree-based sufficient condition, code
//! stabilizers and logical Z operators.

mod verify;

use serde::Serialize;

pub use verify::{
    error_count, verify_distance, DistanceCertificate, Verdict, VerifyOptions, DEFAULT_ERROR_BUDGET,
    DEFAULT_WEIGHT_CAP, HEAVY_ERROR_BUDGET,
};

use crate::f2core::{ColumnPermutation, F2Matrix, F2Vector, PauliWord};
use crate::graphstate::{uniformity, Graph, GraphError, StabilizerGenerators, Uniformity};
use crate::tentpeg::LinearCode;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum CwsError {
    #[error("graph has {graph} vertices but the code has length {code}")]
    LengthMismatch { graph: usize, code: usize },
    #[error("{needed} candidate errors exceed the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("weight {m} is above the cap {cap}")]
    WeightCapExceeded { m: usize, cap: usize },
    #[error("graph is not regular")]
    NotRegular,
    #[error("logical index {index} out of range for k = {k}")]
    IndexOutOfRange { index: usize, k: usize },
    #[error("{0} parity rows exceed the packed syndrome width")]
    SyndromeTooWide(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("thread pool: {0}")]
    ThreadPool(String),
}

/// Strongest distance claim established so far.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DistanceClaim {
    /// No nonzero element of weight `<= m` in `V_S + C'`: pure distance `>= m + 1`.
    Exhaustive { m: usize },
    /// Regular of degree `m`, `m`-uniform and classical distance `> m(m+1)`.
    Sufficient { m: usize },
}

impl DistanceClaim {
    pub fn distance_lower_bound(&self) -> usize {
        match *self {
            DistanceClaim::Exhaustive { m } | DistanceClaim::Sufficient { m } => m + 1,
        }
    }
}

/// `span{Z_c |G⟩ : c ∈ C}` for a graph `G` and classical code `C`.
///
/// The tent peg generator is kept in reduced echelon form `A`; row `i` has a
/// pivot column `pivot(i)` where no other row is nonzero, which is the
/// systematic form `[I | B]` up to the recorded column permutation.
#[derive(Clone, Debug)]
pub struct CwsCode {
    graph: Graph,
    tentpeg: LinearCode,
    stabilizers: StabilizerGenerators,
    permutation: ColumnPermutation,
    claim: Option<DistanceClaim>,
}

impl CwsCode {
    pub fn assemble(graph: Graph, tentpeg: LinearCode) -> Result<Self, CwsError> {
        if graph.n() != tentpeg.n() {
            return Err(CwsError::LengthMismatch {
                graph: graph.n(),
                code: tentpeg.n(),
            });
        }
        let (_, permutation) = tentpeg
            .generator()
            .systematic_form()
            .expect("echelon generator has full row rank");
        let stabilizers = StabilizerGenerators::new(&graph);
        Ok(Self {
            graph,
            tentpeg,
            stabilizers,
            permutation,
            claim: None,
        })
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn k(&self) -> usize {
        self.tentpeg.k()
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn tentpeg(&self) -> &LinearCode {
        &self.tentpeg
    }

    pub fn stabilizer_generators(&self) -> &StabilizerGenerators {
        &self.stabilizers
    }

    /// Rows `a_i` of the generator `A`, in original qubit order.
    pub fn generator(&self) -> &F2Matrix {
        self.tentpeg.generator()
    }

    /// Columns moved to the front to reach `[I | B]`.
    pub fn permutation(&self) -> &ColumnPermutation {
        &self.permutation
    }

    /// `[I | B]` in permuted coordinates.
    pub fn systematic_generator(&self) -> F2Matrix {
        self.generator().select_columns(&self.permutation)
    }

    /// Qubit where row `i` of `A` carries its identity entry.
    pub fn pivot(&self, i: usize) -> usize {
        self.permutation.new_to_old[i]
    }

    pub fn pivots(&self) -> Vec<usize> {
        (0..self.k()).map(|i| self.pivot(i)).collect()
    }

    pub fn claim(&self) -> Option<DistanceClaim> {
        self.claim
    }

    /// Keeps the claim with the larger distance bound.
    pub fn record_claim(&mut self, claim: DistanceClaim) {
        if self
            .claim
            .is_none_or(|c| claim.distance_lower_bound() > c.distance_lower_bound())
        {
            self.claim = Some(claim);
        }
    }

    /// `E.z ⊕ z(∏_{i∈supp E.x} S_i)`: a codeword exactly when `E ∈ V_S + C'`.
    pub fn membership_residual(&self, e: &PauliWord) -> F2Vector {
        let s = self.stabilizers.product_with_x(e.x_part());
        e.z_part().xor(s.z_part())
    }

    pub fn in_w(&self, e: &PauliWord) -> bool {
        self.tentpeg.contains(&self.membership_residual(e))
    }

    /// Runs [`verify_distance`] and records the claim on a pass.
    pub fn certify(&mut self, m: usize, opts: &VerifyOptions) -> Result<DistanceCertificate, CwsError> {
        let cert = verify_distance(self, m, opts)?;
        if cert.passed() {
            self.record_claim(DistanceClaim::Exhaustive { m });
        }
        Ok(cert)
    }
}

pub fn assemble(graph: Graph, tentpeg: LinearCode) -> Result<CwsCode, CwsError> {
    CwsCode::assemble(graph, tentpeg)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SufficientCheck {
    pub degree: usize,
    pub d_classical: usize,
    /// `None` when the distance inequality already fails and uniformity was skipped.
    pub uniformity: Option<Uniformity>,
    pub holds: bool,
}

/// Degree-based sufficient condition: `G` is `m`-regular and `m`-uniform and
/// the classical distance exceeds `m(m+1)`. Then the code is pure with distance
/// `m + 1` without enumeration. `d_classical` must be a certified lower bound.
pub fn check_theorem2(
    code: &CwsCode,
    d_classical: usize,
    uniformity_budget: u128,
) -> Result<SufficientCheck, CwsError> {
    let m = code.graph().regular_degree().ok_or(CwsError::NotRegular)?;
    if d_classical <= m * (m + 1) {
        return Ok(SufficientCheck {
            degree: m,
            d_classical,
            uniformity: None,
            holds: false,
        });
    }
    let u = uniformity(code.graph(), m + 1, uniformity_budget)?.uniformity;
    let uniform_enough = match u {
        Uniformity::Exact(x) => x >= m,
        Uniformity::AtLeast(x) => x >= m,
    };
    Ok(SufficientCheck {
        degree: m,
        d_classical,
        uniformity: Some(u),
        holds: uniform_enough,
    })
}

/// Generators of the CWS stabilizer group: `∏_{i∈T} S_i` for `T` ranging over a
/// basis of `{T : |T ∩ supp a_j| even for all j}`, the nullspace of `A`.
pub fn code_stabilizers(code: &CwsCode) -> Vec<PauliWord> {
    code.generator()
        .nullspace()
        .rows()
        .iter()
        .map(|t| code.stabilizer_generators().product_with_x(t))
        .collect()
}

/// Logical Z for logical qubit `i` (0-based): `S_{pivot(i)}`, which
/// anticommutes with `Z_{a_i}` and commutes with every other `Z_{a_j}`.
pub fn logical_z(code: &CwsCode, i: usize) -> Result<PauliWord, CwsError> {
    if i >= code.k() {
        return Err(CwsError::IndexOutOfRange { index: i, k: code.k() });
    }
    Ok(code.stabilizer_generators().get(code.pivot(i)).clone())
}
