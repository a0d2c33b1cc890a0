//! Graphs, graph-state stabilizer generators and exact m-uniformity.

mod graph;

use rayon::prelude::*;
use serde::Serialize;

use crate::f2core::subsets::binomial;
use crate::f2core::{F2Vector, PauliWord};

pub use graph::{Graph, GraphSpec};

pub const DEFAULT_SUBSET_BUDGET: u128 = 1_000_000_000;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("lattice side {0} is below 3")]
    DegenerateSide(usize),
    #[error("lattice needs at least one dimension")]
    NoDimensions,
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("cap {cap} needs {needed} subsets, budget is {budget}")]
    CapTooLargeForBudget { cap: usize, needed: u128, budget: u128 },
    #[error("cap must be at least 1")]
    ZeroCap,
}

/// The generators `S_i = X_i Z_{N(i)}`.
#[derive(Clone, Debug)]
pub struct StabilizerGenerators {
    gens: Vec<PauliWord>,
}

impl StabilizerGenerators {
    pub fn new(g: &Graph) -> Self {
        let n = g.n();
        let gens = (0..n)
            .map(|i| PauliWord::new(F2Vector::unit(n, i), g.neighbors(i).clone()).expect("lengths agree"))
            .collect();
        Self { gens }
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn get(&self, i: usize) -> &PauliWord {
        &self.gens[i]
    }

    pub fn as_slice(&self) -> &[PauliWord] {
        &self.gens
    }

    /// `∏_{i∈T} S_i` with phase dropped.
    pub fn product(&self, t: &[usize]) -> PauliWord {
        let mut acc = PauliWord::identity(self.gens.len());
        for &i in t {
            acc.mul_assign(&self.gens[i]);
        }
        acc
    }

    /// The unique stabilizer whose X part is `x`.
    pub fn product_with_x(&self, x: &F2Vector) -> PauliWord {
        self.product(&x.support())
    }
}

pub fn stabilizer_generators(g: &Graph) -> StabilizerGenerators {
    StabilizerGenerators::new(g)
}

pub fn stabilizer_product(sg: &StabilizerGenerators, t: &[usize]) -> PauliWord {
    sg.product(t)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Uniformity {
    Exact(usize),
    AtLeast(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UniformityReport {
    pub uniformity: Uniformity,
    /// Lightest nonidentity stabilizer found among `|T| <= cap`, colex-first on ties.
    pub witness: Option<Vec<usize>>,
    pub min_weight: Option<usize>,
    pub subsets_scanned: u128,
}

/// Exact uniformity up to `cap`: the minimum weight over nonempty `T` with
/// `|T| <= cap` of `∏_{i∈T} S_i`. The weight of such a product is at least `|T|`,
/// so products of weight `<= cap` all come from `|T| <= cap`.
pub fn uniformity(g: &Graph, cap: usize, budget: u128) -> Result<UniformityReport, GraphError> {
    if cap == 0 {
        return Err(GraphError::ZeroCap);
    }
    let n = g.n();
    let cap = cap.min(n.max(1));
    let needed: u128 = (1..=cap).map(|s| binomial(n, s)).fold(0u128, u128::saturating_add);
    if needed > budget {
        return Err(GraphError::CapTooLargeForBudget { cap, needed, budget });
    }
    let words = crate::f2core::F2Vector::zeros(n).words().len();
    let adj: Vec<&[u64]> = (0..n).map(|i| g.neighbors(i).words()).collect();

    let mut best: Option<(usize, Vec<usize>)> = None;
    let mut scanned = 0u128;
    for s in 1..=cap.min(n) {
        if best.as_ref().is_some_and(|(w, _)| s >= *w) {
            break;
        }
        scanned += binomial(n, s);
        let hit = (s - 1..n)
            .into_par_iter()
            .filter_map(|top| {
                let mut scan = TopScan {
                    adj: &adj,
                    words,
                    zs: vec![0u64; words * s],
                    xs: vec![0u64; words * s],
                    chosen: vec![0; s],
                    best: usize::MAX,
                    witness: None,
                };
                scan.run(top, s);
                scan.witness.map(|w| (scan.best, w))
            })
            .min_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.last().cmp(&b.1.last())));
        if let Some((w, t)) = hit {
            if best.as_ref().is_none_or(|(bw, _)| w < *bw) {
                best = Some((w, t));
            }
        }
    }
    let uniformity = match &best {
        Some((w, _)) if *w <= cap => Uniformity::Exact(w - 1),
        _ => Uniformity::AtLeast(cap),
    };
    Ok(UniformityReport {
        uniformity,
        min_weight: best.as_ref().map(|b| b.0),
        witness: best.map(|b| b.1),
        subsets_scanned: scanned,
    })
}

/// Colex scan of the `s`-subsets whose largest element is fixed, keeping the
/// X and Z parts of the partial product at every depth.
struct TopScan<'a> {
    adj: &'a [&'a [u64]],
    words: usize,
    zs: Vec<u64>,
    xs: Vec<u64>,
    chosen: Vec<usize>,
    best: usize,
    witness: Option<Vec<usize>>,
}

impl TopScan<'_> {
    fn run(&mut self, top: usize, s: usize) {
        let w = self.words;
        for k in 0..w {
            self.zs[(s - 1) * w + k] = self.adj[top][k];
            self.xs[(s - 1) * w + k] = 0;
        }
        self.xs[(s - 1) * w + top / 64] |= 1 << (top % 64);
        self.chosen[s - 1] = top;
        self.descend(s - 1);
    }

    // level `d` slots are filled; choose element for slot d-1 below chosen[d]
    fn descend(&mut self, d: usize) {
        let w = self.words;
        if d == 0 {
            let weight: u32 = (0..w).map(|k| (self.zs[k] | self.xs[k]).count_ones()).sum();
            let weight = weight as usize;
            if weight < self.best {
                self.best = weight;
                self.witness = Some(self.chosen.clone());
            }
            return;
        }
        for e in (d - 1)..self.chosen[d] {
            for k in 0..w {
                self.zs[(d - 1) * w + k] = self.zs[d * w + k] ^ self.adj[e][k];
                self.xs[(d - 1) * w + k] = self.xs[d * w + k];
            }
            self.xs[(d - 1) * w + e / 64] |= 1 << (e % 64);
            self.chosen[d - 1] = e;
            self.descend(d - 1);
        }
    }
}
