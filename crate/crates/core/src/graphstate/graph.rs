use serde::{Deserialize, Serialize};

use super::GraphError;
use crate::f2core::F2Vector;

/// Undirected simple graph stored as per-vertex neighbour bitsets.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Graph {
    adj: Vec<F2Vector>,
    lattice: Option<Vec<usize>>,
}

/// File form of a graph: a periodic lattice or an explicit edge list, 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GraphSpec {
    Lattice { lattice: Vec<usize> },
    Edges { n: usize, edges: Vec<[usize; 2]> },
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Self {
            adj: vec![F2Vector::zeros(n); n],
            lattice: None,
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Self::empty(n);
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(GraphError::VertexOutOfRange { vertex: a.max(b), n });
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            g.adj[a].set(b, true);
            g.adj[b].set(a, true);
        }
        Ok(g)
    }

    /// Periodic lattice with Lee-distance-1 adjacency. Vertex `(x_0, ..., x_{D-1})`
    /// has index `((x_0 * n_1 + x_1) * n_2 + ...)`, last coordinate fastest.
    pub fn lattice(dims: &[usize]) -> Result<Self, GraphError> {
        if dims.is_empty() {
            return Err(GraphError::NoDimensions);
        }
        if let Some(&side) = dims.iter().find(|&&d| d < 3) {
            return Err(GraphError::DegenerateSide(side));
        }
        let n: usize = dims.iter().product();
        let mut g = Self::empty(n);
        let mut stride = 1;
        for &side in dims.iter().rev() {
            for v in 0..n {
                let coord = (v / stride) % side;
                let up = v - coord * stride + ((coord + 1) % side) * stride;
                g.adj[v].set(up, true);
                g.adj[up].set(v, true);
            }
            stride *= side;
        }
        g.lattice = Some(dims.to_vec());
        Ok(g)
    }

    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        Self::lattice(&[n])
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &edges).expect("path edges are valid")
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        Self::from_edges(n, &edges).expect("complete-graph edges are valid")
    }

    pub fn from_spec(spec: &GraphSpec) -> Result<Self, GraphError> {
        match spec {
            GraphSpec::Lattice { lattice } => Self::lattice(lattice),
            GraphSpec::Edges { n, edges } => {
                let e: Vec<_> = edges.iter().map(|&[a, b]| (a, b)).collect();
                Self::from_edges(*n, &e)
            }
        }
    }

    pub fn to_spec(&self) -> GraphSpec {
        match &self.lattice {
            Some(dims) => GraphSpec::Lattice { lattice: dims.clone() },
            None => GraphSpec::Edges {
                n: self.n(),
                edges: self.edges().into_iter().map(|(a, b)| [a, b]).collect(),
            },
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    /// Side lengths when built by [`Graph::lattice`].
    pub fn lattice_dims(&self) -> Option<&[usize]> {
        self.lattice.as_deref()
    }

    pub fn neighbors(&self, i: usize) -> &F2Vector {
        &self.adj[i]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].get(b)
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].weight()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n()).map(|i| self.degree(i)).min().unwrap_or(0)
    }

    /// Common degree when every vertex has the same one.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.degree(0);
        (self.n() > 0 && (0..self.n()).all(|i| self.degree(i) == d)).then_some(d)
    }

    /// Edges `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n())
            .flat_map(|a| self.adj[a].iter_ones().filter(move |&b| b > a).map(move |b| (a, b)))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(F2Vector::weight).sum::<usize>() / 2
    }
}
