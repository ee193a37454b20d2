//! Simple undirected graphs, vertex weights, interchange formats and the
//! deterministic graph families used by the test corpus.

mod family;
mod io;

pub use family::Family;
pub use io::{encode_graph6, parse_dimacs, parse_edge_list, parse_graph6};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::SymMatrix;

/// A simple undirected graph on vertices `0..n`.
///
/// Edges are stored once as `(i, j)` with `i < j`, sorted; a dense adjacency
/// bitmap backs `has_edge`.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<bool>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            adj: vec![false; n * n],
        }
    }

    /// Builds a graph from an edge iterator. Duplicate edges (in either
    /// orientation) are collapsed; self-loops and out-of-range endpoints are
    /// rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n);
        for (i, j) in edges {
            if i >= n || j >= n {
                return Err(Error::invalid(format!(
                    "edge {{{i},{j}}} has an endpoint outside 0..{n}"
                )));
            }
            if i == j {
                return Err(Error::invalid(format!("self-loop at vertex {i}")));
            }
            g.adj[i * n + j] = true;
            g.adj[j * n + i] = true;
        }
        g.rebuild_edges();
        Ok(g)
    }

    fn rebuild_edges(&mut self) {
        let n = self.n;
        self.edges.clear();
        for i in 0..n {
            for j in i + 1..n {
                if self.adj[i * n + j] {
                    self.edges.push((i, j));
                }
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i < self.n && j < self.n && self.adj[i * self.n + j]
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        let row = &self.adj[i * self.n..(i + 1) * self.n];
        row.iter().enumerate().filter(|(_, &e)| e).map(|(j, _)| j)
    }

    pub fn degree(&self, i: usize) -> usize {
        self.neighbors(i).count()
    }

    /// Pairs `i < j` that are not edges.
    pub fn non_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.n * self.n.saturating_sub(1) / 2 - self.edges.len());
        for i in 0..self.n {
            for j in i + 1..self.n {
                if !self.has_edge(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn complement(&self) -> Graph {
        let n = self.n;
        let mut g = Graph::empty(n);
        for i in 0..n {
            for j in 0..n {
                g.adj[i * n + j] = i != j && !self.adj[i * n + j];
            }
        }
        g.rebuild_edges();
        g
    }

    /// 0/1 adjacency matrix with zero diagonal.
    pub fn adjacency_matrix(&self) -> SymMatrix {
        let mut a = SymMatrix::zeros(self.n);
        for &(i, j) in &self.edges {
            a.set(i, j, 1.0);
        }
        a
    }

    /// Adjacency rows as bitmasks; only available for `n <= 64`.
    pub fn neighbor_masks(&self) -> Option<Vec<u64>> {
        if self.n > 64 {
            return None;
        }
        Some(
            (0..self.n)
                .map(|i| self.neighbors(i).fold(0u64, |m, j| m | (1 << j)))
                .collect(),
        )
    }

    /// Induced subgraph on `vertices` (relabelled in the given order).
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let k = vertices.len();
        let mut edges = Vec::new();
        for a in 0..k {
            for b in a + 1..k {
                if self.has_edge(vertices[a], vertices[b]) {
                    edges.push((a, b));
                }
            }
        }
        Graph::from_edges(k, edges).expect("induced edges are valid")
    }

    /// Whether `set` (a list of vertices) contains no edge.
    pub fn is_coclique(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(a, &u)| set[a + 1..].iter().all(|&v| !self.has_edge(u, v)))
    }
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&encode_graph6(self))
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_graph6(&s).map_err(serde::de::Error::custom)
    }
}

/// Nonnegative vertex weights.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightVector(Vec<f64>);

/// Entries below this are treated as exactly zero.
pub const WEIGHT_ZERO: f64 = 1e-14;

impl WeightVector {
    pub fn new(w: Vec<f64>) -> Result<Self> {
        if let Some((i, x)) = w.iter().enumerate().find(|(_, x)| !x.is_finite() || **x < 0.0) {
            return Err(Error::invalid(format!("weight {i} is {x}, must be finite and >= 0")));
        }
        Ok(WeightVector(
            w.into_iter()
                .map(|x| if x < WEIGHT_ZERO { 0.0 } else { x })
                .collect(),
        ))
    }

    pub fn ones(n: usize) -> Self {
        WeightVector(vec![1.0; n])
    }

    /// Builds `w` from `s` with `w = s ∘ s`; negative entries of `s` are
    /// mirrored.
    pub fn from_sqrt(s: &[f64]) -> Self {
        WeightVector::new(s.iter().map(|x| x * x).collect()).expect("squares are nonnegative")
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0.0)
    }

    pub fn sqrt(&self) -> Vec<f64> {
        self.0.iter().map(|x| x.sqrt()).collect()
    }

    pub fn scaled(&self, c: f64) -> Self {
        WeightVector::new(self.0.iter().map(|x| x * c).collect()).expect("c must be >= 0")
    }

    pub(crate) fn check_len(&self, n: usize) -> Result<()> {
        if self.0.len() != n {
            return Err(Error::invalid(format!(
                "weight vector has length {}, graph has {n} vertices",
                self.0.len()
            )));
        }
        Ok(())
    }
}
