//! Simple `t`-uniform hypergraphs over labelled vertices `0..n`.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::combinatorics::colex_cmp;
use crate::sequence::DegreeSequence;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypergraphError {
    #[error("uniformity must be at least 2, got {0}")]
    BadUniformity(usize),
    #[error("edge {edge:?} has {got} vertices, expected {expected}")]
    WrongArity {
        edge: Vec<usize>,
        got: usize,
        expected: usize,
    },
    #[error("edge {edge:?} repeats a vertex")]
    RepeatedVertex { edge: Vec<usize> },
    #[error("edge {edge:?} uses a vertex outside 0..{n}")]
    VertexOutOfRange { edge: Vec<usize>, n: usize },
    #[error("edge {0} is already present")]
    DuplicateEdge(Edge),
    #[error("edge {0} is not present")]
    MissingEdge(Edge),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("hypergraph has {hypergraph} vertices but the degree sequence has {sequence}")]
pub struct LengthMismatch {
    pub hypergraph: usize,
    pub sequence: usize,
}

/// A hyperedge stored as a strictly increasing tuple of vertex ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge(Vec<usize>);

impl Edge {
    /// Sorts the vertices; fails on repeated vertices.
    pub fn new(mut vertices: Vec<usize>) -> Result<Self, HypergraphError> {
        vertices.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(HypergraphError::RepeatedVertex { edge: vertices });
        }
        Ok(Edge(vertices))
    }

    /// Caller guarantees `vertices` is strictly increasing.
    pub(crate) fn from_sorted(vertices: Vec<usize>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Edge(vertices)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// `(self \ {out}) ∪ {inn}`. Caller guarantees `out ∈ self`, `inn ∉ self`.
    pub fn replace(&self, out: usize, inn: usize) -> Edge {
        let mut vs: Vec<usize> = self.0.iter().copied().filter(|&v| v != out).collect();
        let pos = vs.partition_point(|&v| v < inn);
        vs.insert(pos, inn);
        Edge(vs)
    }

    /// Applies a vertex relabelling.
    pub fn map(&self, f: impl Fn(usize) -> usize) -> Edge {
        let mut vs: Vec<usize> = self.0.iter().map(|&v| f(v)).collect();
        vs.sort_unstable();
        Edge(vs)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// A simple `t`-uniform hypergraph. Every edge has exactly `t` distinct
/// vertices below `n` and no edge appears twice; the constructors enforce this,
/// so every value of this type is valid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniformHypergraph {
    t: usize,
    n: usize,
    edges: BTreeSet<Edge>,
}

impl UniformHypergraph {
    pub fn empty(t: usize, n: usize) -> Result<Self, HypergraphError> {
        if t < 2 {
            return Err(HypergraphError::BadUniformity(t));
        }
        Ok(UniformHypergraph {
            t,
            n,
            edges: BTreeSet::new(),
        })
    }

    pub fn from_edges<I, E>(t: usize, n: usize, edges: I) -> Result<Self, HypergraphError>
    where
        I: IntoIterator<Item = E>,
        E: Into<Vec<usize>>,
    {
        let mut h = Self::empty(t, n)?;
        for e in edges {
            h.insert(Edge::new(e.into())?)?;
        }
        Ok(h)
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = &Edge> + '_ {
        self.edges.iter()
    }

    /// Edges in colexicographic order, the order used by the text format.
    pub fn edges_colex(&self) -> Vec<&Edge> {
        let mut out: Vec<&Edge> = self.edges.iter().collect();
        out.sort_by(|a, b| colex_cmp(a.vertices(), b.vertices()));
        out
    }

    pub fn contains(&self, e: &Edge) -> bool {
        self.edges.contains(e)
    }

    fn check(&self, e: &Edge) -> Result<(), HypergraphError> {
        if e.len() != self.t {
            return Err(HypergraphError::WrongArity {
                edge: e.0.clone(),
                got: e.len(),
                expected: self.t,
            });
        }
        if e.0.last().is_some_and(|&v| v >= self.n) {
            return Err(HypergraphError::VertexOutOfRange {
                edge: e.0.clone(),
                n: self.n,
            });
        }
        Ok(())
    }

    pub fn insert(&mut self, e: Edge) -> Result<(), HypergraphError> {
        self.check(&e)?;
        if self.edges.contains(&e) {
            return Err(HypergraphError::DuplicateEdge(e));
        }
        self.edges.insert(e);
        Ok(())
    }

    pub fn remove(&mut self, e: &Edge) -> Result<(), HypergraphError> {
        if !self.edges.remove(e) {
            return Err(HypergraphError::MissingEdge(e.clone()));
        }
        Ok(())
    }

    /// Widens the vertex range to `n` (new vertices are isolated).
    pub fn with_vertex_count(mut self, n: usize) -> Result<Self, HypergraphError> {
        if let Some(e) = self
            .edges
            .iter()
            .find(|e| e.0.last().is_some_and(|&v| v >= n))
        {
            return Err(HypergraphError::VertexOutOfRange {
                edge: e.0.clone(),
                n,
            });
        }
        self.n = n;
        Ok(self)
    }

    /// Adds every edge of `other`; both must share `t` and `n`.
    pub fn union_with(&mut self, other: &UniformHypergraph) -> Result<(), HypergraphError> {
        if other.t != self.t {
            return Err(HypergraphError::BadUniformity(other.t));
        }
        for e in &other.edges {
            self.insert(e.clone())?;
        }
        Ok(())
    }

    /// Relabels vertex `v` to `perm[v]`; `perm` must be injective into `0..n`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self, HypergraphError> {
        let mut out = Self::empty(self.t, self.n)?;
        for e in &self.edges {
            out.insert(e.map(|v| perm[v]))?;
        }
        Ok(out)
    }

    pub fn degree_vector(&self) -> Vec<u64> {
        let mut deg = vec![0u64; self.n];
        for e in &self.edges {
            for &v in &e.0 {
                deg[v] += 1;
            }
        }
        deg
    }
}

/// Degree of every vertex of `h`.
pub fn degrees_of(h: &UniformHypergraph) -> DegreeSequence {
    DegreeSequence::from_counts(h.degree_vector())
}

/// Whether `h` realizes `d` exactly. A length mismatch is an error, not `false`.
pub fn verify_realization(
    h: &UniformHypergraph,
    d: &DegreeSequence,
) -> Result<bool, LengthMismatch> {
    if h.n() != d.len() {
        return Err(LengthMismatch {
            hypergraph: h.n(),
            sequence: d.len(),
        });
    }
    Ok(h.degree_vector() == d.as_slice())
}
