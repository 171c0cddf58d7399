use std::fmt;
use std::ops::Index;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequenceError {
    #[error("a degree sequence needs at least one vertex")]
    Empty,
}

/// Labelled degree sequence: entry `v` is the degree prescribed for vertex `v`.
///
/// Sequences are never assumed to be sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DegreeSequence(Vec<u64>);

impl DegreeSequence {
    pub fn new(degrees: Vec<u64>) -> Result<Self, SequenceError> {
        if degrees.is_empty() {
            return Err(SequenceError::Empty);
        }
        Ok(DegreeSequence(degrees))
    }

    /// Used for degree vectors computed from a hypergraph, which may have no vertices.
    pub(crate) fn from_counts(degrees: Vec<u64>) -> Self {
        DegreeSequence(degrees)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<u64> {
        self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().copied()
    }

    /// Degree sum, widened so that long sequences of large degrees cannot overflow.
    pub fn sum(&self) -> u128 {
        self.0.iter().map(|&d| d as u128).sum()
    }

    pub fn min(&self) -> u64 {
        self.0.iter().copied().min().unwrap_or(0)
    }

    pub fn max(&self) -> u64 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// Vertex ids ordered by degree (nonincreasing), ties by lower id first.
    pub fn sorted_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.0.len()).collect();
        order.sort_by(|&a, &b| self.0[b].cmp(&self.0[a]).then(a.cmp(&b)));
        order
    }
}

impl Index<usize> for DegreeSequence {
    type Output = u64;

    fn index(&self, v: usize) -> &u64 {
        &self.0[v]
    }
}

impl fmt::Display for DegreeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, ")")
    }
}

/// Whether the degree sum is a multiple of `t`, the basic necessary condition
/// for a `t`-uniform realization.
pub fn divisible_by_t(degrees: &DegreeSequence, t: usize) -> bool {
    degrees.sum().is_multiple_of(t as u128)
}
