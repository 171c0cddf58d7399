//! Least balanced degree sequences.
//!
//! Among all sequences of length `n` with entries in `[delta, Delta]` and sum
//! `sigma`, the least balanced one uses only `delta`, `Delta` and at most one
//! value strictly between them. Any sequence can be pushed there by moving
//! single units from a smallest to a largest "middle" entry, and a realization
//! of the end point can be pulled back along those moves with hinge flips.

use thiserror::Error;

use crate::flips::FlipEngine;
use crate::hypergraph::{degrees_of, UniformHypergraph};
use crate::sequence::DegreeSequence;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LbdsError {
    #[error("length must be positive")]
    EmptyLength,
    #[error("need delta <= Delta, got {delta} > {max_degree}")]
    BoundsOrder { delta: u64, max_degree: u64 },
    #[error("degree sum {sigma} outside [{low}, {high}]")]
    SumOutOfRange { sigma: u64, low: u64, high: u64 },
    #[error("entry {degree} of vertex {vertex} lies outside [{low}, {high}]")]
    EntryOutOfRange {
        vertex: usize,
        degree: u64,
        low: u64,
        high: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PullbackError {
    #[error("hypergraph has {got} vertices, the series has {expected}")]
    Length { got: usize, expected: usize },
    #[error("hypergraph does not realize the end point of the perturbation series")]
    WrongStart,
    #[error("no admissible edge to move a degree from vertex {from} to vertex {to}")]
    NoAdmissibleEdge { from: usize, to: usize },
}

/// Parameters `(n, delta, Delta, sigma)` of a least balanced degree sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LbdsSpec {
    n: usize,
    delta: u64,
    max_degree: u64,
    sigma: u64,
}

/// Entry counts of the sorted least balanced sequence: `high_count` copies of
/// `Delta`, then the optional middle entry, then `delta` for the rest.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LbdsShape {
    pub high_count: usize,
    pub middle: Option<u64>,
    pub low_count: usize,
}

impl LbdsSpec {
    pub fn new(n: usize, delta: u64, max_degree: u64, sigma: u64) -> Result<Self, LbdsError> {
        if n == 0 {
            return Err(LbdsError::EmptyLength);
        }
        if delta > max_degree {
            return Err(LbdsError::BoundsOrder { delta, max_degree });
        }
        let (low, high) = (delta * n as u64, max_degree * n as u64);
        if sigma < low || sigma > high {
            return Err(LbdsError::SumOutOfRange { sigma, low, high });
        }
        Ok(LbdsSpec {
            n,
            delta,
            max_degree,
            sigma,
        })
    }

    /// Spec with the minimum, maximum and sum of `d`.
    pub fn of_sequence(d: &DegreeSequence) -> Self {
        LbdsSpec::new(d.len(), d.min(), d.max(), d.sum() as u64).expect("bounds come from d")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn delta(&self) -> u64 {
        self.delta
    }

    pub fn max_degree(&self) -> u64 {
        self.max_degree
    }

    pub fn sigma(&self) -> u64 {
        self.sigma
    }

    pub fn shape(&self) -> LbdsShape {
        let excess = self.sigma - self.n as u64 * self.delta;
        let step = self.max_degree - self.delta;
        if step == 0 {
            return LbdsShape {
                high_count: 0,
                middle: None,
                low_count: self.n,
            };
        }
        let high_count = (excess / step) as usize;
        let rest = excess % step;
        let middle = (rest > 0).then_some(self.delta + rest);
        LbdsShape {
            high_count,
            middle,
            low_count: self.n - high_count - middle.is_some() as usize,
        }
    }
}

/// The least balanced sequence for `spec`, in nonincreasing order.
pub fn lbds_construct(spec: &LbdsSpec) -> DegreeSequence {
    let shape = spec.shape();
    let mut out = Vec::with_capacity(spec.n);
    out.extend(std::iter::repeat_n(spec.max_degree, shape.high_count));
    out.extend(shape.middle);
    out.extend(std::iter::repeat_n(spec.delta, shape.low_count));
    DegreeSequence::new(out).expect("n > 0")
}

/// One unit moved from vertex `i` (decremented) to vertex `j` (incremented).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PerturbationStep {
    pub i: usize,
    pub j: usize,
}

/// The walk from a sequence to its least balanced counterpart.
///
/// `lbds` keeps the labels of the input; `order[p]` is the vertex holding the
/// `p`-th entry of the sorted least balanced sequence, so
/// `lbds_construct(spec)[p] == lbds[order[p]]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerturbationSeries {
    pub start: DegreeSequence,
    pub lbds: DegreeSequence,
    pub steps: Vec<PerturbationStep>,
    pub order: Vec<usize>,
    pub low: u64,
    pub high: u64,
}

impl PerturbationSeries {
    pub fn spec(&self) -> LbdsSpec {
        LbdsSpec::new(
            self.start.len(),
            self.low,
            self.high,
            self.start.sum() as u64,
        )
        .expect("entries lie within the bounds")
    }
}

/// Series towards `LBDS(n, min d, max d, sum d)`.
pub fn perturbation_series(d: &DegreeSequence) -> PerturbationSeries {
    perturbation_series_within(d, d.min(), d.max()).expect("bounds come from d")
}

/// Series towards `LBDS(n, low, high, sum d)`. Each step lowers the smallest
/// entry strictly inside `(low, high)` and raises the largest one; ties put the
/// lower vertex id first in the nonincreasing order. Every intermediate entry
/// stays in `[low, high]`.
pub fn perturbation_series_within(
    d: &DegreeSequence,
    low: u64,
    high: u64,
) -> Result<PerturbationSeries, LbdsError> {
    if low > high {
        return Err(LbdsError::BoundsOrder {
            delta: low,
            max_degree: high,
        });
    }
    if let Some((vertex, degree)) = d.iter().enumerate().find(|&(_, x)| x < low || x > high) {
        return Err(LbdsError::EntryOutOfRange {
            vertex,
            degree,
            low,
            high,
        });
    }
    let order = d.sorted_order();
    let mut cur = d.as_slice().to_vec();
    let mut steps = Vec::new();
    let inside = |x: u64| low < x && x < high;
    // Entries strictly inside (low, high) occupy a contiguous block of `order`.
    let (mut top, mut bottom) = match (
        order.iter().position(|&v| inside(cur[v])),
        order.iter().rposition(|&v| inside(cur[v])),
    ) {
        (Some(a), Some(b)) => (a, b),
        _ => (0, 0),
    };
    while top < bottom {
        let (j, i) = (order[top], order[bottom]);
        if cur[j] == high {
            top += 1;
            continue;
        }
        if cur[i] == low {
            bottom -= 1;
            continue;
        }
        cur[i] -= 1;
        cur[j] += 1;
        steps.push(PerturbationStep { i, j });
    }
    Ok(PerturbationSeries {
        start: d.clone(),
        lbds: DegreeSequence::new(cur).expect("same length as d"),
        steps,
        order,
        low,
        high,
    })
}

/// Turns a realization of `series.lbds` into a realization of `series.start`
/// by undoing the steps in reverse, one hinge flip per step.
pub fn pullback_realization(
    h: &UniformHypergraph,
    series: &PerturbationSeries,
) -> Result<UniformHypergraph, PullbackError> {
    if h.n() != series.lbds.len() {
        return Err(PullbackError::Length {
            got: h.n(),
            expected: series.lbds.len(),
        });
    }
    if degrees_of(h) != series.lbds {
        return Err(PullbackError::WrongStart);
    }
    let mut engine = FlipEngine::new(h.clone(), None);
    for step in series.steps.iter().rev() {
        if engine.transfer(step.j, step.i).is_none() {
            return Err(PullbackError::NoAdmissibleEdge {
                from: step.j,
                to: step.i,
            });
        }
    }
    Ok(engine.into_graph())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::verify_realization;

    fn seq(v: &[u64]) -> DegreeSequence {
        DegreeSequence::new(v.to_vec()).unwrap()
    }

    fn spec(n: usize, lo: u64, hi: u64, s: u64) -> LbdsSpec {
        LbdsSpec::new(n, lo, hi, s).unwrap()
    }

    #[test]
    fn construct_examples() {
        assert_eq!(lbds_construct(&spec(5, 1, 3, 9)), seq(&[3, 3, 1, 1, 1]));
        assert_eq!(lbds_construct(&spec(4, 2, 2, 8)), seq(&[2, 2, 2, 2]));
        assert_eq!(lbds_construct(&spec(5, 1, 3, 10)), seq(&[3, 3, 2, 1, 1]));
    }

    #[test]
    fn spec_rejects_bad_parameters() {
        assert_eq!(LbdsSpec::new(0, 0, 0, 0), Err(LbdsError::EmptyLength));
        assert!(matches!(
            LbdsSpec::new(3, 4, 2, 9),
            Err(LbdsError::BoundsOrder { .. })
        ));
        assert!(matches!(
            LbdsSpec::new(3, 1, 2, 7),
            Err(LbdsError::SumOutOfRange { .. })
        ));
    }

    #[test]
    fn series_examples() {
        let s = perturbation_series(&seq(&[3, 2, 2, 1]));
        assert_eq!(s.lbds, seq(&[3, 3, 1, 1]));
        assert_eq!(s.steps, vec![PerturbationStep { i: 2, j: 1 }]);

        assert!(perturbation_series(&seq(&[3, 3, 1, 1])).steps.is_empty());
        assert!(perturbation_series(&seq(&[2, 2, 2])).steps.is_empty());
    }

    #[test]
    fn series_respects_labels() {
        let d = seq(&[1, 2, 4, 2, 3, 3]);
        let s = perturbation_series(&d);
        let sorted = lbds_construct(&s.spec());
        for (p, &v) in s.order.iter().enumerate() {
            assert_eq!(sorted[p], s.lbds[v]);
        }
    }

    #[test]
    fn pullback_example() {
        let h = UniformHypergraph::from_edges(
            3,
            6,
            [vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 4], vec![1, 2, 5]],
        )
        .unwrap();
        let series = PerturbationSeries {
            start: seq(&[3, 3, 2, 2, 1, 1]),
            lbds: seq(&[3, 3, 3, 1, 1, 1]),
            steps: vec![PerturbationStep { i: 3, j: 2 }],
            order: (0..6).collect(),
            low: 1,
            high: 3,
        };
        let out = pullback_realization(&h, &series).unwrap();
        let expected = UniformHypergraph::from_edges(
            3,
            6,
            [vec![0, 1, 2], vec![0, 1, 3], vec![0, 3, 4], vec![1, 2, 5]],
        )
        .unwrap();
        assert_eq!(out, expected);
        assert_eq!(verify_realization(&out, &series.start), Ok(true));

        let trivial = PerturbationSeries {
            start: seq(&[3, 3, 3, 1, 1, 1]),
            steps: vec![],
            ..series.clone()
        };
        assert_eq!(pullback_realization(&h, &trivial), Ok(h.clone()));

        let wrong = PerturbationSeries {
            lbds: seq(&[3, 3, 2, 2, 1, 1]),
            ..series
        };
        assert_eq!(
            pullback_realization(&h, &wrong),
            Err(PullbackError::WrongStart)
        );
    }
}
