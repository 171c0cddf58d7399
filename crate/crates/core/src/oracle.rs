//! Exact answers for small instances.
//!
//! [`decide_exact`] backtracks over all `t`-subsets in colex order, deciding
//! inclusion before exclusion, so the first realization found is the same on
//! every run. [`all_realizable_sequences`] enumerates every edge set and is
//! the ground truth the search is validated against.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use thiserror::Error;

use crate::combinatorics::{binomial, colex_subsets_of_range};
use crate::hypergraph::{verify_realization, Edge, UniformHypergraph};
use crate::sequence::DegreeSequence;

pub const DEFAULT_MAX_NODES: u64 = 10_000_000;
/// Largest number of candidate edges [`all_realizable_sequences`] accepts.
pub const ENUMERATION_LIMIT: u128 = 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_nodes: u64,
    pub time_limit: Option<Duration>,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_nodes: DEFAULT_MAX_NODES,
            time_limit: None,
        }
    }
}

impl SearchBudget {
    pub fn nodes(max_nodes: u64) -> Self {
        SearchBudget {
            max_nodes: max_nodes.max(1),
            time_limit: None,
        }
    }

    /// Default budget, with the node cap taken from `HYPERDEG_BUDGET` when set.
    pub fn from_env() -> Self {
        std::env::var("HYPERDEG_BUDGET")
            .ok()
            .and_then(|s| s.trim().parse::<u64>().ok())
            .map(SearchBudget::nodes)
            .unwrap_or_default()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExactOutcome {
    Some(UniformHypergraph),
    None,
    BudgetExceeded,
}

impl ExactOutcome {
    pub fn label(&self) -> &'static str {
        match self {
            ExactOutcome::Some(_) => "yes",
            ExactOutcome::None => "no",
            ExactOutcome::BudgetExceeded => "indeterminate",
        }
    }

    pub fn is_some(&self) -> bool {
        matches!(self, ExactOutcome::Some(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("uniformity must be at least 2, got {0}")]
    Uniformity(usize),
    #[error("C({n}, {t}) = {edges} candidate edges exceeds the enumeration limit {limit}")]
    Capacity {
        n: usize,
        t: usize,
        edges: u128,
        limit: u128,
    },
}

struct Search<'a> {
    candidates: &'a [Vec<usize>],
    /// `through[i][v]`: candidates at index `>= i` containing `v`.
    through: Vec<Vec<u64>>,
    residual: Vec<u64>,
    remaining: u64,
    chosen: Vec<usize>,
    nodes: u64,
    budget: SearchBudget,
    started: Instant,
    exhausted: bool,
}

impl Search<'_> {
    fn out_of_budget(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget.max_nodes {
            self.exhausted = true;
        } else if let Some(limit) = self.budget.time_limit {
            if self.nodes.is_multiple_of(4096) && self.started.elapsed() > limit {
                self.exhausted = true;
            }
        }
        self.exhausted
    }

    fn feasible(&self, idx: usize) -> bool {
        let left = (self.candidates.len() - idx) as u64;
        if self.remaining > left {
            return false;
        }
        self.residual
            .iter()
            .zip(&self.through[idx])
            .all(|(&r, &avail)| r <= self.remaining && r <= avail)
    }

    fn run(&mut self, idx: usize) -> bool {
        if self.remaining == 0 {
            return true;
        }
        if self.out_of_budget() || !self.feasible(idx) {
            return false;
        }
        let edge = &self.candidates[idx];
        if edge.iter().all(|&v| self.residual[v] > 0) {
            for &v in edge {
                self.residual[v] -= 1;
            }
            self.remaining -= 1;
            self.chosen.push(idx);
            if self.run(idx + 1) {
                return true;
            }
            self.chosen.pop();
            self.remaining += 1;
            for &v in edge {
                self.residual[v] += 1;
            }
            if self.exhausted {
                return false;
            }
        }
        self.run(idx + 1)
    }
}

/// Decides whether `d` has a simple `t`-uniform realization.
///
/// Returns the realization whose edge set comes first when edges are chosen
/// greedily in colex order, `None` once the search space is exhausted, or
/// `BudgetExceeded` when the node or time cap is hit first.
pub fn decide_exact(
    d: &DegreeSequence,
    t: usize,
    budget: SearchBudget,
) -> Result<ExactOutcome, OracleError> {
    if t < 2 {
        return Err(OracleError::Uniformity(t));
    }
    let n = d.len();
    let sigma = d.sum();
    if !sigma.is_multiple_of(t as u128) {
        return Ok(ExactOutcome::None);
    }
    let per_vertex = binomial(n as u64 - 1, t as u64 - 1);
    if d.iter().any(|x| x as u128 > per_vertex) {
        return Ok(ExactOutcome::None);
    }
    let candidates = colex_subsets_of_range(n, t);
    let mut through = vec![vec![0u64; n]; candidates.len() + 1];
    for i in (0..candidates.len()).rev() {
        through[i] = through[i + 1].clone();
        for &v in &candidates[i] {
            through[i][v] += 1;
        }
    }
    let mut search = Search {
        candidates: &candidates,
        through,
        residual: d.as_slice().to_vec(),
        remaining: (sigma / t as u128) as u64,
        chosen: Vec::new(),
        nodes: 0,
        budget,
        started: Instant::now(),
        exhausted: false,
    };
    if search.run(0) {
        let edges = search.chosen.iter().map(|&i| candidates[i].clone());
        let h = UniformHypergraph::from_edges(t, n, edges).expect("distinct candidates");
        debug_assert_eq!(verify_realization(&h, d), Ok(true));
        return Ok(ExactOutcome::Some(h));
    }
    Ok(if search.exhausted {
        ExactOutcome::BudgetExceeded
    } else {
        ExactOutcome::None
    })
}

/// Every labelled degree sequence of a simple `t`-uniform hypergraph on `n`
/// vertices, found by walking all edge sets in Gray-code order.
pub fn all_realizable_sequences(n: usize, t: usize) -> Result<HashSet<Vec<u64>>, OracleError> {
    if t < 2 {
        return Err(OracleError::Uniformity(t));
    }
    let edges = binomial(n as u64, t as u64);
    if edges > ENUMERATION_LIMIT {
        return Err(OracleError::Capacity {
            n,
            t,
            edges,
            limit: ENUMERATION_LIMIT,
        });
    }
    let candidates = colex_subsets_of_range(n, t);
    let mut present = vec![false; candidates.len()];
    let mut deg = vec![0u64; n];
    let mut seen = HashSet::new();
    seen.insert(deg.clone());
    for step in 1u64..(1u64 << candidates.len()) {
        let flip = step.trailing_zeros() as usize;
        present[flip] = !present[flip];
        for &v in &candidates[flip] {
            if present[flip] {
                deg[v] += 1;
            } else {
                deg[v] -= 1;
            }
        }
        if !seen.contains(&deg) {
            seen.insert(deg.clone());
        }
    }
    Ok(seen)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Disagreement {
    pub degrees: Vec<u64>,
    pub exact: &'static str,
    pub enumerated: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossValidation {
    pub candidates: u64,
    pub realizable: u64,
    pub budget_exceeded: u64,
    /// Sorted by degree vector.
    pub disagreements: Vec<Disagreement>,
}

impl CrossValidation {
    pub fn clean(&self) -> bool {
        self.disagreements.is_empty() && self.budget_exceeded == 0
    }
}

/// Compares [`decide_exact`] with [`all_realizable_sequences`] on every
/// sequence in `[0, cap]^n`. A realization that fails verification counts as
/// a disagreement.
pub fn cross_validate(
    n: usize,
    t: usize,
    cap: u64,
    budget: SearchBudget,
) -> Result<CrossValidation, OracleError> {
    let truth = all_realizable_sequences(n, t)?;
    let total = (cap + 1).pow(n as u32);
    let results: Vec<(Vec<u64>, ExactOutcome, bool)> = (0..total)
        .into_par_iter()
        .map(|code| {
            let mut degrees = vec![0u64; n];
            let mut c = code;
            for slot in degrees.iter_mut() {
                *slot = c % (cap + 1);
                c /= cap + 1;
            }
            let d = DegreeSequence::new(degrees.clone()).expect("n > 0");
            let outcome = decide_exact(&d, t, budget)?;
            let verified = match &outcome {
                ExactOutcome::Some(h) => verify_realization(h, &d) == Ok(true),
                _ => true,
            };
            Ok((degrees, outcome, verified))
        })
        .collect::<Result<_, OracleError>>()?;
    let mut report = CrossValidation {
        candidates: total,
        realizable: 0,
        budget_exceeded: 0,
        disagreements: Vec::new(),
    };
    for (degrees, outcome, verified) in results {
        let enumerated = truth.contains(&degrees);
        report.realizable += enumerated as u64;
        let agrees = match outcome {
            ExactOutcome::BudgetExceeded => {
                report.budget_exceeded += 1;
                continue;
            }
            ExactOutcome::Some(_) => enumerated && verified,
            ExactOutcome::None => !enumerated,
        };
        if !agrees {
            report.disagreements.push(Disagreement {
                degrees,
                exact: outcome.label(),
                enumerated,
            });
        }
    }
    report
        .disagreements
        .sort_by(|a, b| a.degrees.cmp(&b.degrees));
    Ok(report)
}

/// Edges of a realization as sorted vertex lists, for compact comparisons.
pub fn edge_lists(h: &UniformHypergraph) -> Vec<Vec<usize>> {
    h.edges().map(|e: &Edge| e.vertices().to_vec()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(v: &[u64]) -> DegreeSequence {
        DegreeSequence::new(v.to_vec()).unwrap()
    }

    #[test]
    fn decide_examples() {
        let b = SearchBudget::default();
        match decide_exact(&seq(&[1, 1, 1]), 3, b).unwrap() {
            ExactOutcome::Some(h) => assert_eq!(edge_lists(&h), vec![vec![0, 1, 2]]),
            other => panic!("{other:?}"),
        }
        assert_eq!(
            decide_exact(&seq(&[2, 2, 2]), 3, b).unwrap(),
            ExactOutcome::None
        );
        match decide_exact(&seq(&[3; 7]), 3, b).unwrap() {
            ExactOutcome::Some(h) => {
                assert_eq!(h.edge_count(), 7);
                assert_eq!(verify_realization(&h, &seq(&[3; 7])), Ok(true));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn tiny_budget_is_reported() {
        let out = decide_exact(&seq(&[3; 7]), 3, SearchBudget::nodes(3)).unwrap();
        assert_eq!(out, ExactOutcome::BudgetExceeded);
    }

    #[test]
    fn enumeration_examples() {
        let s3 = all_realizable_sequences(3, 3).unwrap();
        assert_eq!(s3, HashSet::from([vec![0, 0, 0], vec![1, 1, 1]]));
        let s4 = all_realizable_sequences(4, 3).unwrap();
        assert_eq!(s4.len(), 16);
        assert!(s4.contains(&vec![3, 2, 2, 2]));
        assert!(s4.contains(&vec![1, 2, 1, 2]));
        assert!(matches!(
            all_realizable_sequences(7, 3),
            Err(OracleError::Capacity { edges: 35, .. })
        ));
    }

    #[test]
    fn small_cross_validations() {
        let b = SearchBudget::default();
        let r = cross_validate(3, 3, 1, b).unwrap();
        assert_eq!((r.candidates, r.realizable), (8, 2));
        assert!(r.clean());
        let r = cross_validate(4, 3, 3, b).unwrap();
        assert_eq!(r.candidates, 256);
        assert!(r.clean());
    }
}
