//! Hinge flips and the constructions built from them.
//!
//! A hinge flip replaces an edge `e` by `(e \ {out}) ∪ {in}`: the degree of
//! `out` drops by one, the degree of `in` rises by one, nothing else moves.
//! Repeating flips from the most loaded to the least loaded vertex of a subset
//! `U` makes `U` almost regular without touching degrees outside `U`.

use std::collections::{BTreeSet, HashSet};

use thiserror::Error;

use crate::combinatorics::{binomial, ColexSubsets};
use crate::hypergraph::{Edge, HypergraphError, UniformHypergraph};
use crate::sequence::DegreeSequence;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FlipError {
    #[error("edge {0} is not in the hypergraph")]
    EdgeAbsent(Edge),
    #[error("vertex {vertex} is not in edge {edge}")]
    OutNotInEdge { edge: Edge, vertex: usize },
    #[error("vertex {vertex} is already in edge {edge}")]
    InAlreadyInEdge { edge: Edge, vertex: usize },
    #[error("vertex {vertex} is outside 0..{n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("replacement edge {0} is already present")]
    ReplacementPresent(Edge),
    #[error("replacement edge {0} is forbidden")]
    ReplacementForbidden(Edge),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegularizeError {
    #[error("the vertex subset is empty")]
    EmptySubset,
    #[error("vertex {vertex} is outside 0..{n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    /// No admissible flip from `from` to `to` although the subset is not almost
    /// regular. Without forbidden edges this cannot happen.
    #[error("internal: no admissible hinge flip from vertex {from} to vertex {to}")]
    NoAdmissibleFlip { from: usize, to: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GadgetError {
    #[error(
        "star gadget needs t >= 3, s >= 1, d >= 1 and m >= t - 1 (got t={t}, s={s}, d={d}, m={m})"
    )]
    BadParameters {
        t: usize,
        s: usize,
        d: u64,
        m: usize,
    },
    #[error("C({m}, {k}) = {available} is smaller than the required degree {d}")]
    Infeasible {
        m: usize,
        k: usize,
        available: u128,
        d: u64,
    },
    #[error(transparent)]
    Regularize(#[from] RegularizeError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FillError {
    #[error("degree sum {sigma} is not divisible by t = {t}")]
    Divisibility { sigma: u64, t: usize },
    #[error("{needed} edges needed inside the subset but only {available} are admissible")]
    Capacity { needed: u64, available: u128 },
    #[error("vertex {vertex} is outside 0..{n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
    #[error(transparent)]
    Regularize(#[from] RegularizeError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlignError {
    #[error("sequences and hypergraph disagree on the vertex count")]
    Length,
    #[error("target degree {target} of vertex {vertex} is below the current degree {current}")]
    Negative {
        vertex: usize,
        target: u64,
        current: u64,
    },
    #[error("degree multiset of the fill does not match target - current on the subset")]
    MultisetMismatch,
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
}

/// One hinge flip: `edge` was replaced by `edge` with `v_out` swapped for `v_in`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlipRecord {
    pub edge: Edge,
    pub v_out: usize,
    pub v_in: usize,
}

/// Mutable working copy of a hypergraph with per-vertex incidence sets, so a
/// long run of flips does not rescan the whole edge set.
pub(crate) struct FlipEngine<'f> {
    graph: UniformHypergraph,
    incidence: Vec<BTreeSet<Edge>>,
    degree: Vec<u64>,
    forbidden: Option<&'f HashSet<Edge>>,
}

impl<'f> FlipEngine<'f> {
    pub(crate) fn new(graph: UniformHypergraph, forbidden: Option<&'f HashSet<Edge>>) -> Self {
        let mut incidence = vec![BTreeSet::new(); graph.n()];
        for e in graph.edges() {
            for &v in e.vertices() {
                incidence[v].insert(e.clone());
            }
        }
        let degree = incidence.iter().map(|s| s.len() as u64).collect();
        FlipEngine {
            graph,
            incidence,
            degree,
            forbidden,
        }
    }

    pub(crate) fn into_graph(self) -> UniformHypergraph {
        self.graph
    }

    fn admissible(&self, replacement: &Edge) -> Result<(), FlipError> {
        if self.graph.contains(replacement) {
            return Err(FlipError::ReplacementPresent(replacement.clone()));
        }
        if self.forbidden.is_some_and(|f| f.contains(replacement)) {
            return Err(FlipError::ReplacementForbidden(replacement.clone()));
        }
        Ok(())
    }

    pub(crate) fn flip(
        &mut self,
        e: &Edge,
        out: usize,
        inn: usize,
    ) -> Result<FlipRecord, FlipError> {
        let n = self.graph.n();
        for v in [out, inn] {
            if v >= n {
                return Err(FlipError::VertexOutOfRange { vertex: v, n });
            }
        }
        if !self.graph.contains(e) {
            return Err(FlipError::EdgeAbsent(e.clone()));
        }
        if !e.contains(out) {
            return Err(FlipError::OutNotInEdge {
                edge: e.clone(),
                vertex: out,
            });
        }
        if e.contains(inn) {
            return Err(FlipError::InAlreadyInEdge {
                edge: e.clone(),
                vertex: inn,
            });
        }
        let replacement = e.replace(out, inn);
        self.admissible(&replacement)?;

        self.graph.remove(e).expect("edge checked present");
        self.graph
            .insert(replacement.clone())
            .expect("replacement checked absent");
        for &v in e.vertices() {
            self.incidence[v].remove(e);
        }
        for &v in replacement.vertices() {
            self.incidence[v].insert(replacement.clone());
        }
        self.degree[out] -= 1;
        self.degree[inn] += 1;
        Ok(FlipRecord {
            edge: e.clone(),
            v_out: out,
            v_in: inn,
        })
    }

    /// First edge (lexicographic order) through `from` that can be flipped to `to`.
    pub(crate) fn find_flip(&self, from: usize, to: usize) -> Option<Edge> {
        self.incidence[from]
            .iter()
            .find(|e| !e.contains(to) && self.admissible(&e.replace(from, to)).is_ok())
            .cloned()
    }

    /// Moves one unit of degree from `from` to `to` using the first admissible edge.
    pub(crate) fn transfer(&mut self, from: usize, to: usize) -> Option<FlipRecord> {
        let e = self.find_flip(from, to)?;
        Some(
            self.flip(&e, from, to)
                .expect("find_flip returned an admissible edge"),
        )
    }

    /// Flips until `subset` is almost regular; returns the flips performed.
    pub(crate) fn regularize(
        &mut self,
        subset: &[usize],
    ) -> Result<Vec<FlipRecord>, RegularizeError> {
        let subset = normalize_subset(subset, self.graph.n())?;
        let size = subset.len() as u64;
        let sum: u64 = subset.iter().map(|&v| self.degree[v]).sum();
        let (floor, ceil) = (sum / size, sum.div_ceil(size));
        let mut flips = Vec::new();
        loop {
            // Highest degree above the floor and lowest degree below the ceiling,
            // ties broken towards the lower vertex id.
            let mut hi = subset[0];
            let mut lo = subset[0];
            for &v in &subset {
                if self.degree[v] > self.degree[hi] {
                    hi = v;
                }
                if self.degree[v] < self.degree[lo] {
                    lo = v;
                }
            }
            if self.degree[hi] - self.degree[lo] <= 1 {
                return Ok(flips);
            }
            debug_assert!(self.degree[hi] > floor && self.degree[lo] < ceil);
            match self.transfer(hi, lo) {
                Some(record) => flips.push(record),
                None => return Err(RegularizeError::NoAdmissibleFlip { from: hi, to: lo }),
            }
        }
    }
}

fn normalize_subset(subset: &[usize], n: usize) -> Result<Vec<usize>, RegularizeError> {
    if subset.is_empty() {
        return Err(RegularizeError::EmptySubset);
    }
    let mut sorted = subset.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if let Some(&v) = sorted.last().filter(|&&v| v >= n) {
        return Err(RegularizeError::VertexOutOfRange { vertex: v, n });
    }
    Ok(sorted)
}

/// Replaces `e` by `(e \ {v_out}) ∪ {v_in}`.
pub fn hinge_flip(
    h: &UniformHypergraph,
    e: &Edge,
    v_out: usize,
    v_in: usize,
) -> Result<UniformHypergraph, FlipError> {
    let mut engine = FlipEngine::new(h.clone(), None);
    engine.flip(e, v_out, v_in)?;
    Ok(engine.into_graph())
}

/// `sum over v in U of min(|d(v) - floor(avg)|, |d(v) - ceil(avg)|)`, where
/// `avg` is the mean degree over `U`. Zero exactly when `U` is almost regular.
pub fn imbalance_potential(
    h: &UniformHypergraph,
    subset: &[usize],
) -> Result<u64, RegularizeError> {
    let subset = normalize_subset(subset, h.n())?;
    let deg = h.degree_vector();
    Ok(potential_of(subset.iter().map(|&v| deg[v])))
}

pub(crate) fn potential_of(degrees: impl Iterator<Item = u64> + Clone) -> u64 {
    let size = degrees.clone().count() as u64;
    let sum: u64 = degrees.clone().sum();
    let (floor, ceil) = (sum / size, sum.div_ceil(size));
    degrees
        .map(|d| d.abs_diff(floor).min(d.abs_diff(ceil)))
        .sum()
}

/// Result of [`almost_regularize`]: the new hypergraph and the flips, in order.
#[derive(Debug, Clone)]
pub struct Regularized {
    pub hypergraph: UniformHypergraph,
    pub flips: Vec<FlipRecord>,
}

/// Makes the degrees on `subset` almost regular by hinge flips between
/// vertices of `subset`. Degrees outside `subset` and the degree sum on
/// `subset` are unchanged, and every flip lowers the imbalance potential.
pub fn almost_regularize(
    h: &UniformHypergraph,
    subset: &[usize],
) -> Result<Regularized, RegularizeError> {
    let mut engine = FlipEngine::new(h.clone(), None);
    let flips = engine.regularize(subset)?;
    Ok(Regularized {
        hypergraph: engine.into_graph(),
        flips,
    })
}

/// Hypergraph on `s + m` vertices where vertices `0..s` have degree `d`, every
/// edge holds exactly one of them plus `t - 1` vertices of `s..s+m`, and the
/// degrees on `s..s+m` are almost regular.
pub fn star_gadget(t: usize, s: usize, d: u64, m: usize) -> Result<UniformHypergraph, GadgetError> {
    if t < 3 || s == 0 || d == 0 || m + 1 < t {
        return Err(GadgetError::BadParameters { t, s, d, m });
    }
    let available = binomial(m as u64, t as u64 - 1);
    if available < d as u128 {
        return Err(GadgetError::Infeasible {
            m,
            k: t - 1,
            available,
            d,
        });
    }
    let u: Vec<usize> = (s..s + m).collect();
    let tuples: Vec<Vec<usize>> = ColexSubsets::new(&u, t - 1).take(d as usize).collect();
    let mut h = UniformHypergraph::empty(t, s + m).expect("t >= 3");
    for v in 0..s {
        for tuple in &tuples {
            let mut vs = Vec::with_capacity(t);
            vs.push(v);
            vs.extend_from_slice(tuple);
            h.insert(Edge::from_sorted(vs)).expect("distinct tuples");
        }
    }
    let mut engine = FlipEngine::new(h, None);
    engine.regularize(&u)?;
    Ok(engine.into_graph())
}

/// Simple `t`-uniform hypergraph on `0..n` with all edges inside `w`, none in
/// `forbidden`, degree sum `sigma` and almost regular degrees on `w`.
///
/// Starts from the first `sigma / t` admissible `t`-subsets of `w` in colex
/// order and regularizes; flips never produce a forbidden edge.
pub fn almost_regular_fill(
    n: usize,
    w: &[usize],
    sigma: u64,
    t: usize,
    forbidden: &HashSet<Edge>,
) -> Result<UniformHypergraph, FillError> {
    if !sigma.is_multiple_of(t as u64) {
        return Err(FillError::Divisibility { sigma, t });
    }
    let mut ground = w.to_vec();
    ground.sort_unstable();
    ground.dedup();
    if let Some(&v) = ground.last().filter(|&&v| v >= n) {
        return Err(FillError::VertexOutOfRange { vertex: v, n });
    }
    let needed = sigma / t as u64;
    let mut h = UniformHypergraph::empty(t, n)?;
    if needed == 0 {
        return Ok(h);
    }
    let inside = |e: &Edge| e.vertices().iter().all(|v| ground.binary_search(v).is_ok());
    let blocked = forbidden
        .iter()
        .filter(|e| e.len() == t && inside(e))
        .count() as u128;
    let available = binomial(ground.len() as u64, t as u64).saturating_sub(blocked);
    if (needed as u128) > available {
        return Err(FillError::Capacity { needed, available });
    }
    let mut taken = 0u64;
    for vs in ColexSubsets::new(&ground, t) {
        if taken == needed {
            break;
        }
        let e = Edge::from_sorted(vs);
        if forbidden.contains(&e) {
            continue;
        }
        h.insert(e)?;
        taken += 1;
    }
    let mut engine = FlipEngine::new(h, Some(forbidden));
    engine.regularize(&ground)?;
    Ok(engine.into_graph())
}

/// Permutes the labels of `fill` inside `w` so that every `v` in `w` ends up
/// with degree `target[v] - current[v]`.
///
/// The fill's degree multiset on `w` must equal the multiset of differences,
/// and the fill must have no edges leaving `w`.
pub fn align_complement(
    target: &DegreeSequence,
    current: &DegreeSequence,
    fill: &UniformHypergraph,
    w: &[usize],
) -> Result<UniformHypergraph, AlignError> {
    let n = fill.n();
    if target.len() != n || current.len() != n {
        return Err(AlignError::Length);
    }
    let mut ground = w.to_vec();
    ground.sort_unstable();
    ground.dedup();
    let mut want = Vec::with_capacity(ground.len());
    for &v in &ground {
        if v >= n {
            return Err(AlignError::Length);
        }
        let (tv, cv) = (target[v], current[v]);
        if tv < cv {
            return Err(AlignError::Negative {
                vertex: v,
                target: tv,
                current: cv,
            });
        }
        want.push((tv - cv, v));
    }
    let have_deg = fill.degree_vector();
    let in_w = |v: usize| ground.binary_search(&v).is_ok();
    if have_deg.iter().enumerate().any(|(v, &d)| d > 0 && !in_w(v)) {
        return Err(AlignError::MultisetMismatch);
    }
    let mut have: Vec<(u64, usize)> = ground.iter().map(|&v| (have_deg[v], v)).collect();
    // Stable on ids, so already-aligned fills map to the identity.
    want.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    have.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    if want.iter().map(|p| p.0).ne(have.iter().map(|p| p.0)) {
        return Err(AlignError::MultisetMismatch);
    }
    let mut perm: Vec<usize> = (0..n).collect();
    for (&(_, from), &(_, to)) in have.iter().zip(&want) {
        perm[from] = to;
    }
    Ok(fill.relabel(&perm)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{degrees_of, verify_realization};

    fn graph(t: usize, n: usize, edges: &[&[usize]]) -> UniformHypergraph {
        UniformHypergraph::from_edges(t, n, edges.iter().map(|e| e.to_vec())).unwrap()
    }

    fn edge(v: &[usize]) -> Edge {
        Edge::new(v.to_vec()).unwrap()
    }

    fn seq(v: &[u64]) -> DegreeSequence {
        DegreeSequence::new(v.to_vec()).unwrap()
    }

    #[test]
    fn hinge_flip_examples() {
        let h = graph(3, 5, &[&[0, 1, 2], &[0, 3, 4]]);
        let flipped = hinge_flip(&h, &edge(&[0, 1, 2]), 2, 3).unwrap();
        assert_eq!(flipped, graph(3, 5, &[&[0, 1, 3], &[0, 3, 4]]));

        assert_eq!(
            hinge_flip(&flipped, &edge(&[0, 3, 4]), 4, 1),
            Err(FlipError::ReplacementPresent(edge(&[0, 1, 3])))
        );

        let single = graph(3, 3, &[&[0, 1, 2]]);
        assert!(matches!(
            hinge_flip(&single, &edge(&[0, 1, 2]), 0, 0),
            Err(FlipError::InAlreadyInEdge { .. })
        ));
    }

    #[test]
    fn hinge_flip_error_cases() {
        let h = graph(3, 5, &[&[0, 1, 2]]);
        assert!(matches!(
            hinge_flip(&h, &edge(&[0, 1, 3]), 0, 4),
            Err(FlipError::EdgeAbsent(_))
        ));
        assert!(matches!(
            hinge_flip(&h, &edge(&[0, 1, 2]), 3, 4),
            Err(FlipError::OutNotInEdge { .. })
        ));
        assert!(matches!(
            hinge_flip(&h, &edge(&[0, 1, 2]), 0, 9),
            Err(FlipError::VertexOutOfRange { .. })
        ));
    }

    #[test]
    fn potential_examples() {
        // U = {2,3,4} with degrees (2,1,0)
        let h = graph(3, 5, &[&[0, 1, 2], &[0, 2, 3]]);
        assert_eq!(imbalance_potential(&h, &[2, 3, 4]), Ok(2));

        let regular = graph(3, 3, &[&[0, 1, 2]]);
        assert_eq!(imbalance_potential(&regular, &[0, 1, 2]), Ok(0));

        // degrees (3,0), mean 3/2
        let h = graph(3, 5, &[&[0, 2, 3], &[0, 2, 4], &[0, 3, 4]]);
        assert_eq!(imbalance_potential(&h, &[0, 1]), Ok(2));

        assert_eq!(
            imbalance_potential(&regular, &[]),
            Err(RegularizeError::EmptySubset)
        );
    }

    #[test]
    fn regularize_hand_trace() {
        let h = graph(3, 5, &[&[0, 1, 2], &[0, 2, 3]]);
        let out = almost_regularize(&h, &[2, 3, 4]).unwrap();
        assert_eq!(
            out.flips,
            vec![FlipRecord {
                edge: edge(&[0, 1, 2]),
                v_out: 2,
                v_in: 4
            }]
        );
        assert_eq!(out.hypergraph, graph(3, 5, &[&[0, 1, 4], &[0, 2, 3]]));
        let deg = degrees_of(&out.hypergraph);
        assert_eq!((deg[2], deg[3], deg[4]), (1, 1, 1));
    }

    #[test]
    fn regularize_is_noop_when_balanced() {
        let k4 = graph(3, 4, &[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]]);
        let out = almost_regularize(&k4, &[0, 1, 2, 3]).unwrap();
        assert!(out.flips.is_empty());
        assert_eq!(out.hypergraph, k4);
    }

    #[test]
    fn star_gadget_examples() {
        let single = star_gadget(3, 1, 1, 2).unwrap();
        assert_eq!(single, graph(3, 3, &[&[0, 1, 2]]));

        let g = star_gadget(3, 2, 2, 4).unwrap();
        assert_eq!(verify_realization(&g, &seq(&[2, 2, 2, 2, 2, 2])), Ok(true));
        for e in g.edges() {
            assert_eq!(e.vertices().iter().filter(|&&v| v < 2).count(), 1);
        }

        assert!(matches!(
            star_gadget(3, 2, 7, 4),
            Err(GadgetError::Infeasible { available: 6, .. })
        ));
        assert!(matches!(
            star_gadget(2, 1, 1, 2),
            Err(GadgetError::BadParameters { .. })
        ));
    }

    #[test]
    fn fill_examples() {
        let none = HashSet::new();
        let h = almost_regular_fill(5, &[0, 1, 2, 3, 4], 6, 3, &none).unwrap();
        assert_eq!(h.edge_count(), 2);
        let mut deg = h.degree_vector();
        deg.sort_unstable();
        assert_eq!(deg, vec![1, 1, 1, 1, 2]);

        let h = almost_regular_fill(3, &[0, 1, 2], 3, 3, &none).unwrap();
        assert_eq!(h, graph(3, 3, &[&[0, 1, 2]]));

        assert_eq!(
            almost_regular_fill(3, &[0, 1, 2], 4, 3, &none),
            Err(FillError::Divisibility { sigma: 4, t: 3 })
        );
        assert!(matches!(
            almost_regular_fill(3, &[0, 1, 2], 6, 3, &none),
            Err(FillError::Capacity { .. })
        ));
    }

    #[test]
    fn fill_avoids_forbidden_edges() {
        let forbidden: HashSet<Edge> = [edge(&[0, 1, 2]), edge(&[0, 1, 3])].into_iter().collect();
        let h = almost_regular_fill(6, &[0, 1, 2, 3, 4, 5], 12, 3, &forbidden).unwrap();
        assert_eq!(h.edge_count(), 4);
        assert!(h.edges().all(|e| !forbidden.contains(e)));
        let deg = h.degree_vector();
        assert!(deg.iter().max().unwrap() - deg.iter().min().unwrap() <= 1);
    }

    #[test]
    fn align_examples() {
        // fill on W = {0,1,2,3} with degrees (2,1,1,2); residual wants (1,2,2,1)
        let fill = graph(3, 4, &[&[0, 1, 3], &[0, 2, 3]]);
        let target = seq(&[3, 2, 2, 1]);
        let current = seq(&[2, 0, 0, 0]);
        let aligned = align_complement(&target, &current, &fill, &[0, 1, 2, 3]).unwrap();
        assert_eq!(aligned.degree_vector(), vec![1, 2, 2, 1]);

        let same = align_complement(
            &seq(&[2, 1, 1, 2]),
            &seq(&[0, 0, 0, 0]),
            &fill,
            &[0, 1, 2, 3],
        )
        .unwrap();
        assert_eq!(same, fill);

        assert_eq!(
            align_complement(
                &seq(&[2, 2, 2, 2]),
                &seq(&[0, 0, 0, 0]),
                &fill,
                &[0, 1, 2, 3]
            ),
            Err(AlignError::MultisetMismatch)
        );
    }
}
