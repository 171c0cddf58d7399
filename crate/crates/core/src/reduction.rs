//! Hardness reductions: lifting `t` to `t + 1`, and the sparse gadget that
//! embeds an arbitrary instance into one with prescribed degree bounds.
//!
//! The gadget instance on `n` vertices is split into three consecutive blocks:
//! `V_L = 0..m`, `V_N = m..2m` (holding the padded original sequence) and
//! `V_S = 2m..n`. The fixed part `G` contains every `t`-subset of `V_L`, every
//! `t`-subset of `V_L ∪ V_N` meeting both blocks, and a star gadget joining each
//! `V_S` vertex to `(t-1)`-subsets of `V_L`. A realization of the gadget
//! sequence is forced to contain `G`, so removing it leaves a realization of
//! the original sequence inside `V_N`.

use std::ops::Range;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::combinatorics::{binomial, colex_subsets_of_range};
use crate::exponent::{ceil_rational_power, power_bound_ceil, Exponent};
use crate::flips::{star_gadget, GadgetError};
use crate::hypergraph::{degrees_of, Edge, HypergraphError, UniformHypergraph};
use crate::params::{classify_regime, RegimeLabel, SparseParams};
use crate::sequence::DegreeSequence;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LiftError {
    #[error("degree sum {sigma} is not divisible by {t}")]
    Divisibility { sigma: u128, t: usize },
    #[error("vertex {0} is out of range")]
    VertexOutOfRange(usize),
    #[error("edge {0} does not contain the removed vertex")]
    MissingVertex(Edge),
    #[error("cannot lower uniformity below 2")]
    Uniformity,
}

/// Appends a vertex of degree `sum(d) / t`.
pub fn lift(d: &DegreeSequence, t: usize) -> Result<DegreeSequence, LiftError> {
    let sigma = d.sum();
    if t == 0 || !sigma.is_multiple_of(t as u128) {
        return Err(LiftError::Divisibility { sigma, t });
    }
    let mut v = d.as_slice().to_vec();
    v.push((sigma / t as u128) as u64);
    Ok(DegreeSequence::from_counts(v))
}

/// Adds a new vertex `n` to every edge.
pub fn lift_realization(h: &UniformHypergraph) -> UniformHypergraph {
    let n = h.n();
    UniformHypergraph::from_edges(
        h.t() + 1,
        n + 1,
        h.edges().map(|e| {
            let mut vs = e.vertices().to_vec();
            vs.push(n);
            vs
        }),
    )
    .expect("adding a fresh vertex keeps edges distinct")
}

/// Removes `v` from every edge and closes the gap in the labels.
pub fn unlift_realization(h: &UniformHypergraph, v: usize) -> Result<UniformHypergraph, LiftError> {
    if v >= h.n() {
        return Err(LiftError::VertexOutOfRange(v));
    }
    if h.t() < 3 {
        return Err(LiftError::Uniformity);
    }
    let mut out = UniformHypergraph::empty(h.t() - 1, h.n() - 1).expect("t >= 2");
    for e in h.edges() {
        if !e.contains(v) {
            return Err(LiftError::MissingVertex(e.clone()));
        }
        let vs: Vec<usize> = e
            .vertices()
            .iter()
            .filter(|&&u| u != v)
            .map(|&u| if u > v { u - 1 } else { u })
            .collect();
        out.insert(Edge::from_sorted(vs))
            .expect("distinct after removal");
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Part {
    L,
    N,
    S,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("parameters lie in the tractable regime")]
    WrongRegime,
    #[error("need alpha >= (t-1)/t for the gadget, got alpha = {0}")]
    AlphaOutOfRange(Exponent),
    #[error("vertex {vertex} has degree {degree} > C(m-1, t-1) = {limit}: not realizable")]
    DegreeTooLarge {
        vertex: usize,
        degree: u64,
        limit: u128,
    },
    #[error("no padding up to m = {0} satisfies the requirements")]
    PaddingLimit(usize),
    #[error(transparent)]
    Gadget(#[from] GadgetError),
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
    #[error("hypergraph has {got} vertices, the certificate needs {expected}")]
    VertexCount { got: usize, expected: usize },
    #[error("edge {0} leaves V_N")]
    EdgeOutsideN(Edge),
    #[error("vertex {vertex} has degree {got}, expected {expected}")]
    DegreeMismatch {
        vertex: usize,
        got: u64,
        expected: u64,
    },
}

/// Everything needed to rebuild, combine and audit a gadget instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionCertificate {
    pub t: usize,
    pub m: usize,
    pub n: usize,
    /// Degree of every `V_S` vertex.
    pub d: u64,
    pub padding: usize,
    pub original: Vec<u64>,
    pub params: SparseParams,
    /// Number of `V_L` vertices (the highest-indexed ones) taking the floor share.
    pub floors: usize,
    /// Whether every gadget degree lies within the instance bounds at this `n`.
    pub bounds_hold: bool,
}

impl ReductionCertificate {
    pub fn v_l(&self) -> Range<usize> {
        0..self.m
    }

    pub fn v_n(&self) -> Range<usize> {
        self.m..2 * self.m
    }

    pub fn v_s(&self) -> Range<usize> {
        2 * self.m..self.n
    }

    pub fn part(&self, v: usize) -> Part {
        if v < self.m {
            Part::L
        } else if v < 2 * self.m {
            Part::N
        } else {
            Part::S
        }
    }

    /// The original sequence followed by the padding zeros.
    pub fn padded(&self) -> Vec<u64> {
        let mut v = self.original.clone();
        v.resize(self.m, 0);
        v
    }

    /// Total star-gadget degree on `V_L`: `(n - 2m) d (t - 1)`.
    fn star_load(&self) -> u128 {
        (self.n - 2 * self.m) as u128 * self.d as u128 * (self.t - 1) as u128
    }

    /// Degrees of the fixed part `G`.
    pub fn gadget_degrees(&self) -> Vec<u64> {
        let (t, m) = (self.t as u64, self.m as u64);
        let full = binomial(2 * m - 1, t - 1) as u64;
        let inner_n = binomial(m - 1, t - 1) as u64;
        let load = self.star_load();
        let ceil = load.div_ceil(m as u128) as u64;
        let floor = (load / m as u128) as u64;
        let mut out = Vec::with_capacity(self.n);
        for i in 0..self.m {
            let share = if i >= self.m - self.floors {
                floor
            } else {
                ceil
            };
            out.push(full + share);
        }
        out.extend(std::iter::repeat_n(full - inner_n, self.m));
        out.extend(std::iter::repeat_n(self.d, self.n - 2 * self.m));
        out
    }

    /// The gadget sequence `D'`.
    pub fn target(&self) -> DegreeSequence {
        let mut out = self.gadget_degrees();
        for (i, di) in self.padded().into_iter().enumerate() {
            out[self.m + i] += di;
        }
        DegreeSequence::from_counts(out)
    }
}

/// Largest gadget length considered while padding.
pub const MAX_GADGET_N: usize = 10_000_000;

fn gadget_size(m: usize, params: &SparseParams) -> (usize, u64) {
    let t = params.t() as u64;
    let alpha = params.alpha();
    // n = ceil((6m/t)^((t-1)/alpha))
    let exp = Exponent::new((t - 1) * alpha.den(), alpha.num()).expect("alpha > 0");
    let n = ceil_rational_power(6 * m as u64, t, exp) as usize;
    let star = params.threshold_exponent().expect("alpha >= (t-1)/t");
    let d = power_bound_ceil(1, n as u64, star);
    (n, d)
}

/// Builds `D'` and its certificate. Zeros are appended to `d` until
/// `C(m, t-1) >= d_S` holds and `V_S` is nonempty.
pub fn gadget_reduce(
    d: &DegreeSequence,
    params: &SparseParams,
) -> Result<(DegreeSequence, ReductionCertificate), ReductionError> {
    gadget_reduce_padded(d, params, false)
}

/// As [`gadget_reduce`]; with `require_bounds` padding continues until every
/// gadget degree also lies within the instance bounds.
pub fn gadget_reduce_padded(
    d: &DegreeSequence,
    params: &SparseParams,
    require_bounds: bool,
) -> Result<(DegreeSequence, ReductionCertificate), ReductionError> {
    let t = params.t();
    let alpha = params.alpha();
    // below (t-1)/t the threshold is negative, so this also implies the wrong regime
    if alpha < Exponent::new(t as u64 - 1, t as u64).expect("t > 0") {
        return Err(ReductionError::AlphaOutOfRange(alpha));
    }
    if classify_regime(params) != RegimeLabel::Hard {
        return Err(ReductionError::WrongRegime);
    }
    let mut m = d.len().max(t - 1);
    loop {
        let (n, ds) = gadget_size(m, params);
        if n > MAX_GADGET_N {
            return Err(ReductionError::PaddingLimit(m));
        }
        if n > 2 * m && binomial(m as u64, t as u64 - 1) >= ds as u128 {
            let cert = certificate(d, params, m, n, ds);
            if cert.bounds_hold || !require_bounds {
                let limit = binomial(m as u64 - 1, t as u64 - 1);
                if let Some((vertex, degree)) =
                    d.iter().enumerate().find(|&(_, x)| x as u128 > limit)
                {
                    return Err(ReductionError::DegreeTooLarge {
                        vertex,
                        degree,
                        limit,
                    });
                }
                return Ok((cert.target(), cert));
            }
        }
        m += 1;
    }
}

fn certificate(
    d: &DegreeSequence,
    params: &SparseParams,
    m: usize,
    n: usize,
    ds: u64,
) -> ReductionCertificate {
    let t = params.t();
    let load = (n - 2 * m) as u128 * ds as u128 * (t - 1) as u128;
    let floors = (m as u128 * load.div_ceil(m as u128) - load) as usize;
    let mut cert = ReductionCertificate {
        t,
        m,
        n,
        d: ds,
        padding: m - d.len(),
        original: d.as_slice().to_vec(),
        params: *params,
        floors,
        bounds_hold: false,
    };
    let target = cert.target();
    let (lo, hi) = (params.min_degree(n as u64), params.max_degree(n as u64));
    cert.bounds_hold = target.iter().all(|x| lo <= x && x <= hi);
    cert
}

/// The fixed part `G` of the gadget.
pub fn build_gadget(cert: &ReductionCertificate) -> Result<UniformHypergraph, ReductionError> {
    let (t, m, n) = (cert.t, cert.m, cert.n);
    let mut g = UniformHypergraph::empty(t, n)?;
    for vs in colex_subsets_of_range(2 * m, t) {
        // every subset meeting V_L: all of V_L's own subsets and the mixed ones
        if vs[0] < m {
            g.insert(Edge::from_sorted(vs))?;
        }
    }
    let s = n - 2 * m;
    let star = star_gadget(t, s, cert.d, m)?;
    // U vertices of the star become V_L; larger shares go to lower ids
    let star_deg = star.degree_vector();
    let mut u: Vec<usize> = (s..s + m).collect();
    u.sort_by(|&a, &b| star_deg[b].cmp(&star_deg[a]).then(a.cmp(&b)));
    let mut perm: Vec<usize> = (2 * m..2 * m + s).chain(0..m).collect();
    for (pos, &v) in u.iter().enumerate() {
        perm[v] = pos;
    }
    for e in star.edges() {
        g.insert(e.map(|v| perm[v]))?;
    }
    Ok(g)
}

/// Places a hypergraph on `0..m` into `V_N`.
pub fn embed_in_n(
    h: &UniformHypergraph,
    cert: &ReductionCertificate,
) -> Result<UniformHypergraph, ReductionError> {
    if h.n() != cert.m {
        return Err(ReductionError::VertexCount {
            got: h.n(),
            expected: cert.m,
        });
    }
    let mut out = UniformHypergraph::empty(h.t(), cert.n)?;
    for e in h.edges() {
        out.insert(e.map(|v| v + cert.m))?;
    }
    Ok(out)
}

/// Moves a hypergraph living inside `V_N` back onto `0..m`.
pub fn restrict_to_n(
    h: &UniformHypergraph,
    cert: &ReductionCertificate,
) -> Result<UniformHypergraph, ReductionError> {
    let mut out = UniformHypergraph::empty(h.t(), cert.m)?;
    for e in h.edges() {
        if e.vertices().iter().any(|&v| cert.part(v) != Part::N) {
            return Err(ReductionError::EdgeOutsideN(e.clone()));
        }
        out.insert(e.map(|v| v - cert.m))?;
    }
    Ok(out)
}

fn check_vertex_count(
    h: &UniformHypergraph,
    cert: &ReductionCertificate,
) -> Result<(), ReductionError> {
    if h.n() != cert.n {
        return Err(ReductionError::VertexCount {
            got: h.n(),
            expected: cert.n,
        });
    }
    Ok(())
}

/// Union of a `V_N` hypergraph with the gadget.
pub fn combine(
    h_n: &UniformHypergraph,
    g: &UniformHypergraph,
    cert: &ReductionCertificate,
) -> Result<UniformHypergraph, ReductionError> {
    check_vertex_count(h_n, cert)?;
    check_vertex_count(g, cert)?;
    if let Some(e) = h_n
        .edges()
        .find(|e| e.vertices().iter().any(|&v| cert.part(v) != Part::N))
    {
        return Err(ReductionError::EdgeOutsideN(e.clone()));
    }
    let mut out = g.clone();
    out.union_with(h_n)?;
    Ok(out)
}

fn first_mismatch(got: &[u64], expected: &[u64]) -> Option<ReductionError> {
    got.iter()
        .zip(expected)
        .position(|(a, b)| a != b)
        .map(|vertex| ReductionError::DegreeMismatch {
            vertex,
            got: got[vertex],
            expected: expected[vertex],
        })
}

/// Recovers the `V_N` part of a realization of `D'`.
///
/// Every edge meeting `V_L` is dropped; what remains must lie inside `V_N`
/// and realize the padded original sequence there.
pub fn extract(
    h: &UniformHypergraph,
    cert: &ReductionCertificate,
) -> Result<UniformHypergraph, ReductionError> {
    check_vertex_count(h, cert)?;
    if let Some(err) = first_mismatch(&h.degree_vector(), cert.target().as_slice()) {
        return Err(err);
    }
    let mut out = UniformHypergraph::empty(h.t(), cert.n)?;
    for e in h.edges() {
        if e.vertices()[0] < cert.m {
            continue;
        }
        if e.vertices().iter().any(|&v| cert.part(v) == Part::S) {
            return Err(ReductionError::EdgeOutsideN(e.clone()));
        }
        out.insert(e.clone())?;
    }
    let deg = degrees_of(&out);
    let mut expected = vec![0; cert.n];
    for (i, di) in cert.padded().into_iter().enumerate() {
        expected[cert.m + i] = di;
    }
    if let Some(err) = first_mismatch(deg.as_slice(), &expected) {
        return Err(err);
    }
    Ok(out)
}

/// Edge counts by how many vertices fall in each block.
///
/// Index `i` of `n_counts`, `s_counts` and the rows and columns of `q` stands
/// for `i` vertices; index 0 is unused.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeCensus {
    /// Edges inside `V_L`.
    pub x: u64,
    /// `n_counts[i]`: `i` vertices in `V_N`, the rest in `V_L`.
    pub n_counts: Vec<u64>,
    /// `s_counts[j]`: `j` vertices in `V_S`, the rest in `V_L`.
    pub s_counts: Vec<u64>,
    /// `q[i][j]`: `i` in `V_N`, `j` in `V_S`, at least one in `V_L`.
    pub q: Vec<Vec<u64>>,
    pub pure_n: u64,
    pub pure_s: u64,
    pub mixed_ns: u64,
}

impl EdgeCensus {
    pub fn total(&self) -> u64 {
        self.x
            + self.n_counts.iter().sum::<u64>()
            + self.s_counts.iter().sum::<u64>()
            + self.q.iter().flatten().sum::<u64>()
            + self.pure_n
            + self.pure_s
            + self.mixed_ns
    }

    pub fn q_total(&self) -> u64 {
        self.q.iter().flatten().sum()
    }
}

pub fn edge_census(h: &UniformHypergraph, cert: &ReductionCertificate) -> EdgeCensus {
    let t = cert.t;
    let mut c = EdgeCensus {
        x: 0,
        n_counts: vec![0; t],
        s_counts: vec![0; t],
        q: vec![vec![0; t]; t],
        pure_n: 0,
        pure_s: 0,
        mixed_ns: 0,
    };
    for e in h.edges() {
        let (mut l, mut nn, mut ss) = (0, 0, 0);
        for &v in e.vertices() {
            match cert.part(v) {
                Part::L => l += 1,
                Part::N => nn += 1,
                Part::S => ss += 1,
            }
        }
        match (l, nn, ss) {
            (l, _, _) if l == t => c.x += 1,
            (0, _, 0) => c.pure_n += 1,
            (0, 0, _) => c.pure_s += 1,
            (0, _, _) => c.mixed_ns += 1,
            (_, nn, 0) => c.n_counts[nn] += 1,
            (_, 0, ss) => c.s_counts[ss] += 1,
            (_, nn, ss) => c.q[nn][ss] += 1,
        }
    }
    c
}

/// `V_L` incidences counted edge by edge:
/// `t x + sum_i n_i (t - i) + sum_j s_j (t - j) + sum_{i,j} q_ij (t - i - j)`.
pub fn eq1_lhs(census: &EdgeCensus, t: usize) -> u128 {
    let t = t as u128;
    let mut total = t * census.x as u128;
    for i in 1..census.n_counts.len() {
        total += census.n_counts[i] as u128 * (t - i as u128);
        total += census.s_counts[i] as u128 * (t - i as u128);
    }
    for (i, row) in census.q.iter().enumerate() {
        for (j, &cnt) in row.iter().enumerate() {
            if cnt > 0 {
                total += cnt as u128 * (t - (i + j) as u128);
            }
        }
    }
    total
}

/// Required `V_L` degree sum: `m C(2m-1, t-1) + (n - 2m) d (t - 1)`.
pub fn eq1_rhs(cert: &ReductionCertificate) -> u128 {
    cert.m as u128 * binomial(2 * cert.m as u64 - 1, cert.t as u64 - 1) + cert.star_load()
}

/// The census is the unique one the degree count allows: `G` exactly, plus
/// edges inside `V_N`.
pub fn eq1_forced(census: &EdgeCensus, cert: &ReductionCertificate) -> bool {
    let (t, m) = (cert.t as u64, cert.m as u64);
    if census.x as u128 != binomial(m, t) {
        return false;
    }
    for i in 1..cert.t {
        let expected = binomial(m, i as u64) * binomial(m, t - i as u64);
        if census.n_counts[i] as u128 != expected {
            return false;
        }
    }
    let star_edges = (cert.n - 2 * cert.m) as u64 * cert.d;
    census.s_counts[1] == star_edges
        && census.s_counts[2..].iter().all(|&c| c == 0)
        && census.q_total() == 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::verify_realization;

    fn seq(v: &[u64]) -> DegreeSequence {
        DegreeSequence::new(v.to_vec()).unwrap()
    }

    fn hard() -> SparseParams {
        SparseParams::new(3, Exponent::new(1, 2).unwrap(), Exponent::integer(1)).unwrap()
    }

    #[test]
    fn lift_examples() {
        assert_eq!(lift(&seq(&[2, 2, 2]), 3).unwrap(), seq(&[2, 2, 2, 2]));
        assert_eq!(lift(&seq(&[3, 3, 3, 3]), 3).unwrap(), seq(&[3, 3, 3, 3, 4]));
        assert!(matches!(
            lift(&seq(&[1, 1, 1, 1]), 3),
            Err(LiftError::Divisibility { sigma: 4, t: 3 })
        ));
    }

    #[test]
    fn lift_realization_examples() {
        let h = UniformHypergraph::from_edges(3, 3, [vec![0, 1, 2]]).unwrap();
        let lifted = lift_realization(&h);
        assert_eq!(
            lifted,
            UniformHypergraph::from_edges(4, 4, [vec![0, 1, 2, 3]]).unwrap()
        );
        assert_eq!(unlift_realization(&lifted, 3).unwrap(), h);

        let k4 = UniformHypergraph::from_edges(3, 4, colex_subsets_of_range(4, 3)).unwrap();
        let lifted = lift_realization(&k4);
        assert_eq!(degrees_of(&lifted), seq(&[3, 3, 3, 3, 4]));

        let empty = UniformHypergraph::empty(3, 5).unwrap();
        assert_eq!(lift_realization(&empty).n(), 6);
        assert_eq!(lift_realization(&empty).edge_count(), 0);

        let bad =
            UniformHypergraph::from_edges(4, 5, [vec![0, 1, 2, 3], vec![0, 1, 2, 4]]).unwrap();
        assert!(matches!(
            unlift_realization(&bad, 4),
            Err(LiftError::MissingVertex(_))
        ));
    }

    fn worked() -> (DegreeSequence, ReductionCertificate) {
        gadget_reduce(&seq(&[1, 1, 1, 0, 0]), &hard()).unwrap()
    }

    #[test]
    fn worked_reduction() {
        let (dp, cert) = worked();
        assert_eq!((cert.m, cert.n, cert.d, cert.padding), (5, 100, 10, 0));
        let mut expected = vec![396; 5];
        expected.extend([31, 31, 31, 30, 30]);
        expected.extend([10; 90]);
        assert_eq!(dp.as_slice(), expected.as_slice());
        assert_eq!(dp.sum(), 3033);
        assert!(cert.bounds_hold);

        let (zeros, _) = gadget_reduce(&seq(&[0; 5]), &hard()).unwrap();
        assert!(zeros.as_slice()[5..10].iter().all(|&x| x == 30));
    }

    #[test]
    fn reduction_errors() {
        let tractable =
            SparseParams::new(3, Exponent::new(3, 5).unwrap(), Exponent::integer(1)).unwrap();
        assert_eq!(
            gadget_reduce(&seq(&[1, 1, 1]), &tractable).unwrap_err(),
            ReductionError::WrongRegime
        );
        let low_alpha =
            SparseParams::new(3, Exponent::integer(0), Exponent::new(1, 2).unwrap()).unwrap();
        assert!(matches!(
            gadget_reduce(&seq(&[1, 1, 1]), &low_alpha),
            Err(ReductionError::AlphaOutOfRange(_))
        ));
        assert!(matches!(
            gadget_reduce(&seq(&[7, 1, 1, 1, 1]), &hard()),
            Err(ReductionError::DegreeTooLarge { vertex: 0, .. })
        ));
    }

    #[test]
    fn worked_gadget_round_trip() {
        let (dp, cert) = worked();
        let g = build_gadget(&cert).unwrap();
        assert_eq!(g.edge_count(), 1010);
        let gd = g.degree_vector();
        assert!(gd[0..5].iter().all(|&x| x == 396));
        assert!(gd[5..10].iter().all(|&x| x == 30));
        assert!(gd[10..].iter().all(|&x| x == 10));

        let h_n = UniformHypergraph::from_edges(3, 100, [vec![5, 6, 7]]).unwrap();
        let h = combine(&h_n, &g, &cert).unwrap();
        assert_eq!(h.edge_count(), 1011);
        assert_eq!(verify_realization(&h, &dp), Ok(true));
        assert_eq!(extract(&h, &cert).unwrap(), h_n);

        let census = edge_census(&h, &cert);
        assert_eq!(census.x, 10);
        assert_eq!(census.n_counts[1..], [50, 50]);
        assert_eq!(census.s_counts[1..], [900, 0]);
        assert_eq!((census.q_total(), census.pure_n), (0, 1));
        assert_eq!(census.total(), 1011);
        assert!(eq1_forced(&census, &cert));
        assert_eq!(eq1_lhs(&census, 3), 1980);
        assert_eq!(eq1_rhs(&cert), 1980);

        let census_g = edge_census(&g, &cert);
        assert_eq!(census_g.pure_n, 0);
        assert!(eq1_forced(&census_g, &cert));
        let empty = edge_census(&UniformHypergraph::empty(3, 100).unwrap(), &cert);
        assert_eq!(empty.total(), 0);
    }

    #[test]
    fn combine_and_extract_errors() {
        let (_, cert) = worked();
        let g = build_gadget(&cert).unwrap();
        let stray = UniformHypergraph::from_edges(3, 100, [vec![5, 6, 50]]).unwrap();
        assert!(matches!(
            combine(&stray, &g, &cert),
            Err(ReductionError::EdgeOutsideN(_))
        ));

        let (_, zero_cert) = gadget_reduce(&seq(&[0; 5]), &hard()).unwrap();
        let g0 = build_gadget(&zero_cert).unwrap();
        assert_eq!(extract(&g0, &zero_cert).unwrap().edge_count(), 0);

        let h_n = UniformHypergraph::from_edges(3, 100, [vec![5, 6, 7]]).unwrap();
        let mut corrupt = combine(&h_n, &g, &cert).unwrap();
        corrupt.remove(&Edge::new(vec![5, 6, 7]).unwrap()).unwrap();
        corrupt.insert(Edge::new(vec![5, 6, 8]).unwrap()).unwrap();
        assert!(matches!(
            extract(&corrupt, &cert),
            Err(ReductionError::DegreeMismatch { vertex: 7, .. })
        ));
    }

    #[test]
    fn floors_sit_on_the_highest_ids() {
        // t=3, alpha=1, m=7: n = ceil(14^2) = 196, d = 14, load 182*14*2 = 5096 = 7*728
        let (_, cert) = gadget_reduce(&seq(&[0; 7]), &hard()).unwrap();
        let g = build_gadget(&cert).unwrap();
        assert_eq!(g.degree_vector(), cert.gadget_degrees());
        let (_, cert) = gadget_reduce(&seq(&[2, 1, 0, 0, 0, 0]), &hard()).unwrap();
        let g = build_gadget(&cert).unwrap();
        assert_eq!(g.degree_vector(), cert.gadget_degrees());
    }
}
