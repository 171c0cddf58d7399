//! Constructive realizations in the tractable regime.
//!
//! A least balanced sequence has `k` vertices at the top degree `Delta`, at
//! most one middle vertex and the rest at `delta`. Three constructions cover
//! it, depending on how many top vertices there are:
//!
//! * [`ConstructionCase::FewHigh`]: every top vertex (and the middle one)
//!   attaches to distinct `(t-1)`-subsets of the low vertices; the low side is
//!   then regularized and topped up with an almost regular fill.
//! * [`ConstructionCase::ManyHigh`]: the top vertices get an almost regular
//!   hypergraph among themselves, short by at most `t - 1` units; those units
//!   and the middle vertex are served by edges into the low side, which is then
//!   regularized and topped up.
//! * [`ConstructionCase::MostlyHigh`]: the roles swap; low vertices (and the
//!   middle one) attach to subsets of the top side, which is regularized and
//!   topped up.
//!
//! Each construction has arithmetic preconditions that are checked before
//! anything is built, so a failure is reported as the concrete check that did
//! not hold rather than as a search that gave up.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigUint;
use serde::Serialize;
use thiserror::Error;

use crate::combinatorics::{binomial, ColexSubsets};
use crate::flips::{align_complement, FlipEngine};
use crate::hypergraph::{degrees_of, verify_realization, Edge, UniformHypergraph};
use crate::lbds::{
    lbds_construct, perturbation_series, perturbation_series_within, pullback_realization,
    LbdsSpec, PerturbationSeries,
};
use crate::params::{
    classify_regime, validate_instance, BoundViolation, RegimeLabel, SparseParams,
};
use crate::sequence::{divisible_by_t, DegreeSequence};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ConstructionCase {
    FewHigh,
    ManyHigh,
    MostlyHigh,
}

impl ConstructionCase {
    pub const ALL: [ConstructionCase; 3] = [
        ConstructionCase::FewHigh,
        ConstructionCase::ManyHigh,
        ConstructionCase::MostlyHigh,
    ];
}

impl fmt::Display for ConstructionCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ConstructionCase::FewHigh => "few-high",
            ConstructionCase::ManyHigh => "many-high",
            ConstructionCase::MostlyHigh => "mostly-high",
        };
        f.write_str(s)
    }
}

/// An arithmetic precondition of a construction that does not hold.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Precondition {
    /// A vertex needs `demand` distinct `(t-1)`-subsets of a pool that only has `available`.
    TupleCapacity { demand: u64, available: u128 },
    /// Attaching puts `load` degree units on a pool that can absorb only `capacity`.
    PoolOverload { load: u128, capacity: u128 },
    /// The top-up needs `edges` edges inside a pool with only `available` `t`-subsets.
    FillCapacity { edges: u128, available: u128 },
    /// Residual degree sum of a top-up is not a multiple of `t`.
    FillDivisibility { residual: u128, t: usize },
    /// The construction needs at least one top-degree vertex.
    NoHighVertices,
    /// More deficient top vertices (`deficit`) than top vertices (`high`).
    DeficitTooLarge { deficit: u64, high: usize },
    /// The top vertices cannot hold `edges` edges among themselves.
    HighFillCapacity { edges: u128, available: u128 },
}

impl fmt::Display for Precondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Precondition::TupleCapacity { demand, available } => {
                write!(
                    f,
                    "tuple capacity: need {demand} distinct tuples, pool has {available}"
                )
            }
            Precondition::PoolOverload { load, capacity } => {
                write!(f, "pool overload: load {load} exceeds capacity {capacity}")
            }
            Precondition::FillCapacity { edges, available } => {
                write!(
                    f,
                    "fill capacity: need {edges} edges, pool has {available} t-subsets"
                )
            }
            Precondition::FillDivisibility { residual, t } => {
                write!(
                    f,
                    "fill divisibility: residual {residual} not divisible by {t}"
                )
            }
            Precondition::NoHighVertices => write!(f, "no top-degree vertices"),
            Precondition::DeficitTooLarge { deficit, high } => {
                write!(
                    f,
                    "deficit {deficit} exceeds the {high} top-degree vertices"
                )
            }
            Precondition::HighFillCapacity { edges, available } => write!(
                f,
                "top-side capacity: need {edges} edges, only {available} t-subsets"
            ),
        }
    }
}

/// A construction together with the precondition it failed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FailedPrecondition {
    pub case: ConstructionCase,
    pub check: Precondition,
}

impl fmt::Display for FailedPrecondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.case, self.check)
    }
}

#[derive(Debug, Clone)]
pub struct Realization {
    pub hypergraph: UniformHypergraph,
    /// Hinge flips spent, including the pullback to the input labelling.
    pub flips: usize,
    pub case: ConstructionCase,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NoReason {
    Divisibility { sigma: u128, t: usize },
}

#[derive(Debug, Clone)]
pub enum RealizeOutcome {
    Yes(Realization),
    No(NoReason),
    /// Every construction failed a precondition; the first entry is the first failure.
    Indeterminate(Vec<FailedPrecondition>),
}

impl RealizeOutcome {
    pub fn label(&self) -> &'static str {
        match self {
            RealizeOutcome::Yes(_) => "yes",
            RealizeOutcome::No(_) => "no",
            RealizeOutcome::Indeterminate(_) => "indeterminate",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RealizeError {
    #[error("uniformity must be at least 2, got {0}")]
    Uniformity(usize),
    #[error("parameters use t = {params}, realization asked for t = {requested}")]
    UniformityMismatch { params: usize, requested: usize },
    #[error("parameters lie in the hard regime")]
    WrongRegime,
    #[error("instance violates the degree bounds at {} vertices", .0.len())]
    InvalidInstance(Vec<BoundViolation>),
    #[error("internal construction failure: {0}")]
    Internal(String),
}

/// Sorted least balanced sequence laid out by position: top vertices
/// `0..high`, then the middle vertex if any, then the low vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Layout {
    pub n: usize,
    pub t: usize,
    pub delta: u64,
    pub max_degree: u64,
    pub high: usize,
    pub middle: Option<u64>,
}

impl Layout {
    pub fn of_spec(spec: &LbdsSpec, t: usize) -> Self {
        let shape = spec.shape();
        Layout {
            n: spec.n(),
            t,
            delta: spec.delta(),
            max_degree: spec.max_degree(),
            high: shape.high_count,
            middle: shape.middle,
        }
    }

    pub fn low(&self) -> usize {
        self.n - self.high - self.middle.is_some() as usize
    }

    fn middle_vertex(&self) -> Option<(usize, u64)> {
        self.middle.map(|mu| (self.high, mu))
    }

    fn high_vertices(&self) -> Vec<usize> {
        (0..self.high).collect()
    }

    fn low_vertices(&self) -> Vec<usize> {
        (self.n - self.low()..self.n).collect()
    }
}

fn fill_checks(residual: u128, pool: usize, t: usize) -> Result<(), Precondition> {
    if !residual.is_multiple_of(t as u128) {
        return Err(Precondition::FillDivisibility { residual, t });
    }
    let available = binomial(pool as u64, t as u64);
    if residual / t as u128 > available {
        return Err(Precondition::FillCapacity {
            edges: residual / t as u128,
            available,
        });
    }
    Ok(())
}

fn tuple_check(demand: u64, available: u128) -> Result<(), Precondition> {
    if demand as u128 > available {
        Err(Precondition::TupleCapacity { demand, available })
    } else {
        Ok(())
    }
}

/// Checks the arithmetic preconditions of `case` on `layout`.
pub fn check_case(case: ConstructionCase, layout: &Layout) -> Result<(), Precondition> {
    let t = layout.t;
    let tm1 = (t - 1) as u128;
    let (k, s) = (layout.high, layout.low());
    let (delta, big) = (layout.delta as u128, layout.max_degree as u128);
    let mu = layout.middle.unwrap_or(0);
    match case {
        ConstructionCase::FewHigh => {
            let tuples = binomial(s as u64, t as u64 - 1);
            if k > 0 {
                tuple_check(layout.max_degree, tuples)?;
            }
            tuple_check(mu, tuples)?;
            let load = tm1 * (k as u128 * big + mu as u128);
            let capacity = s as u128 * delta;
            if load > capacity {
                return Err(Precondition::PoolOverload { load, capacity });
            }
            fill_checks(capacity - load, s, t)
        }
        ConstructionCase::ManyHigh => {
            if k == 0 {
                return Err(Precondition::NoHighVertices);
            }
            let deficit = (k as u128 * big % t as u128) as u64;
            if deficit as usize > k {
                return Err(Precondition::DeficitTooLarge { deficit, high: k });
            }
            let inner = k as u128 * big - deficit as u128;
            let available = binomial(k as u64, t as u64);
            if inner / t as u128 > available {
                return Err(Precondition::HighFillCapacity {
                    edges: inner / t as u128,
                    available,
                });
            }
            let tuples = binomial(s as u64, t as u64 - 1);
            if deficit > 0 {
                tuple_check(1, tuples)?;
            }
            tuple_check(mu, tuples)?;
            let load = tm1 * (deficit as u128 + mu as u128);
            let capacity = s as u128 * delta;
            if load > capacity {
                return Err(Precondition::PoolOverload { load, capacity });
            }
            fill_checks(capacity - load, s, t)
        }
        ConstructionCase::MostlyHigh => {
            let tuples = binomial(k as u64, t as u64 - 1);
            if s > 0 {
                tuple_check(layout.delta, tuples)?;
            }
            tuple_check(mu, tuples)?;
            let load = tm1 * (s as u128 * delta + mu as u128);
            let capacity = k as u128 * big;
            if load > capacity {
                return Err(Precondition::PoolOverload { load, capacity });
            }
            fill_checks(capacity - load, k, t)
        }
    }
}

/// Case suggested by where `k` falls relative to the asymptotic thresholds
/// `n^(alpha' + 1 - alpha) / (12 (t - 1))` and `(t - 2) n / (t - 1) -/+ 1`.
/// `None` for the gap between the last two.
pub fn preferred_case(layout: &Layout, params: &SparseParams) -> Option<ConstructionCase> {
    let (n, k, t) = (layout.n as u128, layout.high as u128, layout.t as u128);
    // alpha' + 1 - alpha = num / den, with a possibly negative numerator
    let (ap, aq) = (
        params.alpha_prime().num() as i128,
        params.alpha_prime().den() as i128,
    );
    let (p, q) = (params.alpha().num() as i128, params.alpha().den() as i128);
    let num = ap * q + aq * q - p * aq;
    let den = (aq * q) as u32;
    let few = if k == 0 {
        true
    } else if num < 0 {
        false
    } else {
        let lhs = BigUint::from(12 * (t - 1) * k).pow(den);
        let rhs = BigUint::from(n).pow(num as u32);
        lhs <= rhs
    };
    if few {
        return Some(ConstructionCase::FewHigh);
    }
    if (t - 1) * k > (t - 2) * n + (t - 1) {
        return Some(ConstructionCase::MostlyHigh);
    }
    if (t - 1) * k + (t - 1) <= (t - 2) * n {
        return Some(ConstructionCase::ManyHigh);
    }
    None
}

/// Pool rotated so that successive owners start their tuples at different vertices.
fn rotated(pool: &[usize], offset: usize) -> Vec<usize> {
    let mut out = pool.to_vec();
    if !out.is_empty() {
        let len = out.len();
        out.rotate_left(offset % len);
    }
    out
}

fn owner_edge(owner: usize, tuple: &[usize]) -> Edge {
    let mut vs = Vec::with_capacity(tuple.len() + 1);
    vs.push(owner);
    vs.extend_from_slice(tuple);
    Edge::new(vs).expect("owner lies outside its pool")
}

fn internal(e: impl fmt::Display) -> RealizeError {
    RealizeError::Internal(e.to_string())
}

/// Adds `count` edges joining `owner` to distinct `(t-1)`-subsets of `pool`.
fn attach(
    h: &mut UniformHypergraph,
    owner: usize,
    count: u64,
    pool: &[usize],
    offset: usize,
) -> Result<(), RealizeError> {
    let ground = rotated(pool, offset);
    let mut added = 0;
    for tuple in ColexSubsets::new(&ground, h.t() - 1).take(count as usize) {
        h.insert(owner_edge(owner, &tuple)).map_err(internal)?;
        added += 1;
    }
    if added < count {
        return Err(internal(format!("pool too small for {count} tuples")));
    }
    Ok(())
}

/// Regularizes `pool`, then tops it up to `target` with an aligned almost
/// regular fill. Returns the finished hypergraph and the flips spent.
fn complete_pool(
    h: UniformHypergraph,
    pool: &[usize],
    target: &DegreeSequence,
) -> Result<(UniformHypergraph, usize), RealizeError> {
    let t = h.t();
    let mut flips = 0;
    let h = if pool.is_empty() {
        h
    } else {
        let mut engine = FlipEngine::new(h, None);
        flips += engine.regularize(pool).map_err(internal)?.len();
        engine.into_graph()
    };
    let current = degrees_of(&h);
    let mut residual: u64 = 0;
    for &v in pool {
        if current[v] > target[v] {
            return Err(internal(format!("vertex {v} overshoots its target")));
        }
        residual += target[v] - current[v];
    }
    if residual == 0 {
        return Ok((h, flips));
    }
    let in_pool = |e: &Edge| e.vertices().iter().all(|v| pool.contains(v));
    let forbidden: HashSet<Edge> = h.edges().filter(|e| in_pool(e)).cloned().collect();
    let (fill, fill_flips) = fill_with_flips(h.n(), pool, residual, t, &forbidden)?;
    flips += fill_flips;
    let fill = align_complement(target, &current, &fill, pool).map_err(internal)?;
    let mut h = h;
    h.union_with(&fill).map_err(internal)?;
    Ok((h, flips))
}

fn fill_with_flips(
    n: usize,
    pool: &[usize],
    sigma: u64,
    t: usize,
    forbidden: &HashSet<Edge>,
) -> Result<(UniformHypergraph, usize), RealizeError> {
    let needed = sigma / t as u64;
    let mut h = UniformHypergraph::empty(t, n).map_err(internal)?;
    let mut taken = 0;
    for vs in ColexSubsets::new(pool, t) {
        if taken == needed {
            break;
        }
        let e = Edge::new(vs).map_err(internal)?;
        if forbidden.contains(&e) {
            continue;
        }
        h.insert(e).map_err(internal)?;
        taken += 1;
    }
    if taken < needed {
        return Err(internal("fill capacity exhausted"));
    }
    let mut engine = FlipEngine::new(h, Some(forbidden));
    let flips = engine.regularize(pool).map_err(internal)?.len();
    Ok((engine.into_graph(), flips))
}

fn build_case(
    case: ConstructionCase,
    layout: &Layout,
    target: &DegreeSequence,
) -> Result<(UniformHypergraph, usize), RealizeError> {
    let t = layout.t;
    let mut h = UniformHypergraph::empty(t, layout.n).map_err(internal)?;
    let high = layout.high_vertices();
    let low = layout.low_vertices();
    match case {
        ConstructionCase::FewHigh => {
            for (i, &v) in high.iter().enumerate() {
                attach(&mut h, v, layout.max_degree, &low, i * (t - 1))?;
            }
            if let Some((v, mu)) = layout.middle_vertex() {
                attach(&mut h, v, mu, &low, high.len() * (t - 1))?;
            }
            complete_pool(h, &low, target)
        }
        ConstructionCase::ManyHigh => {
            let k = layout.high as u64;
            let deficit = k * layout.max_degree % t as u64;
            let none = HashSet::new();
            let (inner, mut flips) =
                fill_with_flips(layout.n, &high, k * layout.max_degree - deficit, t, &none)?;
            h.union_with(&inner).map_err(internal)?;
            let deg = degrees_of(&h);
            let short: Vec<usize> = high
                .iter()
                .copied()
                .filter(|&v| deg[v] < layout.max_degree)
                .collect();
            if short.len() as u64 != deficit {
                return Err(internal("top-side fill has the wrong deficit"));
            }
            // Disjoint blocks first, then further colex tuples for the middle vertex.
            let blocks: Vec<Vec<usize>> = low.chunks_exact(t - 1).map(|c| c.to_vec()).collect();
            let mut block_iter = blocks.iter();
            for &v in &short {
                let tuple = block_iter
                    .next()
                    .cloned()
                    .or_else(|| ColexSubsets::new(&low, t - 1).next())
                    .ok_or_else(|| internal("no tuple available"))?;
                h.insert(owner_edge(v, &tuple)).map_err(internal)?;
            }
            if let Some((v, mu)) = layout.middle_vertex() {
                let mut used: HashSet<Vec<usize>> = HashSet::new();
                let candidates = block_iter.cloned().chain(ColexSubsets::new(&low, t - 1));
                for tuple in candidates {
                    if used.len() as u64 == mu {
                        break;
                    }
                    if used.insert(tuple.clone()) {
                        h.insert(owner_edge(v, &tuple)).map_err(internal)?;
                    }
                }
                if used.len() as u64 != mu {
                    return Err(internal("pool too small for the middle vertex"));
                }
            }
            let (h, more) = complete_pool(h, &low, target)?;
            flips += more;
            Ok((h, flips))
        }
        ConstructionCase::MostlyHigh => {
            for (i, &v) in low.iter().enumerate() {
                attach(&mut h, v, layout.delta, &high, i * (t - 1))?;
            }
            if let Some((v, mu)) = layout.middle_vertex() {
                attach(&mut h, v, mu, &high, low.len() * (t - 1))?;
            }
            complete_pool(h, &high, target)
        }
    }
}

/// Realizes `LBDS(spec)` as a `t`-uniform hypergraph on sorted positions
/// (vertex `p` gets the `p`-th entry of [`lbds_construct`]).
///
/// The case suggested by `params` is tried first, then the others in order;
/// a case is built only after its preconditions pass.
pub fn realize_lbds(
    spec: &LbdsSpec,
    t: usize,
    params: Option<&SparseParams>,
) -> Result<RealizeOutcome, RealizeError> {
    if t < 2 {
        return Err(RealizeError::Uniformity(t));
    }
    let target = lbds_construct(spec);
    if !divisible_by_t(&target, t) {
        return Ok(RealizeOutcome::No(NoReason::Divisibility {
            sigma: target.sum(),
            t,
        }));
    }
    let layout = Layout::of_spec(spec, t);
    let mut order: Vec<ConstructionCase> = Vec::with_capacity(3);
    if let Some(case) = params.and_then(|p| preferred_case(&layout, p)) {
        order.push(case);
    }
    for case in ConstructionCase::ALL {
        if !order.contains(&case) {
            order.push(case);
        }
    }
    let mut failures = Vec::new();
    for case in order {
        if let Err(check) = check_case(case, &layout) {
            failures.push(FailedPrecondition { case, check });
            continue;
        }
        let (hypergraph, flips) = build_case(case, &layout, &target)?;
        if verify_realization(&hypergraph, &target) != Ok(true) {
            return Err(internal(format!("{case} construction missed its target")));
        }
        return Ok(RealizeOutcome::Yes(Realization {
            hypergraph,
            flips,
            case,
        }));
    }
    Ok(RealizeOutcome::Indeterminate(failures))
}

fn realize_along(
    series: &PerturbationSeries,
    params: &SparseParams,
) -> Result<RealizeOutcome, RealizeError> {
    let outcome = realize_lbds(&series.spec(), params.t(), Some(params))?;
    let RealizeOutcome::Yes(sorted) = outcome else {
        return Ok(outcome);
    };
    // sorted position p holds vertex order[p] of the input
    let labelled = sorted.hypergraph.relabel(&series.order).map_err(internal)?;
    let hypergraph = pullback_realization(&labelled, series).map_err(internal)?;
    if verify_realization(&hypergraph, &series.start) != Ok(true) {
        return Err(internal("pullback missed the input sequence"));
    }
    Ok(RealizeOutcome::Yes(Realization {
        hypergraph,
        flips: sorted.flips + series.steps.len(),
        case: sorted.case,
    }))
}

/// Realizes a sparse instance in the tractable regime.
///
/// Tries the least balanced sequence with the instance's own minimum and
/// maximum first, then the one spanning the full admissible window
/// `[ceil(n^alpha'), floor(6 n^alpha)]`, and pulls the result back to `d`.
pub fn realize_sparse(
    d: &DegreeSequence,
    params: &SparseParams,
) -> Result<RealizeOutcome, RealizeError> {
    if classify_regime(params) != RegimeLabel::Tractable {
        return Err(RealizeError::WrongRegime);
    }
    validate_instance(d, params).map_err(RealizeError::InvalidInstance)?;
    let t = params.t();
    if !divisible_by_t(d, t) {
        return Ok(RealizeOutcome::No(NoReason::Divisibility {
            sigma: d.sum(),
            t,
        }));
    }
    let tight = perturbation_series(d);
    let first = realize_along(&tight, params)?;
    let RealizeOutcome::Indeterminate(mut failures) = first else {
        return Ok(first);
    };
    let n = d.len() as u64;
    let (low, high) = (params.min_degree(n), params.max_degree(n));
    if (low, high) == (tight.low, tight.high) {
        return Ok(RealizeOutcome::Indeterminate(failures));
    }
    let wide = perturbation_series_within(d, low, high).map_err(internal)?;
    match realize_along(&wide, params)? {
        RealizeOutcome::Indeterminate(more) => {
            failures.extend(more);
            Ok(RealizeOutcome::Indeterminate(failures))
        }
        other => Ok(other),
    }
}
