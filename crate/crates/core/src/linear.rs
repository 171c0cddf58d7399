//! Linear-time decision above a certified length threshold.
//!
//! For a parameter triple, `n0` is the least length from which on every least
//! balanced sequence with bounds `[ceil(n^alpha'), floor(6 n^alpha)]` and a
//! degree sum divisible by `t` passes the preconditions of at least one
//! construction in [`crate::realize`]. Above `n0` divisibility alone decides.
//!
//! Certification scans lengths `1..=SEARCH_CAP`. For each length every top
//! count `k` is handled in closed form: the admissible middle degrees of each
//! construction form an interval, and only middle degrees in the residue class
//! fixed by divisibility need to be covered.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use thiserror::Error;

use crate::combinatorics::binomial;
use crate::params::{
    classify_regime, validate_instance, BoundViolation, RegimeLabel, SparseParams,
};
use crate::realize::{check_case, ConstructionCase, Layout};
use crate::sequence::DegreeSequence;

/// Largest length examined when certifying `n0`.
pub const SEARCH_CAP: u64 = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ThresholdCertificate {
    /// `Some(n0)` when every length in `n0..=SEARCH_CAP` is covered and the
    /// covered run is at least half the search range.
    pub n0: Option<u64>,
    /// Largest length in the search range with an uncovered sequence.
    pub last_uncovered: Option<u64>,
    pub searched_up_to: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LinearDecision {
    Yes,
    No,
    /// Length below the certified threshold, or no threshold could be certified.
    Indeterminate,
}

impl LinearDecision {
    pub fn label(&self) -> &'static str {
        match self {
            LinearDecision::Yes => "yes",
            LinearDecision::No => "no",
            LinearDecision::Indeterminate => "indeterminate",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecideError {
    #[error("parameters lie in the hard regime")]
    WrongRegime,
    #[error("instance violates the degree bounds at {} vertices", .0.len())]
    InvalidInstance(Vec<BoundViolation>),
}

fn ceil_div(a: i128, b: i128) -> i128 {
    let q = a.div_euclid(b);
    if a.rem_euclid(b) == 0 {
        q
    } else {
        q + 1
    }
}

fn clamp_i128(v: u128) -> i128 {
    i128::try_from(v).unwrap_or(i128::MAX)
}

/// Middle degrees `mu` for which `case` passes at top count `k` and length `n`,
/// ignoring divisibility, as an inclusive interval (possibly empty).
fn middle_interval(
    case: ConstructionCase,
    n: usize,
    t: usize,
    k: usize,
    delta: u64,
    big: u64,
) -> Option<(i128, i128)> {
    let s = n - k - 1;
    let tm1 = (t - 1) as i128;
    let (d, b) = (delta as i128, big as i128);
    let (ki, si) = (k as i128, s as i128);
    let t_big = t as i128;
    let (lo, hi) = match case {
        ConstructionCase::FewHigh => {
            let tuples = clamp_i128(binomial(s as u64, t as u64 - 1));
            if k > 0 && tuples < b {
                return None;
            }
            let cap = clamp_i128(binomial(s as u64, t as u64)).saturating_mul(t_big);
            let hi = tuples.min((si * d).div_euclid(tm1) - ki * b);
            let lo = ceil_div((si * d).saturating_sub(cap), tm1) - ki * b;
            (lo, hi)
        }
        ConstructionCase::ManyHigh => {
            if k == 0 {
                return None;
            }
            let r = (ki * b).rem_euclid(t_big);
            if r > ki {
                return None;
            }
            let inner = (ki * b - r) / t_big;
            if inner > clamp_i128(binomial(k as u64, t as u64)) {
                return None;
            }
            let tuples = clamp_i128(binomial(s as u64, t as u64 - 1));
            if r > 0 && tuples < 1 {
                return None;
            }
            let cap = clamp_i128(binomial(s as u64, t as u64)).saturating_mul(t_big);
            let hi = tuples.min((si * d).div_euclid(tm1) - r);
            let lo = ceil_div((si * d).saturating_sub(cap), tm1) - r;
            (lo, hi)
        }
        ConstructionCase::MostlyHigh => {
            let tuples = clamp_i128(binomial(k as u64, t as u64 - 1));
            if s > 0 && delta > 0 && tuples < d {
                return None;
            }
            let cap = clamp_i128(binomial(k as u64, t as u64)).saturating_mul(t_big);
            let hi = tuples.min((ki * b).div_euclid(tm1) - si * d);
            let lo = ceil_div((ki * b).saturating_sub(cap), tm1) - si * d;
            (lo, hi)
        }
    };
    (lo <= hi).then_some((lo, hi))
}

/// Whether some `x` in `[a, b]` with `x = rho (mod t)` lies outside every interval.
fn residue_uncovered(
    mut intervals: Vec<(i128, i128)>,
    a: i128,
    b: i128,
    rho: i128,
    t: i128,
) -> bool {
    let hits = |lo: i128, hi: i128| lo <= hi && lo + (rho - lo).rem_euclid(t) <= hi;
    intervals.sort_unstable();
    let mut cur = a;
    for (lo, hi) in intervals {
        if cur > b {
            return false;
        }
        if hi < cur {
            continue;
        }
        if lo > cur && hits(cur, (lo - 1).min(b)) {
            return true;
        }
        cur = cur.max(hi + 1);
    }
    hits(cur, b)
}

/// Every divisible least balanced sequence of length `n` with bounds
/// `[delta, big]` passes some construction.
pub fn length_covered(n: usize, t: usize, delta: u64, big: u64) -> bool {
    let layout = |high, middle| Layout {
        n,
        t,
        delta,
        max_degree: big,
        high,
        middle,
    };
    let any_case = |l: &Layout| {
        ConstructionCase::ALL
            .iter()
            .any(|&c| check_case(c, l).is_ok())
    };
    if delta == big {
        return !(n as u128 * delta as u128).is_multiple_of(t as u128) || any_case(&layout(0, None));
    }
    let tt = t as i128;
    for k in 0..=n {
        let sigma = k as u128 * big as u128 + (n - k) as u128 * delta as u128;
        if sigma.is_multiple_of(t as u128) && !any_case(&layout(k, None)) {
            return false;
        }
        if k == n || big - delta < 2 {
            continue;
        }
        let base = k as i128 * big as i128 + (n - k - 1) as i128 * delta as i128;
        let rho = (-base).rem_euclid(tt);
        let intervals: Vec<(i128, i128)> = ConstructionCase::ALL
            .iter()
            .filter_map(|&c| middle_interval(c, n, t, k, delta, big))
            .collect();
        if residue_uncovered(intervals, delta as i128 + 1, big as i128 - 1, rho, tt) {
            return false;
        }
    }
    true
}

/// Same question answered by running every precondition check on every
/// divisible least balanced sequence. Quadratic; meant for cross-checking.
pub fn length_covered_exhaustive(n: usize, t: usize, delta: u64, big: u64) -> bool {
    use crate::lbds::LbdsSpec;
    let (lo, hi) = (n as u64 * delta, n as u64 * big);
    (lo..=hi).filter(|s| s % t as u64 == 0).all(|sigma| {
        let spec = LbdsSpec::new(n, delta, big, sigma).expect("sum within range");
        let layout = Layout::of_spec(&spec, t);
        ConstructionCase::ALL
            .iter()
            .any(|&c| check_case(c, &layout).is_ok())
    })
}

fn length_covered_for(n: u64, params: &SparseParams) -> bool {
    let (delta, big) = (params.min_degree(n), params.max_degree(n));
    if delta > big {
        return true;
    }
    length_covered(n as usize, params.t(), delta, big)
}

fn compute_certificate(params: &SparseParams) -> ThresholdCertificate {
    let last_uncovered = (1..=SEARCH_CAP)
        .rev()
        .find(|&n| !length_covered_for(n, params));
    let n0 = match last_uncovered {
        None => Some(1),
        Some(l) if l <= SEARCH_CAP / 2 => Some(l + 1),
        Some(_) => None,
    };
    ThresholdCertificate {
        n0,
        last_uncovered,
        searched_up_to: SEARCH_CAP,
    }
}

/// Certified threshold for `params`, computed once per parameter triple.
pub fn certified_threshold(params: &SparseParams) -> ThresholdCertificate {
    static CACHE: OnceLock<Mutex<HashMap<SparseParams, ThresholdCertificate>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(c) = cache.lock().expect("cache poisoned").get(params) {
        return *c;
    }
    let cert = compute_certificate(params);
    cache.lock().expect("cache poisoned").insert(*params, cert);
    cert
}

/// Decides realizability by divisibility when `d` is at least as long as the
/// certified threshold; `Indeterminate` otherwise.
pub fn decide_linear(
    d: &DegreeSequence,
    params: &SparseParams,
) -> Result<LinearDecision, DecideError> {
    if classify_regime(params) != RegimeLabel::Tractable {
        return Err(DecideError::WrongRegime);
    }
    validate_instance(d, params).map_err(DecideError::InvalidInstance)?;
    match certified_threshold(params).n0 {
        Some(n0) if d.len() as u64 >= n0 => {
            let t = params.t() as u64;
            let rem = d.iter().fold(0u64, |acc, x| (acc + x % t) % t);
            Ok(if rem == 0 {
                LinearDecision::Yes
            } else {
                LinearDecision::No
            })
        }
        _ => Ok(LinearDecision::Indeterminate),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exponent::Exponent;

    fn params(t: usize, ap: (u64, u64), a: (u64, u64)) -> SparseParams {
        SparseParams::new(
            t,
            Exponent::new(ap.0, ap.1).unwrap(),
            Exponent::new(a.0, a.1).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn closed_form_matches_exhaustive_checks() {
        for t in 3..=5 {
            for n in 1..=24 {
                for delta in 0..=6u64 {
                    for big in delta..=delta + 14 {
                        assert_eq!(
                            length_covered(n, t, delta, big),
                            length_covered_exhaustive(n, t, delta, big),
                            "n={n} t={t} delta={delta} Delta={big}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn residue_gaps() {
        // [0, 9] minus [2, 7] leaves {0, 1, 8, 9}; [2, 9] minus it leaves {8, 9}
        assert!(residue_uncovered(vec![(2, 7)], 0, 9, 1, 3));
        assert!(!residue_uncovered(vec![(2, 7)], 2, 9, 1, 3));
        assert!(!residue_uncovered(vec![(0, 4), (5, 9)], 0, 9, 0, 3));
        assert!(residue_uncovered(vec![], 4, 4, 1, 3));
    }

    #[test]
    fn decide_examples() {
        let p = params(3, (1, 2), (1, 2));
        assert_eq!(classify_regime(&p), RegimeLabel::Tractable);
        let cert = certified_threshold(&p);
        let n0 = cert.n0.expect("certified");
        assert!(n0 < 2048);
        let n = n0.max(100) as usize;
        let lo = p.min_degree(n as u64);
        let d = DegreeSequence::new(vec![lo; n]).unwrap();
        let expected = if (n as u64 * lo).is_multiple_of(3) {
            LinearDecision::Yes
        } else {
            LinearDecision::No
        };
        assert_eq!(decide_linear(&d, &p), Ok(expected));
        let hard = params(3, (1, 2), (1, 1));
        assert_eq!(decide_linear(&d, &hard), Err(DecideError::WrongRegime));
    }
}
