//! Sparse-instance parameters, the hard/tractable classification and
//! degree-bound validation.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exponent::{power_bound_ceil, power_bound_floor, Exponent};
use crate::sequence::DegreeSequence;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamsError {
    #[error("uniformity t must be at least 3, got {0}")]
    Uniformity(usize),
    #[error("need alpha' <= alpha, got alpha' = {alpha_prime}, alpha = {alpha}")]
    Order {
        alpha_prime: Exponent,
        alpha: Exponent,
    },
    #[error("need alpha < t - 1 = {limit}, got alpha = {alpha}")]
    AlphaTooLarge { alpha: Exponent, limit: usize },
}

/// `(t, alpha', alpha)`: instances of length `n` have degrees between
/// `n^alpha'` and `6 n^alpha`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SparseParams {
    t: usize,
    alpha_prime: Exponent,
    alpha: Exponent,
}

/// Which side of the dichotomy a parameter triple falls on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RegimeLabel {
    Hard,
    Tractable,
}

impl RegimeLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            RegimeLabel::Hard => "hard",
            RegimeLabel::Tractable => "tractable",
        }
    }
}

/// Signed rational used for the threshold exponent, which can be negative.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignedRatio {
    pub num: i128,
    pub den: u128,
}

impl SparseParams {
    pub fn new(t: usize, alpha_prime: Exponent, alpha: Exponent) -> Result<Self, ParamsError> {
        if t < 3 {
            return Err(ParamsError::Uniformity(t));
        }
        if alpha_prime > alpha {
            return Err(ParamsError::Order { alpha_prime, alpha });
        }
        if alpha >= Exponent::integer(t as u64 - 1) {
            return Err(ParamsError::AlphaTooLarge {
                alpha,
                limit: t - 1,
            });
        }
        Ok(SparseParams {
            t,
            alpha_prime,
            alpha,
        })
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn alpha_prime(&self) -> Exponent {
        self.alpha_prime
    }

    pub fn alpha(&self) -> Exponent {
        self.alpha
    }

    /// `(t(alpha - 1) + 1) / (t - 1)`, unreduced.
    pub fn threshold(&self) -> SignedRatio {
        let t = self.t as i128;
        let (p, q) = (self.alpha.num() as i128, self.alpha.den() as i128);
        SignedRatio {
            num: t * (p - q) + q,
            den: ((t - 1) * q) as u128,
        }
    }

    /// The threshold as an [`Exponent`], when it is nonnegative.
    pub fn threshold_exponent(&self) -> Option<Exponent> {
        let r = self.threshold();
        if r.num < 0 {
            return None;
        }
        Exponent::new(r.num as u64, r.den as u64).ok()
    }

    /// Smallest admissible degree at length `n`: `ceil(n^alpha')`.
    pub fn min_degree(&self, n: u64) -> u64 {
        power_bound_ceil(1, n, self.alpha_prime)
    }

    /// Largest admissible degree at length `n`: `floor(6 n^alpha)`.
    pub fn max_degree(&self, n: u64) -> u64 {
        power_bound_floor(6, n, self.alpha)
    }
}

/// Hard iff `alpha' <= (t(alpha - 1) + 1)/(t - 1)`.
///
/// With `alpha = p/q` and `alpha' = a/b` the test is
/// `a (t - 1) q <= b (t (p - q) + q)`, evaluated on big integers.
pub fn classify_regime(params: &SparseParams) -> RegimeLabel {
    let t = BigInt::from(params.t);
    let one = BigInt::from(1);
    let p = BigInt::from(params.alpha.num());
    let q = BigInt::from(params.alpha.den());
    let a = BigInt::from(params.alpha_prime.num());
    let b = BigInt::from(params.alpha_prime.den());
    let lhs = a * (&t - &one) * &q;
    let rhs = b * (t * (p - &q) + q);
    if lhs <= rhs {
        RegimeLabel::Hard
    } else {
        RegimeLabel::Tractable
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BoundKind {
    BelowMin,
    AboveMax,
}

/// One degree outside the admissible window.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BoundViolation {
    pub vertex: usize,
    pub degree: u64,
    pub kind: BoundKind,
    pub bound: u64,
}

/// Checks every degree against `[ceil(n^alpha'), floor(6 n^alpha)]`.
/// Violations are returned as data.
pub fn validate_instance(
    d: &DegreeSequence,
    params: &SparseParams,
) -> Result<(), Vec<BoundViolation>> {
    let n = d.len() as u64;
    let (lo, hi) = (params.min_degree(n), params.max_degree(n));
    let violations: Vec<BoundViolation> = d
        .iter()
        .enumerate()
        .filter_map(|(vertex, degree)| {
            if degree < lo {
                Some(BoundViolation {
                    vertex,
                    degree,
                    kind: BoundKind::BelowMin,
                    bound: lo,
                })
            } else if degree > hi {
                Some(BoundViolation {
                    vertex,
                    degree,
                    kind: BoundKind::AboveMax,
                    bound: hi,
                })
            } else {
                None
            }
        })
        .collect();
    if violations.is_empty() {
        Ok(())
    } else {
        Err(violations)
    }
}
