//! Exact nonnegative rational exponents and integer power bounds.
//!
//! Every quantity of the form `c * n^(p/q)` is bounded with big-integer
//! arithmetic: `d <= c * n^(p/q)` iff `d^q <= c^q * n^p`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExponentError {
    #[error("exponent denominator must be positive")]
    ZeroDenominator,
    #[error("cannot parse {0:?} as an exact rational \"p/q\" (decimals are not accepted)")]
    Parse(String),
}

/// A nonnegative rational `num/den`, kept in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Exponent {
    num: u64,
    den: u64,
}

impl Exponent {
    pub fn new(num: u64, den: u64) -> Result<Self, ExponentError> {
        if den == 0 {
            return Err(ExponentError::ZeroDenominator);
        }
        let g = num.gcd(&den);
        Ok(Exponent {
            num: num / g,
            den: den / g,
        })
    }

    pub fn integer(v: u64) -> Self {
        Exponent { num: v, den: 1 }
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Exponent {
    type Err = ExponentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let parse = |part: &str| -> Result<u64, ExponentError> {
            if part.is_empty() || !part.bytes().all(|b| b.is_ascii_digit()) {
                return Err(ExponentError::Parse(s.to_string()));
            }
            part.parse()
                .map_err(|_| ExponentError::Parse(s.to_string()))
        };
        match s.split_once('/') {
            Some((p, q)) => Exponent::new(parse(p)?, parse(q)?),
            None => Ok(Exponent::integer(parse(s)?)),
        }
    }
}

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Exponent {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn to_u64_saturating(v: &BigUint) -> u64 {
    v.to_u64().unwrap_or(u64::MAX)
}

/// `ceil((a/b)^(p/q))` for `a >= 0`, `b >= 1`: the least `x` with `x^q * b^p >= a^p`.
pub fn ceil_rational_power(a: u64, b: u64, exp: Exponent) -> u64 {
    assert!(b >= 1, "base denominator must be positive");
    let (p, q) = (exp.num as u32, exp.den as u32);
    if p == 0 {
        return 1;
    }
    let target = BigUint::from(a).pow(p);
    let scale = BigUint::from(b).pow(p);
    // floor of the q-th root of target/scale, then step up until the bound holds
    let mut x = (&target / &scale).nth_root(q);
    while x.pow(q) * &scale < target {
        x += 1u32;
    }
    to_u64_saturating(&x)
}

/// `max { d : d^q <= c^q * n^p }`, i.e. `floor(c * n^(p/q))`.
pub fn power_bound_floor(c: u64, n: u64, exp: Exponent) -> u64 {
    let (p, q) = (exp.num as u32, exp.den as u32);
    let target = BigUint::from(c).pow(q) * BigUint::from(n).pow(p);
    to_u64_saturating(&target.nth_root(q))
}

/// `min { d : d^q >= c^q * n^p }`, i.e. `ceil(c * n^(p/q))`.
pub fn power_bound_ceil(c: u64, n: u64, exp: Exponent) -> u64 {
    let (p, q) = (exp.num as u32, exp.den as u32);
    let target = BigUint::from(c).pow(q) * BigUint::from(n).pow(p);
    if target.is_zero() {
        return 0;
    }
    let root = target.nth_root(q);
    if root.pow(q) == target {
        to_u64_saturating(&root)
    } else {
        to_u64_saturating(&(root + BigUint::one()))
    }
}
