//! Reduced fractions, coprime residues and Farey sequences.
//!
//! Farey sequences here exclude the endpoints `0/1` and `1/1`: `F_N` is the
//! set of reduced fractions strictly inside `(0, 1)` with denominator at most
//! `N`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rug::Integer;

use crate::error::{check_bound, domain, Error, Result};

/// Largest supported Farey order.
pub const FAREY_MAX_ORDER: u64 = 100_000;

/// A non-negative rational number, always kept in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(rug::Rational);

impl Rational {
    /// Builds `k/n` in lowest terms.
    pub fn reduce(k: u64, n: u64) -> Result<Self> {
        if n == 0 {
            return Err(domain("denominator", n, "n >= 1"));
        }
        Ok(Self(rug::Rational::from((k, n))))
    }

    /// Builds `num/den` from big integers, rejecting negative values.
    pub fn from_integers(num: Integer, den: Integer) -> Result<Self> {
        if den <= 0 {
            return Err(domain("denominator", den, "n >= 1"));
        }
        if num < 0 {
            return Err(domain("numerator", num, "k >= 0"));
        }
        Ok(Self(rug::Rational::from((num, den))))
    }

    pub fn integer(k: u64) -> Self {
        Self(rug::Rational::from(k))
    }

    pub fn numer(&self) -> &Integer {
        self.0.numer()
    }

    pub fn denom(&self) -> &Integer {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        *self.0.numer() == 0
    }

    /// Numerator and denominator as machine words, when they fit.
    pub fn to_u64_pair(&self) -> Option<(u64, u64)> {
        Some((self.0.numer().to_u64()?, self.0.denom().to_u64()?))
    }

    pub fn as_rug(&self) -> &rug::Rational {
        &self.0
    }

    /// `1 - self`, defined for values in `[0, 1]`.
    pub fn complement(&self) -> Option<Self> {
        let c = rug::Rational::from(1 - &self.0);
        (c >= 0).then_some(Self(c))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Parses `k/n` or a bare integer `k`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parse = |t: &str| {
            Integer::from_str(t.trim()).map_err(|_| domain("rational literal", s, "k/n with integers k >= 0, n >= 1"))
        };
        match s.split_once('/') {
            Some((k, n)) => Self::from_integers(parse(k)?, parse(n)?),
            None => Self::from_integers(parse(s)?, Integer::from(1)),
        }
    }
}

impl From<Rational> for rug::Rational {
    fn from(r: Rational) -> Self {
        r.0
    }
}

/// Canonical reduced form of `k/n`.
pub fn reduce(k: u64, n: u64) -> Result<Rational> {
    Rational::reduce(k, n)
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Integers `1 <= k <= n` coprime to `n`, ascending. Returns `[1]` for `n = 1`.
pub fn coprime_residues(n: u64) -> Vec<u64> {
    (1..=n).filter(|&k| gcd(k, n) == 1).collect()
}

/// Streams the interior of the Farey sequence of order `order` as
/// `(numerator, denominator)` pairs in increasing order.
///
/// Uses the next-term recurrence seeded with `0/1, 1/N`.
#[derive(Clone, Debug)]
pub struct FareyIter {
    order: u64,
    prev: (u64, u64),
    cur: (u64, u64),
}

impl FareyIter {
    pub fn new(order: u64) -> Result<Self> {
        check_farey_order(order)?;
        Ok(Self {
            order,
            prev: (0, 1),
            cur: (1, order),
        })
    }
}

impl Iterator for FareyIter {
    type Item = (u64, u64);

    fn next(&mut self) -> Option<(u64, u64)> {
        let (a, b) = self.prev;
        let (c, d) = self.cur;
        if c >= d {
            return None;
        }
        let k = (self.order + b) / d;
        self.prev = (c, d);
        self.cur = (k * c - a, k * d - b);
        Some((c, d))
    }
}

fn check_farey_order(order: u64) -> Result<()> {
    if order < 2 {
        return Err(domain("Farey order", order, "N >= 2"));
    }
    check_bound("Farey order", order, FAREY_MAX_ORDER)
}

/// The interior of the Farey sequence of a given order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FareySequence {
    pub order: u64,
    pub elements: Vec<Rational>,
}

impl FareySequence {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rational> {
        self.elements.iter()
    }
}

/// `F_N` generated by the next-term recurrence.
pub fn farey(order: u64) -> Result<FareySequence> {
    let elements = FareyIter::new(order)?
        .map(|(k, n)| Rational::reduce(k, n))
        .collect::<Result<Vec<_>>>()?;
    Ok(FareySequence { order, elements })
}

/// `F_N` by enumerating every `k/n`, reducing, deduplicating and sorting.
/// Quadratic; intended as a test oracle.
pub fn farey_bruteforce(order: u64) -> Result<FareySequence> {
    check_farey_order(order)?;
    let mut set = BTreeSet::new();
    for n in 2..=order {
        for k in 1..n {
            let g = gcd(k, n);
            set.insert(SmallFraction(k / g, n / g));
        }
    }
    Ok(FareySequence {
        order,
        elements: set
            .into_iter()
            .map(|SmallFraction(k, n)| Rational::reduce(k, n))
            .collect::<Result<_>>()?,
    })
}

/// Reduced `k/n` in machine words, ordered by value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct SmallFraction(u64, u64);

impl Ord for SmallFraction {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (u128::from(self.0) * u128::from(other.1)).cmp(&(u128::from(other.0) * u128::from(self.1)))
    }
}

impl PartialOrd for SmallFraction {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
