//! Farey sequences `F(n)`: generation, neighbour streaming, interval location
//! by Stern–Brocot descent, mediants, and the interval determined by a pair of
//! denominators.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use thiserror::Error;

use crate::exact::{Rational, UnitRational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FareyError {
    #[error("{0} is the last term of the Farey sequence")]
    AtEnd(FareyFraction),
    #[error("{0} lies in F({1}); it is a strip boundary, not inside an interval")]
    OnBoundary(FareyFraction, u64),
    #[error("denominators {b} and {d} are not adjacent in F({n})")]
    NotAdjacent { b: u64, d: u64, n: u64 },
    #[error("invalid Farey fraction {0}/{1}")]
    InvalidFraction(u64, u64),
    #[error("order must be at least 1")]
    ZeroOrder,
    #[error("cannot parse {0:?} as a Farey interval (expected a/b,c/d)")]
    Parse(String),
}

/// A reduced fraction `a/b` with `0 <= a <= b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FareyFraction {
    a: u64,
    b: u64,
}

impl FareyFraction {
    pub fn new(a: u64, b: u64) -> Result<Self, FareyError> {
        if b == 0 || a > b || a.gcd(&b) != 1 {
            return Err(FareyError::InvalidFraction(a, b));
        }
        Ok(FareyFraction { a, b })
    }

    pub const ZERO: FareyFraction = FareyFraction { a: 0, b: 1 };
    pub const ONE: FareyFraction = FareyFraction { a: 1, b: 1 };

    pub fn numer(self) -> u64 {
        self.a
    }

    pub fn denom(self) -> u64 {
        self.b
    }

    pub fn to_rational(self) -> Rational {
        Rational::new(self.a, self.b).expect("positive denominator")
    }
}

impl PartialOrd for FareyFraction {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FareyFraction {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.a as u128 * other.b as u128).cmp(&(other.a as u128 * self.b as u128))
    }
}

impl fmt::Display for FareyFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.a, self.b)
    }
}

impl FromStr for FareyFraction {
    type Err = FareyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || FareyError::Parse(s.to_string());
        let (a, b) = s.trim().split_once('/').ok_or_else(bad)?;
        let a = a.trim().parse().map_err(|_| bad())?;
        let b = b.trim().parse().map_err(|_| bad())?;
        FareyFraction::new(a, b)
    }
}

/// Two consecutive terms `a/b < c/d` of `F(n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FareyInterval {
    lo: FareyFraction,
    hi: FareyFraction,
    n: u64,
}

impl FareyInterval {
    /// Checks `bc - ad = 1`, `b, d <= n` and `b + d > n`.
    pub fn new(lo: FareyFraction, hi: FareyFraction, n: u64) -> Result<Self, FareyError> {
        let iv = FareyInterval { lo, hi, n };
        if iv.is_valid_for(n) {
            Ok(iv)
        } else {
            Err(FareyError::NotAdjacent { b: lo.b, d: hi.b, n })
        }
    }

    /// Parses `"a/b,c/d"` and validates it against order `n`.
    pub fn parse(s: &str, n: u64) -> Result<Self, FareyError> {
        let (lo, hi) = s.split_once(',').ok_or_else(|| FareyError::Parse(s.to_string()))?;
        FareyInterval::new(lo.parse()?, hi.parse()?, n)
    }

    /// Whether `lo, hi` are consecutive in `F(order)`. The same pair is
    /// consecutive for every order in `max(b, d) ..= b + d - 1`.
    pub fn is_valid_for(&self, order: u64) -> bool {
        let (a, b, c, d) = self.abcd();
        order >= 1
            && b <= order
            && d <= order
            && b + d > order
            && (b as i128) * (c as i128) - (a as i128) * (d as i128) == 1
    }

    pub fn lo(&self) -> FareyFraction {
        self.lo
    }

    pub fn hi(&self) -> FareyFraction {
        self.hi
    }

    /// The order this interval was constructed for.
    pub fn order(&self) -> u64 {
        self.n
    }

    pub fn abcd(&self) -> (u64, u64, u64, u64) {
        (self.lo.a, self.lo.b, self.hi.a, self.hi.b)
    }

    /// `c/d - a/b = 1/(bd)`.
    pub fn width(&self) -> Rational {
        Rational::new(1, self.lo.b * self.hi.b).expect("positive")
    }

    /// Whether `x` lies strictly between the endpoints.
    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo.to_rational() < x && x < &self.hi.to_rational()
    }
}

impl fmt::Display for FareyInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lo, self.hi)
    }
}

/// All of `F(n)` in increasing order, `0/1` through `1/1`.
pub fn farey_sequence(n: u64) -> Vec<FareyFraction> {
    assert!(n >= 1, "Farey order must be at least 1");
    let mut out = Vec::with_capacity(totient_partial_sum(n) as usize + 1);
    out.extend(FareyIter::new(n));
    out
}

/// Streams `F(n)` from consecutive-neighbour recurrence without storing it.
#[derive(Debug, Clone)]
pub struct FareyIter {
    prev: Option<FareyFraction>,
    cur: Option<FareyFraction>,
    n: u64,
}

impl FareyIter {
    pub fn new(n: u64) -> Self {
        FareyIter { prev: None, cur: Some(FareyFraction::ZERO), n }
    }
}

impl Iterator for FareyIter {
    type Item = FareyFraction;

    fn next(&mut self) -> Option<FareyFraction> {
        let cur = self.cur?;
        let next = match self.prev {
            None => Some(FareyFraction { a: 1, b: self.n }),
            Some(prev) => next_farey(prev, cur, self.n).ok(),
        };
        self.prev = Some(cur);
        self.cur = next;
        Some(cur)
    }
}

/// Successor of `cur` in `F(n)`, given its predecessor `prev`.
pub fn next_farey(prev: FareyFraction, cur: FareyFraction, n: u64) -> Result<FareyFraction, FareyError> {
    if cur == FareyFraction::ONE {
        return Err(FareyError::AtEnd(cur));
    }
    let k = (n + prev.b) / cur.b;
    Ok(FareyFraction { a: k * cur.a - prev.a, b: k * cur.b - prev.b })
}

/// Every interval of `F(n)` from left to right.
pub fn farey_intervals(n: u64) -> impl Iterator<Item = FareyInterval> {
    let mut it = FareyIter::new(n);
    let mut prev = it.next();
    std::iter::from_fn(move || {
        let lo = prev?;
        let hi = it.next()?;
        prev = Some(hi);
        Some(FareyInterval { lo, hi, n })
    })
}

/// The interval of `F(n)` strictly containing `alpha`.
///
/// Walks the Stern–Brocot tree, taking runs of same-direction moves in one
/// step so the cost is logarithmic in the denominator of `alpha`.
pub fn farey_interval_of(alpha: &UnitRational, n: u64) -> Result<FareyInterval, FareyError> {
    if n == 0 {
        return Err(FareyError::ZeroOrder);
    }
    let p = alpha.numer().clone();
    let q = alpha.denom().clone();
    if q <= BigInt::from(n) {
        let a = u64::try_from(&p).expect("fits: p < q <= n");
        let b = u64::try_from(&q).expect("fits: q <= n");
        return Err(FareyError::OnBoundary(FareyFraction { a, b }, n));
    }

    let (mut a, mut b, mut c, mut d) = (0u64, 1u64, 1u64, 1u64);
    loop {
        // Pull the right end leftwards: (c + k a)/(d + k b) stays above alpha
        // while k (p b - a q) < c q - p d.
        let room = (n - d) / b;
        let k = if room == 0 {
            0
        } else {
            let gap = BigInt::from(c) * &q - &p * BigInt::from(d);
            let step = &p * BigInt::from(b) - BigInt::from(a) * &q;
            let max_k = (gap - 1u32).div_floor(&step);
            room.min(u64::try_from(&max_k).unwrap_or(u64::MAX))
        };
        if k > 0 {
            c += k * a;
            d += k * b;
        }

        // Push the left end rightwards: (a + k c)/(b + k d) stays below alpha
        // while k (c q - p d) < p b - a q.
        let room = (n - b) / d;
        let m = if room == 0 {
            0
        } else {
            let gap = &p * BigInt::from(b) - BigInt::from(a) * &q;
            let step = BigInt::from(c) * &q - &p * BigInt::from(d);
            let max_m = (gap - 1u32).div_floor(&step);
            room.min(u64::try_from(&max_m).unwrap_or(u64::MAX))
        };
        if m > 0 {
            a += m * c;
            b += m * d;
        }

        if k == 0 && m == 0 {
            break;
        }
    }
    Ok(FareyInterval {
        lo: FareyFraction { a, b },
        hi: FareyFraction { a: c, b: d },
        n,
    })
}

/// `(a + c)/(b + d)`; in lowest terms because `bc - ad = 1`.
pub fn mediant(iv: &FareyInterval) -> FareyFraction {
    FareyFraction { a: iv.lo.a + iv.hi.a, b: iv.lo.b + iv.hi.b }
}

/// The unique interval of `F(n)` whose endpoints have denominators `b` and
/// `d`, in that order.
pub fn interval_from_denominators(b: u64, d: u64, n: u64) -> Result<FareyInterval, FareyError> {
    let not_adjacent = FareyError::NotAdjacent { b, d, n };
    if b == 0 || d == 0 || b > n || d > n || b + d <= n || b.gcd(&d) != 1 {
        return Err(not_adjacent);
    }
    // a d = -1 (mod b)
    let a = if b == 1 {
        0
    } else {
        let e = (d as i64).extended_gcd(&(b as i64));
        // e.x * d + e.y * b = 1, so a = -e.x mod b.
        (-e.x).rem_euclid(b as i64) as u64
    };
    let c = (1 + a * d) / b;
    let lo = FareyFraction::new(a, b).map_err(|_| not_adjacent.clone())?;
    let hi = FareyFraction::new(c, d).map_err(|_| not_adjacent.clone())?;
    FareyInterval::new(lo, hi, n).map_err(|_| not_adjacent)
}

/// Euler's totient by trial division.
pub fn totient(mut k: u64) -> u64 {
    let mut phi = k;
    let mut p = 2;
    while p * p <= k {
        if k.is_multiple_of(p) {
            while k.is_multiple_of(p) {
                k /= p;
            }
            phi -= phi / p;
        }
        p += 1;
    }
    if k > 1 {
        phi -= phi / k;
    }
    phi
}

/// `φ(1) + … + φ(n)`, the number of intervals in `F(n)`.
pub fn totient_partial_sum(n: u64) -> u64 {
    (1..=n).map(totient).sum()
}
