//! Sós permutations: the lexicographically first permutation `π` of
//! `{0, …, n}` with `f(π(0)) <= … <= f(π(n))` for `f(x) = αx + β mod 1`.
//!
//! Three constructions are provided and cross-checked in tests: sorting the
//! f-values directly, Sós's three-case recurrence on a Farey interval, and
//! cyclic shifting (the effect of raising `β`).

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::exact::{frac_eval, Rational, UnitRational};
use crate::farey::{farey_intervals, totient_partial_sum, FareyInterval};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SosError {
    #[error("interval {interval} is not an interval of F({n})")]
    InvalidInterval { interval: FareyInterval, n: u64 },
    #[error("not a permutation of 0..=n: {0:?}")]
    NotAPermutation(Vec<usize>),
    #[error("cannot parse {0:?} as a permutation")]
    Parse(String),
}

/// A permutation of `{0, …, n}` in one-line form, `n >= 1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SosPerm {
    entries: Vec<usize>,
}

impl SosPerm {
    pub fn new(entries: Vec<usize>) -> Result<Self, SosError> {
        let len = entries.len();
        let mut seen = vec![false; len];
        let ok = len >= 2
            && entries.iter().all(|&e| e < len && !std::mem::replace(&mut seen[e], true));
        if ok {
            Ok(SosPerm { entries })
        } else {
            Err(SosError::NotAPermutation(entries))
        }
    }

    pub fn identity(n: usize) -> Self {
        SosPerm { entries: (0..=n).collect() }
    }

    pub fn n(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn first(&self) -> usize {
        self.entries[0]
    }

    pub fn last(&self) -> usize {
        self.entries[self.n()]
    }

    /// Position of `value` in the one-line form.
    pub fn position(&self, value: usize) -> Option<usize> {
        self.entries.iter().position(|&e| e == value)
    }

    pub fn reversed(&self) -> Self {
        SosPerm { entries: self.entries.iter().rev().copied().collect() }
    }
}

impl std::ops::Index<usize> for SosPerm {
    type Output = usize;
    fn index(&self, i: usize) -> &usize {
        &self.entries[i]
    }
}

/// Digits run together for `n <= 9`, space-separated otherwise.
impl fmt::Display for SosPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n() <= 9 {
            for e in &self.entries {
                write!(f, "{e}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
            f.write_str(&parts.join(" "))
        }
    }
}

impl fmt::Debug for SosPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SosPerm({self})")
    }
}

/// Accepts `"42075316"` (single digits, `n <= 9`) or whitespace/comma
/// separated entries such as `"9 2 7 0 5 3 8 1 6 4"`.
impl FromStr for SosPerm {
    type Err = SosError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || SosError::Parse(s.to_string());
        let t = s.trim();
        let separated = t.contains(|c: char| c.is_whitespace() || c == ',');
        let entries: Vec<usize> = if separated {
            t.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|p| !p.is_empty())
                .map(|p| p.parse().map_err(|_| bad()))
                .collect::<Result<_, _>>()?
        } else {
            if t.len() > 10 {
                return Err(bad());
            }
            t.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad))
                .collect::<Result<_, _>>()?
        };
        SosPerm::new(entries)
    }
}

/// Indices `0..=n` sorted by `(f(i), i)`. Breaking ties by index yields the
/// lexicographically first sorting permutation, so this is total on every
/// `(α, β)`, boundaries included.
pub fn sos_permutation(alpha: &UnitRational, beta: &UnitRational, n: usize) -> SosPerm {
    let mut keyed: Vec<(UnitRational, usize)> =
        (0..=n).map(|i| (frac_eval(alpha, beta, i as u64), i)).collect();
    keyed.sort();
    SosPerm { entries: keyed.into_iter().map(|(_, i)| i).collect() }
}

/// The `β = 0` Sós permutation of a Farey interval `(a/b, c/d)`, built
/// entry by entry: step `+b` from `π(k) <= n - b`, `b - d` from
/// `n - b < π(k) < d`, and `-d` from `π(k) >= d`.
pub fn sos_recurrence(iv: &FareyInterval, n: usize) -> Result<SosPerm, SosError> {
    if n == 0 || !iv.is_valid_for(n as u64) {
        return Err(SosError::InvalidInterval { interval: *iv, n: n as u64 });
    }
    let (_, b, _, d) = iv.abcd();
    let (b, d) = (b as usize, d as usize);
    let mut entries = Vec::with_capacity(n + 1);
    let mut cur = 0usize;
    entries.push(cur);
    for _ in 0..n {
        cur = if cur + b <= n {
            cur + b
        } else if cur < d {
            cur + b - d
        } else {
            cur - d
        };
        entries.push(cur);
    }
    Ok(SosPerm { entries })
}

/// `p ∘ c^k` with `c(i) = i - 1 mod (n + 1)`: the entries rotate right by `k`.
pub fn cyclic_shift(p: &SosPerm, k: i64) -> SosPerm {
    let len = p.entries.len();
    let k = k.rem_euclid(len as i64) as usize;
    let mut entries = p.entries.clone();
    entries.rotate_right(k);
    SosPerm { entries }
}

/// All `n + 1` Sós permutations for a fixed slope, as shifts of the `β = 0`
/// permutation.
pub fn sos_orbit(alpha: &UnitRational, n: usize) -> Vec<SosPerm> {
    let base = sos_permutation(alpha, &UnitRational::zero(), n);
    (0..=n as i64).map(|k| cyclic_shift(&base, k)).collect()
}

/// Every Sós permutation of size `n`: intervals of `F(n)` left to right, and
/// for each the shifts `k = 0..=n`.
pub fn enumerate_sos(n: usize) -> Vec<SosPerm> {
    assert!(n >= 1, "n must be at least 1");
    let mut out = Vec::with_capacity(count_sos(n as u64) as usize);
    for iv in farey_intervals(n as u64) {
        let base = sos_recurrence(&iv, n).expect("intervals of F(n) are valid");
        out.extend((0..=n as i64).map(|k| cyclic_shift(&base, k)));
    }
    out
}

/// `(n + 1) · Σ φ(k)`, without enumerating.
pub fn count_sos(n: u64) -> u64 {
    (n + 1) * totient_partial_sum(n)
}

/// The f-values in sorted order and the circular gaps between them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapProfile {
    pub perm: SosPerm,
    pub sorted_values: Vec<UnitRational>,
    /// `n` consecutive differences followed by the wrap-around gap
    /// `1 - f(π(n)) + f(π(0))`.
    pub gaps: Vec<Rational>,
    pub distinct_gaps: BTreeSet<Rational>,
}

impl GapProfile {
    pub fn wrap_gap(&self) -> &Rational {
        self.gaps.last().expect("n + 1 gaps")
    }

    /// True when at most three gap lengths occur and, if three do, the
    /// largest is the sum of the other two.
    pub fn satisfies_three_gaps(&self) -> bool {
        let v: Vec<&Rational> = self.distinct_gaps.iter().collect();
        match v.len() {
            0..=2 => true,
            3 => &(v[0] + v[1]) == v[2],
            _ => false,
        }
    }
}

pub fn gap_profile(alpha: &UnitRational, beta: &UnitRational, n: usize) -> GapProfile {
    let perm = sos_permutation(alpha, beta, n);
    let sorted_values: Vec<UnitRational> =
        perm.entries.iter().map(|&i| frac_eval(alpha, beta, i as u64)).collect();
    let mut gaps: Vec<Rational> =
        sorted_values.windows(2).map(|w| w[1].get() - w[0].get()).collect();
    gaps.push(Rational::one() - sorted_values[n].get() + sorted_values[0].get());
    let distinct_gaps = gaps.iter().cloned().collect();
    GapProfile { perm, sorted_values, gaps, distinct_gaps }
}
