//! Brute-force oracles.
//!
//! Each oracle evaluates Sós permutations only by sorting f-values
//! ([`sos_permutation`] / [`gap_profile`]) and compares the result with the
//! constructive machinery of the other modules. Violations are collected as
//! data in an [`OracleReport`] rather than aborting on the first one.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::exact::{Rational, UnitRational};
use crate::farey::{farey_interval_of, farey_intervals, FareyInterval};
use crate::geometry::partition;
use crate::sosperm::{count_sos, enumerate_sos, gap_profile, sos_permutation, sos_recurrence, SosPerm};

/// Failures beyond this many are counted but not stored.
const MAX_STORED_FAILURES: usize = 1000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub check: String,
    pub witness: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub oracle: String,
    pub n: usize,
    pub checks_run: u64,
    pub stats: BTreeMap<String, u64>,
    pub failures: Vec<Failure>,
}

impl OracleReport {
    fn new(oracle: &str, n: usize) -> Self {
        OracleReport { oracle: oracle.to_string(), n, checks_run: 0, stats: BTreeMap::new(), failures: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn stat(&self, key: &str) -> u64 {
        self.stats.get(key).copied().unwrap_or(0)
    }

    fn fail(&mut self, check: &str, witness: impl ToString, expected: impl ToString, actual: impl ToString) {
        *self.stats.entry("failures_total".into()).or_insert(0) += 1;
        if self.failures.len() < MAX_STORED_FAILURES {
            self.failures.push(Failure {
                check: check.to_string(),
                witness: witness.to_string(),
                expected: expected.to_string(),
                actual: actual.to_string(),
            });
        }
    }

    /// Runs one check, recording a failure when `ok` is false.
    fn check(&mut self, ok: bool, check: &str, witness: impl ToString, expected: impl ToString, actual: impl ToString) {
        self.checks_run += 1;
        if !ok {
            self.fail(check, witness, expected, actual);
        }
    }
}

/// `{(i, j) : i < j, p(i) > p(j)}`.
pub fn inversion_set(p: &SosPerm) -> BTreeSet<(usize, usize)> {
    let e = p.entries();
    let mut out = BTreeSet::new();
    for i in 0..e.len() {
        for j in i + 1..e.len() {
            if e[i] > e[j] {
                out.insert((i, j));
            }
        }
    }
    out
}

fn unit(r: Rational) -> UnitRational {
    UnitRational::new(r).expect("grid point in [0, 1)")
}

/// True if `(alpha, beta)` lies on `α = a/b` with `b <= n`, or on some line
/// `iα + β = j` with `1 <= i <= n`.
fn on_partition_line(alpha: &Rational, beta: &Rational, n: usize) -> bool {
    if alpha.denom() <= &n.into() {
        return true;
    }
    (1..=n as u64).any(|i| (Rational::from(i) * alpha + beta).is_integer())
}

/// Samples the cell centres `((2i+1)/2g, (2j+1)/2g)` of a `grid × grid`
/// lattice, labels each by sorting, and checks that exactly one domain of
/// the partition claims the point and carries that label. Points on a
/// partition line are skipped.
pub fn oracle_partition_check(n: usize, grid: usize) -> OracleReport {
    let mut report = OracleReport::new("partition", n);
    if grid < 2 * n * n {
        report.fail("precondition", format!("grid = {grid}"), format!(">= {}", 2 * n * n), grid);
        return report;
    }
    let part = partition(n);
    let mut by_strip: HashMap<FareyInterval, Vec<usize>> = HashMap::new();
    for (idx, d) in part.domains.iter().enumerate() {
        by_strip.entry(d.interval).or_default().push(idx);
    }

    struct Row {
        skipped: u64,
        hits: Vec<usize>,
        failures: Vec<(String, String, String, String)>,
    }

    let g2 = 2 * grid as i64;
    let rows: Vec<Row> = (0..grid)
        .into_par_iter()
        .map(|i| {
            let alpha = Rational::frac(2 * i as i64 + 1, g2);
            let ualpha = unit(alpha.clone());
            let mut row = Row { skipped: 0, hits: Vec::new(), failures: Vec::new() };
            let strip = farey_interval_of(&ualpha, n as u64).ok().and_then(|iv| by_strip.get(&iv));
            for j in 0..grid {
                let beta = Rational::frac(2 * j as i64 + 1, g2);
                if on_partition_line(&alpha, &beta, n) {
                    row.skipped += 1;
                    continue;
                }
                let witness = format!("({alpha}, {beta})");
                let label = sos_permutation(&ualpha, &unit(beta.clone()), n);
                let Some(strip) = strip else {
                    row.failures.push(("strip".into(), witness, "a strip of F(n)".into(), "none".into()));
                    continue;
                };
                let claims: Vec<usize> =
                    strip.iter().copied().filter(|&k| part.domains[k].contains(&alpha, &beta)).collect();
                match claims.as_slice() {
                    [k] => {
                        let found = &part.domains[*k].perm;
                        if *found == label {
                            row.hits.push(*k);
                        } else {
                            row.failures.push(("label".into(), witness, label.to_string(), found.to_string()));
                        }
                    }
                    other => {
                        let names: Vec<String> = other.iter().map(|k| part.domains[*k].perm.to_string()).collect();
                        row.failures.push(("located_domains".into(), witness, "exactly one".into(), names.join(" ")));
                    }
                }
            }
            row
        })
        .collect();

    let mut hit = vec![false; part.domains.len()];
    let mut skipped = 0;
    for row in rows {
        skipped += row.skipped;
        for k in row.hits {
            hit[k] = true;
        }
        for (c, w, e, a) in row.failures {
            report.fail(&c, w, e, a);
        }
    }
    report.checks_run = (grid * grid) as u64;
    let domains_hit = hit.iter().filter(|h| **h).count();
    report.stats.insert("grid_points".into(), (grid * grid) as u64);
    report.stats.insert("skipped_on_lines".into(), skipped);
    report.stats.insert("domains_total".into(), part.domains.len() as u64);
    report.stats.insert("domains_hit".into(), domains_hit as u64);
    if grid >= 4 * n * n * n {
        for (k, d) in part.domains.iter().enumerate().filter(|(k, _)| !hit[*k]) {
            report.fail("coverage", &d.perm, "at least one grid point", format!("domain #{k} missed"));
        }
    }
    report
}

/// Interval → recurrence is injective, agrees with a random `β = 0` sample
/// inside each interval, and the full enumeration has the predicted size.
pub fn oracle_bijection_check(n: usize) -> OracleReport {
    let mut report = OracleReport::new("bijection", n);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 + n as u64);
    let mut seen: HashMap<SosPerm, FareyInterval> = HashMap::new();
    let mut intervals = 0;
    for iv in farey_intervals(n as u64) {
        intervals += 1;
        let rec = match sos_recurrence(&iv, n) {
            Ok(p) => p,
            Err(e) => {
                report.check(false, "recurrence", iv, "a permutation", e);
                continue;
            }
        };
        let dup = seen.insert(rec.clone(), iv);
        report.check(dup.is_none(), "injective", &rec, iv, dup.map(|d| d.to_string()).unwrap_or_default());

        let den: i64 = rng.gen_range(2..=1_000_000);
        let t = Rational::frac(rng.gen_range(1..den), den);
        let alpha = unit(iv.lo().to_rational() + iv.width() * t);
        let sample = sos_permutation(&alpha, &UnitRational::zero(), n);
        report.check(sample == rec, "beta_zero_sample", format!("alpha = {alpha}"), &rec, &sample);
        let located = farey_interval_of(&alpha, n as u64);
        report.check(
            located.as_ref() == Ok(&iv),
            "interval_location",
            format!("alpha = {alpha}"),
            iv,
            format!("{located:?}"),
        );
    }
    let all = enumerate_sos(n);
    let distinct: BTreeSet<&SosPerm> = all.iter().collect();
    let expected = count_sos(n as u64);
    report.check(all.len() as u64 == expected, "count", n, expected, all.len());
    report.check(distinct.len() == all.len(), "distinct", n, all.len(), distinct.len());
    report.stats.insert("intervals".into(), intervals);
    report.stats.insert("permutations".into(), all.len() as u64);
    report
}

fn random_unit(rng: &mut ChaCha8Rng) -> UnitRational {
    let den: i64 = rng.gen_range(1..=1_000_000);
    UnitRational::frac(rng.gen_range(0..den), den)
}

fn fmt_set(s: &BTreeSet<Rational>) -> String {
    let v: Vec<String> = s.iter().map(|r| r.to_string()).collect();
    format!("{{{}}}", v.join(", "))
}

/// Seeded random `(α, β)` with denominators up to 10⁶: at most three gap
/// lengths, the largest the sum of the others when three occur; the gap
/// multiset does not depend on `β`; at `β = 0` with `α` inside `(a/b, c/d)`
/// the first and wrap gaps are `bα - a` and `c - dα` and every gap is one of
/// those or their sum; at `α = a/b`, `b <= n`, gaps lie in `{0, 1/b}`.
pub fn oracle_three_gaps(n: usize, trials: usize, seed: u64) -> OracleReport {
    let mut report = OracleReport::new("three_gaps", n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let zero = UnitRational::zero();
    let mut interior = 0;
    for _ in 0..trials {
        let alpha = random_unit(&mut rng);
        let beta = random_unit(&mut rng);
        let witness = format!("alpha = {alpha}, beta = {beta}");
        let g = gap_profile(&alpha, &beta, n);

        let total: Rational = g.gaps.iter().sum();
        report.check(total == Rational::one(), "gap_sum", &witness, 1, &total);
        report.check(g.distinct_gaps.len() <= 3, "at_most_three", &witness, "<= 3", fmt_set(&g.distinct_gaps));
        report.check(g.satisfies_three_gaps(), "largest_is_sum", &witness, "max = sum of others", fmt_set(&g.distinct_gaps));

        let g0 = gap_profile(&alpha, &zero, n);
        let mut shifted = g.gaps.clone();
        let mut base = g0.gaps.clone();
        shifted.sort();
        base.sort();
        report.check(shifted == base, "rotation_invariance", &witness, fmt_set(&g0.distinct_gaps), fmt_set(&g.distinct_gaps));

        if let Ok(iv) = farey_interval_of(&alpha, n as u64) {
            interior += 1;
            let (a, b, c, d) = iv.abcd();
            let first = Rational::from(b) * alpha.get() - Rational::from(a);
            let last = Rational::from(c) - Rational::from(d) * alpha.get();
            let w = format!("alpha = {alpha}, interval {iv}");
            report.check(g0.gaps[0] == first, "first_gap", &w, &first, &g0.gaps[0]);
            report.check(g0.wrap_gap() == &last, "wrap_gap", &w, &last, g0.wrap_gap());
            let allowed: BTreeSet<Rational> = [first.clone(), last.clone(), &first + &last].into_iter().collect();
            report.check(
                g0.distinct_gaps.is_subset(&allowed),
                "gaps_in_first_last_sum",
                &w,
                fmt_set(&allowed),
                fmt_set(&g0.distinct_gaps),
            );
        }

        let b: u64 = rng.gen_range(1..=n as u64);
        let a: u64 = loop {
            let a = rng.gen_range(0..b.max(1));
            if num_integer::gcd(a, b) == 1 {
                break a;
            }
        };
        let g = gap_profile(&UnitRational::frac(a as i64, b as i64), &zero, n);
        let allowed: BTreeSet<Rational> = [Rational::zero(), Rational::frac(1, b as i64)].into_iter().collect();
        report.check(
            g.distinct_gaps.is_subset(&allowed),
            "rational_slope_gaps",
            format!("alpha = {a}/{b}"),
            fmt_set(&allowed),
            fmt_set(&g.distinct_gaps),
        );
    }
    report.stats.insert("trials".into(), trials as u64);
    report.stats.insert("interior_slopes".into(), interior);
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> SosPerm {
        s.parse().unwrap()
    }

    /// Inversion count by merge sort, independent of the pair scan.
    fn merge_count(v: &mut Vec<usize>) -> usize {
        if v.len() < 2 {
            return 0;
        }
        let mut right = v.split_off(v.len() / 2);
        let mut count = merge_count(v) + merge_count(&mut right);
        let mut merged = Vec::with_capacity(v.len() + right.len());
        let (mut i, mut j) = (0, 0);
        while i < v.len() && j < right.len() {
            if v[i] <= right[j] {
                merged.push(v[i]);
                i += 1;
            } else {
                merged.push(right[j]);
                count += v.len() - i;
                j += 1;
            }
        }
        merged.extend_from_slice(&v[i..]);
        merged.extend_from_slice(&right[j..]);
        *v = merged;
        count
    }

    #[test]
    fn inversions() {
        assert_eq!(inversion_set(&p("021")), [(1, 2)].into_iter().collect());
        assert!(inversion_set(&SosPerm::identity(9)).is_empty());
        let q = p("42075316");
        assert_eq!(inversion_set(&q).len(), 13);
        assert_eq!(merge_count(&mut q.entries().to_vec()), 13);
        for perm in enumerate_sos(8) {
            assert_eq!(inversion_set(&perm).len(), merge_count(&mut perm.entries().to_vec()));
        }
    }

    #[test]
    fn inversion_sets_identify_permutations() {
        let perms = enumerate_sos(6);
        let sets: BTreeSet<_> = perms.iter().map(inversion_set).collect();
        assert_eq!(sets.len(), perms.len());
    }

    #[test]
    fn partition_oracle_small() {
        let r = oracle_partition_check(2, 16);
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!(r.checks_run, 256);
        assert_eq!(r.stat("domains_hit"), 6);
        let r = oracle_partition_check(3, 64);
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!(r.stat("domains_hit"), 16);
    }

    #[test]
    fn partition_oracle_precondition() {
        let r = oracle_partition_check(4, 10);
        assert!(!r.passed());
        assert_eq!(r.failures[0].check, "precondition");
    }

    #[test]
    fn partition_oracle_requires_coverage_when_dense() {
        let r = oracle_partition_check(2, 32);
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!(r.stat("domains_hit"), r.stat("domains_total"));
    }

    #[test]
    fn bijection_oracle() {
        let r = oracle_bijection_check(7);
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!((r.stat("intervals"), r.stat("permutations")), (18, 144));
        let r = oracle_bijection_check(1);
        assert!(r.passed());
        assert_eq!((r.stat("intervals"), r.stat("permutations")), (1, 2));
        let r = oracle_bijection_check(10);
        assert!(r.passed());
        assert_eq!((r.stat("intervals"), r.stat("permutations")), (32, 352));
    }

    #[test]
    fn three_gaps_oracle() {
        for (n, trials, seed) in [(7, 300, 42), (1, 10, 0), (20, 200, 7)] {
            let r = oracle_three_gaps(n, trials, seed);
            assert!(r.passed(), "{:?}", r.failures);
        }
    }

    #[test]
    fn oracles_are_deterministic() {
        let a = serde_json::to_string(&oracle_three_gaps(9, 50, 123)).unwrap();
        let b = serde_json::to_string(&oracle_three_gaps(9, 50, 123)).unwrap();
        assert_eq!(a, b);
        let a = serde_json::to_string(&oracle_partition_check(3, 40)).unwrap();
        let b = serde_json::to_string(&oracle_partition_check(3, 40)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn line_detection() {
        assert!(on_partition_line(&Rational::frac(1, 2), &Rational::frac(1, 7), 2));
        assert!(on_partition_line(&Rational::frac(1, 32), &Rational::frac(31, 32), 2));
        assert!(!on_partition_line(&Rational::frac(1, 32), &Rational::frac(29, 32), 2));
    }
}
