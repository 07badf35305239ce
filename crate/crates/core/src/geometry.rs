//! Domains `S(π)` in the `(α, β)` unit square.
//!
//! A Sós permutation `π` with `π(k) = 0` sits in the vertical strip over the
//! Farey interval `(a/b, c/d)` where `b = π(k + 1)` and `d = π(k - 1)`
//! (indices cyclic). Inside the strip it is cut out by the two oblique lines
//!
//! ```text
//! π(0)·α + β = j_bot      (below, inclusive)
//! π(n)·α + β = j_top      (above, exclusive)
//! ```
//!
//! so every domain is a triangle or a trapezoid with rational corners, and
//! its area is one of three values per strip.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::exact::Rational;
use crate::farey::{farey_intervals, interval_from_denominators, FareyFraction, FareyInterval};
use crate::sosperm::{cyclic_shift, sos_recurrence, SosError, SosPerm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("{0} is not a Sós permutation")]
    NotSosPermutation(SosPerm),
    #[error(transparent)]
    InvalidInterval(#[from] SosError),
    #[error("n = {0} is too small (need n >= 2)")]
    DegenerateN(usize),
    #[error("{0} is not a term of F({1})")]
    NotInFarey(FareyFraction, u64),
    #[error("index {k} out of range for n = {n}")]
    IndexOutOfRange { k: usize, n: usize },
    #[error("domain of {perm}: {detail}")]
    BrokenInvariant { perm: SosPerm, detail: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Shape {
    /// A triangle with one side on the left edge `α = a/b`.
    TriangleLeft,
    /// A triangle with one side on the right edge `α = c/d`.
    TriangleRight,
    Trapezoid,
}

impl Shape {
    pub fn as_str(self) -> &'static str {
        match self {
            Shape::TriangleLeft => "triangle_left",
            Shape::TriangleRight => "triangle_right",
            Shape::Trapezoid => "trapezoid",
        }
    }

    pub fn from_name(s: &str) -> Option<Shape> {
        match s {
            "triangle_left" => Some(Shape::TriangleLeft),
            "triangle_right" => Some(Shape::TriangleRight),
            "trapezoid" => Some(Shape::Trapezoid),
            _ => None,
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub alpha: Rational,
    pub beta: Rational,
}

impl Point {
    pub fn new(alpha: Rational, beta: Rational) -> Self {
        Point { alpha, beta }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Domain {
    pub perm: SosPerm,
    pub interval: FareyInterval,
    pub j_bot: u64,
    pub j_top: u64,
    /// Corners of the closure, counterclockwise from the bottom-left.
    pub vertices: Vec<Point>,
    pub shape: Shape,
    pub area: Rational,
}

impl Domain {
    /// `β` on the lower boundary line at `alpha`.
    pub fn bottom_at(&self, alpha: &Rational) -> Rational {
        Rational::from(self.j_bot) - Rational::from(self.perm.first() as u64) * alpha
    }

    /// `β` on the upper boundary line at `alpha`.
    pub fn top_at(&self, alpha: &Rational) -> Rational {
        Rational::from(self.j_top) - Rational::from(self.perm.last() as u64) * alpha
    }

    /// Membership for `α` strictly inside the strip, with the lower edge
    /// included and the upper edge excluded. Points on the strip's vertical
    /// edges are never claimed; evaluate the permutation directly there.
    pub fn contains(&self, alpha: &Rational, beta: &Rational) -> bool {
        self.interval.contains(alpha) && &self.bottom_at(alpha) <= beta && beta < &self.top_at(alpha)
    }

    /// Membership in the closed polygon.
    pub fn closure_contains(&self, alpha: &Rational, beta: &Rational) -> bool {
        let lo = self.interval.lo().to_rational();
        let hi = self.interval.hi().to_rational();
        &lo <= alpha && alpha <= &hi && &self.bottom_at(alpha) <= beta && beta <= &self.top_at(alpha)
    }

    /// The area from the closed form
    /// `(1/bd)(j_top - j_bot + (a/b + c/d)(π(0) - π(n))/2)`.
    pub fn closed_form_area(&self) -> Rational {
        closed_form_area(&self.interval, self.j_bot, self.j_top, self.perm.first(), self.perm.last())
    }

    /// An interior point: the strip's mediant, halfway up the domain.
    pub fn representative_point(&self) -> Point {
        let m = crate::farey::mediant(&self.interval).to_rational();
        let mid = (self.bottom_at(&m) + self.top_at(&m)) / Rational::from(2i64);
        Point::new(m, mid)
    }
}

fn closed_form_area(iv: &FareyInterval, j_bot: u64, j_top: u64, first: usize, last: usize) -> Rational {
    let (lo, hi) = (iv.lo().to_rational(), iv.hi().to_rational());
    let slope_term = (lo + hi) * Rational::frac(first as i64 - last as i64, 2);
    iv.width() * (Rational::from(j_top as i64 - j_bot as i64) + slope_term)
}

/// Twice-signed-area formula over a closed polygon.
pub fn shoelace_area(vertices: &[Point]) -> Rational {
    let n = vertices.len();
    let twice: Rational = (0..n)
        .map(|i| {
            let (p, q) = (&vertices[i], &vertices[(i + 1) % n]);
            &p.alpha * &q.beta - &q.alpha * &p.beta
        })
        .sum();
    twice.abs() / Rational::from(2i64)
}

/// The domain of a genuine Sós permutation.
pub fn domain_of(p: &SosPerm) -> Result<Domain, GeometryError> {
    let not_sos = || GeometryError::NotSosPermutation(p.clone());
    let n = p.n();
    let k = p.position(0).expect("permutation contains 0");
    let d = p[(k + n) % (n + 1)];
    let b = p[(k + 1) % (n + 1)];
    let iv = interval_from_denominators(b as u64, d as u64, n as u64).map_err(|_| not_sos())?;
    let base = sos_recurrence(&iv, n).map_err(|_| not_sos())?;
    if &cyclic_shift(&base, k as i64) != p {
        return Err(not_sos());
    }
    build_domain(p.clone(), iv)
}

/// Bounding lines, corners, shape and area of a permutation already known
/// to belong to the strip over `iv`.
fn build_domain(perm: SosPerm, iv: FareyInterval) -> Result<Domain, GeometryError> {
    let broken = |detail: String| GeometryError::BrokenInvariant { perm: perm.clone(), detail };
    let (a, b, _, _) = iv.abcd();
    let (first, last) = (perm.first() as u64, perm.last() as u64);
    let j_bot = if first == 0 { 0 } else { 1 + (a * first) / b };
    let j_top = 1 + (a * last) / b;

    let lo = iv.lo().to_rational();
    let hi = iv.hi().to_rational();
    let bottom = |x: &Rational| Rational::from(j_bot) - Rational::from(first) * x;
    let top = |x: &Rational| Rational::from(j_top) - Rational::from(last) * x;
    let (bot_l, bot_r, top_l, top_r) = (bottom(&lo), bottom(&hi), top(&lo), top(&hi));

    if bot_l > top_l || bot_r > top_r {
        return Err(broken("boundary lines cross inside the strip".into()));
    }
    let zero = Rational::zero();
    let one = Rational::one();
    if [&bot_l, &bot_r, &top_l, &top_r].iter().any(|v| **v < zero || **v > one) {
        return Err(broken("a corner leaves the unit square".into()));
    }

    // The oblique lines meet at α = (j_top - j_bot) / (π(n) - π(0)), which
    // can only be an endpoint of the strip or outside it.
    let meet = Rational::from(j_top as i64 - j_bot as i64) / Rational::from(last as i64 - first as i64);
    let shape = if meet == hi {
        Shape::TriangleLeft
    } else if meet == lo {
        Shape::TriangleRight
    } else if lo < meet && meet < hi {
        return Err(broken(format!("oblique lines meet at interior abscissa {meet}")));
    } else {
        Shape::Trapezoid
    };

    let mut vertices = vec![Point::new(lo.clone(), bot_l.clone()), Point::new(hi.clone(), bot_r.clone())];
    if shape != Shape::TriangleLeft {
        vertices.push(Point::new(hi, top_r));
    }
    if shape != Shape::TriangleRight {
        vertices.push(Point::new(lo, top_l));
    }

    let area = closed_form_area(&iv, j_bot, j_top, perm.first(), perm.last());
    if area <= zero {
        return Err(broken(format!("non-positive area {area}")));
    }
    Ok(Domain { perm, interval: iv, j_bot, j_top, vertices, shape, area })
}

/// The `n + 1` domains over one Farey interval, top to bottom.
pub fn strip_regions(iv: &FareyInterval, n: usize) -> Result<Vec<Domain>, GeometryError> {
    let base = sos_recurrence(iv, n)?;
    (0..=n as i64).rev().map(|k| build_domain(cyclic_shift(&base, k), *iv)).collect()
}

/// Summary of one strip's area values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StripAreas {
    /// `d·w²/2`, the left-edge triangle.
    pub left_triangle: Rational,
    /// `b·w²/2`, the right-edge triangle.
    pub right_triangle: Rational,
    /// `(b + d)·w²/2`.
    pub trapezoid: Rational,
    /// Number of domains of each shape.
    pub counts: BTreeMap<Shape, usize>,
    pub distinct: BTreeSet<Rational>,
    pub total: Rational,
}

impl StripAreas {
    pub fn of(iv: &FareyInterval, domains: &[Domain]) -> Self {
        let (_, b, _, d) = iv.abcd();
        let half_w2 = iv.width() * iv.width() / Rational::from(2i64);
        let mut counts = BTreeMap::new();
        for dom in domains {
            *counts.entry(dom.shape).or_insert(0) += 1;
        }
        StripAreas {
            left_triangle: &half_w2 * Rational::from(d),
            right_triangle: &half_w2 * Rational::from(b),
            trapezoid: &half_w2 * Rational::from(b + d),
            counts,
            distinct: domains.iter().map(|d| d.area.clone()).collect(),
            total: domains.iter().map(|d| &d.area).sum(),
        }
    }

    pub fn expected_area(&self, shape: Shape) -> &Rational {
        match shape {
            Shape::TriangleLeft => &self.left_triangle,
            Shape::TriangleRight => &self.right_triangle,
            Shape::Trapezoid => &self.trapezoid,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    pub n: usize,
    /// Strips left to right, each top to bottom.
    pub domains: Vec<Domain>,
}

impl Partition {
    pub fn total_area(&self) -> Rational {
        self.domains.iter().map(|d| &d.area).sum()
    }

    /// Consecutive runs of `n + 1` domains sharing a strip.
    pub fn strips(&self) -> impl Iterator<Item = &[Domain]> {
        self.domains.chunks(self.n + 1)
    }
}

pub fn partition(n: usize) -> Partition {
    assert!(n >= 1, "n must be at least 1");
    let intervals: Vec<FareyInterval> = farey_intervals(n as u64).collect();
    let strips: Vec<Vec<Domain>> = intervals
        .par_iter()
        .map(|iv| strip_regions(iv, n).expect("every interval of F(n) yields a valid strip"))
        .collect();
    Partition { n, domains: strips.into_iter().flatten().collect() }
}

/// The permutations of size `n + 1` whose domains tile `S(p)`.
pub fn refine(p: &SosPerm) -> Result<Vec<SosPerm>, GeometryError> {
    let parent = domain_of(p)?;
    refine_within(&parent, &partition(p.n() + 1))
}

/// [`refine`] against a precomputed partition of size `n + 1`.
pub fn refine_within(parent: &Domain, finer: &Partition) -> Result<Vec<SosPerm>, GeometryError> {
    assert_eq!(finer.n, parent.perm.n() + 1, "partition must be one size larger");
    let (plo, phi) = (parent.interval.lo(), parent.interval.hi());
    let children: Vec<&Domain> = finer
        .domains
        .iter()
        .filter(|c| c.interval.lo() >= plo && c.interval.hi() <= phi)
        .filter(|c| c.vertices.iter().all(|v| parent.closure_contains(&v.alpha, &v.beta)))
        .collect();
    let covered: Rational = children.iter().map(|c| &c.area).sum();
    if covered != parent.area {
        return Err(GeometryError::BrokenInvariant {
            perm: parent.perm.clone(),
            detail: format!("children cover {covered}, domain area is {}", parent.area),
        });
    }
    Ok(children.into_iter().map(|c| c.perm.clone()).collect())
}

/// Heights in `(0, 1]` where the lines `iα + β = j`, `1 <= j <= i <= n`,
/// cross the vertical line `α = a/b`; a crossing at `β = 0` is reported as
/// `β = 1`. The result is always `1/b, 2/b, …, 1`.
pub fn crossing_coordinates(edge: FareyFraction, n: u64) -> Result<Vec<Rational>, GeometryError> {
    if edge.denom() > n {
        return Err(GeometryError::NotInFarey(edge, n));
    }
    let x = edge.to_rational();
    let zero = Rational::zero();
    let one = Rational::one();
    let mut out = BTreeSet::new();
    for i in 1..=n {
        for j in 1..=i {
            let beta = Rational::from(j) - Rational::from(i) * &x;
            if beta == zero {
                out.insert(one.clone());
            } else if zero < beta && beta <= one {
                out.insert(beta);
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// `∫ δ_k(α) dα` over the interval, where `δ_k` is the `k`-th gap of the
/// `β = 0` point set as a linear function of `α`: `bα - a`, `c - dα`, or
/// their sum, according to where `π(k)` falls.
pub fn gap_area_integral(iv: &FareyInterval, n: usize, k: usize) -> Result<Rational, GeometryError> {
    let pi = sos_recurrence(iv, n)?;
    if k > n {
        return Err(GeometryError::IndexOutOfRange { k, n });
    }
    let (a, b, c, d) = iv.abcd();
    let (a, b, c, d) = (a as i64, b as i64, c as i64, d as i64);
    // gap(α) = slope·α + offset
    let left = (b, -a);
    let right = (-d, c);
    let (slope, offset) = if k == n {
        right
    } else {
        let p = pi[k] as i64;
        if p <= n as i64 - b {
            left
        } else if p < d {
            (left.0 + right.0, left.1 + right.1)
        } else {
            right
        }
    };
    let lo = iv.lo().to_rational();
    let hi = iv.hi().to_rational();
    let sq = &hi * &hi - &lo * &lo;
    Ok(Rational::from(slope) * sq / Rational::from(2i64) + Rational::from(offset) * (hi - lo))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AreaExtremes {
    pub min: Rational,
    pub min_perms: BTreeSet<SosPerm>,
    pub max: Rational,
    pub max_perms: BTreeSet<SosPerm>,
}

/// Smallest and largest domain areas over the whole partition, found by
/// scanning it.
pub fn area_extremes(n: usize) -> Result<AreaExtremes, GeometryError> {
    if n < 2 {
        return Err(GeometryError::DegenerateN(n));
    }
    let part = partition(n);
    let min = part.domains.iter().map(|d| &d.area).min().expect("nonempty").clone();
    let max = part.domains.iter().map(|d| &d.area).max().expect("nonempty").clone();
    let with = |target: &Rational| -> BTreeSet<SosPerm> {
        part.domains.iter().filter(|d| &d.area == target).map(|d| d.perm.clone()).collect()
    };
    Ok(AreaExtremes { min_perms: with(&min), max_perms: with(&max), min, max })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::UnitRational;
    use crate::farey::mediant;
    use crate::sosperm::{count_sos, enumerate_sos, sos_permutation};

    fn p(s: &str) -> SosPerm {
        s.parse().unwrap()
    }

    fn iv(s: &str, n: u64) -> FareyInterval {
        FareyInterval::parse(s, n).unwrap()
    }

    fn unit(r: &Rational) -> UnitRational {
        UnitRational::wrap(r)
    }

    #[test]
    fn worked_domain() {
        let d = domain_of(&p("9 2 7 0 5 3 8 1 6 4")).unwrap();
        assert_eq!(d.interval.abcd(), (2, 5, 3, 7));
        assert_eq!((d.j_bot, d.j_top), (4, 2));
        assert_eq!(d.area, Rational::frac(1, 490));
        assert_eq!(d.shape, Shape::TriangleRight);
        assert_eq!(shoelace_area(&d.vertices), d.area);
        assert_eq!(d.vertices.len(), 3);
        // The random point used to discover it lies inside.
        assert!(d.contains(&Rational::frac(42, 100), &Rational::frac(31, 100)));
    }

    #[test]
    fn identity_domain() {
        for n in 1..=12 {
            let d = domain_of(&SosPerm::identity(n)).unwrap();
            assert_eq!(d.interval.abcd(), (0, 1, 1, n as u64));
            assert_eq!((d.j_bot, d.j_top), (0, 1));
            assert_eq!(d.area, Rational::frac(1, 2 * n as i64));
            assert_eq!(d.shape, Shape::TriangleLeft);
        }
    }

    #[test]
    fn small_domain_matches_grid() {
        // 021 at n = 2: brute-force membership over a 200 x 200 grid of cell
        // centres, against the polygon.
        let d = domain_of(&p("021")).unwrap();
        assert_eq!(d.interval.abcd(), (1, 2, 1, 1));
        assert_eq!((d.j_bot, d.j_top), (0, 1));
        assert_eq!(d.area, Rational::frac(1, 8));
        let g = 200i64;
        let mut hits = 0;
        for i in 0..g {
            for j in 0..g {
                let (x, y) = (Rational::frac(2 * i + 1, 2 * g), Rational::frac(2 * j + 1, 2 * g));
                let label = sos_permutation(&unit(&x), &unit(&y), 2);
                let inside = d.contains(&x, &y);
                if inside {
                    hits += 1;
                }
                let on_line = (&x + &y).is_integer() || (Rational::from(2i64) * &x + &y).is_integer() || x == Rational::frac(1, 2);
                if !on_line {
                    assert_eq!(label == d.perm, inside, "({x}, {y})");
                }
            }
        }
        // An eighth of the cells, give or take the cells split by the lines.
        assert!((hits - 5_000i64).abs() <= 2 * g, "hits = {hits}");
    }

    #[test]
    fn rejects_non_sos() {
        assert!(matches!(domain_of(&p("0231")), Err(GeometryError::NotSosPermutation(_))));
        assert!(matches!(domain_of(&p("10234")), Err(GeometryError::NotSosPermutation(_))));
        // Right neighbours of 0 but not a rotation of the recurrence.
        assert!(matches!(domain_of(&p("0132")), Err(GeometryError::NotSosPermutation(_))));
    }

    #[test]
    fn strip_examples() {
        let regions = strip_regions(&iv("2/5,3/7", 9), 9).unwrap();
        assert_eq!(regions.len(), 10);
        let allowed: BTreeSet<_> =
            [Rational::frac(1, 350), Rational::frac(1, 490), Rational::frac(6, 1225)].into_iter().collect();
        let areas: BTreeSet<_> = regions.iter().map(|d| d.area.clone()).collect();
        assert!(areas.is_subset(&allowed));
        assert_eq!(Rational::frac(1, 350) + Rational::frac(1, 490), Rational::frac(6, 1225));
        assert_eq!(regions.iter().map(|d| &d.area).sum::<Rational>(), Rational::frac(1, 35));

        let regions = strip_regions(&iv("0/1,1/2", 2), 2).unwrap();
        let mut areas: Vec<_> = regions.iter().map(|d| d.area.clone()).collect();
        areas.sort();
        assert_eq!(areas, vec![Rational::frac(1, 8), Rational::frac(1, 8), Rational::frac(1, 4)]);
        assert!(regions.iter().all(|d| d.shape != Shape::Trapezoid));

        let regions = strip_regions(&iv("0/1,1/1", 1), 1).unwrap();
        assert_eq!(regions.len(), 2);
        assert!(regions.iter().all(|d| d.area == Rational::frac(1, 2)));
        assert_eq!(regions[0].perm, p("10"));
        assert_eq!(regions[1].perm, p("01"));

        assert!(strip_regions(&iv("2/5,3/7", 9), 4).is_err());
    }

    #[test]
    fn partition_totals() {
        for n in 1..=25 {
            let part = partition(n);
            assert_eq!(part.domains.len() as u64, count_sos(n as u64), "n = {n}");
            assert_eq!(part.total_area(), Rational::one(), "n = {n}");
        }
        assert_eq!(partition(4).domains.len(), 30);
    }

    #[test]
    fn partition_labels_match_enumeration() {
        for n in 1..=10 {
            let from_part: BTreeSet<_> = partition(n).domains.into_iter().map(|d| d.perm).collect();
            let enumerated: BTreeSet<_> = enumerate_sos(n).into_iter().collect();
            assert_eq!(from_part, enumerated);
        }
        let known: BTreeSet<_> = [
            "0123", "3012", "2301", "1230", "0312", "2031", "1203", "3120", "0213", "3021", "1302", "2130",
            "0321", "1032", "2103", "3210",
        ]
        .iter()
        .map(|s| p(s))
        .collect();
        let three: BTreeSet<_> = partition(3).domains.into_iter().map(|d| d.perm).collect();
        assert_eq!(three, known);
    }

    #[test]
    fn shoelace_matches_closed_form_and_stays_in_square() {
        for n in 1..=14 {
            for d in partition(n).domains {
                assert_eq!(shoelace_area(&d.vertices), d.area, "{}", d.perm);
                assert_eq!(d.closed_form_area(), d.area);
                let expected = StripAreas::of(&d.interval, std::slice::from_ref(&d));
                assert_eq!(&d.area, expected.expected_area(d.shape));
                for v in &d.vertices {
                    assert!(v.beta >= Rational::zero() && v.beta <= Rational::one());
                }
            }
        }
    }

    #[test]
    fn membership_and_half_open_edges() {
        for n in 1..=12 {
            for d in partition(n).domains {
                let r = d.representative_point();
                assert_eq!(sos_permutation(&unit(&r.alpha), &unit(&r.beta), n), d.perm);
                assert!(d.contains(&r.alpha, &r.beta));

                let m = mediant(&d.interval).to_rational();
                let bottom = d.bottom_at(&m);
                assert_eq!(sos_permutation(&unit(&m), &unit(&bottom), n), d.perm, "bottom of {}", d.perm);
                let top = d.top_at(&m);
                assert_ne!(sos_permutation(&unit(&m), &unit(&top), n), d.perm, "top of {}", d.perm);
            }
        }
    }

    #[test]
    fn strip_ranges_disjoint_and_ordered() {
        for n in 1..=12 {
            let part = partition(n);
            for strip in part.strips() {
                let m = mediant(&strip[0].interval).to_rational();
                // top to bottom: each domain's floor is the next one's ceiling
                for w in strip.windows(2) {
                    assert_eq!(w[0].bottom_at(&m), w[1].top_at(&m));
                }
                assert_eq!(strip[0].top_at(&m), Rational::one());
                assert_eq!(strip[n].bottom_at(&m), Rational::zero());
            }
        }
    }

    #[test]
    fn three_areas_and_trapezoids() {
        for n in 1..=25 {
            let part = partition(n);
            for strip in part.strips() {
                let iv = strip[0].interval;
                let (_, b, _, d) = iv.abcd();
                let s = StripAreas::of(&iv, strip);
                assert!(s.distinct.len() <= 3);
                assert_eq!(&s.left_triangle + &s.right_triangle, s.trapezoid);
                assert_eq!(s.total, iv.width());
                for dom in strip {
                    assert_eq!(&dom.area, s.expected_area(dom.shape));
                }
                let has_trap = s.counts.contains_key(&Shape::Trapezoid);
                assert_eq!(has_trap, (n as u64) + 1 < b + d, "n = {n}, strip {iv}");
            }
        }
    }

    #[test]
    fn refinement_examples() {
        let set = |v: Vec<SosPerm>| v.into_iter().collect::<BTreeSet<_>>();
        let expect = |v: &[&str]| v.iter().map(|s| p(s)).collect::<BTreeSet<_>>();
        assert_eq!(set(refine(&p("120")).unwrap()), expect(&["1230", "1203", "3120"]));
        assert_eq!(set(refine(&p("201")).unwrap()), expect(&["2301", "2031"]));
        assert_eq!(set(refine(&p("3120")).unwrap()), expect(&["31420"]));
        assert!(refine(&p("0231")).is_err());
    }

    #[test]
    fn refinement_partitions_every_domain() {
        for n in 1..=12 {
            let coarse = partition(n);
            let fine = partition(n + 1);
            for d in &coarse.domains {
                let kids = refine_within(d, &fine).unwrap();
                assert!((1..=3).contains(&kids.len()), "{} has {} children", d.perm, kids.len());
            }
        }
    }

    #[test]
    fn crossings() {
        let got = crossing_coordinates(FareyFraction::new(3, 7).unwrap(), 7).unwrap();
        assert_eq!(got, (1..=7).map(|k| Rational::frac(k, 7)).collect::<Vec<_>>());
        for n in 1..=6 {
            assert_eq!(crossing_coordinates(FareyFraction::ZERO, n).unwrap(), vec![Rational::one()]);
        }
        let got = crossing_coordinates(FareyFraction::new(1, 2).unwrap(), 3).unwrap();
        assert_eq!(got, vec![Rational::frac(1, 2), Rational::one()]);
        assert!(matches!(
            crossing_coordinates(FareyFraction::new(3, 7).unwrap(), 6),
            Err(GeometryError::NotInFarey(..))
        ));
        for n in 1..=15u64 {
            for f in crate::farey::farey_sequence(n) {
                let b = f.denom() as i64;
                let expected: Vec<_> = (1..=b).map(|k| Rational::frac(k, b)).collect();
                assert_eq!(crossing_coordinates(f, n).unwrap(), expected);
            }
        }
    }

    #[test]
    fn integral_examples() {
        let i = iv("2/5,3/7", 9);
        assert_eq!(gap_area_integral(&i, 9, 0).unwrap(), Rational::frac(1, 490));
        assert_eq!(gap_area_integral(&i, 9, 9).unwrap(), Rational::frac(1, 350));
        assert!(matches!(gap_area_integral(&i, 9, 10), Err(GeometryError::IndexOutOfRange { .. })));
        for n in 1..=15 {
            for i in farey_intervals(n as u64) {
                let total: Rational = (0..=n).map(|k| gap_area_integral(&i, n, k).unwrap()).sum();
                assert_eq!(total, i.width());
            }
        }
    }

    #[test]
    fn integral_matches_domain_areas() {
        for n in 1..=15 {
            for i in farey_intervals(n as u64) {
                let strip = strip_regions(&i, n).unwrap();
                for (k, dom) in strip.iter().enumerate() {
                    assert_eq!(gap_area_integral(&i, n, k).unwrap(), dom.area, "n={n} {i} k={k}");
                }
            }
        }
    }

    #[test]
    fn extremes() {
        let e = area_extremes(2).unwrap();
        assert_eq!((e.min.clone(), e.max.clone()), (Rational::frac(1, 8), Rational::frac(1, 4)));
        let e = area_extremes(3).unwrap();
        assert_eq!((e.min.clone(), e.max.clone()), (Rational::frac(1, 36), Rational::frac(1, 6)));
        let e = area_extremes(7).unwrap();
        assert_eq!(e.min, Rational::frac(1, 588));
        assert_eq!(e.max, Rational::frac(1, 14));
        let mins: BTreeSet<_> = ["07123456", "65432170", "12345607", "70654321"].iter().map(|s| p(s)).collect();
        assert_eq!(e.min_perms, mins);
        let maxs: BTreeSet<_> = ["01234567", "76543210"].iter().map(|s| p(s)).collect();
        assert_eq!(e.max_perms, maxs);
        assert_eq!(area_extremes(1), Err(GeometryError::DegenerateN(1)));
    }
}
