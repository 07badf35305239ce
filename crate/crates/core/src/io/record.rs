//! JSON records. Rationals are always `[num, den]` integer pairs; field order
//! is fixed by the struct definitions, so output is byte-for-byte stable.

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::exact::Rational;
use crate::farey::{FareyFraction, FareyInterval};
use crate::geometry::{Domain, Partition, Point, Shape, StripAreas};
use crate::sosperm::{GapProfile, SosPerm};
use crate::verify::OracleReport;

#[derive(Debug, Error)]
pub enum RecordError {
    #[error("invalid record: {0}")]
    Invalid(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// A rational serialized as `[num, den]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pair(pub Rational);

impl Serialize for Pair {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let (num, den) = self
            .0
            .to_i128_pair()
            .ok_or_else(|| serde::ser::Error::custom(format!("{:?} does not fit in i128", self.0)))?;
        [num, den].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Pair {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [num, den] = <[i128; 2]>::deserialize(d)?;
        if den <= 0 {
            return Err(serde::de::Error::custom("denominator must be positive"));
        }
        let r = Rational::new(num, den).map_err(serde::de::Error::custom)?;
        if r.to_i128_pair() != Some((num, den)) {
            return Err(serde::de::Error::custom(format!("[{num}, {den}] is not in lowest terms")));
        }
        Ok(Pair(r))
    }
}

impl From<&Rational> for Pair {
    fn from(r: &Rational) -> Self {
        Pair(r.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalRecord {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub d: u64,
}

impl From<&FareyInterval> for IntervalRecord {
    fn from(iv: &FareyInterval) -> Self {
        let (a, b, c, d) = iv.abcd();
        IntervalRecord { a, b, c, d }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionRecord {
    pub perm: String,
    pub n: usize,
    pub interval: IntervalRecord,
    pub j_bot: u64,
    pub j_top: u64,
    pub shape: String,
    /// Each vertex is `[alpha, beta]`, each coordinate a `[num, den]` pair.
    pub vertices: Vec<[Pair; 2]>,
    pub area: Pair,
}

impl From<&Domain> for RegionRecord {
    fn from(d: &Domain) -> Self {
        RegionRecord {
            perm: d.perm.to_string(),
            n: d.perm.n(),
            interval: (&d.interval).into(),
            j_bot: d.j_bot,
            j_top: d.j_top,
            shape: d.shape.as_str().to_string(),
            vertices: d.vertices.iter().map(|v| [Pair(v.alpha.clone()), Pair(v.beta.clone())]).collect(),
            area: Pair(d.area.clone()),
        }
    }
}

impl TryFrom<&RegionRecord> for Domain {
    type Error = RecordError;

    fn try_from(r: &RegionRecord) -> Result<Self, Self::Error> {
        let invalid = |what: String| RecordError::Invalid(what);
        let perm: SosPerm = r.perm.parse().map_err(|e| invalid(format!("{e}")))?;
        if perm.n() != r.n {
            return Err(invalid(format!("perm has n = {}, record says {}", perm.n(), r.n)));
        }
        let IntervalRecord { a, b, c, d } = r.interval;
        let lo = FareyFraction::new(a, b).map_err(|e| invalid(e.to_string()))?;
        let hi = FareyFraction::new(c, d).map_err(|e| invalid(e.to_string()))?;
        let interval = FareyInterval::new(lo, hi, r.n as u64).map_err(|e| invalid(e.to_string()))?;
        let shape = Shape::from_name(&r.shape).ok_or_else(|| invalid(format!("unknown shape {:?}", r.shape)))?;
        Ok(Domain {
            perm,
            interval,
            j_bot: r.j_bot,
            j_top: r.j_top,
            vertices: r.vertices.iter().map(|[x, y]| Point::new(x.0.clone(), y.0.clone())).collect(),
            shape,
            area: r.area.0.clone(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionRecord {
    pub n: usize,
    pub count: usize,
    pub total_area: Pair,
    pub regions: Vec<RegionRecord>,
}

impl From<&Partition> for PartitionRecord {
    fn from(p: &Partition) -> Self {
        PartitionRecord {
            n: p.n,
            count: p.domains.len(),
            total_area: Pair(p.total_area()),
            regions: p.domains.iter().map(RegionRecord::from).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapeCounts {
    pub triangle_left: usize,
    pub triangle_right: usize,
    pub trapezoid: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StripRecord {
    pub n: usize,
    pub interval: IntervalRecord,
    pub width: Pair,
    /// `d·w²/2`, `b·w²/2` and `(b + d)·w²/2`.
    pub triangle_left_area: Pair,
    pub triangle_right_area: Pair,
    pub trapezoid_area: Pair,
    pub counts: ShapeCounts,
    pub distinct_areas: Vec<Pair>,
    /// Whether the trapezoid value equals the sum of the two triangle values.
    pub sum_identity: bool,
    pub total_area: Pair,
    pub regions: Vec<RegionRecord>,
}

impl StripRecord {
    pub fn new(iv: &FareyInterval, n: usize, domains: &[Domain]) -> Self {
        let s = StripAreas::of(iv, domains);
        let count = |shape| s.counts.get(&shape).copied().unwrap_or(0);
        StripRecord {
            n,
            interval: iv.into(),
            width: Pair(iv.width()),
            triangle_left_area: Pair(s.left_triangle.clone()),
            triangle_right_area: Pair(s.right_triangle.clone()),
            trapezoid_area: Pair(s.trapezoid.clone()),
            counts: ShapeCounts {
                triangle_left: count(Shape::TriangleLeft),
                triangle_right: count(Shape::TriangleRight),
                trapezoid: count(Shape::Trapezoid),
            },
            distinct_areas: s.distinct.iter().map(Pair::from).collect(),
            sum_identity: &s.left_triangle + &s.right_triangle == s.trapezoid,
            total_area: Pair(s.total.clone()),
            regions: domains.iter().map(RegionRecord::from).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapRecord {
    pub n: usize,
    pub alpha: Pair,
    pub beta: Pair,
    pub perm: String,
    pub sorted_values: Vec<Pair>,
    pub gaps: Vec<Pair>,
    pub distinct_gaps: Vec<Pair>,
}

impl GapRecord {
    pub fn new(alpha: &Rational, beta: &Rational, g: &GapProfile) -> Self {
        GapRecord {
            n: g.perm.n(),
            alpha: alpha.into(),
            beta: beta.into(),
            perm: g.perm.to_string(),
            sorted_values: g.sorted_values.iter().map(|v| Pair(v.get().clone())).collect(),
            gaps: g.gaps.iter().map(Pair::from).collect(),
            distinct_gaps: g.distinct_gaps.iter().map(Pair::from).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyRecord {
    pub passed: bool,
    pub reports: Vec<OracleReport>,
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String, RecordError> {
    Ok(serde_json::to_string(value)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{domain_of, partition};
    use proptest::prelude::*;

    #[test]
    fn worked_example_json() {
        let d = domain_of(&"9 2 7 0 5 3 8 1 6 4".parse().unwrap()).unwrap();
        let rec = RegionRecord::from(&d);
        let json = serde_json::to_string(&rec).unwrap();
        assert_eq!(
            json,
            r#"{"perm":"9270538164","n":9,"interval":{"a":2,"b":5,"c":3,"d":7},"j_bot":4,"j_top":2,"shape":"triangle_right","vertices":[[[2,5],[2,5]],[[3,7],[1,7]],[[3,7],[2,7]]],"area":[1,490]}"#
        );
    }

    #[test]
    fn pairs_reject_non_canonical() {
        assert!(serde_json::from_str::<Pair>("[2,4]").is_err());
        assert!(serde_json::from_str::<Pair>("[1,0]").is_err());
        assert!(serde_json::from_str::<Pair>("[1,-2]").is_err());
        assert_eq!(serde_json::from_str::<Pair>("[-1,2]").unwrap().0, Rational::frac(-1, 2));
        assert_eq!(serde_json::to_string(&Pair(Rational::from(3i64))).unwrap(), "[3,1]");
    }

    #[test]
    fn rejects_bad_records() {
        let d = domain_of(&"021".parse().unwrap()).unwrap();
        let mut rec = RegionRecord::from(&d);
        rec.shape = "circle".into();
        assert!(Domain::try_from(&rec).is_err());
        let mut rec = RegionRecord::from(&d);
        rec.interval.c = 2;
        assert!(Domain::try_from(&rec).is_err());
        let mut rec = RegionRecord::from(&d);
        rec.n = 3;
        assert!(Domain::try_from(&rec).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn region_records_round_trip(n in 1usize..12, pick in any::<prop::sample::Index>()) {
            let part = partition(n);
            let d = &part.domains[pick.index(part.domains.len())];
            let json = serde_json::to_string(&RegionRecord::from(d)).unwrap();
            let back: RegionRecord = serde_json::from_str(&json).unwrap();
            prop_assert_eq!(&Domain::try_from(&back).unwrap(), d);
        }
    }
}
