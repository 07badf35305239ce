//! Exact computation of Sós permutations of `f(x) = αx + β mod 1`, the
//! polygonal domains they occupy in the `(α, β)` unit square, and
//! constructive checks of the three-gaps and three-areas theorems.

pub mod exact;
pub mod farey;
pub mod geometry;
pub mod io;
pub mod sosperm;
pub mod verify;

pub use exact::{frac_eval, ExactError, Rational, UnitRational};
pub use farey::{FareyError, FareyFraction, FareyInterval};
pub use sosperm::{GapProfile, SosError, SosPerm};
pub use geometry::{Domain, GeometryError, Partition, Shape};
