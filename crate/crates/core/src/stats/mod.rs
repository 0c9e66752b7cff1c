//! Normalized spatial statistics of circle centers.
//!
//! Distances are scaled by the curvature bound `T`: a typical circle in the
//! set has radius of order `1/T`, and so does the gap to its neighbours.

mod energy;
mod nearest;
mod pair;
mod region;
mod series;

pub use energy::{energy, energy_with, CompensatedSum, EnergyValue};
pub use nearest::{nearest_distances, nearest_spacing};
pub use pair::{empirical_derivative, expected_visible, pair_correlation, pair_counts};
pub use region::Region;
pub use series::{sup_distance, uniform_grid, StatKind, StatSeries};

use crate::enumerate::CircleSet;
use crate::geometry::PlanePoint;

/// Centers of the set lying in `region`, in the set's canonical order.
pub fn restrict(set: &CircleSet, region: &Region) -> Vec<PlanePoint> {
    set.circles()
        .iter()
        .map(|c| c.center())
        .filter(|z| region.contains(*z))
        .collect()
}
