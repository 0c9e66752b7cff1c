//! Apollonian gaskets and the spatial statistics of their circle centers.
//!
//! A gasket is fixed by the angles at which its three largest inner circles
//! touch the unit circle ([`GasketSpec`]). [`enumerate`] lists every circle
//! with curvature below a bound `T`; the [`stats`] module then measures the
//! centers at the natural scale `1/T`: pair correlation, nearest-neighbour
//! spacing, electrostatic energy, and visible-neighbour counts.

// `!(x < y)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod enumerate;
pub mod error;
pub mod geometry;
pub mod grid;
pub mod io;
pub mod stats;

pub use enumerate::{
    count_ratio, enumerate, enumerate_with, CircleSet, CountRatio, EnumerateOptions,
    EnumerationReport, Validation, HAUSDORFF_DIM,
};
pub use error::{GasketError, Result};
pub use geometry::{
    root_quadruple, solve_root_circles, Circle, DescartesQuadruple, GasketSpec, PlanePoint,
    QuadrupleResiduals,
};
pub use grid::NeighborGrid;
