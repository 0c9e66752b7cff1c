use rayon::prelude::*;

use crate::error::{GasketError, Result};
use crate::geometry::PlanePoint;
use crate::grid::NeighborGrid;
use crate::stats::series::check_grid;
use crate::stats::{Region, StatKind, StatSeries};

/// Distance from every point to its nearest other point, in input order.
pub fn nearest_distances(points: &[PlanePoint], bound: f64) -> Result<Vec<f64>> {
    if points.len() < 2 {
        return Err(GasketError::TooFewPoints(points.len()));
    }
    if !(bound.is_finite() && bound > 0.0) {
        return Err(GasketError::InvalidBound(bound));
    }
    let grid = NeighborGrid::build(points, start_cell_size(points, bound))?;
    (0..points.len())
        .into_par_iter()
        .map(|i| grid.nearest_distance(i))
        .collect()
}

/// Typical spacing is `1/T`; clamp so the grid neither degenerates into a
/// single cell nor explodes into millions of empty ones.
fn start_cell_size(points: &[PlanePoint], bound: f64) -> f64 {
    let (mut lo, mut hi) = (points[0], points[0]);
    for p in points {
        lo = PlanePoint::new(lo.re.min(p.re), lo.im.min(p.im));
        hi = PlanePoint::new(hi.re.max(p.re), hi.im.max(p.im));
    }
    let extent = (hi.re - lo.re).max(hi.im - lo.im);
    if extent <= 0.0 {
        return 1.0 / bound;
    }
    (1.0 / bound).clamp(extent / 4096.0, extent)
}

/// Nearest spacing `H_T(s)`: the fraction of points whose normalized
/// nearest-neighbour distance `g_T(x)·T` is below `s`.
pub fn nearest_spacing(points: &[PlanePoint], bound: f64, s_grid: &[f64]) -> Result<StatSeries> {
    check_grid(s_grid)?;
    let mut normalized: Vec<f64> = nearest_distances(points, bound)?
        .into_iter()
        .map(|g| g * bound)
        .collect();
    normalized.sort_unstable_by(f64::total_cmp);
    let n = points.len() as f64;
    let values = s_grid
        .iter()
        .map(|&s| normalized.partition_point(|&v| v < s) as f64 / n)
        .collect();
    let series = StatSeries {
        kind: StatKind::NearestSpacing,
        s_grid: s_grid.to_vec(),
        values,
        bound,
        region: Region::WholePlane,
        n_points: points.len(),
    };
    series.check()?;
    Ok(series)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_points_jump_at_dt() {
        let p = [PlanePoint::new(0.0, 0.0), PlanePoint::new(0.5, 0.0)];
        let h = nearest_spacing(&p, 2.0, &[0.0, 0.5, 1.0, 1.5]).unwrap();
        assert_eq!(h.values, vec![0.0, 0.0, 0.0, 1.0]);
    }

    #[test]
    fn ecdf_reaches_one() {
        let p: Vec<_> = (0..50)
            .map(|i| PlanePoint::new((i * i) as f64 * 0.01, 0.0))
            .collect();
        let h = nearest_spacing(&p, 1.0, &[0.0, 1.0, 1e6]).unwrap();
        assert_eq!(h.values[0], 0.0);
        assert_eq!(h.values[2], 1.0);
    }

    #[test]
    fn coincident_points_cluster() {
        let p = [PlanePoint::ORIGIN; 3];
        assert_eq!(nearest_distances(&p, 10.0).unwrap(), vec![0.0; 3]);
    }

    #[test]
    fn needs_two_points() {
        assert_eq!(
            nearest_spacing(&[PlanePoint::ORIGIN], 1.0, &[0.0]).unwrap_err(),
            GasketError::TooFewPoints(1)
        );
    }
}
