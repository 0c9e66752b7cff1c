use rayon::prelude::*;

use crate::error::{GasketError, Result};
use crate::geometry::PlanePoint;
use crate::grid::NeighborGrid;
use crate::stats::series::check_grid;
use crate::stats::{Region, StatKind, StatSeries};

const ROWS_PER_TASK: usize = 256;

/// For each grid value `s`, the number of unordered pairs with
/// `d(p, q)·T < s`.
pub fn pair_counts(points: &[PlanePoint], bound: f64, s_grid: &[f64]) -> Result<Vec<u64>> {
    check_grid(s_grid)?;
    if !(bound.is_finite() && bound > 0.0) {
        return Err(GasketError::InvalidBound(bound));
    }
    let s_max = *s_grid.last().unwrap();
    let mut counts = vec![0u64; s_grid.len() + 1];
    if s_max > 0.0 && points.len() >= 2 {
        // Slightly widened so rounding in `d < s/T` never hides a pair that
        // satisfies `d·T < s`.
        let radius = s_max / bound * (1.0 + 1e-12);
        let grid = NeighborGrid::build(points, radius)?;
        let starts: Vec<usize> = (0..points.len()).step_by(ROWS_PER_TASK).collect();
        // A pair at normalized distance v is counted for every s > v; bin it
        // at the first such grid index and take a prefix sum.
        counts = starts
            .par_iter()
            .map(|&start| {
                let mut hist = vec![0u64; s_grid.len() + 1];
                for i in start..(start + ROWS_PER_TASK).min(points.len()) {
                    grid.for_each_pair_from(i, radius, |_, d| {
                        let v = d * bound;
                        hist[s_grid.partition_point(|&s| s <= v)] += 1;
                    });
                }
                hist
            })
            .reduce(
                || vec![0u64; s_grid.len() + 1],
                |mut a, b| {
                    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                    a
                },
            );
    }
    let mut running = 0;
    Ok(counts[..s_grid.len()]
        .iter()
        .map(|c| {
            running += c;
            running
        })
        .collect())
}

/// Pair correlation `F_T(s) = #{unordered pairs with d·T < s} / n`.
pub fn pair_correlation(points: &[PlanePoint], bound: f64, s_grid: &[f64]) -> Result<StatSeries> {
    if points.len() < 2 {
        return Err(GasketError::TooFewPoints(points.len()));
    }
    let n = points.len() as f64;
    let values = pair_counts(points, bound, s_grid)?
        .into_iter()
        .map(|c| c as f64 / n)
        .collect();
    let series = StatSeries {
        kind: StatKind::PairCorrelation,
        s_grid: s_grid.to_vec(),
        values,
        bound,
        region: Region::WholePlane,
        n_points: points.len(),
    };
    series.check()?;
    Ok(series)
}

/// Forward difference `(F(s + δ) - F(s)) / δ` on the grid points whose
/// shifted partner is also on the grid.
pub fn empirical_derivative(series: &StatSeries, delta: f64) -> Result<StatSeries> {
    if series.kind != StatKind::PairCorrelation {
        return Err(GasketError::InvalidGrid(format!(
            "derivative needs a pair-correlation series, got {:?}",
            series.kind
        )));
    }
    if !(delta.is_finite() && delta > 0.0) {
        return Err(GasketError::InvalidGrid(format!(
            "delta must be positive, got {delta}"
        )));
    }
    let grid = &series.s_grid;
    let last = *grid.last().unwrap_or(&0.0);
    let mut s_out = Vec::new();
    let mut values = Vec::new();
    let mut j = 0;
    for (i, &s) in grid.iter().enumerate() {
        let target = s + delta;
        let tol = 1e-9 * target.abs().max(1.0);
        if target > last + tol {
            break;
        }
        while j < grid.len() && grid[j] < target - tol {
            j += 1;
        }
        if j == grid.len() || (grid[j] - target).abs() > tol {
            return Err(GasketError::InvalidGrid(format!(
                "s = {s} + {delta} does not land on the grid"
            )));
        }
        s_out.push(s);
        values.push((series.values[j] - series.values[i]) / delta);
    }
    if s_out.is_empty() {
        return Err(GasketError::InvalidGrid(format!(
            "grid spans less than delta = {delta}"
        )));
    }
    let out = StatSeries {
        kind: StatKind::PairCorrelationDerivative,
        s_grid: s_out,
        values,
        bound: series.bound,
        region: series.region,
        n_points: series.n_points,
    };
    out.check()?;
    Ok(out)
}

/// Average number of other centers within `s/T` of a center, i.e. `2·F_T(s)`.
pub fn expected_visible(points: &[PlanePoint], bound: f64, s: f64) -> Result<f64> {
    if points.len() < 2 {
        return Err(GasketError::TooFewPoints(points.len()));
    }
    let pairs = pair_counts(points, bound, &[s])?[0];
    Ok(2.0 * pairs as f64 / points.len() as f64)
}
