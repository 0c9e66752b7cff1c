use serde::{Deserialize, Serialize};

use crate::error::{GasketError, Result};
use crate::stats::Region;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StatKind {
    PairCorrelation,
    PairCorrelationDerivative,
    NearestSpacing,
}

/// A statistic sampled on a grid of normalized distances.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatSeries {
    pub kind: StatKind,
    pub s_grid: Vec<f64>,
    pub values: Vec<f64>,
    /// Curvature bound `T` used for normalization.
    pub bound: f64,
    pub region: Region,
    pub n_points: usize,
}

impl StatSeries {
    pub fn with_region(mut self, region: Region) -> Self {
        self.region = region;
        self
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Value at the first grid point equal to `s`.
    pub fn value_at(&self, s: f64) -> Option<f64> {
        self.s_grid
            .iter()
            .position(|&x| x == s)
            .map(|i| self.values[i])
    }

    /// Checks the bounds that hold for the kind of statistic: non-negative
    /// everywhere; for cumulative kinds also non-decreasing and zero at
    /// `s = 0`; for nearest spacing also at most 1.
    pub fn check(&self) -> Result<()> {
        let fail = |msg: String| {
            Err(GasketError::SeriesViolation(format!(
                "{:?}: {msg}",
                self.kind
            )))
        };
        if self.s_grid.len() != self.values.len() {
            return fail("grid and values differ in length".into());
        }
        for (i, (&s, &v)) in self.s_grid.iter().zip(&self.values).enumerate() {
            if !(v >= 0.0) {
                return fail(format!("value {v} at s = {s} is negative"));
            }
            if self.kind == StatKind::PairCorrelationDerivative {
                continue;
            }
            if s == 0.0 && v != 0.0 {
                return fail(format!("value {v} at s = 0"));
            }
            if i > 0 && v < self.values[i - 1] {
                return fail(format!("decreases at s = {s}"));
            }
            if self.kind == StatKind::NearestSpacing && v > 1.0 {
                return fail(format!("value {v} above 1 at s = {s}"));
            }
        }
        Ok(())
    }
}

/// `0, step, 2·step, ...` up to and including `s_max` (within rounding).
pub fn uniform_grid(s_max: f64, step: f64) -> Result<Vec<f64>> {
    if !(step.is_finite() && step > 0.0) || !(s_max.is_finite() && s_max >= 0.0) {
        return Err(GasketError::InvalidGrid(format!(
            "need s_max >= 0 and step > 0, got s_max = {s_max}, step = {step}"
        )));
    }
    let n = (s_max / step + 1e-9).floor() as usize;
    Ok((0..=n).map(|i| i as f64 * step).collect())
}

pub(crate) fn check_grid(s_grid: &[f64]) -> Result<()> {
    let bad = |msg: &str| Err(GasketError::InvalidGrid(msg.to_string()));
    if s_grid.is_empty() {
        return bad("empty grid");
    }
    if !s_grid.iter().all(|s| s.is_finite()) {
        return bad("grid values must be finite");
    }
    if s_grid[0] < 0.0 {
        return bad("grid must start at s >= 0");
    }
    if s_grid.windows(2).any(|w| w[1] <= w[0]) {
        return bad("grid must be strictly increasing");
    }
    Ok(())
}

/// Largest absolute difference between two series over the grid points
/// they share inside `[lo, hi]`.
pub fn sup_distance(a: &StatSeries, b: &StatSeries, lo: f64, hi: f64) -> Result<f64> {
    let mut sup: f64 = 0.0;
    let mut shared = 0;
    for (s, va) in a.s_grid.iter().zip(&a.values) {
        if *s < lo || *s > hi {
            continue;
        }
        if let Some(vb) = b.value_at(*s) {
            shared += 1;
            sup = sup.max((va - vb).abs());
        }
    }
    if shared == 0 {
        return Err(GasketError::InvalidGrid(format!(
            "series share no grid points in [{lo}, {hi}]"
        )));
    }
    Ok(sup)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series(kind: StatKind, values: Vec<f64>) -> StatSeries {
        StatSeries {
            kind,
            s_grid: (0..values.len()).map(|i| i as f64).collect(),
            values,
            bound: 1.0,
            region: Region::WholePlane,
            n_points: 2,
        }
    }

    #[test]
    fn uniform_grid_endpoints() {
        let g = uniform_grid(20.0, 0.05).unwrap();
        assert_eq!(g.len(), 401);
        assert_eq!(g[0], 0.0);
        assert!((g[400] - 20.0).abs() < 1e-12);
        assert_eq!(uniform_grid(0.0, 0.1).unwrap(), vec![0.0]);
        assert!(uniform_grid(1.0, 0.0).is_err());
    }

    #[test]
    fn grid_checks() {
        assert!(check_grid(&[]).is_err());
        assert!(check_grid(&[-0.1, 0.0]).is_err());
        assert!(check_grid(&[0.0, 0.0]).is_err());
        assert!(check_grid(&[0.0, 0.5, 1.0]).is_ok());
    }

    #[test]
    fn bounds_checks() {
        assert!(series(StatKind::PairCorrelation, vec![0.0, 0.5, 0.5])
            .check()
            .is_ok());
        assert!(series(StatKind::PairCorrelation, vec![0.0, 0.5, 0.4])
            .check()
            .is_err());
        assert!(series(StatKind::PairCorrelation, vec![0.1, 0.5])
            .check()
            .is_err());
        assert!(series(StatKind::NearestSpacing, vec![0.0, 1.5])
            .check()
            .is_err());
        assert!(series(StatKind::PairCorrelation, vec![0.0, 1.5])
            .check()
            .is_ok());
        assert!(series(StatKind::PairCorrelationDerivative, vec![3.0, 0.0])
            .check()
            .is_ok());
        assert!(series(StatKind::PairCorrelationDerivative, vec![-1.0])
            .check()
            .is_err());
    }

    #[test]
    fn sup_distance_over_range() {
        let a = series(StatKind::PairCorrelation, vec![0.0, 0.2, 0.9]);
        let b = series(StatKind::PairCorrelation, vec![0.0, 0.5, 0.5]);
        assert!((sup_distance(&a, &b, 0.0, 1.0).unwrap() - 0.3).abs() < 1e-15);
        assert!((sup_distance(&a, &b, 0.0, 2.0).unwrap() - 0.4).abs() < 1e-15);
        assert!(sup_distance(&a, &b, 5.0, 6.0).is_err());
    }
}
