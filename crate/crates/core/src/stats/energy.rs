use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::enumerate::HAUSDORFF_DIM;
use crate::error::{GasketError, Result};
use crate::geometry::PlanePoint;

// Fixed work split: the reduction tree depends only on the input length.
const ROWS_PER_CHUNK: usize = 64;

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = Self::new();
        iter.into_iter().for_each(|v| acc.add(v));
        acc
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyValue {
    pub bound: f64,
    pub value: f64,
}

/// `G(T) = T^{-2δ} Σ_{p≠q} 1/d(p, q)` over ordered pairs, with a
/// deterministic reduction order.
pub fn energy(points: &[PlanePoint], bound: f64) -> Result<EnergyValue> {
    energy_with(points, bound, true)
}

/// As [`energy`]; with `deterministic = false` the per-chunk partial sums
/// are combined in whatever order the thread pool finishes them.
pub fn energy_with(points: &[PlanePoint], bound: f64, deterministic: bool) -> Result<EnergyValue> {
    if points.len() < 2 {
        return Err(GasketError::TooFewPoints(points.len()));
    }
    if !(bound.is_finite() && bound > 0.0) {
        return Err(GasketError::InvalidBound(bound));
    }
    let n = points.len();
    let chunk_sum = |start: usize| -> std::result::Result<f64, (usize, usize)> {
        let mut acc = CompensatedSum::new();
        for i in start..(start + ROWS_PER_CHUNK).min(n) {
            let p = points[i];
            for (j, q) in points.iter().enumerate().skip(i + 1) {
                let d = p.dist(*q);
                if d == 0.0 {
                    return Err((i, j));
                }
                acc.add(1.0 / d);
            }
        }
        Ok(acc.value())
    };
    let starts: Vec<usize> = (0..n).step_by(ROWS_PER_CHUNK).collect();
    let partials: Vec<_> = starts.par_iter().map(|&s| chunk_sum(s)).collect();
    if let Some(&(i, j)) = partials.iter().filter_map(|r| r.as_ref().err()).min() {
        return Err(GasketError::DuplicatePoints(i, j));
    }
    let unordered = if deterministic {
        partials
            .iter()
            .map(|r| *r.as_ref().unwrap())
            .collect::<CompensatedSum>()
            .value()
    } else {
        partials.into_par_iter().map(|r| r.unwrap()).sum::<f64>()
    };
    let value = 2.0 * unordered / bound.powf(2.0 * HAUSDORFF_DIM);
    Ok(EnergyValue { bound, value })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let mut acc = CompensatedSum::new();
        acc.add(1.0);
        for _ in 0..10_000 {
            acc.add(1e-16);
        }
        assert_relative_eq!(acc.value(), 1.0 + 1e-12, max_relative = 1e-15);
        let acc: CompensatedSum = [1e100, 1.0, -1e100].into_iter().collect();
        assert_eq!(acc.value(), 1.0);
    }

    #[test]
    fn two_points() {
        let p = [PlanePoint::new(0.0, 0.0), PlanePoint::new(0.3, 0.4)];
        let e = energy(&p, 7.0).unwrap();
        assert_relative_eq!(
            e.value,
            2.0 / (0.5 * 7f64.powf(2.0 * 1.305688)),
            max_relative = 1e-14
        );
    }

    #[test]
    fn unit_triangle() {
        let h = 3f64.sqrt() / 2.0;
        let p = [
            PlanePoint::new(0.0, 0.0),
            PlanePoint::new(1.0, 0.0),
            PlanePoint::new(0.5, h),
        ];
        let e = energy(&p, 1.0).unwrap();
        assert_relative_eq!(e.value, 6.0, max_relative = 1e-15);
    }

    #[test]
    fn duplicate_points_are_named() {
        let p = [
            PlanePoint::new(0.0, 0.0),
            PlanePoint::new(1.0, 0.0),
            PlanePoint::new(0.0, 0.0),
        ];
        assert_eq!(energy(&p, 1.0), Err(GasketError::DuplicatePoints(0, 2)));
    }

    #[test]
    fn fast_mode_agrees() {
        let p: Vec<_> = (0..500)
            .map(|i| PlanePoint::new((i as f64 * 0.37).sin(), (i as f64 * 0.11).cos()))
            .collect();
        let a = energy_with(&p, 10.0, true).unwrap().value;
        let b = energy_with(&p, 10.0, false).unwrap().value;
        assert_relative_eq!(a, b, max_relative = 1e-12);
    }
}
