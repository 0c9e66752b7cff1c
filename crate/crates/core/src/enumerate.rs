//! Curvature-bounded enumeration of a gasket's circles.
//!
//! Every circle other than the four root circles is produced exactly once as
//! the circle introduced by the last letter of a reduced word in the four
//! swaps. Past the first level, each new circle sits inside the interstice
//! filled by its parent and so has strictly larger curvature; a branch can
//! therefore be cut as soon as its new curvature reaches the bound.

use std::cmp::Ordering;

use arrayvec::ArrayVec;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{GasketError, Result};
use crate::geometry::{
    root_quadruple, Circle, DescartesQuadruple, GasketSpec, PlanePoint, QuadrupleResiduals,
};

/// Hausdorff dimension of every Apollonian gasket.
pub const HAUSDORFF_DIM: f64 = 1.305688;

/// How many of the generated quadruples are checked against the geometry
/// invariants during traversal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Validation {
    Off,
    /// Check every quadruple.
    Full,
    /// Check one quadruple in `n` (per subtree, deterministic).
    Sampled(u64),
    /// `Full` for bounds up to 100, one in a hundred above.
    Auto,
}

#[derive(Debug, Clone, Copy)]
pub struct EnumerateOptions {
    pub include_bounding: bool,
    pub validation: Validation,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        Self {
            include_bounding: true,
            validation: Validation::Auto,
        }
    }
}

/// Traversal statistics.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct EnumerationReport {
    /// Quadruples produced by swaps.
    pub quadruples: u64,
    /// Quadruples whose residuals were checked.
    pub checked: u64,
    /// Largest residuals seen among checked quadruples.
    pub max_residuals: QuadrupleResiduals,
}

impl EnumerationReport {
    fn merge(mut self, other: EnumerationReport) -> Self {
        self.quadruples += other.quadruples;
        self.checked += other.checked;
        self.max_residuals = self.max_residuals.max_with(other.max_residuals);
        self
    }
}

/// All circles of one gasket with curvature below a bound, in canonical
/// order (curvature, then center real part, then center imaginary part).
#[derive(Debug, Clone, PartialEq)]
pub struct CircleSet {
    circles: Vec<Circle>,
    bound: f64,
    spec: GasketSpec,
    include_bounding: bool,
}

impl CircleSet {
    pub fn circles(&self) -> &[Circle] {
        &self.circles
    }

    pub fn bound(&self) -> f64 {
        self.bound
    }

    pub fn spec(&self) -> &GasketSpec {
        &self.spec
    }

    pub fn include_bounding(&self) -> bool {
        self.include_bounding
    }

    pub fn len(&self) -> usize {
        self.circles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.circles.is_empty()
    }

    pub fn centers(&self) -> Vec<PlanePoint> {
        self.circles.iter().map(Circle::center).collect()
    }

    /// Checks the set invariants: curvature bound, containment in the
    /// closed unit disk, no duplicates, and presence of the bounding circle
    /// matching the flag.
    pub fn validate(&self) -> Result<()> {
        let violation = |msg: String| Err(GasketError::GeometryViolation(msg));
        let mut bounding = 0;
        for c in &self.circles {
            if !(c.k < self.bound) {
                return violation(format!("curvature {} not below bound {}", c.k, self.bound));
            }
            if c.k < 0.0 {
                bounding += 1;
                continue;
            }
            let reach = c.center().norm() + c.radius();
            if reach > 1.0 + 1e-9 {
                return violation(format!(
                    "circle k={} reaches {} outside the unit disk",
                    c.k, reach
                ));
            }
        }
        if bounding != usize::from(self.include_bounding) {
            return violation(format!(
                "{bounding} bounding circles present with include_bounding = {}",
                self.include_bounding
            ));
        }
        // Sorted by curvature, so candidate duplicates are adjacent in k.
        for (i, a) in self.circles.iter().enumerate() {
            for b in &self.circles[i + 1..] {
                let scale = a.k.abs().max(1.0);
                if (b.k - a.k) > 1e-9 * scale {
                    break;
                }
                if a.m.dist(b.m) <= 1e-9 * scale {
                    return violation(format!("duplicate circle k={} at {}", a.k, a.center()));
                }
            }
        }
        Ok(())
    }
}

/// Canonical circle order: curvature, then center lexicographically.
pub fn canonical_order(a: &Circle, b: &Circle) -> Ordering {
    let (za, zb) = (a.center(), b.center());
    a.k.total_cmp(&b.k)
        .then(za.re.total_cmp(&zb.re))
        .then(za.im.total_cmp(&zb.im))
}

/// Circles of the gasket with curvature below `bound`.
pub fn enumerate(spec: &GasketSpec, bound: f64, include_bounding: bool) -> Result<CircleSet> {
    let opts = EnumerateOptions {
        include_bounding,
        ..EnumerateOptions::default()
    };
    enumerate_with(spec, bound, &opts).map(|(set, _)| set)
}

pub fn enumerate_with(
    spec: &GasketSpec,
    bound: f64,
    opts: &EnumerateOptions,
) -> Result<(CircleSet, EnumerationReport)> {
    if !(bound.is_finite() && bound > 0.0) {
        return Err(GasketError::InvalidBound(bound));
    }
    let root = root_quadruple(spec)?;
    let stride = match opts.validation {
        Validation::Off => None,
        Validation::Full => Some(1),
        Validation::Sampled(n) => Some(n.max(1)),
        Validation::Auto if bound <= 100.0 => Some(1),
        Validation::Auto => Some(100),
    };

    let mut circles = Vec::new();
    if opts.include_bounding {
        circles.push(root.circles[0]);
    }
    circles.extend(root.circles[1..].iter().filter(|c| c.k < bound));

    // Expand the first two levels serially so the subtrees below can be
    // walked in parallel.
    let mut report = EnumerationReport::default();
    let mut frontier = vec![root];
    for _ in 0..2 {
        let mut next = Vec::new();
        for q in &frontier {
            for child in children(q, bound)? {
                let i = child.last_swapped.unwrap() as usize;
                circles.push(child.circles[i]);
                report.quadruples += 1;
                if stride.is_some() {
                    report.checked += 1;
                    report.max_residuals = report.max_residuals.max_with(child.validate()?);
                }
                next.push(child);
            }
        }
        frontier = next;
    }

    let subtrees: Vec<(Vec<Circle>, EnumerationReport)> = frontier
        .par_iter()
        .map(|q| walk_subtree(*q, bound, stride))
        .collect::<Result<_>>()?;
    for (found, sub) in subtrees {
        circles.extend(found);
        report = report.merge(sub);
    }

    circles.par_sort_unstable_by(canonical_order);
    let set = CircleSet {
        circles,
        bound,
        spec: *spec,
        include_bounding: opts.include_bounding,
    };
    Ok((set, report))
}

/// Children of `q` in index order whose new curvature is below `bound`.
fn children(q: &DescartesQuadruple, bound: f64) -> Result<ArrayVec<DescartesQuadruple, 4>> {
    let parent_k = q.last_swapped.map(|i| q.circles[i as usize].k);
    let mut out = ArrayVec::new();
    for i in 0..4 {
        if q.last_swapped == Some(i as u8) {
            continue;
        }
        let child = q.swapped(i);
        let k = child.circles[i].k;
        if let Some(pk) = parent_k {
            if !(k > pk) {
                return Err(GasketError::GeometryViolation(format!(
                    "curvature did not grow along a reduced word: {pk} -> {k} (quadruple {:?})",
                    child.curvatures()
                )));
            }
        }
        if k < bound {
            out.push(child);
        }
    }
    Ok(out)
}

fn walk_subtree(
    start: DescartesQuadruple,
    bound: f64,
    stride: Option<u64>,
) -> Result<(Vec<Circle>, EnumerationReport)> {
    let mut found = Vec::new();
    let mut report = EnumerationReport::default();
    let mut stack = vec![start];
    while let Some(q) = stack.pop() {
        for child in children(&q, bound)? {
            let i = child.last_swapped.unwrap() as usize;
            found.push(child.circles[i]);
            if let Some(n) = stride {
                if report.quadruples % n == 0 {
                    report.checked += 1;
                    report.max_residuals = report.max_residuals.max_with(child.validate()?);
                }
            }
            report.quadruples += 1;
            stack.push(child);
        }
    }
    Ok((found, report))
}

/// `#P_T / T^δ` for one enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CountRatio {
    pub bound: f64,
    pub count: usize,
    pub ratio: f64,
}

pub fn count_ratio(set: &CircleSet) -> Result<CountRatio> {
    count_ratio_of(set.len(), set.bound())
}

pub fn count_ratio_of(count: usize, bound: f64) -> Result<CountRatio> {
    if count == 0 {
        return Err(GasketError::TooFewPoints(0));
    }
    if !(bound.is_finite() && bound > 0.0) {
        return Err(GasketError::InvalidBound(bound));
    }
    Ok(CountRatio {
        bound,
        count,
        ratio: count as f64 / bound.powf(HAUSDORFF_DIM),
    })
}
