use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{GasketError, Result};
use crate::geometry::PlanePoint;

/// A subset of the plane used to restrict a center set.
///
/// Boundaries are open: a point on the boundary is outside.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Region {
    WholePlane,
    /// `Re z > 0`
    HalfPlaneRePos,
    /// `Re z > 0` and `Im z > 0`
    FirstQuadrant,
    Disk {
        center: PlanePoint,
        radius: f64,
    },
    Rectangle {
        min: PlanePoint,
        max: PlanePoint,
    },
}

impl Region {
    pub fn disk(center: PlanePoint, radius: f64) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) || !center.is_finite() {
            return Err(GasketError::InvalidRegion(format!(
                "disk needs a finite center and positive radius, got {center} r={radius}"
            )));
        }
        Ok(Region::Disk { center, radius })
    }

    /// Rectangle spanned by two opposite corners, in either order.
    pub fn rectangle(a: PlanePoint, b: PlanePoint) -> Result<Self> {
        let min = PlanePoint::new(a.re.min(b.re), a.im.min(b.im));
        let max = PlanePoint::new(a.re.max(b.re), a.im.max(b.im));
        if !(a.is_finite() && b.is_finite()) || !(min.re < max.re && min.im < max.im) {
            return Err(GasketError::InvalidRegion(format!(
                "rectangle with corners {a} and {b} is degenerate"
            )));
        }
        Ok(Region::Rectangle { min, max })
    }

    pub fn contains(&self, p: PlanePoint) -> bool {
        match *self {
            Region::WholePlane => true,
            Region::HalfPlaneRePos => p.re > 0.0,
            Region::FirstQuadrant => p.re > 0.0 && p.im > 0.0,
            Region::Disk { center, radius } => p.dist(center) < radius,
            Region::Rectangle { min, max } => {
                p.re > min.re && p.re < max.re && p.im > min.im && p.im < max.im
            }
        }
    }

    pub fn is_whole_plane(&self) -> bool {
        matches!(self, Region::WholePlane)
    }

    /// Short token safe for use in file names.
    pub fn file_label(&self) -> String {
        self.to_string()
            .chars()
            .map(|c| match c {
                ':' | ',' => '_',
                c => c,
            })
            .collect()
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Region::WholePlane => f.write_str("plane"),
            Region::HalfPlaneRePos => f.write_str("halfplane"),
            Region::FirstQuadrant => f.write_str("quadrant"),
            Region::Disk { center, radius } => {
                write!(f, "disk:{},{},{}", center.re, center.im, radius)
            }
            Region::Rectangle { min, max } => {
                write!(f, "rect:{},{},{},{}", min.re, min.im, max.re, max.im)
            }
        }
    }
}

impl FromStr for Region {
    type Err = GasketError;

    /// Parses `plane`, `halfplane`, `quadrant`, `disk:cx,cy,r` or
    /// `rect:x0,y0,x1,y1`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || GasketError::InvalidRegion(format!("cannot parse region '{s}'"));
        let numbers = |body: &str, n: usize| -> Result<Vec<f64>> {
            let v = body
                .split(',')
                .map(|x| x.trim().parse::<f64>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?;
            if v.len() == n {
                Ok(v)
            } else {
                Err(bad())
            }
        };
        match s.split_once(':') {
            None => match s {
                "plane" | "whole" => Ok(Region::WholePlane),
                "halfplane" => Ok(Region::HalfPlaneRePos),
                "quadrant" => Ok(Region::FirstQuadrant),
                _ => Err(bad()),
            },
            Some(("disk", body)) => {
                let v = numbers(body, 3)?;
                Region::disk(PlanePoint::new(v[0], v[1]), v[2])
            }
            Some(("rect", body)) => {
                let v = numbers(body, 4)?;
                Region::rectangle(PlanePoint::new(v[0], v[1]), PlanePoint::new(v[2], v[3]))
            }
            Some(_) => Err(bad()),
        }
    }
}
