//! Circle and Descartes-quadruple arithmetic.
//!
//! Circles are stored as a signed curvature `k` together with the
//! curvature-center product `m = k·z`. Both `k` and `m` satisfy the
//! Descartes quadratic relation over any four mutually tangent circles, so
//! replacing one circle of a quadruple by its partner is the linear update
//! `x' = 2(sum of the other three) - x` applied to `k` and `m` alike.

use std::f64::consts::TAU;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{GasketError, Result};

/// Relative tolerance for both Descartes residuals.
pub const TOL_DESCARTES: f64 = 1e-9;
/// Relative tolerance for pairwise tangency residuals.
pub const TOL_TANGENCY: f64 = 1e-9;
/// Smallest admissible angular gap between tangency points, in radians.
pub const EPS_ANGLE: f64 = 1e-6;

/// A point of the complex plane.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct PlanePoint {
    pub re: f64,
    pub im: f64,
}

impl PlanePoint {
    pub const ORIGIN: PlanePoint = PlanePoint { re: 0.0, im: 0.0 };

    #[inline]
    pub const fn new(re: f64, im: f64) -> Self {
        Self { re, im }
    }

    /// `e^{iθ}`
    pub fn from_angle(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self { re: c, im: s }
    }

    #[inline]
    pub fn norm_sqr(self) -> f64 {
        self.re * self.re + self.im * self.im
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Euclidean distance. Every statistic in the crate measures distances
    /// through this function so that accelerated and brute-force paths agree
    /// bit for bit.
    #[inline]
    pub fn dist(self, other: PlanePoint) -> f64 {
        let dx = self.re - other.re;
        let dy = self.im - other.im;
        (dx * dx + dy * dy).sqrt()
    }

    /// Complex square.
    #[inline]
    pub fn square(self) -> Self {
        Self {
            re: self.re * self.re - self.im * self.im,
            im: 2.0 * self.re * self.im,
        }
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

impl Add for PlanePoint {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        Self::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for PlanePoint {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Neg for PlanePoint {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

impl Mul<f64> for PlanePoint {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: f64) -> Self {
        Self::new(self.re * rhs, self.im * rhs)
    }
}

impl fmt::Display for PlanePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.re, self.im)
    }
}

/// A circle given by signed curvature and curvature-center product.
///
/// Negative curvature marks a circle that encloses the others (the bounding
/// circle of a gasket).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Circle {
    pub k: f64,
    pub m: PlanePoint,
}

impl Circle {
    #[inline]
    pub const fn new(k: f64, m: PlanePoint) -> Self {
        Self { k, m }
    }

    /// The unit circle, oriented as the bounding circle of a gasket.
    pub const fn bounding() -> Self {
        Self {
            k: -1.0,
            m: PlanePoint::ORIGIN,
        }
    }

    pub fn from_center_radius(center: PlanePoint, radius: f64, enclosing: bool) -> Self {
        let k = if enclosing {
            -1.0 / radius
        } else {
            1.0 / radius
        };
        Self { k, m: center * k }
    }

    #[inline]
    pub fn center(&self) -> PlanePoint {
        self.m * (1.0 / self.k)
    }

    #[inline]
    pub fn radius(&self) -> f64 {
        1.0 / self.k.abs()
    }

    pub fn is_valid(&self) -> bool {
        self.k != 0.0 && self.k.is_finite() && self.m.is_finite() && self.center().is_finite()
    }

    /// Relative deviation from tangency between two circles.
    ///
    /// Two positively curved circles are tangent when their centers are
    /// `r₁ + r₂` apart; a positively curved circle inside an enclosing one is
    /// tangent when the centers are `R - r` apart. The residual is scaled by
    /// the target distance (or by `R` for internal tangency).
    pub fn tangency_residual(&self, other: &Circle) -> f64 {
        let d = self.center().dist(other.center());
        let (ra, rb) = (self.radius(), other.radius());
        match (self.k < 0.0, other.k < 0.0) {
            (false, false) => (d - (ra + rb)).abs() / (ra + rb),
            (true, false) => (d - (ra - rb)).abs() / ra,
            (false, true) => (d - (rb - ra)).abs() / rb,
            // Two enclosing circles cannot both belong to a bounded packing.
            (true, true) => f64::INFINITY,
        }
    }
}

/// Four mutually tangent circles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DescartesQuadruple {
    pub circles: [Circle; 4],
    /// Index replaced by the most recent swap, if any.
    pub last_swapped: Option<u8>,
}

/// Residuals of one quadruple, all relative.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct QuadrupleResiduals {
    pub curvature: f64,
    pub curv_center: f64,
    pub tangency: f64,
}

impl QuadrupleResiduals {
    pub fn max_with(self, other: QuadrupleResiduals) -> QuadrupleResiduals {
        QuadrupleResiduals {
            curvature: self.curvature.max(other.curvature),
            curv_center: self.curv_center.max(other.curv_center),
            tangency: self.tangency.max(other.tangency),
        }
    }

    pub fn within(&self, tol_descartes: f64, tol_tangency: f64) -> bool {
        self.curvature <= tol_descartes
            && self.curv_center <= tol_descartes
            && self.tangency <= tol_tangency
    }
}

impl DescartesQuadruple {
    pub const fn new(circles: [Circle; 4]) -> Self {
        Self {
            circles,
            last_swapped: None,
        }
    }

    pub fn curvatures(&self) -> [f64; 4] {
        self.circles.map(|c| c.k)
    }

    /// Absolute Descartes residuals.
    ///
    /// Returns `|(Σk)² - 2Σk²|` and the larger of the real and imaginary parts
    /// of `|(Σm)² - 2Σm²|` with complex squares.
    pub fn descartes_residual(&self) -> (f64, f64) {
        let (k_res, m_res, _, _) = self.raw_residuals();
        (k_res, m_res)
    }

    fn raw_residuals(&self) -> (f64, f64, f64, f64) {
        let mut k_sum = 0.0;
        let mut k_sq = 0.0;
        let mut m_sum = PlanePoint::ORIGIN;
        let mut m_sq = PlanePoint::ORIGIN;
        let mut m_norm = 0.0;
        for c in &self.circles {
            k_sum += c.k;
            k_sq += c.k * c.k;
            m_sum = m_sum + c.m;
            m_sq = m_sq + c.m.square();
            m_norm += c.m.norm_sqr();
        }
        let k_res = (k_sum * k_sum - 2.0 * k_sq).abs();
        let m_diff = m_sum.square() - m_sq * 2.0;
        let m_res = m_diff.re.abs().max(m_diff.im.abs());
        (k_res, m_res, k_sq, m_norm)
    }

    /// Descartes residuals scaled by `max(1, Σk²)` and `max(1, Σ|m|²)`, plus
    /// the largest relative tangency residual over the six circle pairs.
    pub fn residuals(&self) -> QuadrupleResiduals {
        let (k_res, m_res, k_sq, m_norm) = self.raw_residuals();
        let mut tangency: f64 = 0.0;
        for i in 0..4 {
            for j in (i + 1)..4 {
                tangency = tangency.max(self.circles[i].tangency_residual(&self.circles[j]));
            }
        }
        QuadrupleResiduals {
            curvature: k_res / k_sq.max(1.0),
            curv_center: m_res / m_norm.max(1.0),
            tangency,
        }
    }

    /// Checks the quadruple invariants at the default tolerances.
    pub fn validate(&self) -> Result<QuadrupleResiduals> {
        let res = self.residuals();
        if res.within(TOL_DESCARTES, TOL_TANGENCY) && self.circles.iter().all(Circle::is_valid) {
            Ok(res)
        } else {
            Err(GasketError::GeometryViolation(format!(
                "quadruple {:?} has residuals {:?}",
                self.curvatures(),
                res
            )))
        }
    }

    /// Replaces circle `i` by the other circle tangent to the remaining three.
    pub fn swap(&self, i: usize) -> Result<DescartesQuadruple> {
        if i > 3 {
            return Err(GasketError::IndexOutOfRange(i));
        }
        Ok(self.swapped(i))
    }

    /// `swap` without the range check; `i` must be below 4.
    #[inline]
    pub(crate) fn swapped(&self, i: usize) -> DescartesQuadruple {
        let c = &self.circles;
        let mut k_others = 0.0;
        let mut m_others = PlanePoint::ORIGIN;
        for (j, cj) in c.iter().enumerate() {
            if j != i {
                k_others += cj.k;
                m_others = m_others + cj.m;
            }
        }
        let mut circles = *c;
        circles[i] = Circle {
            k: 2.0 * k_others - c[i].k,
            m: m_others * 2.0 - c[i].m,
        };
        DescartesQuadruple {
            circles,
            last_swapped: Some(i as u8),
        }
    }

    /// True when no single swap decreases the curvature it replaces, up to
    /// a relative rounding allowance of `1e-12`.
    pub fn is_root(&self) -> bool {
        (0..4).all(|i| {
            let k = self.circles[i].k;
            self.swapped(i).circles[i].k >= k - 1e-12 * k.abs().max(1.0)
        })
    }
}

/// Tangency angles of the three inner circles of a gasket.
///
/// The first inner circle touches the unit circle at angle 0, the other two at
/// `theta1` and `theta2` (radians).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GasketSpec {
    theta1: f64,
    theta2: f64,
}

impl GasketSpec {
    pub fn new(theta1: f64, theta2: f64) -> Result<Self> {
        let invalid = |reason: &str| GasketError::InvalidSpec {
            theta1,
            theta2,
            reason: reason.to_string(),
        };
        if !theta1.is_finite() || !theta2.is_finite() {
            return Err(invalid("angles must be finite"));
        }
        if theta1 <= 0.0 || theta1 >= TAU || theta2 <= 0.0 || theta2 >= TAU {
            return Err(invalid("angles must lie in (0, 2π)"));
        }
        let min_gap = theta1
            .min((theta2 - theta1).abs())
            .min(theta2)
            .min(TAU - theta1)
            .min(TAU - theta2);
        if min_gap < EPS_ANGLE {
            return Err(GasketError::DegenerateSpec {
                theta1,
                theta2,
                min_gap: EPS_ANGLE,
            });
        }
        if theta1 > theta2 {
            return Err(invalid("theta1 must be smaller than theta2"));
        }
        Ok(Self { theta1, theta2 })
    }

    /// Angles given as multiples of π, as in `P(1.8/3 π, 3.7/3 π)`.
    pub fn from_pi_multiples(a: f64, b: f64) -> Result<Self> {
        Self::new(a * std::f64::consts::PI, b * std::f64::consts::PI)
    }

    pub fn theta1(&self) -> f64 {
        self.theta1
    }

    pub fn theta2(&self) -> f64 {
        self.theta2
    }

    /// Tangency angles of the three inner circles: `(0, θ₁, θ₂)`.
    pub fn tangency_angles(&self) -> [f64; 3] {
        [0.0, self.theta1, self.theta2]
    }
}

/// Solves for the three inner circles tangent to the unit circle at the
/// spec's angles and to each other.
///
/// Writing `t = r / (1 - r)` for each radius, tangency of inner circles `a`
/// and `b` reduces to `t_a t_b = sin²(Δ_ab / 2)`, which has the closed-form
/// solution `t_a = s_ab s_ac / s_bc` with `s` the half-angle sines.
pub fn solve_root_circles(spec: &GasketSpec) -> Result<[Circle; 3]> {
    let angles = spec.tangency_angles();
    let half_sine = |a: usize, b: usize| ((angles[a] - angles[b]) / 2.0).sin().abs();
    let (s01, s02, s12) = (half_sine(0, 1), half_sine(0, 2), half_sine(1, 2));
    let ratios = [s01 * s02 / s12, s01 * s12 / s02, s02 * s12 / s01];

    let mut circles = [Circle::bounding(); 3];
    for (a, (&t, &theta)) in ratios.iter().zip(angles.iter()).enumerate() {
        if !(t.is_finite() && t > 0.0) {
            return Err(GasketError::DegenerateSpec {
                theta1: spec.theta1,
                theta2: spec.theta2,
                min_gap: EPS_ANGLE,
            });
        }
        // k = 1/r = 1 + 1/t and m = k·(1 - r)·e^{iθ} = e^{iθ}/t.
        circles[a] = Circle::new(1.0 + 1.0 / t, PlanePoint::from_angle(theta) * (1.0 / t));
    }

    let bounding = Circle::bounding();
    for (a, c) in circles.iter().enumerate() {
        let r = c.radius();
        let expected = PlanePoint::from_angle(angles[a]) * (1.0 - r);
        let placement = c.center().dist(expected);
        let residual = c.tangency_residual(&bounding);
        if !(r > 0.0 && r < 1.0) || placement > TOL_TANGENCY || residual > TOL_TANGENCY {
            return Err(GasketError::GeometryViolation(format!(
                "root circle {a} (r = {r}) misses its tangency point by {placement}"
            )));
        }
        for (b, other) in circles.iter().enumerate().skip(a + 1) {
            let residual = c.tangency_residual(other);
            if residual > TOL_TANGENCY {
                return Err(GasketError::GeometryViolation(format!(
                    "root circles {a} and {b} have tangency residual {residual}"
                )));
            }
        }
    }
    Ok(circles)
}

/// The bounding unit circle followed by the three solved inner circles.
pub fn root_quadruple(spec: &GasketSpec) -> Result<DescartesQuadruple> {
    let [a, b, c] = solve_root_circles(spec)?;
    let q = DescartesQuadruple::new([Circle::bounding(), a, b, c]);
    q.validate()?;
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn with_curvatures(ks: [f64; 4]) -> DescartesQuadruple {
        DescartesQuadruple::new(ks.map(|k| Circle::new(k, PlanePoint::ORIGIN)))
    }

    #[test]
    fn descartes_residual_examples() {
        assert_eq!(
            with_curvatures([-1.0, 2.0, 2.0, 3.0])
                .descartes_residual()
                .0,
            0.0
        );
        assert_eq!(with_curvatures([0.0; 4]).descartes_residual().0, 0.0);
        assert_eq!(with_curvatures([1.0; 4]).descartes_residual().0, 8.0);
    }

    #[test]
    fn swap_curvature_example() {
        let q = with_curvatures([-1.0, 2.0, 2.0, 3.0]);
        let s = q.swap(0).unwrap();
        assert_eq!(s.circles[0].k, 15.0);
        assert_eq!(s.last_swapped, Some(0));
        assert_eq!(&s.circles[1..], &q.circles[1..]);
    }

    #[test]
    fn swap_rejects_bad_index() {
        let q = with_curvatures([-1.0, 2.0, 2.0, 3.0]);
        assert_eq!(q.swap(4), Err(GasketError::IndexOutOfRange(4)));
    }

    #[test]
    fn bounding_circle_conventions() {
        let c = Circle::bounding();
        assert_eq!(c.k, -1.0);
        assert_eq!(c.center(), PlanePoint::ORIGIN);
        assert_eq!(c.radius(), 1.0);
    }

    #[test]
    fn root_radii_quarter_and_half_turn() {
        let spec = GasketSpec::new(PI / 2.0, PI).unwrap();
        let circles = solve_root_circles(&spec).unwrap();
        let radii = circles.map(|c| c.radius());
        assert_relative_eq!(radii[0], 0.5, epsilon = 1e-12);
        assert_relative_eq!(radii[1], 1.0 / 3.0, epsilon = 1e-12);
        assert_relative_eq!(radii[2], 0.5, epsilon = 1e-12);
        // d((1/2, 0), (0, 2/3)) = 5/6
        assert_relative_eq!(
            circles[0].center().dist(circles[1].center()),
            5.0 / 6.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn root_radii_symmetric() {
        let spec = GasketSpec::new(2.0 * PI / 3.0, 4.0 * PI / 3.0).unwrap();
        let expected = 2.0 * 3f64.sqrt() - 3.0;
        for c in solve_root_circles(&spec).unwrap() {
            assert_relative_eq!(c.radius(), expected, epsilon = 1e-12);
        }
        let q = root_quadruple(&spec).unwrap();
        let k = (2.0 * 3f64.sqrt() + 3.0) / 3.0;
        assert_eq!(q.circles[0].k, -1.0);
        for c in &q.circles[1..] {
            assert_relative_eq!(c.k, k, epsilon = 1e-12);
        }
    }

    #[test]
    fn root_curvatures_quarter_and_half_turn() {
        let q = root_quadruple(&GasketSpec::new(PI / 2.0, PI).unwrap()).unwrap();
        for (got, want) in q.curvatures().iter().zip([-1.0, 2.0, 3.0, 2.0]) {
            assert_relative_eq!(*got, want, epsilon = 1e-12);
        }
        assert!(q.descartes_residual().0 < 1e-12);
    }

    #[test]
    fn coincident_angles_are_degenerate() {
        assert!(matches!(
            GasketSpec::new(1.0, 1.0),
            Err(GasketError::DegenerateSpec { .. })
        ));
        assert!(matches!(
            GasketSpec::from_pi_multiples(2.5 / 3.0, 3.5 / 4.2),
            Err(GasketError::DegenerateSpec { .. })
        ));
        assert!(matches!(
            GasketSpec::new(1e-9, 2.0),
            Err(GasketError::DegenerateSpec { .. })
        ));
    }

    #[test]
    fn misordered_or_out_of_range_angles_are_invalid() {
        assert!(matches!(
            GasketSpec::new(2.0, 1.0),
            Err(GasketError::InvalidSpec { .. })
        ));
        assert!(matches!(
            GasketSpec::new(0.0, 1.0),
            Err(GasketError::InvalidSpec { .. })
        ));
        assert!(matches!(
            GasketSpec::new(1.0, 7.0),
            Err(GasketError::InvalidSpec { .. })
        ));
        assert!(matches!(
            GasketSpec::new(f64::NAN, 1.0),
            Err(GasketError::InvalidSpec { .. })
        ));
    }

    #[test]
    fn half_turn_root_is_weak() {
        // The circle at π/2 and its mirror image have equal curvature.
        let q = root_quadruple(&GasketSpec::new(PI / 2.0, PI).unwrap()).unwrap();
        assert!(q.is_root());
        assert_relative_eq!(q.swapped(2).circles[2].k, 3.0, epsilon = 1e-12);
    }
}
