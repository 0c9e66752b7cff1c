//! Slow, obviously-correct reference computations for the test suites.
//!
//! Nothing here shares code paths with the library routines it checks:
//! distances are recomputed inline, enumeration deduplicates by hashing
//! rounded circle keys, and swaps are checked against circle inversion.

use std::collections::{HashSet, VecDeque};

use apollonian::{root_quadruple, Circle, DescartesQuadruple, GasketSpec, PlanePoint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn dist(a: PlanePoint, b: PlanePoint) -> f64 {
    let dx = a.re - b.re;
    let dy = a.im - b.im;
    (dx * dx + dy * dy).sqrt()
}

/// For every `s`, the number of unordered pairs with `d·T < s`, by double loop.
pub fn brute_pair_counts(points: &[PlanePoint], bound: f64, s_grid: &[f64]) -> Vec<u64> {
    let mut counts = vec![0u64; s_grid.len()];
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            let v = dist(points[i], points[j]) * bound;
            for (c, &s) in counts.iter_mut().zip(s_grid) {
                if v < s {
                    *c += 1;
                }
            }
        }
    }
    counts
}

/// Pair correlation straight from its definition: ordered pairs over `2n`.
pub fn brute_pair_correlation(points: &[PlanePoint], bound: f64, s: f64) -> f64 {
    let mut ordered = 0u64;
    for (i, p) in points.iter().enumerate() {
        for (j, q) in points.iter().enumerate() {
            if i != j && dist(*p, *q) * bound < s {
                ordered += 1;
            }
        }
    }
    ordered as f64 / (2.0 * points.len() as f64)
}

/// Nearest other-point distance for every point, by full scan.
pub fn brute_nearest(points: &[PlanePoint]) -> Vec<f64> {
    points
        .iter()
        .enumerate()
        .map(|(i, p)| {
            points
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, q)| dist(*p, *q))
                .fold(f64::INFINITY, f64::min)
        })
        .collect()
}

/// `H_T(s)` from its definition.
pub fn brute_nearest_spacing(points: &[PlanePoint], bound: f64, s_grid: &[f64]) -> Vec<f64> {
    let g = brute_nearest(points);
    s_grid
        .iter()
        .map(|&s| g.iter().filter(|&&x| x * bound < s).count() as f64 / points.len() as f64)
        .collect()
}

/// Plain ordered double-loop energy sum, normalized by `T^{2δ}`.
pub fn brute_energy(points: &[PlanePoint], bound: f64) -> f64 {
    let mut sum = 0.0;
    for (i, p) in points.iter().enumerate() {
        for (j, q) in points.iter().enumerate() {
            if i != j {
                sum += 1.0 / dist(*p, *q);
            }
        }
    }
    sum / bound.powf(2.0 * 1.305688)
}

/// Average over points of the number of other points within `s/T`.
pub fn direct_visible(points: &[PlanePoint], bound: f64, s: f64) -> f64 {
    let total: usize = points
        .iter()
        .enumerate()
        .map(|(i, p)| {
            points
                .iter()
                .enumerate()
                .filter(|&(j, q)| j != i && dist(*p, *q) * bound < s)
                .count()
        })
        .sum();
    total as f64 / points.len() as f64
}

type Key = (i64, i64, i64);

fn key(k: f64, mre: f64, mim: f64) -> Key {
    let q = |x: f64| (x * 1e6).round() as i64;
    (q(k), q(mre), q(mim))
}

/// Breadth-first search over all swaps (not just reduced words), with a
/// visited set on rounded quadruples and a found set on rounded circles.
/// Returns the circles sorted by curvature.
pub fn bfs_enumerate(spec: &GasketSpec, bound: f64, include_bounding: bool) -> Vec<Circle> {
    let root = root_quadruple(spec).expect("valid spec");
    let as_tuple = |c: &Circle| (c.k, c.m.re, c.m.im);
    let start: [(f64, f64, f64); 4] = root.circles.map(|c| as_tuple(&c));

    let mut found: Vec<Circle> = Vec::new();
    let mut seen_circles: HashSet<Key> = HashSet::new();
    for (i, c) in root.circles.iter().enumerate() {
        if c.k < bound && (i > 0 || include_bounding) {
            seen_circles.insert(key(c.k, c.m.re, c.m.im));
            found.push(*c);
        }
    }
    if !include_bounding {
        // Keep the bounding circle out of the found set without letting a
        // swap rediscover it.
        seen_circles.insert(key(-1.0, 0.0, 0.0));
    }

    let quad_key = |q: &[(f64, f64, f64); 4]| {
        let mut keys: Vec<Key> = q.iter().map(|&(k, a, b)| key(k, a, b)).collect();
        keys.sort_unstable();
        keys
    };
    let mut visited = HashSet::new();
    visited.insert(quad_key(&start));
    let mut queue = VecDeque::from([start]);
    while let Some(q) = queue.pop_front() {
        for i in 0..4 {
            let (mut ks, mut re, mut im) = (0.0, 0.0, 0.0);
            for (j, c) in q.iter().enumerate() {
                if j != i {
                    ks += c.0;
                    re += c.1;
                    im += c.2;
                }
            }
            let new = (2.0 * ks - q[i].0, 2.0 * re - q[i].1, 2.0 * im - q[i].2);
            if new.0 >= bound {
                continue;
            }
            if seen_circles.insert(key(new.0, new.1, new.2)) {
                found.push(Circle::new(new.0, PlanePoint::new(new.1, new.2)));
            }
            let mut child = q;
            child[i] = new;
            if visited.insert(quad_key(&child)) {
                queue.push_back(child);
            }
        }
    }
    found.sort_by(|a, b| a.k.total_cmp(&b.k));
    found
}

fn tangency_point(a: &Circle, b: &Circle) -> PlanePoint {
    let (za, zb) = (a.center(), b.center());
    let (ra, rb) = (1.0 / a.k.abs(), 1.0 / b.k.abs());
    let (dx, dy) = (zb.re - za.re, zb.im - za.im);
    let d = (dx * dx + dy * dy).sqrt();
    if a.k < 0.0 {
        PlanePoint::new(za.re + dx / d * ra, za.im + dy / d * ra)
    } else if b.k < 0.0 {
        PlanePoint::new(zb.re - dx / d * rb, zb.im - dy / d * rb)
    } else {
        let t = ra / (ra + rb);
        PlanePoint::new(za.re + dx * t, za.im + dy * t)
    }
}

fn circumcircle(a: PlanePoint, b: PlanePoint, c: PlanePoint) -> (PlanePoint, f64) {
    // Work relative to `a`; the points are close together deep in a gasket.
    let (bx, by) = (b.re - a.re, b.im - a.im);
    let (cx, cy) = (c.re - a.re, c.im - a.im);
    let d = 2.0 * (bx * cy - by * cx);
    let (b2, c2) = (bx * bx + by * by, cx * cx + cy * cy);
    let ux = (cy * b2 - by * c2) / d;
    let uy = (bx * c2 - cx * b2) / d;
    let center = PlanePoint::new(a.re + ux, a.im + uy);
    (center, (ux * ux + uy * uy).sqrt())
}

/// The circle replacing circle `i` of `q`, obtained by inverting circle `i`
/// in the circle through the three tangency points of the other circles.
/// Returns `(center, radius)`.
pub fn swap_by_inversion(q: &DescartesQuadruple, i: usize) -> (PlanePoint, f64) {
    let others: Vec<&Circle> = (0..4).filter(|&j| j != i).map(|j| &q.circles[j]).collect();
    let p1 = tangency_point(others[0], others[1]);
    let p2 = tangency_point(others[0], others[2]);
    let p3 = tangency_point(others[1], others[2]);
    let (o, big_r) = circumcircle(p1, p2, p3);
    let c = q.circles[i].center();
    let r = 1.0 / q.circles[i].k.abs();
    let (wx, wy) = (c.re - o.re, c.im - o.im);
    let denom = wx * wx + wy * wy - r * r;
    let s = big_r * big_r / denom;
    (
        PlanePoint::new(o.re + wx * s, o.im + wy * s),
        big_r * big_r * r / denom.abs(),
    )
}

/// `n` points drawn uniformly from the unit disk.
pub fn random_disk_points(n: usize, seed: u64) -> Vec<PlanePoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let (x, y): (f64, f64) = (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        if x * x + y * y < 1.0 {
            out.push(PlanePoint::new(x, y));
        }
    }
    out
}

/// Points in a few tight clusters spread over the unit disk, imitating the
/// uneven density of gasket centers.
pub fn clustered_points(n: usize, seed: u64) -> Vec<PlanePoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let hubs = random_disk_points(5, seed ^ 0x9e37_79b9);
    (0..n)
        .map(|_| {
            let h = hubs[rng.gen_range(0..hubs.len())];
            let spread = 10f64.powf(rng.gen_range(-4.0..-1.0));
            PlanePoint::new(
                h.re + rng.gen_range(-spread..spread),
                h.im + rng.gen_range(-spread..spread),
            )
        })
        .collect()
}
