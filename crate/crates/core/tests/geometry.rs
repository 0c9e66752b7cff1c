use apollonian::{root_quadruple, solve_root_circles, DescartesQuadruple, GasketSpec, PlanePoint};
use apollonian_testkit::swap_by_inversion;
use proptest::prelude::*;

/// The five gaskets used by the experiments, as multiples of π.
const EXPERIMENT_SPECS: [(f64, f64); 5] = [
    (2.0 / 3.0, 4.0 / 3.0),
    (1.8 / 3.0, 3.7 / 3.0),
    (1.1 / 3.0, 3.5 / 3.0),
    (2.5 / 3.0, 4.2 / 3.0),
    (2.9 / 3.0, 3.2 / 3.0),
];

fn spec(a: f64, b: f64) -> GasketSpec {
    GasketSpec::from_pi_multiples(a, b).unwrap()
}

fn assert_swap_matches_inversion(q: &DescartesQuadruple, i: usize, rel_tol: f64) {
    let swapped = q.swap(i).unwrap();
    let (center, radius) = swap_by_inversion(q, i);
    let c = swapped.circles[i];
    let tol = rel_tol * radius;
    assert!(
        (c.radius() - radius).abs() <= rel_tol * radius,
        "radius {} vs inversion {}",
        c.radius(),
        radius
    );
    assert!(
        c.center().dist(center) <= tol,
        "center {} vs inversion {}",
        c.center(),
        center
    );
}

#[test]
fn swap_agrees_with_circle_inversion_on_symmetric_root() {
    let q = root_quadruple(&spec(2.0 / 3.0, 4.0 / 3.0)).unwrap();
    for i in 0..4 {
        assert_swap_matches_inversion(&q, i, 1e-12);
    }
    // Swapping the bounding circle fills the central gap with a circle at
    // the origin of curvature 2·3k + 1.
    let central = q.swap(0).unwrap().circles[0];
    let k = (2.0 * 3f64.sqrt() + 3.0) / 3.0;
    assert!((central.k - (6.0 * k + 1.0)).abs() < 1e-12);
    assert!(central.center().norm() < 1e-12);
}

#[test]
fn swap_agrees_with_circle_inversion_along_reduced_words() {
    for (a, b) in EXPERIMENT_SPECS {
        let mut q = root_quadruple(&spec(a, b)).unwrap();
        // A fixed reduced word of length 12.
        for &i in &[0usize, 1, 2, 3, 1, 0, 2, 1, 3, 0, 1, 2] {
            for j in 0..4 {
                // Deep in the packing the three tangency points are nearly
                // collinear and the inversion circle is ill-conditioned, so
                // the oracle is the less accurate side here.
                if q.swap(j).unwrap().circles[j].k < 1e4 {
                    assert_swap_matches_inversion(&q, j, 1e-9);
                }
                let res = q.swap(j).unwrap().residuals();
                assert!(res.within(1e-9, 1e-9), "{res:?}");
            }
            q = q.swap(i).unwrap();
        }
    }
}

#[test]
fn experiment_roots_are_strict() {
    for (a, b) in EXPERIMENT_SPECS {
        let q = root_quadruple(&spec(a, b)).unwrap();
        for i in 0..4 {
            let next = q.swap(i).unwrap().circles[i].k;
            assert!(next > q.circles[i].k, "spec ({a}, {b}) swap {i}: {next}");
        }
    }
}

#[test]
fn root_fails_when_tangency_points_share_a_half_circle() {
    // All three tangency points within an arc of 0.4π: swapping the middle
    // circle produces a larger one on the far side.
    let q = root_quadruple(&spec(0.2, 0.4)).unwrap();
    assert!(!q.is_root());
}

fn angle_pair() -> impl Strategy<Value = (f64, f64)> {
    (0.05f64..1.9, 0.05f64..1.9).prop_filter_map("ordered with gaps", |(a, b)| {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        (hi - lo > 0.05 && 2.0 - hi > 0.05).then_some((lo, hi))
    })
}

proptest! {
    #[test]
    fn root_solve_satisfies_tangency((a, b) in angle_pair()) {
        let spec = spec(a, b);
        let circles = solve_root_circles(&spec).unwrap();
        for (c, theta) in circles.iter().zip(spec.tangency_angles()) {
            let r = c.radius();
            prop_assert!(r > 0.0 && r < 1.0);
            let target = PlanePoint::from_angle(theta) * (1.0 - r);
            prop_assert!(c.center().dist(target) <= 1e-9);
        }
        let q = root_quadruple(&spec).unwrap();
        let res = q.residuals();
        prop_assert!(res.within(1e-9, 1e-9), "{:?}", res);
    }

    #[test]
    fn swap_round_trip((a, b) in angle_pair(), word in prop::collection::vec(0usize..4, 0..20), i in 0usize..4) {
        let mut q = root_quadruple(&spec(a, b)).unwrap();
        for j in word {
            q = q.swap(j).unwrap();
        }
        let back = q.swap(i).unwrap().swap(i).unwrap();
        // Relative to the quadruple's scale: the update is 2·(sum of three) - k.
        let scale = q.curvatures().iter().fold(1.0f64, |m, k| m.max(k.abs()));
        for (x, y) in back.circles.iter().zip(&q.circles) {
            prop_assert!((x.k - y.k).abs() <= 1e-12 * scale);
            prop_assert!(x.m.dist(y.m) <= 1e-12 * scale.max(y.m.norm()));
        }
        // Enumeration never goes past curvature 1e4; residuals are only
        // promised in that range.
        let next = q.swap(i).unwrap();
        prop_assume!(next.curvatures().iter().all(|k| *k <= 1e4));
        let res = next.residuals();
        prop_assert!(res.within(1e-9, 1e-9), "{:?}", res);
    }
}
