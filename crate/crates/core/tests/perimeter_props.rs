use minkpi::perimeter::{width_profile_along, AXIS_TOL};
use minkpi::sampling::{random_axis_ball, random_axis_pair, random_symmetric_polygon, RigidMotion};
use minkpi::{
    measure_perimeters, pi_ball, shared_axis, symmetrize_hull, symmetrize_intersection, Ball,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn chain_holds(seed in any::<u64>()) {
        let (ball, poly, _) = random_axis_pair(&mut rng(seed));
        let r = measure_perimeters(&ball, &poly);
        let hull = measure_perimeters(&symmetrize_hull(&ball), &poly).ccw;
        let inter = measure_perimeters(&symmetrize_intersection(&ball), &poly).ccw;
        let t = 1e-9 * r.max_sum.max(1.0);
        prop_assert!(hull <= r.min_sum + t);
        prop_assert!(r.min_sum <= r.ccw + t && r.ccw <= r.max_sum + t);
        prop_assert!(r.min_sum <= r.cw + t && r.cw <= r.max_sum + t);
        prop_assert!((r.max_sum - inter).abs() <= t);
    }

    #[test]
    fn shared_axis_gives_equal_directions(seed in any::<u64>()) {
        let (ball, poly, _) = random_axis_pair(&mut rng(seed));
        prop_assert!(shared_axis(&ball, &poly, AXIS_TOL).is_some());
        let r = measure_perimeters(&ball, &poly);
        prop_assert!((r.ccw - r.cw).abs() < 1e-9 * r.ccw.max(1.0));
    }

    #[test]
    fn symmetric_ball_has_no_min_max_gap(seed in any::<u64>()) {
        let (ball, poly, _) = random_axis_pair(&mut rng(seed));
        let sym = symmetrize_intersection(&ball);
        let r = measure_perimeters(&sym, &poly);
        prop_assert!((r.max_sum - r.min_sum).abs() < 1e-9 * r.max_sum.max(1.0));
    }

    #[test]
    fn inscribed_polygon_is_shorter(seed in any::<u64>(), shrink in 0.05..1.0f64) {
        let (ball, outer, axis) = random_axis_pair(&mut rng(seed));
        // Scaling about an axis point inside the polygon keeps the axis.
        let (t0, t1) = outer.chord(axis.point(), axis.direction()).unwrap();
        let anchor = axis.point() + axis.direction() * (0.5 * (t0 + t1));
        let inner = outer.map(|p| anchor + (p - anchor) * shrink).unwrap();
        let a = measure_perimeters(&ball, &inner).ccw;
        let b = measure_perimeters(&ball, &outer).ccw;
        prop_assert!(a <= b + 1e-9);
    }

    #[test]
    fn pi_ball_is_scale_invariant(seed in any::<u64>(), factor in 1e-2..1e2f64) {
        let (ball, _) = random_axis_ball(&mut rng(seed));
        let scaled = ball.scaled(factor).unwrap();
        prop_assert!((pi_ball(&scaled).unwrap() - pi_ball(&ball).unwrap()).abs() < 1e-10);
    }
}

/// No strict local minimum strictly between two strict local maxima.
fn has_no_interior_dip(d: &[f64], tol: f64) -> bool {
    let mut rising_ended = false;
    for w in d.windows(2) {
        if w[1] < w[0] - tol {
            rising_ended = true;
        } else if w[1] > w[0] + tol && rising_ended {
            return false;
        }
    }
    true
}

#[test]
fn width_profiles_are_unimodal() {
    let mut r = rng(5);
    for _ in 0..1000 {
        let poly = random_symmetric_polygon(&mut r, 8, 40);
        let motion = RigidMotion::random(&mut r);
        let shape = motion.apply_polygon(&poly);
        let ball = Ball::centered(shape).unwrap();
        let axis = minkpi::Axis::new(ball.center(), motion.axis().direction()).unwrap();
        let profile = width_profile_along(&ball, &axis, 101).unwrap();
        let d: Vec<f64> = profile.samples.iter().map(|s| s.1).collect();
        assert!(has_no_interior_dip(&d, 1e-9));
        assert!(profile.is_unimodal(1e-9));
        assert!(d.iter().all(|&x| x >= 0.0));
        assert!(d[1..d.len() - 1].iter().all(|&x| x > 0.0));
    }
}

#[test]
fn random_balls_are_at_least_three() {
    let mut r = rng(17);
    let mut worst = f64::INFINITY;
    for _ in 0..500 {
        let (ball, _) = random_axis_ball(&mut r);
        worst = worst.min(pi_ball(&ball).unwrap());
    }
    assert!(worst >= 3.0 - 1e-9, "{worst}");
}

#[test]
fn moving_the_center_along_the_axis_keeps_pi_defined() {
    let mut r = rng(23);
    for _ in 0..50 {
        let (ball, axis) = random_axis_ball(&mut r);
        let (t0, t1) = ball.shape().chord(axis.point(), axis.direction()).unwrap();
        let other = axis.point()
            + axis.direction() * r.gen_range(t0 + 0.1 * (t1 - t0)..t1 - 0.1 * (t1 - t0));
        let moved = Ball::new(ball.shape().clone(), other).unwrap();
        assert!(pi_ball(&moved).is_ok());
    }
}
