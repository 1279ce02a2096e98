use std::f64::consts::PI;

use minkpi::geom2d::{convex_hull, intersect_convex, negate, reflect, symmetry_axes};
use minkpi::sampling::{random_axis_ball, random_symmetric_polygon, RigidMotion};
use minkpi::{
    regular_polygon, symmetrize_hull, symmetrize_intersection, Axis, Ball, ConvexPolygon, Vec2,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn is_ccw(p: &ConvexPolygon) -> bool {
    let n = p.len();
    n >= 3
        && (0..n).all(|i| {
            let (a, b, c) = (p.vertex(i), p.vertex(i + 1), p.vertex(i + 2));
            (b - a).cross(c - b) > 0.0
        })
}

fn edge_lengths(p: &ConvexPolygon) -> Vec<f64> {
    let mut l: Vec<f64> = p.edge_vectors().map(|e| e.norm()).collect();
    l.sort_by(f64::total_cmp);
    l
}

fn point() -> impl Strategy<Value = Vec2> {
    (-10.0..10.0f64, -10.0..10.0f64).prop_map(|(x, y)| Vec2::new(x, y))
}

fn cloud() -> impl Strategy<Value = Vec<Vec2>> {
    prop::collection::vec(point(), 3..60)
}

/// Random polygon containing the origin in its interior.
fn polygon_about_origin(seed: u64) -> ConvexPolygon {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = rng.gen_range(3..20);
    let pts: Vec<Vec2> = (0..k)
        .map(|i| {
            let a = i as f64 * 2.0 * PI / k as f64 + rng.gen_range(0.0..0.3);
            Vec2::from_angle(a) * rng.gen_range(0.5..3.0)
        })
        .collect();
    convex_hull(&pts).unwrap()
}

proptest! {
    #[test]
    fn hull_is_idempotent(pts in cloud()) {
        if let Ok(h) = convex_hull(&pts) {
            let again = convex_hull(h.vertices()).unwrap();
            prop_assert!(again.same_vertex_set(&h, 0.0));
            prop_assert!(is_ccw(&h));
        }
    }

    #[test]
    fn intersection_commutes(s1 in any::<u64>(), s2 in any::<u64>()) {
        let (p, q) = (polygon_about_origin(s1), polygon_about_origin(s2));
        let pq = intersect_convex(&p, &q).unwrap();
        let qp = intersect_convex(&q, &p).unwrap();
        prop_assert!(pq.same_vertex_set(&qp, 1e-10));
        prop_assert!(is_ccw(&pq));
    }

    #[test]
    fn reflect_and_negate_keep_edge_lengths(seed in any::<u64>(), angle in 0.0..PI, dx in -3.0..3.0f64) {
        let p = polygon_about_origin(seed);
        let axis = Axis::new(Vec2::new(dx, 0.5), Vec2::from_angle(angle)).unwrap();
        let base = edge_lengths(&p);
        for q in [reflect(&p, &axis), negate(&p)] {
            prop_assert!(is_ccw(&q));
            for (a, b) in edge_lengths(&q).iter().zip(&base) {
                prop_assert!((a - b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn gauge_is_positively_homogeneous(seed in any::<u64>(), angle in 0.0..2.0 * PI, alpha in 1e-3..1e3f64) {
        let (ball, _) = random_axis_ball(&mut ChaCha8Rng::seed_from_u64(seed));
        let v = Vec2::from_angle(angle);
        let g = ball.gauge(v);
        prop_assert!((ball.gauge(v * alpha) - alpha * g).abs() <= 1e-12 * alpha * g);
    }

    #[test]
    fn boundary_points_have_unit_gauge(seed in any::<u64>(), t in 0.0..1.0f64) {
        let (ball, _) = random_axis_ball(&mut ChaCha8Rng::seed_from_u64(seed));
        let p = ball.shape().boundary_point(t);
        prop_assert!((ball.gauge(p - ball.center()) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn smaller_ball_has_larger_gauge(seed in any::<u64>(), clip in any::<u64>(), angle in 0.0..2.0 * PI) {
        let (big, _) = random_axis_ball(&mut ChaCha8Rng::seed_from_u64(seed));
        let cutter = polygon_about_origin(clip)
            .scale(0.5 * big.shape().extent()).unwrap()
            .translate(big.center());
        let small_shape = intersect_convex(big.shape(), &cutter).unwrap();
        let small = Ball::new(small_shape, big.center()).unwrap();
        let v = Vec2::from_angle(angle);
        prop_assert!(big.gauge(v) <= small.gauge(v) * (1.0 + 1e-12));
    }

    #[test]
    fn symmetrized_balls_sandwich_the_gauge(seed in any::<u64>(), angle in 0.0..2.0 * PI) {
        let (ball, _) = random_axis_ball(&mut ChaCha8Rng::seed_from_u64(seed));
        let hull = symmetrize_hull(&ball);
        let inter = symmetrize_intersection(&ball);
        let v = Vec2::from_angle(angle);
        let (f, b) = (ball.gauge(v), ball.gauge(-v));
        prop_assert!(hull.gauge(v) <= f.min(b) + 1e-10);
        prop_assert!((inter.gauge(v) - f.max(b)).abs() < 1e-10);
        prop_assert!(is_ccw(hull.shape()) && is_ccw(inter.shape()));
    }
}

#[test]
fn regular_polygons_have_n_axes() {
    for n in 3..=40 {
        let p = regular_polygon(n, 1.7, 0.4).unwrap();
        assert!(is_ccw(&p));
        assert_eq!(symmetry_axes(&p, 1e-9).len(), n, "n={n}");
    }
}

#[test]
fn random_symmetric_polygons_are_ccw_with_an_axis() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..300 {
        let p = random_symmetric_polygon(&mut rng, 8, 40);
        let m = RigidMotion::random(&mut rng);
        let q = m.apply_polygon(&p);
        assert!(is_ccw(&q));
        let axis = m.axis();
        assert!(symmetry_axes(&q, 1e-9)
            .iter()
            .any(|a| a.same_line(&axis, 1e-9)));
    }
}

#[test]
fn triangle_inequality_ten_thousand() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let balls: Vec<Ball> = (0..100).map(|_| random_axis_ball(&mut rng).0).collect();
    for i in 0..10_000 {
        let b = &balls[i % balls.len()];
        let u = Vec2::from_angle(rng.gen_range(0.0..2.0 * PI)) * rng.gen_range(0.01..10.0);
        let v = Vec2::from_angle(rng.gen_range(0.0..2.0 * PI)) * rng.gen_range(0.01..10.0);
        assert!(b.gauge(u + v) <= b.gauge(u) + b.gauge(v) + 1e-9);
    }
}
