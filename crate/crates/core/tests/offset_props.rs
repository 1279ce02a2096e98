use minkpi::offset_shapes::{pi_hexagon, pi_isosceles, pi_square};
use minkpi::{
    build_offset_ball, measure_perimeters, pi_ball, solve_offset_for_pi, AxisConfig, OffsetShape,
    OffsetShapeSpec,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_shape(rng: &mut ChaCha8Rng, kind: usize) -> OffsetShape {
    let config = if rng.gen_bool(0.5) {
        AxisConfig::A
    } else {
        AxisConfig::B
    };
    let side = rng.gen_range(0.1..10.0);
    match kind {
        0 => OffsetShape::IsoscelesTriangle {
            side,
            base: side * rng.gen_range(0.05..1.95),
        },
        1 => OffsetShape::Square { side, config },
        _ => OffsetShape::Hexagon { side, config },
    }
}

fn random_offset(rng: &mut ChaCha8Rng, shape: &OffsetShape) -> f64 {
    let iv = shape.interval().unwrap();
    iv.hi * rng.gen_range(0.01..if iv.hi_closed { 1.0 } else { 0.99 })
}

#[test]
fn closed_forms_match_geometry_on_random_specs() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for kind in 0..3 {
        for config in [AxisConfig::A, AxisConfig::B] {
            for _ in 0..200 {
                let mut shape = random_shape(&mut rng, kind);
                match &mut shape {
                    OffsetShape::Square { config: c, .. }
                    | OffsetShape::Hexagon { config: c, .. } => *c = config,
                    OffsetShape::IsoscelesTriangle { .. } => {}
                }
                let offset = random_offset(&mut rng, &shape);
                let closed = shape.pi(offset).unwrap().pi;
                let ball = build_offset_ball(&OffsetShapeSpec { shape, offset }).unwrap();
                let geo = pi_ball(&ball).unwrap();
                assert!(
                    (closed - geo).abs() < 1e-9 * closed.max(1.0),
                    "{shape:?} {offset}: {closed} vs {geo}"
                );
            }
        }
    }
}

#[test]
fn minima_are_floors() {
    let s3 = 3f64.sqrt();
    for i in 1..10_000 {
        let f = i as f64 / 10_000.0;
        assert!(pi_isosceles(1.0, f).unwrap().pi >= 4.5 - 1e-12);
        assert!(pi_square(1.0, f, AxisConfig::A).unwrap().pi >= 4.0 - 1e-12);
        assert!(pi_square(1.0, f * 2f64.sqrt(), AxisConfig::B).unwrap().pi >= 4.0 - 1e-12);
        assert!(pi_hexagon(1.0, f * s3 / 2.0, AxisConfig::A).unwrap().pi >= 3.0 - 1e-12);
        assert!(pi_hexagon(1.0, f, AxisConfig::B).unwrap().pi >= 3.0 - 1e-12);
    }
}

#[test]
fn triangle_branches_are_monotone() {
    let pts: Vec<f64> = (1..3000).map(|i| i as f64 / 3000.0).collect();
    for w in pts.windows(2) {
        let (a, b) = (
            pi_isosceles(1.0, w[0]).unwrap().pi,
            pi_isosceles(1.0, w[1]).unwrap().pi,
        );
        if w[1] <= 2.0 / 3.0 {
            assert!(b < a);
        } else if w[0] >= 2.0 / 3.0 {
            assert!(b > a);
        }
    }
}

#[test]
fn triangle_min_and_max_split_off_the_minimum() {
    let shape = OffsetShape::IsoscelesTriangle {
        side: 2.0,
        base: 1.5,
    };
    let h = (4.0f64 - 0.5625).sqrt();
    for i in 1..40 {
        let offset = h * i as f64 / 40.0;
        let ball = build_offset_ball(&OffsetShapeSpec { shape, offset }).unwrap();
        let r = measure_perimeters(&ball, ball.shape());
        if (offset - 2.0 * h / 3.0).abs() > 1e-6 {
            assert!(r.min_sum < r.max_sum - 1e-9, "{offset}");
        }
    }
    let ball = build_offset_ball(&OffsetShapeSpec {
        shape,
        offset: 2.0 * h / 3.0,
    })
    .unwrap();
    let r = measure_perimeters(&ball, ball.shape());
    assert!((r.max_sum - r.min_sum).abs() < 1e-9);
}

proptest! {
    #[test]
    fn solver_round_trips(seed in any::<u64>(), kind in 0usize..3, excess in 1e-6..50.0f64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let shape = random_shape(&mut rng, kind);
        let (_, min_pi) = shape.minimum().unwrap();
        let target = min_pi + excess;
        let roots = solve_offset_for_pi(&shape, target).unwrap();
        prop_assert!(!roots.is_empty() && roots.len() <= 2);
        for x in roots {
            prop_assert!((shape.pi(x).unwrap().pi - target).abs() < 1e-9 * target);
        }
    }
}
