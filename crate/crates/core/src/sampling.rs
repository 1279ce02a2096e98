//! Seeded random axis-symmetric convex polygons and balls.

use std::f64::consts::PI;

use rand::Rng;

use crate::gauge::Ball;
use crate::geom2d::{convex_hull, reflect, Axis, ConvexPolygon, Vec2};

/// Rotation about the origin followed by a translation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RigidMotion {
    pub rotation: f64,
    pub translation: Vec2,
}

impl RigidMotion {
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        RigidMotion {
            rotation: rng.gen_range(0.0..2.0 * PI),
            translation: Vec2::new(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0)),
        }
    }

    pub fn apply(&self, p: Vec2) -> Vec2 {
        p.rotate(self.rotation) + self.translation
    }

    pub fn apply_polygon(&self, p: &ConvexPolygon) -> ConvexPolygon {
        p.rotate(self.rotation).translate(self.translation)
    }

    /// Image of the vertical axis through the origin.
    pub fn axis(&self) -> Axis {
        Axis::new(self.translation, Vec2::new(0.0, 1.0).rotate(self.rotation))
            .expect("unit direction")
    }
}

/// Convex polygon symmetric about the y-axis with a vertex count in
/// `min_vertices..=max_vertices`.
///
/// Points are drawn on a superellipse whose lower half is stretched and
/// whose width tapers linearly in `y`, so the shape is generally not
/// centrally symmetric. Some shapes get a flat top face.
pub fn random_symmetric_polygon<R: Rng + ?Sized>(
    rng: &mut R,
    min_vertices: usize,
    max_vertices: usize,
) -> ConvexPolygon {
    assert!(min_vertices >= 3 && min_vertices <= max_vertices);
    loop {
        let target = rng.gen_range(min_vertices..=max_vertices);
        let a = rng.gen_range(0.5..2.0);
        let b = rng.gen_range(0.5..2.0);
        let lower = rng.gen_range(0.4..2.5);
        let taper = rng.gen_range(-0.6..0.6);
        let exponent = rng.gen_range(1.2..4.0);
        let flat_top = rng.gen_bool(0.25).then(|| rng.gen_range(0.3..0.95) * b);
        let on_axis = usize::from(rng.gen_bool(0.5)) + usize::from(rng.gen_bool(0.5));
        let (top_vertex, bottom_vertex) = (on_axis >= 1, on_axis == 2);
        let half = target.saturating_sub(on_axis).div_ceil(2).max(2);

        let point = |theta: f64| {
            let (s, c) = theta.sin_cos();
            let e = 2.0 / exponent;
            let x = a * s.abs().powf(e);
            let mut y = b * c.signum() * c.abs().powf(e);
            if y < 0.0 {
                y *= lower;
            }
            let x = x * (1.0 + taper * y / (b.max(b * lower)));
            let y = flat_top.map_or(y, |cut| y.min(cut));
            Vec2::new(x, y)
        };

        let mut angles: Vec<f64> = (0..half).map(|_| rng.gen_range(0.05..PI - 0.05)).collect();
        angles.sort_by(f64::total_cmp);
        let mut pts = Vec::with_capacity(2 * half + 2);
        for &t in &angles {
            let p = point(t);
            pts.push(p);
            pts.push(Vec2::new(-p.x, p.y));
        }
        if top_vertex {
            pts.push(point(0.0));
        }
        if bottom_vertex {
            pts.push(point(PI));
        }
        let Ok(hull) = convex_hull(&pts) else {
            continue;
        };
        // Nearly collinear runs can be pruned unevenly on the two sides.
        let mirrored = reflect(
            &hull,
            &Axis::new(Vec2::ZERO, Vec2::new(0.0, 1.0)).expect("unit"),
        );
        if (min_vertices..=max_vertices).contains(&hull.len())
            && mirrored.same_vertex_set(&hull, 1e-12 * hull.extent())
        {
            return hull;
        }
    }
}

/// Ball on a random axis-symmetric polygon with the center at a random
/// interior point of the mirror axis, moved by a random rigid motion.
/// Returns the ball and its mirror axis.
pub fn random_axis_ball<R: Rng + ?Sized>(rng: &mut R) -> (Ball, Axis) {
    let motion = RigidMotion::random(rng);
    let poly = random_symmetric_polygon(rng, 8, 40);
    let ball = loop {
        let (lo, hi) = axis_range(&poly);
        let margin = 0.02 * (hi - lo);
        let y = rng.gen_range(lo + margin..hi - margin);
        let center = motion.apply(Vec2::new(0.0, y));
        if let Ok(b) = Ball::new(motion.apply_polygon(&poly), center) {
            break b;
        }
    };
    (ball, motion.axis())
}

/// A random axis ball together with a random polygon sharing its axis.
pub fn random_axis_pair<R: Rng + ?Sized>(rng: &mut R) -> (Ball, ConvexPolygon, Axis) {
    let (ball, axis) = random_axis_ball(rng);
    let scale = rng.gen_range(0.2..3.0);
    let shift = rng.gen_range(-2.0..2.0);
    let local = random_symmetric_polygon(rng, 3, 24)
        .scale(scale)
        .expect("positive scale")
        .translate(Vec2::new(0.0, shift));
    let rotation = axis.direction().angle() - PI / 2.0;
    let poly = local.rotate(rotation).translate(axis.point());
    (ball, poly, axis)
}

fn axis_range(p: &ConvexPolygon) -> (f64, f64) {
    p.vertices()
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
            (lo.min(v.y), hi.max(v.y))
        })
}
