//! The offset Minkowski functional of a convex polygonal ball.
//!
//! A [`Ball`] is a convex polygon together with an interior center. Its gauge
//! of a vector `v` is `1/s`, where `s` is the largest scalar with
//! `center + s·v` still inside the polygon. The gauge is positively
//! homogeneous and subadditive but in general `gauge(v) != gauge(-v)`.

use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom2d::{convex_hull, intersect_convex, negate, ConvexPolygon, Vec2};

/// Minimum signed distance between the center and every edge line.
pub const INTERIOR_TOL: f64 = 1e-12;

/// Convex unit ball with an interior center.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "BallFixture", into = "BallFixture")]
pub struct Ball {
    shape: ConvexPolygon,
    center: Vec2,
}

/// JSON form of a ball: `{"vertices": [[x, y], …], "center": [x, y]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BallFixture {
    pub vertices: Vec<Vec2>,
    pub center: Vec2,
}

impl TryFrom<BallFixture> for Ball {
    type Error = Error;
    fn try_from(f: BallFixture) -> Result<Self> {
        validate_ball(ConvexPolygon::new(f.vertices)?, f.center)
    }
}

impl From<Ball> for BallFixture {
    fn from(b: Ball) -> Self {
        BallFixture {
            vertices: b.shape.vertices().to_vec(),
            center: b.center,
        }
    }
}

/// Value of the gauge; zero only for the zero vector.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize)]
pub struct GaugeValue(f64);

impl GaugeValue {
    pub fn get(self) -> f64 {
        self.0
    }
}

impl From<GaugeValue> for f64 {
    fn from(g: GaugeValue) -> f64 {
        g.0
    }
}

impl Add for GaugeValue {
    type Output = GaugeValue;
    fn add(self, o: GaugeValue) -> GaugeValue {
        GaugeValue(self.0 + o.0)
    }
}

impl fmt::Display for GaugeValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Checks convexity and strict interiority before building a [`Ball`].
pub fn validate_ball(shape: ConvexPolygon, center: Vec2) -> Result<Ball> {
    if !center.is_finite() {
        return Err(Error::NonFinite {
            x: center.x,
            y: center.y,
        });
    }
    // Re-running the constructor catches polygons assembled by hand.
    let shape = ConvexPolygon::new(shape.vertices().to_vec())?;
    if shape.interior_margin(center) < INTERIOR_TOL {
        return Err(Error::CenterNotInterior { center });
    }
    Ok(Ball { shape, center })
}

impl Ball {
    pub fn new(shape: ConvexPolygon, center: Vec2) -> Result<Ball> {
        validate_ball(shape, center)
    }

    /// Ball centered at the area centroid of `shape`.
    pub fn centered(shape: ConvexPolygon) -> Result<Ball> {
        let c = shape.centroid();
        validate_ball(shape, c)
    }

    pub fn shape(&self) -> &ConvexPolygon {
        &self.shape
    }

    pub fn center(&self) -> Vec2 {
        self.center
    }

    /// Shape translated so the center sits at the origin.
    pub fn centered_shape(&self) -> ConvexPolygon {
        self.shape.translate(-self.center)
    }

    /// Gauge of `v`, found by intersecting the ray `center + s·v` with the
    /// boundary edge it leaves through.
    pub fn gauge(&self, v: Vec2) -> f64 {
        if v == Vec2::ZERO {
            return 0.0;
        }
        let c = self.center;
        let mut hit = f64::INFINITY;
        let mut fallback = f64::INFINITY;
        for (p, q) in self.shape.edges() {
            let e = q - p;
            let denom = v.cross(e);
            if denom <= 0.0 {
                continue;
            }
            // c + s·v = p + τ·e
            let s = (p - c).cross(e) / denom;
            let tau = (p - c).cross(v) / denom;
            fallback = fallback.min(s);
            if (-1e-12..=1.0 + 1e-12).contains(&tau) {
                hit = hit.min(s);
            }
        }
        let s = if hit.is_finite() { hit } else { fallback };
        1.0 / s
    }

    /// Boundary point reached from the center in direction `v`.
    pub fn boundary_point_towards(&self, v: Vec2) -> Vec2 {
        self.center + v / self.gauge(v)
    }

    /// Same polygon and center scaled by `factor` about the origin.
    pub fn scaled(&self, factor: f64) -> Result<Ball> {
        validate_ball(self.shape.scale(factor)?, self.center * factor)
    }

    /// True when the shape is point-symmetric about the center within `tol`
    /// (relative to the shape's extent).
    pub fn is_centrally_symmetric(&self, tol: f64) -> bool {
        let local = self.centered_shape();
        let abs_tol = tol * local.extent().max(1.0);
        negate(&local).same_vertex_set(&local, abs_tol)
    }

    /// Direction with the largest gap between `gauge(v)` and `gauge(-v)`
    /// among the vertex directions, or `None` if every gap is within `tol`.
    pub fn asymmetry_witness(&self, tol: f64) -> Option<Vec2> {
        self.shape
            .vertices()
            .iter()
            .map(|&p| p - self.center)
            .map(|d| (d, (self.gauge(d) - self.gauge(-d)).abs()))
            .filter(|&(_, gap)| gap > tol)
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .map(|(d, _)| d)
    }
}

/// Gauge of `v` under `ball`.
pub fn gauge(ball: &Ball, v: Vec2) -> GaugeValue {
    GaugeValue(ball.gauge(v))
}

/// The ball `B ∩ −B` taken about the center. Its gauge is
/// `max(gauge(v), gauge(−v))`.
pub fn symmetrize_intersection(ball: &Ball) -> Ball {
    let local = ball.centered_shape();
    let inter =
        intersect_convex(&local, &negate(&local)).expect("center is interior to both B and -B");
    Ball {
        shape: inter.translate(ball.center),
        center: ball.center,
    }
}

/// The ball `conv(B ∪ −B)` taken about the center. Its gauge is bounded
/// above by `min(gauge(v), gauge(−v))`.
pub fn symmetrize_hull(ball: &Ball) -> Ball {
    let local = ball.centered_shape();
    let mut pts = local.vertices().to_vec();
    pts.extend(local.vertices().iter().map(|&p| -p));
    let hull = convex_hull(&pts).expect("a polygon and its negation span the plane");
    Ball {
        shape: hull.translate(ball.center),
        center: ball.center,
    }
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::geom2d::regular_polygon;

    fn v(x: f64, y: f64) -> Vec2 {
        Vec2::new(x, y)
    }

    fn square_ball() -> Ball {
        let sq = ConvexPolygon::new(vec![v(-1., -1.), v(1., -1.), v(1., 1.), v(-1., 1.)]).unwrap();
        Ball::new(sq, Vec2::ZERO).unwrap()
    }

    fn triangle_ball() -> Ball {
        Ball::new(regular_polygon(3, 1.0, PI / 2.0).unwrap(), Vec2::ZERO).unwrap()
    }

    /// Independent gauge: max over edges of n·v / (n·(p − c)).
    fn half_plane_gauge(ball: &Ball, w: Vec2) -> f64 {
        ball.shape()
            .edges()
            .map(|(p, q)| {
                let n = Vec2::new((q - p).y, -(q - p).x);
                n.dot(w) / n.dot(p - ball.center())
            })
            .fold(0.0, f64::max)
    }

    #[test]
    fn square_gauge_is_sup_norm() {
        assert!((square_ball().gauge(v(3., 4.)) - 4.0).abs() < 1e-15);
        assert_eq!(square_ball().gauge(Vec2::ZERO), 0.0);
    }

    #[test]
    fn triangle_gauge_is_asymmetric() {
        let b = triangle_ball();
        assert!((b.gauge(v(0., 1.)) - 1.0).abs() < 1e-12);
        assert!((b.gauge(v(0., -1.)) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn offset_isosceles_side_gauges() {
        // Apex (0, 1), base (±1, 0), center 4/5 of the height below the apex.
        let tri = ConvexPolygon::new(vec![v(1., 0.), v(0., 1.), v(-1., 0.)]).unwrap();
        let b = Ball::new(tri, v(0., 0.2)).unwrap();
        let right_leg = v(-1., 1.);
        let base = v(2., 0.);
        // Apex-pointing reverse of a leg vs the leg itself.
        assert!((b.gauge(right_leg) - 2.5).abs() < 1e-12);
        assert!((b.gauge(-right_leg) - 5.0).abs() < 1e-12);
        assert!((b.gauge(base) - 2.5).abs() < 1e-12);
    }

    #[test]
    fn matches_half_plane_form_on_sweep() {
        let tri =
            ConvexPolygon::new(vec![v(2., 0.), v(0., 1.5), v(-1., 0.3), v(-0.5, -1.)]).unwrap();
        let b = Ball::new(tri, v(0.1, 0.2)).unwrap();
        for k in 0..360 {
            let w = Vec2::from_angle(k as f64 * PI / 180.0) * 1.7;
            assert!((b.gauge(w) - half_plane_gauge(&b, w)).abs() < 1e-12);
        }
    }

    #[test]
    fn validate_ball_rejects_boundary_and_exterior_centers() {
        let sq = square_ball().shape().clone();
        assert!(Ball::new(sq.clone(), v(0., 0.)).is_ok());
        assert!(matches!(
            Ball::new(sq.clone(), v(1., 0.)),
            Err(Error::CenterNotInterior { .. })
        ));
        assert!(matches!(
            Ball::new(sq, v(2., 0.)),
            Err(Error::CenterNotInterior { .. })
        ));
    }

    #[test]
    fn symmetrizing_a_symmetric_ball_is_identity() {
        let b = square_ball();
        assert!(symmetrize_intersection(&b)
            .shape()
            .same_vertex_set(b.shape(), 1e-12));
        assert!(symmetrize_hull(&b)
            .shape()
            .same_vertex_set(b.shape(), 1e-12));
    }

    #[test]
    fn triangle_intersection_symmetrization_is_regular_hexagon() {
        let si = symmetrize_intersection(&triangle_ball());
        assert_eq!(si.shape().len(), 6);
        // Crossing points of the triangle and its negation sit at radius 1/√3.
        let r = 1.0 / 3f64.sqrt();
        let expect = regular_polygon(6, r, 0.0).unwrap();
        assert!(si.shape().same_vertex_set(&expect, 1e-12));
        assert!(si.is_centrally_symmetric(1e-10));
    }

    #[test]
    fn triangle_hull_symmetrization_is_hexagram_hull() {
        let su = symmetrize_hull(&triangle_ball());
        let expect = regular_polygon(6, 1.0, PI / 2.0).unwrap();
        assert!(su.shape().same_vertex_set(&expect, 1e-12));
    }

    #[test]
    fn symmetrized_gauges_bracket_original() {
        let b = triangle_ball();
        let si = symmetrize_intersection(&b);
        let su = symmetrize_hull(&b);
        for k in 0..360 {
            let w = Vec2::from_angle(k as f64 * PI / 180.0);
            let (g, gm) = (b.gauge(w), b.gauge(-w));
            assert!(si.gauge(w) >= g - 1e-12);
            assert!((si.gauge(w) - g.max(gm)).abs() < 1e-10);
            assert!(su.gauge(w) <= g.min(gm) + 1e-10);
        }
    }

    #[test]
    fn asymmetry_witness() {
        assert!(square_ball().asymmetry_witness(1e-9).is_none());
        let w = triangle_ball().asymmetry_witness(1e-9).unwrap();
        let b = triangle_ball();
        assert!((b.gauge(w) - b.gauge(-w)).abs() > 0.5);
    }

    #[test]
    fn ball_fixture_json() {
        let b: Ball =
            serde_json::from_str(r#"{"vertices": [[-1,-1],[1,-1],[1,1],[-1,1]], "center": [0,0]}"#)
                .unwrap();
        assert_eq!(b, square_ball());
        let bad = serde_json::from_str::<Ball>(
            r#"{"vertices": [[-1,-1],[1,-1],[1,1],[-1,1]], "center": [1,0]}"#,
        );
        assert!(bad.is_err());
    }
}
