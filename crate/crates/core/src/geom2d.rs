//! Planar primitives: vectors, mirror axes and strictly convex polygons.
//!
//! Everything here is `f64` with explicit tolerances. Constructors normalize
//! their input (duplicate and collinear vertices are dropped) so that two
//! polygons describing the same set compare equal as vertex sets.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default tolerance for geometric comparisons (vertex matching, axes).
pub const GEOM_TOL: f64 = 1e-9;

/// Adjacent vertices closer than this are merged.
const DUP_TOL: f64 = 1e-12;

/// A vertex whose neighbouring edges turn by less than this (sine of the
/// turning angle) is treated as collinear and dropped.
const COLLINEAR_SIN: f64 = 1e-10;

/// A point or displacement in the plane.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 2]", into = "[f64; 2]")]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    /// Panics on NaN or infinite components; use [`Vec2::try_new`] for
    /// untrusted input.
    #[inline]
    pub fn new(x: f64, y: f64) -> Self {
        assert!(x.is_finite() && y.is_finite(), "non-finite Vec2 ({x}, {y})");
        Vec2 { x, y }
    }

    pub fn try_new(x: f64, y: f64) -> Result<Self> {
        if x.is_finite() && y.is_finite() {
            Ok(Vec2 { x, y })
        } else {
            Err(Error::NonFinite { x, y })
        }
    }

    /// Unit vector at `angle` radians from the positive x axis.
    #[inline]
    pub fn from_angle(angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Vec2 { x: c, y: s }
    }

    #[inline]
    pub fn dot(self, o: Vec2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 3D cross product; positive when `o` is
    /// counterclockwise from `self`.
    #[inline]
    pub fn cross(self, o: Vec2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    #[inline]
    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    /// Rotation by +90°.
    #[inline]
    pub fn perp(self) -> Vec2 {
        Vec2 {
            x: -self.y,
            y: self.x,
        }
    }

    pub fn rotate(self, angle: f64) -> Vec2 {
        let (s, c) = angle.sin_cos();
        Vec2 {
            x: c * self.x - s * self.y,
            y: s * self.x + c * self.y,
        }
    }

    pub fn normalized(self) -> Option<Vec2> {
        let n = self.norm();
        (n > 0.0 && n.is_finite()).then(|| self / n)
    }

    #[inline]
    pub fn dist(self, o: Vec2) -> f64 {
        (self - o).norm()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }
}

impl TryFrom<[f64; 2]> for Vec2 {
    type Error = Error;
    fn try_from(v: [f64; 2]) -> Result<Self> {
        Vec2::try_new(v[0], v[1])
    }
}

impl From<Vec2> for [f64; 2] {
    fn from(v: Vec2) -> Self {
        [v.x, v.y]
    }
}

impl fmt::Display for Vec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    #[inline]
    fn add(self, o: Vec2) -> Vec2 {
        Vec2 {
            x: self.x + o.x,
            y: self.y + o.y,
        }
    }
}

impl AddAssign for Vec2 {
    #[inline]
    fn add_assign(&mut self, o: Vec2) {
        self.x += o.x;
        self.y += o.y;
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    #[inline]
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2 {
            x: self.x - o.x,
            y: self.y - o.y,
        }
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    #[inline]
    fn neg(self) -> Vec2 {
        Vec2 {
            x: -self.x,
            y: -self.y,
        }
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    #[inline]
    fn mul(self, s: f64) -> Vec2 {
        Vec2 {
            x: self.x * s,
            y: self.y * s,
        }
    }
}

impl Mul<Vec2> for f64 {
    type Output = Vec2;
    #[inline]
    fn mul(self, v: Vec2) -> Vec2 {
        v * self
    }
}

impl Div<f64> for Vec2 {
    type Output = Vec2;
    #[inline]
    fn div(self, s: f64) -> Vec2 {
        Vec2 {
            x: self.x / s,
            y: self.y / s,
        }
    }
}

/// A line through `point` with unit `direction`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Axis {
    point: Vec2,
    direction: Vec2,
}

impl Axis {
    /// `direction` is normalized; a zero direction is rejected.
    pub fn new(point: Vec2, direction: Vec2) -> Result<Self> {
        if !point.is_finite() || !direction.is_finite() {
            return Err(Error::NonFinite {
                x: direction.x,
                y: direction.y,
            });
        }
        let direction = direction
            .normalized()
            .ok_or_else(|| Error::InvalidParameter("axis direction is zero".into()))?;
        Ok(Axis { point, direction })
    }

    pub fn point(&self) -> Vec2 {
        self.point
    }

    pub fn direction(&self) -> Vec2 {
        self.direction
    }

    /// Unit normal `u` such that `(u, direction)` is a counterclockwise frame.
    pub fn normal(&self) -> Vec2 {
        Vec2::new(self.direction.y, -self.direction.x)
    }

    pub fn reflect_point(&self, p: Vec2) -> Vec2 {
        let rel = p - self.point;
        let along = self.direction * rel.dot(self.direction);
        self.point + along * 2.0 - rel
    }

    pub fn distance_to(&self, p: Vec2) -> f64 {
        self.direction.cross(p - self.point).abs()
    }

    /// Same line within `tol` (parallel directions, either sign, and
    /// coincident points).
    pub fn same_line(&self, other: &Axis, tol: f64) -> bool {
        self.direction.cross(other.direction).abs() <= tol && self.distance_to(other.point) <= tol
    }

    /// Same line, with the direction flipped.
    pub fn reversed(&self) -> Axis {
        Axis {
            point: self.point,
            direction: -self.direction,
        }
    }
}

/// Strictly convex polygon with counterclockwise vertices; the closing edge
/// from the last vertex back to the first is implied.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec2>", into = "Vec<Vec2>")]
pub struct ConvexPolygon {
    vertices: Vec<Vec2>,
}

impl TryFrom<Vec<Vec2>> for ConvexPolygon {
    type Error = Error;
    fn try_from(v: Vec<Vec2>) -> Result<Self> {
        ConvexPolygon::new(v)
    }
}

impl From<ConvexPolygon> for Vec<Vec2> {
    fn from(p: ConvexPolygon) -> Self {
        p.vertices
    }
}

impl ConvexPolygon {
    /// Validates and normalizes a counterclockwise vertex loop.
    ///
    /// Repeated adjacent vertices and collinear middle vertices are dropped.
    /// Fails with `NotConvex` for clockwise, reflex or self-winding loops.
    pub fn new(vertices: Vec<Vec2>) -> Result<Self> {
        if let Some(bad) = vertices.iter().find(|v| !v.is_finite()) {
            return Err(Error::NonFinite { x: bad.x, y: bad.y });
        }
        let vertices = normalize_loop(vertices)?;
        if vertices.len() < 3 {
            return Err(Error::DegenerateInput(format!(
                "polygon needs at least 3 non-collinear vertices, got {}",
                vertices.len()
            )));
        }
        let n = vertices.len();
        let mut turning = 0.0;
        for i in 0..n {
            let a = vertices[(i + 1) % n] - vertices[i];
            let b = vertices[(i + 2) % n] - vertices[(i + 1) % n];
            let c = a.cross(b);
            if c <= 0.0 {
                return Err(Error::NotConvex(format!(
                    "turn at vertex {} is not counterclockwise",
                    (i + 1) % n
                )));
            }
            turning += c.atan2(a.dot(b));
        }
        if (turning - 2.0 * PI).abs() > 1e-6 {
            return Err(Error::NotConvex(format!(
                "total turning {turning} is not 2π"
            )));
        }
        Ok(ConvexPolygon { vertices })
    }

    /// For transforms that provably keep a valid polygon valid.
    pub(crate) fn from_valid(vertices: Vec<Vec2>) -> Self {
        debug_assert!(vertices.len() >= 3);
        ConvexPolygon { vertices }
    }

    pub fn vertices(&self) -> &[Vec2] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex(&self, i: usize) -> Vec2 {
        self.vertices[i % self.vertices.len()]
    }

    /// Edges `(start, end)` in counterclockwise order.
    pub fn edges(&self) -> impl Iterator<Item = (Vec2, Vec2)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// Edge vectors `x_{i+1} − x_i` in counterclockwise order.
    pub fn edge_vectors(&self) -> impl Iterator<Item = Vec2> + '_ {
        self.edges().map(|(p, q)| q - p)
    }

    pub fn area(&self) -> f64 {
        0.5 * self.edges().map(|(p, q)| p.cross(q)).sum::<f64>()
    }

    /// Area centroid.
    pub fn centroid(&self) -> Vec2 {
        // Shift to the first vertex for conditioning.
        let o = self.vertices[0];
        let mut acc = Vec2::ZERO;
        let mut twice_area = 0.0;
        for (p, q) in self.edges() {
            let (p, q) = (p - o, q - o);
            let w = p.cross(q);
            twice_area += w;
            acc += (p + q) * w;
        }
        o + acc / (3.0 * twice_area)
    }

    /// Largest distance from the centroid to a vertex.
    pub fn extent(&self) -> f64 {
        let c = self.centroid();
        self.vertices.iter().map(|v| v.dist(c)).fold(0.0, f64::max)
    }

    pub fn euclidean_perimeter(&self) -> f64 {
        self.edge_vectors().map(Vec2::norm).sum()
    }

    /// True when `p` lies inside or within `tol` of the boundary.
    pub fn contains(&self, p: Vec2, tol: f64) -> bool {
        self.edges()
            .all(|(a, b)| (b - a).cross(p - a) / (b - a).norm() >= -tol)
    }

    /// Smallest signed distance from `p` to an edge line (positive inside).
    pub fn interior_margin(&self, p: Vec2) -> f64 {
        self.edges()
            .map(|(a, b)| (b - a).cross(p - a) / (b - a).norm())
            .fold(f64::INFINITY, f64::min)
    }

    /// Applies `f` to every vertex and renormalizes.
    pub fn map(&self, f: impl Fn(Vec2) -> Vec2) -> Result<ConvexPolygon> {
        ConvexPolygon::new(self.vertices.iter().map(|&v| f(v)).collect())
    }

    pub fn translate(&self, by: Vec2) -> ConvexPolygon {
        ConvexPolygon::from_valid(self.vertices.iter().map(|&v| v + by).collect())
    }

    /// Scales about the origin; `factor` must be positive.
    pub fn scale(&self, factor: f64) -> Result<ConvexPolygon> {
        if !(factor > 0.0 && factor.is_finite()) {
            return Err(Error::InvalidParameter(format!("scale factor {factor}")));
        }
        Ok(ConvexPolygon::from_valid(
            self.vertices.iter().map(|&v| v * factor).collect(),
        ))
    }

    /// Rigid rotation about the origin.
    pub fn rotate(&self, angle: f64) -> ConvexPolygon {
        ConvexPolygon::from_valid(self.vertices.iter().map(|v| v.rotate(angle)).collect())
    }

    /// Vertex-set equality within `tol`, ignoring the starting index.
    pub fn same_vertex_set(&self, other: &ConvexPolygon, tol: f64) -> bool {
        self.len() == other.len()
            && self
                .vertices
                .iter()
                .all(|v| other.vertices.iter().any(|w| v.dist(*w) <= tol))
            && other
                .vertices
                .iter()
                .all(|v| self.vertices.iter().any(|w| v.dist(*w) <= tol))
    }

    /// Parameter interval `[t0, t1]` of the line `point + t·direction`
    /// that lies inside the polygon, or `None` if the line misses it.
    pub fn chord(&self, point: Vec2, direction: Vec2) -> Option<(f64, f64)> {
        let mut lo = f64::NEG_INFINITY;
        let mut hi = f64::INFINITY;
        for (a, b) in self.edges() {
            let e = b - a;
            // Inside when cross(e, x − a) ≥ 0 for x = point + t·direction.
            let c0 = e.cross(point - a);
            let c1 = e.cross(direction);
            // Lines parallel to an edge and within rounding of it lie on it.
            if c1.abs() <= 1e-12 * e.norm() * direction.norm() {
                if c0 < -1e-12 * e.norm() * (e.norm() + (point - a).norm()) {
                    return None;
                }
                continue;
            }
            let t = -c0 / c1;
            if c1 > 0.0 {
                lo = lo.max(t);
            } else {
                hi = hi.min(t);
            }
        }
        (lo <= hi && lo.is_finite() && hi.is_finite()).then_some((lo, hi))
    }

    /// Point at fraction `t` of the Euclidean perimeter, starting from
    /// vertex 0 and running counterclockwise. `t` wraps modulo 1.
    pub fn boundary_point(&self, t: f64) -> Vec2 {
        let total = self.euclidean_perimeter();
        let mut target = t.rem_euclid(1.0) * total;
        for (p, q) in self.edges() {
            let len = (q - p).norm();
            if target <= len {
                return p + (q - p) * (target / len);
            }
            target -= len;
        }
        self.vertices[0]
    }

    /// Sutherland–Hodgman clip against the half-plane left of `a → b`.
    fn clip_left_of(points: &[Vec2], a: Vec2, b: Vec2, eps: f64) -> Vec<Vec2> {
        let e = b - a;
        let len = e.norm();
        let side = |p: Vec2| e.cross(p - a) / len;
        let mut out = Vec::with_capacity(points.len() + 1);
        let n = points.len();
        for i in 0..n {
            let cur = points[i];
            let next = points[(i + 1) % n];
            let (sc, sn) = (side(cur), side(next));
            if sc >= -eps {
                out.push(cur);
            }
            if (sc > eps && sn < -eps) || (sc < -eps && sn > eps) {
                let t = sc / (sc - sn);
                out.push(cur + (next - cur) * t);
            }
        }
        out
    }
}

/// Drops non-finite-free duplicates and collinear middles from a loop.
fn normalize_loop(mut pts: Vec<Vec2>) -> Result<Vec<Vec2>> {
    loop {
        let n = pts.len();
        if n < 3 {
            return Ok(pts);
        }
        // Merge duplicates, including the wrap-around pair.
        let mut dedup: Vec<Vec2> = Vec::with_capacity(n);
        for &p in &pts {
            if dedup.last().is_none_or(|&q: &Vec2| q.dist(p) > DUP_TOL) {
                dedup.push(p);
            }
        }
        while dedup.len() > 1 && dedup[0].dist(*dedup.last().unwrap()) <= DUP_TOL {
            dedup.pop();
        }
        let n = dedup.len();
        if n < 3 {
            return Ok(dedup);
        }
        let mut keep = vec![true; n];
        let mut changed = n != pts.len();
        for i in 0..n {
            let prev = dedup[(i + n - 1) % n];
            let cur = dedup[i];
            let next = dedup[(i + 1) % n];
            let (a, b) = (cur - prev, next - cur);
            let sin = a.cross(b) / (a.norm() * b.norm());
            if sin.abs() <= COLLINEAR_SIN {
                if a.dot(b) < 0.0 {
                    return Err(Error::NotConvex(format!(
                        "vertex {i} folds back on its edge"
                    )));
                }
                keep[i] = false;
                changed = true;
                // Re-examine neighbours next round.
                break;
            }
        }
        pts = dedup
            .into_iter()
            .zip(keep)
            .filter_map(|(p, k)| k.then_some(p))
            .collect();
        if !changed {
            return Ok(pts);
        }
    }
}

/// Minimal counterclockwise convex polygon containing all `points`.
pub fn convex_hull(points: &[Vec2]) -> Result<ConvexPolygon> {
    if let Some(bad) = points.iter().find(|v| !v.is_finite()) {
        return Err(Error::NonFinite { x: bad.x, y: bad.y });
    }
    let mut pts: Vec<Vec2> = points.to_vec();
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    pts.dedup_by(|a, b| a.dist(*b) <= DUP_TOL);
    if pts.len() < 3 {
        return Err(Error::DegenerateInput(
            "fewer than 3 distinct points".into(),
        ));
    }
    let scale = pts
        .iter()
        .map(|p| p.x.abs().max(p.y.abs()))
        .fold(1.0, f64::max);
    let eps = 1e-14 * scale * scale;
    let turn = |o: Vec2, a: Vec2, b: Vec2| (a - o).cross(b - o);

    let mut lower: Vec<Vec2> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && turn(lower[lower.len() - 2], lower[lower.len() - 1], p) <= eps {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Vec2> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && turn(upper[upper.len() - 2], upper[upper.len() - 1], p) <= eps {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() < 3 {
        return Err(Error::DegenerateInput("all points are collinear".into()));
    }
    ConvexPolygon::new(lower).map_err(|e| match e {
        Error::NotConvex(_) => Error::DegenerateInput("all points are collinear".into()),
        other => other,
    })
}

/// Set intersection of two convex polygons by successive half-plane clipping.
pub fn intersect_convex(p: &ConvexPolygon, q: &ConvexPolygon) -> Result<ConvexPolygon> {
    let scale = p.extent().max(q.extent()).max(1.0);
    let eps = 1e-13 * scale;
    let mut pts = p.vertices.clone();
    for (a, b) in q.edges() {
        pts = ConvexPolygon::clip_left_of(&pts, a, b, eps);
        if pts.len() < 3 {
            return Err(Error::EmptyIntersection);
        }
    }
    match ConvexPolygon::new(pts) {
        Ok(poly) if poly.area() > 1e-12 * scale * scale => Ok(poly),
        Ok(_) | Err(Error::DegenerateInput(_)) | Err(Error::NotConvex(_)) => {
            Err(Error::EmptyIntersection)
        }
        Err(e) => Err(e),
    }
}

/// Point reflection through the origin.
pub fn negate(p: &ConvexPolygon) -> ConvexPolygon {
    // A half-turn keeps counterclockwise order.
    ConvexPolygon::from_valid(p.vertices.iter().map(|&v| -v).collect())
}

/// Mirror image across `axis`, re-ordered counterclockwise.
pub fn reflect(p: &ConvexPolygon, axis: &Axis) -> ConvexPolygon {
    let mut v: Vec<Vec2> = p.vertices.iter().map(|&x| axis.reflect_point(x)).collect();
    v.reverse();
    ConvexPolygon::from_valid(v)
}

/// All mirror axes of `p`, found among the lines joining the centroid to
/// each vertex and to each edge midpoint.
pub fn symmetry_axes(p: &ConvexPolygon, tol: f64) -> Vec<Axis> {
    let g = p.centroid();
    let candidates = p
        .vertices
        .iter()
        .copied()
        .chain(p.edges().map(|(a, b)| (a + b) * 0.5));
    let mut axes: Vec<Axis> = Vec::new();
    for c in candidates {
        let Some(dir) = (c - g).normalized() else {
            continue;
        };
        // Canonical sign: angle in (-π/2, π/2].
        let dir = if dir.x < 0.0 || (dir.x == 0.0 && dir.y < 0.0) {
            -dir
        } else {
            dir
        };
        let axis = Axis {
            point: g,
            direction: dir,
        };
        if axes.iter().any(|a| a.same_line(&axis, 1e-9)) {
            continue;
        }
        if reflect(p, &axis).same_vertex_set(p, tol) {
            axes.push(axis);
        }
    }
    axes
}

/// Regular `n`-gon with vertices at `phase + 2πk/n` on a circle of radius
/// `circumradius` about the origin.
pub fn regular_polygon(n: usize, circumradius: f64, phase: f64) -> Result<ConvexPolygon> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "regular polygon needs n ≥ 3, got {n}"
        )));
    }
    if !(circumradius > 0.0 && circumradius.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "circumradius {circumradius}"
        )));
    }
    if !phase.is_finite() {
        return Err(Error::InvalidParameter(format!("phase {phase}")));
    }
    let vertices = (0..n)
        .map(|k| Vec2::from_angle(phase + 2.0 * PI * k as f64 / n as f64) * circumradius)
        .collect();
    ConvexPolygon::new(vertices)
}
