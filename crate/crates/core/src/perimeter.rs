//! Perimeters measured in an asymmetric gauge.
//!
//! Under an asymmetric gauge a polygon has four natural perimeters: the
//! counterclockwise and clockwise sums, and the per-edge minimum and maximum
//! sums. Counterclockwise and clockwise agree when the ball and the polygon
//! share a mirror axis through the center, which is the condition under
//! which [`pi_ball`] is defined.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gauge::Ball;
use crate::geom2d::{reflect, symmetry_axes, Axis, ConvexPolygon, Vec2};

/// Relative tolerance for mirror-axis detection.
pub const AXIS_TOL: f64 = 1e-9;

/// Gauge values within this of 1 count as unit sides of a [`HexBound`].
pub const UNIT_SIDE_TOL: f64 = 1e-9;

/// Segment count for the first pass of [`rectify`].
pub const RECTIFY_START_SEGMENTS: usize = 16;

/// Maximum number of doublings attempted by [`rectify`].
pub const RECTIFY_MAX_DOUBLINGS: u32 = 20;

/// Default absolute stopping tolerance for [`rectify`].
pub const RECTIFY_TOL: f64 = 1e-7;

/// The four perimeter measures of one polygon under one ball.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PerimeterReport {
    pub ccw: f64,
    pub cw: f64,
    #[serde(rename = "min")]
    pub min_sum: f64,
    #[serde(rename = "max")]
    pub max_sum: f64,
}

pub fn measure_perimeters(ball: &Ball, poly: &ConvexPolygon) -> PerimeterReport {
    let mut r = PerimeterReport {
        ccw: 0.0,
        cw: 0.0,
        min_sum: 0.0,
        max_sum: 0.0,
    };
    for e in poly.edge_vectors() {
        let fwd = ball.gauge(e);
        let back = ball.gauge(-e);
        r.ccw += fwd;
        r.cw += back;
        r.min_sum += fwd.min(back);
        r.max_sum += fwd.max(back);
    }
    r
}

fn abs_tol(tol: f64, ball: &Ball, poly: &ConvexPolygon) -> f64 {
    tol * ball.shape().extent().max(poly.extent()).max(1.0)
}

/// Mirror axes of the ball's shape that pass through its center, each
/// anchored at the center.
pub fn mirror_axes_through_center(ball: &Ball, tol: f64) -> Vec<Axis> {
    let t = abs_tol(tol, ball, ball.shape());
    symmetry_axes(ball.shape(), t)
        .into_iter()
        .filter(|a| a.distance_to(ball.center()) <= t)
        .map(|a| Axis::new(ball.center(), a.direction()).expect("unit direction"))
        .collect()
}

fn is_mirror_axis(poly: &ConvexPolygon, axis: &Axis, tol: f64) -> bool {
    reflect(poly, axis).same_vertex_set(poly, tol)
}

/// A mirror axis through `ball.center` shared by the ball's shape and `poly`.
/// `tol` is relative to the larger of the two extents.
pub fn shared_axis(ball: &Ball, poly: &ConvexPolygon, tol: f64) -> Option<Axis> {
    let t = abs_tol(tol, ball, poly);
    mirror_axes_through_center(ball, tol)
        .into_iter()
        .find(|a| is_mirror_axis(poly, a, t))
}

/// Half the counterclockwise self-perimeter of the ball.
pub fn pi_ball(ball: &Ball) -> Result<f64> {
    if shared_axis(ball, ball.shape(), AXIS_TOL).is_none() {
        return Err(Error::NoSharedAxis);
    }
    Ok(measure_perimeters(ball, ball.shape()).ccw / 2.0)
}

/// Closed curve parametrized over `[0, 1]` with `point(0) == point(1)`.
pub trait Curve {
    fn point(&self, t: f64) -> Vec2;
}

impl<F: Fn(f64) -> Vec2> Curve for F {
    fn point(&self, t: f64) -> Vec2 {
        self(t)
    }
}

impl Curve for ConvexPolygon {
    fn point(&self, t: f64) -> Vec2 {
        self.boundary_point(t)
    }
}

/// Counterclockwise gauge length of the inscribed polygon on `segments`
/// equal parameter steps.
fn inscribed_length(ball: &Ball, curve: &dyn Curve, segments: usize) -> f64 {
    let mut prev = curve.point(0.0);
    let mut total = 0.0;
    for i in 1..=segments {
        let t = if i == segments {
            0.0
        } else {
            i as f64 / segments as f64
        };
        let p = curve.point(t);
        total += ball.gauge(p - prev);
        prev = p;
    }
    total
}

/// Lengths of the dyadic refinements `start, 2·start, …` (`doublings + 1`
/// values, nondecreasing).
pub fn dyadic_lengths(ball: &Ball, curve: &dyn Curve, start: usize, doublings: u32) -> Vec<f64> {
    (0..=doublings)
        .map(|k| inscribed_length(ball, curve, start << k))
        .collect()
}

/// Gauge length of a closed convex curve, by dyadic refinement of inscribed
/// polygons until successive lengths differ by less than `refine_tol`.
///
/// The curve should be traversed counterclockwise and share a mirror axis
/// with the ball; otherwise the result is only the counterclockwise length.
pub fn rectify(ball: &Ball, curve: &dyn Curve, refine_tol: f64) -> Result<f64> {
    if refine_tol.is_nan() || refine_tol <= 0.0 {
        return Err(Error::InvalidParameter(format!("refine_tol {refine_tol}")));
    }
    let mut segments = RECTIFY_START_SEGMENTS;
    let mut prev = inscribed_length(ball, curve, segments);
    let mut change = f64::INFINITY;
    for _ in 0..RECTIFY_MAX_DOUBLINGS {
        segments *= 2;
        let next = inscribed_length(ball, curve, segments);
        change = (next - prev).abs();
        if change < refine_tol {
            return Ok(next);
        }
        prev = next;
    }
    Err(Error::NoConvergence {
        doublings: RECTIFY_MAX_DOUBLINGS,
        last_change: change,
    })
}

/// Euclidean chord length perpendicular to an axis, sampled along it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WidthProfile {
    pub axis: Axis,
    /// `(offset along the axis from the center, chord length)`, offsets
    /// increasing.
    pub samples: Vec<(f64, f64)>,
}

impl WidthProfile {
    /// Nondecreasing then nonincreasing within `tol`.
    pub fn is_unimodal(&self, tol: f64) -> bool {
        let d: Vec<f64> = self.samples.iter().map(|s| s.1).collect();
        let peak = d
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .map(|(i, _)| i)
            .unwrap_or(0);
        d[..=peak].windows(2).all(|w| w[1] >= w[0] - tol)
            && d[peak..].windows(2).all(|w| w[1] <= w[0] + tol)
    }

    pub fn max_width(&self) -> f64 {
        self.samples.iter().map(|s| s.1).fold(0.0, f64::max)
    }
}

/// Range of axis offsets `(min, max)` covered by the ball's shape.
fn axis_extent(ball: &Ball, axis: &Axis) -> (f64, f64) {
    let d = axis.direction();
    ball.shape()
        .vertices()
        .iter()
        .map(|&p| (p - ball.center()).dot(d))
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), y| {
            (lo.min(y), hi.max(y))
        })
}

/// Chord length perpendicular to `axis` at `offset` from the center.
pub fn width_at(ball: &Ball, axis: &Axis, offset: f64) -> f64 {
    let base = ball.center() + axis.direction() * offset;
    ball.shape()
        .chord(base, axis.normal())
        .map_or(0.0, |(t0, t1)| (t1 - t0).max(0.0))
}

fn checked_axis(ball: &Ball, axis: &Axis) -> Result<Axis> {
    let t = abs_tol(AXIS_TOL, ball, ball.shape());
    if axis.distance_to(ball.center()) > t || !is_mirror_axis(ball.shape(), axis, t) {
        return Err(Error::NoSharedAxis);
    }
    Axis::new(ball.center(), axis.direction())
}

/// Width profile along the first mirror axis through the center.
pub fn width_profile(ball: &Ball, samples: usize) -> Result<WidthProfile> {
    let axis = mirror_axes_through_center(ball, AXIS_TOL)
        .into_iter()
        .next()
        .ok_or(Error::NoSharedAxis)?;
    width_profile_along(ball, &axis, samples)
}

/// Width profile along a given mirror axis through the center, with
/// `samples` evenly spaced offsets from one end of the shape to the other.
pub fn width_profile_along(ball: &Ball, axis: &Axis, samples: usize) -> Result<WidthProfile> {
    if samples < 3 {
        return Err(Error::InvalidParameter(format!(
            "need at least 3 samples, got {samples}"
        )));
    }
    let axis = checked_axis(ball, axis)?;
    let (lo, hi) = axis_extent(ball, &axis);
    let step = (hi - lo) / (samples - 1) as f64;
    let samples = (0..samples)
        .map(|i| {
            let y = if i == samples - 1 {
                hi
            } else {
                lo + step * i as f64
            };
            (y, width_at(ball, &axis, y))
        })
        .collect();
    Ok(WidthProfile { axis, samples })
}

/// Hexagon inscribed in the ball boundary from the lateral-displacement
/// construction.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HexBound {
    /// Counterclockwise from `center + c·u`.
    pub hexagon: ConvexPolygon,
    pub half_perimeter: f64,
    pub unit_side_count: usize,
    /// Gauges of the six counterclockwise sides.
    pub side_gauges: [f64; 6],
    /// Half the Euclidean chord through the center, perpendicular to the axis.
    pub half_chord: f64,
}

/// Offset `y` in the direction of `sign` (±1) where the perpendicular chord
/// has length `target`. When the end of the shape is a face at least that
/// wide, the end itself is returned.
fn chord_offset(ball: &Ball, axis: &Axis, target: f64, end: f64) -> f64 {
    if width_at(ball, axis, end) >= target {
        return end;
    }
    // Width is concave along the axis: ≥ target at 0, < target at `end`.
    let (mut inside, mut outside) = (0.0, end);
    for _ in 0..200 {
        let mid = 0.5 * (inside + outside);
        if mid == inside || mid == outside {
            break;
        }
        if width_at(ball, axis, mid) >= target {
            inside = mid;
        } else {
            outside = mid;
        }
    }
    0.5 * (inside + outside)
}

/// Builds the hexagon on the first mirror axis through the center.
pub fn inscribed_hexagon_bound(ball: &Ball) -> Result<HexBound> {
    let axis = mirror_axes_through_center(ball, AXIS_TOL)
        .into_iter()
        .next()
        .ok_or(Error::NoSharedAxis)?;
    inscribed_hexagon_bound_on(ball, &axis)
}

/// Builds the inscribed hexagon for a given mirror axis through the center.
///
/// With `u` the unit normal of the axis and `c` half the chord through the
/// center, the vertices are `q± = center ± c·u` together with a length-`c`
/// chord near each end of the axis. Both end chords are centered on the
/// axis. The sides `q+ → a2` and `q− → b1` are translates of
/// `a1 − center` and `b2 − center`, so together with the two end chords
/// four sides have gauge 1.
pub fn inscribed_hexagon_bound_on(ball: &Ball, axis: &Axis) -> Result<HexBound> {
    let axis = checked_axis(ball, axis)?;
    let full = width_at(ball, &axis, 0.0);
    if full <= 1e-12 * ball.shape().extent() {
        return Err(Error::DegenerateChord);
    }
    let c = 0.5 * full;
    let (lo, hi) = axis_extent(ball, &axis);
    let d = axis.direction();
    let u = axis.normal();
    let x0 = ball.center();

    let top = x0 + d * chord_offset(ball, &axis, c, hi);
    let bottom = x0 + d * chord_offset(ball, &axis, c, lo);
    let a1 = top - u * (0.5 * c);
    let a2 = a1 + u * c;
    let b2 = bottom + u * (0.5 * c);
    let b1 = b2 - u * c;
    let q_plus = x0 + u * c;
    let q_minus = x0 - u * c;

    let hexagon = ConvexPolygon::new(vec![q_plus, a2, a1, q_minus, b1, b2])?;
    let verts = [q_plus, a2, a1, q_minus, b1, b2];
    let mut side_gauges = [0.0; 6];
    for i in 0..6 {
        side_gauges[i] = ball.gauge(verts[(i + 1) % 6] - verts[i]);
    }
    let unit_side_count = side_gauges
        .iter()
        .filter(|g| (**g - 1.0).abs() <= UNIT_SIDE_TOL)
        .count();
    Ok(HexBound {
        hexagon,
        half_perimeter: side_gauges.iter().sum::<f64>() / 2.0,
        unit_side_count,
        side_gauges,
        half_chord: c,
    })
}
