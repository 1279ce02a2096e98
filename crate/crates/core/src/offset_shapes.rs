//! π for balls whose center sits off the centroid along a mirror axis.
//!
//! Offset conventions (the center is `o`, always on the vertical axis):
//!
//! ```text
//!  isosceles triangle        square A              square B
//!
//!        apex              +---------+                 ^
//!        /\  ^             |         |                / \
//!       /  \ | h2          |    o    |               /   \
//!      /  o \v             |    ^    |              <  o  >
//!     /      \             |    | h  |               \ ^ /
//!    +--------+            +----v----+                \|/ h
//!       base                                           v
//! ```
//!
//! * triangle: `h2` is the distance from the apex down to the center, on
//!   `(0, h)` with `h` the height; the centroid is `h2 = 2h/3`.
//! * square A: `h` is the distance from the bottom edge up the
//!   edge-midpoint axis, on `(0, a)`.
//! * square B: `h` is the distance from the bottom vertex up the diagonal,
//!   on `(0, a√2)`.
//! * hexagon A: flat bottom edge, `h` measured up from that edge along the
//!   edge-midpoint axis, on `(0, a√3/2]` (up to the center).
//! * hexagon B: pointed bottom vertex, `h` measured up from that vertex along
//!   the vertex axis, on `(0, a]` (up to the center).
//!
//! Side gauges are listed in the vertex order of [`build_offset_ball`],
//! one per counterclockwise side starting at vertex 0.

use std::f64::consts::SQRT_2;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gauge::Ball;
use crate::geom2d::{ConvexPolygon, Vec2};

/// Which mirror axis carries the center.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AxisConfig {
    A,
    B,
}

impl fmt::Display for AxisConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AxisConfig::A => "A",
            AxisConfig::B => "B",
        })
    }
}

impl FromStr for AxisConfig {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(AxisConfig::A),
            "B" | "b" => Ok(AxisConfig::B),
            _ => Err(Error::InvalidParameter(format!(
                "unknown axis config {s:?}"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum OffsetShape {
    /// Equal sides `side`, base `base`.
    IsoscelesTriangle {
        side: f64,
        base: f64,
    },
    Square {
        side: f64,
        config: AxisConfig,
    },
    /// Regular hexagon with side `side`.
    Hexagon {
        side: f64,
        config: AxisConfig,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OffsetShapeSpec {
    #[serde(flatten)]
    pub shape: OffsetShape,
    pub offset: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OffsetPiResult {
    pub pi: f64,
    pub side_gauges: Vec<f64>,
}

impl OffsetPiResult {
    fn from_gauges(side_gauges: Vec<f64>) -> Self {
        OffsetPiResult {
            pi: side_gauges.iter().sum::<f64>() / 2.0,
            side_gauges,
        }
    }
}

/// Valid offsets `(lo, hi)` with `lo` excluded and `hi` included iff
/// `hi_closed`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OffsetInterval {
    pub lo: f64,
    pub hi: f64,
    pub hi_closed: bool,
}

impl OffsetInterval {
    pub fn contains(&self, x: f64) -> bool {
        x > self.lo && (x < self.hi || (self.hi_closed && x == self.hi))
    }

    fn describe(&self) -> String {
        format!(
            "({}, {}{}",
            self.lo,
            self.hi,
            if self.hi_closed { "]" } else { ")" }
        )
    }
}

fn positive(name: &str, x: f64) -> Result<()> {
    if !(x.is_finite() && x > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "{name} must be positive and finite, got {x}"
        )));
    }
    Ok(())
}

fn check_offset(offset: f64, interval: OffsetInterval) -> Result<()> {
    if !interval.contains(offset) {
        return Err(Error::InvalidOffset {
            offset,
            interval: interval.describe(),
        });
    }
    Ok(())
}

fn open(hi: f64) -> OffsetInterval {
    OffsetInterval {
        lo: 0.0,
        hi,
        hi_closed: false,
    }
}

fn closed(hi: f64) -> OffsetInterval {
    OffsetInterval {
        lo: 0.0,
        hi,
        hi_closed: true,
    }
}

fn hex_apothem(a: f64) -> f64 {
    a * 3f64.sqrt() / 2.0
}

/// π of an isosceles triangle of height `h` with the center `h2` below the
/// apex. Side gauges: right leg, left leg, base.
pub fn pi_isosceles(h: f64, h2: f64) -> Result<OffsetPiResult> {
    positive("height", h)?;
    check_offset(h2, open(h))?;
    let leg = 2.0 * h / h2;
    Ok(OffsetPiResult::from_gauges(vec![leg, h / (h - h2), leg]))
}

/// `(h2/h, π)` at the minimizing offset.
pub fn isosceles_minimum() -> (f64, f64) {
    (2.0 / 3.0, 4.5)
}

pub fn pi_square(a: f64, h: f64, config: AxisConfig) -> Result<OffsetPiResult> {
    positive("side", a)?;
    let g = match config {
        AxisConfig::A => {
            check_offset(h, open(a))?;
            vec![a / h, 2.0, a / (a - h), 2.0]
        }
        AxisConfig::B => {
            check_offset(h, open(a * SQRT_2))?;
            let lower = a * SQRT_2 / h;
            let upper = a / (a - h / SQRT_2);
            vec![lower, lower, upper, upper]
        }
    };
    Ok(OffsetPiResult::from_gauges(g))
}

pub fn pi_hexagon(a: f64, h: f64, config: AxisConfig) -> Result<OffsetPiResult> {
    positive("side", a)?;
    let g = match config {
        AxisConfig::A => {
            let ap = hex_apothem(a);
            check_offset(h, closed(ap))?;
            let low = ap / h;
            let mid = 2.0 * ap / (ap + h);
            let high = 2.0 * ap / (3.0 * ap - h);
            vec![low, mid, high, high, mid, low]
        }
        AxisConfig::B => {
            check_offset(h, closed(a))?;
            let low = a / h;
            vec![low, low, low, 1.0, a / (2.0 * a - h), 1.0]
        }
    };
    Ok(OffsetPiResult::from_gauges(g))
}

impl OffsetShape {
    fn validate(&self) -> Result<()> {
        match *self {
            OffsetShape::IsoscelesTriangle { side, base } => {
                positive("side", side)?;
                positive("base", base)?;
                if base >= 2.0 * side {
                    return Err(Error::InvalidParameter(format!(
                        "base {base} must be shorter than twice the side {side}"
                    )));
                }
                Ok(())
            }
            OffsetShape::Square { side, .. } | OffsetShape::Hexagon { side, .. } => {
                positive("side", side)
            }
        }
    }

    /// Height of the triangle; for other shapes, the side.
    fn scale(&self) -> f64 {
        match *self {
            OffsetShape::IsoscelesTriangle { side, base } => {
                (side * side - base * base / 4.0).sqrt()
            }
            OffsetShape::Square { side, .. } | OffsetShape::Hexagon { side, .. } => side,
        }
    }

    pub fn interval(&self) -> Result<OffsetInterval> {
        self.validate()?;
        let s = self.scale();
        Ok(match *self {
            OffsetShape::IsoscelesTriangle { .. } => open(s),
            OffsetShape::Square {
                config: AxisConfig::A,
                ..
            } => open(s),
            OffsetShape::Square {
                config: AxisConfig::B,
                ..
            } => open(s * SQRT_2),
            OffsetShape::Hexagon {
                config: AxisConfig::A,
                ..
            } => closed(hex_apothem(s)),
            OffsetShape::Hexagon {
                config: AxisConfig::B,
                ..
            } => closed(s),
        })
    }

    pub fn pi(&self, offset: f64) -> Result<OffsetPiResult> {
        self.validate()?;
        let s = self.scale();
        match *self {
            OffsetShape::IsoscelesTriangle { .. } => pi_isosceles(s, offset),
            OffsetShape::Square { config, .. } => pi_square(s, offset, config),
            OffsetShape::Hexagon { config, .. } => pi_hexagon(s, offset, config),
        }
    }

    /// `(offset, π)` at the minimum over the valid interval.
    pub fn minimum(&self) -> Result<(f64, f64)> {
        self.validate()?;
        let s = self.scale();
        Ok(match *self {
            OffsetShape::IsoscelesTriangle { .. } => {
                let (r, p) = isosceles_minimum();
                (r * s, p)
            }
            OffsetShape::Square {
                config: AxisConfig::A,
                ..
            } => (s / 2.0, 4.0),
            OffsetShape::Square {
                config: AxisConfig::B,
                ..
            } => (s / SQRT_2, 4.0),
            OffsetShape::Hexagon {
                config: AxisConfig::A,
                ..
            } => (hex_apothem(s), 3.0),
            OffsetShape::Hexagon {
                config: AxisConfig::B,
                ..
            } => (s, 3.0),
        })
    }

    /// dπ/d(offset) of the closed form.
    pub fn derivative(&self, offset: f64) -> Result<f64> {
        check_offset(offset, self.interval()?)?;
        let s = self.scale();
        let x = offset;
        Ok(match *self {
            OffsetShape::IsoscelesTriangle { .. } => {
                s / (2.0 * (s - x).powi(2)) - 2.0 * s / (x * x)
            }
            OffsetShape::Square {
                config: AxisConfig::A,
                ..
            } => s / (2.0 * (s - x).powi(2)) - s / (2.0 * x * x),
            OffsetShape::Square {
                config: AxisConfig::B,
                ..
            } => (s / SQRT_2) / (s - x / SQRT_2).powi(2) - s * SQRT_2 / (x * x),
            OffsetShape::Hexagon {
                config: AxisConfig::A,
                ..
            } => {
                let ap = hex_apothem(s);
                2.0 * ap / (3.0 * ap - x).powi(2) - 2.0 * ap / (ap + x).powi(2) - ap / (x * x)
            }
            OffsetShape::Hexagon {
                config: AxisConfig::B,
                ..
            } => s / (2.0 * (2.0 * s - x).powi(2)) - 1.5 * s / (x * x),
        })
    }

    /// Strictly monotone pieces `(lo, hi)` of the closed form on the valid
    /// interval, split at the minimum.
    fn branches(&self) -> Result<Vec<(f64, f64)>> {
        let iv = self.interval()?;
        let (m, _) = self.minimum()?;
        Ok(if m < iv.hi {
            vec![(iv.lo, m), (m, iv.hi)]
        } else {
            vec![(iv.lo, m)]
        })
    }
}

/// Offsets in the valid interval at which π equals `target`, ascending.
/// At the minimum the double root is returned once.
pub fn solve_offset_for_pi(shape: &OffsetShape, target: f64) -> Result<Vec<f64>> {
    if !target.is_finite() {
        return Err(Error::InvalidParameter(format!("target {target}")));
    }
    let (m, min_pi) = shape.minimum()?;
    if target < min_pi - 1e-12 {
        return Err(Error::Unreachable {
            target,
            minimum: min_pi,
        });
    }
    if target <= min_pi + 1e-12 {
        return Ok(vec![m]);
    }
    let f = |x: f64| shape.pi(x).map(|r| r.pi).unwrap_or(f64::INFINITY);
    let mut roots = Vec::new();
    for (lo, hi) in shape.branches()? {
        // The closed form is min_pi at `m` and unbounded at the far end.
        let (mut near, mut far) = if hi == m { (hi, lo) } else { (lo, hi) };
        for _ in 0..2000 {
            let mid = 0.5 * (near + far);
            if mid == near || mid == far {
                break;
            }
            if f(mid) < target {
                near = mid;
            } else {
                far = mid;
            }
        }
        let x = if (f(near) - target).abs() <= (f(far) - target).abs() {
            near
        } else {
            far
        };
        if shape.interval()?.contains(x) {
            roots.push(x);
        }
    }
    roots.sort_by(f64::total_cmp);
    Ok(roots)
}

/// The polygon and its center for `spec`, in the orientation of the module
/// diagram.
pub fn build_offset_ball(spec: &OffsetShapeSpec) -> Result<Ball> {
    let shape = &spec.shape;
    check_offset(spec.offset, shape.interval()?)?;
    let s = shape.scale();
    let h = spec.offset;
    let p = |x: f64, y: f64| Vec2::new(x, y);
    let (verts, center) = match *shape {
        OffsetShape::IsoscelesTriangle { base, .. } => (
            vec![p(base / 2.0, 0.0), p(0.0, s), p(-base / 2.0, 0.0)],
            p(0.0, s - h),
        ),
        OffsetShape::Square {
            config: AxisConfig::A,
            ..
        } => (
            vec![
                p(-s / 2.0, s),
                p(-s / 2.0, 0.0),
                p(s / 2.0, 0.0),
                p(s / 2.0, s),
            ],
            p(0.0, h),
        ),
        OffsetShape::Square {
            config: AxisConfig::B,
            ..
        } => {
            let r = s / SQRT_2;
            (
                vec![p(0.0, 2.0 * r), p(-r, r), p(0.0, 0.0), p(r, r)],
                p(0.0, h),
            )
        }
        OffsetShape::Hexagon {
            config: AxisConfig::A,
            ..
        } => {
            let ap = hex_apothem(s);
            (
                vec![
                    p(-s, ap),
                    p(-s / 2.0, 0.0),
                    p(s / 2.0, 0.0),
                    p(s, ap),
                    p(s / 2.0, 2.0 * ap),
                    p(-s / 2.0, 2.0 * ap),
                ],
                p(0.0, h),
            )
        }
        OffsetShape::Hexagon {
            config: AxisConfig::B,
            ..
        } => {
            let ap = hex_apothem(s);
            (
                vec![
                    p(0.0, 2.0 * s),
                    p(-ap, 1.5 * s),
                    p(-ap, 0.5 * s),
                    p(0.0, 0.0),
                    p(ap, 0.5 * s),
                    p(ap, 1.5 * s),
                ],
                p(0.0, h),
            )
        }
    };
    Ball::new(ConvexPolygon::new(verts)?, center)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perimeter::{measure_perimeters, pi_ball};

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    /// Isosceles triangle of height 1 (base 2, legs √2).
    fn unit_triangle() -> OffsetShape {
        OffsetShape::IsoscelesTriangle {
            side: SQRT_2,
            base: 2.0,
        }
    }

    fn all_shapes() -> Vec<OffsetShape> {
        vec![
            unit_triangle(),
            OffsetShape::IsoscelesTriangle {
                side: 3.0,
                base: 1.5,
            },
            OffsetShape::Square {
                side: 1.3,
                config: AxisConfig::A,
            },
            OffsetShape::Square {
                side: 0.7,
                config: AxisConfig::B,
            },
            OffsetShape::Hexagon {
                side: 1.1,
                config: AxisConfig::A,
            },
            OffsetShape::Hexagon {
                side: 2.0,
                config: AxisConfig::B,
            },
        ]
    }

    #[test]
    fn isosceles_examples() {
        let r = pi_isosceles(1.0, 2.0 / 3.0).unwrap();
        assert!(close(r.pi, 4.5, 1e-12));
        assert!(r.side_gauges.iter().all(|&g| close(g, 3.0, 1e-12)));
        let r = pi_isosceles(1.0, 0.8).unwrap();
        assert!(close(r.pi, 5.0, 1e-12));
        let expect = [2.5, 5.0, 2.5];
        assert!(r
            .side_gauges
            .iter()
            .zip(expect)
            .all(|(&g, e)| close(g, e, 1e-12)));
        assert!(pi_isosceles(1.0, 1e-9).unwrap().pi > 1e8);
        assert!(matches!(
            pi_isosceles(1.0, 1.0),
            Err(Error::InvalidOffset { .. })
        ));
        assert!(matches!(
            pi_isosceles(1.0, 0.0),
            Err(Error::InvalidOffset { .. })
        ));
    }

    #[test]
    fn isosceles_minimum_is_stationary() {
        let (r, p) = isosceles_minimum();
        assert_eq!((r, p), (2.0 / 3.0, 4.5));
        let d = unit_triangle().derivative(r).unwrap();
        assert!(d.abs() < 1e-12);
        assert!(pi_isosceles(1.0, r - 1e-4).unwrap().pi > 4.5);
        assert!(pi_isosceles(1.0, r + 1e-4).unwrap().pi > 4.5);
    }

    #[test]
    fn square_examples() {
        assert!(close(
            pi_square(1.0, 0.5, AxisConfig::A).unwrap().pi,
            4.0,
            1e-12
        ));
        assert!(close(
            pi_square(1.0, 1.0 / SQRT_2, AxisConfig::B).unwrap().pi,
            4.0,
            1e-12
        ));
        assert!(close(
            pi_square(1.0, 0.25, AxisConfig::A).unwrap().pi,
            14.0 / 3.0,
            1e-12
        ));
        assert!(pi_square(1.0, 1.0, AxisConfig::A).is_err());
        assert!(pi_square(1.0, 1.0, AxisConfig::B).is_ok());
        assert!(pi_square(1.0, SQRT_2, AxisConfig::B).is_err());
    }

    #[test]
    fn hexagon_examples() {
        let ap = 3f64.sqrt() / 2.0;
        assert!(close(
            pi_hexagon(1.0, ap, AxisConfig::A).unwrap().pi,
            3.0,
            1e-12
        ));
        assert!(close(
            pi_hexagon(1.0, 1.0, AxisConfig::B).unwrap().pi,
            3.0,
            1e-12
        ));
        assert!(close(
            pi_hexagon(1.0, 0.5, AxisConfig::B).unwrap().pi,
            13.0 / 3.0,
            1e-12
        ));
        assert!(matches!(
            pi_hexagon(1.0, ap + 1e-9, AxisConfig::A),
            Err(Error::InvalidOffset { .. })
        ));
        assert!(pi_hexagon(1.0, 1.0 + 1e-9, AxisConfig::B).is_err());
    }

    #[test]
    fn closed_forms_match_geometry() {
        for shape in all_shapes() {
            let iv = shape.interval().unwrap();
            for i in 1..=20 {
                let x = iv.hi * i as f64 / if iv.hi_closed { 20.0 } else { 21.0 };
                let closed = shape.pi(x).unwrap();
                let ball = build_offset_ball(&OffsetShapeSpec { shape, offset: x }).unwrap();
                let geo = pi_ball(&ball).unwrap();
                assert!(
                    close(closed.pi, geo, 1e-9),
                    "{shape:?} at {x}: {} vs {geo}",
                    closed.pi
                );
                for (e, g) in ball.shape().edge_vectors().zip(&closed.side_gauges) {
                    assert!(
                        close(ball.gauge(e), *g, 1e-9),
                        "{shape:?} at {x}: {:?} vs {:?}",
                        ball.shape()
                            .edge_vectors()
                            .map(|e| ball.gauge(e))
                            .collect::<Vec<_>>(),
                        closed.side_gauges
                    );
                }
            }
        }
    }

    #[test]
    fn built_balls_at_minima() {
        for (shape, expect) in [
            (unit_triangle(), 4.5),
            (
                OffsetShape::Square {
                    side: 1.0,
                    config: AxisConfig::A,
                },
                4.0,
            ),
            (
                OffsetShape::Hexagon {
                    side: 1.0,
                    config: AxisConfig::B,
                },
                3.0,
            ),
        ] {
            let (m, _) = shape.minimum().unwrap();
            let ball = build_offset_ball(&OffsetShapeSpec { shape, offset: m }).unwrap();
            assert!(close(pi_ball(&ball).unwrap(), expect, 1e-9));
        }
    }

    #[test]
    fn derivative_matches_finite_difference() {
        for shape in all_shapes() {
            let iv = shape.interval().unwrap();
            for i in 1..10 {
                let x = iv.hi * i as f64 / 10.0;
                let e = 1e-6 * iv.hi;
                let fd = (shape.pi(x + e).unwrap().pi - shape.pi(x - e).unwrap().pi) / (2.0 * e);
                let d = shape.derivative(x).unwrap();
                assert!((d - fd).abs() <= 1e-5 * (1.0 + d.abs()), "{shape:?} at {x}");
            }
        }
    }

    #[test]
    fn triangle_min_max_split() {
        let off = build_offset_ball(&OffsetShapeSpec {
            shape: unit_triangle(),
            offset: 0.8,
        })
        .unwrap();
        let r = measure_perimeters(&off, off.shape());
        assert!(
            close(r.ccw, 10.0, 1e-12)
                && close(r.max_sum, 12.5, 1e-12)
                && close(r.min_sum, 7.5, 1e-12)
        );
        let at_min = build_offset_ball(&OffsetShapeSpec {
            shape: unit_triangle(),
            offset: 2.0 / 3.0,
        })
        .unwrap();
        let r = measure_perimeters(&at_min, at_min.shape());
        assert!(close(r.min_sum, r.max_sum, 1e-9));
    }

    #[test]
    fn solver_examples() {
        let t = unit_triangle();
        let roots = solve_offset_for_pi(&t, 4.5).unwrap();
        assert_eq!(roots.len(), 1);
        assert!(close(roots[0], 2.0 / 3.0, 1e-12));

        let roots = solve_offset_for_pi(&t, 5.0).unwrap();
        assert_eq!(roots.len(), 2);
        // 2/x + 1/(2(1−x)) = 5  ⇔  10x² − 13x + 4 = 0.
        assert!(close(roots[0], 0.5, 1e-12) && close(roots[1], 0.8, 1e-12));

        let sq = OffsetShape::Square {
            side: 1.0,
            config: AxisConfig::A,
        };
        let roots = solve_offset_for_pi(&sq, 4.5).unwrap();
        let d = 0.2f64.sqrt();
        assert_eq!(roots.len(), 2);
        assert!(close(roots[0], (1.0 - d) / 2.0, 1e-12) && close(roots[1], (1.0 + d) / 2.0, 1e-12));

        assert!(matches!(
            solve_offset_for_pi(&t, 4.0),
            Err(Error::Unreachable { .. })
        ));
    }

    #[test]
    fn hexagon_solver_has_one_root() {
        for config in [AxisConfig::A, AxisConfig::B] {
            let hx = OffsetShape::Hexagon { side: 1.0, config };
            let roots = solve_offset_for_pi(&hx, 4.0).unwrap();
            assert_eq!(roots.len(), 1);
            assert!(close(hx.pi(roots[0]).unwrap().pi, 4.0, 1e-10));
        }
    }

    #[test]
    fn spec_json_shape() {
        let spec = OffsetShapeSpec {
            shape: OffsetShape::Square {
                side: 1.0,
                config: AxisConfig::B,
            },
            offset: 0.5,
        };
        let s = serde_json::to_string(&spec).unwrap();
        assert_eq!(
            s,
            r#"{"shape":"square","side":1.0,"config":"B","offset":0.5}"#
        );
        assert_eq!(serde_json::from_str::<OffsetShapeSpec>(&s).unwrap(), spec);
    }

    #[test]
    fn invalid_shapes() {
        let bad = OffsetShape::IsoscelesTriangle {
            side: 1.0,
            base: 2.0,
        };
        assert!(matches!(bad.interval(), Err(Error::InvalidParameter(_))));
        let neg = OffsetShape::Square {
            side: -1.0,
            config: AxisConfig::A,
        };
        assert!(neg.pi(0.5).is_err());
        assert_eq!("b".parse::<AxisConfig>().unwrap(), AxisConfig::B);
        assert!("C".parse::<AxisConfig>().is_err());
    }
}
