//! Birkhoff orthogonality and the Radon property for polygonal norms.
//!
//! `y ⊢ x` means `gauge(x + t·y) ≥ gauge(x)` for every real `t`, i.e. the
//! line through `x` in direction `y` supports the scaled ball at `x`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gauge::Ball;
use crate::geom2d::Vec2;

/// Default relative tolerance on gauge comparisons.
pub const BIRKHOFF_TOL: f64 = 1e-9;

/// Relative tolerance for treating a ball as centrally symmetric.
pub const SYMMETRY_TOL: f64 = 1e-9;

/// Directions sampled across the supporting cone at a ball vertex,
/// including both edge directions.
pub const CONE_SAMPLES: usize = 5;

/// Boundary points sampled per ball edge by [`default_directions`].
pub const POINTS_PER_EDGE: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OrthoPair {
    pub x: Vec2,
    pub y: Vec2,
    /// `y ⊢ x`
    pub forward: bool,
    /// `x ⊢ y`
    pub backward: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RadonVerdict {
    pub radon: bool,
    /// A pair with `y ⊢ x` but not `x ⊢ y`, when one exists.
    pub witness: Option<OrthoPair>,
}

/// Directions `y` with `y ⊢ x`: the edge direction when `x/gauge(x)` lies
/// inside an edge, otherwise the closed cone from the incoming to the
/// outgoing edge direction at that vertex.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SupportCone {
    pub from: Vec2,
    pub to: Vec2,
}

impl SupportCone {
    /// Counterclockwise angle from `from` to `to`, in `[0, π)`.
    pub fn angle(&self) -> f64 {
        self.from
            .cross(self.to)
            .atan2(self.from.dot(self.to))
            .max(0.0)
    }

    /// `count` evenly spaced unit directions from `from` to `to`
    /// inclusive; a single direction when the cone is degenerate.
    pub fn sample(&self, count: usize) -> Vec<Vec2> {
        let a = self.angle();
        let base = self.from.normalized().expect("nonzero edge direction");
        if a == 0.0 || count < 2 {
            return vec![base];
        }
        (0..count)
            .map(|i| base.rotate(a * i as f64 / (count - 1) as f64))
            .collect()
    }
}

fn require_symmetric(ball: &Ball) -> Result<()> {
    if ball.is_centrally_symmetric(SYMMETRY_TOL) {
        return Ok(());
    }
    let witness = ball
        .asymmetry_witness(SYMMETRY_TOL)
        .unwrap_or_else(|| ball.shape().vertex(0) - ball.center());
    Err(Error::NotSymmetricBall { witness })
}

fn require_nonzero(v: Vec2) -> Result<()> {
    if v == Vec2::ZERO {
        return Err(Error::ZeroVector);
    }
    if !v.is_finite() {
        return Err(Error::NonFinite { x: v.x, y: v.y });
    }
    Ok(())
}

/// `min_t gauge(x + t·y)`, evaluated exactly at the breakpoints of the
/// piecewise linear convex function.
pub fn min_along_line(ball: &Ball, x: Vec2, y: Vec2) -> f64 {
    let g = |t: f64| ball.gauge(x + y * t);
    let mut best = g(0.0);
    let yy = y.norm_sq();
    for &v in ball.shape().vertices() {
        let d = v - ball.center();
        let denom = y.cross(d);
        if denom.abs() > 1e-15 * y.norm() * d.norm() {
            best = best.min(g(-x.cross(d) / denom));
        }
    }
    // The line passes through the origin only when x ∥ y.
    if x.cross(y).abs() <= 1e-15 * x.norm() * y.norm() {
        best = best.min(g(-x.dot(y) / yy));
    }
    best
}

/// `y ⊢ x`, with `tol` relative to `gauge(x)`.
pub fn birkhoff_orthogonal(ball: &Ball, x: Vec2, y: Vec2, tol: f64) -> Result<bool> {
    require_symmetric(ball)?;
    require_nonzero(x)?;
    require_nonzero(y)?;
    let gx = ball.gauge(x);
    Ok(min_along_line(ball, x, y) >= gx - tol * gx)
}

pub fn ortho_pair(ball: &Ball, x: Vec2, y: Vec2, tol: f64) -> Result<OrthoPair> {
    Ok(OrthoPair {
        x,
        y,
        forward: birkhoff_orthogonal(ball, x, y, tol)?,
        backward: birkhoff_orthogonal(ball, y, x, tol)?,
    })
}

/// Supporting directions at the boundary point in direction `x`.
pub fn support_cone(ball: &Ball, x: Vec2) -> Result<SupportCone> {
    require_nonzero(x)?;
    let shape = ball.shape();
    let n = shape.len();
    let p = ball.boundary_point_towards(x);
    let vtol = 1e-9 * shape.extent();
    if let Some(k) = (0..n).find(|&k| shape.vertex(k).dist(p) <= vtol) {
        let v = shape.vertex(k);
        return Ok(SupportCone {
            from: v - shape.vertex(k + n - 1),
            to: shape.vertex(k + 1) - v,
        });
    }
    let c = ball.center();
    let k = (0..n)
        .find(|&k| {
            let (a, b) = (shape.vertex(k) - c, shape.vertex(k + 1) - c);
            a.cross(x) >= 0.0 && x.cross(b) >= 0.0
        })
        .expect("ray from an interior center crosses some edge");
    let e = shape.vertex(k + 1) - shape.vertex(k);
    Ok(SupportCone { from: e, to: e })
}

/// `POINTS_PER_EDGE` boundary points per ball edge.
pub fn default_directions(ball: &Ball) -> usize {
    POINTS_PER_EDGE * ball.shape().len()
}

/// Boundary points relative to the center: `per_edge` per edge, starting
/// at each vertex.
fn boundary_samples(ball: &Ball, per_edge: usize) -> Vec<Vec2> {
    let c = ball.center();
    ball.shape()
        .edges()
        .flat_map(|(a, b)| {
            (0..per_edge).map(move |j| a + (b - a) * (j as f64 / per_edge as f64) - c)
        })
        .collect()
}

/// Checks symmetry of `⊢` over `directions` boundary points (spread evenly
/// over the edges, every vertex included). Returns the first asymmetric
/// pair as the witness.
pub fn is_radon(ball: &Ball, directions: usize, tol: f64) -> Result<RadonVerdict> {
    require_symmetric(ball)?;
    if directions < 8 {
        return Err(Error::InvalidParameter(format!(
            "need at least 8 directions, got {directions}"
        )));
    }
    let per_edge = directions.div_ceil(ball.shape().len()).max(1);
    for x in boundary_samples(ball, per_edge) {
        for y in support_cone(ball, x)?.sample(CONE_SAMPLES) {
            let pair = ortho_pair(ball, x, y, tol)?;
            if pair.forward && !pair.backward {
                return Ok(RadonVerdict {
                    radon: false,
                    witness: Some(pair),
                });
            }
        }
    }
    Ok(RadonVerdict {
        radon: true,
        witness: None,
    })
}

/// Angle between `x` and `y` folded into `[0, π/2]`.
pub fn fold_angle(x: Vec2, y: Vec2) -> f64 {
    let a = x.cross(y).atan2(x.dot(y)).abs();
    a.min(PI - a)
}
