use crate::geom2d::Vec2;

/// Errors raised by the geometric and numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("polygons have no common interior")]
    EmptyIntersection,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("non-finite coordinate ({x}, {y})")]
    NonFinite { x: f64, y: f64 },

    #[error("polygon is not strictly convex and counterclockwise: {0}")]
    NotConvex(String),

    #[error("center {center} is not in the interior of the shape")]
    CenterNotInterior { center: Vec2 },

    #[error("no mirror axis through the center is shared by the ball and the polygon")]
    NoSharedAxis,

    #[error(
        "refinement did not converge after {doublings} doublings (last change {last_change:e})"
    )]
    NoConvergence { doublings: u32, last_change: f64 },

    #[error("center chord has zero length")]
    DegenerateChord,

    #[error("offset {offset} outside the valid interval {interval}")]
    InvalidOffset { offset: f64, interval: String },

    #[error("target {target} is below the attainable minimum {minimum}")]
    Unreachable { target: f64, minimum: f64 },

    #[error("ball is not centrally symmetric about its center (gauge({witness}) differs from gauge of its negation)")]
    NotSymmetricBall { witness: Vec2 },

    #[error("zero vector where a nonzero vector is required")]
    ZeroVector,
}

pub type Result<T> = std::result::Result<T, Error>;
