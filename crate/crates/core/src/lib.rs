//! Circle ratios of convex polygonal balls under asymmetric gauges.
//!
//! A [`Ball`] is a convex polygon with an interior center. Its gauge
//! measures vectors, [`perimeter::pi_ball`] measures the ball's own
//! boundary, and the remaining modules give closed forms for regular and
//! offset-center polygons and test the Radon property.

pub mod birkhoff;
pub mod error;
pub mod gauge;
pub mod geom2d;
pub mod offset_shapes;
pub mod perimeter;
pub mod regular_pi;
pub mod sampling;
pub mod verification;

pub use birkhoff::{birkhoff_orthogonal, is_radon, OrthoPair, RadonVerdict};
pub use error::{Error, Result};
pub use gauge::{gauge, symmetrize_hull, symmetrize_intersection, Ball, GaugeValue};
pub use geom2d::{regular_polygon, Axis, ConvexPolygon, Vec2};
pub use offset_shapes::{
    build_offset_ball, solve_offset_for_pi, AxisConfig, OffsetPiResult, OffsetShape,
    OffsetShapeSpec,
};
pub use perimeter::{
    inscribed_hexagon_bound, measure_perimeters, pi_ball, rectify, shared_axis, width_profile,
    HexBound, PerimeterReport, WidthProfile,
};
pub use regular_pi::{classify_family, FamilyKind, PiFamily, PiForm, PiValue};
