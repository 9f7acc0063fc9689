//! Exact construction and verification of contact representations of
//! graphs by convex polygons in 3D.
//!
//! The geometry kernels ([`geom3d`], [`segments2d`]) are generic over a
//! [`Scalar`]; the scene-level modules work over any [`ExactScalar`] and are
//! used with [`QScalar`], the field ℚ(√3). The aliases below fix the scalar
//! for the common case.

pub mod cli;
pub mod construction;
pub mod exact;
pub mod geom3d;
pub mod io;
pub mod representation;
pub mod scalar;
pub mod segments2d;
pub mod transform;

pub use exact::QScalar;
pub use scalar::{ExactScalar, Scalar, Sign};

pub type Rational = num_rational::BigRational;

pub type Point3 = geom3d::Point3<QScalar>;
pub type Plane3 = geom3d::Plane3<QScalar>;
pub type Line3 = geom3d::Line3<QScalar>;
pub type ConvexPolygon3 = geom3d::ConvexPolygon3<QScalar>;

pub type Point2 = segments2d::Point2<QScalar>;
pub type SegmentSet2 = segments2d::SegmentSet2<QScalar>;
/// Segment sets from the seeded generator are rational.
pub type RationalSegmentSet2 = segments2d::SegmentSet2<Rational>;

pub type Scene = representation::Scene<QScalar>;
