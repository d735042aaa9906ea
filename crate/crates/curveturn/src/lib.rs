//! Analysis of planar Jordan curves through their turn (integral curvature):
//! turn estimation by inscribed-polygon refinement, local turn bounds,
//! Lipschitz-turn constants, osculating-disk regularity and reach, plus a
//! harness that checks the inequalities tying these quantities together on
//! generated curve families.
//!
//! Curves are arc-length-tagged polylines ([`curve::SampledCurve`]); the
//! generators in [`generate`] produce the analytic families (circles,
//! ellipses, polygons, rounded polygons, the dumbbell "bone"). All types are
//! immutable values and all operations are pure functions, so everything is
//! safe to share across threads.

pub mod curve;
pub mod error;
pub mod fixtures;
pub mod generate;
pub mod geom;
pub mod index;
pub mod io;
pub mod ltb;
pub mod regularity;
pub mod svg;
pub mod turn;
pub mod verify;

pub use curve::{ArcRange, CurvePoint, SampledCurve};
pub use error::{Error, Result};
pub use generate::{generate, CurveSpec, Family};
pub use geom::{Point2, PointLocation, Vector2};
