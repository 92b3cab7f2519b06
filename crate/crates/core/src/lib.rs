//! Normals, equilibria and affine diameters of convex bodies through points.
//!
//! Pointwise counters (`normals`, `diameters`, `minkowski`) are exact for
//! polygons and polytopes and use certified root counting for smooth and
//! arc-bounded planar bodies. `averaging` turns any counter into a seeded,
//! partition-independent Monte Carlo estimate, and `wedges` gives exact
//! polygon averages for calibration.

pub mod averaging;
pub mod bodies2d;
pub mod bodies3d;
pub mod bodyspec;
pub mod diameters;
pub mod discretization;
pub mod error;
pub mod evolute;
pub mod flows;
pub mod minkowski;
pub mod normals;
pub mod rng;
pub(crate) mod roots;
pub mod trig;
pub mod wedges;

pub use bodies2d::{Body2, Point2, Polygon2, SmoothBody2, ArcBody2};
pub use error::{GeometryError, Result};
