//! Spherical geometry engine: triangle solving, areas and solid angles,
//! equal-area loci, cevian and inscribed-triangle constructions, and
//! Apollonius tangency solvers in the plane and in space.
//!
//! All angles are in radians and all spherical quantities live on the unit
//! sphere.

pub mod apollonius;
pub mod area;
pub mod constructions;
pub mod error;
pub mod geo;
pub mod lexell;
pub mod plane;
pub mod sphere;
pub mod triangle;
pub mod vec3;

pub use error::{Error, ErrorKind, Result};
pub use sphere::{
    angular_distance, great_circle_through, small_circle_contains, Angle, GreatCircle,
    SmallCircle, SpherePoint, Tolerances,
};
pub use triangle::{SolveRequest, TriangleData};
