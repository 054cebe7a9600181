//! Classical constructions carried across the plane, the sphere and the
//! hyperbolic plane.

pub mod cevian;
pub mod model;
pub mod pappus;
pub mod quadrilateral;

pub use cevian::{
    cevian_identity_gap, construct_triangle_from_cevians, identity_gap, CevianConfig,
    CevianLengths,
};
pub use model::{collinearity_residual, Geometry, HyperboloidPoint, ModelPoint};
pub use pappus::{pappus_inscribed_triangle, Carrier, InscribedTriangle, InscribedTriangleProblem};
pub use quadrilateral::quadrilateral_identity_gap;
