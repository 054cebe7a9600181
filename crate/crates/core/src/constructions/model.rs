//! The three constant-curvature geometries and their models.
//!
//! Every model admits a projective chart centered at a chosen origin in
//! which geodesics are straight lines: the identity for the plane, the
//! gnomonic projection for the sphere and the Klein disk for the
//! hyperboloid. A point at geodesic distance `d` from the origin sits at
//! chart radius `d`, `tan d` and `tanh d` respectively.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::plane::Point2;
use crate::sphere::SpherePoint;
use crate::vec3::{self, Vec3};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Geometry {
    Euclidean,
    Spherical,
    Hyperbolic,
}

impl Geometry {
    /// Chart radius of a point at geodesic distance `d` from the origin.
    pub fn chart_radius(self, d: f64) -> f64 {
        match self {
            Geometry::Euclidean => d,
            Geometry::Spherical => d.tan(),
            Geometry::Hyperbolic => d.tanh(),
        }
    }

    /// Point of the model whose chart coordinates are `u`.
    pub fn from_chart(self, u: Point2) -> Result<ModelPoint> {
        match self {
            Geometry::Euclidean => Ok(ModelPoint::Plane(u)),
            Geometry::Spherical => Ok(ModelPoint::Sphere(SpherePoint::normalized([
                u[0], u[1], 1.0,
            ])?)),
            Geometry::Hyperbolic => {
                let r2 = u[0] * u[0] + u[1] * u[1];
                if r2 >= 1.0 {
                    return Err(Error::InvalidInput(format!(
                        "chart point {u:?} lies outside the Klein disk"
                    )));
                }
                let t = 1.0 / (1.0 - r2).sqrt();
                Ok(ModelPoint::Hyperboloid(HyperboloidPoint {
                    t,
                    x: t * u[0],
                    y: t * u[1],
                }))
            }
        }
    }

    /// The chart origin.
    pub fn origin(self) -> ModelPoint {
        self.from_chart([0.0, 0.0]).expect("origin is in every chart")
    }

    pub fn label(self) -> &'static str {
        match self {
            Geometry::Euclidean => "euclidean",
            Geometry::Spherical => "spherical",
            Geometry::Hyperbolic => "hyperbolic",
        }
    }
}

/// A point of the hyperbolic plane on the upper sheet `t² − x² − y² = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HyperboloidPoint {
    pub t: f64,
    pub x: f64,
    pub y: f64,
}

impl HyperboloidPoint {
    pub fn new(t: f64, x: f64, y: f64) -> Result<Self> {
        let q = t * t - x * x - y * y;
        if !(t > 0.0 && (q - 1.0).abs() <= 1e-9 * t * t) {
            return Err(Error::InvalidInput(format!(
                "({t}, {x}, {y}) is not on the upper hyperboloid sheet"
            )));
        }
        Ok(HyperboloidPoint { t, x, y })
    }

    /// `−⟨p, q⟩` in the Minkowski form, equal to `cosh d(p, q)`.
    pub fn minkowski_dot(&self, other: &HyperboloidPoint) -> f64 {
        self.t * other.t - self.x * other.x - self.y * other.y
    }

    pub fn distance(&self, other: &HyperboloidPoint) -> f64 {
        // cosh d − 1 = |p − q|²_M / 2, better conditioned for close points
        let dt = self.t - other.t;
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        let half_sq = 0.5 * (dx * dx + dy * dy - dt * dt);
        // sinh(d/2) = √(half_sq / 2)
        2.0 * (0.5 * half_sq.max(0.0)).sqrt().asinh()
    }
}

/// A point in one of the three models.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelPoint {
    Plane(Point2),
    Sphere(SpherePoint),
    Hyperboloid(HyperboloidPoint),
}

impl ModelPoint {
    pub fn geometry(&self) -> Geometry {
        match self {
            ModelPoint::Plane(_) => Geometry::Euclidean,
            ModelPoint::Sphere(_) => Geometry::Spherical,
            ModelPoint::Hyperboloid(_) => Geometry::Hyperbolic,
        }
    }

    /// Homogeneous coordinates: geodesics are planes through the origin.
    pub fn homogeneous(&self) -> Vec3 {
        match self {
            ModelPoint::Plane(p) => [p[0], p[1], 1.0],
            ModelPoint::Sphere(p) => p.to_array(),
            ModelPoint::Hyperboloid(p) => [p.x, p.y, p.t],
        }
    }

    /// Chart coordinates about the standard origin, if the point has any.
    pub fn chart(&self) -> Option<Point2> {
        let h = self.homogeneous();
        (h[2] > 0.0).then(|| [h[0] / h[2], h[1] / h[2]])
    }

    /// Rebuilds a model point of geometry `g` from homogeneous coordinates
    /// (any non-zero multiple).
    pub fn from_homogeneous(g: Geometry, h: Vec3) -> Result<ModelPoint> {
        match g {
            Geometry::Spherical => Ok(ModelPoint::Sphere(SpherePoint::normalized(h)?)),
            _ => {
                if h[2].abs() < 1e-300 {
                    return Err(Error::DegenerateInput("point at infinity".into()));
                }
                g.from_chart([h[0] / h[2], h[1] / h[2]])
            }
        }
    }

    pub fn distance(&self, other: &ModelPoint) -> Result<f64> {
        match (self, other) {
            (ModelPoint::Plane(p), ModelPoint::Plane(q)) => Ok(crate::plane::dist(*p, *q)),
            (ModelPoint::Sphere(p), ModelPoint::Sphere(q)) => {
                let (u, v) = (p.to_array(), q.to_array());
                Ok(vec3::norm(vec3::cross(u, v)).atan2(vec3::dot(u, v)))
            }
            (ModelPoint::Hyperboloid(p), ModelPoint::Hyperboloid(q)) => Ok(p.distance(q)),
            _ => Err(Error::InvalidInput(
                "points belong to different geometries".into(),
            )),
        }
    }
}

/// Scale-free collinearity residual of three points: the sine of the angle
/// between `r` and the plane spanned by `p` and `q` in homogeneous space.
pub fn collinearity_residual(p: &ModelPoint, q: &ModelPoint, r: &ModelPoint) -> f64 {
    let (hp, hq, hr) = (p.homogeneous(), q.homogeneous(), r.homogeneous());
    let n = vec3::cross(hp, hq);
    let denom = vec3::norm(n) * vec3::norm(hr);
    if denom == 0.0 {
        return 0.0;
    }
    vec3::dot(n, hr).abs() / denom
}

/// Intersection of the geodesics `p1 q1` and `p2 q2`; for the sphere the
/// representative nearest to `near` is returned.
pub fn geodesic_intersection(
    g: Geometry,
    (p1, q1): (&ModelPoint, &ModelPoint),
    (p2, q2): (&ModelPoint, &ModelPoint),
    near: &ModelPoint,
) -> Result<ModelPoint> {
    let n1 = vec3::cross(p1.homogeneous(), q1.homogeneous());
    let n2 = vec3::cross(p2.homogeneous(), q2.homogeneous());
    let mut h = vec3::cross(n1, n2);
    if vec3::norm(h) <= 1e-14 * vec3::norm(n1) * vec3::norm(n2) {
        return Err(Error::DegenerateInput("geodesics coincide".into()));
    }
    if vec3::dot(h, near.homogeneous()) < 0.0 {
        h = vec3::scale(h, -1.0);
    }
    ModelPoint::from_homogeneous(g, h)
}
