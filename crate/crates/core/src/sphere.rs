//! Angles, points on the unit sphere, great and small circles, and the
//! tolerance policy shared by the solvers.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vec3::{self, Vec3};

/// Maximum deviation from unit norm accepted for a [`SpherePoint`].
pub const UNIT_NORM_EPS: f64 = 1e-12;

/// An angle in radians.
#[derive(Clone, Copy, Debug, Default, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Angle(pub f64);

impl Angle {
    pub const RIGHT: Angle = Angle(FRAC_PI_2);
    pub const STRAIGHT: Angle = Angle(PI);

    pub fn from_degrees(deg: f64) -> Self {
        Angle(deg.to_radians())
    }

    #[inline]
    pub fn radians(self) -> f64 {
        self.0
    }

    pub fn degrees(self) -> f64 {
        self.0.to_degrees()
    }

    pub fn is_finite(self) -> bool {
        self.0.is_finite()
    }

    /// True when the angle may serve as a side or angle of a triangle.
    pub fn is_triangle_element(self) -> bool {
        self.0.is_finite() && self.0 > 0.0 && self.0 < PI
    }

    /// `π − self`, the polar supplement.
    pub fn supplement(self) -> Self {
        Angle(PI - self.0)
    }
}

/// Numerical tolerances used across the crate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Coincidence / degeneracy threshold on geometric quantities.
    pub abs_eps: f64,
    /// Largest acceptable residual of a constructed solution.
    pub residual_eps: f64,
    /// Number of samples in uniform root scans.
    pub root_scan_steps: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            abs_eps: 1e-10,
            residual_eps: 1e-8,
            root_scan_steps: 4096,
        }
    }
}

impl Tolerances {
    pub fn validate(&self) -> Result<()> {
        let ok = self.abs_eps > 0.0
            && self.abs_eps.is_finite()
            && self.residual_eps > 0.0
            && self.residual_eps.is_finite()
            && self.root_scan_steps > 0;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!(
                "tolerances must be positive: {self:?}"
            )))
        }
    }

    pub fn with_residual_eps(mut self, eps: f64) -> Self {
        self.residual_eps = eps;
        self
    }
}

/// A point on the unit sphere.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 3]", into = "[f64; 3]")]
pub struct SpherePoint {
    x: f64,
    y: f64,
    z: f64,
}

impl SpherePoint {
    /// Accepts a vector whose norm is already 1 within [`UNIT_NORM_EPS`].
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let n2 = x * x + y * y + z * z;
        if !n2.is_finite() || (n2 - 1.0).abs() > UNIT_NORM_EPS {
            return Err(Error::InvalidInput(format!(
                "({x}, {y}, {z}) is not a unit vector"
            )));
        }
        Ok(SpherePoint { x, y, z })
    }

    /// Projects an arbitrary non-zero vector onto the sphere.
    pub fn normalized(v: Vec3) -> Result<Self> {
        let u = vec3::normalize(v)
            .ok_or_else(|| Error::DegenerateInput(format!("cannot normalize {v:?}")))?;
        Ok(SpherePoint {
            x: u[0],
            y: u[1],
            z: u[2],
        })
    }

    pub(crate) fn from_unit(v: Vec3) -> Self {
        debug_assert!((vec3::norm(v) - 1.0).abs() < 1e-9);
        SpherePoint {
            x: v[0],
            y: v[1],
            z: v[2],
        }
    }

    /// Point at colatitude `theta` and longitude `phi`.
    pub fn from_spherical(theta: f64, phi: f64) -> Self {
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        SpherePoint::from_unit([st * cp, st * sp, ct])
    }

    pub fn x(&self) -> f64 {
        self.x
    }
    pub fn y(&self) -> f64 {
        self.y
    }
    pub fn z(&self) -> f64 {
        self.z
    }

    #[inline]
    pub fn to_array(self) -> Vec3 {
        [self.x, self.y, self.z]
    }

    #[inline]
    pub fn dot(&self, other: &SpherePoint) -> f64 {
        vec3::dot(self.to_array(), other.to_array())
    }

    pub fn antipode(&self) -> Self {
        SpherePoint {
            x: -self.x,
            y: -self.y,
            z: -self.z,
        }
    }
}

impl TryFrom<[f64; 3]> for SpherePoint {
    type Error = Error;

    fn try_from(v: [f64; 3]) -> Result<Self> {
        SpherePoint::new(v[0], v[1], v[2])
    }
}

impl From<SpherePoint> for [f64; 3] {
    fn from(p: SpherePoint) -> Self {
        p.to_array()
    }
}

/// The great circle `{p : p · pole = 0}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GreatCircle {
    pub pole: SpherePoint,
}

impl GreatCircle {
    pub fn contains(&self, p: &SpherePoint, tol: f64) -> bool {
        self.pole.dot(p).abs() <= tol
    }
}

/// The small circle `{p : p · pole = cos(radius)}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SmallCircle {
    pub pole: SpherePoint,
    pub radius: Angle,
}

impl SmallCircle {
    pub fn new(pole: SpherePoint, radius: Angle) -> Result<Self> {
        if !radius.is_triangle_element() {
            return Err(Error::InvalidInput(format!(
                "small-circle radius {} outside (0, π)",
                radius.0
            )));
        }
        Ok(SmallCircle { pole, radius })
    }

    pub fn contains(&self, p: &SpherePoint, tol: f64) -> bool {
        small_circle_contains(self, p, tol)
    }

    /// Point on the circle at parameter `t`, measured in the frame returned
    /// by [`SmallCircle::frame`].
    pub fn point_at(&self, t: f64) -> SpherePoint {
        let (u, w) = self.frame();
        let c = self.pole.to_array();
        let (sr, cr) = self.radius.0.sin_cos();
        let (st, ct) = t.sin_cos();
        let v = vec3::add(
            vec3::scale(c, cr),
            vec3::add(vec3::scale(u, sr * ct), vec3::scale(w, sr * st)),
        );
        // renormalize to keep the unit-norm invariant tight
        SpherePoint::normalized(v).expect("circle point is non-zero")
    }

    /// Parameter of the projection of `p` onto the circle.
    pub fn parameter_of(&self, p: &SpherePoint) -> f64 {
        let (u, w) = self.frame();
        let v = p.to_array();
        vec3::dot(v, w).atan2(vec3::dot(v, u))
    }

    /// Deterministic orthonormal frame `(u, w)` of the circle's plane, with
    /// `u × w = pole`.
    pub fn frame(&self) -> (Vec3, Vec3) {
        let c = self.pole.to_array();
        let u = vec3::any_orthogonal(c);
        let w = vec3::cross(c, u);
        (u, w)
    }

    /// Signed residual `p · pole − cos(radius)`.
    pub fn residual(&self, p: &SpherePoint) -> f64 {
        self.pole.dot(p) - self.radius.0.cos()
    }
}

impl From<GreatCircle> for SmallCircle {
    fn from(g: GreatCircle) -> Self {
        SmallCircle {
            pole: g.pole,
            radius: Angle::RIGHT,
        }
    }
}

/// Great-circle distance between two points, in `[0, π]`.
pub fn angular_distance(p: &SpherePoint, q: &SpherePoint) -> Angle {
    Angle(p.dot(q).clamp(-1.0, 1.0).acos())
}

/// Great circle through `p` and `q` with pole `p × q` (order sensitive).
pub fn great_circle_through(p: &SpherePoint, q: &SpherePoint) -> Result<GreatCircle> {
    let eps = Tolerances::default().abs_eps;
    let n = vec3::cross(p.to_array(), q.to_array());
    if vec3::norm(n) <= eps {
        return Err(Error::DegenerateInput(
            "points coincide or are antipodal".into(),
        ));
    }
    Ok(GreatCircle {
        pole: SpherePoint::normalized(n)?,
    })
}

pub fn small_circle_contains(c: &SmallCircle, p: &SpherePoint, tol: f64) -> bool {
    c.residual(p).abs() <= tol
}
