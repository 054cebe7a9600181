//! Apex loci of triangles with a fixed base and a fixed area: a pair of
//! parallel lines in the plane, a small circle on the sphere.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::area;
use crate::error::{Error, Result};
use crate::plane::{Line2, Point2};
use crate::sphere::{angular_distance, Angle, SmallCircle, SpherePoint, Tolerances};
use crate::vec3::{self, Vec3};

/// Apices `P` with `area(ABP) = area` in the plane: the two parallels to
/// `AB` at distance `2·area/|AB|`. The first line lies to the left of `A→B`.
pub fn euclidean_equal_area_locus(a: Point2, b: Point2, area: f64) -> Result<[Line2; 2]> {
    let d = [b[0] - a[0], b[1] - a[1]];
    let len = d[0].hypot(d[1]);
    if !(len > Tolerances::default().abs_eps) {
        return Err(Error::DegenerateInput("base points coincide".into()));
    }
    if !(area.is_finite() && area > 0.0) {
        return Err(Error::InvalidInput(format!("area must be positive, got {area}")));
    }
    let h = 2.0 * area / len;
    let normal = [-d[1] / len, d[0] / len];
    let line = |sign: f64| Line2 {
        point: [a[0] + sign * h * normal[0], a[1] + sign * h * normal[1]],
        direction: d,
    };
    Ok([line(1.0), line(-1.0)])
}

/// Area of the spherical triangle with the given vertices, from its sides.
pub fn spherical_triangle_area_from_vertices(
    p: &SpherePoint,
    q: &SpherePoint,
    r: &SpherePoint,
) -> Result<f64> {
    let eps = Tolerances::default().abs_eps;
    let pairs = [(p, q), (q, r), (r, p)];
    for (x, y) in pairs {
        let d = angular_distance(x, y).0;
        if d <= eps || d >= PI - eps {
            return Err(Error::DegenerateInput(
                "vertices coincide or are antipodal".into(),
            ));
        }
    }
    let side = |x: &SpherePoint, y: &SpherePoint| {
        let (u, v) = (x.to_array(), y.to_array());
        Angle(vec3::norm(vec3::cross(u, v)).atan2(vec3::dot(u, v)))
    };
    area::heron_spherical_area(side(q, r), side(r, p), side(p, q))
        .map_err(|e| Error::DegenerateInput(format!("vertices span no triangle: {e}")))
}

/// The equal-area locus on the sphere together with its defining data.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LexellLocus {
    pub base_a: SpherePoint,
    pub base_b: SpherePoint,
    pub area: f64,
    /// Oriented so that `pole · (A × B) > 0`; the locus is the arc of this
    /// circle on the same side of the base great circle.
    pub circle: SmallCircle,
    /// Pole `A × B / |A × B|` of the base great circle; apices lie on its side.
    pub base_pole: SpherePoint,
}

impl LexellLocus {
    /// True when `p` lies on the apex side of the base great circle.
    pub fn on_apex_side(&self, p: &SpherePoint) -> bool {
        self.base_pole.dot(p) > 0.0
    }

    /// Point of the locus arc; `s ∈ (0, 1)` runs from near `−A` to near `−B`.
    pub fn sample(&self, s: f64) -> SpherePoint {
        let t_a = self.circle.parameter_of(&self.base_a.antipode());
        let t_b = self.circle.parameter_of(&self.base_b.antipode());
        let mid = self.circle.parameter_of(&self.apex_reference());
        // choose the arc from −A to −B that passes the reference apex
        let mut span = t_b - t_a;
        let rel_mid = (mid - t_a).rem_euclid(2.0 * PI);
        span = span.rem_euclid(2.0 * PI);
        if rel_mid > span {
            span -= 2.0 * PI;
        }
        self.circle.point_at(t_a + s * span)
    }

    fn apex_reference(&self) -> SpherePoint {
        // the circle point farthest along the base pole lies on the locus arc
        let n = self.base_pole.to_array();
        let (u, w) = self.circle.frame();
        self.circle.point_at(vec3::dot(n, w).atan2(vec3::dot(n, u)))
    }
}

/// Frame of the construction: unit base points and the base pole.
struct BaseFrame {
    a: Vec3,
    b: Vec3,
    pole: Vec3,
}

impl BaseFrame {
    fn new(a: &SpherePoint, b: &SpherePoint) -> Result<Self> {
        let (av, bv) = (a.to_array(), b.to_array());
        let n = vec3::cross(av, bv);
        if vec3::norm(n) <= Tolerances::default().abs_eps {
            return Err(Error::DegenerateInput(
                "base points coincide or are antipodal".into(),
            ));
        }
        Ok(BaseFrame {
            a: av,
            b: bv,
            pole: vec3::normalize(n).unwrap(),
        })
    }

    /// Point of the base arc at fraction `f` from `A` to `B`.
    fn base_point(&self, f: f64) -> Vec3 {
        let omega = vec3::norm(vec3::cross(self.a, self.b)).atan2(vec3::dot(self.a, self.b));
        let s = omega.sin();
        let wa = ((1.0 - f) * omega).sin() / s;
        let wb = (f * omega).sin() / s;
        vec3::normalize(vec3::add(vec3::scale(self.a, wa), vec3::scale(self.b, wb))).unwrap()
    }

    /// Great-circle path leaving the base point at fraction `f` into the apex
    /// hemisphere, tilted by `tilt` from the base direction `A → B`
    /// (`tilt = π/2` is the meridian through the base pole).
    fn path(&self, f: f64, tilt: f64) -> ApexPath {
        let foot = self.base_point(f);
        let along = vec3::cross(self.pole, foot);
        let (s, c) = tilt.sin_cos();
        ApexPath {
            foot,
            heading: vec3::add(vec3::scale(along, c), vec3::scale(self.pole, s)),
        }
    }

    fn area_at(&self, path: &ApexPath, phi: f64) -> f64 {
        let p = path.at(phi);
        let (a, b) = (
            SpherePoint::from_unit(self.a),
            SpherePoint::from_unit(self.b),
        );
        spherical_triangle_area_from_vertices(&a, &b, &p).unwrap_or(f64::NAN)
    }

    /// Bracketed bisection for the apex with area `target` along one path.
    /// The area grows from 0 at the foot towards 2π at the foot's antipode.
    fn solve_apex(&self, path: &ApexPath, target: f64, tol: &Tolerances) -> Result<SpherePoint> {
        let steps = tol.root_scan_steps.max(16);
        let h = PI / steps as f64;
        let mismatch = |phi: f64| self.area_at(path, phi) - target;
        let mut lo = 0.0;
        let mut f_lo = -target;
        for k in 1..steps {
            let hi = h * k as f64;
            let f_hi = mismatch(hi);
            if f_lo.is_finite() && f_hi.is_finite() && f_lo.signum() != f_hi.signum() {
                let (mut a, mut b) = (lo, hi);
                while b - a > 1e-13 {
                    let mid = 0.5 * (a + b);
                    let fm = mismatch(mid);
                    if fm.signum() == f_lo.signum() {
                        a = mid;
                    } else {
                        b = mid;
                    }
                }
                return Ok(path.at(0.5 * (a + b)));
            }
            lo = hi;
            f_lo = f_hi;
        }
        Err(Error::UnattainableArea(format!(
            "no apex with area {target} on the scanned path"
        )))
    }
}

struct ApexPath {
    foot: Vec3,
    heading: Vec3,
}

impl ApexPath {
    fn at(&self, phi: f64) -> SpherePoint {
        let (s, c) = phi.sin_cos();
        SpherePoint::normalized(vec3::add(vec3::scale(self.foot, c), vec3::scale(self.heading, s)))
            .expect("path point")
    }
}

/// Starting fractions and tilts of the apex search paths. The first is the
/// perpendicular bisector; paths cross pairwise, so the three best-spread
/// apices are kept for the fit.
const APEX_PATHS: [(f64, f64); 5] = [
    (0.5, PI / 2.0),
    (0.2, PI / 3.0),
    (0.8, 2.0 * PI / 3.0),
    (0.35, 2.0 * PI / 3.0),
    (0.65, PI / 3.0),
];

fn spread(p: &[SpherePoint; 3]) -> f64 {
    let [x, y, z] = p.map(|q| q.to_array());
    vec3::norm(vec3::cross(vec3::sub(y, x), vec3::sub(z, x)))
}

/// Unit normal and offset of the plane through three points.
fn fit_circle(p: [SpherePoint; 3]) -> Result<(Vec3, f64)> {
    let [x, y, z] = p.map(|q| q.to_array());
    let n = vec3::cross(vec3::sub(y, x), vec3::sub(z, x));
    let n = vec3::normalize(n)
        .ok_or_else(|| Error::DegenerateInput("apices are collinear".into()))?;
    let offset = (vec3::dot(n, x) + vec3::dot(n, y) + vec3::dot(n, z)) / 3.0;
    Ok((n, offset))
}

/// The small circle carrying every apex `P` with `area(ABP) = area`.
///
/// Three apices are located by bisection along meridians through the base
/// pole (one from the base midpoint, two from asymmetric base points) and
/// the circle is fitted through them. That the circle passes through the
/// antipodes of `A` and `B` is not used; it can be checked afterwards with
/// [`lexell_antipode_residual`].
pub fn lexell_circle(
    a: &SpherePoint,
    b: &SpherePoint,
    area: f64,
    tol: &Tolerances,
) -> Result<LexellLocus> {
    tol.validate()?;
    let frame = BaseFrame::new(a, b)?;
    if !(area.is_finite() && area > 0.0 && area < 2.0 * PI) {
        return Err(Error::UnattainableArea(format!(
            "area {area} outside (0, 2π)"
        )));
    }
    let found = APEX_PATHS
        .iter()
        .map(|&(f, tilt)| frame.solve_apex(&frame.path(f, tilt), area, tol))
        .collect::<Result<Vec<_>>>()?;
    let mut apices = [found[0], found[1], found[2]];
    for i in 0..found.len() {
        for j in i + 1..found.len() {
            for k in j + 1..found.len() {
                let cand = [found[i], found[j], found[k]];
                if spread(&cand) > spread(&apices) {
                    apices = cand;
                }
            }
        }
    }
    let (mut n, mut offset) = fit_circle(apices)?;
    if vec3::dot(n, frame.pole) < 0.0 {
        n = vec3::scale(n, -1.0);
        offset = -offset;
    }
    let radius = offset.clamp(-1.0, 1.0).acos();
    let circle = SmallCircle::new(SpherePoint::normalized(n)?, Angle(radius))?;
    let locus = LexellLocus {
        base_a: *a,
        base_b: *b,
        area,
        circle,
        base_pole: SpherePoint::from_unit(frame.pole),
    };
    for p in &apices {
        let r = circle.residual(p).abs();
        if r > tol.residual_eps {
            return Err(Error::UnattainableArea(format!(
                "fitted circle misses an apex by {r:e}"
            )));
        }
    }
    Ok(locus)
}

/// Largest distance of `−A`, `−B` from the fitted circle.
pub fn lexell_antipode_residual(locus: &LexellLocus) -> f64 {
    let ra = locus.circle.residual(&locus.base_a.antipode()).abs();
    let rb = locus.circle.residual(&locus.base_b.antipode()).abs();
    ra.max(rb)
}

/// Angle between the fitted pole and the base great circle's pole.
pub fn pole_separation(locus: &LexellLocus) -> f64 {
    angular_distance(&locus.circle.pole, &locus.base_pole).0
}
