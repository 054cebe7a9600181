//! Inscribe in a circle a triangle whose sides pass through three given
//! points, in the plane and on the sphere.
//!
//! Vertex `V₁` runs around the carrier at parameter `t`. The chord through
//! `V₁` and `P₃` gives `V₂`, the chord through `V₂` and `P₁` gives `V₃`, and
//! the chord through `V₃` and `P₂` returns to the carrier at `g(t)`.
//! Solutions are the fixed points of `g`, found by scanning the signed
//! mismatch `g(t) − t` and refining each root.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use super::model::ModelPoint;
use crate::error::{Error, Result};
use crate::plane::{self, Circle2D, Point2};
use crate::sphere::{SmallCircle, SpherePoint, Tolerances};
use crate::vec3::{self, Vec3};

const ROOT_TOL: f64 = 1e-12;
const MERGE_EPS: f64 = 1e-8;
/// Triangles with two vertices closer than this are dropped as degenerate.
const MIN_SIDE: f64 = 1e-7;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Carrier {
    Circle(Circle2D),
    SmallCircle(SmallCircle),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct InscribedTriangleProblem {
    pub carrier: Carrier,
    /// Side `i` (opposite `Vᵢ`) must pass through `points[i]`.
    pub points: [ModelPoint; 3],
}

impl InscribedTriangleProblem {
    pub fn new(carrier: Carrier, points: [ModelPoint; 3]) -> Result<Self> {
        let prob = InscribedTriangleProblem { carrier, points };
        prob.validate()?;
        Ok(prob)
    }

    fn validate(&self) -> Result<()> {
        let ok = match (&self.carrier, &self.points) {
            (Carrier::Circle(c), pts) => {
                c.r > 0.0 && pts.iter().all(|p| matches!(p, ModelPoint::Plane(_)))
            }
            (Carrier::SmallCircle(c), pts) => {
                c.radius.is_triangle_element()
                    && pts.iter().all(|p| matches!(p, ModelPoint::Sphere(_)))
            }
        };
        if !ok {
            return Err(Error::InvalidInput(
                "carrier needs a positive radius and points of the same model".into(),
            ));
        }
        let p = &self.points;
        for (i, j) in [(0, 1), (1, 2), (0, 2)] {
            if p[i].distance(&p[j])? <= Tolerances::default().abs_eps {
                return Err(Error::InvalidInput(format!(
                    "points {} and {} coincide",
                    i + 1,
                    j + 1
                )));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct InscribedTriangle {
    pub vertices: [ModelPoint; 3],
    /// Carrier parameter of `V₁`, in `[0, 2π)`.
    pub parameter: f64,
    /// Largest distance (sine of the angular distance on the sphere) from
    /// `Pᵢ` to the geodesic carrying side `i`.
    pub incidence_residual: f64,
    /// Largest distance of a vertex from the carrier.
    pub carrier_residual: f64,
}

/// Carrier-specific geometry used by the generic scan.
trait Chain {
    type P: Copy;
    fn at(&self, t: f64) -> Self::P;
    fn param(&self, p: &Self::P) -> f64;
    /// Second carrier intersection of the geodesic through `v` (on the
    /// carrier) and `p`; a tangent geodesic returns `v` itself.
    fn second(&self, v: &Self::P, p: &Self::P) -> Self::P;
    fn incidence(&self, a: &Self::P, b: &Self::P, p: &Self::P) -> f64;
    fn off_carrier(&self, v: &Self::P) -> f64;
    fn separation(&self, a: &Self::P, b: &Self::P) -> f64;
    fn wrap(p: Self::P) -> ModelPoint;
}

impl Chain for Circle2D {
    type P = Point2;

    fn at(&self, t: f64) -> Point2 {
        self.point_at(t)
    }

    fn param(&self, p: &Point2) -> f64 {
        self.parameter_of(*p)
    }

    fn second(&self, v: &Point2, p: &Point2) -> Point2 {
        let d = [p[0] - v[0], p[1] - v[1]];
        let n = d[0].hypot(d[1]);
        let u = [d[0] / n, d[1] / n];
        // reflect v across the diameter perpendicular to the chord
        let s = (v[0] - self.cx) * u[0] + (v[1] - self.cy) * u[1];
        [v[0] - 2.0 * s * u[0], v[1] - 2.0 * s * u[1]]
    }

    fn incidence(&self, a: &Point2, b: &Point2, p: &Point2) -> f64 {
        plane::orient(*a, *b, *p).abs() / plane::dist(*a, *b)
    }

    fn off_carrier(&self, v: &Point2) -> f64 {
        (plane::dist(*v, self.center()) - self.r).abs()
    }

    fn separation(&self, a: &Point2, b: &Point2) -> f64 {
        plane::dist(*a, *b)
    }

    fn wrap(p: Point2) -> ModelPoint {
        ModelPoint::Plane(p)
    }
}

impl Chain for SmallCircle {
    type P = Vec3;

    fn at(&self, t: f64) -> Vec3 {
        self.point_at(t).to_array()
    }

    fn param(&self, p: &Vec3) -> f64 {
        let (u, w) = self.frame();
        vec3::dot(*p, w).atan2(vec3::dot(*p, u))
    }

    fn second(&self, v: &Vec3, p: &Vec3) -> Vec3 {
        // both intersections lie on a line parallel to n × c; they are
        // mirror images across the plane spanned by n and c
        let n = vec3::cross(*v, *p);
        match vec3::normalize(vec3::cross(n, self.pole.to_array())) {
            Some(d) => {
                let s = vec3::dot(*v, d);
                let r = vec3::sub(*v, vec3::scale(d, 2.0 * s));
                vec3::normalize(r).unwrap_or(r)
            }
            None => *v,
        }
    }

    fn incidence(&self, a: &Vec3, b: &Vec3, p: &Vec3) -> f64 {
        let n = vec3::cross(*a, *b);
        vec3::dot(n, *p).abs() / vec3::norm(n)
    }

    fn off_carrier(&self, v: &Vec3) -> f64 {
        (vec3::dot(*v, self.pole.to_array()) - self.radius.0.cos()).abs()
    }

    fn separation(&self, a: &Vec3, b: &Vec3) -> f64 {
        vec3::norm(vec3::cross(*a, *b)).atan2(vec3::dot(*a, *b))
    }

    fn wrap(p: Vec3) -> ModelPoint {
        ModelPoint::Sphere(SpherePoint::normalized(p).expect("unit vector"))
    }
}

fn wrap_angle(x: f64) -> f64 {
    let y = (x + PI).rem_euclid(TAU) - PI;
    if y <= -PI {
        y + TAU
    } else {
        y
    }
}

struct Solver<'a, C: Chain> {
    carrier: &'a C,
    pts: [C::P; 3],
}

impl<C: Chain> Solver<'_, C> {
    fn chain(&self, t: f64) -> [C::P; 4] {
        let c = self.carrier;
        let v1 = c.at(t);
        let v2 = c.second(&v1, &self.pts[2]);
        let v3 = c.second(&v2, &self.pts[0]);
        let back = c.second(&v3, &self.pts[1]);
        [v1, v2, v3, back]
    }

    fn mismatch(&self, t: f64) -> f64 {
        let [_, _, _, back] = self.chain(t);
        wrap_angle(self.carrier.param(&back) - t)
    }

    fn bisect(&self, mut lo: f64, mut hi: f64, mut f_lo: f64) -> f64 {
        while hi - lo > ROOT_TOL {
            let mid = 0.5 * (lo + hi);
            let f_mid = self.mismatch(mid);
            if f_mid == 0.0 {
                return mid;
            }
            if (f_mid > 0.0) == (f_lo > 0.0) {
                lo = mid;
                f_lo = f_mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// Roots hidden inside one scan step, where the samples on both sides
    /// share the sign `side`: golden-section search for the extremum of
    /// `side · m` decides between a close pair of simple roots and a single
    /// touching root.
    fn touch(&self, lo: f64, hi: f64, side: f64) -> Vec<f64> {
        let phi = 0.5 * (5f64.sqrt() - 1.0);
        let f = |t: f64| side * self.mismatch(t);
        let (mut a, mut b) = (lo, hi);
        let mut x1 = b - phi * (b - a);
        let mut x2 = a + phi * (b - a);
        let (mut f1, mut f2) = (f(x1), f(x2));
        while b - a > ROOT_TOL {
            if f1 < 0.0 || f2 < 0.0 {
                break;
            }
            if f1 < f2 {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - phi * (b - a);
                f1 = f(x1);
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + phi * (b - a);
                f2 = f(x2);
            }
        }
        let t = if f1 < f2 { x1 } else { x2 };
        let mut te = self.polish_double_root(t);
        if !(lo..=hi).contains(&te) {
            te = t;
        }
        let m_te = self.mismatch(te);
        // below this depth the dip is rounding noise around a double root
        if side * m_te < -1e-15 {
            let m_lo = self.mismatch(lo);
            vec![self.bisect(lo, te, m_lo), self.bisect(te, hi, m_te)]
        } else {
            vec![te]
        }
    }

    /// Minimizing `|m|` pins a double root only to about `√ε`; Newton steps
    /// on `m′` (five-point differences) recover full precision.
    fn polish_double_root(&self, mut t: f64) -> f64 {
        let h = 1e-4;
        for _ in 0..4 {
            let m = |d: f64| self.mismatch(t + d);
            let (m0, p1, n1, p2, n2) = (m(0.0), m(h), m(-h), m(2.0 * h), m(-2.0 * h));
            let d1 = (n2 - 8.0 * n1 + 8.0 * p1 - p2) / (12.0 * h);
            let d2 = (p1 - 2.0 * m0 + n1) / (h * h);
            if !(d2.abs() > 1e-12) {
                break;
            }
            let step = d1 / d2;
            if !(step.abs() < h) {
                break;
            }
            t -= step;
            if step.abs() < 1e-15 {
                break;
            }
        }
        t
    }

    fn candidates(&self, steps: usize) -> Vec<f64> {
        let ts: Vec<f64> = (0..steps).map(|i| TAU * i as f64 / steps as f64).collect();
        let ms: Vec<f64> = ts.iter().map(|&t| self.mismatch(t)).collect();
        let next = |i: usize| (i + 1) % steps;
        let t_next = |i: usize| if i + 1 == steps { TAU } else { ts[i + 1] };
        let mut out = Vec::new();
        for i in 0..steps {
            let (m0, m1) = (ms[i], ms[next(i)]);
            if m0 == 0.0 {
                out.push(ts[i]);
            } else if (m0 > 0.0) != (m1 > 0.0) && m1 != 0.0 && (m1 - m0).abs() < PI {
                out.push(self.bisect(ts[i], t_next(i), m0));
            }
            // |m| dips without a sign change on either side
            let prev = (i + steps - 1) % steps;
            let mp = ms[prev];
            if m0.abs() <= mp.abs()
                && m0.abs() <= m1.abs()
                && (mp > 0.0) == (m0 > 0.0)
                && (m1 > 0.0) == (m0 > 0.0)
                && m0.abs() < 0.1
            {
                let lo = ts[i] - TAU / steps as f64;
                out.extend(self.touch(lo, t_next(i), m0.signum()));
            }
        }
        out
    }

    fn triangle(&self, t: f64) -> Option<InscribedTriangle> {
        let c = self.carrier;
        let t = t.rem_euclid(TAU);
        let [v1, v2, v3, _] = self.chain(t);
        let v = [v1, v2, v3];
        let min_side = (0..3)
            .map(|i| c.separation(&v[i], &v[(i + 1) % 3]))
            .fold(f64::INFINITY, f64::min);
        if min_side < MIN_SIDE {
            return None;
        }
        let incidence = (0..3)
            .map(|i| c.incidence(&v[(i + 1) % 3], &v[(i + 2) % 3], &self.pts[i]))
            .fold(0.0, f64::max);
        let on = v.iter().map(|p| c.off_carrier(p)).fold(0.0, f64::max);
        Some(InscribedTriangle {
            vertices: v.map(C::wrap),
            parameter: t,
            incidence_residual: incidence,
            carrier_residual: on,
        })
    }

    fn solve(&self, tol: &Tolerances) -> Result<Vec<InscribedTriangle>> {
        let mut found: Vec<InscribedTriangle> = self
            .candidates(tol.root_scan_steps)
            .into_iter()
            .filter_map(|t| self.triangle(t))
            .filter(|s| s.incidence_residual < tol.residual_eps && s.carrier_residual < tol.residual_eps)
            .collect();
        found.sort_by(|a, b| a.parameter.total_cmp(&b.parameter));
        let mut merged: Vec<InscribedTriangle> = Vec::new();
        for s in found {
            let dup = merged.iter_mut().find(|m| {
                let d = (m.parameter - s.parameter).abs();
                d.min(TAU - d) < MERGE_EPS
            });
            match dup {
                Some(m) if s.incidence_residual < m.incidence_residual => *m = s,
                Some(_) => {}
                None => merged.push(s),
            }
        }
        if merged.is_empty() {
            return Err(Error::NoSolution(
                "the closure map has no fixed point on the carrier".into(),
            ));
        }
        Ok(merged)
    }
}

/// All inscribed triangles whose side `i` passes through `Pᵢ`, ordered by
/// the carrier parameter of `V₁`.
///
/// A point on the carrier (or, on the sphere, antipodal to it) collapses
/// the chain and is reported as `DegenerateChain`; a chord that is merely
/// tangent counts its touching point twice.
pub fn pappus_inscribed_triangle(
    prob: &InscribedTriangleProblem,
    tol: &Tolerances,
) -> Result<Vec<InscribedTriangle>> {
    tol.validate()?;
    prob.validate()?;
    let degenerate = |i: usize| {
        Error::DegenerateChain(format!("point {} lies on the carrier", i + 1))
    };
    match prob.carrier {
        Carrier::Circle(c) => {
            let pts = prob.points.map(|p| match p {
                ModelPoint::Plane(q) => q,
                _ => unreachable!("validated"),
            });
            for (i, p) in pts.iter().enumerate() {
                if c.off_carrier(p) <= tol.abs_eps * c.r.max(1.0) {
                    return Err(degenerate(i));
                }
            }
            Solver { carrier: &c, pts }.solve(tol)
        }
        Carrier::SmallCircle(c) => {
            let pts = prob.points.map(|p| match p {
                ModelPoint::Sphere(q) => q.to_array(),
                _ => unreachable!("validated"),
            });
            for (i, p) in pts.iter().enumerate() {
                let r = vec3::dot(*p, c.pole.to_array());
                let cr = c.radius.0.cos();
                if (r - cr).abs() <= tol.abs_eps || (r + cr).abs() <= tol.abs_eps {
                    return Err(degenerate(i));
                }
            }
            Solver { carrier: &c, pts }.solve(tol)
        }
    }
}
