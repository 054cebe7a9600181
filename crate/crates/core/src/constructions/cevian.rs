//! Three concurrent cevians `A O a`, `B O b`, `C O c` satisfy
//!
//! ```text
//! r₁ r₂ r₃ = r₁ + r₂ + r₃ + 2,   r₁ = f(AO)/f(Oa), r₂ = f(BO)/f(Ob), r₃ = f(CO)/f(Oc)
//! ```
//!
//! with `f` the identity in the plane, `tan` on the sphere and `tanh` in the
//! hyperbolic plane. The converse builds the triangle back from the six
//! lengths.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use super::model::{self, Geometry, ModelPoint};
use crate::error::{Error, Result};
use crate::plane::{orient, Point2};
use crate::sphere::Tolerances;

/// Identity tolerance accepted by [`construct_triangle_from_cevians`].
pub const IDENTITY_EPS: f64 = 1e-9;

/// Lengths in the order `AO, Oa, BO, Ob, CO, Oc`.
pub type CevianLengths = [f64; 6];

/// Triangle `ABC`, feet `a ∈ BC`, `b ∈ CA`, `c ∈ AB` and the common point `O`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CevianConfig {
    pub geometry: Geometry,
    pub vertices: [ModelPoint; 3],
    pub feet: [ModelPoint; 3],
    pub center: ModelPoint,
    pub lengths: CevianLengths,
}

impl CevianConfig {
    /// Forward construction: feet are where the geodesics from each vertex
    /// through `center` meet the opposite sides.
    pub fn from_points(vertices: [ModelPoint; 3], center: ModelPoint) -> Result<Self> {
        let g = center.geometry();
        if vertices.iter().any(|v| v.geometry() != g) {
            return Err(Error::InvalidInput("mixed geometries".into()));
        }
        let mut feet = [center; 3];
        for i in 0..3 {
            let (j, k) = ((i + 1) % 3, (i + 2) % 3);
            feet[i] = model::geodesic_intersection(
                g,
                (&vertices[i], &center),
                (&vertices[j], &vertices[k]),
                &center,
            )?;
        }
        let mut lengths = [0.0; 6];
        for i in 0..3 {
            lengths[2 * i] = vertices[i].distance(&center)?;
            lengths[2 * i + 1] = center.distance(&feet[i])?;
        }
        Ok(CevianConfig {
            geometry: g,
            vertices,
            feet,
            center,
            lengths,
        })
    }

    /// Largest collinearity residual over the three cevians and the three
    /// foot-on-side incidences.
    pub fn incidence_residual(&self) -> f64 {
        let v = &self.vertices;
        (0..3)
            .flat_map(|i| {
                let (j, k) = ((i + 1) % 3, (i + 2) % 3);
                [
                    model::collinearity_residual(&v[i], &self.center, &self.feet[i]),
                    model::collinearity_residual(&v[j], &v[k], &self.feet[i]),
                ]
            })
            .fold(0.0, f64::max)
    }

    /// Ratio signs: `−1` when `O` does not separate the vertex from its foot.
    fn ratio_signs(&self) -> Result<[f64; 3]> {
        let mut signs = [1.0; 3];
        for (i, sign) in signs.iter_mut().enumerate() {
            let through = self.vertices[i].distance(&self.feet[i])?;
            let (ao, oa) = (self.lengths[2 * i], self.lengths[2 * i + 1]);
            if (through - (ao + oa)).abs() > (through - (ao - oa).abs()).abs() {
                *sign = -1.0;
            }
        }
        Ok(signs)
    }

    fn validate(&self, tol: &Tolerances) -> Result<()> {
        let points = self.vertices.iter().chain(self.feet.iter());
        if points.chain([&self.center]).any(|p| p.geometry() != self.geometry) {
            return Err(Error::InvalidConfig("mixed geometries".into()));
        }
        check_lengths(self.geometry, &self.lengths)?;
        let inc = self.incidence_residual();
        if inc > tol.residual_eps {
            return Err(Error::InvalidConfig(format!(
                "collinearity/incidence residual {inc:e}"
            )));
        }
        for i in 0..3 {
            let ao = self.vertices[i].distance(&self.center)?;
            let oa = self.center.distance(&self.feet[i])?;
            let mismatch = (ao - self.lengths[2 * i])
                .abs()
                .max((oa - self.lengths[2 * i + 1]).abs());
            if mismatch > tol.residual_eps {
                return Err(Error::InvalidConfig(format!(
                    "stored lengths differ from the points by {mismatch:e}"
                )));
            }
        }
        Ok(())
    }
}

fn check_lengths(g: Geometry, lengths: &CevianLengths) -> Result<()> {
    if lengths.iter().any(|l| !(l.is_finite() && *l > 0.0)) {
        return Err(Error::InvalidConfig(format!(
            "cevian lengths must be positive: {lengths:?}"
        )));
    }
    if g == Geometry::Spherical && lengths.iter().any(|l| *l >= FRAC_PI_2) {
        return Err(Error::QuarterSphereViolation(format!(
            "every length must stay below π/2: {lengths:?}"
        )));
    }
    Ok(())
}

fn gap_from_ratios(r: [f64; 3]) -> f64 {
    r[0] * r[1] * r[2] - (r[0] + r[1] + r[2] + 2.0)
}

/// `r₁r₂r₃ − (r₁ + r₂ + r₃ + 2)` evaluated on bare lengths.
pub fn identity_gap(g: Geometry, lengths: &CevianLengths) -> Result<f64> {
    check_lengths(g, lengths)?;
    let f = |d: f64| g.chart_radius(d);
    Ok(gap_from_ratios([
        f(lengths[0]) / f(lengths[1]),
        f(lengths[2]) / f(lengths[3]),
        f(lengths[4]) / f(lengths[5]),
    ]))
}

/// Identity gap of a validated configuration. Ratios are signed, negative
/// where `O` lies outside the segment from a vertex to its foot, so the
/// identity also holds for an exterior `O`.
pub fn cevian_identity_gap(cfg: &CevianConfig, tol: &Tolerances) -> Result<f64> {
    cfg.validate(tol)?;
    let signs = cfg.ratio_signs()?;
    let f = |d: f64| cfg.geometry.chart_radius(d);
    let l = &cfg.lengths;
    Ok(gap_from_ratios([
        signs[0] * f(l[0]) / f(l[1]),
        signs[1] * f(l[2]) / f(l[3]),
        signs[2] * f(l[4]) / f(l[5]),
    ]))
}

/// Chart placement for ray angles `(θ_B, θ_C)`, with `A` on the positive
/// first axis and each foot on the ray opposite its vertex.
struct Placement {
    radii: [f64; 6],
}

impl Placement {
    fn points(&self, theta_b: f64, theta_c: f64) -> ([Point2; 3], [Point2; 3]) {
        let r = &self.radii;
        let ray = |rho: f64, th: f64| [rho * th.cos(), rho * th.sin()];
        (
            [ray(r[0], 0.0), ray(r[2], theta_b), ray(r[4], theta_c)],
            [ray(r[1], PI), ray(r[3], theta_b + PI), ray(r[5], theta_c + PI)],
        )
    }

    /// Sines of the angles by which each foot misses its side.
    fn residuals(&self, x: [f64; 2]) -> [f64; 3] {
        let (v, f) = self.points(x[0], x[1]);
        let mut out = [0.0; 3];
        for i in 0..3 {
            let (j, k) = ((i + 1) % 3, (i + 2) % 3);
            let side = crate::plane::dist(v[j], v[k]);
            let reach = crate::plane::dist(v[j], f[i]);
            out[i] = orient(v[j], v[k], f[i]) / (side * reach).max(1e-300);
        }
        out
    }

    /// Damped Gauss–Newton (Levenberg–Marquardt) from one start.
    fn refine(&self, start: [f64; 2]) -> ([f64; 2], f64) {
        let cost = |x: [f64; 2]| self.residuals(x).iter().map(|r| r * r).sum::<f64>();
        let mut x = start;
        let mut c = cost(x);
        let mut lambda = 1e-3;
        for _ in 0..200 {
            let r = self.residuals(x);
            let h = 1e-7;
            let mut jac = [[0.0; 2]; 3];
            for (d, step) in [[h, 0.0], [0.0, h]].iter().enumerate() {
                let rp = self.residuals([x[0] + step[0], x[1] + step[1]]);
                let rm = self.residuals([x[0] - step[0], x[1] - step[1]]);
                for i in 0..3 {
                    jac[i][d] = (rp[i] - rm[i]) / (2.0 * h);
                }
            }
            let mut jtj = [[0.0; 2]; 2];
            let mut jtr = [0.0; 2];
            for i in 0..3 {
                for a in 0..2 {
                    jtr[a] += jac[i][a] * r[i];
                    for b in 0..2 {
                        jtj[a][b] += jac[i][a] * jac[i][b];
                    }
                }
            }
            let mut improved = false;
            for _ in 0..20 {
                let m = [
                    [jtj[0][0] * (1.0 + lambda), jtj[0][1]],
                    [jtj[1][0], jtj[1][1] * (1.0 + lambda)],
                ];
                let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
                if det.abs() < 1e-300 {
                    lambda *= 10.0;
                    continue;
                }
                let dx = [
                    -(m[1][1] * jtr[0] - m[0][1] * jtr[1]) / det,
                    -(m[0][0] * jtr[1] - m[1][0] * jtr[0]) / det,
                ];
                let cand = [x[0] + dx[0], x[1] + dx[1]];
                let cc = cost(cand);
                if cc < c {
                    x = cand;
                    c = cc;
                    lambda = (lambda * 0.3).max(1e-12);
                    improved = true;
                    break;
                }
                lambda *= 10.0;
            }
            if !improved || c < 1e-30 {
                break;
            }
        }
        (x, c.sqrt())
    }

    /// Feet strictly inside their sides.
    fn feet_inside(&self, x: [f64; 2]) -> bool {
        let (v, f) = self.points(x[0], x[1]);
        (0..3).all(|i| {
            let (j, k) = ((i + 1) % 3, (i + 2) % 3);
            let d = [v[k][0] - v[j][0], v[k][1] - v[j][1]];
            let len2 = d[0] * d[0] + d[1] * d[1];
            let t = ((f[i][0] - v[j][0]) * d[0] + (f[i][1] - v[j][1]) * d[1]) / len2;
            t > 0.0 && t < 1.0
        })
    }
}

/// Converse construction: a triangle realizing six cevian lengths that
/// satisfy the identity, with `O` interior.
///
/// `O` sits at the chart origin and `A` on the positive first axis, leaving
/// the ray angles of `B` and `C` free; three incidence conditions on these
/// two angles are solved by damped least squares from a 16×16 grid of
/// starts. Of each mirror pair the counterclockwise triangle is returned.
pub fn construct_triangle_from_cevians(
    lengths: &CevianLengths,
    g: Geometry,
    tol: &Tolerances,
) -> Result<CevianConfig> {
    tol.validate()?;
    let gap = identity_gap(g, lengths).map_err(|e| match e {
        Error::InvalidConfig(m) => Error::InvalidInput(m),
        other => other,
    })?;
    if gap.abs() > IDENTITY_EPS {
        return Err(Error::IdentityViolated(gap));
    }
    let placement = Placement {
        radii: lengths.map(|l| g.chart_radius(l)),
    };
    if g == Geometry::Hyperbolic && placement.radii.iter().any(|r| *r >= 1.0) {
        return Err(Error::InvalidInput("length too large for the Klein chart".into()));
    }

    const GRID: usize = 16;
    let mut best: Option<([f64; 2], f64)> = None;
    for i in 0..GRID {
        for j in 0..GRID {
            let start = [
                2.0 * PI * (i as f64 + 0.5) / GRID as f64,
                2.0 * PI * (j as f64 + 0.5) / GRID as f64,
            ];
            let (x, res) = placement.refine(start);
            let x = [x[0].rem_euclid(2.0 * PI), x[1].rem_euclid(2.0 * PI)];
            if res > 1e-12 || !placement.feet_inside(x) {
                continue;
            }
            // counterclockwise: B within the upper half-plane as seen from A
            if !(x[0] > 0.0 && x[0] < PI) {
                continue;
            }
            let better = match best {
                None => true,
                Some((bx, _)) => x < bx,
            };
            if better {
                best = Some((x, res));
            }
        }
    }
    let (x, _) = best.ok_or_else(|| {
        Error::NoRealization("no ray angles place every foot on its side".into())
    })?;
    let (v, f) = placement.points(x[0], x[1]);
    let cfg = CevianConfig {
        geometry: g,
        vertices: [g.from_chart(v[0])?, g.from_chart(v[1])?, g.from_chart(v[2])?],
        feet: [g.from_chart(f[0])?, g.from_chart(f[1])?, g.from_chart(f[2])?],
        center: g.origin(),
        lengths: *lengths,
    };
    cfg.validate(tol)
        .map_err(|e| Error::NoRealization(format!("realization failed validation: {e}")))?;
    Ok(cfg)
}
