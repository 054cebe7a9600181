//! Areas on the unit sphere: lunes, triangles (from angles or from sides)
//! and the solid angles of regular polyhedral vertices.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sphere::Angle;
use crate::triangle::{self, SolveRequest};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolidAngleMethod {
    Excess,
    RegularNGon,
}

/// A solid angle, i.e. an area on the unit sphere.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolidAngleResult {
    pub steradians: f64,
    pub method: SolidAngleMethod,
}

/// Area of the lune cut out by two half great circles meeting at angle `theta`.
pub fn lune_area(theta: Angle) -> Result<f64> {
    if !(theta.0 > 0.0 && theta.0 <= 2.0 * PI) {
        return Err(Error::InvalidInput(format!(
            "lune angle {} outside (0, 2π]",
            theta.0
        )));
    }
    Ok(2.0 * theta.0)
}

/// Girard: the area of a triangle is its angle excess over two right angles.
pub fn girard_area(a: Angle, b: Angle, c: Angle) -> Result<f64> {
    let e = a.0 + b.0 + c.0 - PI;
    if !(e > 0.0 && e < 2.0 * PI) {
        return Err(Error::InvalidTriangle(format!(
            "excess {e} outside (0, 2π)"
        )));
    }
    Ok(e)
}

/// Triangle area from its sides alone (L'Huilier):
/// `tan(E/4) = √(tan(s/2) tan((s−a)/2) tan((s−b)/2) tan((s−c)/2))`.
pub fn heron_spherical_area(a: Angle, b: Angle, c: Angle) -> Result<f64> {
    triangle::angle_from_sss(a, b, c)?;
    let s = 0.5 * (a.0 + b.0 + c.0);
    let prod = (0.5 * s).tan()
        * (0.5 * (s - a.0)).tan()
        * (0.5 * (s - b.0)).tan()
        * (0.5 * (s - c.0)).tan();
    Ok(4.0 * prod.max(0.0).sqrt().atan())
}

/// Heron's formula in the plane.
pub fn heron_planar_area(a: f64, b: f64, c: f64) -> Result<f64> {
    let valid = [a, b, c].iter().all(|x| x.is_finite() && *x > 0.0)
        && a < b + c
        && b < c + a
        && c < a + b;
    if !valid {
        return Err(Error::InvalidTriangle(format!(
            "({a}, {b}, {c}) is not a planar triangle"
        )));
    }
    let s = 0.5 * (a + b + c);
    Ok((s * (s - a) * (s - b) * (s - c)).sqrt())
}

/// Solid angle of a trihedral cone with face angles `a, b, c`: the area of
/// the spherical triangle those angles bound.
pub fn solid_angle_trihedral(a: Angle, b: Angle, c: Angle) -> Result<SolidAngleResult> {
    Ok(SolidAngleResult {
        steradians: heron_spherical_area(a, b, c)?,
        method: SolidAngleMethod::Excess,
    })
}

/// Solid angle of the cone whose `n` planar face angles all equal `a` and
/// whose faces are equally inclined to one another.
///
/// The cone cuts the unit sphere in a regular spherical `n`-gon of side `a`.
/// Joining its center to the vertices gives `n` isosceles triangles with
/// apex angle `2π/n`; halving one yields a right triangle with leg `a/2`
/// opposite the angle `π/n`, solved through the Napier relations for the
/// polygon's half vertex angle `B`. Each isosceles triangle then has excess
/// `2π/n + 2B − π`.
pub fn solid_angle_regular(n: u32, a: Angle) -> Result<SolidAngleResult> {
    if n < 3 {
        return Err(Error::InvalidInput(format!("need at least 3 faces, got {n}")));
    }
    let nf = n as f64;
    if !(a.0.is_finite() && a.0 > 0.0 && a.0 < 2.0 * PI / nf) {
        return Err(Error::InfeasibleCone(format!(
            "{n} face angles of {} cannot close around a vertex",
            a.0
        )));
    }
    let half_apex = PI / nf;
    let req = SolveRequest::from_slots([Some(0.5 * a.0), None, None, Some(half_apex), None, None]);
    let halves = triangle::solve_right(&req)
        .map_err(|e| Error::InfeasibleCone(format!("no regular polygon: {e}")))?;
    // the convex polygon has the shorter apothem
    let half = halves
        .iter()
        .min_by(|x, y| x.sides()[1].0.total_cmp(&y.sides()[1].0))
        .expect("solve_right returns at least one triangle");
    let half_vertex_angle = half.angles()[1].0;
    let per_triangle = 2.0 * half_apex + 2.0 * half_vertex_angle - PI;
    Ok(SolidAngleResult {
        steradians: nf * per_triangle,
        method: SolidAngleMethod::RegularNGon,
    })
}

/// One vertex figure of a Platonic solid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolyhedronRow {
    pub name: &'static str,
    /// Faces meeting at each vertex.
    pub faces: u32,
    /// Planar angle of each face at the vertex.
    pub face_angle: Angle,
    pub solid_angle: SolidAngleResult,
}

/// Vertex solid angles of the five regular polyhedra.
pub fn regular_polyhedra_table() -> Vec<PolyhedronRow> {
    [
        ("tetrahedron", 3, PI / 3.0),
        ("cube", 3, PI / 2.0),
        ("octahedron", 4, PI / 3.0),
        ("dodecahedron", 3, 3.0 * PI / 5.0),
        ("icosahedron", 5, PI / 3.0),
    ]
    .into_iter()
    .map(|(name, faces, angle)| PolyhedronRow {
        name,
        faces,
        face_angle: Angle(angle),
        solid_angle: solid_angle_regular(faces, Angle(angle))
            .expect("platonic vertex figures are feasible"),
    })
    .collect()
}
