//! One handler per subcommand: payload in, results and residuals out.
//!
//! Angle-valued fields are converted on the way in and out according to
//! the request's units; everything between is radians.

use std::f64::consts::PI;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use sphaerica::apollonius::{self, Sphere3D, TangencySigns};
use sphaerica::area;
use sphaerica::constructions::{
    self, CevianConfig, Geometry, HyperboloidPoint, InscribedTriangleProblem, ModelPoint,
};
use sphaerica::geo::{self, GeoCoordinate, EARTH_RADIUS_KM};
use sphaerica::lexell;
use sphaerica::plane::{self, Circle2D, Point2};
use sphaerica::triangle::{self, TriangleData};
use sphaerica::vec3;
use sphaerica::{Angle, Error, SmallCircle, SolveRequest, SpherePoint, Tolerances};

use crate::envelope::Status;
use crate::svg::{Drawing, Role, Shape, Space};

/// Sampled locus points checked against the requested area.
const LEXELL_CHECKS: usize = 16;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Units {
    #[default]
    Radians,
    Degrees,
}

impl Units {
    pub fn ingress(self, x: f64) -> f64 {
        match self {
            Units::Radians => x,
            Units::Degrees => x.to_radians(),
        }
    }

    pub fn egress(self, x: f64) -> f64 {
        match self {
            Units::Radians => x,
            Units::Degrees => x.to_degrees(),
        }
    }
}

pub struct Context {
    pub units: Units,
    pub tol: Tolerances,
}

#[derive(Debug)]
pub struct Failure {
    pub status: Status,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            status: e.kind().into(),
            message: e.to_string(),
        }
    }
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure {
        status: Status::InvalidInput,
        message: message.into(),
    }
}

#[derive(Default)]
pub struct Report {
    pub results: Vec<Value>,
    pub residuals: Vec<f64>,
    pub diagnostics: Vec<String>,
    pub drawing: Option<Drawing>,
}

fn parse<T: DeserializeOwned>(payload: Value) -> Result<T, Failure> {
    serde_json::from_value(payload).map_err(|e| invalid(format!("payload: {e}")))
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("result serializes")
}

/// Any non-zero vector, projected onto the unit sphere.
fn sphere_point(v: &[f64]) -> Result<SpherePoint, Failure> {
    let arr: [f64; 3] = v
        .try_into()
        .map_err(|_| invalid(format!("sphere point needs 3 coordinates, got {}", v.len())))?;
    if !arr.iter().all(|x| x.is_finite()) || vec3::norm(arr) == 0.0 {
        return Err(invalid(format!("{arr:?} is not a direction")));
    }
    SpherePoint::normalized(arr).map_err(Failure::from)
}

fn plane_point(v: &[f64]) -> Result<Point2, Failure> {
    let arr: Point2 = v
        .try_into()
        .map_err(|_| invalid(format!("plane point needs 2 coordinates, got {}", v.len())))?;
    if !arr.iter().all(|x| x.is_finite()) {
        return Err(invalid(format!("{arr:?} is not finite")));
    }
    Ok(arr)
}

/// Plane `[x, y]`, sphere `[x, y, z]` (normalized) or hyperboloid `[t, x, y]`
/// (any future-pointing timelike vector, normalized).
fn model_point(g: Geometry, v: &[f64]) -> Result<ModelPoint, Failure> {
    match g {
        Geometry::Euclidean => plane_point(v).map(ModelPoint::Plane),
        Geometry::Spherical => sphere_point(v).map(ModelPoint::Sphere),
        Geometry::Hyperbolic => {
            let [t, x, y]: [f64; 3] = v.try_into().map_err(|_| {
                invalid(format!("hyperboloid point needs 3 coordinates, got {}", v.len()))
            })?;
            let q = t * t - x * x - y * y;
            if !(t > 0.0 && q > 0.0 && q.is_finite()) {
                return Err(invalid(format!("[{t}, {x}, {y}] is not future timelike")));
            }
            let s = q.sqrt();
            Ok(ModelPoint::Hyperboloid(HyperboloidPoint::new(t / s, x / s, y / s)?))
        }
    }
}

fn model_coords(p: &ModelPoint) -> Vec<f64> {
    match p {
        ModelPoint::Plane(q) => q.to_vec(),
        ModelPoint::Sphere(q) => q.to_array().to_vec(),
        ModelPoint::Hyperboloid(q) => vec![q.t, q.x, q.y],
    }
}

// ---------------------------------------------------------------- solve

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SolvePayload {
    a: Option<f64>,
    b: Option<f64>,
    c: Option<f64>,
    #[serde(rename = "A")]
    angle_a: Option<f64>,
    #[serde(rename = "B")]
    angle_b: Option<f64>,
    #[serde(rename = "C")]
    angle_c: Option<f64>,
    /// Use the right-triangle relations with `C = 90°`.
    #[serde(default)]
    right: bool,
}

fn triangle_value(t: &TriangleData, u: Units) -> Value {
    let e = t.elements().map(|x| u.egress(x));
    json!({
        "a": e[0], "b": e[1], "c": e[2],
        "A": e[3], "B": e[4], "C": e[5],
        "area": t.excess(),
    })
}

pub fn solve(payload: Value, ctx: &Context) -> Result<Report, Failure> {
    let p: SolvePayload = parse(payload)?;
    let u = ctx.units;
    let slots = [p.a, p.b, p.c, p.angle_a, p.angle_b, p.angle_c].map(|x| x.map(|v| u.ingress(v)));
    let req = SolveRequest::from_slots(slots);
    let found = if p.right {
        triangle::solve_right(&req)?
    } else {
        triangle::solve(&req)?
    };
    Ok(Report {
        results: found.iter().map(|t| triangle_value(t, u)).collect(),
        residuals: found
            .iter()
            .map(|t| t.cosine_residual().max(t.sine_residual()))
            .collect(),
        ..Report::default()
    })
}

// ---------------------------------------------------------------- area

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum AreaPayload {
    /// Triangle from its three angles.
    Girard { angles: [f64; 3] },
    /// Triangle from its three sides.
    Lhuilier { sides: [f64; 3] },
    Lune { theta: f64 },
    /// Planar triangle from side lengths (not angles).
    Planar { sides: [f64; 3] },
}

pub fn area(payload: Value, ctx: &Context) -> Result<Report, Failure> {
    let u = ctx.units;
    let angles = |x: [f64; 3]| x.map(|v| Angle(u.ingress(v)));
    let (value, method, residuals) = match parse(payload)? {
        AreaPayload::Girard { angles: a } => {
            let [x, y, z] = angles(a);
            let e = area::girard_area(x, y, z)?;
            // the same triangle measured from its sides
            let t = &triangle::solve(&SolveRequest::from_slots([None, None, None, Some(x.0), Some(y.0), Some(z.0)]))?[0];
            let [sa, sb, sc] = t.sides();
            let other = area::heron_spherical_area(sa, sb, sc)?;
            (e, "girard", vec![(e - other).abs()])
        }
        AreaPayload::Lhuilier { sides } => {
            let [x, y, z] = angles(sides);
            let e = area::heron_spherical_area(x, y, z)?;
            let t = &triangle::solve(&SolveRequest::from_slots([Some(x.0), Some(y.0), Some(z.0), None, None, None]))?[0];
            (e, "lhuilier", vec![(e - t.excess()).abs()])
        }
        AreaPayload::Lune { theta } => (area::lune_area(Angle(u.ingress(theta)))?, "lune", vec![]),
        AreaPayload::Planar { sides: [x, y, z] } => (area::heron_planar_area(x, y, z)?, "planar", vec![]),
    };
    Ok(Report {
        results: vec![json!({ "area": value, "method": method })],
        residuals,
        ..Report::default()
    })
}

// ---------------------------------------------------------------- solid-angle

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct SolidAnglePayload {
    /// Faces of a regular cone, each with face angle `a`.
    pub n: Option<u32>,
    pub a: Option<f64>,
    /// Face angles of a trihedral cone.
    pub faces: Option<[f64; 3]>,
    /// The five regular polyhedra.
    #[serde(default)]
    pub polyhedra: bool,
}

pub fn solid_angle(payload: Value, ctx: &Context) -> Result<Report, Failure> {
    let p: SolidAnglePayload = parse(payload)?;
    let u = ctx.units;
    match (p.n, p.a, p.faces, p.polyhedra) {
        (Some(n), Some(a), None, false) => {
            let r = area::solid_angle_regular(n, Angle(u.ingress(a)))?;
            Ok(Report {
                results: vec![to_value(&r)],
                ..Report::default()
            })
        }
        (None, None, Some(f), false) => {
            let [x, y, z] = f.map(|v| Angle(u.ingress(v)));
            let r = area::solid_angle_trihedral(x, y, z)?;
            let t = &triangle::solve(&SolveRequest::from_slots([Some(x.0), Some(y.0), Some(z.0), None, None, None]))?[0];
            Ok(Report {
                results: vec![to_value(&r)],
                residuals: vec![(r.steradians - t.excess()).abs()],
                ..Report::default()
            })
        }
        (None, None, None, true) => Ok(Report {
            results: area::regular_polyhedra_table()
                .iter()
                .map(|row| {
                    json!({
                        "name": row.name,
                        "faces": row.faces,
                        "face_angle": u.egress(row.face_angle.0),
                        "steradians": row.solid_angle.steradians,
                        "method": row.solid_angle.method,
                    })
                })
                .collect(),
            ..Report::default()
        }),
        _ => Err(invalid(
            "give exactly one of {n, a}, {faces} or {polyhedra: true}",
        )),
    }
}

// ---------------------------------------------------------------- lexell

#[derive(Deserialize, Default, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
enum LexellGeometry {
    #[default]
    Spherical,
    Euclidean,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LexellPayload {
    #[serde(default)]
    geometry: LexellGeometry,
    a: Vec<f64>,
    b: Vec<f64>,
    area: f64,
    /// Locus points to report, evenly spaced along the arc.
    #[serde(default)]
    samples: usize,
}

fn arc_samples(count: usize) -> impl Iterator<Item = f64> {
    (0..count).map(move |i| (i as f64 + 0.5) / count as f64)
}

pub fn lexell(payload: Value, ctx: &Context) -> Result<Report, Failure> {
    let p: LexellPayload = parse(payload)?;
    let u = ctx.units;
    match p.geometry {
        LexellGeometry::Euclidean => {
            let (a, b) = (plane_point(&p.a)?, plane_point(&p.b)?);
            let lines = lexell::euclidean_equal_area_locus(a, b, p.area)?;
            let mut drawing = Drawing::new(Space::Plane);
            drawing.push(Role::Given, "base point", Shape::Point(a));
            drawing.push(Role::Given, "base point", Shape::Point(b));
            drawing.push(Role::Given, "base", Shape::Segment(a, b));
            let mut residuals = Vec::new();
            for l in &lines {
                let apex = l.at(0.5);
                residuals.push((0.5 * plane::orient(a, b, apex).abs() - p.area).abs());
                drawing.push(
                    Role::Solution,
                    "locus",
                    Shape::Line {
                        point: l.point,
                        direction: l.direction,
                    },
                );
            }
            Ok(Report {
                results: lines
                    .iter()
                    .map(|l| json!({ "point": l.point, "direction": l.direction }))
                    .collect(),
                residuals,
                drawing: Some(drawing),
                ..Report::default()
            })
        }
        LexellGeometry::Spherical => {
            let (a, b) = (sphere_point(&p.a)?, sphere_point(&p.b)?);
            let locus = lexell::lexell_circle(&a, &b, p.area, &ctx.tol)?;
            let mut area_error: f64 = 0.0;
            for s in arc_samples(LEXELL_CHECKS) {
                let apex = locus.sample(s);
                let got = lexell::spherical_triangle_area_from_vertices(&a, &b, &apex)?;
                area_error = area_error.max((got - p.area).abs());
            }
            let antipode = lexell::lexell_antipode_residual(&locus);
            let samples: Vec<[f64; 3]> = arc_samples(p.samples).map(|s| locus.sample(s).to_array()).collect();
            let mut drawing = Drawing::new(Space::Sphere);
            drawing.push(Role::Given, "base", Shape::Arc(a.to_array(), b.to_array()));
            drawing.push(Role::Given, "base point", Shape::SpherePoint(a.to_array()));
            drawing.push(Role::Given, "base point", Shape::SpherePoint(b.to_array()));
            drawing.push(Role::Solution, "locus small-circle", Shape::SmallCircle(locus.circle));
            Ok(Report {
                results: vec![json!({
                    "pole": locus.circle.pole,
                    "radius": u.egress(locus.circle.radius.0),
                    "base_pole": locus.base_pole,
                    "pole_separation": u.egress(lexell::pole_separation(&locus)),
                    "antipode_residual": antipode,
                    "samples": samples,
                })],
                residuals: vec![area_error, antipode],
                drawing: Some(drawing),
                ..Report::default()
            })
        }
    }
}

// ---------------------------------------------------------------- cevian

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CevianPayload {
    geometry: Geometry,
    vertices: Option<[Vec<f64>; 3]>,
    center: Option<Vec<f64>>,
    /// `AO, Oa, BO, Ob, CO, Oc`; angles when the geometry is spherical.
    lengths: Option<[f64; 6]>,
}

fn cevian_value(cfg: &CevianConfig, gap: f64, u: Units) -> Value {
    let spherical = cfg.geometry == Geometry::Spherical;
    let lengths = cfg.lengths.map(|l| if spherical { u.egress(l) } else { l });
    json!({
        "geometry": cfg.geometry,
        "vertices": cfg.vertices.iter().map(model_coords).collect::<Vec<_>>(),
        "feet": cfg.feet.iter().map(model_coords).collect::<Vec<_>>(),
        "center": model_coords(&cfg.center),
        "lengths": lengths,
        "gap": gap,
        "incidence_residual": cfg.incidence_residual(),
    })
}

fn cevian_drawing(cfg: &CevianConfig, given_vertices: bool) -> Drawing {
    let vertex_role = if given_vertices { Role::Given } else { Role::Solution };
    let sphere = cfg.geometry == Geometry::Spherical;
    let mut d = Drawing::new(match cfg.geometry {
        Geometry::Euclidean => Space::Plane,
        Geometry::Spherical => Space::Sphere,
        Geometry::Hyperbolic => Space::Klein,
    });
    let flat = |p: &ModelPoint| p.chart().expect("chart point");
    let vec = |p: &ModelPoint| p.homogeneous();
    if sphere {
        d.push(vertex_role, "triangle", Shape::SphericalPolygon(cfg.vertices.iter().map(vec).collect()));
        for i in 0..3 {
            d.push(Role::Solution, "cevian", Shape::Arc(vec(&cfg.vertices[i]), vec(&cfg.feet[i])));
        }
        for v in &cfg.vertices {
            d.push(vertex_role, "vertex point", Shape::SpherePoint(vec(v)));
        }
        for f in &cfg.feet {
            d.push(Role::Solution, "foot point", Shape::SpherePoint(vec(f)));
        }
        d.push(vertex_role, "center point", Shape::SpherePoint(vec(&cfg.center)));
    } else {
        d.push(vertex_role, "triangle", Shape::Polygon(cfg.vertices.iter().map(flat).collect()));
        for i in 0..3 {
            d.push(Role::Solution, "cevian", Shape::Segment(flat(&cfg.vertices[i]), flat(&cfg.feet[i])));
        }
        for v in &cfg.vertices {
            d.push(vertex_role, "vertex point", Shape::Point(flat(v)));
        }
        for f in &cfg.feet {
            d.push(Role::Solution, "foot point", Shape::Point(flat(f)));
        }
        d.push(vertex_role, "center point", Shape::Point(flat(&cfg.center)));
    }
    d
}

pub fn cevian(payload: Value, ctx: &Context) -> Result<Report, Failure> {
    let p: CevianPayload = parse(payload)?;
    let u = ctx.units;
    let g = p.geometry;
    let (cfg, forward) = match (p.vertices, p.center, p.lengths) {
        (Some(vs), Some(c), None) => {
            let vertices = [
                model_point(g, &vs[0])?,
                model_point(g, &vs[1])?,
                model_point(g, &vs[2])?,
            ];
            (CevianConfig::from_points(vertices, model_point(g, &c)?)?, true)
        }
        (None, None, Some(l)) => {
            let lengths = if g == Geometry::Spherical { l.map(|x| u.ingress(x)) } else { l };
            (constructions::construct_triangle_from_cevians(&lengths, g, &ctx.tol)?, false)
        }
        _ => return Err(invalid("give either {vertices, center} or {lengths}")),
    };
    let gap = constructions::cevian_identity_gap(&cfg, &ctx.tol)?;
    Ok(Report {
        results: vec![cevian_value(&cfg, gap, u)],
        residuals: vec![cfg.incidence_residual(), gap.abs()],
        drawing: Some(cevian_drawing(&cfg, forward)),
        ..Report::default()
    })
}

// ---------------------------------------------------------------- pappus

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SmallCircleIn {
    pole: Vec<f64>,
    radius: f64,
}

#[derive(Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
enum CarrierIn {
    Circle(Circle2D),
    SmallCircle(SmallCircleIn),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PappusPayload {
    carrier: CarrierIn,
    points: [Vec<f64>; 3],
}

pub fn pappus(payload: Value, ctx: &Context) -> Result<Report, Failure> {
    let p: PappusPayload = parse(payload)?;
    let u = ctx.units;
    let (carrier, g) = match p.carrier {
        CarrierIn::Circle(c) => (
            constructions::Carrier::Circle(Circle2D::new(c.cx, c.cy, c.r)?),
            Geometry::Euclidean,
        ),
        CarrierIn::SmallCircle(c) => (
            constructions::Carrier::SmallCircle(SmallCircle::new(
                sphere_point(&c.pole)?,
                Angle(u.ingress(c.radius)),
            )?),
            Geometry::Spherical,
        ),
    };
    let points = [
        model_point(g, &p.points[0])?,
        model_point(g, &p.points[1])?,
        model_point(g, &p.points[2])?,
    ];
    let prob = InscribedTriangleProblem::new(carrier, points)?;
    let found = constructions::pappus_inscribed_triangle(&prob, &ctx.tol)?;

    let mut d;
    match carrier {
        constructions::Carrier::Circle(c) => {
            d = Drawing::new(Space::Plane);
            d.push(Role::Given, "carrier", Shape::Circle { center: c.center(), r: c.r });
            for t in &found {
                d.push(Role::Solution, "triangle", Shape::Polygon(t.vertices.iter().map(|v| v.chart().expect("plane")).collect()));
            }
            for q in &points {
                d.push(Role::Given, "point", Shape::Point(q.chart().expect("plane")));
            }
        }
        constructions::Carrier::SmallCircle(c) => {
            d = Drawing::new(Space::Sphere);
            d.push(Role::Given, "carrier small-circle", Shape::SmallCircle(c));
            for t in &found {
                d.push(Role::Solution, "triangle", Shape::SphericalPolygon(t.vertices.iter().map(|v| v.homogeneous()).collect()));
            }
            for q in &points {
                d.push(Role::Given, "point", Shape::SpherePoint(q.homogeneous()));
            }
        }
    }
    Ok(Report {
        results: found
            .iter()
            .map(|t| {
                json!({
                    "vertices": t.vertices.iter().map(model_coords).collect::<Vec<_>>(),
                    "parameter": u.egress(t.parameter),
                    "incidence_residual": t.incidence_residual,
                    "carrier_residual": t.carrier_residual,
                })
            })
            .collect(),
        residuals: found
            .iter()
            .map(|t| t.incidence_residual.max(t.carrier_residual))
            .collect(),
        drawing: Some(d),
        ..Report::default()
    })
}

// ---------------------------------------------------------------- apollonius

fn signs(s: Option<Vec<i8>>, n: usize) -> Result<Option<TangencySigns>, Failure> {
    match s {
        None => Ok(None),
        Some(v) if v.len() == n => Ok(Some(TangencySigns::new(v)?)),
        Some(v) => Err(invalid(format!("expected {n} tangency signs, got {}", v.len()))),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Apollonius2Payload {
    circles: [Circle2D; 3],
    signs: Option<Vec<i8>>,
}

pub fn apollonius2(payload: Value, _ctx: &Context) -> Result<Report, Failure> {
    let p: Apollonius2Payload = parse(payload)?;
    let s = signs(p.signs, 3)?;
    let [c1, c2, c3] = p.circles;
    let found = apollonius::apollonius_circles(c1, c2, c3, s.as_ref())?;
    let mut d = Drawing::new(Space::Plane);
    for c in &p.circles {
        if c.r > 0.0 {
            d.push(Role::Given, "circle", Shape::Circle { center: c.center(), r: c.r });
        } else {
            d.push(Role::Given, "point", Shape::Point(c.center()));
        }
    }
    for t in &found {
        d.push(Role::Solution, "circle", Shape::Circle { center: t.ball.center(), r: t.ball.r });
    }
    Ok(Report {
        results: found
            .iter()
            .map(|t| json!({ "cx": t.ball.cx, "cy": t.ball.cy, "r": t.ball.r, "signs": t.signs, "residual": t.residual }))
            .collect(),
        residuals: found.iter().map(|t| t.residual).collect(),
        drawing: Some(d),
        ..Report::default()
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Apollonius3Payload {
    spheres: [Sphere3D; 4],
    signs: Option<Vec<i8>>,
}

pub fn apollonius3(payload: Value, _ctx: &Context) -> Result<Report, Failure> {
    let p: Apollonius3Payload = parse(payload)?;
    let s = signs(p.signs, 4)?;
    let [s1, s2, s3, s4] = p.spheres;
    let found = apollonius::tangent_spheres(s1, s2, s3, s4, s.as_ref())?;
    Ok(Report {
        results: found
            .iter()
            .map(|t| {
                json!({
                    "cx": t.ball.cx, "cy": t.ball.cy, "cz": t.ball.cz, "r": t.ball.r,
                    "signs": t.signs, "residual": t.residual,
                })
            })
            .collect(),
        residuals: found.iter().map(|t| t.residual).collect(),
        ..Report::default()
    })
}

// ---------------------------------------------------------------- geodist

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GeodistPayload {
    from: GeoCoordinate,
    to: GeoCoordinate,
    radius_km: Option<f64>,
}

pub fn geodist(payload: Value, ctx: &Context) -> Result<Report, Failure> {
    let p: GeodistPayload = parse(payload)?;
    let u = ctx.units;
    let coord = |c: GeoCoordinate| {
        let mut lon = u.ingress(c.longitude);
        // 180° converts to a hair above π
        if lon > PI && lon - PI < 1e-12 {
            lon = PI;
        }
        GeoCoordinate::new(u.ingress(c.latitude), lon)
    };
    let (from, to) = (coord(p.from)?, coord(p.to)?);
    let (angle, km) = geo::geodesic_distance(&from, &to, p.radius_km.unwrap_or(EARTH_RADIUS_KM))?;
    let mut diagnostics = Vec::new();
    let bearing = match geo::initial_bearing(&from, &to) {
        Ok(b) => Some(u.egress(b.0)),
        Err(e) => {
            diagnostics.push(format!("initial bearing omitted: {e}"));
            None
        }
    };
    Ok(Report {
        results: vec![json!({
            "central_angle": u.egress(angle.0),
            "distance_km": km,
            "initial_bearing": bearing,
        })],
        diagnostics,
        ..Report::default()
    })
}
