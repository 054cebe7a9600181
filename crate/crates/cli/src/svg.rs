//! Diagrams of construction results.
//!
//! Planar and Klein-chart scenes are drawn as they are; spherical scenes
//! are projected orthographically onto the plane facing the viewpoint.
//! Output depends only on the scene, so equal inputs give equal bytes.

use std::fmt::Write as _;

use sphaerica::plane::Point2;
use sphaerica::vec3::{self, Vec3};
use sphaerica::SmallCircle;

const SIZE: f64 = 512.0;
const MARGIN: f64 = 24.0;
const CURVE_SAMPLES: usize = 360;
const ARC_SAMPLES: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Role {
    Given,
    Solution,
}

impl Role {
    fn class(self) -> &'static str {
        match self {
            Role::Given => "given",
            Role::Solution => "solution",
        }
    }
}

#[derive(Clone, Debug)]
pub enum Shape {
    Circle { center: Point2, r: f64 },
    /// The infinite line through `point` along `direction`, clipped to the view.
    Line { point: Point2, direction: Point2 },
    Polygon(Vec<Point2>),
    Segment(Point2, Point2),
    Point(Point2),
    SmallCircle(SmallCircle),
    /// Shorter great-circle arc between two unit vectors.
    Arc(Vec3, Vec3),
    /// Closed chain of great-circle arcs.
    SphericalPolygon(Vec<Vec3>),
    SpherePoint(Vec3),
}

#[derive(Clone, Debug)]
pub struct Item {
    pub role: Role,
    /// Extra class naming what the element is (`carrier`, `triangle`, …).
    pub kind: &'static str,
    pub shape: Shape,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Space {
    Plane,
    /// Klein chart of the hyperbolic plane, bounded by the unit circle.
    Klein,
    Sphere,
}

#[derive(Clone, Debug)]
pub struct Drawing {
    pub space: Space,
    pub items: Vec<Item>,
}

impl Drawing {
    pub fn new(space: Space) -> Self {
        Drawing { space, items: Vec::new() }
    }

    pub fn push(&mut self, role: Role, kind: &'static str, shape: Shape) {
        self.items.push(Item { role, kind, shape });
    }
}

/// Maps model coordinates to the canvas.
struct View {
    min: Point2,
    scale: f64,
    /// Orthographic basis `(right, up, toward viewer)`.
    basis: [Vec3; 3],
}

impl View {
    fn px(&self, p: Point2) -> (f64, f64) {
        (
            MARGIN + (p[0] - self.min[0]) * self.scale,
            SIZE - MARGIN - (p[1] - self.min[1]) * self.scale,
        )
    }

    fn project(&self, v: Vec3) -> Point2 {
        [vec3::dot(v, self.basis[0]), vec3::dot(v, self.basis[1])]
    }

    fn facing(&self, v: Vec3) -> bool {
        vec3::dot(v, self.basis[2]) >= 0.0
    }

    fn bounds(&self) -> (Point2, Point2) {
        let span = (SIZE - 2.0 * MARGIN) / self.scale;
        (self.min, [self.min[0] + span, self.min[1] + span])
    }
}

fn num(x: f64) -> String {
    let s = format!("{x:.3}");
    if s == "-0.000" {
        "0.000".into()
    } else {
        s
    }
}

fn basis(view: Vec3) -> [Vec3; 3] {
    let w = vec3::normalize(view).unwrap_or([0.0, 0.0, 1.0]);
    let up_hint = if w[0].abs() < 0.9 && w[1].abs() < 0.9 && w[2].abs() > 0.9 {
        [0.0, 1.0, 0.0]
    } else {
        [0.0, 0.0, 1.0]
    };
    let right = vec3::normalize(vec3::cross(up_hint, w)).expect("hint not parallel to view");
    let up = vec3::cross(w, right);
    [right, up, w]
}

fn plane_extent(items: &[Item]) -> (Point2, Point2) {
    let mut lo = [f64::INFINITY; 2];
    let mut hi = [f64::NEG_INFINITY; 2];
    let mut add = |p: Point2, pad: f64| {
        for k in 0..2 {
            lo[k] = lo[k].min(p[k] - pad);
            hi[k] = hi[k].max(p[k] + pad);
        }
    };
    for it in items {
        match &it.shape {
            Shape::Circle { center, r } => add(*center, *r),
            Shape::Line { point, .. } | Shape::Point(point) => add(*point, 0.0),
            Shape::Polygon(ps) => ps.iter().for_each(|p| add(*p, 0.0)),
            Shape::Segment(p, q) => {
                add(*p, 0.0);
                add(*q, 0.0);
            }
            _ => {}
        }
    }
    if !lo[0].is_finite() {
        return ([-1.0, -1.0], [1.0, 1.0]);
    }
    let side = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1e-9);
    let pad = 0.08 * side;
    let c = [0.5 * (lo[0] + hi[0]), 0.5 * (lo[1] + hi[1])];
    let half = 0.5 * side + pad;
    ([c[0] - half, c[1] - half], [c[0] + half, c[1] + half])
}

/// Portion of a line inside the box, if any.
fn clip(point: Point2, dir: Point2, lo: Point2, hi: Point2) -> Option<(Point2, Point2)> {
    let (mut t0, mut t1) = (f64::NEG_INFINITY, f64::INFINITY);
    for k in 0..2 {
        if dir[k] == 0.0 {
            if point[k] < lo[k] || point[k] > hi[k] {
                return None;
            }
        } else {
            let a = (lo[k] - point[k]) / dir[k];
            let b = (hi[k] - point[k]) / dir[k];
            t0 = t0.max(a.min(b));
            t1 = t1.min(a.max(b));
        }
    }
    (t0 < t1).then(|| {
        let at = |t: f64| [point[0] + t * dir[0], point[1] + t * dir[1]];
        (at(t0), at(t1))
    })
}

fn slerp(p: Vec3, q: Vec3, s: f64) -> Vec3 {
    let angle = vec3::norm(vec3::cross(p, q)).atan2(vec3::dot(p, q));
    if angle < 1e-12 {
        return p;
    }
    let (a, b) = (((1.0 - s) * angle).sin(), (s * angle).sin());
    vec3::scale(vec3::add(vec3::scale(p, a), vec3::scale(q, b)), 1.0 / angle.sin())
}

fn path_data(view: &View, pts: &[Point2], closed: bool) -> String {
    let mut d = String::new();
    for (i, p) in pts.iter().enumerate() {
        let (x, y) = view.px(*p);
        let _ = write!(d, "{}{} {}", if i == 0 { "M" } else { " L" }, num(x), num(y));
    }
    if closed {
        d.push_str(" Z");
    }
    d
}

/// Renders the scene; `viewpoint` only matters for spherical scenes.
pub fn render(drawing: &Drawing, viewpoint: Vec3) -> String {
    let (lo, hi) = match drawing.space {
        Space::Plane => plane_extent(&drawing.items),
        Space::Klein | Space::Sphere => ([-1.05, -1.05], [1.05, 1.05]),
    };
    let view = View {
        min: lo,
        scale: (SIZE - 2.0 * MARGIN) / (hi[0] - lo[0]),
        basis: basis(viewpoint),
    };
    let marker = 4.0;

    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{s}\" height=\"{s}\" viewBox=\"0 0 {s} {s}\">",
        s = SIZE
    );
    out.push_str(
        "<style>\
.frame{fill:none;stroke:#999;stroke-width:1}\
.given{fill:none;stroke:#1f4e9c;stroke-width:1.5}\
.solution{fill:none;stroke:#c0392b;stroke-width:1.5}\
circle.point{stroke:none}\
circle.given.point{fill:#1f4e9c}\
circle.solution.point{fill:#c0392b}\
.back{opacity:0.35}\
</style>\n",
    );
    let _ = writeln!(out, "<rect width=\"{s}\" height=\"{s}\" fill=\"white\"/>", s = SIZE);
    if drawing.space != Space::Plane {
        let (cx, cy) = view.px([0.0, 0.0]);
        let _ = writeln!(
            out,
            "<circle class=\"frame\" cx=\"{}\" cy=\"{}\" r=\"{}\"/>",
            num(cx),
            num(cy),
            num(view.scale)
        );
    }

    for it in &drawing.items {
        let class = format!("{} {}", it.role.class(), it.kind);
        match &it.shape {
            Shape::Circle { center, r } => {
                let (cx, cy) = view.px(*center);
                let _ = writeln!(
                    out,
                    "<circle class=\"{class}\" cx=\"{}\" cy=\"{}\" r=\"{}\"/>",
                    num(cx),
                    num(cy),
                    num(r * view.scale)
                );
            }
            Shape::Line { point, direction } => {
                let (blo, bhi) = view.bounds();
                if let Some((p, q)) = clip(*point, *direction, blo, bhi) {
                    let ((x1, y1), (x2, y2)) = (view.px(p), view.px(q));
                    let _ = writeln!(
                        out,
                        "<line class=\"{class}\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
                        num(x1),
                        num(y1),
                        num(x2),
                        num(y2)
                    );
                }
            }
            Shape::Segment(p, q) => {
                let ((x1, y1), (x2, y2)) = (view.px(*p), view.px(*q));
                let _ = writeln!(
                    out,
                    "<line class=\"{class}\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
                    num(x1),
                    num(y1),
                    num(x2),
                    num(y2)
                );
            }
            Shape::Polygon(ps) => {
                let pts: Vec<String> = ps
                    .iter()
                    .map(|p| {
                        let (x, y) = view.px(*p);
                        format!("{},{}", num(x), num(y))
                    })
                    .collect();
                let _ = writeln!(out, "<polygon class=\"{class}\" points=\"{}\"/>", pts.join(" "));
            }
            Shape::Point(p) => {
                let (x, y) = view.px(*p);
                let _ = writeln!(
                    out,
                    "<circle class=\"{class}\" cx=\"{}\" cy=\"{}\" r=\"{}\"/>",
                    num(x),
                    num(y),
                    num(marker)
                );
            }
            Shape::SmallCircle(c) => {
                let pts: Vec<Point2> = (0..CURVE_SAMPLES)
                    .map(|i| {
                        let t = std::f64::consts::TAU * i as f64 / CURVE_SAMPLES as f64;
                        view.project(c.point_at(t).to_array())
                    })
                    .collect();
                let _ = writeln!(out, "<path class=\"{class}\" d=\"{}\"/>", path_data(&view, &pts, true));
            }
            Shape::Arc(p, q) => {
                let pts: Vec<Point2> = (0..=ARC_SAMPLES)
                    .map(|i| view.project(slerp(*p, *q, i as f64 / ARC_SAMPLES as f64)))
                    .collect();
                let _ = writeln!(out, "<path class=\"{class}\" d=\"{}\"/>", path_data(&view, &pts, false));
            }
            Shape::SphericalPolygon(vs) => {
                let mut pts = Vec::new();
                for i in 0..vs.len() {
                    let (p, q) = (vs[i], vs[(i + 1) % vs.len()]);
                    pts.extend((0..ARC_SAMPLES).map(|k| view.project(slerp(p, q, k as f64 / ARC_SAMPLES as f64))));
                }
                let _ = writeln!(out, "<path class=\"{class}\" d=\"{}\"/>", path_data(&view, &pts, true));
            }
            Shape::SpherePoint(v) => {
                let (x, y) = view.px(view.project(*v));
                let back = if view.facing(*v) { "" } else { " back" };
                let _ = writeln!(
                    out,
                    "<circle class=\"{class}{back}\" cx=\"{}\" cy=\"{}\" r=\"{}\"/>",
                    num(x),
                    num(y),
                    num(marker)
                );
            }
        }
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_view_looks_down_z() {
        let b = basis([0.0, 0.0, 1.0]);
        assert_eq!(b[0], [1.0, 0.0, 0.0]);
        assert_eq!(b[1], [0.0, 1.0, 0.0]);
        let b = basis([1.0, 0.0, 0.0]);
        assert!(vec3::dot(b[0], b[1]).abs() < 1e-15);
        assert!((vec3::dot(vec3::cross(b[0], b[1]), b[2]) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn lines_are_clipped_to_the_box() {
        let (p, q) = clip([0.0, 0.5], [1.0, 0.0], [-1.0, -1.0], [1.0, 1.0]).unwrap();
        assert_eq!((p, q), ([-1.0, 0.5], [1.0, 0.5]));
        assert!(clip([0.0, 2.0], [1.0, 0.0], [-1.0, -1.0], [1.0, 1.0]).is_none());
    }

    #[test]
    fn negative_zero_prints_plainly() {
        assert_eq!(num(-0.0001), "0.000");
        assert_eq!(num(2.0), "2.000");
    }
}
