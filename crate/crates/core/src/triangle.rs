//! Spherical triangles: the cosine and sine rules, the polar triangle,
//! right-triangle (Napier) relations and a solver for every sufficient set
//! of three elements.
//!
//! Sides and angles are indexed `0, 1, 2` for `a, b, c` and `A, B, C`; the
//! angle at index `i` is opposite the side at index `i`.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sphere::{Angle, SpherePoint, Tolerances};
use crate::vec3;

/// Residual bound for the cosine- and sine-rule consistency checks.
pub const CONSISTENCY_EPS: f64 = 1e-9;

/// Two solutions closer than this (per element) are the same triangle.
const SAME_SOLUTION_EPS: f64 = 1e-9;

/// The six elements of a spherical triangle on the unit sphere.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TriangleData {
    sides: [Angle; 3],
    angles: [Angle; 3],
}

impl TriangleData {
    /// Validates all triangle invariants before accepting the elements.
    pub fn new(sides: [Angle; 3], angles: [Angle; 3]) -> Result<Self> {
        let t = TriangleData { sides, angles };
        t.check()?;
        Ok(t)
    }

    /// Triangle spanned by three points of the sphere.
    pub fn from_vertices(p: &SpherePoint, q: &SpherePoint, r: &SpherePoint) -> Result<Self> {
        let v = [p.to_array(), q.to_array(), r.to_array()];
        let arc = |i: usize, j: usize| {
            vec3::norm(vec3::cross(v[i], v[j])).atan2(vec3::dot(v[i], v[j]))
        };
        let sides = [Angle(arc(1, 2)), Angle(arc(2, 0)), Angle(arc(0, 1))];
        let angle_at = |i: usize| {
            let (j, k) = ((i + 1) % 3, (i + 2) % 3);
            let tj = vec3::cross(vec3::cross(v[i], v[j]), v[i]);
            let tk = vec3::cross(vec3::cross(v[i], v[k]), v[i]);
            vec3::norm(vec3::cross(tj, tk)).atan2(vec3::dot(tj, tk))
        };
        let angles = [Angle(angle_at(0)), Angle(angle_at(1)), Angle(angle_at(2))];
        TriangleData::new(sides, angles)
    }

    pub fn sides(&self) -> [Angle; 3] {
        self.sides
    }

    pub fn angles(&self) -> [Angle; 3] {
        self.angles
    }

    /// Elements in the order `a, b, c, A, B, C`.
    pub fn elements(&self) -> [f64; 6] {
        [
            self.sides[0].0,
            self.sides[1].0,
            self.sides[2].0,
            self.angles[0].0,
            self.angles[1].0,
            self.angles[2].0,
        ]
    }

    /// Spherical excess `A + B + C − π`, the area on the unit sphere.
    pub fn excess(&self) -> f64 {
        self.angles.iter().map(|a| a.0).sum::<f64>() - PI
    }

    /// Largest law-of-cosines residual over the three cyclic forms.
    pub fn cosine_residual(&self) -> f64 {
        let s = self.sides.map(|x| x.0);
        let g = self.angles.map(|x| x.0);
        (0..3)
            .map(|i| {
                let (j, k) = ((i + 1) % 3, (i + 2) % 3);
                (s[i].cos() - s[j].cos() * s[k].cos() - s[j].sin() * s[k].sin() * g[i].cos())
                    .abs()
            })
            .fold(0.0, f64::max)
    }

    /// Largest sine-rule residual `|sin A sin b − sin B sin a|` (cyclic).
    pub fn sine_residual(&self) -> f64 {
        let s = self.sides.map(|x| x.0);
        let g = self.angles.map(|x| x.0);
        (0..3)
            .map(|i| {
                let j = (i + 1) % 3;
                (g[i].sin() * s[j].sin() - g[j].sin() * s[i].sin()).abs()
            })
            .fold(0.0, f64::max)
    }

    /// Maximum per-element distance to another triangle.
    pub fn max_difference(&self, other: &TriangleData) -> f64 {
        self.elements()
            .iter()
            .zip(other.elements())
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max)
    }

    fn check(&self) -> Result<()> {
        let s = self.sides.map(|x| x.0);
        let g = self.angles.map(|x| x.0);
        if let Some(bad) = self
            .sides
            .iter()
            .chain(self.angles.iter())
            .find(|x| !x.is_triangle_element())
        {
            return Err(Error::InvalidTriangle(format!(
                "element {} outside (0, π)",
                bad.0
            )));
        }
        check_sides(s)?;
        let angle_sum: f64 = g.iter().sum();
        if !(angle_sum > PI && angle_sum < 3.0 * PI) {
            return Err(Error::InvalidTriangle(format!(
                "angle sum {angle_sum} outside (π, 3π)"
            )));
        }
        let cr = self.cosine_residual();
        if cr > CONSISTENCY_EPS {
            return Err(Error::InvalidTriangle(format!(
                "law-of-cosines residual {cr:e}"
            )));
        }
        let sr = self.sine_residual();
        if sr > CONSISTENCY_EPS {
            return Err(Error::InvalidTriangle(format!("sine-rule residual {sr:e}")));
        }
        Ok(())
    }
}

impl fmt::Display for TriangleData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = self.elements();
        write!(
            f,
            "a={:.9} b={:.9} c={:.9} A={:.9} B={:.9} C={:.9}",
            e[0], e[1], e[2], e[3], e[4], e[5]
        )
    }
}

fn check_sides(s: [f64; 3]) -> Result<()> {
    if s.iter().any(|x| !(x.is_finite() && *x > 0.0 && *x < PI)) {
        return Err(Error::InvalidTriangle(format!("side outside (0, π): {s:?}")));
    }
    let sum: f64 = s.iter().sum();
    if sum >= 2.0 * PI {
        return Err(Error::InvalidTriangle(format!(
            "perimeter {sum} is not below 2π"
        )));
    }
    for i in 0..3 {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        if s[i] >= s[j] + s[k] {
            return Err(Error::InvalidTriangle(format!(
                "side {} violates the triangle inequality",
                s[i]
            )));
        }
    }
    Ok(())
}

/// Cosine rule for the side opposite `included`, evaluated in half-angle form
/// so that it stays accurate for sides near 0 and near π.
pub(crate) fn cosine_rule_side(a: f64, b: f64, included: f64) -> f64 {
    let sab = a.sin() * b.sin();
    let half_c = (0.5 * included).sin_cos();
    // sin²(c/2) and cos²(c/2); both are sums of non-negative terms
    let hav = (0.5 * (a - b)).sin().powi(2) + sab * half_c.0 * half_c.0;
    let ahav = (0.5 * (a + b)).cos().powi(2) + sab * half_c.1 * half_c.1;
    2.0 * hav.max(0.0).sqrt().atan2(ahav.max(0.0).sqrt())
}

/// Angle opposite side `a` from the three sides (half-angle form of
/// `cos A = (cos a − cos b cos c) / (sin b sin c)`).
pub(crate) fn cosine_rule_angle(a: f64, b: f64, c: f64) -> f64 {
    let s = 0.5 * (a + b + c);
    let num = (s - b).sin() * (s - c).sin();
    let den = s.sin() * (s - a).sin();
    2.0 * num.max(0.0).sqrt().atan2(den.max(0.0).sqrt())
}

fn require_elements(values: &[f64]) -> Result<()> {
    match values.iter().find(|v| !(v.is_finite() && **v > 0.0 && **v < PI)) {
        Some(v) => Err(Error::InvalidInput(format!("element {v} outside (0, π)"))),
        None => Ok(()),
    }
}

/// Side `c` opposite the angle `C` included between sides `a` and `b`:
/// `cos c = cos a cos b + sin a sin b cos C`.
pub fn side_from_sas(a: Angle, b: Angle, included: Angle) -> Result<Angle> {
    require_elements(&[a.0, b.0, included.0])?;
    let c = cosine_rule_side(a.0, b.0, included.0);
    let eps = Tolerances::default().abs_eps;
    if c <= eps || c >= PI - eps {
        return Err(Error::DegenerateInput(format!("third side {c} is degenerate")));
    }
    Ok(Angle(c))
}

/// Angle `A` opposite side `a`:
/// `cos A = (cos a − cos b cos c) / (sin b sin c)`.
pub fn angle_from_sss(a: Angle, b: Angle, c: Angle) -> Result<Angle> {
    check_sides([a.0, b.0, c.0])?;
    Ok(Angle(cosine_rule_angle(a.0, b.0, c.0)))
}

/// `cos BC` from two sides `AB`, `AC` and the included angle `A`, written
/// through sums and differences of the sides:
/// `[cos(AB−AC) + cos(AB+AC)]/2 + cos A·[cos(AB−AC) − cos(AB+AC)]/2`.
pub fn sas_expanded(ab: Angle, ac: Angle, a: Angle) -> f64 {
    let diff = (ab.0 - ac.0).cos();
    let sum = (ab.0 + ac.0).cos();
    0.5 * (diff + sum) + a.0.cos() * 0.5 * (diff - sum)
}

/// The polar triangle: sides `π − A, π − B, π − C`, angles `π − a, π − b, π − c`.
pub fn polar_triangle(t: &TriangleData) -> TriangleData {
    TriangleData {
        sides: t.angles.map(Angle::supplement),
        angles: t.sides.map(Angle::supplement),
    }
}

/// Which three elements a [`SolveRequest`] supplies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Pattern {
    Sss,
    Sas,
    Asa,
    Aas,
    Ssa,
    Aaa,
}

/// A partial triangle: exactly three of the six elements known.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SolveRequest {
    pub sides: [Option<Angle>; 3],
    pub angles: [Option<Angle>; 3],
}

impl SolveRequest {
    /// Builds a request from `a, b, c, A, B, C` slots.
    pub fn from_slots(slots: [Option<f64>; 6]) -> Self {
        SolveRequest {
            sides: [slots[0], slots[1], slots[2]].map(|x| x.map(Angle)),
            angles: [slots[3], slots[4], slots[5]].map(|x| x.map(Angle)),
        }
    }

    /// Keeps only the elements of `t` selected by `mask` (`a, b, c, A, B, C`).
    pub fn masked(t: &TriangleData, mask: [bool; 6]) -> Self {
        let e = t.elements();
        let mut slots = [None; 6];
        for i in 0..6 {
            if mask[i] {
                slots[i] = Some(e[i]);
            }
        }
        SolveRequest::from_slots(slots)
    }

    fn known_count(&self) -> usize {
        self.sides
            .iter()
            .chain(self.angles.iter())
            .filter(|x| x.is_some())
            .count()
    }

    fn validate_values(&self) -> Result<()> {
        let vals: Vec<f64> = self
            .sides
            .iter()
            .chain(self.angles.iter())
            .flatten()
            .map(|x| x.0)
            .collect();
        require_elements(&vals)
    }

    pub fn pattern(&self) -> Result<Pattern> {
        if self.known_count() != 3 {
            return Err(Error::InvalidInput(format!(
                "exactly three elements must be given, found {}",
                self.known_count()
            )));
        }
        self.validate_values()?;
        let ns = self.sides.iter().filter(|x| x.is_some()).count();
        let pattern = match ns {
            3 => Pattern::Sss,
            0 => Pattern::Aaa,
            2 => {
                // the one known angle is either between the sides or opposite one
                let i = self.angles.iter().position(|x| x.is_some()).unwrap();
                if self.sides[i].is_none() {
                    Pattern::Sas
                } else {
                    Pattern::Ssa
                }
            }
            _ => {
                let i = self.sides.iter().position(|x| x.is_some()).unwrap();
                if self.angles[i].is_none() {
                    Pattern::Asa
                } else {
                    Pattern::Aas
                }
            }
        };
        Ok(pattern)
    }

    fn polar(&self) -> SolveRequest {
        SolveRequest {
            sides: self.angles.map(|x| x.map(Angle::supplement)),
            angles: self.sides.map(|x| x.map(Angle::supplement)),
        }
    }

    fn reproduced_by(&self, t: &TriangleData) -> bool {
        let given = self.sides.iter().zip(t.sides.iter());
        let given = given.chain(self.angles.iter().zip(t.angles.iter()));
        given
            .filter_map(|(g, v)| g.map(|g| (g.0 - v.0).abs()))
            .all(|d| d <= SAME_SOLUTION_EPS)
    }
}

/// Accepts a candidate when it is a valid triangle reproducing the givens;
/// the given elements are written back exactly.
fn accept(req: &SolveRequest, sides: [f64; 3], angles: [f64; 3]) -> Option<TriangleData> {
    let mut t = TriangleData::new(sides.map(Angle), angles.map(Angle)).ok()?;
    if !req.reproduced_by(&t) {
        return None;
    }
    for i in 0..3 {
        if let Some(v) = req.sides[i] {
            t.sides[i] = v;
        }
        if let Some(v) = req.angles[i] {
            t.angles[i] = v;
        }
    }
    t.check().ok()?;
    Some(t)
}

fn angles_from_sides(s: [f64; 3]) -> [f64; 3] {
    [
        cosine_rule_angle(s[0], s[1], s[2]),
        cosine_rule_angle(s[1], s[2], s[0]),
        cosine_rule_angle(s[2], s[0], s[1]),
    ]
}

fn solve_sss(req: &SolveRequest) -> Vec<TriangleData> {
    let s = req.sides.map(|x| x.unwrap().0);
    if check_sides(s).is_err() {
        return vec![];
    }
    accept(req, s, angles_from_sides(s)).into_iter().collect()
}

fn solve_sas(req: &SolveRequest) -> Vec<TriangleData> {
    let i = req.sides.iter().position(|x| x.is_none()).unwrap();
    let (j, k) = ((i + 1) % 3, (i + 2) % 3);
    let mut s = req.sides.map(|x| x.map_or(0.0, |v| v.0));
    s[i] = cosine_rule_side(s[j], s[k], req.angles[i].unwrap().0);
    accept(req, s, angles_from_sides(s)).into_iter().collect()
}

/// Two sides `i`, `j` and the angle opposite side `i`. The unknown side `x`
/// satisfies `cos s_i = cos s_j cos x + sin s_j sin x cos A_i`, a phase
/// equation with up to two roots in `(0, π)`.
fn solve_ssa(req: &SolveRequest) -> Result<Vec<TriangleData>> {
    let i = (0..3)
        .find(|&i| req.sides[i].is_some() && req.angles[i].is_some())
        .unwrap();
    let k = (0..3).find(|&k| req.sides[k].is_none()).unwrap();
    let j = 3 - i - k;
    let si = req.sides[i].unwrap().0;
    let sj = req.sides[j].unwrap().0;
    let ai = req.angles[i].unwrap().0;

    let p = sj.cos();
    let q = sj.sin() * ai.cos();
    let r = p.hypot(q);
    let target = si.cos();
    if r < Tolerances::default().abs_eps {
        if target.abs() < Tolerances::default().abs_eps {
            return Err(Error::DegenerateInput(
                "every third side fits: the family is not isolated".into(),
            ));
        }
        return Ok(vec![]);
    }
    let ratio = target / r;
    if ratio.abs() > 1.0 + 1e-12 {
        return Ok(vec![]);
    }
    let phase = q.atan2(p);
    let delta = ratio.clamp(-1.0, 1.0).acos();
    let mut out: Vec<TriangleData> = Vec::new();
    for base in [phase - delta, phase + delta] {
        for shift in [-2.0 * PI, 0.0, 2.0 * PI] {
            let x = base + shift;
            if !(x > 0.0 && x < PI) {
                continue;
            }
            let mut s = [0.0; 3];
            s[i] = si;
            s[j] = sj;
            s[k] = x;
            if check_sides(s).is_err() {
                continue;
            }
            if let Some(t) = accept(req, s, angles_from_sides(s)) {
                push_distinct(&mut out, t);
            }
        }
    }
    Ok(out)
}

fn push_distinct(out: &mut Vec<TriangleData>, t: TriangleData) {
    if out.iter().all(|u| u.max_difference(&t) > SAME_SOLUTION_EPS) {
        out.push(t);
    }
}

fn canonical_order(mut v: Vec<TriangleData>) -> Vec<TriangleData> {
    v.sort_by(|x, y| {
        x.elements()
            .partial_cmp(&y.elements())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    v
}

fn solve_direct(req: &SolveRequest) -> Result<Vec<TriangleData>> {
    Ok(match req.pattern()? {
        Pattern::Sss => solve_sss(req),
        Pattern::Sas => solve_sas(req),
        Pattern::Ssa => solve_ssa(req)?,
        // angle-dominated patterns are solved on the polar triangle
        Pattern::Aaa | Pattern::Asa | Pattern::Aas => {
            let polar_req = req.polar();
            solve_direct(&polar_req)?
                .iter()
                .map(polar_triangle)
                .filter_map(|t| accept(req, t.sides.map(|x| x.0), t.angles.map(|x| x.0)))
                .collect()
        }
    })
}

/// Every triangle consistent with the three given elements.
///
/// SSS and AAA give at most one triangle, SAS and ASA exactly one, SSA and
/// AAS zero, one or two. AAA is solved as SSS on the polar triangle; ASA and
/// AAS likewise map to SAS and SSA. Results are sorted by `(a, b, c, A, B, C)`.
pub fn solve(req: &SolveRequest) -> Result<Vec<TriangleData>> {
    let found = solve_direct(req)?;
    if found.is_empty() {
        return Err(Error::NoSolution(format!(
            "no spherical triangle matches the {:?} data",
            req.pattern()?
        )));
    }
    Ok(canonical_order(found))
}

/// Right triangles (`C = π/2`) matching two further elements, through the
/// Napier relations:
///
/// ```text
/// sin a = sin c sin A    tan a = sin b tan A    tan a = tan c cos B
/// cos c = cos a cos b    cos c = cot A cot B    cos A = cos a sin B
/// ```
///
/// and their `a ↔ b`, `A ↔ B` mirrors. `C` may be left empty or set to π/2.
pub fn solve_right(req: &SolveRequest) -> Result<Vec<TriangleData>> {
    if let Some(c) = req.angles[2] {
        if (c.0 - FRAC_PI_2).abs() > SAME_SOLUTION_EPS {
            return Err(Error::InvalidInput(format!(
                "right-triangle solver needs C = π/2, got {}",
                c.0
            )));
        }
    }
    let mut given = *req;
    given.angles[2] = None;
    if given.known_count() != 2 {
        return Err(Error::InvalidInput(
            "exactly two elements besides C must be given".into(),
        ));
    }
    given.validate_values()?;

    // mirror so that the pair is one of the canonical forms
    let mirrored = needs_mirror(&given);
    let canon = if mirrored { mirror(&given) } else { given };
    let legs = right_legs(&canon)?;

    let mut full = canon;
    full.angles[2] = Some(Angle::RIGHT);
    let mut out = Vec::new();
    for (a, b) in legs {
        if !(a > 0.0 && a < PI && b > 0.0 && b < PI) {
            continue;
        }
        let c = cosine_rule_side(a, b, FRAC_PI_2);
        let big_a = a.sin().atan2(a.cos() * b.sin());
        let big_b = b.sin().atan2(b.cos() * a.sin());
        if let Some(t) = accept(&full, [a, b, c], [big_a, big_b, FRAC_PI_2]) {
            let t = if mirrored { mirror_triangle(&t) } else { t };
            push_distinct(&mut out, t);
        }
    }
    if out.is_empty() {
        return Err(Error::NoSolution(
            "the right-triangle data are inconsistent".into(),
        ));
    }
    Ok(canonical_order(out))
}

fn needs_mirror(r: &SolveRequest) -> bool {
    let [a, b, c] = r.sides.map(|x| x.is_some());
    let [aa, bb, _] = r.angles.map(|x| x.is_some());
    // canonical pairs: {a,b} {a,c} {a,A} {a,B} {c,A} {A,B}
    matches!(
        (a, b, c, aa, bb),
        (false, true, true, false, false)
            | (false, true, false, false, true)
            | (false, true, false, true, false)
            | (false, false, true, false, true)
    )
}

fn mirror(r: &SolveRequest) -> SolveRequest {
    SolveRequest {
        sides: [r.sides[1], r.sides[0], r.sides[2]],
        angles: [r.angles[1], r.angles[0], r.angles[2]],
    }
}

fn mirror_triangle(t: &TriangleData) -> TriangleData {
    TriangleData {
        sides: [t.sides[1], t.sides[0], t.sides[2]],
        angles: [t.angles[1], t.angles[0], t.angles[2]],
    }
}

/// Candidate leg pairs `(a, b)` for a canonical right-triangle request.
fn right_legs(r: &SolveRequest) -> Result<Vec<(f64, f64)>> {
    let g = |x: Option<Angle>| x.map(|v| v.0);
    let eps = Tolerances::default().abs_eps;
    let legs_from_hyp = |a: f64, c: f64| -> Result<Vec<(f64, f64)>> {
        // cos c = cos a cos b
        if a.cos().abs() < eps {
            if c.cos().abs() < eps {
                return Err(Error::DegenerateInput(
                    "a = c = π/2 leaves the other leg free".into(),
                ));
            }
            return Ok(vec![]);
        }
        // tan²(b/2) = tan((c + a)/2) tan((c − a)/2), free of the
        // cancellation in cos b = cos c / cos a
        let num = (0.5 * (c + a)).sin() * (0.5 * (c - a)).sin();
        let den = (0.5 * (c + a)).cos() * (0.5 * (c - a)).cos();
        Ok(if num * den >= 0.0 {
            vec![(a, 2.0 * num.abs().sqrt().atan2(den.abs().sqrt()))]
        } else {
            vec![]
        })
    };
    match (
        g(r.sides[0]),
        g(r.sides[1]),
        g(r.sides[2]),
        g(r.angles[0]),
        g(r.angles[1]),
    ) {
        (Some(a), Some(b), None, None, None) => Ok(vec![(a, b)]),
        (Some(a), None, Some(c), None, None) => legs_from_hyp(a, c),
        (Some(a), None, None, Some(big_a), None) => {
            // tan a = sin b tan A: leg and opposite angle share species
            let sb = a.tan() / big_a.tan();
            if !(sb > 0.0 && sb <= 1.0 + 1e-15) {
                return Ok(vec![]);
            }
            let b = sb.min(1.0).asin();
            Ok(vec![(a, b), (a, PI - b)])
        }
        (Some(a), None, None, None, Some(big_b)) => {
            // tan b = sin a tan B
            Ok(vec![(a, (a.sin() * big_b.sin()).atan2(big_b.cos()))])
        }
        (None, None, Some(c), Some(big_a), None) => {
            // tan b = tan c cos A, then tan a = sin b tan A
            let mut b = (c.sin() * big_a.cos()).atan2(c.cos());
            if b < 0.0 {
                b += PI;
            }
            let a = (b.sin() * big_a.sin()).atan2(big_a.cos());
            Ok(vec![(a, b)])
        }
        (None, None, None, Some(big_a), Some(big_b)) => {
            // cos A = cos a sin B
            let ca = big_a.cos() / big_b.sin();
            let cb = big_b.cos() / big_a.sin();
            if ca.abs() > 1.0 || cb.abs() > 1.0 {
                return Ok(vec![]);
            }
            Ok(vec![(ca.acos(), cb.acos())])
        }
        _ => Err(Error::InvalidInput(
            "unsupported right-triangle data pattern".into(),
        )),
    }
}

/// Third side of a hyperbolic triangle (curvature −1):
/// `cosh c = cosh a cosh b − sinh a sinh b cos C`.
pub fn hyperbolic_side_from_sas(a: f64, b: f64, included: Angle) -> Result<f64> {
    if !(a.is_finite() && b.is_finite() && a > 0.0 && b > 0.0) {
        return Err(Error::InvalidInput(format!(
            "hyperbolic sides must be positive, got {a}, {b}"
        )));
    }
    require_elements(&[included.0])?;
    // sinh²(c/2) = sinh²((a−b)/2) + sinh a sinh b sin²(C/2)
    let h = (0.5 * (a - b)).sinh().powi(2) + a.sinh() * b.sinh() * (0.5 * included.0).sin().powi(2);
    Ok(2.0 * h.sqrt().asinh())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const Q: f64 = FRAC_PI_2;

    fn octant() -> TriangleData {
        TriangleData::new([Angle(Q); 3], [Angle(Q); 3]).unwrap()
    }

    fn req(slots: [Option<f64>; 6]) -> SolveRequest {
        SolveRequest::from_slots(slots)
    }

    fn element() -> impl Strategy<Value = f64> {
        0.05..(PI - 0.05)
    }

    fn triangle() -> impl Strategy<Value = TriangleData> {
        (0.0..PI, -PI..PI, 0.0..PI, -PI..PI, 0.0..PI, -PI..PI).prop_filter_map(
            "well-shaped triangle",
            |(t1, p1, t2, p2, t3, p3)| {
                let t = TriangleData::from_vertices(
                    &SpherePoint::from_spherical(t1, p1),
                    &SpherePoint::from_spherical(t2, p2),
                    &SpherePoint::from_spherical(t3, p3),
                )
                .ok()?;
                t.elements()
                    .iter()
                    .all(|x| *x > 0.05 && *x < PI - 0.05)
                    .then_some(t)
            },
        )
    }

    #[test]
    fn side_from_sas_examples() {
        let c = side_from_sas(Angle(Q), Angle(Q), Angle(Q)).unwrap();
        assert!((c.0 - Q).abs() < 1e-15);
        let c = side_from_sas(Angle(Q), Angle(Q), Angle(0.7)).unwrap();
        assert!((c.0 - 0.7).abs() < 1e-15);
        let (a, b, g) = (1e-3, 1e-3, 1.0f64);
        let planar = (a * a + b * b - 2.0 * a * b * g.cos()).sqrt();
        let c = side_from_sas(Angle(a), Angle(b), Angle(g)).unwrap();
        // the spherical excess over the planar value is O(ε²) relative
        let rel = (c.0 - planar) / planar;
        assert!(rel < 0.0 && rel.abs() < 1e-6, "{rel:e}");
        assert!((rel + 1.283_585_3e-7).abs() < 1e-12, "{rel:e}");
    }

    #[test]
    fn side_from_sas_matches_textbook_arccos_form() {
        for &(a, b, g) in &[(0.3, 1.2, 2.0), (2.5, 0.4, 0.9), (1.0, 1.0, 1.0)] {
            let direct = (f64::cos(a) * f64::cos(b) + f64::sin(a) * f64::sin(b) * f64::cos(g)).acos();
            let c = side_from_sas(Angle(a), Angle(b), Angle(g)).unwrap();
            assert!((c.0 - direct).abs() < 1e-13);
        }
    }

    #[test]
    fn side_from_sas_errors() {
        assert!(matches!(
            side_from_sas(Angle(0.0), Angle(1.0), Angle(1.0)),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            side_from_sas(Angle(Q), Angle(Q), Angle(PI - 1e-13)),
            Err(Error::DegenerateInput(_))
        ));
    }

    #[test]
    fn angle_from_sss_examples() {
        let a = angle_from_sss(Angle(Q), Angle(Q), Angle(Q)).unwrap();
        assert!((a.0 - Q).abs() < 1e-15);
        let third = PI / 3.0;
        let a = angle_from_sss(Angle(third), Angle(third), Angle(third)).unwrap();
        assert!((a.0 - (1.0f64 / 3.0).acos()).abs() < 1e-15);
        assert!((a.0 - 1.230959).abs() < 1e-6);
        assert!(matches!(
            angle_from_sss(Angle(0.2), Angle(0.3), Angle(1.0)),
            Err(Error::InvalidTriangle(_))
        ));
        assert!(matches!(
            angle_from_sss(Angle(3.0), Angle(3.0), Angle(1.0)),
            Err(Error::InvalidTriangle(_))
        ));
    }

    #[test]
    fn sas_expanded_examples() {
        let third = PI / 3.0;
        assert!((sas_expanded(Angle(third), Angle(third), Angle(Q)) - 0.25).abs() < 1e-15);
        assert!((sas_expanded(Angle(Q), Angle(Q), Angle(0.4)) - 0.4f64.cos()).abs() < 1e-15);
    }

    #[test]
    fn polar_examples() {
        let o = octant();
        assert!(polar_triangle(&o).max_difference(&o) < 1e-15);
        let third = PI / 3.0;
        let eq_angle = (1.0f64 / 3.0).acos();
        let t = TriangleData::new([Angle(third); 3], [Angle(eq_angle); 3]).unwrap();
        let p = polar_triangle(&t);
        for s in p.sides() {
            assert!((s.0 - (PI - eq_angle)).abs() < 1e-15);
        }
        for a in p.angles() {
            assert!((a.0 - 2.0 * PI / 3.0).abs() < 1e-15);
        }
        TriangleData::new(p.sides(), p.angles()).unwrap();
    }

    #[test]
    fn triangle_data_rejects_inconsistent_elements() {
        assert!(TriangleData::new([Angle(Q); 3], [Angle(1.0); 3]).is_err());
        assert!(TriangleData::new([Angle(0.0), Angle(Q), Angle(Q)], [Angle(Q); 3]).is_err());
    }

    #[test]
    fn pattern_classification() {
        let x = Some(1.0);
        assert_eq!(req([x, x, x, None, None, None]).pattern().unwrap(), Pattern::Sss);
        assert_eq!(req([None, None, None, x, x, x]).pattern().unwrap(), Pattern::Aaa);
        assert_eq!(req([x, x, None, None, None, x]).pattern().unwrap(), Pattern::Sas);
        assert_eq!(req([x, x, None, x, None, None]).pattern().unwrap(), Pattern::Ssa);
        assert_eq!(req([None, None, x, x, x, None]).pattern().unwrap(), Pattern::Asa);
        assert_eq!(req([x, None, None, x, x, None]).pattern().unwrap(), Pattern::Aas);
        assert!(matches!(
            req([x, x, None, None, None, None]).pattern(),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            req([x, x, Some(4.0), None, None, None]).pattern(),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn solve_octant_sss() {
        let r = solve(&req([Some(Q), Some(Q), Some(Q), None, None, None])).unwrap();
        assert_eq!(r.len(), 1);
        assert!(r[0].max_difference(&octant()) < 1e-15);
    }

    #[test]
    fn solve_aaa_matches_polar_of_sss() {
        let ang = 2.0 * PI / 3.0;
        let r = solve(&req([None, None, None, Some(ang), Some(ang), Some(ang)])).unwrap();
        assert_eq!(r.len(), 1);
        let side = PI - (1.0f64 / 3.0).acos();
        for s in r[0].sides() {
            assert!((s.0 - side).abs() < 1e-10);
        }
        let p = polar_triangle(&r[0]);
        let back = solve(&SolveRequest::masked(&p, [true, true, true, false, false, false])).unwrap();
        assert!(back[0].max_difference(&p) < 1e-10);
    }

    #[test]
    fn solve_reports_no_solution() {
        // side longer than the other two together
        assert!(matches!(
            solve(&req([Some(0.2), Some(0.3), Some(1.0), None, None, None])),
            Err(Error::NoSolution(_))
        ));
        // angles summing below π
        assert!(matches!(
            solve(&req([None, None, None, Some(0.5), Some(0.5), Some(0.5)])),
            Err(Error::NoSolution(_))
        ));
    }

    /// Scan oracle for SSA: sample the unknown side over (0, π), refine each
    /// sign change of the cosine-rule mismatch by bisection.
    fn ssa_scan(a: f64, b: f64, big_a: f64, samples: usize) -> Vec<f64> {
        let f = |c: f64| a.cos() - b.cos() * c.cos() - b.sin() * c.sin() * big_a.cos();
        let mut roots = vec![];
        let h = PI / samples as f64;
        let mut prev = f(h * 0.5);
        for k in 1..samples {
            let x = h * (k as f64 + 0.5);
            let cur = f(x);
            if prev == 0.0 || prev.signum() != cur.signum() {
                let (mut lo, mut hi) = (x - h, x);
                for _ in 0..80 {
                    let mid = 0.5 * (lo + hi);
                    if f(lo).signum() == f(mid).signum() {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                roots.push(0.5 * (lo + hi));
            }
            prev = cur;
        }
        roots
    }

    #[test]
    fn solve_ssa_matches_scan_oracle() {
        let (a, b, big_a) = (0.8, 0.6, 0.9);
        let r = solve(&req([Some(a), Some(b), None, Some(big_a), None, None])).unwrap();
        let scan: Vec<f64> = ssa_scan(a, b, big_a, 1_000_000)
            .into_iter()
            .filter(|&c| check_sides([a, b, c]).is_ok())
            .collect();
        assert_eq!(r.len(), scan.len());
        for (t, c) in r.iter().zip(&scan) {
            assert!((t.sides()[2].0 - c).abs() < 1e-9);
        }
    }

    #[test]
    fn solve_ssa_ambiguous_case_has_two_solutions() {
        // a < b with small A: the classical two-triangle case
        let r = solve(&req([Some(0.5), Some(0.9), None, Some(0.4), None, None])).unwrap();
        assert_eq!(r.len(), 2);
        let scan: Vec<f64> = ssa_scan(0.5, 0.9, 0.4, 200_000)
            .into_iter()
            .filter(|&c| check_sides([0.5, 0.9, c]).is_ok())
            .collect();
        assert_eq!(scan.len(), 2);
    }

    #[test]
    fn solve_right_examples() {
        let r = solve_right(&req([Some(Q), Some(Q), None, None, None, None])).unwrap();
        assert_eq!(r.len(), 1);
        assert!(r[0].max_difference(&octant()) < 1e-15);

        let r = solve_right(&req([None, None, Some(PI / 3.0), Some(PI / 4.0), None, None])).unwrap();
        assert_eq!(r.len(), 1);
        let expect = ((PI / 3.0).sin() * (PI / 4.0).sin()).asin();
        assert!((r[0].sides()[0].0 - expect).abs() < 1e-12);
        assert!((r[0].sides()[0].0 - 0.659058).abs() < 1e-6);
        let general = solve(&req([None, None, Some(PI / 3.0), Some(PI / 4.0), None, Some(Q)])).unwrap();
        assert_eq!(general.len(), 1);
        assert!(general[0].max_difference(&r[0]) < 1e-9);

        assert!(matches!(
            solve_right(&req([Some(1.5), None, None, Some(0.1), None, None])),
            Err(Error::NoSolution(_))
        ));
        assert!(matches!(
            solve_right(&req([Some(1.5), None, None, None, None, Some(1.0)])),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn right_leg_angle_case_is_ambiguous() {
        let r = solve_right(&req([Some(0.4), None, None, Some(0.6), None, None])).unwrap();
        assert_eq!(r.len(), 2);
        assert!((r[0].sides()[1].0 + r[1].sides()[1].0 - PI).abs() < 1e-12);
    }

    #[test]
    fn hyperbolic_examples() {
        let c = hyperbolic_side_from_sas(1.0, 1.0, Angle(Q)).unwrap();
        let expect = (1.0f64.cosh().powi(2)).acosh();
        assert!((c - expect).abs() < 1e-12);
        assert!((c - 1.513_374_006_6).abs() < 1e-10);

        let (a, b, g) = (1e-3, 1e-3, 1.0f64);
        let planar = (a * a + b * b - 2.0 * a * b * g.cos()).sqrt();
        let c = hyperbolic_side_from_sas(a, b, Angle(g)).unwrap();
        let rel = (c - planar) / planar;
        assert!(rel > 0.0 && rel < 1e-6, "{rel:e}");
        assert!((rel - 1.283_585_2e-7).abs() < 1e-12, "{rel:e}");
        assert!(hyperbolic_side_from_sas(-1.0, 1.0, Angle(1.0)).is_err());
    }

    #[test]
    fn hyperbolic_matches_textbook_form() {
        for &(a, b, g) in &[(0.5, 2.0, 1.0), (3.0, 1.0, 2.5)] {
            let direct = (f64::cosh(a) * f64::cosh(b) - f64::sinh(a) * f64::sinh(b) * f64::cos(g)).acosh();
            let c = hyperbolic_side_from_sas(a, b, Angle(g)).unwrap();
            assert!((c - direct).abs() < 1e-12);
        }
    }

    proptest! {
        #[test]
        fn sas_sss_round_trip(a in element(), b in element(), g in element()) {
            let c = side_from_sas(Angle(a), Angle(b), Angle(g));
            prop_assume!(c.is_ok());
            let c = c.unwrap();
            let back = angle_from_sss(Angle(c.0), Angle(a), Angle(b)).unwrap();
            prop_assert!((back.0 - g).abs() < 1e-10);
        }

        #[test]
        fn sas_expanded_is_the_cosine_rule(a in element(), b in element(), g in element()) {
            let c = cosine_rule_side(a, b, g);
            prop_assert!((sas_expanded(Angle(a), Angle(b), Angle(g)) - c.cos()).abs() < 1e-12);
        }

        #[test]
        fn polar_is_an_involution(t in triangle()) {
            let p = polar_triangle(&t);
            prop_assert!(TriangleData::new(p.sides(), p.angles()).is_ok());
            prop_assert!(polar_triangle(&p).max_difference(&t) < 1e-12);
        }

        #[test]
        fn sss_on_polar_gives_supplements(t in triangle()) {
            let p = polar_triangle(&t);
            let s = p.sides();
            let angle = angle_from_sss(s[0], s[1], s[2]).unwrap();
            prop_assert!((angle.0 - (PI - t.sides()[0].0)).abs() < 1e-10);
        }

        #[test]
        fn masked_solve_recovers_the_triangle(t in triangle(), m in 0usize..20) {
            let mask = three_of_six(m);
            let sols = solve(&SolveRequest::masked(&t, mask)).unwrap();
            prop_assert!(sols.iter().any(|s| s.max_difference(&t) < 1e-9));
            for s in &sols {
                prop_assert!(s.sine_residual() < 1e-9);
            }
        }

        #[test]
        fn right_solver_agrees_with_general_solver(
            a in element(), b in element(), pick in 0usize..10
        ) {
            let t = solve(&req([Some(a), Some(b), None, None, None, Some(Q)])).unwrap()[0];
            let pairs = [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];
            let (i, j) = pairs[pick];
            let mut mask = [false; 6];
            mask[i] = true;
            mask[j] = true;
            let right = solve_right(&SolveRequest::masked(&t, mask));
            mask[5] = true;
            let general = solve(&SolveRequest::masked(&t, mask));
            match (right, general) {
                (Ok(r), Ok(g)) => {
                    prop_assert_eq!(r.len(), g.len());
                    for (x, y) in r.iter().zip(&g) {
                        prop_assert!(x.max_difference(y) < 1e-9);
                    }
                    prop_assert!(r.iter().any(|x| x.max_difference(&t) < 1e-9));
                }
                (Err(Error::DegenerateInput(_)), _) | (_, Err(Error::DegenerateInput(_))) => {}
                (r, g) => prop_assert!(false, "solvers disagree: {:?} vs {:?}", r, g),
            }
        }

        #[test]
        fn hyperbolic_and_spherical_bracket_planar(
            a in 1e-3..0.2f64, b in 1e-3..0.2f64, g in element()
        ) {
            let planar = (a * a + b * b - 2.0 * a * b * g.cos()).sqrt();
            let sph = cosine_rule_side(a, b, g);
            let hyp = hyperbolic_side_from_sas(a, b, Angle(g)).unwrap();
            prop_assert!(sph <= planar * (1.0 + 1e-15));
            prop_assert!(planar <= hyp * (1.0 + 1e-15));
        }
    }

    fn three_of_six(index: usize) -> [bool; 6] {
        let mut n = 0;
        for bits in 0u32..64 {
            if bits.count_ones() == 3 {
                if n == index {
                    let mut m = [false; 6];
                    for (i, slot) in m.iter_mut().enumerate() {
                        *slot = bits & (1 << i) != 0;
                    }
                    return m;
                }
                n += 1;
            }
        }
        unreachable!()
    }
}
