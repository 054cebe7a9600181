//! Circles tangent to three circles and spheres tangent to four spheres.
//!
//! A candidate `(x, r)` is tangent to the given `(cᵢ, rᵢ)` with sign `sᵢ`
//! when `|x − cᵢ| = |r + sᵢ rᵢ|`: `+1` is external tangency and `−1`
//! internal. Subtracting the squared equations pairwise leaves a linear
//! system in `(x, r)` with one more unknown than equations, so all unknowns
//! are affine in a single free one and the first equation becomes a
//! quadratic in it.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::plane::Circle2D;

/// Linear systems whose best minor falls below this (after normalization)
/// are rank deficient.
const RANK_EPS: f64 = 1e-10;
/// Normalized distance under which two solutions are the same.
const MERGE_EPS: f64 = 1e-9;
/// Acceptance gate on the tangency residual, relative to the input scale.
const RESIDUAL_GATE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sphere3D {
    pub cx: f64,
    pub cy: f64,
    pub cz: f64,
    pub r: f64,
}

impl Sphere3D {
    pub fn new(cx: f64, cy: f64, cz: f64, r: f64) -> Result<Self> {
        let s = Sphere3D { cx, cy, cz, r };
        s.validate()?;
        Ok(s)
    }

    fn validate(&self) -> Result<()> {
        if [self.cx, self.cy, self.cz, self.r].iter().all(|v| v.is_finite()) && self.r >= 0.0 {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!(
                "sphere {self:?} needs a finite center and radius ≥ 0"
            )))
        }
    }
}

/// A circle or sphere: a center and a non-negative radius.
pub trait Ball: Copy {
    const DIM: usize;
    fn center(&self) -> Vec<f64>;
    fn radius(&self) -> f64;
    fn from_parts(center: &[f64], r: f64) -> Self;
}

impl Ball for Circle2D {
    const DIM: usize = 2;
    fn center(&self) -> Vec<f64> {
        vec![self.cx, self.cy]
    }
    fn radius(&self) -> f64 {
        self.r
    }
    fn from_parts(c: &[f64], r: f64) -> Self {
        Circle2D { cx: c[0], cy: c[1], r }
    }
}

impl Ball for Sphere3D {
    const DIM: usize = 3;
    fn center(&self) -> Vec<f64> {
        vec![self.cx, self.cy, self.cz]
    }
    fn radius(&self) -> f64 {
        self.r
    }
    fn from_parts(c: &[f64], r: f64) -> Self {
        Sphere3D { cx: c[0], cy: c[1], cz: c[2], r }
    }
}

/// One sign per given ball, each `+1` (external) or `−1` (internal).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TangencySigns(pub Vec<i8>);

impl TangencySigns {
    pub fn new(signs: Vec<i8>) -> Result<Self> {
        if signs.iter().all(|s| *s == 1 || *s == -1) {
            Ok(TangencySigns(signs))
        } else {
            Err(Error::InvalidInput(format!(
                "tangency signs must be ±1: {signs:?}"
            )))
        }
    }

    /// All `2ⁿ` sign vectors, `+1` before `−1` in each slot.
    pub fn all(n: usize) -> Vec<TangencySigns> {
        (0..1u32 << n)
            .map(|m| TangencySigns((0..n).map(|i| if m >> (n - 1 - i) & 1 == 0 { 1 } else { -1 }).collect()))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tangent<B> {
    pub ball: B,
    pub signs: TangencySigns,
    pub residual: f64,
}

pub type TangentCircle = Tangent<Circle2D>;
pub type TangentSphere = Tangent<Sphere3D>;

/// `max |dist(x, cᵢ) − |r + sᵢ rᵢ||` over the givens.
pub fn tangency_residual<B: Ball>(candidate: &B, givens: &[B], signs: &TangencySigns) -> f64 {
    let x = candidate.center();
    givens
        .iter()
        .zip(&signs.0)
        .map(|(g, s)| {
            let d = dist(&x, &g.center());
            (d - (candidate.radius() + f64::from(*s) * g.radius()).abs()).abs()
        })
        .fold(0.0, f64::max)
}

/// Circles tangent to `c1, c2, c3` for one sign triple, or for all eight
/// when `signs` is `None`. Sorted by radius, then center.
pub fn apollonius_circles(
    c1: Circle2D,
    c2: Circle2D,
    c3: Circle2D,
    signs: Option<&TangencySigns>,
) -> Result<Vec<TangentCircle>> {
    for c in [&c1, &c2, &c3] {
        Circle2D::new(c.cx, c.cy, c.r)?;
    }
    solve_all(&[c1, c2, c3], signs)
}

/// Spheres tangent to `s1, …, s4` for one sign quadruple, or for all
/// sixteen when `signs` is `None`. Sorted by radius, then center.
pub fn tangent_spheres(
    s1: Sphere3D,
    s2: Sphere3D,
    s3: Sphere3D,
    s4: Sphere3D,
    signs: Option<&TangencySigns>,
) -> Result<Vec<TangentSphere>> {
    for s in [&s1, &s2, &s3, &s4] {
        s.validate()?;
    }
    solve_all(&[s1, s2, s3, s4], signs)
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(p, q)| (p - q) * (p - q)).sum::<f64>().sqrt()
}

/// Inputs translated to their centroid and divided by a common scale.
struct Normalized {
    centers: Vec<Vec<f64>>,
    radii: Vec<f64>,
    shift: Vec<f64>,
    scale: f64,
}

fn normalize<B: Ball>(givens: &[B]) -> Result<Normalized> {
    let n = B::DIM;
    let centers: Vec<Vec<f64>> = givens.iter().map(|g| g.center()).collect();
    let shift: Vec<f64> = (0..n)
        .map(|k| centers.iter().map(|c| c[k]).sum::<f64>() / givens.len() as f64)
        .collect();
    let scale = givens
        .iter()
        .zip(&centers)
        .map(|(g, c)| dist(c, &shift).max(g.radius()))
        .fold(0.0, f64::max);
    for i in 0..givens.len() {
        for j in i + 1..givens.len() {
            if dist(&centers[i], &centers[j]) <= 1e-14 * scale {
                return Err(
                    if (givens[i].radius() - givens[j].radius()).abs() <= 1e-14 * scale {
                        Error::InvalidInput(format!("given {} and {} coincide", i + 1, j + 1))
                    } else {
                        Error::DegenerateConfiguration(format!(
                            "given {} and {} are concentric",
                            i + 1,
                            j + 1
                        ))
                    },
                );
            }
        }
    }
    Ok(Normalized {
        centers: centers
            .iter()
            .map(|c| c.iter().zip(&shift).map(|(a, s)| (a - s) / scale).collect())
            .collect(),
        radii: givens.iter().map(|g| g.radius() / scale).collect(),
        shift,
        scale,
    })
}

fn solve_all<B: Ball>(givens: &[B], signs: Option<&TangencySigns>) -> Result<Vec<Tangent<B>>> {
    let m = givens.len();
    let cases = match signs {
        Some(s) => {
            TangencySigns::new(s.0.clone())?;
            if s.0.len() != m {
                return Err(Error::InvalidInput(format!(
                    "expected {m} tangency signs, got {}",
                    s.0.len()
                )));
            }
            vec![s.clone()]
        }
        None => TangencySigns::all(m),
    };
    let norm = normalize(givens)?;

    let mut found: Vec<(Vec<f64>, f64, TangencySigns)> = Vec::new();
    let mut seen_cases: Vec<TangencySigns> = Vec::new();
    for case in cases {
        // a point-circle is touched the same way under either sign
        let case = TangencySigns(
            case.0
                .iter()
                .zip(&norm.radii)
                .map(|(s, r)| if *r == 0.0 { 1 } else { *s })
                .collect(),
        );
        if seen_cases.contains(&case) {
            continue;
        }
        seen_cases.push(case.clone());
        for (x, r) in solve_case(&norm, &case)? {
            let dup = found.iter().any(|(y, q, _)| {
                dist(&x, y).max((r - q).abs()) <= MERGE_EPS
            });
            if !dup {
                found.push((x, r, case.clone()));
            }
        }
    }

    let mut out: Vec<Tangent<B>> = found
        .into_iter()
        .map(|(x, r, case)| {
            let center: Vec<f64> = x.iter().zip(&norm.shift).map(|(v, s)| v * norm.scale + s).collect();
            let ball = B::from_parts(&center, r * norm.scale);
            let residual = tangency_residual(&ball, givens, &case);
            Tangent { ball, signs: case, residual }
        })
        .filter(|t| t.residual <= RESIDUAL_GATE * norm.scale.max(1.0))
        .collect();
    if out.is_empty() {
        return Err(Error::NoSolution(match signs {
            Some(s) => format!("no tangent with signs {:?}", s.0),
            None => "no tangent for any sign choice".into(),
        }));
    }
    out.sort_by(|a, b| {
        a.ball
            .radius()
            .total_cmp(&b.ball.radius())
            .then_with(|| {
                let (ca, cb) = (a.ball.center(), b.ball.center());
                ca.iter()
                    .zip(&cb)
                    .map(|(p, q)| p.total_cmp(q))
                    .find(|o| o.is_ne())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
    });
    Ok(out)
}

/// Determinant of a small square matrix by Gaussian elimination.
fn det(mut a: Vec<Vec<f64>>) -> f64 {
    let n = a.len();
    let mut d = 1.0;
    for k in 0..n {
        let p = (k..n)
            .max_by(|&i, &j| a[i][k].abs().total_cmp(&a[j][k].abs()))
            .expect("non-empty");
        if a[p][k] == 0.0 {
            return 0.0;
        }
        if p != k {
            a.swap(p, k);
            d = -d;
        }
        d *= a[k][k];
        for i in k + 1..n {
            let f = a[i][k] / a[k][k];
            for j in k..n {
                a[i][j] -= f * a[k][j];
            }
        }
    }
    d
}

/// Solves `a x = b` with partial pivoting; `None` when singular.
fn solve_linear(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = a.len();
    for k in 0..n {
        let p = (k..n).max_by(|&i, &j| a[i][k].abs().total_cmp(&a[j][k].abs()))?;
        if a[p][k].abs() < 1e-300 {
            return None;
        }
        a.swap(p, k);
        b.swap(p, k);
        for i in k + 1..n {
            let f = a[i][k] / a[k][k];
            for j in k..n {
                a[i][j] -= f * a[k][j];
            }
            b[i] -= f * b[k];
        }
    }
    let mut x = vec![0.0; n];
    for k in (0..n).rev() {
        let s: f64 = (k + 1..n).map(|j| a[k][j] * x[j]).sum();
        x[k] = (b[k] - s) / a[k][k];
    }
    Some(x)
}

/// Real roots of `a τ² + 2 h τ + c = 0`.
fn quadratic_roots(a: f64, h: f64, c: f64) -> Result<Vec<f64>> {
    let size = a.abs().max(h.abs()).max(c.abs());
    if size == 0.0 || (a.abs() <= 1e-14 * size && h.abs() <= 1e-14 * size) {
        return Err(Error::DegenerateConfiguration(
            "tangency condition vanishes identically".into(),
        ));
    }
    if a.abs() <= 1e-14 * size {
        return Ok(vec![-c / (2.0 * h)]);
    }
    let disc = h * h - a * c;
    if disc < -1e-12 * (h * h).max((a * c).abs()) {
        return Ok(vec![]);
    }
    let sq = disc.max(0.0).sqrt();
    if sq == 0.0 {
        return Ok(vec![-h / a]);
    }
    // cancellation-free pair
    let q = -(h + h.signum() * sq);
    Ok(vec![q / a, c / q])
}

/// Solutions `(x, r)` in normalized units for one sign case.
fn solve_case(norm: &Normalized, signs: &TangencySigns) -> Result<Vec<(Vec<f64>, f64)>> {
    let n = norm.centers[0].len();
    let c = &norm.centers;
    let rho: Vec<f64> = norm.radii.iter().zip(&signs.0).map(|(r, s)| r * f64::from(*s)).collect();
    let sq = |v: &[f64]| v.iter().map(|a| a * a).sum::<f64>();

    // rows i = 1..n: 2(cᵢ − c₀)·x + 2(ρᵢ − ρ₀) r = |cᵢ|² − |c₀|² − (ρᵢ² − ρ₀²)
    let rows: Vec<Vec<f64>> = (1..=n)
        .map(|i| {
            let mut row: Vec<f64> = (0..n).map(|k| 2.0 * (c[i][k] - c[0][k])).collect();
            row.push(2.0 * (rho[i] - rho[0]));
            row
        })
        .collect();
    let rhs: Vec<f64> = (1..=n)
        .map(|i| sq(&c[i]) - sq(&c[0]) - (rho[i] * rho[i] - rho[0] * rho[0]))
        .collect();

    // free unknown: the column whose removal leaves the best-conditioned minor
    let minor = |free: usize| -> Vec<Vec<f64>> {
        rows.iter()
            .map(|row| (0..=n).filter(|&k| k != free).map(|k| row[k]).collect())
            .collect()
    };
    let (free, best) = (0..=n)
        .map(|k| (k, det(minor(k)).abs()))
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .expect("n + 1 columns");
    if best < RANK_EPS {
        return Err(Error::DegenerateConfiguration(format!(
            "tangency equations are rank deficient for signs {:?}",
            signs.0
        )));
    }
    // z = p + τ q with z_free = τ
    let m = minor(free);
    let p_bound = solve_linear(m.clone(), rhs.clone()).expect("non-singular minor");
    let q_bound = solve_linear(
        m,
        rows.iter().map(|row| -row[free]).collect(),
    )
    .expect("non-singular minor");
    let expand = |bound: &[f64], at_free: f64| -> Vec<f64> {
        let mut z = Vec::with_capacity(n + 1);
        let mut it = bound.iter();
        for k in 0..=n {
            z.push(if k == free { at_free } else { *it.next().expect("n entries") });
        }
        z
    };
    let p = expand(&p_bound, 0.0);
    let q = expand(&q_bound, 1.0);

    // |x − c₀|² − (r + ρ₀)² = 0 along the line
    let px: Vec<f64> = (0..n).map(|k| p[k] - c[0][k]).collect();
    let pr = p[n] + rho[0];
    let a = sq(&q[..n]) - q[n] * q[n];
    let h = (0..n).map(|k| q[k] * px[k]).sum::<f64>() - q[n] * pr;
    let cc = sq(&px) - pr * pr;

    let mut out = Vec::new();
    for tau in quadratic_roots(a, h, cc)? {
        let z: Vec<f64> = (0..=n).map(|k| p[k] + tau * q[k]).collect();
        let z = polish(z, c, &rho);
        let r = z[n];
        if r < -1e-12 {
            continue;
        }
        out.push((z[..n].to_vec(), r.max(0.0)));
    }
    Ok(out)
}

/// Newton steps on the squared tangency equations; a step is kept only if
/// it lowers the residual.
fn polish(mut z: Vec<f64>, c: &[Vec<f64>], rho: &[f64]) -> Vec<f64> {
    let n = c[0].len();
    let eqs = |z: &[f64]| -> Vec<f64> {
        (0..=n)
            .map(|i| {
                let d2: f64 = (0..n).map(|k| (z[k] - c[i][k]).powi(2)).sum();
                d2 - (z[n] + rho[i]).powi(2)
            })
            .collect()
    };
    let size = |f: &[f64]| f.iter().map(|v| v.abs()).fold(0.0, f64::max);
    let mut f = eqs(&z);
    for _ in 0..3 {
        let jac: Vec<Vec<f64>> = (0..=n)
            .map(|i| {
                let mut row: Vec<f64> = (0..n).map(|k| 2.0 * (z[k] - c[i][k])).collect();
                row.push(-2.0 * (z[n] + rho[i]));
                row
            })
            .collect();
        let Some(step) = solve_linear(jac, f.iter().map(|v| -v).collect()) else {
            break;
        };
        let cand: Vec<f64> = z.iter().zip(&step).map(|(a, b)| a + b).collect();
        let fc = eqs(&cand);
        if size(&fc) < size(&f) {
            z = cand;
            f = fc;
        } else {
            break;
        }
    }
    z
}
