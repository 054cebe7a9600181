//! Points, lines and circles of the Euclidean plane.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point of the Euclidean plane.
pub type Point2 = [f64; 2];

#[inline]
pub fn dist(p: Point2, q: Point2) -> f64 {
    (p[0] - q[0]).hypot(p[1] - q[1])
}

/// `(q − p) × (r − p)`, twice the signed area of `pqr`.
#[inline]
pub fn orient(p: Point2, q: Point2, r: Point2) -> f64 {
    (q[0] - p[0]) * (r[1] - p[1]) - (r[0] - p[0]) * (q[1] - p[1])
}

/// The line `{point + t·direction}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Line2 {
    pub point: Point2,
    pub direction: Point2,
}

impl Line2 {
    pub fn through(p: Point2, q: Point2) -> Self {
        Line2 {
            point: p,
            direction: [q[0] - p[0], q[1] - p[1]],
        }
    }

    /// Unsigned distance from `p` to the line.
    pub fn distance(&self, p: Point2) -> f64 {
        let d = self.direction;
        let len = d[0].hypot(d[1]);
        ((p[0] - self.point[0]) * d[1] - (p[1] - self.point[1]) * d[0]).abs() / len
    }

    pub fn at(&self, t: f64) -> Point2 {
        [
            self.point[0] + t * self.direction[0],
            self.point[1] + t * self.direction[1],
        ]
    }
}

/// A circle of the plane; `r = 0` is a point-circle.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Circle2D {
    pub cx: f64,
    pub cy: f64,
    pub r: f64,
}

impl Circle2D {
    pub fn new(cx: f64, cy: f64, r: f64) -> Result<Self> {
        if !(cx.is_finite() && cy.is_finite() && r.is_finite() && r >= 0.0) {
            return Err(Error::InvalidInput(format!(
                "circle ({cx}, {cy}; {r}) needs finite center and radius ≥ 0"
            )));
        }
        Ok(Circle2D { cx, cy, r })
    }

    pub fn center(&self) -> Point2 {
        [self.cx, self.cy]
    }

    pub fn point_at(&self, t: f64) -> Point2 {
        let (s, c) = t.sin_cos();
        [self.cx + self.r * c, self.cy + self.r * s]
    }

    pub fn parameter_of(&self, p: Point2) -> f64 {
        (p[1] - self.cy).atan2(p[0] - self.cx)
    }
}
