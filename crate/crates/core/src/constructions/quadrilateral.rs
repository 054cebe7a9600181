//! Euler's quadrilateral relation: the squared sides exceed the squared
//! diagonals by four times the squared distance between the diagonal
//! midpoints.

use crate::plane::Point2;

fn sq(p: Point2, q: Point2) -> f64 {
    (p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2)
}

fn mid(p: Point2, q: Point2) -> Point2 {
    [0.5 * (p[0] + q[0]), 0.5 * (p[1] + q[1])]
}

/// `Σ sides² − (Σ diagonals² + 4 |m₁₃ − m₂₄|²)` for the quadrilateral
/// `P₁P₂P₃P₄`; zero up to rounding for any four points.
pub fn quadrilateral_identity_gap(p: [Point2; 4]) -> f64 {
    let sides = sq(p[0], p[1]) + sq(p[1], p[2]) + sq(p[2], p[3]) + sq(p[3], p[0]);
    let diagonals = sq(p[0], p[2]) + sq(p[1], p[3]);
    sides - (diagonals + 4.0 * sq(mid(p[0], p[2]), mid(p[1], p[3])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parallelogram_has_coincident_midpoints() {
        let p = [[0.0, 0.0], [3.0, 0.0], [4.0, 2.0], [1.0, 2.0]];
        assert_eq!(mid(p[0], p[2]), mid(p[1], p[3]));
        assert!(quadrilateral_identity_gap(p).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn holds_for_any_four_points(p in prop::array::uniform4(prop::array::uniform2(-100.0..100.0f64))) {
            let scale = p.iter().map(|q| q[0] * q[0] + q[1] * q[1]).fold(1.0, f64::max);
            prop_assert!(quadrilateral_identity_gap(p).abs() <= 1e-12 * scale);
        }
    }
}
