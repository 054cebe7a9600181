//! Properties that tie several modules together through the public API.

use std::f64::consts::{FRAC_PI_2, PI};

use proptest::prelude::*;
use sphaerica::area;
use sphaerica::constructions::{
    collinearity_residual, pappus_inscribed_triangle, Carrier, CevianConfig, Geometry,
    InscribedTriangleProblem, ModelPoint,
};
use sphaerica::geo::{geodesic_distance, GeoCoordinate};
use sphaerica::lexell;
use sphaerica::triangle::{self, TriangleData};
use sphaerica::{Angle, ErrorKind, SmallCircle, SolveRequest, SpherePoint, Tolerances};

fn point(theta: f64, phi: f64) -> SpherePoint {
    SpherePoint::from_spherical(theta, phi)
}

proptest! {
    #[test]
    fn great_circle_distance_is_the_pole_triangle_side(
        lat1 in -1.5..1.5f64, lon1 in -3.1..3.1f64, lat2 in -1.5..1.5f64, lon2 in -3.1..3.1f64,
    ) {
        let p = GeoCoordinate::new(lat1, lon1).unwrap();
        let q = GeoCoordinate::new(lat2, lon2).unwrap();
        let mut dl = (lon2 - lon1).abs();
        if dl > PI {
            dl = 2.0 * PI - dl;
        }
        prop_assume!(dl > 1e-3);
        let side = triangle::side_from_sas(Angle(FRAC_PI_2 - lat1), Angle(FRAC_PI_2 - lat2), Angle(dl)).unwrap();
        let (c, _) = geodesic_distance(&p, &q, 1.0).unwrap();
        prop_assert!((side.0 - c.0).abs() < 1e-12);
    }

    #[test]
    fn lexell_apices_have_the_requested_excess(
        t in 0.4..2.6f64, phi in -3.0..3.0f64, s in 0.1..3.0f64, at in 0.05..0.95f64,
    ) {
        let a = point(FRAC_PI_2, 0.0);
        let b = point(t, phi);
        prop_assume!(lexell::spherical_triangle_area_from_vertices(&a, &b, &point(0.3, 1.0)).is_ok());
        let locus = lexell::lexell_circle(&a, &b, s, &Tolerances::default()).unwrap();
        let apex = locus.sample(at);
        let tri = TriangleData::from_vertices(&a, &b, &apex).unwrap();
        prop_assert!((tri.excess() - s).abs() < 1e-8, "excess {} for area {}", tri.excess(), s);
    }

    #[test]
    fn trihedral_solid_angle_is_the_face_triangle_excess(
        a in 0.2..2.0f64, b in 0.2..2.0f64, c in 0.2..2.0f64,
    ) {
        prop_assume!(a < b + c && b < c + a && c < a + b && a + b + c < 2.0 * PI);
        let cone = area::solid_angle_trihedral(Angle(a), Angle(b), Angle(c)).unwrap();
        let t = &triangle::solve(&SolveRequest::from_slots([Some(a), Some(b), Some(c), None, None, None])).unwrap()[0];
        let [x, y, z] = t.angles();
        prop_assert!((cone.steradians - area::girard_area(x, y, z).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn spherical_cevians_concur_in_tangents(
        t in prop::array::uniform3(0.15..0.9f64), jitter in prop::array::uniform3(-0.5..0.5f64),
    ) {
        let vertices: [ModelPoint; 3] = std::array::from_fn(|k| {
            ModelPoint::Sphere(point(t[k], k as f64 * 2.0 * PI / 3.0 + jitter[k]))
        });
        let cfg = CevianConfig::from_points(vertices, ModelPoint::Sphere(point(0.0, 0.0))).unwrap();
        let r: Vec<f64> = (0..3).map(|i| cfg.lengths[2 * i].tan() / cfg.lengths[2 * i + 1].tan()).collect();
        let gap = r[0] * r[1] * r[2] - (r[0] + r[1] + r[2] + 2.0);
        prop_assert!(gap.abs() < 1e-9 * r[0] * r[1] * r[2]);
    }
}

#[test]
fn spherical_pappus_sides_pass_through_their_points() {
    let carrier = SmallCircle::new(point(0.0, 0.0), Angle(40f64.to_radians())).unwrap();
    let pts = [[0.3, 0.1, 1.0], [1.0, 0.2, 0.1], [-0.4, 0.9, 0.5]]
        .map(|v| ModelPoint::Sphere(SpherePoint::normalized(v).unwrap()));
    let prob = InscribedTriangleProblem::new(Carrier::SmallCircle(carrier), pts).unwrap();
    let found = pappus_inscribed_triangle(&prob, &Tolerances::default()).unwrap();
    assert!(!found.is_empty());
    for t in &found {
        for i in 0..3 {
            let (j, k) = ((i + 1) % 3, (i + 2) % 3);
            assert!(collinearity_residual(&t.vertices[j], &t.vertices[k], &pts[i]) < 1e-9);
            let ModelPoint::Sphere(v) = t.vertices[i] else { unreachable!() };
            assert!(carrier.residual(&v).abs() < 1e-12);
        }
    }
}

#[test]
fn error_kinds_cover_the_exit_statuses() {
    let invalid = triangle::solve(&SolveRequest::from_slots([Some(1.0), None, None, None, None, None]));
    assert_eq!(invalid.unwrap_err().kind(), ErrorKind::Invalid);
    let none = triangle::solve(&SolveRequest::from_slots([Some(0.5), Some(0.5), Some(2.0), None, None, None]));
    assert_eq!(none.unwrap_err().kind(), ErrorKind::NoSolution);
    let p = point(0.5, 0.5);
    let degenerate = lexell::lexell_circle(&p, &p, 1.0, &Tolerances::default());
    assert_eq!(degenerate.unwrap_err().kind(), ErrorKind::Degenerate);
    let hyper = Geometry::Hyperbolic.origin();
    assert!(matches!(hyper, ModelPoint::Hyperboloid(_)));
}
