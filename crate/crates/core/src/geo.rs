//! Great-circle navigation on a spherical Earth.
//!
//! Distances and bearings come from the pole triangle: the two colatitudes
//! are sides and the longitude difference is the angle between them at the
//! pole.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sphere::{Angle, SpherePoint, Tolerances};
use crate::triangle::cosine_rule_side;
use crate::vec3;

/// Mean Earth radius used by the command line.
pub const EARTH_RADIUS_KM: f64 = 6371.0;

/// Central angles below this are recomputed from the chord.
const CHORD_SWITCH: f64 = 1e-6;

/// Latitude in `[−π/2, π/2]` and longitude in `(−π, π]`, both in radians.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeoCoordinate {
    pub latitude: f64,
    pub longitude: f64,
}

impl GeoCoordinate {
    pub fn new(latitude: f64, longitude: f64) -> Result<Self> {
        let c = GeoCoordinate { latitude, longitude };
        c.validate()?;
        Ok(c)
    }

    pub fn from_degrees(latitude: f64, longitude: f64) -> Result<Self> {
        Self::new(latitude.to_radians(), longitude.to_radians())
    }

    pub fn validate(&self) -> Result<()> {
        let lat_ok = (-FRAC_PI_2..=FRAC_PI_2).contains(&self.latitude);
        let lon_ok = self.longitude > -PI && self.longitude <= PI;
        if lat_ok && lon_ok {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!(
                "coordinate ({}, {}) outside latitude [−π/2, π/2] × longitude (−π, π]",
                self.latitude, self.longitude
            )))
        }
    }

    pub fn colatitude(&self) -> f64 {
        FRAC_PI_2 - self.latitude
    }

    pub fn to_sphere_point(&self) -> SpherePoint {
        let (sp, cp) = self.latitude.sin_cos();
        let (sl, cl) = self.longitude.sin_cos();
        SpherePoint::normalized([cp * cl, cp * sl, sp]).expect("unit vector")
    }
}

/// Longitude difference folded into `[0, π]`.
fn delta_longitude(p: &GeoCoordinate, q: &GeoCoordinate) -> f64 {
    let d = (q.longitude - p.longitude).abs();
    if d > PI {
        TAU - d
    } else {
        d
    }
}

/// Central angle and length of the shorter great-circle arc.
pub fn geodesic_distance(
    p: &GeoCoordinate,
    q: &GeoCoordinate,
    radius_km: f64,
) -> Result<(Angle, f64)> {
    p.validate()?;
    q.validate()?;
    if !(radius_km.is_finite() && radius_km > 0.0) {
        return Err(Error::InvalidInput(format!(
            "radius {radius_km} must be positive"
        )));
    }
    let mut c = cosine_rule_side(p.colatitude(), q.colatitude(), delta_longitude(p, q));
    if c < CHORD_SWITCH {
        let chord = vec3::norm(vec3::sub(
            p.to_sphere_point().to_array(),
            q.to_sphere_point().to_array(),
        ));
        c = 2.0 * (0.5 * chord).asin();
    }
    Ok((Angle(c), radius_km * c))
}

/// Departure azimuth at `p` towards `q`, clockwise from north, in `[0, 2π)`.
pub fn initial_bearing(p: &GeoCoordinate, q: &GeoCoordinate) -> Result<Angle> {
    p.validate()?;
    q.validate()?;
    let eps = Tolerances::default().abs_eps;
    if p.latitude.cos() <= eps {
        return Err(Error::DegenerateInput("bearing is undefined at a pole".into()));
    }
    let c = geodesic_distance(p, q, 1.0)?.0 .0;
    if c <= eps || c >= PI - eps {
        return Err(Error::DegenerateInput(
            "bearing is undefined between coincident or antipodal points".into(),
        ));
    }
    // angle at p of the pole triangle, by the four-part cotangent rule
    let dl = q.longitude - p.longitude;
    let (sp, cp) = p.latitude.sin_cos();
    let (sq, cq) = q.latitude.sin_cos();
    let y = dl.sin() * cq;
    let x = cp * sq - sp * cq * dl.cos();
    Ok(Angle(y.atan2(x).rem_euclid(TAU)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sphere::angular_distance;
    use proptest::prelude::*;

    fn deg(lat: f64, lon: f64) -> GeoCoordinate {
        GeoCoordinate::from_degrees(lat, lon).unwrap()
    }

    /// Point reached from `p` by heading `bearing` for arc `d`.
    fn walk(p: &GeoCoordinate, bearing: f64, d: f64) -> [f64; 3] {
        let (sp, cp) = p.latitude.sin_cos();
        let (sl, cl) = p.longitude.sin_cos();
        let north = [-sp * cl, -sp * sl, cp];
        let east = [-sl, cl, 0.0];
        let t = vec3::add(vec3::scale(north, bearing.cos()), vec3::scale(east, bearing.sin()));
        vec3::add(vec3::scale(p.to_sphere_point().to_array(), d.cos()), vec3::scale(t, d.sin()))
    }

    #[test]
    fn reference_distances() {
        let (a, km) = geodesic_distance(&deg(0.0, 0.0), &deg(0.0, 90.0), 6371.0).unwrap();
        assert!((a.0 - FRAC_PI_2).abs() < 1e-15);
        assert!((km - 10007.543).abs() < 1e-3);
        let (a, km) = geodesic_distance(&deg(30.0, 40.0), &deg(-30.0, -140.0), 6371.0).unwrap();
        assert!((a.0 - PI).abs() < 1e-12);
        assert!((km - 20015.087).abs() < 1e-3);
        let (a, km) = geodesic_distance(&deg(12.0, 7.0), &deg(12.0, 7.0), 6371.0).unwrap();
        assert_eq!((a.0, km), (0.0, 0.0));
    }

    #[test]
    fn reference_bearings() {
        let b = initial_bearing(&deg(0.0, 0.0), &deg(0.0, 90.0)).unwrap();
        assert!((b.0 - FRAC_PI_2).abs() < 1e-15);
        let b = initial_bearing(&deg(0.0, 0.0), &deg(10.0, 0.0)).unwrap();
        assert!(b.0.abs() < 1e-15);
        let b = initial_bearing(&deg(0.0, 0.0), &deg(-10.0, 0.0)).unwrap();
        assert!((b.0 - PI).abs() < 1e-15);
        let b = initial_bearing(&deg(0.0, 0.0), &deg(0.0, -90.0)).unwrap();
        assert!((b.0 - 1.5 * PI).abs() < 1e-15);
    }

    #[test]
    fn bearing_errors() {
        let pole = deg(90.0, 0.0);
        assert!(matches!(initial_bearing(&pole, &deg(0.0, 0.0)), Err(Error::DegenerateInput(_))));
        let p = deg(20.0, 30.0);
        assert!(matches!(initial_bearing(&p, &p), Err(Error::DegenerateInput(_))));
        assert!(matches!(
            initial_bearing(&p, &deg(-20.0, -150.0)),
            Err(Error::DegenerateInput(_))
        ));
        assert!(GeoCoordinate::new(2.0, 0.0).is_err());
        assert!(GeoCoordinate::new(0.0, -PI).is_err());
        assert!(geodesic_distance(&p, &p, 0.0).is_err());
    }

    #[test]
    fn close_points_use_the_chord() {
        let p = deg(45.0, 10.0);
        let q = GeoCoordinate::new(p.latitude + 1e-9, p.longitude).unwrap();
        let (a, _) = geodesic_distance(&p, &q, 1.0).unwrap();
        assert!((a.0 - 1e-9).abs() < 1e-15);
    }

    fn coord() -> impl Strategy<Value = GeoCoordinate> {
        (-FRAC_PI_2..=FRAC_PI_2, -PI + 1e-12..=PI)
            .prop_map(|(lat, lon)| GeoCoordinate::new(lat, lon).unwrap())
    }

    proptest! {
        #[test]
        fn distance_is_symmetric(p in coord(), q in coord()) {
            prop_assert_eq!(
                geodesic_distance(&p, &q, 6371.0).unwrap(),
                geodesic_distance(&q, &p, 6371.0).unwrap()
            );
        }

        #[test]
        fn triangle_inequality(p in coord(), q in coord(), r in coord()) {
            let d = |a: &GeoCoordinate, b: &GeoCoordinate| geodesic_distance(a, b, 1.0).unwrap().0.0;
            prop_assert!(d(&p, &r) <= d(&p, &q) + d(&q, &r) + 1e-12);
        }

        #[test]
        fn agrees_with_unit_vectors(p in coord(), q in coord()) {
            let a = geodesic_distance(&p, &q, 1.0).unwrap().0;
            let b = angular_distance(&p.to_sphere_point(), &q.to_sphere_point());
            // acos near 0 and π loses digits; compare away from there
            prop_assume!(b.0 > 1e-4 && b.0 < PI - 1e-4);
            prop_assert!((a.0 - b.0).abs() < 1e-12);
        }

        #[test]
        fn walking_the_bearing_arrives(p in coord(), q in coord()) {
            prop_assume!(p.latitude.abs() < 1.5);
            let d = geodesic_distance(&p, &q, 1.0).unwrap().0.0;
            prop_assume!(d > 1e-6 && d < PI - 1e-6);
            let b = initial_bearing(&p, &q).unwrap();
            let end = walk(&p, b.0, d);
            let miss = vec3::norm(vec3::sub(end, q.to_sphere_point().to_array()));
            prop_assert!(miss < 1e-9, "miss {}", miss);
        }
    }
}
