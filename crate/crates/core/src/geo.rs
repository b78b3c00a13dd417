//! Coordinate type and great-circle distance.
//!
//! All distances in this codebase are meters; degrees are never used as a
//! distance. Centroid-style arithmetic happens in a local tangent frame
//! (meters east / meters north of an origin), which is accurate at city
//! scale.

use crate::error::{Error, Result};

/// Mean Earth radius, meters. Spherical model; the sub-0.5% ellipsoid error
/// is negligible at 500 m life-circle scale.
pub const EARTH_RADIUS_M: f64 = 6_371_000.0;

const DEG_TO_RAD: f64 = core::f64::consts::PI / 180.0;
const RAD_TO_DEG: f64 = 180.0 / core::f64::consts::PI;

/// A WGS-style longitude/latitude pair in degrees.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeoPoint {
    pub lng: f64,
    pub lat: f64,
}

impl GeoPoint {
    /// Validating constructor: both coordinates finite and in range.
    pub fn new(lng: f64, lat: f64) -> Result<Self> {
        if !lng.is_finite() || !lat.is_finite() || libm::fabs(lng) > 180.0 || libm::fabs(lat) > 90.0
        {
            return Err(Error::InvalidCoordinate { lng, lat });
        }
        Ok(GeoPoint { lng, lat })
    }
}

/// Great-circle distance in meters between two points (haversine formula).
pub fn haversine_m(a: GeoPoint, b: GeoPoint) -> f64 {
    let lat_a = a.lat * DEG_TO_RAD;
    let lat_b = b.lat * DEG_TO_RAD;
    let half_dlat = libm::sin((b.lat - a.lat) * DEG_TO_RAD * 0.5);
    let half_dlng = libm::sin((b.lng - a.lng) * DEG_TO_RAD * 0.5);
    let h = half_dlat * half_dlat + libm::cos(lat_a) * libm::cos(lat_b) * half_dlng * half_dlng;
    // Clamp guards rounding excursions above 1 for near-antipodal pairs.
    let h = if h > 1.0 { 1.0 } else { h };
    2.0 * EARTH_RADIUS_M * libm::asin(libm::sqrt(h))
}

/// Offset of `p` relative to `origin` in the tangent frame at `origin`:
/// `(meters east, meters north)`.
pub fn enu_offset_m(origin: GeoPoint, p: GeoPoint) -> (f64, f64) {
    let east = (p.lng - origin.lng) * DEG_TO_RAD * EARTH_RADIUS_M * libm::cos(origin.lat * DEG_TO_RAD);
    let north = (p.lat - origin.lat) * DEG_TO_RAD * EARTH_RADIUS_M;
    (east, north)
}

/// Move `origin` by `(east, north)` meters, converting back to degrees at
/// the origin latitude.
pub fn apply_offset_m(origin: GeoPoint, east: f64, north: f64) -> GeoPoint {
    let lat = origin.lat + north / EARTH_RADIUS_M * RAD_TO_DEG;
    let lng =
        origin.lng + east / (EARTH_RADIUS_M * libm::cos(origin.lat * DEG_TO_RAD)) * RAD_TO_DEG;
    GeoPoint { lng, lat }
}
