//! Raw spatial input records.

use crate::geo::GeoPoint;
use crate::label::PoiLabel;
use alloc::string::String;

/// One point of interest as captured from a map export.
#[derive(Debug, Clone, PartialEq)]
pub struct PoiRecord {
    pub location: GeoPoint,
    pub name: String,
    pub label: PoiLabel,
    pub city: String,
    pub area: String,
    pub address: String,
}

/// One bus-trajectory fix for one passenger.
///
/// `up_time` is seconds since the Unix epoch, naive local time.
#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryRecord {
    pub uid: String,
    pub location: GeoPoint,
    pub up_time: i64,
}
