//! CSV loading, validation, deduplication, and per-passenger partitioning.
//!
//! POI files carry the header `lat,lng,name,label,city,area,address` and
//! trajectory files `uid,lng,lat,up_time`, both order- and
//! case-insensitive. Rows with missing mandatory fields, excluded label
//! categories, or unparseable values are dropped and counted rather than
//! failing the whole load.

use crate::error::{CliError, CliResult};
use chrono::NaiveDateTime;
use lifecircle_core::geo::GeoPoint;
use lifecircle_core::label::PoiLabel;
use lifecircle_core::records::{PoiRecord, TrajectoryRecord};
use std::collections::{BTreeMap, HashSet};
use std::path::Path;

pub const TIME_FORMAT: &str = "%Y/%m/%d %H:%M:%S";

/// Why rows were dropped during a load.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct DropReport {
    /// Mandatory field empty.
    pub null_fields: usize,
    /// One of the four excluded label categories.
    pub excluded_label: usize,
    /// Unparseable coordinates, label, or timestamp.
    pub malformed: usize,
}

impl DropReport {
    pub fn total(&self) -> usize {
        self.null_fields + self.excluded_label + self.malformed
    }
}

fn header_index(headers: &csv::StringRecord, wanted: &[&str], path: &Path) -> CliResult<Vec<usize>> {
    let lower: Vec<String> = headers
        .iter()
        .map(|h| h.trim().to_ascii_lowercase())
        .collect();
    wanted
        .iter()
        .map(|w| {
            lower.iter().position(|h| h == w).ok_or_else(|| {
                CliError::Input(format!(
                    "{}: missing column `{w}` (found: {})",
                    path.display(),
                    lower.join(",")
                ))
            })
        })
        .collect()
}

fn open_reader(path: &Path) -> CliResult<csv::Reader<std::fs::File>> {
    csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Load a POI CSV. Returns retained records plus a drop report.
pub fn load_poi_csv(path: &Path) -> CliResult<(Vec<PoiRecord>, DropReport)> {
    let mut reader = open_reader(path)?;
    let headers = reader
        .headers()
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?
        .clone();
    let idx = header_index(
        &headers,
        &["lat", "lng", "name", "label", "city", "area", "address"],
        path,
    )?;

    let mut records = Vec::new();
    let mut report = DropReport::default();
    for row in reader.records() {
        let row = match row {
            Ok(r) => r,
            Err(_) => {
                report.malformed += 1;
                continue;
            }
        };
        let field = |i: usize| row.get(idx[i]).unwrap_or("").trim();
        let (lat_s, lng_s, name, label_s) = (field(0), field(1), field(2), field(3));
        if lat_s.is_empty() || lng_s.is_empty() || name.is_empty() || label_s.is_empty() {
            report.null_fields += 1;
            continue;
        }
        if PoiLabel::is_excluded_category(label_s) {
            report.excluded_label += 1;
            continue;
        }
        let label = match PoiLabel::parse(label_s) {
            Ok(l) => l,
            Err(_) => {
                report.malformed += 1;
                continue;
            }
        };
        let location = match (lng_s.parse::<f64>(), lat_s.parse::<f64>()) {
            (Ok(lng), Ok(lat)) => match GeoPoint::new(lng, lat) {
                Ok(p) => p,
                Err(_) => {
                    report.malformed += 1;
                    continue;
                }
            },
            _ => {
                report.malformed += 1;
                continue;
            }
        };
        records.push(PoiRecord {
            location,
            name: name.to_string(),
            label,
            city: field(4).to_string(),
            area: field(5).to_string(),
            address: field(6).to_string(),
        });
    }
    Ok((records, report))
}

/// Load a trajectory CSV. Returns retained records plus a drop report.
pub fn load_trajectory_csv(path: &Path) -> CliResult<(Vec<TrajectoryRecord>, DropReport)> {
    let mut reader = open_reader(path)?;
    let headers = reader
        .headers()
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?
        .clone();
    let idx = header_index(&headers, &["uid", "lng", "lat", "up_time"], path)?;

    let mut records = Vec::new();
    let mut report = DropReport::default();
    for row in reader.records() {
        let row = match row {
            Ok(r) => r,
            Err(_) => {
                report.malformed += 1;
                continue;
            }
        };
        let field = |i: usize| row.get(idx[i]).unwrap_or("").trim();
        let (uid, lng_s, lat_s, time_s) = (field(0), field(1), field(2), field(3));
        if uid.is_empty() || lng_s.is_empty() || lat_s.is_empty() || time_s.is_empty() {
            report.null_fields += 1;
            continue;
        }
        let location = match (lng_s.parse::<f64>(), lat_s.parse::<f64>()) {
            (Ok(lng), Ok(lat)) => match GeoPoint::new(lng, lat) {
                Ok(p) => p,
                Err(_) => {
                    report.malformed += 1;
                    continue;
                }
            },
            _ => {
                report.malformed += 1;
                continue;
            }
        };
        let up_time = match NaiveDateTime::parse_from_str(time_s, TIME_FORMAT) {
            Ok(t) => t.and_utc().timestamp(),
            Err(_) => {
                report.malformed += 1;
                continue;
            }
        };
        records.push(TrajectoryRecord {
            uid: uid.to_string(),
            location,
            up_time,
        });
    }
    Ok((records, report))
}

/// Collapse records identical in (name, lng, lat) with coordinates rounded
/// to 1e-6 degrees, keeping the first occurrence. Label is deliberately not
/// part of the key so cross-category repeats collapse; the first-seen label
/// wins.
pub fn dedup_poi(records: &[PoiRecord]) -> Vec<PoiRecord> {
    let mut seen: HashSet<(String, i64, i64)> = HashSet::new();
    let mut out = Vec::new();
    for r in records {
        let key = (
            r.name.clone(),
            (r.location.lng * 1e6).round() as i64,
            (r.location.lat * 1e6).round() as i64,
        );
        if seen.insert(key) {
            out.push(r.clone());
        }
    }
    out
}

/// Group trajectory records by uid, each list sorted ascending by up_time.
pub fn partition_by_uid(
    records: &[TrajectoryRecord],
) -> BTreeMap<String, Vec<TrajectoryRecord>> {
    let mut map: BTreeMap<String, Vec<TrajectoryRecord>> = BTreeMap::new();
    for r in records {
        map.entry(r.uid.clone()).or_default().push(r.clone());
    }
    for list in map.values_mut() {
        list.sort_by_key(|r| r.up_time);
    }
    map
}

/// Retain passengers with strictly more than `threshold` records.
pub fn filter_min_records(
    partition: BTreeMap<String, Vec<TrajectoryRecord>>,
    threshold: usize,
) -> BTreeMap<String, Vec<TrajectoryRecord>> {
    partition
        .into_iter()
        .filter(|(_, records)| records.len() > threshold)
        .collect()
}
