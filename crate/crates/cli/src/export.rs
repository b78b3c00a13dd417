//! CSV emission for every pipeline artifact, plus the readers needed to
//! consume them back.
//!
//! All writers go through [`atomic_write`]: content is written to a
//! temporary file in the target directory and renamed into place, so a
//! failed stage never leaves a partial file behind.

use crate::error::{CliError, CliResult};
use crate::synth::TrueProfile;
use chrono::DateTime;
use lifecircle_core::kmeans::ClusterModel;
use lifecircle_core::label::{PoiLabel, ALL_LABELS};
use lifecircle_core::meanshift::SeedSet;
use lifecircle_core::metrics::PredictionReport;
use lifecircle_core::pattern::{TravelPatternMatrix, N_LABELS};
use lifecircle_core::plda::{AttributeProfile, LdaModel, ALL_ATTRIBUTES};
use lifecircle_core::records::{PoiRecord, TrajectoryRecord};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

/// Write `content` to `path` via a temp file + rename in the same
/// directory.
pub fn atomic_write(path: &Path, content: &str) -> CliResult<()> {
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let file_name = path
        .file_name()
        .ok_or_else(|| CliError::Input(format!("not a file path: {}", path.display())))?;
    let tmp = dir.join(format!(".{}.tmp", file_name.to_string_lossy()));
    fs::write(&tmp, content).map_err(|e| CliError::io(&tmp, e))?;
    fs::rename(&tmp, path).map_err(|e| CliError::io(path, e))?;
    Ok(())
}

fn label_header() -> String {
    ALL_LABELS
        .iter()
        .map(|l| l.as_str())
        .collect::<Vec<_>>()
        .join(",")
}

/// `label,lng,lat,member_count`, one row per seed across all sets.
pub fn write_seeds_csv(path: &Path, sets: &[SeedSet]) -> CliResult<()> {
    let mut out = String::from("label,lng,lat,member_count\n");
    for set in sets {
        let label = set.source_label.map_or("pooled", |l| l.as_str());
        for (seed, count) in set.seeds.iter().zip(&set.member_count) {
            writeln!(out, "{label},{},{},{count}", seed.lng, seed.lat).expect("string write");
        }
    }
    atomic_write(path, &out)
}

/// Read seeds back into one [`SeedSet`] per distinct label, file order.
pub fn read_seeds_csv(path: &Path) -> CliResult<Vec<SeedSet>> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let mut sets: Vec<SeedSet> = Vec::new();
    for row in reader.records() {
        let row = row.map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        let bad = || CliError::Input(format!("{}: malformed seed row", path.display()));
        let label_s = row.get(0).ok_or_else(bad)?;
        let label = if label_s == "pooled" {
            None
        } else {
            Some(PoiLabel::parse(label_s)?)
        };
        let lng: f64 = row.get(1).ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let lat: f64 = row.get(2).ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let count: usize = row.get(3).ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let point = lifecircle_core::geo::GeoPoint::new(lng, lat)?;
        match sets.last_mut() {
            Some(set) if set.source_label == label => {
                set.seeds.push(point);
                set.member_count.push(count);
            }
            _ => sets.push(SeedSet {
                seeds: vec![point],
                member_count: vec![count],
                source_label: label,
            }),
        }
    }
    Ok(sets)
}

/// `k,lng,lat,n_k`, one row per cluster.
pub fn write_centers_csv(path: &Path, model: &ClusterModel) -> CliResult<()> {
    let mut out = String::from("k,lng,lat,n_k\n");
    let sizes = model.cluster_sizes();
    for (k, (center, n_k)) in model.centers.iter().zip(&sizes).enumerate() {
        writeln!(out, "{k},{},{},{n_k}", center.lng, center.lat).expect("string write");
    }
    atomic_write(path, &out)
}

/// `point_index,cluster`, one row per input point.
pub fn write_assignments_csv(path: &Path, assignments: &[usize]) -> CliResult<()> {
    let mut out = String::from("point_index,cluster\n");
    for (i, a) in assignments.iter().enumerate() {
        writeln!(out, "{i},{a}").expect("string write");
    }
    atomic_write(path, &out)
}

/// One K-sweep evaluation row.
#[derive(Debug, Clone, PartialEq)]
pub struct KSweepRow {
    pub k: usize,
    pub silhouette: f64,
    pub calinski_harabasz: f64,
    pub davies_bouldin: f64,
    pub seeded: bool,
}

/// `k,silhouette,calinski_harabasz,davies_bouldin,seeded`.
pub fn write_ksweep_csv(path: &Path, rows: &[KSweepRow]) -> CliResult<()> {
    let mut out = String::from("k,silhouette,calinski_harabasz,davies_bouldin,seeded\n");
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{}",
            r.k, r.silhouette, r.calinski_harabasz, r.davies_bouldin, r.seeded
        )
        .expect("string write");
    }
    atomic_write(path, &out)
}

/// `uid,<17 label columns>`, one integer row per passenger.
pub fn write_matrix_csv(path: &Path, matrix: &TravelPatternMatrix) -> CliResult<()> {
    let mut out = format!("uid,{}\n", label_header());
    for (uid, row) in matrix.passengers.iter().zip(&matrix.rows) {
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        writeln!(out, "{uid},{}", cells.join(",")).expect("string write");
    }
    atomic_write(path, &out)
}

/// Read a pattern matrix back; `row_total` is taken from the first row.
pub fn read_matrix_csv(path: &Path) -> CliResult<TravelPatternMatrix> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let headers = reader
        .headers()
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?
        .clone();
    let expected = format!("uid,{}", label_header());
    if headers.iter().collect::<Vec<_>>().join(",") != expected {
        return Err(CliError::Input(format!(
            "{}: unexpected matrix header",
            path.display()
        )));
    }
    let mut matrix = TravelPatternMatrix::new(0);
    for record in reader.records() {
        let record = record.map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        let bad = || CliError::Input(format!("{}: malformed matrix row", path.display()));
        let uid = record.get(0).ok_or_else(bad)?.to_string();
        let mut row = [0u32; N_LABELS];
        for (i, cell) in row.iter_mut().enumerate() {
            *cell = record
                .get(i + 1)
                .ok_or_else(bad)?
                .parse()
                .map_err(|_| bad())?;
        }
        if matrix.is_empty() {
            matrix = TravelPatternMatrix::new(row.iter().sum());
        }
        matrix.push(uid, row);
    }
    Ok(matrix)
}

/// `uid,class_0..class_{k-1}`, per-passenger class proportions.
pub fn write_theta_csv(path: &Path, model: &LdaModel) -> CliResult<()> {
    let classes: Vec<String> = (0..model.k).map(|c| format!("class_{c}")).collect();
    let mut out = format!("uid,{}\n", classes.join(","));
    for (uid, theta) in model.doc_ids.iter().zip(&model.theta) {
        let cells: Vec<String> = theta.iter().map(|v| v.to_string()).collect();
        writeln!(out, "{uid},{}", cells.join(",")).expect("string write");
    }
    atomic_write(path, &out)
}

/// `class,label,weight`, long-format per-class label weights.
pub fn write_phi_csv(path: &Path, model: &LdaModel, class_names: &[String]) -> CliResult<()> {
    let mut out = String::from("class,label,weight\n");
    for (name, row) in class_names.iter().zip(&model.phi) {
        for (label, w) in model.vocab.iter().zip(row) {
            writeln!(out, "{name},{label},{w}").expect("string write");
        }
    }
    atomic_write(path, &out)
}

/// `uid,age_class,...,personality_class`; blank cell where the attribute
/// model dropped the passenger.
pub fn write_profile_csv(path: &Path, profiles: &[AttributeProfile]) -> CliResult<()> {
    let cols: Vec<String> = ALL_ATTRIBUTES
        .iter()
        .map(|a| format!("{a}_class"))
        .collect();
    let mut out = format!("uid,{}\n", cols.join(","));
    for p in profiles {
        let mut cells = Vec::with_capacity(ALL_ATTRIBUTES.len());
        for attr in ALL_ATTRIBUTES {
            let cell = p
                .entries
                .iter()
                .find(|e| e.attribute == attr)
                .map(|e| e.class_name.clone())
                .unwrap_or_default();
            cells.push(cell);
        }
        writeln!(out, "{},{}", p.uid, cells.join(",")).expect("string write");
    }
    atomic_write(path, &out)
}

/// POI CSV in the ingest format.
pub fn write_poi_csv(path: &Path, pois: &[PoiRecord]) -> CliResult<()> {
    let mut out = String::from("lat,lng,name,label,city,area,address\n");
    for p in pois {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            p.location.lat, p.location.lng, p.name, p.label, p.city, p.area, p.address
        )
        .expect("string write");
    }
    atomic_write(path, &out)
}

/// Trajectory CSV in the ingest format (`2018/2/1 11:23:56` style stamps).
pub fn write_trajectory_csv(path: &Path, records: &[TrajectoryRecord]) -> CliResult<()> {
    let mut out = String::from("uid,lng,lat,up_time\n");
    for r in records {
        let t = DateTime::from_timestamp(r.up_time, 0)
            .ok_or_else(|| CliError::Numerical(format!("timestamp out of range: {}", r.up_time)))?
            .naive_utc();
        writeln!(
            out,
            "{},{},{},{}",
            r.uid,
            r.location.lng,
            r.location.lat,
            t.format("%Y/%-m/%-d %H:%M:%S")
        )
        .expect("string write");
    }
    atomic_write(path, &out)
}

/// `uid,age,occupation,gender,health,economic,safety,personality` with the
/// planted class names.
pub fn write_ground_truth_csv(path: &Path, profiles: &[TrueProfile]) -> CliResult<()> {
    let cols: Vec<&str> = ALL_ATTRIBUTES.iter().map(|a| a.as_str()).collect();
    let mut out = format!("uid,{}\n", cols.join(","));
    for p in profiles {
        let cells: Vec<String> = p
            .classes
            .iter()
            .enumerate()
            .map(|(i, &c)| crate::synth::class_name(i, c))
            .collect();
        writeln!(out, "{},{}", p.uid, cells.join(",")).expect("string write");
    }
    atomic_write(path, &out)
}

/// Ground truth as `uid -> class names per attribute` in `ALL_ATTRIBUTES`
/// order.
pub fn read_ground_truth_csv(path: &Path) -> CliResult<BTreeMap<String, [String; 7]>> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let headers = reader
        .headers()
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?
        .clone();
    let lower: Vec<String> = headers.iter().map(|h| h.to_ascii_lowercase()).collect();
    let uid_idx = lower
        .iter()
        .position(|h| h == "uid")
        .ok_or_else(|| CliError::Input(format!("{}: missing uid column", path.display())))?;
    let attr_idx: Vec<usize> = ALL_ATTRIBUTES
        .iter()
        .map(|a| {
            lower.iter().position(|h| h == a.as_str()).ok_or_else(|| {
                CliError::Input(format!("{}: missing column `{a}`", path.display()))
            })
        })
        .collect::<CliResult<_>>()?;
    let mut truth = BTreeMap::new();
    for record in reader.records() {
        let record = record.map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        let bad = || CliError::Input(format!("{}: malformed ground truth row", path.display()));
        let uid = record.get(uid_idx).ok_or_else(bad)?.to_string();
        let mut classes: [String; 7] = Default::default();
        for (slot, &i) in classes.iter_mut().zip(&attr_idx) {
            *slot = record.get(i).ok_or_else(bad)?.to_string();
        }
        truth.insert(uid, classes);
    }
    Ok(truth)
}

/// One evaluation row: an attribute name (or "macro") plus its report.
pub fn write_prediction_csv(
    path: &Path,
    rows: &[(String, PredictionReport)],
) -> CliResult<()> {
    let mut out = String::from("attribute,recall,precision,f1,mae\n");
    for (name, r) in rows {
        writeln!(out, "{name},{},{},{},{}", r.recall, r.precision, r.f1, r.mae)
            .expect("string write");
    }
    atomic_write(path, &out)
}
