//! Distance-weighted POI mass per life circle and the per-passenger
//! travel-pattern matrix.
//!
//! Each POI of label `t` at distance `dis < DIS` from a circle center
//! contributes `1 - dis/DIS` to that circle's mass for `t`. Circle masses
//! are normalized to proportions, combined across a passenger's circles
//! weighted by `sqrt(N_k)`, and finally rescaled to a fixed integer row
//! total so the rows can feed collapsed Gibbs sampling directly.

use crate::error::{Error, Result};
use crate::geo::haversine_m;
use crate::kmeans::LifeCircle;
use crate::label::{PoiLabel, ALL_LABELS};
use crate::records::PoiRecord;
use alloc::string::String;
use alloc::vec::Vec;

pub const N_LABELS: usize = 17;

/// Per-cluster POI mass over the 17 labels.
#[derive(Debug, Clone, PartialEq)]
pub struct LabelMassVector {
    mass: [f64; N_LABELS],
}

impl LabelMassVector {
    pub fn zero() -> Self {
        LabelMassVector {
            mass: [0.0; N_LABELS],
        }
    }

    pub fn get(&self, label: PoiLabel) -> f64 {
        self.mass[label.index()]
    }

    pub fn set(&mut self, label: PoiLabel, value: f64) {
        self.mass[label.index()] = value;
    }

    pub fn total(&self) -> f64 {
        self.mass.iter().sum()
    }

    pub fn as_slice(&self) -> &[f64; N_LABELS] {
        &self.mass
    }

    pub fn iter(&self) -> impl Iterator<Item = (PoiLabel, f64)> + '_ {
        ALL_LABELS.iter().map(move |l| (*l, self.mass[l.index()]))
    }
}

/// Distance-decayed mass of every POI label inside the circle.
///
/// POIs at or beyond the radius contribute nothing (their weight would be
/// zero at the boundary anyway; the sphere is strict).
pub fn cluster_label_mass(circle: &LifeCircle, pois: &[PoiRecord]) -> LabelMassVector {
    let mut mass = LabelMassVector::zero();
    let dis_max = circle.radius_m;
    for poi in pois {
        let dis = haversine_m(circle.center, poi.location);
        if dis < dis_max {
            mass.mass[poi.label.index()] += 1.0 - dis / dis_max;
        }
    }
    mass
}

/// Rescale a mass vector to proportions summing to 1.
///
/// An all-zero vector signals an empty life circle; the caller drops that
/// circle from the passenger aggregation.
pub fn normalize_cluster(mass: &LabelMassVector) -> Result<LabelMassVector> {
    let total = mass.total();
    if total <= 0.0 {
        return Err(Error::EmptyLifeCircle);
    }
    let mut out = LabelMassVector::zero();
    for i in 0..N_LABELS {
        out.mass[i] = mass.mass[i] / total;
    }
    Ok(out)
}

/// Largest-remainder rounding of non-negative reals to integers summing to
/// exactly `total`. Remainder ties break toward the lower index.
pub fn largest_remainder(raw: &[f64; N_LABELS], total: u32) -> [u32; N_LABELS] {
    let sum: f64 = raw.iter().sum();
    debug_assert!(sum > 0.0);
    let mut floors = [0u32; N_LABELS];
    let mut remainders = [0.0f64; N_LABELS];
    let mut assigned = 0u32;
    for i in 0..N_LABELS {
        let scaled = raw[i] / sum * total as f64;
        let fl = libm::floor(scaled);
        floors[i] = fl as u32;
        remainders[i] = scaled - fl;
        assigned += floors[i];
    }
    let mut order: Vec<usize> = (0..N_LABELS).collect();
    order.sort_by(|&a, &b| {
        remainders[b]
            .partial_cmp(&remainders[a])
            .unwrap_or(core::cmp::Ordering::Equal)
            .then(a.cmp(&b))
    });
    let mut left = total - assigned;
    for &i in &order {
        if left == 0 {
            break;
        }
        floors[i] += 1;
        left -= 1;
    }
    floors
}

/// One travel-pattern row: normalized circle masses combined with
/// `sqrt(N_k)` weights, rescaled to an integer row summing to `row_total`.
///
/// Inputs must already be normalized ([`normalize_cluster`]); empty circles
/// must have been dropped upstream.
pub fn passenger_pattern(
    circles_with_mass: &[(LifeCircle, LabelMassVector)],
    row_total: u32,
) -> Result<[u32; N_LABELS]> {
    let mut raw = [0.0f64; N_LABELS];
    let mut any = false;
    for (circle, mass) in circles_with_mass {
        let weight = libm::sqrt(circle.n_k as f64);
        for i in 0..N_LABELS {
            raw[i] += mass.mass[i] * weight;
        }
        if mass.total() > 0.0 {
            any = true;
        }
    }
    if !any {
        return Err(Error::AllCirclesEmpty);
    }
    Ok(largest_remainder(&raw, row_total))
}

/// Integer pseudo-count matrix: one row per passenger over the 17 labels.
#[derive(Debug, Clone, PartialEq)]
pub struct TravelPatternMatrix {
    pub passengers: Vec<String>,
    pub rows: Vec<[u32; N_LABELS]>,
    pub row_total: u32,
}

impl TravelPatternMatrix {
    pub fn new(row_total: u32) -> Self {
        TravelPatternMatrix {
            passengers: Vec::new(),
            rows: Vec::new(),
            row_total,
        }
    }

    pub fn push(&mut self, uid: String, row: [u32; N_LABELS]) {
        debug_assert_eq!(row.iter().sum::<u32>(), self.row_total);
        self.passengers.push(uid);
        self.rows.push(row);
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn row_for(&self, uid: &str) -> Option<&[u32; N_LABELS]> {
        self.passengers
            .iter()
            .position(|p| p == uid)
            .map(|i| &self.rows[i])
    }
}
