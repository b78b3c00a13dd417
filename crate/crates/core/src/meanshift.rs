//! Mean-Shift mode seeking over POI locations.
//!
//! Every input point hill-climbs toward the local density mode; modes closer
//! than `merge_radius_m` are merged. The resulting seed set supplies the
//! cluster count K and the initial centers for the seeded k-means stage.
//!
//! Kernel distances use the great-circle metric; shifts are applied in a
//! local tangent frame (meters east/north converted back to degrees at the
//! current latitude).

use crate::error::{Error, Result};
use crate::geo::{apply_offset_m, enu_offset_m, haversine_m, GeoPoint};
use crate::label::PoiLabel;
use alloc::vec::Vec;

/// Kernel profile for the shift vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kernel {
    /// Unweighted mean of all points strictly inside the bandwidth sphere.
    Flat,
    /// Gaussian profile `exp(-(d/h)^2 / 2)` over all points.
    Gaussian,
}

#[derive(Debug, Clone, Copy)]
pub struct MeanShiftConfig {
    /// Window radius h, meters.
    pub bandwidth_m: f64,
    /// Convergence threshold on the shift magnitude, meters.
    pub epsilon_m: f64,
    pub kernel: Kernel,
    pub max_iter: usize,
    /// Modes closer than this are merged into one seed.
    pub merge_radius_m: f64,
}

impl Default for MeanShiftConfig {
    fn default() -> Self {
        // h matches the 500 m life-circle radius; merge radius h/2.
        MeanShiftConfig {
            bandwidth_m: 500.0,
            epsilon_m: 1.0,
            kernel: Kernel::Flat,
            max_iter: 300,
            merge_radius_m: 250.0,
        }
    }
}

impl MeanShiftConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.bandwidth_m > 0.0) {
            return Err(Error::Config("bandwidth_m must be > 0".into()));
        }
        if !(self.epsilon_m > 0.0) {
            return Err(Error::Config("epsilon_m must be > 0".into()));
        }
        if self.max_iter < 1 {
            return Err(Error::Config("max_iter must be >= 1".into()));
        }
        if !(self.merge_radius_m >= 0.0) {
            return Err(Error::Config("merge_radius_m must be >= 0".into()));
        }
        Ok(())
    }
}

/// Output of mode seeking: one seed per surviving mode.
#[derive(Debug, Clone, PartialEq)]
pub struct SeedSet {
    pub seeds: Vec<GeoPoint>,
    /// Number of input points that converged to each seed.
    pub member_count: Vec<usize>,
    pub source_label: Option<PoiLabel>,
}

impl SeedSet {
    pub fn len(&self) -> usize {
        self.seeds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seeds.is_empty()
    }

    /// Merge several per-label seed sets into one pooled set. Seeds closer
    /// than `merge_radius_m` collapse to their member-count-weighted mean.
    pub fn merge_all(sets: &[SeedSet], merge_radius_m: f64) -> SeedSet {
        let mut merged = SeedSet {
            seeds: Vec::new(),
            member_count: Vec::new(),
            source_label: None,
        };
        for set in sets {
            for (seed, count) in set.seeds.iter().zip(&set.member_count) {
                absorb(&mut merged, *seed, *count, merge_radius_m);
            }
        }
        merged
    }
}

fn absorb(set: &mut SeedSet, mode: GeoPoint, count: usize, merge_radius_m: f64) {
    for (i, existing) in set.seeds.iter().enumerate() {
        if haversine_m(*existing, mode) < merge_radius_m {
            let total = set.member_count[i] + count;
            let (e, n) = enu_offset_m(*existing, mode);
            let w = count as f64 / total as f64;
            set.seeds[i] = apply_offset_m(*existing, e * w, n * w);
            set.member_count[i] = total;
            return;
        }
    }
    set.seeds.push(mode);
    set.member_count.push(count);
}

/// Shift vector at `x`: `(meters east, meters north)` toward the local
/// density maximum.
pub fn mean_shift_vector(
    x: GeoPoint,
    points: &[GeoPoint],
    config: &MeanShiftConfig,
) -> Result<(f64, f64)> {
    match config.kernel {
        Kernel::Flat => {
            let mut sum_e = 0.0;
            let mut sum_n = 0.0;
            let mut count = 0usize;
            for p in points {
                if haversine_m(x, *p) < config.bandwidth_m {
                    let (e, n) = enu_offset_m(x, *p);
                    sum_e += e;
                    sum_n += n;
                    count += 1;
                }
            }
            if count == 0 {
                return Err(Error::IsolatedPoint);
            }
            Ok((sum_e / count as f64, sum_n / count as f64))
        }
        Kernel::Gaussian => {
            if points.is_empty() {
                return Err(Error::EmptyInput);
            }
            let mut sum_e = 0.0;
            let mut sum_n = 0.0;
            let mut sum_w = 0.0;
            for p in points {
                let d = haversine_m(x, *p) / config.bandwidth_m;
                let w = libm::exp(-0.5 * d * d);
                let (e, n) = enu_offset_m(x, *p);
                sum_e += w * e;
                sum_n += w * n;
                sum_w += w;
            }
            if sum_w == 0.0 {
                // All weights underflowed; treat as isolated.
                return Err(Error::IsolatedPoint);
            }
            Ok((sum_e / sum_w, sum_n / sum_w))
        }
    }
}

fn climb(start: GeoPoint, points: &[GeoPoint], config: &MeanShiftConfig) -> GeoPoint {
    let mut x = start;
    for _ in 0..config.max_iter {
        let (e, n) = match mean_shift_vector(x, points, config) {
            Ok(v) => v,
            // An isolated start is its own mode.
            Err(_) => return x,
        };
        x = apply_offset_m(x, e, n);
        if libm::sqrt(e * e + n * n) < config.epsilon_m {
            break;
        }
    }
    x
}

/// Run mode seeking from every input point and merge nearby modes.
///
/// Deterministic: points are visited in input order and merging is a
/// sequential post-pass. Merged seed locations are re-converged so every
/// returned seed satisfies the fixed-point condition `|shift| < epsilon`.
pub fn mean_shift_cluster(points: &[GeoPoint], config: &MeanShiftConfig) -> Result<SeedSet> {
    config.validate()?;
    if points.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut set = SeedSet {
        seeds: Vec::new(),
        member_count: Vec::new(),
        source_label: None,
    };
    for p in points {
        let mode = climb(*p, points, config);
        absorb(&mut set, mode, 1, config.merge_radius_m);
    }
    // Weighted merging can nudge a seed off its mode; polish each one.
    for seed in set.seeds.iter_mut() {
        *seed = climb(*seed, points, config);
    }
    debug_assert_eq!(set.member_count.iter().sum::<usize>(), points.len());
    Ok(set)
}
