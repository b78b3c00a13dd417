//! Seeded k-means over trajectory points and life-circle construction.
//!
//! The seeded variant takes K and the initial centers directly from a
//! mean-shift [`SeedSet`]; the unseeded variant draws initial centers
//! uniformly at random from the input and serves as the baseline.

use crate::error::{Error, Result};
use crate::geo::{haversine_m, GeoPoint};
use crate::meanshift::SeedSet;
use crate::rng;
use alloc::vec;
use alloc::vec::Vec;

/// A fitted clustering.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterModel {
    pub k: usize,
    pub centers: Vec<GeoPoint>,
    /// Cluster index per input point, in input order.
    pub assignments: Vec<usize>,
    /// Sum of squared point-to-center distances, square meters.
    pub inertia: f64,
    pub n_iterations: usize,
}

impl ClusterModel {
    /// Number of points assigned to each cluster.
    pub fn cluster_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0usize; self.k];
        for &a in &self.assignments {
            sizes[a] += 1;
        }
        sizes
    }
}

/// A passenger activity zone: a disc around a trajectory-cluster centroid.
#[derive(Debug, Clone, PartialEq)]
pub struct LifeCircle {
    pub center: GeoPoint,
    pub radius_m: f64,
    /// Trajectory-point count of the cluster (N_k).
    pub n_k: usize,
}

/// Default life-circle radius: a 15 to 30 minute walk.
pub const LIFE_CIRCLE_RADIUS_M: f64 = 500.0;

/// Nearest center by great-circle distance; ties break toward the lowest
/// cluster index.
fn nearest_center(p: GeoPoint, centers: &[GeoPoint]) -> (usize, f64) {
    let mut best = 0usize;
    let mut best_d = f64::INFINITY;
    for (i, c) in centers.iter().enumerate() {
        let d = haversine_m(p, *c);
        if d < best_d {
            best_d = d;
            best = i;
        }
    }
    (best, best_d)
}

fn lloyd(
    points: &[GeoPoint],
    mut centers: Vec<GeoPoint>,
    epsilon_m: f64,
    max_iter: usize,
) -> ClusterModel {
    let k = centers.len();
    let n = points.len();
    let mut assignments = vec![usize::MAX; n];
    let mut n_iterations = 0usize;
    let mut prev_inertia = f64::INFINITY;

    for sweep in 0..max_iter.max(1) {
        n_iterations = sweep + 1;

        let mut changed = false;
        let mut sweep_inertia = 0.0;
        for (i, p) in points.iter().enumerate() {
            let (c, d) = nearest_center(*p, &centers);
            if assignments[i] != c {
                assignments[i] = c;
                changed = true;
            }
            sweep_inertia += d * d;
        }

        // Empty clusters are re-seeded to the point currently farthest from
        // its assigned center; each re-seeded point is claimed so two empty
        // clusters never grab the same point.
        let mut sizes = vec![0usize; k];
        for &a in &assignments {
            sizes[a] += 1;
        }
        let mut reseeded = false;
        for c in 0..k {
            if sizes[c] > 0 {
                continue;
            }
            let mut far_i = None;
            let mut far_d = -1.0;
            for (i, p) in points.iter().enumerate() {
                if sizes[assignments[i]] <= 1 {
                    continue; // do not empty another cluster
                }
                let d = haversine_m(*p, centers[assignments[i]]);
                if d > far_d {
                    far_d = d;
                    far_i = Some(i);
                }
            }
            if let Some(i) = far_i {
                sizes[assignments[i]] -= 1;
                assignments[i] = c;
                sizes[c] = 1;
                centers[c] = points[i];
                reseeded = true;
            }
        }

        if !reseeded {
            debug_assert!(
                sweep_inertia <= prev_inertia * (1.0 + 1e-9) + 1e-6,
                "inertia increased across a Lloyd sweep"
            );
            prev_inertia = sweep_inertia;
        } else {
            prev_inertia = f64::INFINITY;
        }

        // Update step: arithmetic mean of member coordinates. Valid at city
        // scale (< 1 degree extents).
        let mut sum_lng = vec![0.0f64; k];
        let mut sum_lat = vec![0.0f64; k];
        for (p, &a) in points.iter().zip(&assignments) {
            sum_lng[a] += p.lng;
            sum_lat[a] += p.lat;
        }
        let mut max_shift = 0.0f64;
        for c in 0..k {
            if sizes[c] == 0 {
                continue;
            }
            let new = GeoPoint {
                lng: sum_lng[c] / sizes[c] as f64,
                lat: sum_lat[c] / sizes[c] as f64,
            };
            max_shift = max_shift.max(haversine_m(centers[c], new));
            centers[c] = new;
        }

        let converged = (!changed && !reseeded && sweep > 0) || max_shift < epsilon_m;
        if converged {
            break;
        }
    }

    // Final assignment against the final centers, plus exact inertia.
    let mut inertia = 0.0;
    for (i, p) in points.iter().enumerate() {
        let (c, d) = nearest_center(*p, &centers);
        assignments[i] = c;
        inertia += d * d;
    }

    ClusterModel {
        k,
        centers,
        assignments,
        inertia,
        n_iterations,
    }
}

/// Lloyd iterations started from the given POI seeds. K = `seeds.len()`.
pub fn p_kmeans(
    points: &[GeoPoint],
    seeds: &SeedSet,
    epsilon_m: f64,
    max_iter: usize,
) -> Result<ClusterModel> {
    if seeds.is_empty() {
        return Err(Error::EmptyInput);
    }
    if seeds.len() > points.len() {
        return Err(Error::TooManySeeds {
            seeds: seeds.len(),
            points: points.len(),
        });
    }
    Ok(lloyd(points, seeds.seeds.clone(), epsilon_m, max_iter))
}

/// Baseline: same Lloyd loop with k centers drawn uniformly at random
/// (without replacement) from the input points.
pub fn unseeded_kmeans(
    points: &[GeoPoint],
    k: usize,
    epsilon_m: f64,
    max_iter: usize,
    rng_seed: u64,
) -> Result<ClusterModel> {
    if k == 0 {
        return Err(Error::Config("k must be >= 1".into()));
    }
    if k > points.len() {
        return Err(Error::TooManySeeds {
            seeds: k,
            points: points.len(),
        });
    }
    let mut rng = rng::seeded(rng_seed);
    let mut chosen: Vec<usize> = Vec::with_capacity(k);
    while chosen.len() < k {
        let i = rng::next_index(&mut rng, points.len());
        if !chosen.contains(&i) {
            chosen.push(i);
        }
    }
    let centers: Vec<GeoPoint> = chosen.iter().map(|&i| points[i]).collect();
    Ok(lloyd(points, centers, epsilon_m, max_iter))
}

/// One circle per non-empty cluster; `n_k` is the member count.
pub fn life_circles(model: &ClusterModel, radius_m: f64) -> Vec<LifeCircle> {
    let sizes = model.cluster_sizes();
    model
        .centers
        .iter()
        .zip(&sizes)
        .filter(|(_, &n_k)| n_k > 0)
        .map(|(center, &n_k)| LifeCircle {
            center: *center,
            radius_m,
            n_k,
        })
        .collect()
}
