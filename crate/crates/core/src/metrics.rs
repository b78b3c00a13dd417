//! Cluster validity indices and prediction metrics.
//!
//! Pairwise quantities (silhouette) use great-circle distances; centroid
//! quantities (Calinski-Harabasz, Davies-Bouldin) are computed in a local
//! tangent plane around the global centroid.

use crate::error::{Error, Result};
use crate::geo::{enu_offset_m, haversine_m, GeoPoint};
use alloc::vec;
use alloc::vec::Vec;

/// Validity indices for one clustering at one k.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClusterEvalReport {
    pub k: usize,
    pub silhouette: f64,
    pub calinski_harabasz: f64,
    pub davies_bouldin: f64,
}

/// Multiclass prediction quality over a held-out evaluation set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PredictionReport {
    /// Macro-averaged over classes.
    pub recall: f64,
    pub precision: f64,
    pub f1: f64,
    /// Mean absolute difference between theta rows and one-hot true-class
    /// vectors, averaged over passengers and classes.
    pub mae: f64,
}

fn check_clustering(points: &[GeoPoint], assignments: &[usize]) -> Result<usize> {
    if points.is_empty() || points.len() != assignments.len() {
        return Err(Error::EmptyInput);
    }
    let k = assignments.iter().max().map(|m| m + 1).unwrap_or(0);
    if k < 2 || k >= points.len() + 1 {
        return Err(Error::UndefinedIndex {
            k,
            n: points.len(),
        });
    }
    let mut sizes = vec![0usize; k];
    for &a in assignments {
        sizes[a] += 1;
    }
    if sizes.iter().any(|&s| s == 0) {
        return Err(Error::UndefinedIndex {
            k,
            n: points.len(),
        });
    }
    Ok(k)
}

/// Mean silhouette coefficient: `(b - a) / max(a, b)` per point, with `a`
/// the mean intra-cluster distance and `b` the smallest mean distance to
/// another cluster. Lone points of singleton clusters score 0.
pub fn silhouette(points: &[GeoPoint], assignments: &[usize]) -> Result<f64> {
    let k = check_clustering(points, assignments)?;
    let n = points.len();
    if k >= n {
        return Err(Error::UndefinedIndex { k, n });
    }
    let mut sizes = vec![0usize; k];
    for &a in assignments {
        sizes[a] += 1;
    }

    let mut total = 0.0;
    let mut sums = vec![0.0f64; k];
    for i in 0..n {
        if sizes[assignments[i]] == 1 {
            continue; // singleton contributes 0
        }
        for s in sums.iter_mut() {
            *s = 0.0;
        }
        for j in 0..n {
            if i != j {
                sums[assignments[j]] += haversine_m(points[i], points[j]);
            }
        }
        let own = assignments[i];
        let a = sums[own] / (sizes[own] - 1) as f64;
        let mut b = f64::INFINITY;
        for c in 0..k {
            if c != own && sizes[c] > 0 {
                b = b.min(sums[c] / sizes[c] as f64);
            }
        }
        let denom = a.max(b);
        if denom > 0.0 {
            total += (b - a) / denom;
        }
        // a == b == 0 (all points coincide): the point contributes 0.
    }
    Ok(total / n as f64)
}

/// Tangent-plane coordinates of every point around the global centroid,
/// plus per-cluster centroids in the same frame.
fn tangent_layout(
    points: &[GeoPoint],
    assignments: &[usize],
    k: usize,
) -> (Vec<(f64, f64)>, Vec<(f64, f64)>, Vec<usize>) {
    let n = points.len() as f64;
    let origin = GeoPoint {
        lng: points.iter().map(|p| p.lng).sum::<f64>() / n,
        lat: points.iter().map(|p| p.lat).sum::<f64>() / n,
    };
    let xy: Vec<(f64, f64)> = points.iter().map(|p| enu_offset_m(origin, *p)).collect();
    let mut sizes = vec![0usize; k];
    let mut centroids = vec![(0.0f64, 0.0f64); k];
    for (&(x, y), &a) in xy.iter().zip(assignments) {
        centroids[a].0 += x;
        centroids[a].1 += y;
        sizes[a] += 1;
    }
    for (c, &s) in centroids.iter_mut().zip(&sizes) {
        c.0 /= s as f64;
        c.1 /= s as f64;
    }
    (xy, centroids, sizes)
}

fn sq_dist(a: (f64, f64), b: (f64, f64)) -> f64 {
    let dx = a.0 - b.0;
    let dy = a.1 - b.1;
    dx * dx + dy * dy
}

/// Calinski-Harabasz index: `[B/(k-1)] / [W/(n-k)]` with B/W the
/// between/within sums of squared distances to centroids.
pub fn calinski_harabasz(points: &[GeoPoint], assignments: &[usize]) -> Result<f64> {
    let k = check_clustering(points, assignments)?;
    let n = points.len();
    if k >= n {
        return Err(Error::UndefinedIndex { k, n });
    }
    let (xy, centroids, sizes) = tangent_layout(points, assignments, k);
    let grand = {
        let mut gx = 0.0;
        let mut gy = 0.0;
        for &(x, y) in &xy {
            gx += x;
            gy += y;
        }
        (gx / n as f64, gy / n as f64)
    };
    let mut between = 0.0;
    for (c, &s) in centroids.iter().zip(&sizes) {
        between += s as f64 * sq_dist(*c, grand);
    }
    let mut within = 0.0;
    for (&p, &a) in xy.iter().zip(assignments) {
        within += sq_dist(p, centroids[a]);
    }
    if within == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok((between / (k - 1) as f64) / (within / (n - k) as f64))
}

/// Davies-Bouldin index: mean over clusters of `max_{j!=i} (s_i+s_j)/d_ij`
/// with `s` the mean member-to-centroid distance and `d` the centroid
/// separation. Lower is better.
pub fn davies_bouldin(points: &[GeoPoint], assignments: &[usize]) -> Result<f64> {
    let k = check_clustering(points, assignments)?;
    let (xy, centroids, sizes) = tangent_layout(points, assignments, k);
    let mut scatter = vec![0.0f64; k];
    for (&p, &a) in xy.iter().zip(assignments) {
        scatter[a] += libm::sqrt(sq_dist(p, centroids[a]));
    }
    for (s, &n_c) in scatter.iter_mut().zip(&sizes) {
        *s /= n_c as f64;
    }
    let mut total = 0.0;
    for i in 0..k {
        let mut worst = 0.0f64;
        for j in 0..k {
            if i == j {
                continue;
            }
            let d = libm::sqrt(sq_dist(centroids[i], centroids[j]));
            let r = if d > 0.0 {
                (scatter[i] + scatter[j]) / d
            } else {
                f64::INFINITY
            };
            worst = worst.max(r);
        }
        total += worst;
    }
    Ok(total / k as f64)
}

/// All three indices for one clustering.
pub fn cluster_eval(points: &[GeoPoint], assignments: &[usize]) -> Result<ClusterEvalReport> {
    let k = check_clustering(points, assignments)?;
    Ok(ClusterEvalReport {
        k,
        silhouette: silhouette(points, assignments)?,
        calinski_harabasz: calinski_harabasz(points, assignments)?,
        davies_bouldin: davies_bouldin(points, assignments)?,
    })
}

/// Macro-averaged multiclass recall/precision/F1 plus theta-vs-one-hot MAE.
///
/// Macro averages run over classes with true support; a class that is never
/// predicted gets precision 0. F1 is the macro mean of per-class F1.
pub fn prediction_metrics(
    true_classes: &[usize],
    predicted_classes: &[usize],
    theta_rows: &[Vec<f64>],
    n_classes: usize,
) -> Result<PredictionReport> {
    let n = true_classes.len();
    if n == 0
        || predicted_classes.len() != n
        || theta_rows.len() != n
        || n_classes == 0
    {
        return Err(Error::EmptyInput);
    }
    let mut tp = vec![0usize; n_classes];
    let mut fp = vec![0usize; n_classes];
    let mut fn_ = vec![0usize; n_classes];
    for (&t, &p) in true_classes.iter().zip(predicted_classes) {
        if t >= n_classes || p >= n_classes {
            return Err(Error::Config("class index out of range".into()));
        }
        if t == p {
            tp[t] += 1;
        } else {
            fp[p] += 1;
            fn_[t] += 1;
        }
    }
    let mut recall_sum = 0.0;
    let mut precision_sum = 0.0;
    let mut f1_sum = 0.0;
    let mut counted = 0usize;
    for c in 0..n_classes {
        let support = tp[c] + fn_[c];
        if support == 0 {
            continue;
        }
        counted += 1;
        let recall = tp[c] as f64 / support as f64;
        let predicted = tp[c] + fp[c];
        let precision = if predicted > 0 {
            tp[c] as f64 / predicted as f64
        } else {
            0.0
        };
        recall_sum += recall;
        precision_sum += precision;
        if precision + recall > 0.0 {
            f1_sum += 2.0 * precision * recall / (precision + recall);
        }
    }
    if counted == 0 {
        return Err(Error::EmptyInput);
    }

    let mut mae = 0.0;
    for (&t, theta) in true_classes.iter().zip(theta_rows) {
        if theta.len() != n_classes {
            return Err(Error::Config("theta row length mismatch".into()));
        }
        let mut row_err = 0.0;
        for (c, &p) in theta.iter().enumerate() {
            let target = if c == t { 1.0 } else { 0.0 };
            row_err += libm::fabs(p - target);
        }
        mae += row_err / n_classes as f64;
    }
    mae /= n as f64;

    Ok(PredictionReport {
        recall: recall_sum / counted as f64,
        precision: precision_sum / counted as f64,
        f1: f1_sum / counted as f64,
        mae,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geo::apply_offset_m;

    fn two_blobs() -> (Vec<GeoPoint>, Vec<usize>) {
        let a = GeoPoint::new(109.5, 36.6).unwrap();
        let b = apply_offset_m(a, 10_000.0, 0.0);
        let mut points = Vec::new();
        let mut assign = Vec::new();
        for i in 0..20 {
            let e = (i % 5) as f64 * 10.0;
            let n = (i / 5) as f64 * 10.0;
            points.push(apply_offset_m(a, e, n));
            assign.push(0);
            points.push(apply_offset_m(b, e, n));
            assign.push(1);
        }
        (points, assign)
    }

    #[test]
    fn tight_distant_blobs_score_high() {
        let (points, assign) = two_blobs();
        let s = silhouette(&points, &assign).unwrap();
        assert!(s > 0.9, "silhouette {s}");
    }

    #[test]
    fn identical_points_give_zero_silhouette() {
        let p = GeoPoint::new(0.0, 0.0).unwrap();
        let points = vec![p; 8];
        let assign = vec![0, 0, 0, 0, 1, 1, 1, 1];
        assert_eq!(silhouette(&points, &assign).unwrap(), 0.0);
    }

    #[test]
    fn k_below_two_is_undefined() {
        let p = GeoPoint::new(0.0, 0.0).unwrap();
        let points = vec![p; 4];
        let assign = vec![0; 4];
        assert!(matches!(
            silhouette(&points, &assign),
            Err(Error::UndefinedIndex { .. })
        ));
        assert!(davies_bouldin(&points, &assign).is_err());
        assert!(calinski_harabasz(&points, &assign).is_err());
    }

    #[test]
    fn ch_grows_as_within_variance_shrinks() {
        let a = GeoPoint::new(109.5, 36.6).unwrap();
        let b = apply_offset_m(a, 10_000.0, 0.0);
        let mut last = 0.0;
        for shrink in [1.0, 0.5, 0.1] {
            let mut points = Vec::new();
            let mut assign = Vec::new();
            for i in 0..10 {
                let off = (i as f64 - 4.5) * 100.0 * shrink;
                points.push(apply_offset_m(a, off, 0.0));
                assign.push(0);
                points.push(apply_offset_m(b, off, 0.0));
                assign.push(1);
            }
            let ch = calinski_harabasz(&points, &assign).unwrap();
            assert!(ch > last, "CH {ch} at shrink {shrink}");
            last = ch;
        }
    }

    #[test]
    fn db_is_zero_for_point_clusters() {
        let a = GeoPoint::new(109.5, 36.6).unwrap();
        let b = apply_offset_m(a, 5000.0, 0.0);
        let points = vec![a, a, a, b, b, b];
        let assign = vec![0, 0, 0, 1, 1, 1];
        assert_eq!(davies_bouldin(&points, &assign).unwrap(), 0.0);
    }

    #[test]
    fn indices_invariant_under_cluster_relabeling() {
        let (points, assign) = two_blobs();
        let swapped: Vec<usize> = assign.iter().map(|&a| 1 - a).collect();
        assert_eq!(
            silhouette(&points, &assign).unwrap(),
            silhouette(&points, &swapped).unwrap()
        );
        let ch_a = calinski_harabasz(&points, &assign).unwrap();
        let ch_b = calinski_harabasz(&points, &swapped).unwrap();
        assert!((ch_a - ch_b).abs() / ch_a < 1e-12);
        assert_eq!(
            davies_bouldin(&points, &assign).unwrap(),
            davies_bouldin(&points, &swapped).unwrap()
        );
    }

    #[test]
    fn perfect_prediction_report() {
        let truth = vec![0, 1, 2, 0, 1, 2];
        let theta: Vec<Vec<f64>> = truth
            .iter()
            .map(|&t| {
                let mut row = vec![0.0; 3];
                row[t] = 1.0;
                row
            })
            .collect();
        let report = prediction_metrics(&truth, &truth, &theta, 3).unwrap();
        assert_eq!(report.recall, 1.0);
        assert_eq!(report.precision, 1.0);
        assert_eq!(report.f1, 1.0);
        assert_eq!(report.mae, 0.0);
    }

    #[test]
    fn always_majority_on_balanced_two_class() {
        let truth = vec![0, 0, 1, 1];
        let pred = vec![0, 0, 0, 0];
        let theta = vec![vec![1.0, 0.0]; 4];
        let report = prediction_metrics(&truth, &pred, &theta, 2).unwrap();
        assert_eq!(report.recall, 0.5);
    }

    #[test]
    fn report_invariant_under_passenger_reordering() {
        let truth = vec![0, 1, 1, 0, 1];
        let pred = vec![0, 1, 0, 0, 1];
        let theta = vec![
            vec![0.9, 0.1],
            vec![0.2, 0.8],
            vec![0.6, 0.4],
            vec![0.7, 0.3],
            vec![0.1, 0.9],
        ];
        let forward = prediction_metrics(&truth, &pred, &theta, 2).unwrap();
        let rt: Vec<usize> = truth.iter().rev().copied().collect();
        let rp: Vec<usize> = pred.iter().rev().copied().collect();
        let rth: Vec<Vec<f64>> = theta.iter().rev().cloned().collect();
        let reversed = prediction_metrics(&rt, &rp, &rth, 2).unwrap();
        assert!((forward.recall - reversed.recall).abs() < 1e-12);
        assert!((forward.mae - reversed.mae).abs() < 1e-12);
    }
}
