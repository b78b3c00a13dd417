//! Synthetic cities and passengers with known ground truth.
//!
//! POIs are planted as Gaussian blobs per label; passenger visits are a
//! mixture of their true attribute classes' seed labels and uniform noise,
//! so downstream recovery quality can be measured against the planted
//! profiles.

use crate::error::{CliError, CliResult};
use chrono::NaiveDate;
use lifecircle_core::geo::{apply_offset_m, haversine_m, GeoPoint};
use lifecircle_core::label::{PoiLabel, ALL_LABELS};
use lifecircle_core::plda::{builtin_configs, ALL_ATTRIBUTES};
use lifecircle_core::records::{PoiRecord, TrajectoryRecord};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;
use rand_distr::{Distribution, Normal};

/// Knobs for both generators.
#[derive(Debug, Clone, PartialEq)]
pub struct SynthConfig {
    pub rng_seed: u64,
    pub n_blobs_per_label: usize,
    pub pois_per_blob: usize,
    /// Spread of POIs around their blob center, meters.
    pub blob_sigma_m: f64,
    pub city_center: GeoPoint,
    /// Half-width of the square placement box, degrees.
    pub city_extent_deg: f64,
    /// Minimum pairwise distance between blob centers, meters.
    pub min_blob_separation_m: f64,
    /// Reuse one set of blob centers for every label ("districts") instead
    /// of drawing centers independently per label.
    pub shared_blob_centers: bool,
    pub n_passengers: usize,
    pub records_min: usize,
    pub records_max: usize,
    /// Fraction of visits drawn uniformly over all POIs instead of from the
    /// passenger's seeded labels.
    pub noise_fraction: f64,
    /// Visits land uniformly within this radius of the chosen POI, meters.
    pub visit_jitter_m: f64,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            rng_seed: 42,
            n_blobs_per_label: 5,
            pois_per_blob: 20,
            blob_sigma_m: 50.0,
            city_center: GeoPoint::new(109.5, 36.6).expect("static coordinates"),
            city_extent_deg: 0.25,
            min_blob_separation_m: 5_000.0,
            shared_blob_centers: false,
            n_passengers: 100,
            records_min: 150,
            records_max: 150,
            noise_fraction: 0.2,
            visit_jitter_m: 30.0,
        }
    }
}

impl SynthConfig {
    pub fn validate(&self) -> CliResult<()> {
        if !(self.blob_sigma_m > 0.0) {
            return Err(CliError::Config("blob_sigma_m must be > 0".into()));
        }
        if !(0.0..=1.0).contains(&self.noise_fraction) {
            return Err(CliError::Config("noise_fraction must be in [0, 1]".into()));
        }
        if !(self.city_extent_deg > 0.0) {
            return Err(CliError::Config("city_extent_deg must be > 0".into()));
        }
        if self.records_min > self.records_max {
            return Err(CliError::Config(
                "records_min must not exceed records_max".into(),
            ));
        }
        if !(self.visit_jitter_m >= 0.0) {
            return Err(CliError::Config("visit_jitter_m must be >= 0".into()));
        }
        Ok(())
    }
}

/// A generated city plus the planted geometry behind it.
#[derive(Debug, Clone, PartialEq)]
pub struct SynthCity {
    pub pois: Vec<PoiRecord>,
    /// Drawn blob centers, indexed `[label.index()][blob]`.
    pub blob_centers: Vec<Vec<GeoPoint>>,
    /// Arithmetic mean of each blob's generated POIs, same indexing.
    pub blob_means: Vec<Vec<GeoPoint>>,
}

/// A passenger's planted classes, one per attribute in `ALL_ATTRIBUTES`
/// order.
#[derive(Debug, Clone, PartialEq)]
pub struct TrueProfile {
    pub uid: String,
    pub classes: [usize; 7],
}

fn draw_point(rng: &mut ChaCha8Rng, config: &SynthConfig) -> GeoPoint {
    let e = config.city_extent_deg;
    let lng = config.city_center.lng + rng.gen_range(-e..e);
    let lat = config.city_center.lat + rng.gen_range(-e..e);
    GeoPoint::new(lng, lat).expect("extent keeps coordinates in range")
}

fn draw_separated_centers(
    rng: &mut ChaCha8Rng,
    config: &SynthConfig,
    n: usize,
) -> CliResult<Vec<GeoPoint>> {
    let mut centers: Vec<GeoPoint> = Vec::with_capacity(n);
    let mut attempts = 0usize;
    while centers.len() < n {
        attempts += 1;
        if attempts > 100_000 {
            return Err(CliError::Config(format!(
                "cannot place {n} blob centers {} m apart inside a {} deg box",
                config.min_blob_separation_m, config.city_extent_deg
            )));
        }
        let candidate = draw_point(rng, config);
        if centers
            .iter()
            .all(|c| haversine_m(*c, candidate) >= config.min_blob_separation_m)
        {
            centers.push(candidate);
        }
    }
    Ok(centers)
}

/// Plant `n_blobs_per_label` Gaussian POI blobs per label.
pub fn generate_city(config: &SynthConfig) -> CliResult<SynthCity> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.rng_seed);
    let normal = Normal::new(0.0, config.blob_sigma_m)
        .map_err(|e| CliError::Config(format!("bad blob sigma: {e}")))?;

    let shared = if config.shared_blob_centers {
        Some(draw_separated_centers(
            &mut rng,
            config,
            config.n_blobs_per_label,
        )?)
    } else {
        None
    };

    let mut pois = Vec::new();
    let mut blob_centers = Vec::with_capacity(ALL_LABELS.len());
    let mut blob_means = Vec::with_capacity(ALL_LABELS.len());
    for label in ALL_LABELS {
        let centers = match &shared {
            Some(c) => c.clone(),
            None => draw_separated_centers(&mut rng, config, config.n_blobs_per_label)?,
        };
        let mut means = Vec::with_capacity(centers.len());
        for (b, center) in centers.iter().enumerate() {
            let mut sum_e = 0.0;
            let mut sum_n = 0.0;
            for i in 0..config.pois_per_blob {
                let east = normal.sample(&mut rng);
                let north = normal.sample(&mut rng);
                sum_e += east;
                sum_n += north;
                pois.push(PoiRecord {
                    location: apply_offset_m(*center, east, north),
                    name: format!("{label}_{b}_{i}"),
                    label,
                    city: "synthville".to_string(),
                    area: format!("district_{b}"),
                    address: format!("{b}-{i} {label} street"),
                });
            }
            let m = config.pois_per_blob.max(1) as f64;
            means.push(apply_offset_m(*center, sum_e / m, sum_n / m));
        }
        blob_centers.push(centers);
        blob_means.push(means);
    }
    Ok(SynthCity {
        pois,
        blob_centers,
        blob_means,
    })
}

/// Labels a passenger with the given planted classes draws seeded visits
/// from: the union of the seed labels of their class in every attribute.
pub fn seeded_labels(classes: &[usize; 7]) -> Vec<PoiLabel> {
    let configs = builtin_configs();
    let mut union: Vec<PoiLabel> = Vec::new();
    for (config, &class) in configs.iter().zip(classes) {
        for label in &config.seed_map[class] {
            if !union.contains(label) {
                union.push(*label);
            }
        }
    }
    union.sort_by_key(|l| l.index());
    union
}

const WINDOW_START: &str = "2018-01-01 00:00:00";
const WINDOW_END: &str = "2018-06-30 23:59:59";

fn window_epoch() -> (i64, i64) {
    let parse = |s: &str| {
        NaiveDate::parse_from_str(&s[..10], "%Y-%m-%d")
            .expect("static date")
            .and_hms_opt(
                s[11..13].parse().expect("static hour"),
                s[14..16].parse().expect("static minute"),
                s[17..19].parse().expect("static second"),
            )
            .expect("static time")
            .and_utc()
            .timestamp()
    };
    (parse(WINDOW_START), parse(WINDOW_END))
}

/// Sample passengers with planted attribute classes and matching visit
/// trajectories over the city.
pub fn generate_passengers(
    config: &SynthConfig,
    city: &SynthCity,
) -> CliResult<(Vec<TrajectoryRecord>, Vec<TrueProfile>)> {
    config.validate()?;
    if city.pois.is_empty() {
        return Err(CliError::Input("city has no POIs".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.rng_seed.wrapping_add(0x9E37_79B9));
    let configs = builtin_configs();
    debug_assert_eq!(configs.len(), ALL_ATTRIBUTES.len());

    // Index POIs by label once.
    let mut by_label: Vec<Vec<usize>> = vec![Vec::new(); ALL_LABELS.len()];
    for (i, poi) in city.pois.iter().enumerate() {
        by_label[poi.label.index()].push(i);
    }

    let (t0, t1) = window_epoch();
    let mut records = Vec::new();
    let mut profiles = Vec::with_capacity(config.n_passengers);
    for p in 0..config.n_passengers {
        let uid = format!("p{p:05}");
        let mut classes = [0usize; 7];
        for (slot, attr_config) in classes.iter_mut().zip(&configs) {
            *slot = rng.gen_range(0..attr_config.k_classes);
        }
        // Only labels that actually exist in this city are drawable.
        let labels: Vec<PoiLabel> = seeded_labels(&classes)
            .into_iter()
            .filter(|l| !by_label[l.index()].is_empty())
            .collect();

        let n_records = rng.gen_range(config.records_min..=config.records_max);
        for _ in 0..n_records {
            let poi_index = if !labels.is_empty() && rng.gen::<f64>() >= config.noise_fraction {
                let label = labels[rng.gen_range(0..labels.len())];
                let pool = &by_label[label.index()];
                pool[rng.gen_range(0..pool.len())]
            } else {
                rng.gen_range(0..city.pois.len())
            };
            // Uniform over a disc of radius visit_jitter_m.
            let r = config.visit_jitter_m * rng.gen::<f64>().sqrt();
            let angle = rng.gen::<f64>() * core::f64::consts::TAU;
            let location = apply_offset_m(
                city.pois[poi_index].location,
                r * angle.cos(),
                r * angle.sin(),
            );
            records.push(TrajectoryRecord {
                uid: uid.clone(),
                location,
                up_time: rng.gen_range(t0..=t1),
            });
        }
        profiles.push(TrueProfile { uid, classes });
    }
    Ok((records, profiles))
}

/// Class name of a planted class, for ground-truth emission.
pub fn class_name(attribute_index: usize, class: usize) -> String {
    builtin_configs()[attribute_index].class_names[class].clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_config() -> SynthConfig {
        SynthConfig {
            n_blobs_per_label: 2,
            pois_per_blob: 5,
            min_blob_separation_m: 2_000.0,
            n_passengers: 4,
            records_min: 10,
            records_max: 12,
            ..SynthConfig::default()
        }
    }

    #[test]
    fn city_is_deterministic_under_seed() {
        let config = small_config();
        let a = generate_city(&config).unwrap();
        let b = generate_city(&config).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.pois.len(), 17 * 2 * 5);
    }

    #[test]
    fn passengers_are_deterministic_under_seed() {
        let config = small_config();
        let city = generate_city(&config).unwrap();
        let a = generate_passengers(&config, &city).unwrap();
        let b = generate_passengers(&config, &city).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.1.len(), 4);
    }

    #[test]
    fn zero_blobs_means_no_pois() {
        let config = SynthConfig {
            n_blobs_per_label: 0,
            ..small_config()
        };
        let city = generate_city(&config).unwrap();
        assert!(city.pois.is_empty());
    }

    #[test]
    fn blob_means_sit_near_their_centers() {
        let config = SynthConfig {
            pois_per_blob: 100,
            ..small_config()
        };
        let city = generate_city(&config).unwrap();
        for (centers, means) in city.blob_centers.iter().zip(&city.blob_means) {
            for (c, m) in centers.iter().zip(means) {
                // Standard error of the mean is sigma/sqrt(n) = 5 m.
                assert!(haversine_m(*c, *m) < 30.0);
            }
        }
    }

    #[test]
    fn noiseless_visits_stay_on_seeded_labels() {
        let config = SynthConfig {
            noise_fraction: 0.0,
            visit_jitter_m: 25.0,
            ..small_config()
        };
        let city = generate_city(&config).unwrap();
        let (records, profiles) = generate_passengers(&config, &city).unwrap();
        for profile in &profiles {
            let labels = seeded_labels(&profile.classes);
            for r in records.iter().filter(|r| r.uid == profile.uid) {
                let near_seeded = city
                    .pois
                    .iter()
                    .filter(|poi| labels.contains(&poi.label))
                    .any(|poi| haversine_m(poi.location, r.location) <= 25.0 + 1e-6);
                assert!(near_seeded, "visit strayed from seeded labels");
            }
        }
    }

    #[test]
    fn full_noise_is_uniform_over_pois() {
        let config = SynthConfig {
            noise_fraction: 1.0,
            n_passengers: 67,
            records_min: 150,
            records_max: 150,
            ..small_config()
        };
        let city = generate_city(&config).unwrap();
        let (records, _) = generate_passengers(&config, &city).unwrap();
        assert!(records.len() >= 10_000);
        // Equal POI counts per label, so label frequencies should be
        // uniform; chi-square with 16 dof, critical value 39.25 at p=0.001.
        let mut counts = [0usize; 17];
        for r in &records {
            let nearest = city
                .pois
                .iter()
                .min_by(|a, b| {
                    haversine_m(a.location, r.location)
                        .total_cmp(&haversine_m(b.location, r.location))
                })
                .unwrap();
            counts[nearest.label.index()] += 1;
        }
        let expected = records.len() as f64 / 17.0;
        let chi2: f64 = counts
            .iter()
            .map(|&c| {
                let d = c as f64 - expected;
                d * d / expected
            })
            .sum();
        assert!(chi2 < 39.25, "chi-square {chi2} too large for uniformity");
    }

    #[test]
    fn every_passenger_survives_the_record_filter() {
        let config = SynthConfig {
            records_min: 150,
            records_max: 150,
            ..small_config()
        };
        let city = generate_city(&config).unwrap();
        let (records, _) = generate_passengers(&config, &city).unwrap();
        let partition = crate::ingest::partition_by_uid(&records);
        let kept = crate::ingest::filter_min_records(partition, 100);
        assert_eq!(kept.len(), config.n_passengers);
    }

    #[test]
    fn invalid_configs_are_rejected() {
        let bad_sigma = SynthConfig {
            blob_sigma_m: 0.0,
            ..SynthConfig::default()
        };
        assert_eq!(bad_sigma.validate().unwrap_err().exit_code(), 2);
        let bad_noise = SynthConfig {
            noise_fraction: 1.5,
            ..SynthConfig::default()
        };
        assert_eq!(bad_noise.validate().unwrap_err().exit_code(), 2);
    }
}
