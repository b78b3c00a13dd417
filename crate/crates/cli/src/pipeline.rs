//! Stage orchestration: each `cmd_*` function is one subcommand, reading
//! configured inputs and writing CSV artifacts into the output directory.
//!
//! Commands recompute their prerequisites in memory rather than reading
//! intermediate files, so each one is self-contained and deterministic
//! under a fixed config and rng seed.

use crate::config::PipelineConfig;
use crate::error::{CliError, CliResult};
use crate::export::{self, KSweepRow};
use crate::ingest;
use crate::synth;
use lifecircle_core::geo::{haversine_m, GeoPoint};
use lifecircle_core::kmeans::{life_circles, p_kmeans, unseeded_kmeans, ClusterModel};
use lifecircle_core::label::ALL_LABELS;
use lifecircle_core::meanshift::{mean_shift_cluster, SeedSet};
use lifecircle_core::metrics::{cluster_eval, prediction_metrics, PredictionReport};
use lifecircle_core::pattern::{
    cluster_label_mass, normalize_cluster, passenger_pattern, TravelPatternMatrix,
};
use lifecircle_core::plda::{
    argmax, consistency_score, fit_plda, fold_in, infer_profile, AttributeConfig, LdaModel,
};
use lifecircle_core::records::{PoiRecord, TrajectoryRecord};
use rand::seq::SliceRandom;
use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;
use std::collections::BTreeMap;
use std::path::PathBuf;

/// Cleaned inputs shared by the clustering stages.
#[derive(Debug)]
pub struct Inputs {
    pub pois: Vec<PoiRecord>,
    /// Per-passenger trajectories after the min-records filter, keyed and
    /// iterated in uid order.
    pub partition: BTreeMap<String, Vec<TrajectoryRecord>>,
}

fn require_path<'a>(
    path: &'a Option<PathBuf>,
    what: &str,
) -> CliResult<&'a std::path::Path> {
    path.as_deref()
        .ok_or_else(|| CliError::Config(format!("{what} is required but not configured")))
}

/// Load and clean the POI file.
pub fn load_pois(config: &PipelineConfig) -> CliResult<Vec<PoiRecord>> {
    let path = require_path(&config.poi_csv, "poi_csv")?;
    let (raw, _report) = ingest::load_poi_csv(path)?;
    let pois = ingest::dedup_poi(&raw);
    if pois.is_empty() {
        return Err(CliError::Input(format!(
            "{}: no usable POI rows",
            path.display()
        )));
    }
    Ok(pois)
}

/// Load both inputs and apply the passenger record filter.
pub fn load_inputs(config: &PipelineConfig) -> CliResult<Inputs> {
    let pois = load_pois(config)?;
    let path = require_path(&config.trajectory_csv, "trajectory_csv")?;
    let (records, _report) = ingest::load_trajectory_csv(path)?;
    let partition =
        ingest::filter_min_records(ingest::partition_by_uid(&records), config.min_records);
    if partition.is_empty() {
        return Err(CliError::Input(format!(
            "{}: no passenger has more than {} records",
            path.display(),
            config.min_records
        )));
    }
    Ok(Inputs { pois, partition })
}

/// Mode-seek each label's POIs separately; labels with no POIs are skipped.
pub fn compute_seeds(pois: &[PoiRecord], config: &PipelineConfig) -> CliResult<Vec<SeedSet>> {
    let ms = config.meanshift_config();
    let mut by_label: Vec<Vec<GeoPoint>> = vec![Vec::new(); ALL_LABELS.len()];
    for poi in pois {
        by_label[poi.label.index()].push(poi.location);
    }
    let mut sets = Vec::new();
    for (label, points) in ALL_LABELS.iter().zip(&by_label) {
        if points.is_empty() {
            continue;
        }
        let mut set = mean_shift_cluster(points, &ms)?;
        set.source_label = Some(*label);
        sets.push(set);
    }
    Ok(sets)
}

/// `seed`: per-label mean-shift seeds to `seeds.csv`.
pub fn cmd_seed(config: &PipelineConfig) -> CliResult<Vec<SeedSet>> {
    let pois = load_pois(config)?;
    let sets = compute_seeds(&pois, config)?;
    export::write_seeds_csv(&config.out_dir.join("seeds.csv"), &sets)?;
    Ok(sets)
}

/// Stable rng-seed derivation for sub-draws of one run.
fn derive_seed(base: u64, stream: u64, index: u64) -> u64 {
    base.wrapping_add(stream.wrapping_mul(0x9E37_79B9_7F4A_7C15))
        .wrapping_add(index.wrapping_mul(0xBF58_476D_1CE4_E5B9))
}

/// All filtered trajectory points pooled across passengers, in uid order.
fn pooled_points(inputs: &Inputs) -> Vec<GeoPoint> {
    inputs
        .partition
        .values()
        .flat_map(|records| records.iter().map(|r| r.location))
        .collect()
}

/// Exactly k initial centers: the k heaviest seeds, topped up with a
/// farthest-point sweep over the data when there are fewer seeds than k.
fn seeds_for_k(merged: &SeedSet, points: &[GeoPoint], k: usize) -> SeedSet {
    let mut order: Vec<usize> = (0..merged.len()).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(merged.member_count[i]), i));
    order.truncate(k);
    order.sort_unstable();
    let mut seeds: Vec<GeoPoint> = order.iter().map(|&i| merged.seeds[i]).collect();
    let mut counts: Vec<usize> = order.iter().map(|&i| merged.member_count[i]).collect();
    while seeds.len() < k {
        let far = points
            .iter()
            .max_by(|a, b| {
                let da = seeds
                    .iter()
                    .map(|s| haversine_m(**a, *s))
                    .fold(f64::INFINITY, f64::min);
                let db = seeds
                    .iter()
                    .map(|s| haversine_m(**b, *s))
                    .fold(f64::INFINITY, f64::min);
                da.total_cmp(&db)
            })
            .copied()
            .expect("points checked non-empty by callers");
        seeds.push(far);
        counts.push(0);
    }
    SeedSet {
        seeds,
        member_count: counts,
        source_label: None,
    }
}

/// `cluster`: seeded clustering of the pooled trajectory points, plus the
/// seeded-vs-unseeded K sweep.
pub fn cmd_cluster(config: &PipelineConfig) -> CliResult<ClusterModel> {
    let inputs = load_inputs(config)?;
    let sets = compute_seeds(&inputs.pois, config)?;
    let merged = SeedSet::merge_all(&sets, config.merge_radius_m);
    if merged.is_empty() {
        return Err(CliError::Input("no POI seeds were produced".into()));
    }
    let points = pooled_points(&inputs);

    let model = p_kmeans(
        &points,
        &merged,
        config.kmeans_epsilon_m,
        config.kmeans_max_iter,
    )?;
    export::write_centers_csv(&config.out_dir.join("centers.csv"), &model)?;
    export::write_assignments_csv(&config.out_dir.join("assignments.csv"), &model.assignments)?;

    let mut rows = Vec::new();
    let k_max = if config.sweep_enabled {
        config.sweep_k_max.min(points.len())
    } else {
        0
    };
    for k in config.sweep_k_min..=k_max {
        let seeded = p_kmeans(
            &points,
            &seeds_for_k(&merged, &points, k),
            config.kmeans_epsilon_m,
            config.kmeans_max_iter,
        )?;
        if let Ok(report) = cluster_eval(&points, &seeded.assignments) {
            rows.push(KSweepRow {
                k,
                silhouette: report.silhouette,
                calinski_harabasz: report.calinski_harabasz,
                davies_bouldin: report.davies_bouldin,
                seeded: true,
            });
        }
        for s in 0..config.sweep_n_seeds {
            let run = unseeded_kmeans(
                &points,
                k,
                config.kmeans_epsilon_m,
                config.kmeans_max_iter,
                derive_seed(config.rng_seed, k as u64, s as u64),
            )?;
            if let Ok(report) = cluster_eval(&points, &run.assignments) {
                rows.push(KSweepRow {
                    k,
                    silhouette: report.silhouette,
                    calinski_harabasz: report.calinski_harabasz,
                    davies_bouldin: report.davies_bouldin,
                    seeded: false,
                });
            }
        }
    }
    export::write_ksweep_csv(&config.out_dir.join("ksweep.csv"), &rows)?;
    Ok(model)
}

/// Keep only the seeds that win at least one of the passenger's points, so
/// K adapts to where this passenger actually travels.
fn prune_seeds(merged: &SeedSet, points: &[GeoPoint]) -> SeedSet {
    let mut wins = vec![false; merged.len()];
    for p in points {
        let mut best = 0usize;
        let mut best_d = f64::INFINITY;
        for (i, s) in merged.seeds.iter().enumerate() {
            let d = haversine_m(*p, *s);
            if d < best_d {
                best_d = d;
                best = i;
            }
        }
        wins[best] = true;
    }
    let keep: Vec<usize> = (0..merged.len()).filter(|&i| wins[i]).collect();
    SeedSet {
        seeds: keep.iter().map(|&i| merged.seeds[i]).collect(),
        member_count: keep.iter().map(|&i| merged.member_count[i]).collect(),
        source_label: None,
    }
}

/// One passenger's pattern row, or the reason they were dropped.
fn passenger_row(
    records: &[TrajectoryRecord],
    merged: &SeedSet,
    pois: &[PoiRecord],
    config: &PipelineConfig,
) -> CliResult<Result<[u32; 17], &'static str>> {
    let points: Vec<GeoPoint> = records.iter().map(|r| r.location).collect();
    let pruned = prune_seeds(merged, &points);
    let model = p_kmeans(
        &points,
        &pruned,
        config.kmeans_epsilon_m,
        config.kmeans_max_iter,
    )?;
    let circles = life_circles(&model, config.dis_m);
    let mut pairs = Vec::new();
    for circle in circles {
        let mass = cluster_label_mass(&circle, pois);
        match normalize_cluster(&mass) {
            Ok(normalized) => pairs.push((circle, normalized)),
            Err(lifecircle_core::Error::EmptyLifeCircle) => continue,
            Err(e) => return Err(e.into()),
        }
    }
    match passenger_pattern(&pairs, config.row_total) {
        Ok(row) => Ok(Ok(row)),
        Err(lifecircle_core::Error::AllCirclesEmpty) => Ok(Err("all life circles empty")),
        Err(e) => Err(e.into()),
    }
}

/// `matrix`: per-passenger life circles and the travel pattern matrix.
pub fn cmd_matrix(config: &PipelineConfig) -> CliResult<TravelPatternMatrix> {
    let inputs = load_inputs(config)?;
    let sets = compute_seeds(&inputs.pois, config)?;
    let merged = SeedSet::merge_all(&sets, config.merge_radius_m);
    if merged.is_empty() {
        return Err(CliError::Input("no POI seeds were produced".into()));
    }

    let mut matrix = TravelPatternMatrix::new(config.row_total);
    let mut dropped: Vec<(String, &'static str)> = Vec::new();
    for (uid, records) in &inputs.partition {
        match passenger_row(records, &merged, &inputs.pois, config)? {
            Ok(row) => matrix.push(uid.clone(), row),
            Err(reason) => dropped.push((uid.clone(), reason)),
        }
    }
    if matrix.is_empty() {
        return Err(CliError::Numerical(
            "every passenger was dropped while building the matrix".into(),
        ));
    }
    export::write_matrix_csv(&config.out_dir.join("matrix.csv"), &matrix)?;
    let mut report = String::from("uid,reason\n");
    for (uid, reason) in &dropped {
        report.push_str(&format!("{uid},{reason}\n"));
    }
    export::atomic_write(&config.out_dir.join("dropped_passengers.csv"), &report)?;
    Ok(matrix)
}

/// Fit `n_candidates` models for one attribute and keep the best
/// consistency score (ties break toward the earliest candidate).
pub fn fit_best(
    matrix: &TravelPatternMatrix,
    attr_config: &AttributeConfig,
    config: &PipelineConfig,
    stream: u64,
) -> CliResult<LdaModel> {
    let hyper = config.lda_hyper();
    let mut best: Option<(f64, LdaModel)> = None;
    for c in 0..config.n_candidates {
        let fit = fit_plda(
            matrix,
            attr_config,
            &hyper,
            derive_seed(config.rng_seed, stream, c as u64),
        )?;
        let score = consistency_score(&fit.model, matrix);
        if best.as_ref().map_or(true, |(s, _)| score > *s) {
            best = Some((score, fit.model));
        }
    }
    Ok(best.expect("n_candidates >= 1 is enforced by config validation").1)
}

/// `lda`: per-attribute topic models plus the inferred profile table.
pub fn cmd_lda(
    config: &PipelineConfig,
    matrix: &TravelPatternMatrix,
) -> CliResult<Vec<(AttributeConfig, LdaModel)>> {
    let mut models = Vec::new();
    for (i, attr_config) in config.attribute_configs()?.into_iter().enumerate() {
        let model = fit_best(matrix, &attr_config, config, i as u64)?;
        let name = attr_config.attribute.as_str();
        export::write_theta_csv(&config.out_dir.join(format!("theta_{name}.csv")), &model)?;
        export::write_phi_csv(
            &config.out_dir.join(format!("phi_{name}.csv")),
            &model,
            &attr_config.class_names,
        )?;
        models.push((attr_config, model));
    }

    let mut profiles = Vec::new();
    for uid in &matrix.passengers {
        match infer_profile(&models, uid) {
            Ok(profile) => profiles.push(profile),
            Err(lifecircle_core::Error::UnknownUid(_)) => continue,
            Err(e) => return Err(e.into()),
        }
    }
    export::write_profile_csv(&config.out_dir.join("profile.csv"), &profiles)?;
    Ok(models)
}

/// Deterministic train/test uid split: shuffle, then cut at
/// `floor(train_fraction * n)`.
pub fn split_uids(
    uids: &[String],
    train_fraction: f64,
    rng_seed: u64,
) -> (Vec<String>, Vec<String>) {
    let mut shuffled: Vec<String> = uids.to_vec();
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(rng_seed, 0x5EED, 0));
    shuffled.shuffle(&mut rng);
    let cut = (train_fraction * shuffled.len() as f64).floor() as usize;
    let test = shuffled.split_off(cut);
    (shuffled, test)
}

/// `eval`: refit on the train split, fold in the held-out passengers, and
/// score against the planted ground truth.
pub fn cmd_eval(
    config: &PipelineConfig,
    matrix: &TravelPatternMatrix,
) -> CliResult<Vec<(String, PredictionReport)>> {
    let truth_path = require_path(&config.ground_truth_csv, "ground_truth_csv")?;
    let truth = export::read_ground_truth_csv(truth_path)?;

    let uids: Vec<String> = matrix
        .passengers
        .iter()
        .filter(|uid| truth.contains_key(*uid))
        .cloned()
        .collect();
    if uids.len() < 2 {
        return Err(CliError::Input(
            "need at least two passengers with ground truth to split".into(),
        ));
    }
    let (train_uids, test_uids) = split_uids(&uids, config.train_fraction, config.rng_seed);
    if train_uids.is_empty() || test_uids.is_empty() {
        return Err(CliError::Input("train/test split left an empty side".into()));
    }

    let mut train = TravelPatternMatrix::new(matrix.row_total);
    for uid in &train_uids {
        let row = matrix.row_for(uid).expect("train uids come from the matrix");
        train.push(uid.clone(), *row);
    }

    let attr_configs = config.attribute_configs()?;
    let mut rows: Vec<(String, PredictionReport)> = Vec::new();
    for (i, attr_config) in attr_configs.iter().enumerate() {
        // Attribute position in the ground-truth column order.
        let truth_col = lifecircle_core::plda::ALL_ATTRIBUTES
            .iter()
            .position(|a| *a == attr_config.attribute)
            .expect("built-in attribute");
        let model = fit_best(&train, attr_config, config, 0x0E5A_0000 + i as u64)?;

        let mut true_classes = Vec::new();
        let mut predicted = Vec::new();
        let mut thetas = Vec::new();
        for (j, uid) in test_uids.iter().enumerate() {
            let row = matrix.row_for(uid).expect("test uids come from the matrix");
            let theta = match fold_in(
                &model,
                row,
                config.fold_in_sweeps,
                derive_seed(config.rng_seed, 0xF01D + i as u64, j as u64),
            ) {
                Ok(theta) => theta,
                Err(lifecircle_core::Error::EmptyLifeCircle) => continue,
                Err(e) => return Err(e.into()),
            };
            let truth_name = &truth[uid][truth_col];
            let true_class = attr_config
                .class_names
                .iter()
                .position(|n| n == truth_name)
                .ok_or_else(|| {
                    CliError::Input(format!(
                        "unknown {} class `{truth_name}` for {uid}",
                        attr_config.attribute
                    ))
                })?;
            true_classes.push(true_class);
            predicted.push(argmax(&theta));
            thetas.push(theta);
        }
        if true_classes.is_empty() {
            return Err(CliError::Numerical(format!(
                "no held-out passenger could be scored for {}",
                attr_config.attribute
            )));
        }
        let report =
            prediction_metrics(&true_classes, &predicted, &thetas, attr_config.k_classes)?;
        rows.push((attr_config.attribute.as_str().to_string(), report));
    }

    let n = rows.len() as f64;
    let macro_row = PredictionReport {
        recall: rows.iter().map(|(_, r)| r.recall).sum::<f64>() / n,
        precision: rows.iter().map(|(_, r)| r.precision).sum::<f64>() / n,
        f1: rows.iter().map(|(_, r)| r.f1).sum::<f64>() / n,
        mae: rows.iter().map(|(_, r)| r.mae).sum::<f64>() / n,
    };
    rows.push(("macro".to_string(), macro_row));
    export::write_prediction_csv(&config.out_dir.join("eval.csv"), &rows)?;
    Ok(rows)
}

/// Paths of the three synthetic CSVs.
pub struct SynthPaths {
    pub poi_csv: PathBuf,
    pub trajectory_csv: PathBuf,
    pub ground_truth_csv: PathBuf,
}

/// `synth`: generate a city plus passengers and write the input CSVs.
pub fn cmd_synth(config: &PipelineConfig) -> CliResult<SynthPaths> {
    let synth_config = config.synth_config();
    let city = synth::generate_city(&synth_config)?;
    let (records, profiles) = synth::generate_passengers(&synth_config, &city)?;
    let paths = SynthPaths {
        poi_csv: config.out_dir.join("poi.csv"),
        trajectory_csv: config.out_dir.join("trajectory.csv"),
        ground_truth_csv: config.out_dir.join("ground_truth.csv"),
    };
    export::write_poi_csv(&paths.poi_csv, &city.pois)?;
    export::write_trajectory_csv(&paths.trajectory_csv, &records)?;
    export::write_ground_truth_csv(&paths.ground_truth_csv, &profiles)?;
    Ok(paths)
}

/// `pipeline`: every stage in sequence into one run directory. Missing
/// input paths are filled by generating synthetic data first.
pub fn cmd_pipeline(config: &PipelineConfig) -> CliResult<()> {
    let mut config = config.clone();
    if config.poi_csv.is_none() || config.trajectory_csv.is_none() {
        let paths = cmd_synth(&config)?;
        config.poi_csv = Some(paths.poi_csv);
        config.trajectory_csv = Some(paths.trajectory_csv);
        if config.ground_truth_csv.is_none() {
            config.ground_truth_csv = Some(paths.ground_truth_csv);
        }
    }
    cmd_seed(&config)?;
    cmd_cluster(&config)?;
    let matrix = cmd_matrix(&config)?;
    cmd_lda(&config, &matrix)?;
    if config.ground_truth_csv.is_some() {
        cmd_eval(&config, &matrix)?;
    }
    Ok(())
}
