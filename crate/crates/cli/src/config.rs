//! Declarative pipeline configuration: a JSON file plus flag overrides.

use crate::error::{CliError, CliResult};
use crate::synth::SynthConfig;
use lifecircle_core::geo::GeoPoint;
use lifecircle_core::meanshift::{Kernel, MeanShiftConfig};
use lifecircle_core::plda::{builtin_config, Attribute, AttributeConfig, LdaHyper};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

/// Synthetic-generation section of the config file.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(default, deny_unknown_fields)]
pub struct SynthSection {
    pub n_blobs_per_label: usize,
    pub pois_per_blob: usize,
    pub blob_sigma_m: f64,
    pub city_center_lng: f64,
    pub city_center_lat: f64,
    pub city_extent_deg: f64,
    pub min_blob_separation_m: f64,
    pub shared_blob_centers: bool,
    pub n_passengers: usize,
    pub records_min: usize,
    pub records_max: usize,
    pub noise_fraction: f64,
    pub visit_jitter_m: f64,
}

impl Default for SynthSection {
    fn default() -> Self {
        let d = SynthConfig::default();
        SynthSection {
            n_blobs_per_label: d.n_blobs_per_label,
            pois_per_blob: d.pois_per_blob,
            blob_sigma_m: d.blob_sigma_m,
            city_center_lng: d.city_center.lng,
            city_center_lat: d.city_center.lat,
            city_extent_deg: d.city_extent_deg,
            min_blob_separation_m: d.min_blob_separation_m,
            shared_blob_centers: d.shared_blob_centers,
            n_passengers: d.n_passengers,
            records_min: d.records_min,
            records_max: d.records_max,
            noise_fraction: d.noise_fraction,
            visit_jitter_m: d.visit_jitter_m,
        }
    }
}

/// Everything a pipeline run needs; every field has a default and can come
/// from the JSON config file or a flag override.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(default, deny_unknown_fields)]
pub struct PipelineConfig {
    pub poi_csv: Option<PathBuf>,
    pub trajectory_csv: Option<PathBuf>,
    pub ground_truth_csv: Option<PathBuf>,
    pub out_dir: PathBuf,
    pub rng_seed: u64,
    pub min_records: usize,
    /// POI search radius of the distance-decay weight; also the life-circle
    /// radius.
    pub dis_m: f64,
    pub row_total: u32,

    // Mode seeking.
    pub bandwidth_m: f64,
    pub shift_epsilon_m: f64,
    pub kernel: String,
    pub shift_max_iter: usize,
    pub merge_radius_m: f64,

    // Clustering.
    pub kmeans_epsilon_m: f64,
    pub kmeans_max_iter: usize,
    pub sweep_k_min: usize,
    pub sweep_k_max: usize,
    pub sweep_n_seeds: usize,
    /// Disable to skip the K sweep entirely (large inputs).
    pub sweep_enabled: bool,

    // Topic models.
    pub alpha: Option<f64>,
    pub beta: f64,
    pub beta_seed: f64,
    pub n_sweeps: usize,
    /// Candidate models fitted per attribute; the best consistency score
    /// wins.
    pub n_candidates: usize,
    pub fold_in_sweeps: usize,
    pub attributes: Vec<String>,
    pub train_fraction: f64,

    pub synth: SynthSection,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        let hyper = LdaHyper::default();
        let shift = MeanShiftConfig::default();
        PipelineConfig {
            poi_csv: None,
            trajectory_csv: None,
            ground_truth_csv: None,
            out_dir: PathBuf::from("out"),
            rng_seed: 42,
            min_records: 100,
            dis_m: 500.0,
            row_total: 1000,
            bandwidth_m: shift.bandwidth_m,
            shift_epsilon_m: shift.epsilon_m,
            kernel: "flat".to_string(),
            shift_max_iter: shift.max_iter,
            merge_radius_m: shift.merge_radius_m,
            kmeans_epsilon_m: 1.0,
            kmeans_max_iter: 300,
            sweep_k_min: 2,
            sweep_k_max: 12,
            sweep_n_seeds: 10,
            sweep_enabled: true,
            alpha: hyper.alpha,
            beta: hyper.beta,
            beta_seed: hyper.beta_seed,
            n_sweeps: hyper.n_sweeps,
            n_candidates: 3,
            fold_in_sweeps: 200,
            attributes: lifecircle_core::plda::ALL_ATTRIBUTES
                .iter()
                .map(|a| a.as_str().to_string())
                .collect(),
            train_fraction: 0.8,
            synth: SynthSection::default(),
        }
    }
}

impl PipelineConfig {
    /// Read a JSON config file; missing keys fall back to defaults.
    pub fn from_file(path: &Path) -> CliResult<PipelineConfig> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let config: PipelineConfig = serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> CliResult<()> {
        if !(self.dis_m > 0.0) {
            return Err(CliError::Config("dis_m must be > 0".into()));
        }
        if self.row_total == 0 {
            return Err(CliError::Config("row_total must be >= 1".into()));
        }
        if self.kernel != "flat" && self.kernel != "gaussian" {
            return Err(CliError::Config(format!(
                "kernel must be `flat` or `gaussian`, got `{}`",
                self.kernel
            )));
        }
        if !(self.train_fraction > 0.0 && self.train_fraction < 1.0) {
            return Err(CliError::Config("train_fraction must be in (0, 1)".into()));
        }
        if self.sweep_k_min < 2 || self.sweep_k_max < self.sweep_k_min {
            return Err(CliError::Config(
                "sweep range must satisfy 2 <= k_min <= k_max".into(),
            ));
        }
        if self.n_candidates == 0 {
            return Err(CliError::Config("n_candidates must be >= 1".into()));
        }
        if self.fold_in_sweeps == 0 {
            return Err(CliError::Config("fold_in_sweeps must be >= 1".into()));
        }
        self.meanshift_config().validate()?;
        self.lda_hyper().validate()?;
        for name in &self.attributes {
            Attribute::parse(name)?;
        }
        if self.attributes.is_empty() {
            return Err(CliError::Config("attributes must not be empty".into()));
        }
        self.synth_config().validate()?;
        Ok(())
    }

    pub fn meanshift_config(&self) -> MeanShiftConfig {
        MeanShiftConfig {
            bandwidth_m: self.bandwidth_m,
            epsilon_m: self.shift_epsilon_m,
            kernel: if self.kernel == "gaussian" {
                Kernel::Gaussian
            } else {
                Kernel::Flat
            },
            max_iter: self.shift_max_iter,
            merge_radius_m: self.merge_radius_m,
        }
    }

    pub fn lda_hyper(&self) -> LdaHyper {
        LdaHyper {
            alpha: self.alpha,
            beta: self.beta,
            beta_seed: self.beta_seed,
            n_sweeps: self.n_sweeps,
        }
    }

    /// The selected attribute models, in canonical attribute order.
    pub fn attribute_configs(&self) -> CliResult<Vec<AttributeConfig>> {
        let mut selected: Vec<Attribute> = Vec::new();
        for name in &self.attributes {
            let attr = Attribute::parse(name)?;
            if !selected.contains(&attr) {
                selected.push(attr);
            }
        }
        selected.sort();
        Ok(selected.into_iter().map(builtin_config).collect())
    }

    pub fn synth_config(&self) -> SynthConfig {
        let s = &self.synth;
        SynthConfig {
            rng_seed: self.rng_seed,
            n_blobs_per_label: s.n_blobs_per_label,
            pois_per_blob: s.pois_per_blob,
            blob_sigma_m: s.blob_sigma_m,
            city_center: GeoPoint::new(s.city_center_lng, s.city_center_lat)
                .unwrap_or_else(|_| GeoPoint::new(109.5, 36.6).expect("static coordinates")),
            city_extent_deg: s.city_extent_deg,
            min_blob_separation_m: s.min_blob_separation_m,
            shared_blob_centers: s.shared_blob_centers,
            n_passengers: s.n_passengers,
            records_min: s.records_min,
            records_max: s.records_max,
            noise_fraction: s.noise_fraction,
            visit_jitter_m: s.visit_jitter_m,
        }
    }
}

/// Flag overrides shared by every subcommand; `None` means "keep the config
/// file value".
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub out: Option<PathBuf>,
    pub rng_seed: Option<u64>,
    pub min_records: Option<usize>,
    pub dis_m: Option<f64>,
    pub row_total: Option<u32>,
    pub attributes: Option<Vec<String>>,
}

impl Overrides {
    pub fn apply(&self, config: &mut PipelineConfig) -> CliResult<()> {
        if let Some(out) = &self.out {
            config.out_dir = out.clone();
        }
        if let Some(seed) = self.rng_seed {
            config.rng_seed = seed;
        }
        if let Some(min) = self.min_records {
            config.min_records = min;
        }
        if let Some(dis) = self.dis_m {
            config.dis_m = dis;
        }
        if let Some(total) = self.row_total {
            config.row_total = total;
        }
        if let Some(attrs) = &self.attributes {
            config.attributes = attrs.clone();
        }
        config.validate()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        PipelineConfig::default().validate().unwrap();
    }

    #[test]
    fn partial_file_fills_in_defaults() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("config.json");
        std::fs::write(&path, r#"{"rng_seed": 7, "dis_m": 300.0}"#).unwrap();
        let config = PipelineConfig::from_file(&path).unwrap();
        assert_eq!(config.rng_seed, 7);
        assert_eq!(config.dis_m, 300.0);
        assert_eq!(config.row_total, 1000);
        assert_eq!(config.min_records, 100);
    }

    #[test]
    fn unknown_keys_are_config_errors() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("config.json");
        std::fs::write(&path, r#"{"rngseed": 7}"#).unwrap();
        let err = PipelineConfig::from_file(&path).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn bad_values_are_config_errors() {
        let mut config = PipelineConfig::default();
        config.kernel = "triangular".into();
        assert_eq!(config.validate().unwrap_err().exit_code(), 2);

        let mut config = PipelineConfig::default();
        config.attributes = vec!["agee".into()];
        assert_eq!(config.validate().unwrap_err().exit_code(), 2);
    }

    #[test]
    fn overrides_replace_file_values() {
        let mut config = PipelineConfig::default();
        let overrides = Overrides {
            rng_seed: Some(9),
            dis_m: Some(250.0),
            attributes: Some(vec!["gender".into(), "age".into()]),
            ..Overrides::default()
        };
        overrides.apply(&mut config).unwrap();
        assert_eq!(config.rng_seed, 9);
        assert_eq!(config.dis_m, 250.0);
        let attrs = config.attribute_configs().unwrap();
        assert_eq!(attrs.len(), 2);
        assert_eq!(attrs[0].attribute, Attribute::Age);
        assert_eq!(attrs[1].attribute, Attribute::Gender);
    }
}
