//! Seeded topic models over the travel-pattern matrix.
//!
//! One model is fitted per feature attribute (age, occupation, gender,
//! health, economic, safety, personality). Each attribute restricts the
//! vocabulary to the POI labels most correlated with its classes and boosts
//! the word prior of seeded (class, label) pairs, which makes the topics
//! identifiable as named classes.
//!
//! Inference is collapsed Gibbs sampling over token-level topic assignments.
//! Final theta/phi estimates are posterior means from the last sweep's
//! counts, so a fitted model is a pure function of (matrix, config,
//! hyperparameters, rng seed).

use crate::error::{Error, Result};
use crate::label::PoiLabel;
use crate::pattern::TravelPatternMatrix;
use crate::rng;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

/// The seven passenger feature attributes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Attribute {
    Age,
    Occupation,
    Gender,
    Health,
    Economic,
    Safety,
    Personality,
}

pub const ALL_ATTRIBUTES: [Attribute; 7] = [
    Attribute::Age,
    Attribute::Occupation,
    Attribute::Gender,
    Attribute::Health,
    Attribute::Economic,
    Attribute::Safety,
    Attribute::Personality,
];

impl Attribute {
    pub fn as_str(self) -> &'static str {
        match self {
            Attribute::Age => "age",
            Attribute::Occupation => "occupation",
            Attribute::Gender => "gender",
            Attribute::Health => "health",
            Attribute::Economic => "economic",
            Attribute::Safety => "safety",
            Attribute::Personality => "personality",
        }
    }

    pub fn parse(s: &str) -> Result<Attribute> {
        ALL_ATTRIBUTES
            .into_iter()
            .find(|a| a.as_str() == s.trim().to_ascii_lowercase())
            .ok_or_else(|| Error::Config(format!("unknown attribute: {s}")))
    }
}

impl core::fmt::Display for Attribute {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Vocabulary, class structure, and seed labels for one attribute model.
#[derive(Debug, Clone, PartialEq)]
pub struct AttributeConfig {
    pub attribute: Attribute,
    pub vocab: Vec<PoiLabel>,
    pub k_classes: usize,
    pub class_names: Vec<String>,
    /// Seed labels per class index; boosts the word prior of that class.
    pub seed_map: Vec<Vec<PoiLabel>>,
}

impl AttributeConfig {
    pub fn validate(&self) -> Result<()> {
        if self.vocab.is_empty() {
            return Err(Error::Config("empty vocabulary".into()));
        }
        for (i, a) in self.vocab.iter().enumerate() {
            if self.vocab[i + 1..].contains(a) {
                return Err(Error::Config(format!("duplicate vocab label {a}")));
            }
        }
        if self.k_classes == 0 {
            return Err(Error::Config("k_classes must be >= 1".into()));
        }
        if self.k_classes > self.vocab.len() {
            return Err(Error::Config(format!(
                "k_classes {} exceeds vocabulary size {}",
                self.k_classes,
                self.vocab.len()
            )));
        }
        if self.class_names.len() != self.k_classes || self.seed_map.len() != self.k_classes {
            return Err(Error::Config(
                "class_names and seed_map must have k_classes entries".into(),
            ));
        }
        for seeds in &self.seed_map {
            for label in seeds {
                if !self.vocab.contains(label) {
                    return Err(Error::Config(format!(
                        "seed label {label} not in vocabulary"
                    )));
                }
            }
        }
        Ok(())
    }

    fn named(
        attribute: Attribute,
        vocab: &[PoiLabel],
        classes: &[(&str, &[PoiLabel])],
    ) -> AttributeConfig {
        AttributeConfig {
            attribute,
            vocab: vocab.to_vec(),
            k_classes: classes.len(),
            class_names: classes.iter().map(|(n, _)| n.to_string()).collect(),
            seed_map: classes.iter().map(|(_, s)| s.to_vec()).collect(),
        }
    }
}

/// The seven built-in attribute configurations.
pub fn builtin_configs() -> Vec<AttributeConfig> {
    use PoiLabel::*;
    vec![
        AttributeConfig::named(
            Attribute::Age,
            &[Company, Government, Education, Medicine, Traffic, Car],
            &[
                ("teenagers", &[Education, Traffic]),
                ("middle_age", &[Company, Government, Car]),
                ("old_age", &[Medicine, Traffic]),
            ],
        ),
        AttributeConfig::named(
            Attribute::Occupation,
            &[Education, Media, Medicine, Service, Company, Government, Finance],
            &[
                ("students_teachers", &[Education, Media]),
                ("company_staff", &[Service, Company]),
                ("party_organ", &[Government]),
                ("self_employed", &[Finance]),
                ("retired_medical", &[Medicine]),
            ],
        ),
        AttributeConfig::named(
            Attribute::Gender,
            &[Shopping, Beauty, Service, Traffic, Car, Entertainment, Sports],
            &[
                ("male", &[Car, Entertainment, Sports]),
                ("female", &[Shopping, Beauty, Service, Traffic]),
            ],
        ),
        AttributeConfig::named(
            Attribute::Health,
            &[Sports, Entertainment, Travel],
            &[
                ("better", &[Sports]),
                ("worse", &[Entertainment, Travel]),
            ],
        ),
        AttributeConfig::named(
            Attribute::Economic,
            &[Food, Shopping, Travel, Entertainment, Media, Traffic, Car],
            &[
                ("better", &[Shopping, Travel, Entertainment, Media, Car]),
                ("worse", &[Traffic, Food]),
            ],
        ),
        AttributeConfig::named(
            Attribute::Safety,
            &[Sports, Medicine, Service, Traffic, Entertainment],
            &[
                ("better", &[Sports, Medicine, Traffic, Service]),
                ("worse", &[Entertainment]),
            ],
        ),
        AttributeConfig::named(
            Attribute::Personality,
            &[Shopping, Entertainment, Media, Travel, Sports, Service],
            &[
                ("better", &[Service, Sports]),
                ("worse", &[Shopping, Media, Entertainment, Travel]),
            ],
        ),
    ]
}

pub fn builtin_config(attribute: Attribute) -> AttributeConfig {
    builtin_configs()
        .into_iter()
        .find(|c| c.attribute == attribute)
        .expect("all attributes have a built-in config")
}

/// Hyperparameters of one seeded model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LdaHyper {
    /// Symmetric document-topic prior; `None` means 50/K.
    pub alpha: Option<f64>,
    /// Base word prior.
    pub beta: f64,
    /// Additive boost for seeded (class, label) pairs.
    pub beta_seed: f64,
    pub n_sweeps: usize,
}

impl Default for LdaHyper {
    fn default() -> Self {
        LdaHyper {
            alpha: None,
            beta: 0.01,
            beta_seed: 1.0,
            n_sweeps: 2000,
        }
    }
}

impl LdaHyper {
    pub fn validate(&self) -> Result<()> {
        if let Some(a) = self.alpha {
            if !(a > 0.0) {
                return Err(Error::Config("alpha must be > 0".into()));
            }
        }
        if !(self.beta > 0.0) {
            return Err(Error::Config("beta must be > 0".into()));
        }
        if !(self.beta_seed >= 0.0) {
            return Err(Error::Config("beta_seed must be >= 0".into()));
        }
        if self.n_sweeps == 0 {
            return Err(Error::Config("n_sweeps must be >= 1".into()));
        }
        Ok(())
    }

    pub fn resolved_alpha(&self, k: usize) -> f64 {
        self.alpha.unwrap_or(50.0 / k as f64)
    }
}

/// Collapsed Gibbs sampler over token-level topic assignments.
///
/// Exposed so tests can instrument individual sweeps (count conservation,
/// sample-averaged posterior estimates). [`fit_plda`] drives it end to end.
pub struct GibbsSampler {
    k: usize,
    v: usize,
    alpha: f64,
    /// Asymmetric word prior per (topic, word).
    beta: Vec<Vec<f64>>,
    beta_sum: Vec<f64>,
    tokens: Vec<Vec<usize>>,
    z: Vec<Vec<usize>>,
    n_mk: Vec<Vec<u32>>,
    n_kv: Vec<Vec<u32>>,
    n_k: Vec<u32>,
    rng: rng::Rng,
}

impl GibbsSampler {
    /// `counts` is the document-word count matrix (M x V); `beta` is the
    /// per-(topic, word) prior. Token topics are initialized uniformly at
    /// random. Zero-count documents are allowed and simply never sampled.
    pub fn new(
        counts: &[Vec<u32>],
        k: usize,
        alpha: f64,
        beta: Vec<Vec<f64>>,
        rng_seed: u64,
    ) -> Result<GibbsSampler> {
        Self::with_init(counts, k, alpha, beta, rng_seed, &[])
    }

    /// Like [`new`], but tokens of a word listed in `word_topics` are
    /// initialized among that word's listed topics instead of uniformly.
    /// Initialization does not change the stationary distribution; it
    /// anchors seeded topics to their intended class indices so the chain
    /// settles in the aligned mode.
    ///
    /// `word_topics[w]` may be empty (uniform init for that word); an empty
    /// slice disables biasing entirely.
    ///
    /// [`new`]: GibbsSampler::new
    pub fn with_init(
        counts: &[Vec<u32>],
        k: usize,
        alpha: f64,
        beta: Vec<Vec<f64>>,
        rng_seed: u64,
        word_topics: &[Vec<usize>],
    ) -> Result<GibbsSampler> {
        if k == 0 {
            return Err(Error::Config("k must be >= 1".into()));
        }
        let v = beta.first().map(|r| r.len()).unwrap_or(0);
        if beta.len() != k || v == 0 || beta.iter().any(|r| r.len() != v) {
            return Err(Error::Config("beta must be a K x V matrix".into()));
        }
        if counts.iter().any(|row| row.len() != v) {
            return Err(Error::Config("count rows must have V entries".into()));
        }
        if beta.iter().flatten().any(|&b| !(b > 0.0)) {
            return Err(Error::Config("beta entries must be > 0".into()));
        }
        if word_topics.iter().flatten().any(|&t| t >= k) {
            return Err(Error::Config("word_topics entry out of range".into()));
        }
        let beta_sum: Vec<f64> = beta.iter().map(|row| row.iter().sum()).collect();

        let mut rng = rng::seeded(rng_seed);
        let mut tokens = Vec::with_capacity(counts.len());
        let mut z = Vec::with_capacity(counts.len());
        let mut n_mk = vec![vec![0u32; k]; counts.len()];
        let mut n_kv = vec![vec![0u32; v]; k];
        let mut n_k = vec![0u32; k];
        for (m, row) in counts.iter().enumerate() {
            let mut doc = Vec::new();
            for (w, &c) in row.iter().enumerate() {
                for _ in 0..c {
                    doc.push(w);
                }
            }
            let mut zs = Vec::with_capacity(doc.len());
            for &w in &doc {
                let allowed = word_topics.get(w).filter(|t| !t.is_empty());
                let topic = match allowed {
                    Some(topics) => topics[rng::next_index(&mut rng, topics.len())],
                    None => rng::next_index(&mut rng, k),
                };
                n_mk[m][topic] += 1;
                n_kv[topic][w] += 1;
                n_k[topic] += 1;
                zs.push(topic);
            }
            tokens.push(doc);
            z.push(zs);
        }

        Ok(GibbsSampler {
            k,
            v,
            alpha,
            beta,
            beta_sum,
            tokens,
            z,
            n_mk,
            n_kv,
            n_k,
            rng,
        })
    }

    pub fn n_topics(&self) -> usize {
        self.k
    }

    pub fn vocab_size(&self) -> usize {
        self.v
    }

    pub fn n_docs(&self) -> usize {
        self.tokens.len()
    }

    /// Total number of tokens (invariant across sweeps).
    pub fn total_tokens(&self) -> usize {
        self.tokens.iter().map(|d| d.len()).sum()
    }

    /// Sum of per-topic assignment counts; equals [`total_tokens`] whenever
    /// the count arrays are conserved.
    ///
    /// [`total_tokens`]: GibbsSampler::total_tokens
    pub fn assigned_total(&self) -> usize {
        self.n_k.iter().map(|&c| c as usize).sum()
    }

    /// Exhaustive consistency check of the three count arrays against the
    /// assignment vector. Test instrumentation; O(total tokens).
    pub fn counts_consistent(&self) -> bool {
        let mut n_mk = vec![vec![0u32; self.k]; self.tokens.len()];
        let mut n_kv = vec![vec![0u32; self.v]; self.k];
        let mut n_k = vec![0u32; self.k];
        for (m, (doc, zs)) in self.tokens.iter().zip(&self.z).enumerate() {
            for (&w, &t) in doc.iter().zip(zs) {
                n_mk[m][t] += 1;
                n_kv[t][w] += 1;
                n_k[t] += 1;
            }
        }
        n_mk == self.n_mk && n_kv == self.n_kv && n_k == self.n_k
    }

    /// One full Gibbs sweep over every token of every document.
    pub fn sweep(&mut self) {
        let mut probs = vec![0.0f64; self.k];
        for m in 0..self.tokens.len() {
            for i in 0..self.tokens[m].len() {
                let w = self.tokens[m][i];
                let old = self.z[m][i];
                self.n_mk[m][old] -= 1;
                self.n_kv[old][w] -= 1;
                self.n_k[old] -= 1;

                let mut total = 0.0;
                for t in 0..self.k {
                    let p = (self.n_mk[m][t] as f64 + self.alpha)
                        * (self.n_kv[t][w] as f64 + self.beta[t][w])
                        / (self.n_k[t] as f64 + self.beta_sum[t]);
                    probs[t] = p;
                    total += p;
                }
                let mut u = rng::next_f64(&mut self.rng) * total;
                let mut new = self.k - 1;
                for (t, &p) in probs.iter().enumerate() {
                    if u < p {
                        new = t;
                        break;
                    }
                    u -= p;
                }

                self.z[m][i] = new;
                self.n_mk[m][new] += 1;
                self.n_kv[new][w] += 1;
                self.n_k[new] += 1;
            }
        }
    }

    /// Posterior-mean topic proportions of document `m` from current counts.
    pub fn doc_theta(&self, m: usize) -> Vec<f64> {
        let len = self.tokens[m].len() as f64;
        let denom = len + self.k as f64 * self.alpha;
        (0..self.k)
            .map(|t| (self.n_mk[m][t] as f64 + self.alpha) / denom)
            .collect()
    }

    /// Posterior-mean word distributions per topic from current counts.
    pub fn phi(&self) -> Vec<Vec<f64>> {
        (0..self.k)
            .map(|t| {
                let denom = self.n_k[t] as f64 + self.beta_sum[t];
                (0..self.v)
                    .map(|w| (self.n_kv[t][w] as f64 + self.beta[t][w]) / denom)
                    .collect()
            })
            .collect()
    }
}

/// A fitted per-attribute model.
#[derive(Debug, Clone, PartialEq)]
pub struct LdaModel {
    pub attribute: Attribute,
    /// Uids of the retained documents, row-aligned with `theta`.
    pub doc_ids: Vec<String>,
    pub vocab: Vec<PoiLabel>,
    pub k: usize,
    /// M x K per-passenger class proportions.
    pub theta: Vec<Vec<f64>>,
    /// K x V per-class label weights.
    pub phi: Vec<Vec<f64>>,
    pub alpha: f64,
    pub beta: f64,
    pub beta_seed: f64,
    pub n_sweeps: usize,
    pub rng_seed: u64,
}

impl LdaModel {
    pub fn theta_for(&self, uid: &str) -> Option<&[f64]> {
        self.doc_ids
            .iter()
            .position(|d| d == uid)
            .map(|i| self.theta[i].as_slice())
    }
}

/// Fit outcome: the model plus the uids whose restricted rows were empty.
#[derive(Debug, Clone)]
pub struct PldaFit {
    pub model: LdaModel,
    pub dropped: Vec<String>,
}

/// Per-(topic, word) prior: `beta`, plus `beta_seed` where the word is a
/// seed label of the class.
pub fn seeded_beta(config: &AttributeConfig, beta: f64, beta_seed: f64) -> Vec<Vec<f64>> {
    (0..config.k_classes)
        .map(|class| {
            config
                .vocab
                .iter()
                .map(|label| {
                    if config.seed_map[class].contains(label) {
                        beta + beta_seed
                    } else {
                        beta
                    }
                })
                .collect()
        })
        .collect()
}

/// Restrict a pattern row to the configured vocabulary.
pub fn restrict_row(row: &[u32; crate::pattern::N_LABELS], vocab: &[PoiLabel]) -> Vec<u32> {
    vocab.iter().map(|l| row[l.index()]).collect()
}

/// Fit one attribute model by collapsed Gibbs sampling.
///
/// Passengers whose rows are all-zero inside the attribute vocabulary are
/// excluded and reported in [`PldaFit::dropped`].
pub fn fit_plda(
    matrix: &TravelPatternMatrix,
    config: &AttributeConfig,
    hyper: &LdaHyper,
    rng_seed: u64,
) -> Result<PldaFit> {
    config.validate()?;
    hyper.validate()?;

    let mut doc_ids = Vec::new();
    let mut dropped = Vec::new();
    let mut counts = Vec::new();
    for (uid, row) in matrix.passengers.iter().zip(&matrix.rows) {
        let restricted = restrict_row(row, &config.vocab);
        if restricted.iter().sum::<u32>() == 0 {
            dropped.push(uid.clone());
        } else {
            doc_ids.push(uid.clone());
            counts.push(restricted);
        }
    }
    if counts.is_empty() {
        return Err(Error::EmptyInput);
    }

    let alpha = hyper.resolved_alpha(config.k_classes);
    let beta = seeded_beta(config, hyper.beta, hyper.beta_seed);
    // Seed words start in their seeded classes (skipped when the boost is
    // zero, which keeps the unseeded model fully exchangeable).
    let word_topics: Vec<Vec<usize>> = if hyper.beta_seed > 0.0 {
        config
            .vocab
            .iter()
            .map(|label| {
                (0..config.k_classes)
                    .filter(|&class| config.seed_map[class].contains(label))
                    .collect()
            })
            .collect()
    } else {
        Vec::new()
    };
    let mut sampler = GibbsSampler::with_init(
        &counts,
        config.k_classes,
        alpha,
        beta,
        rng_seed,
        &word_topics,
    )?;
    for _ in 0..hyper.n_sweeps {
        sampler.sweep();
    }

    let theta: Vec<Vec<f64>> = (0..counts.len()).map(|m| sampler.doc_theta(m)).collect();
    let phi = sampler.phi();
    Ok(PldaFit {
        model: LdaModel {
            attribute: config.attribute,
            doc_ids,
            vocab: config.vocab.clone(),
            k: config.k_classes,
            theta,
            phi,
            alpha,
            beta: hyper.beta,
            beta_seed: hyper.beta_seed,
            n_sweeps: hyper.n_sweeps,
            rng_seed,
        },
        dropped,
    })
}

/// Estimate class proportions for a held-out pattern row against a fitted
/// model's phi (fold-in Gibbs with the word distributions held fixed).
pub fn fold_in(
    model: &LdaModel,
    row: &[u32; crate::pattern::N_LABELS],
    n_sweeps: usize,
    rng_seed: u64,
) -> Result<Vec<f64>> {
    let counts = restrict_row(row, &model.vocab);
    let total: u32 = counts.iter().sum();
    if total == 0 {
        return Err(Error::EmptyLifeCircle);
    }
    let mut tokens = Vec::with_capacity(total as usize);
    for (w, &c) in counts.iter().enumerate() {
        for _ in 0..c {
            tokens.push(w);
        }
    }
    let k = model.k;
    let mut rng = rng::seeded(rng_seed);
    let mut z = Vec::with_capacity(tokens.len());
    let mut n_k = vec![0u32; k];
    for _ in &tokens {
        let t = rng::next_index(&mut rng, k);
        n_k[t] += 1;
        z.push(t);
    }
    let mut probs = vec![0.0f64; k];
    for _ in 0..n_sweeps.max(1) {
        for i in 0..tokens.len() {
            let w = tokens[i];
            let old = z[i];
            n_k[old] -= 1;
            let mut total_p = 0.0;
            for (t, p) in probs.iter_mut().enumerate() {
                *p = (n_k[t] as f64 + model.alpha) * model.phi[t][w];
                total_p += *p;
            }
            let mut u = rng::next_f64(&mut rng) * total_p;
            let mut new = k - 1;
            for (t, &p) in probs.iter().enumerate() {
                if u < p {
                    new = t;
                    break;
                }
                u -= p;
            }
            z[i] = new;
            n_k[new] += 1;
        }
    }
    let denom = tokens.len() as f64 + k as f64 * model.alpha;
    Ok((0..k)
        .map(|t| (n_k[t] as f64 + model.alpha) / denom)
        .collect())
}

/// One attribute's inferred class for one passenger.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileEntry {
    pub attribute: Attribute,
    pub class_index: usize,
    pub class_name: String,
    pub theta: Vec<f64>,
}

/// Per-passenger inferred attribute classes.
#[derive(Debug, Clone, PartialEq)]
pub struct AttributeProfile {
    pub uid: String,
    pub entries: Vec<ProfileEntry>,
    /// Attributes whose model dropped this passenger.
    pub missing: Vec<Attribute>,
}

/// First index of the maximum (ties break toward the lowest index).
pub fn argmax(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, &v) in values.iter().enumerate().skip(1) {
        if v > values[best] {
            best = i;
        }
    }
    best
}

/// Look up one passenger across the fitted attribute models.
pub fn infer_profile(
    models: &[(AttributeConfig, LdaModel)],
    uid: &str,
) -> Result<AttributeProfile> {
    let mut entries = Vec::new();
    let mut missing = Vec::new();
    for (config, model) in models {
        match model.theta_for(uid) {
            Some(theta) => {
                let class_index = argmax(theta);
                entries.push(ProfileEntry {
                    attribute: config.attribute,
                    class_index,
                    class_name: config.class_names[class_index].clone(),
                    theta: theta.to_vec(),
                });
            }
            None => missing.push(config.attribute),
        }
    }
    if entries.is_empty() {
        return Err(Error::UnknownUid(uid.into()));
    }
    Ok(AttributeProfile {
        uid: uid.into(),
        entries,
        missing,
    })
}

/// Phi rows keyed by class name: the per-class POI label weightings.
pub fn poi_weightings(
    model: &LdaModel,
    config: &AttributeConfig,
) -> Vec<(String, Vec<(PoiLabel, f64)>)> {
    config
        .class_names
        .iter()
        .zip(&model.phi)
        .map(|(name, row)| {
            (
                name.clone(),
                model.vocab.iter().copied().zip(row.iter().copied()).collect(),
            )
        })
        .collect()
}

/// UMass topic coherence averaged over topics, using the top 10 labels per
/// topic (or the whole vocabulary if smaller). Higher is better. Document
/// presence is computed over the pattern matrix restricted to the model
/// vocabulary.
pub fn consistency_score(model: &LdaModel, matrix: &TravelPatternMatrix) -> f64 {
    let v = model.vocab.len();
    let top_n = v.min(10);
    // Document frequencies within the vocabulary.
    let mut doc_freq = vec![0usize; v];
    let mut co_freq = vec![vec![0usize; v]; v];
    for row in &matrix.rows {
        let present: Vec<bool> = model
            .vocab
            .iter()
            .map(|l| row[l.index()] > 0)
            .collect();
        for a in 0..v {
            if present[a] {
                doc_freq[a] += 1;
                for b in 0..v {
                    if present[b] {
                        co_freq[a][b] += 1;
                    }
                }
            }
        }
    }

    let mut topic_scores = Vec::with_capacity(model.k);
    for row in &model.phi {
        let mut order: Vec<usize> = (0..v).collect();
        order.sort_by(|&a, &b| {
            row[b]
                .partial_cmp(&row[a])
                .unwrap_or(core::cmp::Ordering::Equal)
                .then(a.cmp(&b))
        });
        let top = &order[..top_n];
        let mut score = 0.0;
        let mut pairs = 0usize;
        for i in 1..top.len() {
            for j in 0..i {
                let wi = top[i];
                let wj = top[j];
                if doc_freq[wj] == 0 {
                    continue;
                }
                score += libm::log((co_freq[wi][wj] as f64 + 1.0) / doc_freq[wj] as f64);
                pairs += 1;
            }
        }
        topic_scores.push(if pairs > 0 { score / pairs as f64 } else { 0.0 });
    }
    topic_scores.iter().sum::<f64>() / topic_scores.len() as f64
}
