//! Token-count and sentence-embedding checks on the corpus.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::stats::{pearson, PearsonResult};
use super::ComparisonResult;
use crate::corpus::{ComparisonType, Corpus, Language, SentenceKey, Variant};
use crate::error::{Error, Result};
use crate::tensorio::{ActivationManifest, EmbeddingDump};

/// Cross-script types whose pairs are joined with token differences.
pub const TOKEN_COMPARISONS: [ComparisonType; 2] = [ComparisonType::CsOrig, ComparisonType::CsPara];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TokenMean {
    pub model_id: String,
    pub language: Language,
    pub variant: Variant,
    pub mean_tokens: f64,
    pub n: usize,
}

/// One (pair, model-layer) observation: Cyrillic minus Latin token count
/// against the pair's Jaccard value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TokenObservation {
    pub model_id: String,
    pub layer: u32,
    pub comparison: ComparisonType,
    pub triplet_id: u32,
    pub token_diff: i64,
    pub jaccard: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CorrelationOutcome {
    Computed(PearsonResult),
    DegenerateVariance { n: usize },
    TooFewObservations { n: usize },
}

impl CorrelationOutcome {
    pub fn result(&self) -> Option<&PearsonResult> {
        match self {
            CorrelationOutcome::Computed(r) => Some(r),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TokenStats {
    pub means: Vec<TokenMean>,
    pub observations: Vec<TokenObservation>,
    pub correlation: CorrelationOutcome,
}

impl TokenStats {
    /// Number of observations fed to the correlation.
    pub fn n(&self) -> usize {
        self.observations.len()
    }
}

/// Token means per model and (language, variant), plus the correlation of
/// Cyrillic-minus-Latin token differences with cross-script Jaccard values.
///
/// Each (model, layer) result is joined with the manifest of the same
/// (model, layer). Types outside [`TOKEN_COMPARISONS`] are ignored.
pub fn token_stats(manifests: &[ActivationManifest], results: &[ComparisonResult]) -> Result<TokenStats> {
    let mut counts: BTreeMap<(&str, u32), BTreeMap<SentenceKey, u32>> = BTreeMap::new();
    for m in manifests {
        let slot = counts.entry((m.model_id.as_str(), m.layer)).or_default();
        for r in &m.records {
            slot.insert(r.key(), r.token_count);
        }
    }

    // Token counts depend on the tokenizer only, so one manifest per model
    // supplies the means.
    let mut means = Vec::new();
    let mut seen_models: Vec<&str> = Vec::new();
    let mut ordered: Vec<&ActivationManifest> = manifests.iter().collect();
    ordered.sort_by(|a, b| super::model_sort_key(&a.model_id).cmp(&super::model_sort_key(&b.model_id)).then(a.layer.cmp(&b.layer)));
    for m in ordered {
        if seen_models.contains(&m.model_id.as_str()) {
            continue;
        }
        seen_models.push(&m.model_id);
        for language in Language::ALL {
            for variant in Variant::ALL {
                let values: Vec<u32> = m
                    .records
                    .iter()
                    .filter(|r| r.language == language && r.variant == variant)
                    .map(|r| r.token_count)
                    .collect();
                if values.is_empty() {
                    continue;
                }
                let mean_tokens = values.iter().map(|&v| v as f64).sum::<f64>() / values.len() as f64;
                means.push(TokenMean { model_id: m.model_id.clone(), language, variant, mean_tokens, n: values.len() });
            }
        }
    }

    let mut sorted: Vec<&ComparisonResult> = results.iter().filter(|r| TOKEN_COMPARISONS.contains(&r.comparison)).collect();
    sorted.sort_by(|a, b| {
        super::model_sort_key(&a.model_id)
            .cmp(&super::model_sort_key(&b.model_id))
            .then(a.layer.cmp(&b.layer))
            .then(a.comparison.cmp(&b.comparison))
    });
    let mut observations = Vec::new();
    for res in sorted {
        let cell = counts
            .get(&(res.model_id.as_str(), res.layer))
            .ok_or_else(|| Error::MissingTokenCounts(format!("no manifest for {}/{}", res.model_id, res.layer)))?;
        let ((_, lat_variant), (_, cyr_variant)) = res.comparison.endpoints();
        for p in &res.pairs {
            let lat = SentenceKey::new(p.triplet_id, Language::SerbianLatin, lat_variant);
            let cyr = SentenceKey::new(p.triplet_id, Language::SerbianCyrillic, cyr_variant);
            let lookup = |k: &SentenceKey| {
                cell.get(k)
                    .copied()
                    .ok_or_else(|| Error::MissingTokenCounts(format!("{}/{} {k}", res.model_id, res.layer)))
            };
            let diff = lookup(&cyr)? as i64 - lookup(&lat)? as i64;
            observations.push(TokenObservation {
                model_id: res.model_id.clone(),
                layer: res.layer,
                comparison: res.comparison,
                triplet_id: p.triplet_id,
                token_diff: diff,
                jaccard: p.jaccard,
            });
        }
    }

    let x: Vec<f64> = observations.iter().map(|o| o.token_diff as f64).collect();
    let y: Vec<f64> = observations.iter().map(|o| o.jaccard).collect();
    let correlation = match pearson(&x, &y) {
        Ok(r) => CorrelationOutcome::Computed(r),
        Err(Error::DegenerateVariance) => CorrelationOutcome::DegenerateVariance { n: x.len() },
        Err(Error::TooFewObservations(n)) => CorrelationOutcome::TooFewObservations { n },
        Err(e) => return Err(e),
    };
    Ok(TokenStats { means, observations, correlation })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EmbedCondition {
    /// Latin vs Cyrillic original.
    CrossScript,
    /// English original vs each Serbian original.
    CrossLanguage,
    ParaphraseEn,
    ParaphraseLat,
    ParaphraseCyr,
    /// Original vs random within each of the three scripts.
    Random,
}

impl EmbedCondition {
    pub const ALL: [EmbedCondition; 6] = [
        EmbedCondition::CrossScript,
        EmbedCondition::CrossLanguage,
        EmbedCondition::ParaphraseEn,
        EmbedCondition::ParaphraseLat,
        EmbedCondition::ParaphraseCyr,
        EmbedCondition::Random,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EmbedCondition::CrossScript => "cross_script",
            EmbedCondition::CrossLanguage => "cross_language",
            EmbedCondition::ParaphraseEn => "paraphrase_en",
            EmbedCondition::ParaphraseLat => "paraphrase_sr_lat",
            EmbedCondition::ParaphraseCyr => "paraphrase_sr_cyr",
            EmbedCondition::Random => "random",
        }
    }

    fn slot_pairs(self) -> Vec<((Language, Variant), (Language, Variant))> {
        use Language::{English as En, SerbianCyrillic as Cyr, SerbianLatin as Lat};
        use Variant::{Original as O, Paraphrase as P, Random as R};
        match self {
            EmbedCondition::CrossScript => vec![((Lat, O), (Cyr, O))],
            EmbedCondition::CrossLanguage => vec![((En, O), (Lat, O)), ((En, O), (Cyr, O))],
            EmbedCondition::ParaphraseEn => vec![((En, O), (En, P))],
            EmbedCondition::ParaphraseLat => vec![((Lat, O), (Lat, P))],
            EmbedCondition::ParaphraseCyr => vec![((Cyr, O), (Cyr, P))],
            EmbedCondition::Random => vec![((En, O), (En, R)), ((Lat, O), (Lat, R)), ((Cyr, O), (Cyr, R))],
        }
    }
}

/// Distribution summary with type-7 (linear interpolation) quartiles.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub n: usize,
    pub mean: f64,
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max: f64,
}

impl Summary {
    pub fn of(values: &[f64]) -> Option<Summary> {
        if values.is_empty() {
            return None;
        }
        let mut v = values.to_vec();
        v.sort_by(f64::total_cmp);
        let q = |p: f64| {
            let h = (v.len() - 1) as f64 * p;
            let lo = h.floor() as usize;
            let hi = h.ceil() as usize;
            v[lo] + (h - lo as f64) * (v[hi] - v[lo])
        };
        Some(Summary {
            n: v.len(),
            mean: v.iter().sum::<f64>() / v.len() as f64,
            min: v[0],
            q1: q(0.25),
            median: q(0.5),
            q3: q(0.75),
            max: v[v.len() - 1],
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmbedSample {
    pub triplet_id: u32,
    pub left: SentenceKey,
    pub right: SentenceKey,
    pub cosine: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionStats {
    pub condition: EmbedCondition,
    pub samples: Vec<EmbedSample>,
    pub summary: Summary,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingStats {
    pub embedder_id: String,
    pub conditions: Vec<ConditionStats>,
}

impl EmbeddingStats {
    pub fn get(&self, condition: EmbedCondition) -> Option<&ConditionStats> {
        self.conditions.iter().find(|c| c.condition == condition)
    }
}

pub fn cosine(a: &[f32], b: &[f32]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    let (mut dot, mut na, mut nb) = (0.0f64, 0.0f64, 0.0f64);
    for (&x, &y) in a.iter().zip(b) {
        let (x, y) = (x as f64, y as f64);
        dot += x * y;
        na += x * x;
        nb += y * y;
    }
    if na == 0.0 || nb == 0.0 || !dot.is_finite() {
        return Err(Error::NonFiniteInput("cosine of a zero or non-finite vector".into()));
    }
    Ok((dot / (na.sqrt() * nb.sqrt())).clamp(-1.0, 1.0))
}

/// Cosine similarities of the corpus sentence pairs under each condition.
pub fn embed_stats(dump: &EmbeddingDump, corpus: &Corpus) -> Result<EmbeddingStats> {
    let missing: Vec<String> = corpus.keys().into_iter().filter(|k| dump.get(k).is_none()).map(|k| k.to_string()).collect();
    if !missing.is_empty() {
        return Err(Error::MissingEmbedding(missing.join(", ")));
    }
    let mut conditions = Vec::new();
    for condition in EmbedCondition::ALL {
        let mut samples = Vec::new();
        for (l, r) in condition.slot_pairs() {
            for id in corpus.triplet_ids() {
                let left = SentenceKey::new(id, l.0, l.1);
                let right = SentenceKey::new(id, r.0, r.1);
                let cos = cosine(dump.get(&left).unwrap_or_default(), dump.get(&right).unwrap_or_default())?;
                samples.push(EmbedSample { triplet_id: id, left, right, cosine: cos });
            }
        }
        let values: Vec<f64> = samples.iter().map(|s| s.cosine).collect();
        let summary = Summary::of(&values).ok_or_else(|| Error::MissingEmbedding("empty corpus".into()))?;
        conditions.push(ConditionStats { condition, samples, summary });
    }
    Ok(EmbeddingStats { embedder_id: dump.embedder_id.clone(), conditions })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::PairValue;
    use crate::tensorio::RecordMeta;

    fn manifest(model: &str, layer: u32, count: impl Fn(u32, Language, Variant) -> u32) -> ActivationManifest {
        let mut records = Vec::new();
        for id in 0..30 {
            for language in Language::ALL {
                for variant in Variant::ALL {
                    records.push(RecordMeta { triplet_id: id, language, variant, token_count: count(id, language, variant) });
                }
            }
        }
        ActivationManifest {
            model_id: model.into(),
            layer,
            hidden_dim: 4,
            pooling: "last_token".into(),
            record_count: records.len(),
            records,
            bos_prepended: None,
            extra: Default::default(),
        }
    }

    fn result(model: &str, layer: u32, comparison: ComparisonType, j: impl Fn(u32) -> f64) -> ComparisonResult {
        let pairs = (0..30).map(|i| PairValue { triplet_id: i, jaccard: j(i), degenerate: false }).collect();
        super::super::summarize(model, layer, comparison, pairs, 30).unwrap()
    }

    #[test]
    fn equal_counts_give_degenerate_correlation() {
        let m = manifest("m-1b", 3, |_, _, _| 12);
        let r = result("m-1b", 3, ComparisonType::CsOrig, |i| i as f64 / 30.0);
        let stats = token_stats(&[m], &[r]).unwrap();
        assert!(stats.observations.iter().all(|o| o.token_diff == 0));
        assert_eq!(stats.correlation, CorrelationOutcome::DegenerateVariance { n: 30 });
        assert_eq!(stats.means.len(), 9);
    }

    #[test]
    fn planted_linear_relation() {
        let m = manifest("m-1b", 3, |id, lang, _| if lang == Language::SerbianCyrillic { 10 + id % 7 } else { 10 });
        let rs = [
            result("m-1b", 3, ComparisonType::CsOrig, |i| 0.1 + 0.05 * (i % 7) as f64),
            result("m-1b", 3, ComparisonType::CsPara, |i| 0.1 + 0.05 * (i % 7) as f64),
            result("m-1b", 3, ComparisonType::EnOrigPara, |_| 0.9),
        ];
        let stats = token_stats(&[m], &rs).unwrap();
        assert_eq!(stats.n(), 60);
        let r = stats.correlation.result().unwrap();
        assert!((r.r - 1.0).abs() < 1e-12);
    }

    #[test]
    fn missing_manifest_is_reported() {
        let r = result("m-1b", 3, ComparisonType::CsOrig, |_| 0.5);
        assert!(matches!(token_stats(&[], &[r]), Err(Error::MissingTokenCounts(_))));
    }

    #[test]
    fn cosine_basics() {
        assert!((cosine(&[0.6, 0.8], &[0.6, 0.8]).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(cosine(&[1.0, 0.0], &[0.0, 1.0]).unwrap(), 0.0);
        assert!(cosine(&[0.0, 0.0], &[1.0, 0.0]).is_err());
    }

    #[test]
    fn quartiles_type7() {
        let s = Summary::of(&[4.0, 1.0, 3.0, 2.0]).unwrap();
        assert_eq!((s.min, s.q1, s.median, s.q3, s.max), (1.0, 1.75, 2.5, 3.25, 4.0));
        assert_eq!(s.mean, 2.5);
        assert!(Summary::of(&[]).is_none());
    }
}
