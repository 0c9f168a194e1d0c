//! Per-cell summaries, aggregation into tables, and the consistency checks.
//!
//! A *cell* is one (model, layer, comparison type) combination. Per-model
//! tables average a model's layers; the grand table averages all
//! model-layer cells with equal weight.

mod confounds;
pub mod report;
pub mod stats;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

pub use confounds::{
    cosine, embed_stats, token_stats, ConditionStats, CorrelationOutcome, EmbedCondition, EmbedSample, EmbeddingStats,
    Summary, TokenMean, TokenObservation, TokenStats, TOKEN_COMPARISONS,
};
pub use stats::{pearson, student_t_two_sided, PearsonResult};

use crate::corpus::{enumerate_pairs, ComparisonGroup, ComparisonType, Language, SentenceKey};
use crate::error::{Error, Result};
use crate::saefeat::{jaccard, ActiveFeatureSet};

/// Tie tolerance applied to Cross-Script Orig vs Cross-Script Para.
pub const ORDERING_TIE_TOLERANCE: f64 = 0.02;

/// Jaccard value of one sentence pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairValue {
    pub triplet_id: u32,
    pub jaccard: f64,
    pub degenerate: bool,
}

/// All pair values of one (model, layer, comparison type) cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonResult {
    pub model_id: String,
    pub layer: u32,
    #[serde(rename = "type")]
    pub comparison: ComparisonType,
    pub pairs: Vec<PairValue>,
    pub mean: f64,
    pub degenerate_count: usize,
}

impl ComparisonResult {
    pub fn pair_values(&self) -> impl Iterator<Item = f64> + '_ {
        self.pairs.iter().map(|p| p.jaccard)
    }

    pub fn cell(&self) -> CellMean {
        CellMean { model_id: self.model_id.clone(), layer: self.layer, comparison: self.comparison, mean: self.mean }
    }
}

/// Builds the summary for one cell. `expected_pairs` is the corpus size.
pub fn summarize(
    model_id: &str,
    layer: u32,
    comparison: ComparisonType,
    pairs: Vec<PairValue>,
    expected_pairs: usize,
) -> Result<ComparisonResult> {
    if pairs.len() != expected_pairs {
        return Err(Error::CountMismatch { expected: expected_pairs, actual: pairs.len() });
    }
    if let Some(p) = pairs.iter().find(|p| !(0.0..=1.0).contains(&p.jaccard)) {
        return Err(Error::InvalidValue(format!(
            "{comparison} triplet {}: Jaccard {} outside [0, 1]",
            p.triplet_id, p.jaccard
        )));
    }
    let mean = if pairs.is_empty() { f64::NAN } else { pairs.iter().map(|p| p.jaccard).sum::<f64>() / pairs.len() as f64 };
    let degenerate_count = pairs.iter().filter(|p| p.degenerate).count();
    Ok(ComparisonResult { model_id: model_id.to_string(), layer, comparison, pairs, mean, degenerate_count })
}

/// Jaccard values of one comparison type over the given triplets.
pub fn compare_pairs(
    sets: &BTreeMap<SentenceKey, ActiveFeatureSet>,
    triplet_ids: &[u32],
    comparison: ComparisonType,
) -> Result<Vec<PairValue>> {
    enumerate_pairs(triplet_ids.iter().copied(), comparison)
        .into_iter()
        .map(|p| {
            let get = |k: SentenceKey| sets.get(&k).ok_or_else(|| Error::MissingRecord(k.to_string()));
            let score = jaccard(get(p.left_key())?, get(p.right_key())?)?;
            Ok(PairValue { triplet_id: p.triplet_id, jaccard: score.value, degenerate: score.degenerate })
        })
        .collect()
}

/// All fourteen comparison results of one (model, layer) cell.
pub fn compare_cell(
    model_id: &str,
    layer: u32,
    sets: &BTreeMap<SentenceKey, ActiveFeatureSet>,
    triplet_ids: &[u32],
) -> Result<Vec<ComparisonResult>> {
    ComparisonType::ALL
        .into_iter()
        .map(|t| summarize(model_id, layer, t, compare_pairs(sets, triplet_ids, t)?, triplet_ids.len()))
        .collect()
}

/// The mean of one cell, detached from its pair values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellMean {
    pub model_id: String,
    pub layer: u32,
    pub comparison: ComparisonType,
    pub mean: f64,
}

impl CellMean {
    pub fn new(model_id: impl Into<String>, layer: u32, comparison: ComparisonType, mean: f64) -> Self {
        Self { model_id: model_id.into(), layer, comparison, mean }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Granularity {
    ModelLayer,
    PerModel,
    Grand,
}

/// One row of an aggregate table: a model-layer cell, a model, or the
/// grand total depending on granularity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AggregateRow {
    pub model_id: Option<String>,
    pub layer: Option<u32>,
    /// Number of model-layer cells averaged into this row.
    pub cells: usize,
    pub means: BTreeMap<ComparisonType, f64>,
}

impl AggregateRow {
    pub fn get(&self, comparison: ComparisonType) -> Option<f64> {
        self.means.get(&comparison).copied()
    }

    /// Unweighted mean of the member types of `group`.
    pub fn group_mean(&self, group: ComparisonGroup) -> Option<f64> {
        let members = group.members();
        let values: Option<Vec<f64>> = members.iter().map(|t| self.get(*t)).collect();
        values.map(|v| v.iter().sum::<f64>() / v.len() as f64)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AggregateTable {
    pub granularity: Granularity,
    pub rows: Vec<AggregateRow>,
}

impl AggregateTable {
    pub fn row_for_model(&self, model_id: &str) -> Option<&AggregateRow> {
        self.rows.iter().find(|r| r.model_id.as_deref() == Some(model_id))
    }

    /// The single row of a grand table.
    pub fn grand(&self) -> Option<&AggregateRow> {
        match self.granularity {
            Granularity::Grand => self.rows.first(),
            _ => None,
        }
    }

    pub fn models(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for r in &self.rows {
            if let Some(m) = r.model_id.as_deref() {
                if !out.contains(&m) {
                    out.push(m);
                }
            }
        }
        out
    }
}

/// Sort key that orders model ids by parameter count when they end in a
/// size suffix such as `270m`, `1b` or `27b`, and lexically otherwise.
pub fn model_sort_key(model_id: &str) -> (u8, u64, String) {
    let tail = model_id.rsplit(['-', '_', '/']).next().unwrap_or(model_id).to_ascii_lowercase();
    let (num, unit) = tail.split_at(tail.len().saturating_sub(1));
    let scale = match unit {
        "k" => Some(1e3),
        "m" => Some(1e6),
        "b" => Some(1e9),
        "t" => Some(1e12),
        _ => None,
    };
    match (num.parse::<f64>(), scale) {
        (Ok(n), Some(s)) if n.is_finite() && n >= 0.0 => (0, (n * s) as u64, model_id.to_string()),
        _ => (1, 0, model_id.to_string()),
    }
}

type CellKey = (String, u32);

fn grid(cells: &[CellMean]) -> Result<BTreeMap<CellKey, BTreeMap<ComparisonType, f64>>> {
    let mut grid: BTreeMap<CellKey, BTreeMap<ComparisonType, f64>> = BTreeMap::new();
    let mut types = BTreeSet::new();
    for c in cells {
        types.insert(c.comparison);
        let slot = grid.entry((c.model_id.clone(), c.layer)).or_default();
        if slot.insert(c.comparison, c.mean).is_some() {
            return Err(Error::DuplicateCell(format!("{}/{}/{}", c.model_id, c.layer, c.comparison)));
        }
    }
    let mut missing = Vec::new();
    for ((model, layer), row) in &grid {
        for t in &types {
            if !row.contains_key(t) {
                missing.push(format!("{model}/{layer}/{t}"));
            }
        }
    }
    if !missing.is_empty() {
        return Err(Error::IncompleteGrid(missing));
    }
    Ok(grid)
}

fn mean_rows<'a>(rows: impl Iterator<Item = &'a BTreeMap<ComparisonType, f64>>) -> (usize, BTreeMap<ComparisonType, f64>) {
    let mut sums: BTreeMap<ComparisonType, f64> = BTreeMap::new();
    let mut n = 0;
    for row in rows {
        n += 1;
        for (t, v) in row {
            *sums.entry(*t).or_default() += v;
        }
    }
    for v in sums.values_mut() {
        *v /= n as f64;
    }
    (n, sums)
}

/// Averages cells at the requested granularity.
///
/// Every (model, layer) present must carry every comparison type present.
/// The grand mean weights each model-layer cell equally, so models with more
/// layers weigh more than in a mean of per-model means.
pub fn aggregate(cells: &[CellMean], granularity: Granularity) -> Result<AggregateTable> {
    let grid = grid(cells)?;
    let mut keys: Vec<&CellKey> = grid.keys().collect();
    keys.sort_by(|a, b| model_sort_key(&a.0).cmp(&model_sort_key(&b.0)).then(a.1.cmp(&b.1)));
    let rows = match granularity {
        Granularity::ModelLayer => keys
            .into_iter()
            .map(|k| AggregateRow { model_id: Some(k.0.clone()), layer: Some(k.1), cells: 1, means: grid[k].clone() })
            .collect(),
        Granularity::PerModel => {
            let mut models: Vec<&String> = keys.iter().map(|k| &k.0).collect();
            models.dedup();
            models
                .into_iter()
                .map(|m| {
                    let (n, means) = mean_rows(grid.iter().filter(|(k, _)| &k.0 == m).map(|(_, v)| v));
                    AggregateRow { model_id: Some(m.clone()), layer: None, cells: n, means }
                })
                .collect()
        }
        Granularity::Grand => {
            if grid.is_empty() {
                Vec::new()
            } else {
                let (n, means) = mean_rows(grid.values());
                vec![AggregateRow { model_id: None, layer: None, cells: n, means }]
            }
        }
    };
    Ok(AggregateTable { granularity, rows })
}

/// The three within-language conditions and their (para, rand) types.
pub const SEPARATION_CONDITIONS: [(Language, ComparisonType, ComparisonType); 3] = [
    (Language::English, ComparisonType::EnOrigPara, ComparisonType::EnOrigRand),
    (Language::SerbianLatin, ComparisonType::LatOrigPara, ComparisonType::LatOrigRand),
    (Language::SerbianCyrillic, ComparisonType::CyrOrigPara, ComparisonType::CyrOrigRand),
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeparationFailure {
    pub model_id: String,
    pub layer: u32,
    pub language: Language,
    pub para: f64,
    pub rand: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeparationReport {
    pub fraction: f64,
    pub checked: usize,
    pub failures: Vec<SeparationFailure>,
}

/// Fraction of (model, layer, language) units where the Orig-Para mean
/// strictly exceeds the Orig-Rand mean.
pub fn separation_check(cells: &[CellMean]) -> Result<SeparationReport> {
    let mut by_cell: BTreeMap<CellKey, BTreeMap<ComparisonType, f64>> = BTreeMap::new();
    for c in cells {
        by_cell.entry((c.model_id.clone(), c.layer)).or_default().insert(c.comparison, c.mean);
    }
    if by_cell.is_empty() {
        return Err(Error::IncompleteGrid(vec!["no cells".into()]));
    }
    let mut missing = Vec::new();
    let mut failures = Vec::new();
    let mut checked = 0;
    for ((model, layer), row) in &by_cell {
        for (language, para_t, rand_t) in SEPARATION_CONDITIONS {
            match (row.get(&para_t), row.get(&rand_t)) {
                (Some(&para), Some(&rand)) => {
                    checked += 1;
                    // Written negated so that NaN counts as a failure.
                    #[allow(clippy::neg_cmp_op_on_partial_ord)]
                    if !(para > rand) {
                        failures.push(SeparationFailure { model_id: model.clone(), layer: *layer, language, para, rand });
                    }
                }
                (p, _) => {
                    let t = if p.is_none() { para_t } else { rand_t };
                    missing.push(format!("{model}/{layer}/{t}"));
                }
            }
        }
    }
    if !missing.is_empty() {
        return Err(Error::IncompleteGrid(missing));
    }
    let fraction = (checked - failures.len()) as f64 / checked as f64;
    Ok(SeparationReport { fraction, checked, failures })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StepOutcome {
    Pass,
    /// Not strictly ordered, but within the tie tolerance.
    WithinTolerance,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderingStep {
    pub higher: ComparisonGroup,
    pub lower: ComparisonGroup,
    pub higher_value: f64,
    pub lower_value: f64,
    pub outcome: StepOutcome,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderingReport {
    pub steps: Vec<OrderingStep>,
}

impl OrderingReport {
    /// True when no step failed outright.
    pub fn passed(&self) -> bool {
        self.steps.iter().all(|s| s.outcome != StepOutcome::Fail)
    }
}

/// Checks the expected ordering of the five cross-script groups on a grand
/// table (directional rows averaged per group).
pub fn ordering_check(grand: &AggregateTable) -> Result<OrderingReport> {
    let row = grand
        .grand()
        .ok_or_else(|| Error::IncompleteGrid(vec!["ordering_check needs a non-empty grand table".into()]))?;
    let mut values = [0.0; 5];
    let mut missing = Vec::new();
    for (slot, g) in values.iter_mut().zip(ComparisonGroup::HIERARCHY) {
        match row.group_mean(g) {
            Some(v) => *slot = v,
            None => missing.push(g.label().to_string()),
        }
    }
    if !missing.is_empty() {
        return Err(Error::IncompleteGrid(missing));
    }
    Ok(ordering_check_values(values))
}

/// Ordering check on the five group means in hierarchy order.
pub fn ordering_check_values(values: [f64; 5]) -> OrderingReport {
    let groups = ComparisonGroup::HIERARCHY;
    let steps = (0..4)
        .map(|i| {
            let (hi, lo) = (values[i], values[i + 1]);
            let tie_allowed = i == 0;
            let outcome = if hi > lo {
                StepOutcome::Pass
            } else if tie_allowed && (hi - lo).abs() <= ORDERING_TIE_TOLERANCE {
                StepOutcome::WithinTolerance
            } else {
                StepOutcome::Fail
            };
            OrderingStep { higher: groups[i], lower: groups[i + 1], higher_value: hi, lower_value: lo, outcome }
        })
        .collect();
    OrderingReport { steps }
}
