//! Result files, CSV tables and the markdown summary.
//!
//! Layout under a results directory:
//!
//! ```text
//! <model>/<layer>/<type>.json     one ComparisonResult each
//! <model>/<layer>/manifest.json   activation header of that cell
//! embeddings.json                 optional EmbeddingStats
//! ```

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use super::{
    aggregate, ordering_check, separation_check, token_stats, AggregateTable, CellMean, ComparisonResult,
    CorrelationOutcome, EmbeddingStats, Granularity, OrderingReport, SeparationReport, StepOutcome, TokenStats,
    SEPARATION_CONDITIONS, TOKEN_COMPARISONS,
};
use crate::corpus::{ComparisonGroup, ComparisonType};
use crate::error::{Error, Result};
use crate::tensorio::ActivationManifest;

pub const MANIFEST_FILE: &str = "manifest.json";
pub const EMBEDDINGS_FILE: &str = "embeddings.json";

/// Names of the CSV files written by [`write_tables`], in write order.
pub const TABLE_FILES: [&str; 8] = [
    "table1.csv",
    "table2.csv",
    "table3.csv",
    "table4.csv",
    "scale_trends.csv",
    "token_stats.csv",
    "token_means.csv",
    "embed_stats.csv",
];

/// Directory-safe form of a model id (`google/gemma-3-1b` → `google_gemma-3-1b`).
pub fn path_component(model_id: &str) -> String {
    model_id
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || matches!(c, '-' | '_' | '.') { c } else { '_' })
        .collect()
}

pub fn cell_dir(root: &Path, model_id: &str, layer: u32) -> PathBuf {
    root.join(path_component(model_id)).join(layer.to_string())
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| Error::json(path.display().to_string(), e))?;
    text.push('\n');
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| Error::json(path.display().to_string(), e))
}

/// Writes one cell's manifest and results below `root`.
pub fn write_cell(root: &Path, manifest: &ActivationManifest, results: &[ComparisonResult]) -> Result<()> {
    let dir = cell_dir(root, &manifest.model_id, manifest.layer);
    fs::create_dir_all(&dir).map_err(|e| Error::io(&dir, e))?;
    write_json(&dir.join(MANIFEST_FILE), manifest)?;
    for r in results {
        write_json(&dir.join(format!("{}.json", r.comparison.name())), r)?;
    }
    Ok(())
}

pub fn write_embedding_stats(root: &Path, stats: &EmbeddingStats) -> Result<()> {
    fs::create_dir_all(root).map_err(|e| Error::io(root, e))?;
    write_json(&root.join(EMBEDDINGS_FILE), stats)
}

/// Everything stored under a results directory.
#[derive(Debug, Clone, Default)]
pub struct ResultSet {
    pub results: Vec<ComparisonResult>,
    pub manifests: Vec<ActivationManifest>,
    pub embeddings: Option<EmbeddingStats>,
}

/// Reads a results directory written by [`write_cell`].
pub fn read_results(root: &Path) -> Result<ResultSet> {
    if !root.is_dir() {
        return Err(Error::io(root, std::io::Error::new(std::io::ErrorKind::NotFound, "results directory not found")));
    }
    let mut set = ResultSet::default();
    let embed = root.join(EMBEDDINGS_FILE);
    if embed.is_file() {
        set.embeddings = Some(read_json(&embed)?);
    }
    for model_dir in sorted_dirs(root)? {
        for layer_dir in sorted_dirs(&model_dir)? {
            let mut files: Vec<PathBuf> = fs::read_dir(&layer_dir)
                .map_err(|e| Error::io(&layer_dir, e))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|x| x == "json"))
                .collect();
            files.sort();
            for f in files {
                if f.file_name().is_some_and(|n| n == MANIFEST_FILE) {
                    set.manifests.push(read_json(&f)?);
                } else {
                    set.results.push(read_json(&f)?);
                }
            }
        }
    }
    Ok(set)
}

fn sorted_dirs(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut out: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| Error::io(dir, e))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_dir())
        .collect();
    out.sort();
    Ok(out)
}

/// Aggregates and checks computed from a set of results.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub model_layer: AggregateTable,
    pub per_model: AggregateTable,
    pub grand: AggregateTable,
    pub separation: SeparationReport,
    pub ordering: OrderingReport,
    pub tokens: Option<TokenStats>,
    pub embeddings: Option<EmbeddingStats>,
}

/// Runs aggregation and all checks. Token statistics are computed when the
/// cross-script results and manifests are present.
pub fn analyze(set: &ResultSet) -> Result<Analysis> {
    if set.results.is_empty() {
        return Err(Error::IncompleteGrid(vec!["no comparison results".into()]));
    }
    let cells: Vec<CellMean> = set.results.iter().map(ComparisonResult::cell).collect();
    let model_layer = aggregate(&cells, Granularity::ModelLayer)?;
    let per_model = aggregate(&cells, Granularity::PerModel)?;
    let grand = aggregate(&cells, Granularity::Grand)?;
    let separation = separation_check(&cells)?;
    let ordering = ordering_check(&grand)?;
    let has_token_types = set.results.iter().any(|r| TOKEN_COMPARISONS.contains(&r.comparison));
    let tokens = if has_token_types && !set.manifests.is_empty() {
        Some(token_stats(&set.manifests, &set.results)?)
    } else {
        None
    };
    Ok(Analysis { model_layer, per_model, grand, separation, ordering, tokens, embeddings: set.embeddings.clone() })
}

fn f4(v: f64) -> String {
    format!("{v:.4}")
}

fn csv_bytes(header: &[String], rows: &[Vec<String>]) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| Error::Config(format!("csv: {e}"));
    w.write_record(header).map_err(err)?;
    for r in rows {
        w.write_record(r).map_err(err)?;
    }
    w.into_inner().map_err(|e| Error::Config(format!("csv: {e}")))
}

fn strings(items: &[&str]) -> Vec<String> {
    items.iter().map(|s| s.to_string()).collect()
}

fn grand_group(a: &Analysis, g: ComparisonGroup) -> Option<f64> {
    a.grand.grand().and_then(|r| r.group_mean(g))
}

/// The CSV tables as (file name, contents), in [`TABLE_FILES`] order.
pub fn render_tables(a: &Analysis) -> Result<Vec<(&'static str, Vec<u8>)>> {
    let mut out = Vec::new();

    let rows: Vec<Vec<String>> = ComparisonGroup::HIERARCHY
        .iter()
        .filter_map(|&g| grand_group(a, g).map(|v| vec![g.label().to_string(), f4(v)]))
        .collect();
    out.push((TABLE_FILES[0], csv_bytes(&strings(&["comparison", "mean_jaccard"]), &rows)?));

    let rows: Vec<Vec<String>> = SEPARATION_CONDITIONS
        .iter()
        .filter_map(|(lang, para, rand)| {
            let row = a.grand.grand()?;
            Some(vec![lang.label().to_string(), f4(row.get(*para)?), f4(row.get(*rand)?)])
        })
        .collect();
    out.push((TABLE_FILES[1], csv_bytes(&strings(&["condition", "orig_para", "orig_rand"]), &rows)?));

    let models = a.per_model.models();
    let mut header = vec!["comparison".to_string()];
    header.extend(models.iter().map(|m| m.to_string()));
    let model_table = |types: Vec<ComparisonType>| -> Vec<Vec<String>> {
        types
            .into_iter()
            .filter(|t| models.iter().all(|m| a.per_model.row_for_model(m).and_then(|r| r.get(*t)).is_some()))
            .map(|t| {
                let mut row = vec![t.table_label().to_string()];
                row.extend(models.iter().map(|m| f4(a.per_model.row_for_model(m).and_then(|r| r.get(t)).unwrap_or(f64::NAN))));
                row
            })
            .collect()
    };
    let within: Vec<ComparisonType> = ComparisonType::ALL.into_iter().filter(|t| t.is_within_language()).collect();
    let cross: Vec<ComparisonType> = ComparisonType::ALL.into_iter().filter(|t| !t.is_within_language()).collect();
    out.push((TABLE_FILES[2], csv_bytes(&header, &model_table(within))?));
    out.push((TABLE_FILES[3], csv_bytes(&header, &model_table(cross))?));

    let mut rows = Vec::new();
    for m in &models {
        let row = a.per_model.row_for_model(m).expect("model row");
        for g in ComparisonGroup::ALL {
            if let Some(v) = row.group_mean(g) {
                rows.push(vec![m.to_string(), g.label().to_string(), row.cells.to_string(), f4(v)]);
            }
        }
    }
    out.push((TABLE_FILES[4], csv_bytes(&strings(&["model_id", "group", "layers", "mean_jaccard"]), &rows)?));

    let (obs, means) = match &a.tokens {
        Some(t) => (
            t.observations
                .iter()
                .map(|o| {
                    vec![
                        o.model_id.clone(),
                        o.layer.to_string(),
                        o.comparison.name().to_string(),
                        o.triplet_id.to_string(),
                        o.token_diff.to_string(),
                        f4(o.jaccard),
                    ]
                })
                .collect(),
            t.means
                .iter()
                .map(|m| {
                    vec![m.model_id.clone(), m.language.code().to_string(), m.variant.code().to_string(), f4(m.mean_tokens), m.n.to_string()]
                })
                .collect(),
        ),
        None => (Vec::new(), Vec::new()),
    };
    out.push((
        TABLE_FILES[5],
        csv_bytes(&strings(&["model_id", "layer", "type", "triplet_id", "token_diff_cyr_minus_lat", "jaccard"]), &obs)?,
    ));
    out.push((TABLE_FILES[6], csv_bytes(&strings(&["model_id", "language", "variant", "mean_tokens", "n"]), &means)?));

    let rows: Vec<Vec<String>> = a
        .embeddings
        .iter()
        .flat_map(|e| e.conditions.iter())
        .flat_map(|c| {
            c.samples.iter().map(move |s| {
                vec![c.condition.name().to_string(), s.triplet_id.to_string(), s.left.to_string(), s.right.to_string(), f4(s.cosine)]
            })
        })
        .collect();
    out.push((TABLE_FILES[7], csv_bytes(&strings(&["condition", "triplet_id", "left", "right", "cosine"]), &rows)?));
    Ok(out)
}

/// Writes all CSV tables into `dir`, returning the paths written.
pub fn write_tables(a: &Analysis, dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut paths = Vec::new();
    for (name, bytes) in render_tables(a)? {
        let p = dir.join(name);
        fs::write(&p, bytes).map_err(|e| Error::io(&p, e))?;
        paths.push(p);
    }
    Ok(paths)
}

fn outcome_label(o: StepOutcome) -> &'static str {
    match o {
        StepOutcome::Pass => "pass",
        StepOutcome::WithinTolerance => "within tolerance",
        StepOutcome::Fail => "FAIL",
    }
}

/// Markdown summary of tables and checks.
pub fn render_markdown(a: &Analysis) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# Script-invariance report\n");
    let cells = a.grand.grand().map_or(0, |r| r.cells);
    let _ = writeln!(s, "Models: {}. Model-layer cells: {cells}.\n", a.per_model.models().join(", "));

    let _ = writeln!(s, "## Cross-script hierarchy (grand means)\n");
    let _ = writeln!(s, "| Comparison | Mean Jaccard |\n|---|---|");
    for g in ComparisonGroup::HIERARCHY {
        if let Some(v) = grand_group(a, g) {
            let _ = writeln!(s, "| {} | {v:.2} |", g.label());
        }
    }

    let _ = writeln!(s, "\n## Baseline (grand means)\n");
    let _ = writeln!(s, "| Condition | Orig-Para | Orig-Rand |\n|---|---|---|");
    if let Some(row) = a.grand.grand() {
        for (lang, para, rand) in SEPARATION_CONDITIONS {
            if let (Some(p), Some(r)) = (row.get(para), row.get(rand)) {
                let _ = writeln!(s, "| {} | {p:.2} | {r:.2} |", lang.label());
            }
        }
    }

    let models = a.per_model.models();
    for (title, within) in [("Within-language, per model", true), ("Cross-script and cross-language, per model", false)] {
        let _ = writeln!(s, "\n## {title}\n");
        let _ = writeln!(s, "| Comparison | {} |", models.join(" | "));
        let _ = writeln!(s, "|---|{}", "---|".repeat(models.len()));
        for t in ComparisonType::ALL.into_iter().filter(|t| t.is_within_language() == within) {
            let vals: Vec<String> = models
                .iter()
                .map(|m| a.per_model.row_for_model(m).and_then(|r| r.get(t)).map_or("-".into(), |v| format!("{v:.3}")))
                .collect();
            let _ = writeln!(s, "| {} | {} |", t.table_label(), vals.join(" | "));
        }
    }

    let _ = writeln!(s, "\n## Checks\n");
    let sep = &a.separation;
    let verdict = if sep.failures.is_empty() { "pass" } else { "FAIL" };
    let _ = writeln!(
        s,
        "- Separation (Orig-Para > Orig-Rand): {verdict}, fraction {:.4} over {} units",
        sep.fraction, sep.checked
    );
    for f in &sep.failures {
        let _ = writeln!(s, "  - {}/{} {}: para {:.4} <= rand {:.4}", f.model_id, f.layer, f.language.label(), f.para, f.rand);
    }
    let verdict = if a.ordering.passed() { "pass" } else { "FAIL" };
    let _ = writeln!(s, "- Ordering: {verdict}");
    for st in &a.ordering.steps {
        let _ = writeln!(
            s,
            "  - {} ({:.4}) > {} ({:.4}): {}",
            st.higher.label(),
            st.higher_value,
            st.lower.label(),
            st.lower_value,
            outcome_label(st.outcome)
        );
    }

    if let Some(t) = &a.tokens {
        let _ = writeln!(s, "\n## Token counts\n");
        match &t.correlation {
            CorrelationOutcome::Computed(r) => {
                let _ = writeln!(s, "Token difference (Cyrillic - Latin) vs Jaccard: r = {:.3}, p = {:.3}, n = {}", r.r, r.p, r.n);
            }
            CorrelationOutcome::DegenerateVariance { n } => {
                let _ = writeln!(s, "Token difference vs Jaccard: zero variance over {n} observations, no correlation");
            }
            CorrelationOutcome::TooFewObservations { n } => {
                let _ = writeln!(s, "Token difference vs Jaccard: only {n} observations");
            }
        }
    }

    if let Some(e) = &a.embeddings {
        let _ = writeln!(s, "\n## Sentence-embedding similarity ({})\n", e.embedder_id);
        let _ = writeln!(s, "| Condition | n | mean | min | q1 | median | q3 |\n|---|---|---|---|---|---|---|");
        for c in &e.conditions {
            let m = &c.summary;
            let _ = writeln!(
                s,
                "| {} | {} | {:.3} | {:.3} | {:.3} | {:.3} | {:.3} |",
                c.condition.name(),
                m.n,
                m.mean,
                m.min,
                m.q1,
                m.median,
                m.q3
            );
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{summarize, PairValue};

    fn results_for(model: &str, layer: u32, base: f64) -> Vec<ComparisonResult> {
        ComparisonType::ALL
            .iter()
            .enumerate()
            .map(|(i, &t)| {
                let v = match t.group() {
                    ComparisonGroup::CrossScriptOrig => 0.6,
                    ComparisonGroup::CrossScriptPara => 0.59,
                    ComparisonGroup::CrossScriptCrossPara => 0.47,
                    ComparisonGroup::CrossScriptRandom => 0.28,
                    ComparisonGroup::CrossLanguageRandom => 0.19,
                    _ if i % 2 == 0 => 0.54,
                    _ => 0.3,
                };
                let pairs = (0..30).map(|id| PairValue { triplet_id: id, jaccard: v + base, degenerate: false }).collect();
                summarize(model, layer, t, pairs, 30).unwrap()
            })
            .collect()
    }

    #[test]
    fn tables_and_markdown() {
        let mut set = ResultSet::default();
        set.results.extend(results_for("toy-1b", 2, 0.0));
        set.results.extend(results_for("toy-270m", 1, 0.02));
        let a = analyze(&set).unwrap();
        assert!(a.ordering.passed());
        assert_eq!(a.separation.fraction, 1.0);
        let tables = render_tables(&a).unwrap();
        assert_eq!(tables.len(), TABLE_FILES.len());
        let t3 = String::from_utf8(tables[2].1.clone()).unwrap();
        assert!(t3.starts_with("comparison,toy-270m,toy-1b\n"), "{t3}");
        assert_eq!(t3.lines().count(), 7);
        let t4 = String::from_utf8(tables[3].1.clone()).unwrap();
        assert_eq!(t4.lines().count(), 9);
        let md = render_markdown(&a);
        assert!(md.contains("| Cross-Script Original | 0.61 |"), "{md}");
        assert!(md.contains("Ordering: pass"));
    }

    #[test]
    fn cell_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let results = results_for("org/toy-1b", 4, 0.0);
        let m = ActivationManifest {
            model_id: "org/toy-1b".into(),
            layer: 4,
            hidden_dim: 8,
            pooling: "last_token".into(),
            record_count: 0,
            records: vec![],
            bos_prepended: Some(true),
            extra: Default::default(),
        };
        write_cell(dir.path(), &m, &results).unwrap();
        assert!(dir.path().join("org_toy-1b/4/CS-Orig.json").is_file());
        let back = read_results(dir.path()).unwrap();
        assert_eq!(back.manifests, vec![m]);
        let mut expected = results.clone();
        expected.sort_by_key(|r| r.comparison.name().to_string());
        assert_eq!(back.results, expected);
    }
}
