//! End-to-end runs: corpus, per-cell encoding and comparison, reports.
//!
//! A run writes into a staging directory next to the output and moves the
//! finished `results/`, `tables/` and `report.md` into place only when every
//! step succeeded.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::report::{self, Analysis, ResultSet};
use crate::analysis::{compare_cell, embed_stats, ComparisonResult};
use crate::corpus::{load_corpus, Corpus};
use crate::error::{Error, Result};
use crate::saefeat::{encode_corpus, DEFAULT_TAU};
use crate::tensorio::{read_activations, read_embeddings, read_sae, ActivationManifest};

/// Environment variable capping worker threads.
pub const THREADS_ENV: &str = "DIGRAPH_PROBE_THREADS";

fn default_tau() -> f32 {
    DEFAULT_TAU
}

/// One model and its per-layer dump and SAE files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelEntry {
    pub model_id: String,
    pub layers: Vec<u32>,
    /// One `ACTV1` file per layer, same order as `layers`.
    pub activations: Vec<PathBuf>,
    /// One `SAEW1` file per layer, same order as `layers`.
    pub saes: Vec<PathBuf>,
}

/// JSON run configuration. Relative paths resolve against the config file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub corpus: PathBuf,
    pub models: Vec<ModelEntry>,
    #[serde(default = "default_tau")]
    pub tau: f32,
    pub output: PathBuf,
    /// Optional `EMBV1` sentence-embedding dump.
    #[serde(default)]
    pub embeddings: Option<PathBuf>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut cfg: RunConfig = serde_json::from_str(&text).map_err(|e| Error::json(path.display().to_string(), e))?;
        if let Some(base) = path.parent() {
            cfg.resolve_paths(base);
        }
        Ok(cfg)
    }

    /// Makes every relative path relative to `base`.
    pub fn resolve_paths(&mut self, base: &Path) {
        let fix = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        };
        fix(&mut self.corpus);
        fix(&mut self.output);
        if let Some(e) = self.embeddings.as_mut() {
            fix(e);
        }
        for m in &mut self.models {
            m.activations.iter_mut().for_each(fix);
            m.saes.iter_mut().for_each(fix);
        }
    }

    /// Structural checks that need no file access.
    pub fn validate(&self) -> Result<()> {
        if !(self.tau.is_finite() && self.tau > 0.0) {
            return Err(Error::Config(format!("tau must be positive, got {}", self.tau)));
        }
        if self.models.is_empty() {
            return Err(Error::Config("no models configured".into()));
        }
        let mut seen = BTreeSet::new();
        for m in &self.models {
            if m.layers.is_empty() {
                return Err(Error::Config(format!("model {} has no layers", m.model_id)));
            }
            if m.activations.len() != m.layers.len() || m.saes.len() != m.layers.len() {
                return Err(Error::Config(format!(
                    "model {}: {} layers but {} activation files and {} SAE files",
                    m.model_id,
                    m.layers.len(),
                    m.activations.len(),
                    m.saes.len()
                )));
            }
            for &l in &m.layers {
                if !seen.insert((m.model_id.clone(), l)) {
                    return Err(Error::Config(format!("model {} layer {l} listed twice", m.model_id)));
                }
            }
        }
        Ok(())
    }

    /// Input files that do not exist.
    pub fn missing_inputs(&self) -> Vec<PathBuf> {
        let mut all: Vec<&PathBuf> = vec![&self.corpus];
        all.extend(self.embeddings.iter());
        for m in &self.models {
            all.extend(m.activations.iter());
            all.extend(m.saes.iter());
        }
        all.into_iter().filter(|p| !p.is_file()).cloned().collect()
    }

    fn cells(&self) -> Vec<Cell<'_>> {
        let mut cells: Vec<Cell<'_>> = self
            .models
            .iter()
            .flat_map(|m| {
                m.layers.iter().enumerate().map(move |(i, &layer)| Cell {
                    model_id: &m.model_id,
                    layer,
                    activations: &m.activations[i],
                    sae: &m.saes[i],
                })
            })
            .collect();
        cells.sort_by(|a, b| {
            crate::analysis::model_sort_key(a.model_id).cmp(&crate::analysis::model_sort_key(b.model_id)).then(a.layer.cmp(&b.layer))
        });
        cells
    }
}

struct Cell<'a> {
    model_id: &'a str,
    layer: u32,
    activations: &'a Path,
    sae: &'a Path,
}

/// Output of one (model, layer) cell.
#[derive(Debug, Clone)]
pub struct CellOutput {
    pub manifest: ActivationManifest,
    pub results: Vec<ComparisonResult>,
}

/// Thread pool sized by [`THREADS_ENV`], or rayon's default when unset.
pub fn thread_pool() -> Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| Error::Config(format!("{THREADS_ENV} must be a positive integer, got {v:?}")))?;
        builder = builder.num_threads(n);
    }
    builder.build().map_err(|e| Error::Config(format!("thread pool: {e}")))
}

/// Encodes one dump with its SAE and computes the fourteen comparisons.
pub fn process_cell(
    corpus: &Corpus,
    model_id: &str,
    layer: u32,
    activations: &Path,
    sae: &Path,
    tau: f32,
) -> Result<CellOutput> {
    let (manifest, records) = read_activations(activations)?;
    if manifest.model_id != model_id || manifest.layer != layer {
        return Err(Error::ManifestMismatch {
            field: if manifest.model_id != model_id { "model_id" } else { "layer" },
            detail: format!(
                "{} holds {}/{}, config expects {model_id}/{layer}",
                activations.display(),
                manifest.model_id,
                manifest.layer
            ),
        });
    }
    let weights = read_sae(sae)?;
    let sets = encode_corpus(&weights, &manifest, &records, tau)?;
    let ids: Vec<u32> = corpus.triplet_ids().collect();
    if let Some(k) = corpus.keys().into_iter().find(|k| !sets.contains_key(k)) {
        return Err(Error::MissingRecord(format!("{k} in {}", activations.display())));
    }
    let results = compare_cell(model_id, layer, &sets, &ids)?;
    Ok(CellOutput { manifest, results })
}

/// What a successful run produced.
#[derive(Debug, Clone)]
pub struct RunSummary {
    pub output: PathBuf,
    pub cells: usize,
    pub results: usize,
    pub analysis: Analysis,
}

pub const RESULTS_DIR: &str = "results";
pub const TABLES_DIR: &str = "tables";
pub const REPORT_FILE: &str = "report.md";

/// Runs the full evaluation described by `config`.
pub fn run_all(config: &RunConfig) -> Result<RunSummary> {
    config.validate()?;
    let missing = config.missing_inputs();
    if let Some(first) = missing.first() {
        let list: Vec<String> = missing.iter().map(|p| p.display().to_string()).collect();
        return Err(Error::io(
            first,
            std::io::Error::new(std::io::ErrorKind::NotFound, format!("missing inputs: {}", list.join(", "))),
        ));
    }
    let corpus = load_corpus(&config.corpus)?;
    let embed = match &config.embeddings {
        Some(p) => Some(embed_stats(&read_embeddings(p)?, &corpus)?),
        None => None,
    };

    let pool = thread_pool()?;
    let cells = config.cells();
    let outputs: Vec<CellOutput> = pool.install(|| {
        cells
            .par_iter()
            .map(|c| process_cell(&corpus, c.model_id, c.layer, c.activations, c.sae, config.tau))
            .collect::<Result<Vec<_>>>()
    })?;

    let out = &config.output;
    let parent = match out.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    fs::create_dir_all(&parent).map_err(|e| Error::io(&parent, e))?;
    let staging = tempfile::Builder::new()
        .prefix(".digraph-probe-")
        .tempdir_in(&parent)
        .map_err(|e| Error::io(&parent, e))?;

    let results_dir = staging.path().join(RESULTS_DIR);
    let mut set = ResultSet::default();
    for c in &outputs {
        report::write_cell(&results_dir, &c.manifest, &c.results)?;
        set.manifests.push(c.manifest.clone());
        set.results.extend(c.results.iter().cloned());
    }
    if let Some(e) = &embed {
        report::write_embedding_stats(&results_dir, e)?;
    }
    set.embeddings = embed;
    let analysis = report::analyze(&set)?;
    report::write_tables(&analysis, &staging.path().join(TABLES_DIR))?;
    let md = staging.path().join(REPORT_FILE);
    fs::write(&md, report::render_markdown(&analysis)).map_err(|e| Error::io(&md, e))?;

    fs::create_dir_all(out).map_err(|e| Error::io(out, e))?;
    for name in [RESULTS_DIR, TABLES_DIR, REPORT_FILE] {
        let target = out.join(name);
        if target.is_dir() {
            fs::remove_dir_all(&target).map_err(|e| Error::io(&target, e))?;
        } else if target.exists() {
            fs::remove_file(&target).map_err(|e| Error::io(&target, e))?;
        }
        fs::rename(staging.path().join(name), &target).map_err(|e| Error::io(&target, e))?;
    }
    Ok(RunSummary { output: out.clone(), cells: outputs.len(), results: set.results.len(), analysis })
}

/// Re-analyzes a results directory, writing CSV tables and `report.md` into `out`.
pub fn analyze_dir(results: &Path, out: &Path) -> Result<Analysis> {
    let set = report::read_results(results)?;
    let analysis = report::analyze(&set)?;
    report::write_tables(&analysis, out)?;
    let md = out.join(REPORT_FILE);
    fs::write(&md, report::render_markdown(&analysis)).map_err(|e| Error::io(&md, e))?;
    Ok(analysis)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(tau: f32) -> RunConfig {
        RunConfig {
            corpus: "c.json".into(),
            models: vec![ModelEntry {
                model_id: "m".into(),
                layers: vec![1, 2],
                activations: vec!["a1".into(), "a2".into()],
                saes: vec!["s1".into(), "s2".into()],
            }],
            tau,
            output: "out".into(),
            embeddings: None,
        }
    }

    #[test]
    fn tau_must_be_positive() {
        for tau in [0.0, -0.1, f32::NAN] {
            let err = config(tau).validate().unwrap_err();
            assert_eq!(err.exit_code(), 1);
        }
        assert!(config(0.1).validate().is_ok());
    }

    #[test]
    fn mismatched_lists_rejected() {
        let mut c = config(0.1);
        c.models[0].saes.pop();
        assert!(c.validate().is_err());
        let mut c = config(0.1);
        c.models[0].layers = vec![1, 1];
        assert!(c.validate().is_err());
    }

    #[test]
    fn missing_files_exit_2() {
        let dir = tempfile::tempdir().unwrap();
        let mut c = config(0.1);
        c.resolve_paths(dir.path());
        assert_eq!(c.missing_inputs().len(), 5);
        assert_eq!(run_all(&c).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn config_paths_resolve_against_file() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("run.json");
        fs::write(&p, serde_json::to_string(&config(0.1)).unwrap()).unwrap();
        let c = RunConfig::load(&p).unwrap();
        assert_eq!(c.corpus, dir.path().join("c.json"));
        assert_eq!(c.models[0].saes[1], dir.path().join("s2"));
        let c: RunConfig =
            serde_json::from_str(r#"{"corpus":"c","models":[],"output":"o"}"#).unwrap();
        assert_eq!(c.tau, DEFAULT_TAU);
    }
}
