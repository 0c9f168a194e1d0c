//! End-to-end run over synthetic fixtures for two models and two layers.

use std::path::Path;

use digraph_probe::run::{run_all, ModelEntry, RunConfig, REPORT_FILE};
use digraph_probe::synth::{generate, write_fixture, SyntheticSpec, ACTIVATIONS_FILE, SAE_FILE};

fn main() -> digraph_probe::Result<()> {
    let root = std::env::temp_dir().join("digraph-probe-pipeline-example");
    let mut models = Vec::new();
    for (i, model) in ["toy-small", "toy-large"].into_iter().enumerate() {
        let mut entry = ModelEntry { model_id: model.into(), layers: vec![], activations: vec![], saes: vec![] };
        for layer in [3, 7] {
            let spec = SyntheticSpec { model_id: model.into(), layer, ..SyntheticSpec::new(48, 512, (i as u64) * 100 + u64::from(layer)) };
            let dir = root.join(format!("{model}-{layer}"));
            write_fixture(&generate(&spec)?, &dir)?;
            entry.layers.push(layer);
            entry.activations.push(dir.join(ACTIVATIONS_FILE));
            entry.saes.push(dir.join(SAE_FILE));
        }
        models.push(entry);
    }
    let config = RunConfig {
        corpus: Path::new(env!("CARGO_MANIFEST_DIR")).join("data/corpus.json"),
        models,
        tau: 0.1,
        output: root.join("out"),
        embeddings: None,
    };
    let summary = run_all(&config)?;
    println!("{} cells, {} results", summary.cells, summary.results);
    println!("ordering passed: {}", summary.analysis.ordering.passed());
    println!("report: {}", summary.output.join(REPORT_FILE).display());
    Ok(())
}
