//! Generates a synthetic fixture with a planted hierarchy and writes it out.

use digraph_probe::corpus::ComparisonGroup;
use digraph_probe::synth::{generate, write_fixture, SyntheticSpec};

fn main() -> digraph_probe::Result<()> {
    let spec = SyntheticSpec::new(64, 1024, 42)
        .with_target(ComparisonGroup::CrossScriptOrig, 0.60)
        .with_target(ComparisonGroup::CrossLanguageRandom, 0.19);
    let fx = generate(&spec)?;
    println!("k = {}, {} of {} features used", fx.expected.k, fx.expected.features_used, spec.n_features);
    for (g, v) in &fx.expected.per_group {
        println!("  {:<30} target {:.4}  planted {:.4}", g.label(), fx.expected.targets[g], v);
    }
    let dir = std::env::temp_dir().join("digraph-probe-synth-example");
    for p in write_fixture(&fx, &dir)? {
        println!("wrote {}", p.display());
    }
    Ok(())
}
