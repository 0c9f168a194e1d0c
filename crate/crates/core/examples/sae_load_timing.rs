//! Writes and reloads a full-width SAE (F = 65536, d = 640) and times the load.
//! Run with --release for representative numbers.

use std::time::Instant;

use digraph_probe::tensorio::{read_sae, write_sae, SaeWeights};

fn main() -> digraph_probe::Result<()> {
    let (d, f) = (640, 65536);
    let weights = SaeWeights {
        model_id: "timing".into(),
        layer: 0,
        d,
        n_features: f,
        w_enc: (0..d * f).map(|i| ((i % 97) as f32 - 48.0) / 64.0).collect(),
        b_enc: vec![-0.1; f],
        theta: vec![0.05; f],
    };
    let dir = tempfile::tempdir().map_err(|e| digraph_probe::Error::io(std::env::temp_dir().as_path(), e))?;
    let path = dir.path().join("big.saew");
    write_sae(&weights, &path)?;
    let start = Instant::now();
    let back = read_sae(&path)?;
    let elapsed = start.elapsed();
    assert_eq!(back.w_enc.len(), d * f);
    println!("loaded {} MB in {elapsed:.2?}", (d * f + 2 * f) * 4 / (1 << 20));
    Ok(())
}
