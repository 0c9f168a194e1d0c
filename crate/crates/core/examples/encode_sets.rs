//! Encodes activations with an SAE, thresholds them and compares two sets.

use digraph_probe::corpus::{Language, SentenceKey, Variant};
use digraph_probe::saefeat::{encode_corpus, jaccard, DEFAULT_TAU};
use digraph_probe::synth::{generate, SyntheticSpec};

fn main() -> digraph_probe::Result<()> {
    let fx = generate(&SyntheticSpec { triplet_count: 1, ..SyntheticSpec::new(32, 512, 7) })?;
    let sets = encode_corpus(&fx.weights, &fx.manifest, &fx.records, DEFAULT_TAU)?;
    let lat = &sets[&SentenceKey::new(0, Language::SerbianLatin, Variant::Original)];
    let cyr = &sets[&SentenceKey::new(0, Language::SerbianCyrillic, Variant::Original)];
    let en = &sets[&SentenceKey::new(0, Language::English, Variant::Random)];
    println!("{} and {} active features", lat.len(), cyr.len());
    println!("latin vs cyrillic: {:.4}", jaccard(lat, cyr)?.value);
    println!("latin vs english random: {:.4}", jaccard(lat, en)?.value);
    Ok(())
}
