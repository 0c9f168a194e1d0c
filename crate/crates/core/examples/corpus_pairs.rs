//! Loads the shipped corpus and lists the pairs of every comparison type.

use std::path::Path;

use digraph_probe::corpus::{load_corpus, ComparisonType};

fn main() -> digraph_probe::Result<()> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/corpus.json");
    let corpus = load_corpus(&path)?;
    println!("{} triplets, {} sentences", corpus.len(), corpus.keys().len());
    let mut total = 0;
    for t in ComparisonType::ALL {
        let pairs = corpus.pairs(t);
        total += pairs.len();
        let first = &pairs[0];
        println!("{:<16} {:>3} pairs  e.g. {} / {}", t.name(), pairs.len(), first.left_key(), first.right_key());
    }
    println!("{total} pairs in total");
    Ok(())
}
