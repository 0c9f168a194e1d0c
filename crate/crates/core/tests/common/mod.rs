#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use digraph_probe::analysis::{summarize, CellMean, ComparisonResult, PairValue};
use digraph_probe::corpus::{ComparisonGroup, ComparisonType, Corpus};
use digraph_probe::run::{ModelEntry, RunConfig};
use digraph_probe::synth::{self, SyntheticSpec};

pub const MODELS: [&str; 5] = ["gemma-3-270m", "gemma-3-1b", "gemma-3-4b", "gemma-3-12b", "gemma-3-27b"];

/// Published per-model means (layers averaged), one row per comparison type.
pub const PER_MODEL_MEANS: [(ComparisonType, [f64; 5]); 14] = [
    (ComparisonType::EnOrigPara, [0.629, 0.546, 0.498, 0.513, 0.477]),
    (ComparisonType::EnOrigRand, [0.351, 0.251, 0.221, 0.221, 0.193]),
    (ComparisonType::LatOrigPara, [0.595, 0.555, 0.526, 0.526, 0.496]),
    (ComparisonType::LatOrigRand, [0.493, 0.341, 0.262, 0.235, 0.210]),
    (ComparisonType::CyrOrigPara, [0.634, 0.537, 0.520, 0.516, 0.510]),
    (ComparisonType::CyrOrigRand, [0.469, 0.365, 0.267, 0.242, 0.218]),
    (ComparisonType::CsOrig, [0.501, 0.537, 0.571, 0.624, 0.649]),
    (ComparisonType::CsPara, [0.549, 0.547, 0.585, 0.626, 0.645]),
    (ComparisonType::LatOrigCyrPara, [0.495, 0.468, 0.457, 0.480, 0.470]),
    (ComparisonType::CyrOrigLatPara, [0.488, 0.475, 0.461, 0.475, 0.468]),
    (ComparisonType::LatOrigCyrRand, [0.421, 0.324, 0.253, 0.233, 0.211]),
    (ComparisonType::CyrOrigLatRand, [0.413, 0.317, 0.239, 0.225, 0.210]),
    (ComparisonType::LatOrigEnRand, [0.251, 0.199, 0.180, 0.173, 0.164]),
    (ComparisonType::CyrOrigEnRand, [0.248, 0.196, 0.162, 0.161, 0.159]),
];

/// Published grand means at two decimals.
pub const GRAND_MEANS: [(ComparisonGroup, f64); 11] = [
    (ComparisonGroup::CrossScriptOrig, 0.58),
    (ComparisonGroup::CrossScriptPara, 0.59),
    (ComparisonGroup::CrossScriptCrossPara, 0.47),
    (ComparisonGroup::CrossScriptRandom, 0.28),
    (ComparisonGroup::CrossLanguageRandom, 0.19),
    (ComparisonGroup::EnPara, 0.53),
    (ComparisonGroup::EnRand, 0.25),
    (ComparisonGroup::LatPara, 0.54),
    (ComparisonGroup::LatRand, 0.31),
    (ComparisonGroup::CyrPara, 0.54),
    (ComparisonGroup::CyrRand, 0.31),
];

/// Per-model means as single-layer cells.
pub fn per_model_cells() -> Vec<CellMean> {
    PER_MODEL_MEANS
        .iter()
        .flat_map(|(t, vals)| MODELS.iter().zip(vals).map(move |(m, v)| CellMean::new(*m, 0, *t, *v)))
        .collect()
}

pub fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("data")
}

pub fn shipped_corpus_path() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join("corpus.json")
}

pub fn shipped_corpus() -> Corpus {
    digraph_probe::corpus::load_corpus(&shipped_corpus_path()).expect("shipped corpus is valid")
}

/// Latin to Cyrillic by longest match over the letter table, without any
/// exception handling. Written independently of the library.
pub fn naive_latin_to_cyrillic(text: &str) -> String {
    const PAIRS: [(&str, &str); 30] = [
        ("dž", "џ"), ("lj", "љ"), ("nj", "њ"),
        ("a", "а"), ("b", "б"), ("c", "ц"), ("č", "ч"), ("ć", "ћ"), ("d", "д"), ("đ", "ђ"),
        ("e", "е"), ("f", "ф"), ("g", "г"), ("h", "х"), ("i", "и"), ("j", "ј"), ("k", "к"),
        ("l", "л"), ("m", "м"), ("n", "н"), ("o", "о"), ("p", "п"), ("r", "р"), ("s", "с"),
        ("š", "ш"), ("t", "т"), ("u", "у"), ("v", "в"), ("z", "з"), ("ž", "ж"),
    ];
    let mut out = String::new();
    let mut rest = text;
    'outer: while !rest.is_empty() {
        for (lat, cyr) in PAIRS {
            let forms: [(String, String); 3] = [
                (lat.to_string(), cyr.to_string()),
                (title(lat), cyr.to_uppercase()),
                (lat.to_uppercase(), cyr.to_uppercase()),
            ];
            for (l, c) in &forms {
                if let Some(r) = rest.strip_prefix(l.as_str()) {
                    out.push_str(c);
                    rest = r;
                    continue 'outer;
                }
            }
        }
        let ch = rest.chars().next().unwrap();
        out.push(ch);
        rest = &rest[ch.len_utf8()..];
    }
    out
}

fn title(s: &str) -> String {
    let mut c = s.chars();
    match c.next() {
        Some(f) => f.to_uppercase().collect::<String>() + c.as_str(),
        None => String::new(),
    }
}

/// Synthetic results for one cell where every pair of a type has the same value.
pub fn flat_results(model: &str, layer: u32, values: &BTreeMap<ComparisonType, f64>) -> Vec<ComparisonResult> {
    values
        .iter()
        .map(|(t, v)| {
            let pairs = (0..30).map(|id| PairValue { triplet_id: id, jaccard: *v, degenerate: false }).collect();
            summarize(model, layer, *t, pairs, 30).unwrap()
        })
        .collect()
}

/// Writes one synthetic fixture per (model, layer) and a run config over
/// the shipped corpus. Returns the config path.
pub fn synthetic_run(dir: &Path, models: &[&str], layers: &[u32], n_features: usize) -> PathBuf {
    let mut entries = Vec::new();
    for (mi, m) in models.iter().enumerate() {
        let mut entry = ModelEntry { model_id: m.to_string(), layers: layers.to_vec(), activations: vec![], saes: vec![] };
        for &l in layers {
            let spec = SyntheticSpec { model_id: m.to_string(), layer: l, ..SyntheticSpec::new(48, n_features, (mi as u64) << 8 | l as u64) };
            let fx = synth::generate(&spec).unwrap();
            let sub = dir.join(format!("fx-{m}-{l}"));
            synth::write_fixture(&fx, &sub).unwrap();
            entry.activations.push(sub.join(synth::ACTIVATIONS_FILE));
            entry.saes.push(sub.join(synth::SAE_FILE));
        }
        entries.push(entry);
    }
    let cfg = RunConfig {
        corpus: shipped_corpus_path(),
        models: entries,
        tau: 0.1,
        output: dir.join("out"),
        embeddings: None,
    };
    let path = dir.join("run.json");
    std::fs::write(&path, serde_json::to_string_pretty(&cfg).unwrap()).unwrap();
    path
}
