mod common;

use std::io::Write;

use digraph_probe::corpus::{Language, SentenceKey, Variant};
use digraph_probe::saefeat;
use digraph_probe::tensorio::{self, ActivationManifest, ActivationRecord, EmbeddingDump, SaeWeights};
use digraph_probe::Error;
use proptest::prelude::*;

#[test]
fn reads_python_activations() {
    let (m, recs) = tensorio::read_activations(&common::data_dir().join("py_activations.actv")).unwrap();
    assert_eq!(m.model_id, "google/gemma-3-270m");
    assert_eq!(m.layer, 6);
    assert_eq!(m.hidden_dim, 5);
    assert_eq!(m.bos_prepended, Some(true));
    assert_eq!(m.extra.get("extractor").and_then(|v| v.as_str()), Some("reference-python"));
    assert_eq!(recs.len(), 18);
    for (i, r) in recs.iter().enumerate() {
        assert_eq!(r.token_count, 7 + (i as u32) % 4);
        for (j, &v) in r.vector.iter().enumerate() {
            assert_eq!(v, ((i * 10 + j) as f32) / 4.0 - 3.0);
        }
    }
    assert_eq!(recs[4].key, SentenceKey::new(0, Language::SerbianLatin, Variant::Paraphrase));
    assert_eq!(recs[17].key, SentenceKey::new(1, Language::SerbianCyrillic, Variant::Random));
}

#[test]
fn reads_python_sae_and_encodes() {
    let w = tensorio::read_sae(&common::data_dir().join("py_sae.saew")).unwrap();
    assert_eq!((w.d, w.n_features), (5, 4));
    let (m, recs) = tensorio::read_activations(&common::data_dir().join("py_activations.actv")).unwrap();
    saefeat::check_manifest(&w, &m).unwrap();
    for (i, r) in recs.iter().enumerate() {
        let a = saefeat::encode(&w, &r.vector).unwrap();
        for f in 0..4 {
            let z: f64 = (0..5).map(|j| (f as f64 - j as f64) / 8.0 * ((i * 10 + j) as f64 / 4.0 - 3.0)).sum::<f64>() - f as f64 / 2.0;
            let want = if z > f as f64 / 16.0 { z } else { 0.0 };
            assert!((a.values()[f] as f64 - want).abs() < 1e-5, "record {i} feature {f}");
        }
    }
}

#[test]
fn reads_python_embeddings() {
    let e = tensorio::read_embeddings(&common::data_dir().join("py_embeddings.embv")).unwrap();
    assert_eq!(e.embedder_id, "sentence-transformers/LaBSE");
    assert_eq!(e.records.len(), 18);
    assert_eq!(e.get(&SentenceKey::new(1, Language::English, Variant::Original)), Some(&[0.6f32, 0.8][..]));
    assert_eq!(e.get(&SentenceKey::new(0, Language::SerbianCyrillic, Variant::Random)), Some(&[0.8f32, -0.6][..]));
}

#[test]
fn empty_activation_file_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("empty.actv");
    let m = ActivationManifest::for_records("m", 0, 3, &[]);
    tensorio::write_activations(&m, &[], &p).unwrap();
    let (back, recs) = tensorio::read_activations(&p).unwrap();
    assert_eq!(back, m);
    assert!(recs.is_empty());
}

#[test]
fn rejects_wrong_magic_and_truncation() {
    let dir = tempfile::tempdir().unwrap();
    let src = std::fs::read(common::data_dir().join("py_sae.saew")).unwrap();

    let wrong = dir.path().join("wrong.actv");
    std::fs::write(&wrong, &src).unwrap();
    assert!(matches!(tensorio::read_activations(&wrong), Err(Error::BadMagic { .. })));

    let cut = dir.path().join("cut.saew");
    std::fs::write(&cut, &src[..src.len() - 4]).unwrap();
    let err = tensorio::read_sae(&cut).unwrap_err();
    assert!(matches!(err, Error::TruncatedPayload { .. }), "{err}");
    assert_eq!(err.exit_code(), 1);

    let long = dir.path().join("long.saew");
    let mut f = std::fs::File::create(&long).unwrap();
    f.write_all(&src).unwrap();
    f.write_all(&[0; 4]).unwrap();
    drop(f);
    assert!(tensorio::read_sae(&long).is_err());
}

#[test]
fn rejects_non_finite_weights() {
    let w = SaeWeights {
        model_id: "m".into(),
        layer: 0,
        d: 1,
        n_features: 1,
        w_enc: vec![f32::NAN],
        b_enc: vec![0.0],
        theta: vec![0.0],
    };
    let dir = tempfile::tempdir().unwrap();
    assert!(matches!(tensorio::write_sae(&w, &dir.path().join("x.saew")), Err(Error::NonFiniteInput(_))));
}

#[test]
fn missing_file_maps_to_missing_input_code() {
    let err = tensorio::read_sae(std::path::Path::new("/nonexistent/x.saew")).unwrap_err();
    assert_eq!(err.exit_code(), 2);
}

fn finite() -> impl Strategy<Value = f32> {
    prop::num::f32::NORMAL | prop::num::f32::SUBNORMAL | prop::num::f32::ZERO
}

fn keys(n: usize) -> Vec<SentenceKey> {
    (0..n as u32)
        .map(|i| SentenceKey::new(i / 9, Language::ALL[(i as usize / 3) % 3], Variant::ALL[i as usize % 3]))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn activations_round_trip(d in 1usize..12, n in 0usize..20, seed in prop::collection::vec(finite(), 240), layer in 0u32..64) {
        let records: Vec<ActivationRecord> = keys(n)
            .into_iter()
            .enumerate()
            .map(|(i, key)| ActivationRecord {
                key,
                vector: (0..d).map(|j| seed[(i * d + j) % seed.len()]).collect(),
                token_count: 1 + i as u32,
            })
            .collect();
        let m = ActivationManifest::for_records("org/model", layer, d, &records);
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("a.actv");
        tensorio::write_activations(&m, &records, &p).unwrap();
        let (m2, r2) = tensorio::read_activations(&p).unwrap();
        prop_assert_eq!(m2, m);
        prop_assert_eq!(r2.len(), records.len());
        for (a, b) in r2.iter().zip(&records) {
            prop_assert_eq!(a.key, b.key);
            prop_assert_eq!(a.token_count, b.token_count);
            let same = a.vector.iter().zip(&b.vector).all(|(x, y)| x.to_bits() == y.to_bits());
            prop_assert!(same);
        }
    }

    #[test]
    fn sae_round_trip(d in 1usize..10, f in 1usize..10, vals in prop::collection::vec(finite(), 100), th in prop::collection::vec(0.0f32..4.0, 10)) {
        let w = SaeWeights {
            model_id: "m".into(),
            layer: 3,
            d,
            n_features: f,
            w_enc: (0..f * d).map(|i| vals[i % 100]).collect(),
            b_enc: (0..f).map(|i| vals[(i * 7) % 100]).collect(),
            theta: th[..f].to_vec(),
        };
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("w.saew");
        tensorio::write_sae(&w, &p).unwrap();
        prop_assert_eq!(tensorio::read_sae(&p).unwrap(), w);
    }

    #[test]
    fn embeddings_round_trip(dim in 1usize..8, n in 0usize..18, angles in prop::collection::vec(0.1f64..3.0, 18 * 8)) {
        let records = keys(n)
            .into_iter()
            .enumerate()
            .map(|(i, k)| {
                let raw: Vec<f64> = (0..dim).map(|j| angles[i * 8 + j] * if j % 2 == 0 { 1.0 } else { -1.0 }).collect();
                let norm = raw.iter().map(|x| x * x).sum::<f64>().sqrt();
                (k, raw.iter().map(|x| (x / norm) as f32).collect())
            })
            .collect();
        let e = EmbeddingDump { embedder_id: "emb".into(), dim, records };
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("e.embv");
        tensorio::write_embeddings(&e, &p).unwrap();
        prop_assert_eq!(tensorio::read_embeddings(&p).unwrap(), e);
    }
}
