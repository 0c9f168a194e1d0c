mod common;

use std::collections::BTreeSet;

use digraph_probe::corpus::{self, ComparisonType, Corpus, Language, SentenceKey, Variant};
use digraph_probe::Error;

#[test]
fn shipped_corpus_shape() {
    let c = common::shipped_corpus();
    assert_eq!(c.len(), 30);
    assert_eq!(c.keys().len(), 270);
    let ids: BTreeSet<u32> = c.triplet_ids().collect();
    assert_eq!(ids.len(), 30);
}

#[test]
fn every_type_has_one_pair_per_triplet() {
    let c = common::shipped_corpus();
    let mut all = BTreeSet::new();
    for t in ComparisonType::ALL {
        let pairs = c.pairs(t);
        assert_eq!(pairs.len(), 30, "{t}");
        for p in &pairs {
            assert_ne!(p.left_key(), p.right_key());
            assert_eq!(p.left_key().triplet_id, p.right_key().triplet_id);
            assert!(c.text(&p.left_key()).is_some() && c.text(&p.right_key()).is_some());
            all.insert(*p);
        }
    }
    assert_eq!(all.len(), 420);
}

#[test]
fn derive_latin_reproduces_shipped_latin() {
    let shipped = common::shipped_corpus();
    let mut raw = corpus::read_raw(&common::shipped_corpus_path()).unwrap();
    for t in &mut raw {
        t.sr_lat = None;
    }
    let derived = corpus::derive_latin(raw).unwrap();
    assert!(derived.notes.is_empty(), "{:?}", derived.notes);
    assert_eq!(derived.corpus, shipped);
}

#[test]
fn json_round_trip() {
    let c = common::shipped_corpus();
    let back = Corpus::from_raw(corpus::parse_raw(&c.to_json()).unwrap()).unwrap();
    assert_eq!(back, c);
}

#[test]
fn missing_entry_is_a_validation_error() {
    let mut raw = corpus::read_raw(&common::shipped_corpus_path()).unwrap();
    raw[3].en.as_mut().unwrap().para = None;
    let err = Corpus::from_raw(raw).unwrap_err();
    assert_eq!(err.exit_code(), 1);
    assert!(err.to_string().contains("en.para"), "{err}");
}

#[test]
fn short_sentence_rejected() {
    let mut raw = corpus::read_raw(&common::shipped_corpus_path()).unwrap();
    raw[0].en.as_mut().unwrap().orig = Some("Too short.".into());
    assert!(matches!(Corpus::from_raw(raw), Err(Error::Validation { .. })));
}

#[test]
fn pairs_csv_lists_texts() {
    let c = common::shipped_corpus();
    let mut buf = Vec::new();
    corpus::write_pairs_csv(&c, ComparisonType::CsOrig, &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    assert_eq!(text.lines().count(), 31);
    let first = c.triplet_ids().next().unwrap();
    let lat = c.text(&SentenceKey::new(first, Language::SerbianLatin, Variant::Original)).unwrap();
    assert!(text.contains(lat));
}
