//! The triplet dataset and the fourteen comparison types defined over it.
//!
//! A corpus holds 30 triplets; each triplet has an original sentence, a
//! paraphrase and an unrelated random sentence in English, Serbian Latin and
//! Serbian Cyrillic (270 sentences total).

use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::translit::{cyrillic_to_latin_report, first_divergence};

pub const TRIPLET_COUNT: usize = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Language {
    #[serde(rename = "en")]
    English,
    #[serde(rename = "sr_lat")]
    SerbianLatin,
    #[serde(rename = "sr_cyr")]
    SerbianCyrillic,
}

impl Language {
    pub const ALL: [Language; 3] = [Language::English, Language::SerbianLatin, Language::SerbianCyrillic];

    pub fn code(self) -> &'static str {
        match self {
            Language::English => "en",
            Language::SerbianLatin => "sr_lat",
            Language::SerbianCyrillic => "sr_cyr",
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Language::English => "EN",
            Language::SerbianLatin => "SR-Lat",
            Language::SerbianCyrillic => "SR-Cyr",
        }
    }
}

impl FromStr for Language {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Language::ALL
            .into_iter()
            .find(|l| l.code() == s)
            .ok_or_else(|| Error::Schema(format!("unknown language {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Variant {
    #[serde(rename = "orig")]
    Original,
    #[serde(rename = "para")]
    Paraphrase,
    #[serde(rename = "rand")]
    Random,
}

impl Variant {
    pub const ALL: [Variant; 3] = [Variant::Original, Variant::Paraphrase, Variant::Random];

    pub fn code(self) -> &'static str {
        match self {
            Variant::Original => "orig",
            Variant::Paraphrase => "para",
            Variant::Random => "rand",
        }
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Variant::ALL
            .into_iter()
            .find(|v| v.code() == s)
            .ok_or_else(|| Error::Schema(format!("unknown variant {s:?}")))
    }
}

/// A (language, variant) coordinate inside one triplet.
pub type Slot = (Language, Variant);

/// Stable identity of a sentence, shared by corpus files and activation dumps.
///
/// Renders as `"<triplet_id>:<language>:<variant>"`, e.g. `"3:sr_lat:orig"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SentenceKey {
    pub triplet_id: u32,
    pub language: Language,
    pub variant: Variant,
}

impl SentenceKey {
    pub fn new(triplet_id: u32, language: Language, variant: Variant) -> Self {
        Self { triplet_id, language, variant }
    }

    pub fn slot(&self) -> Slot {
        (self.language, self.variant)
    }
}

impl fmt::Display for SentenceKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.triplet_id, self.language.code(), self.variant.code())
    }
}

impl FromStr for SentenceKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split(':');
        let (Some(id), Some(lang), Some(var), None) = (parts.next(), parts.next(), parts.next(), parts.next()) else {
            return Err(Error::Schema(format!("bad sentence key {s:?}")));
        };
        let triplet_id = id.parse().map_err(|_| Error::Schema(format!("bad triplet id in key {s:?}")))?;
        Ok(Self::new(triplet_id, lang.parse()?, var.parse()?))
    }
}

impl Serialize for SentenceKey {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SentenceKey {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VariantTexts {
    pub orig: String,
    pub para: String,
    pub rand: String,
}

impl VariantTexts {
    pub fn get(&self, variant: Variant) -> &str {
        match variant {
            Variant::Original => &self.orig,
            Variant::Paraphrase => &self.para,
            Variant::Random => &self.rand,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SentenceTriplet {
    #[serde(rename = "id")]
    pub triplet_id: u32,
    pub en: VariantTexts,
    pub sr_cyr: VariantTexts,
    pub sr_lat: VariantTexts,
}

impl SentenceTriplet {
    pub fn texts(&self, language: Language) -> &VariantTexts {
        match language {
            Language::English => &self.en,
            Language::SerbianLatin => &self.sr_lat,
            Language::SerbianCyrillic => &self.sr_cyr,
        }
    }

    pub fn text(&self, language: Language, variant: Variant) -> &str {
        self.texts(language).get(variant)
    }
}

/// File-level representation; every field may be absent so that missing
/// entries surface as validation errors rather than parse errors.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawVariantTexts {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orig: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub para: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rand: Option<String>,
}

impl RawVariantTexts {
    fn get(&self, variant: Variant) -> Option<&str> {
        match variant {
            Variant::Original => self.orig.as_deref(),
            Variant::Paraphrase => self.para.as_deref(),
            Variant::Random => self.rand.as_deref(),
        }
    }

    fn set(&mut self, variant: Variant, text: String) {
        match variant {
            Variant::Original => self.orig = Some(text),
            Variant::Paraphrase => self.para = Some(text),
            Variant::Random => self.rand = Some(text),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawTriplet {
    pub id: u32,
    #[serde(default)]
    pub en: Option<RawVariantTexts>,
    #[serde(default)]
    pub sr_cyr: Option<RawVariantTexts>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sr_lat: Option<RawVariantTexts>,
}

impl RawTriplet {
    fn texts(&self, language: Language) -> Option<&RawVariantTexts> {
        match language {
            Language::English => self.en.as_ref(),
            Language::SerbianLatin => self.sr_lat.as_ref(),
            Language::SerbianCyrillic => self.sr_cyr.as_ref(),
        }
    }
}

pub type RawCorpus = Vec<RawTriplet>;

/// Dataset construction rules checked on load.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CorpusRules {
    pub triplet_count: usize,
    pub min_words: usize,
    pub max_words: usize,
}

impl Default for CorpusRules {
    fn default() -> Self {
        Self { triplet_count: TRIPLET_COUNT, min_words: 7, max_words: 13 }
    }
}

/// A validated, immutable corpus ordered by triplet id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corpus {
    triplets: Vec<SentenceTriplet>,
}

pub fn parse_raw(json: &str) -> Result<RawCorpus> {
    serde_json::from_str(json).map_err(|e| Error::Schema(e.to_string()))
}

pub fn read_raw(path: &Path) -> Result<RawCorpus> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_raw(&text)
}

/// Reads and validates a corpus file.
pub fn load_corpus(path: &Path) -> Result<Corpus> {
    Corpus::from_raw(read_raw(path)?)
}

impl Corpus {
    pub fn from_raw(raw: RawCorpus) -> Result<Self> {
        Self::from_raw_with(raw, &CorpusRules::default())
    }

    pub fn from_raw_with(raw: RawCorpus, rules: &CorpusRules) -> Result<Self> {
        if raw.len() != rules.triplet_count {
            return Err(Error::validation(
                None,
                format!("expected {} triplets, found {}", rules.triplet_count, raw.len()),
            ));
        }
        let mut triplets = Vec::with_capacity(raw.len());
        for t in &raw {
            triplets.push(validate_triplet(t, rules)?);
        }
        triplets.sort_by_key(|t| t.triplet_id);
        for (expected, t) in triplets.iter().enumerate() {
            if t.triplet_id as usize != expected {
                return Err(Error::validation(
                    Some(t.triplet_id),
                    format!("triplet ids must be 0..{} without gaps or duplicates", rules.triplet_count),
                ));
            }
        }
        let corpus = Corpus { triplets };
        let mut seen = std::collections::HashMap::new();
        for (key, text) in corpus.sentences() {
            if let Some(prev) = seen.insert(text, key) {
                return Err(Error::validation(
                    Some(key.triplet_id),
                    format!("sentence {key} duplicates {prev}: {text:?}"),
                ));
            }
        }
        Ok(corpus)
    }

    pub fn triplets(&self) -> &[SentenceTriplet] {
        &self.triplets
    }

    pub fn len(&self) -> usize {
        self.triplets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triplets.is_empty()
    }

    pub fn text(&self, key: &SentenceKey) -> Option<&str> {
        self.triplets
            .get(key.triplet_id as usize)
            .map(|t| t.text(key.language, key.variant))
    }

    /// All sentences in (triplet, language, variant) order.
    pub fn sentences(&self) -> impl Iterator<Item = (SentenceKey, &str)> + '_ {
        self.triplets.iter().flat_map(|t| {
            Language::ALL.into_iter().flat_map(move |lang| {
                Variant::ALL
                    .into_iter()
                    .map(move |var| (SentenceKey::new(t.triplet_id, lang, var), t.text(lang, var)))
            })
        })
    }

    pub fn keys(&self) -> Vec<SentenceKey> {
        self.sentences().map(|(k, _)| k).collect()
    }

    pub fn triplet_ids(&self) -> impl Iterator<Item = u32> + '_ {
        self.triplets.iter().map(|t| t.triplet_id)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.triplets).expect("corpus serializes");
        s.push('\n');
        s
    }

    /// Pairs of one comparison type, one per triplet, ordered by triplet id.
    pub fn pairs(&self, comparison: ComparisonType) -> Vec<ComparisonPair> {
        enumerate_pairs(self.triplet_ids(), comparison)
    }
}

fn validate_triplet(t: &RawTriplet, rules: &CorpusRules) -> Result<SentenceTriplet> {
    let id = Some(t.id);
    let mut texts = Vec::with_capacity(3);
    for lang in Language::ALL {
        let raw = t
            .texts(lang)
            .ok_or_else(|| Error::validation(id, format!("missing entry {}", lang.code())))?;
        let get = |var: Variant| -> Result<String> {
            match raw.get(var) {
                Some(s) if !s.trim().is_empty() => Ok(s.to_string()),
                _ => Err(Error::validation(id, format!("missing entry {}.{}", lang.code(), var.code()))),
            }
        };
        texts.push(VariantTexts { orig: get(Variant::Original)?, para: get(Variant::Paraphrase)?, rand: get(Variant::Random)? });
    }
    let sr_cyr = texts.pop().expect("three languages");
    let sr_lat = texts.pop().expect("three languages");
    let en = texts.pop().expect("three languages");

    for var in Variant::ALL {
        let expected = cyrillic_to_latin_report(sr_cyr.get(var)).text;
        if let Some(at) = first_divergence(&expected, sr_lat.get(var)) {
            return Err(Error::validation(
                id,
                format!(
                    "transliteration mismatch in {}: sr_lat diverges from transliterated sr_cyr at char {at}",
                    var.code()
                ),
            ));
        }
    }
    for var in [Variant::Original, Variant::Paraphrase] {
        let words = en.get(var).split_whitespace().count();
        if words < rules.min_words || words > rules.max_words {
            return Err(Error::validation(
                id,
                format!(
                    "word count: en.{} has {words} words, expected {}-{}",
                    var.code(),
                    rules.min_words,
                    rules.max_words
                ),
            ));
        }
    }
    Ok(SentenceTriplet { triplet_id: t.id, en, sr_cyr, sr_lat })
}

/// Outcome of [`derive_latin`]: the validated corpus plus any notes about
/// characters the transliterator did not recognize.
#[derive(Debug, Clone)]
pub struct Derived {
    pub corpus: Corpus,
    pub notes: Vec<String>,
}

/// Fills every Serbian Latin entry from its Cyrillic counterpart.
pub fn derive_latin(mut raw: RawCorpus) -> Result<Derived> {
    derive_latin_with(&mut raw, &CorpusRules::default())
}

pub fn derive_latin_with(raw: &mut RawCorpus, rules: &CorpusRules) -> Result<Derived> {
    let mut notes = Vec::new();
    for t in raw.iter_mut() {
        let cyr = t
            .sr_cyr
            .as_ref()
            .ok_or_else(|| Error::validation(Some(t.id), "missing entry sr_cyr"))?;
        let mut lat = RawVariantTexts::default();
        for var in Variant::ALL {
            let text = cyr
                .get(var)
                .filter(|s| !s.trim().is_empty())
                .ok_or_else(|| Error::validation(Some(t.id), format!("missing entry sr_cyr.{}", var.code())))?;
            let out = cyrillic_to_latin_report(text);
            if out.unknown_chars > 0 {
                notes.push(format!(
                    "triplet {} sr_cyr.{}: {} unrecognized character(s) passed through",
                    t.id,
                    var.code(),
                    out.unknown_chars
                ));
            }
            lat.set(var, out.text);
        }
        t.sr_lat = Some(lat);
    }
    let corpus = Corpus::from_raw_with(raw.clone(), rules)?;
    Ok(Derived { corpus, notes })
}

/// The fourteen comparison types, in table row order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ComparisonType {
    EnOrigPara,
    EnOrigRand,
    LatOrigPara,
    LatOrigRand,
    CyrOrigPara,
    CyrOrigRand,
    CsOrig,
    CsPara,
    LatOrigCyrPara,
    CyrOrigLatPara,
    LatOrigCyrRand,
    CyrOrigLatRand,
    LatOrigEnRand,
    CyrOrigEnRand,
}

impl ComparisonType {
    pub const ALL: [ComparisonType; 14] = [
        ComparisonType::EnOrigPara,
        ComparisonType::EnOrigRand,
        ComparisonType::LatOrigPara,
        ComparisonType::LatOrigRand,
        ComparisonType::CyrOrigPara,
        ComparisonType::CyrOrigRand,
        ComparisonType::CsOrig,
        ComparisonType::CsPara,
        ComparisonType::LatOrigCyrPara,
        ComparisonType::CyrOrigLatPara,
        ComparisonType::LatOrigCyrRand,
        ComparisonType::CyrOrigLatRand,
        ComparisonType::LatOrigEnRand,
        ComparisonType::CyrOrigEnRand,
    ];

    pub fn name(self) -> &'static str {
        use ComparisonType::*;
        match self {
            EnOrigPara => "EN-OrigPara",
            EnOrigRand => "EN-OrigRand",
            LatOrigPara => "Lat-OrigPara",
            LatOrigRand => "Lat-OrigRand",
            CyrOrigPara => "Cyr-OrigPara",
            CyrOrigRand => "Cyr-OrigRand",
            CsOrig => "CS-Orig",
            CsPara => "CS-Para",
            LatOrigCyrPara => "LatOrig-CyrPara",
            CyrOrigLatPara => "CyrOrig-LatPara",
            LatOrigCyrRand => "LatOrig-CyrRand",
            CyrOrigLatRand => "CyrOrig-LatRand",
            LatOrigEnRand => "LatOrig-ENRand",
            CyrOrigEnRand => "CyrOrig-ENRand",
        }
    }

    /// Row label as printed in the per-model tables.
    pub fn table_label(self) -> &'static str {
        use ComparisonType::*;
        match self {
            EnOrigPara => "EN: Orig vs Para",
            EnOrigRand => "EN: Orig vs Rand",
            LatOrigPara => "SR-Lat: Orig vs Para",
            LatOrigRand => "SR-Lat: Orig vs Rand",
            CyrOrigPara => "SR-Cyr: Orig vs Para",
            CyrOrigRand => "SR-Cyr: Orig vs Rand",
            CsOrig => "Cross-Script Orig",
            CsPara => "Cross-Script Para",
            LatOrigCyrPara => "Lat Orig vs Cyr Para",
            CyrOrigLatPara => "Cyr Orig vs Lat Para",
            LatOrigCyrRand => "Lat Orig vs Cyr Rand",
            CyrOrigLatRand => "Cyr Orig vs Lat Rand",
            LatOrigEnRand => "Lat Orig vs EN Rand",
            CyrOrigEnRand => "Cyr Orig vs EN Rand",
        }
    }

    /// The (left, right) coordinates compared within each triplet.
    pub fn endpoints(self) -> (Slot, Slot) {
        use ComparisonType::*;
        use Language::{English as En, SerbianCyrillic as Cyr, SerbianLatin as Lat};
        use Variant::{Original as O, Paraphrase as P, Random as R};
        match self {
            EnOrigPara => ((En, O), (En, P)),
            EnOrigRand => ((En, O), (En, R)),
            LatOrigPara => ((Lat, O), (Lat, P)),
            LatOrigRand => ((Lat, O), (Lat, R)),
            CyrOrigPara => ((Cyr, O), (Cyr, P)),
            CyrOrigRand => ((Cyr, O), (Cyr, R)),
            CsOrig => ((Lat, O), (Cyr, O)),
            CsPara => ((Lat, P), (Cyr, P)),
            LatOrigCyrPara => ((Lat, O), (Cyr, P)),
            CyrOrigLatPara => ((Cyr, O), (Lat, P)),
            LatOrigCyrRand => ((Lat, O), (Cyr, R)),
            CyrOrigLatRand => ((Cyr, O), (Lat, R)),
            LatOrigEnRand => ((Lat, O), (En, R)),
            CyrOrigEnRand => ((Cyr, O), (En, R)),
        }
    }

    pub fn is_within_language(self) -> bool {
        let ((l, _), (r, _)) = self.endpoints();
        l == r
    }

    pub fn group(self) -> ComparisonGroup {
        use ComparisonGroup as G;
        use ComparisonType::*;
        match self {
            EnOrigPara => G::EnPara,
            EnOrigRand => G::EnRand,
            LatOrigPara => G::LatPara,
            LatOrigRand => G::LatRand,
            CyrOrigPara => G::CyrPara,
            CyrOrigRand => G::CyrRand,
            CsOrig => G::CrossScriptOrig,
            CsPara => G::CrossScriptPara,
            LatOrigCyrPara | CyrOrigLatPara => G::CrossScriptCrossPara,
            LatOrigCyrRand | CyrOrigLatRand => G::CrossScriptRandom,
            LatOrigEnRand | CyrOrigEnRand => G::CrossLanguageRandom,
        }
    }
}

impl fmt::Display for ComparisonType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ComparisonType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ComparisonType::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Config(format!("unknown comparison type {s:?}")))
    }
}

impl Serialize for ComparisonType {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for ComparisonType {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Rows of the grand-mean tables. Directional pairs of cross-script
/// types collapse into one group; the within-language rows stay per language.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ComparisonGroup {
    EnPara,
    EnRand,
    LatPara,
    LatRand,
    CyrPara,
    CyrRand,
    CrossScriptOrig,
    CrossScriptPara,
    CrossScriptCrossPara,
    CrossScriptRandom,
    CrossLanguageRandom,
}

impl ComparisonGroup {
    pub const ALL: [ComparisonGroup; 11] = [
        ComparisonGroup::EnPara,
        ComparisonGroup::EnRand,
        ComparisonGroup::LatPara,
        ComparisonGroup::LatRand,
        ComparisonGroup::CyrPara,
        ComparisonGroup::CyrRand,
        ComparisonGroup::CrossScriptOrig,
        ComparisonGroup::CrossScriptPara,
        ComparisonGroup::CrossScriptCrossPara,
        ComparisonGroup::CrossScriptRandom,
        ComparisonGroup::CrossLanguageRandom,
    ];

    /// The five cross-script/cross-language groups in their expected order.
    pub const HIERARCHY: [ComparisonGroup; 5] = [
        ComparisonGroup::CrossScriptOrig,
        ComparisonGroup::CrossScriptPara,
        ComparisonGroup::CrossScriptCrossPara,
        ComparisonGroup::CrossScriptRandom,
        ComparisonGroup::CrossLanguageRandom,
    ];

    pub fn members(self) -> Vec<ComparisonType> {
        ComparisonType::ALL.into_iter().filter(|t| t.group() == self).collect()
    }

    pub fn label(self) -> &'static str {
        use ComparisonGroup::*;
        match self {
            EnPara => "English Orig-Para",
            EnRand => "English Orig-Rand",
            LatPara => "Serbian Latin Orig-Para",
            LatRand => "Serbian Latin Orig-Rand",
            CyrPara => "Serbian Cyrillic Orig-Para",
            CyrRand => "Serbian Cyrillic Orig-Rand",
            CrossScriptOrig => "Cross-Script Original",
            CrossScriptPara => "Cross-Script Paraphrase",
            CrossScriptCrossPara => "Cross-Script Cross-Paraphrase",
            CrossScriptRandom => "Cross-Script Random",
            CrossLanguageRandom => "Cross-Language Random",
        }
    }
}

impl fmt::Display for ComparisonGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// One within-triplet sentence pair of a given comparison type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ComparisonPair {
    pub comparison: ComparisonType,
    pub triplet_id: u32,
    pub left: Slot,
    pub right: Slot,
}

impl ComparisonPair {
    pub fn left_key(&self) -> SentenceKey {
        SentenceKey::new(self.triplet_id, self.left.0, self.left.1)
    }

    pub fn right_key(&self) -> SentenceKey {
        SentenceKey::new(self.triplet_id, self.right.0, self.right.1)
    }
}

/// Pairs of one comparison type for the given triplet ids, sorted by id.
pub fn enumerate_pairs(triplet_ids: impl IntoIterator<Item = u32>, comparison: ComparisonType) -> Vec<ComparisonPair> {
    let (left, right) = comparison.endpoints();
    let mut ids: Vec<u32> = triplet_ids.into_iter().collect();
    ids.sort_unstable();
    ids.dedup();
    ids.into_iter()
        .map(|triplet_id| ComparisonPair { comparison, triplet_id, left, right })
        .collect()
}

/// Writes the pairs of one comparison type as CSV.
pub fn write_pairs_csv<W: std::io::Write>(corpus: &Corpus, comparison: ComparisonType, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io_err = |e: csv::Error| Error::Config(format!("csv: {e}"));
    w.write_record(["type", "triplet_id", "left", "right", "left_text", "right_text"]).map_err(io_err)?;
    for p in corpus.pairs(comparison) {
        let (l, r) = (p.left_key(), p.right_key());
        w.write_record([
            comparison.name().to_string(),
            p.triplet_id.to_string(),
            l.to_string(),
            r.to_string(),
            corpus.text(&l).unwrap_or_default().to_string(),
            corpus.text(&r).unwrap_or_default().to_string(),
        ])
        .map_err(io_err)?;
    }
    w.flush().map_err(|e| Error::Config(format!("csv: {e}")))?;
    Ok(())
}
