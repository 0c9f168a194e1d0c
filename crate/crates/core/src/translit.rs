//! Serbian Latin ↔ Cyrillic transliteration.
//!
//! Cyrillic → Latin is a per-letter substitution (Љ, Њ, Џ expand to two
//! Latin letters). Latin → Cyrillic matches the digraphs `lj`, `nj`, `dž`
//! greedily, so words where those letters are separate (e.g. `nadživeti`)
//! need an [`ExceptionLexicon`] entry to survive a round trip.

use std::collections::HashMap;
use std::fmt;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use unicode_normalization::UnicodeNormalization;

use crate::error::{Error, Result};

/// Lowercase correspondence table, Cyrillic letter → Latin form.
const LOWER_TABLE: [(char, &str); 30] = [
    ('а', "a"),
    ('б', "b"),
    ('в', "v"),
    ('г', "g"),
    ('д', "d"),
    ('ђ', "đ"),
    ('е', "e"),
    ('ж', "ž"),
    ('з', "z"),
    ('и', "i"),
    ('ј', "j"),
    ('к', "k"),
    ('л', "l"),
    ('љ', "lj"),
    ('м', "m"),
    ('н', "n"),
    ('њ', "nj"),
    ('о', "o"),
    ('п', "p"),
    ('р', "r"),
    ('с', "s"),
    ('т', "t"),
    ('ћ', "ć"),
    ('у', "u"),
    ('ф', "f"),
    ('х', "h"),
    ('ц', "c"),
    ('ч', "č"),
    ('џ', "dž"),
    ('ш', "š"),
];

/// Which script a piece of text is predominantly written in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ScriptTag {
    SerbianLatin,
    SerbianCyrillic,
    Other,
}

/// Transliteration direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    LatinToCyrillic,
    CyrillicToLatin,
}

impl Direction {
    pub fn inverse(self) -> Self {
        match self {
            Direction::LatinToCyrillic => Direction::CyrillicToLatin,
            Direction::CyrillicToLatin => Direction::LatinToCyrillic,
        }
    }
}

/// Word forms whose Latin spelling must not be segmented greedily.
///
/// Keys are lowercase Latin word forms, values the lowercase Cyrillic
/// spelling. Capitalized and all-caps occurrences are matched too.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ExceptionLexicon {
    entries: HashMap<String, String>,
}

impl ExceptionLexicon {
    pub fn new() -> Self {
        Self::default()
    }

    /// Built-in entries for common prefix + stem words (`nad-`, `pod-`,
    /// `od-`) where `d`+`ž` or `n`+`j` straddle a morpheme boundary.
    pub fn builtin() -> Self {
        Self::parse(BUILTIN_LEXICON).expect("built-in lexicon is well-formed")
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    pub fn insert(&mut self, latin: &str, cyrillic: &str) {
        let latin: String = latin.nfc().collect::<String>().to_lowercase();
        let cyrillic: String = cyrillic.nfc().collect::<String>().to_lowercase();
        self.entries.insert(latin, cyrillic);
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Parses the `latin<TAB>cyrillic` line format. Blank lines and lines
    /// starting with `#` are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lex = Self::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let (lat, cyr) = line.split_once('\t').ok_or_else(|| Error::Lexicon {
                line: lineno + 1,
                reason: "expected latin<TAB>cyrillic".into(),
            })?;
            if lat.is_empty() || cyr.is_empty() || cyr.contains('\t') {
                return Err(Error::Lexicon {
                    line: lineno + 1,
                    reason: "empty or extra field".into(),
                });
            }
            if cyrillic_to_latin(cyr).to_lowercase() != lat.nfc().collect::<String>().to_lowercase() {
                return Err(Error::Lexicon {
                    line: lineno + 1,
                    reason: format!("{cyr:?} does not transliterate to {lat:?}"),
                });
            }
            lex.insert(lat, cyr);
        }
        Ok(lex)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text)
    }

    fn lookup(&self, word: &str) -> Option<String> {
        let lower = word.to_lowercase();
        let cyr = self.entries.get(&lower)?;
        match word_case(word) {
            WordCase::Lower => Some(cyr.clone()),
            WordCase::Upper => Some(cyr.to_uppercase()),
            WordCase::Title => {
                let mut chars = cyr.chars();
                let first = chars.next()?;
                Some(first.to_uppercase().chain(chars).collect())
            }
            WordCase::Mixed => None,
        }
    }
}

const BUILTIN_LEXICON: &str = include_str!("../data/lexicon.tsv");

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum WordCase {
    Lower,
    Upper,
    Title,
    Mixed,
}

fn word_case(word: &str) -> WordCase {
    let letters: Vec<char> = word.chars().filter(|c| c.is_alphabetic()).collect();
    if letters.iter().all(|c| c.is_lowercase()) {
        return WordCase::Lower;
    }
    if letters.len() > 1 && letters.iter().all(|c| c.is_uppercase()) {
        return WordCase::Upper;
    }
    if letters.first().is_some_and(|c| c.is_uppercase()) && letters[1..].iter().all(|c| c.is_lowercase()) {
        return WordCase::Title;
    }
    WordCase::Mixed
}

/// Output of a transliteration together with the count of characters that
/// passed through without being recognized.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transliterated {
    pub text: String,
    pub unknown_chars: usize,
}

fn cyr_to_lat_lower(c: char) -> Option<&'static str> {
    LOWER_TABLE.iter().find(|(k, _)| *k == c).map(|(_, v)| *v)
}

fn is_cyrillic_letter(c: char) -> bool {
    let lower = c.to_lowercase().next().unwrap_or(c);
    cyr_to_lat_lower(lower).is_some()
}

fn is_serbian_latin_letter(c: char) -> bool {
    matches!(
        c.to_lowercase().next().unwrap_or(c),
        'a'..='z' | 'đ' | 'ž' | 'ć' | 'č' | 'š'
    )
}

fn is_known_nonletter(c: char) -> bool {
    c.is_whitespace()
        || c.is_numeric()
        || c.is_ascii_punctuation()
        || matches!(
            c,
            '«' | '»' | '„' | '“' | '”' | '‘' | '’' | '‚' | '–' | '—' | '…' | '·' | '°' | '§' | '\u{00a0}'
        )
}

/// Maps one (lowercase-folded) Latin letter or digraph to Cyrillic.
fn lat_to_cyr_lower(s: &str) -> Option<char> {
    LOWER_TABLE.iter().find(|(_, v)| *v == s).map(|(k, _)| *k)
}

fn upper(c: char) -> char {
    c.to_uppercase().next().unwrap_or(c)
}

/// Transliterates Serbian Latin text to Cyrillic.
pub fn latin_to_cyrillic(text: &str, lexicon: &ExceptionLexicon) -> String {
    latin_to_cyrillic_report(text, lexicon).text
}

/// Like [`latin_to_cyrillic`] but also counts unknown characters.
pub fn latin_to_cyrillic_report(text: &str, lexicon: &ExceptionLexicon) -> Transliterated {
    let chars: Vec<char> = text.nfc().collect();
    let mut out = String::with_capacity(text.len() * 2);
    let mut unknown = 0;
    let mut i = 0;
    while i < chars.len() {
        if chars[i].is_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_alphabetic() {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            if let Some(forced) = lexicon.lookup(&word) {
                out.push_str(&forced);
            } else {
                unknown += convert_latin_word(&chars[start..i], &mut out);
            }
        } else {
            if !is_known_nonletter(chars[i]) {
                unknown += 1;
            }
            out.push(chars[i]);
            i += 1;
        }
    }
    Transliterated { text: out, unknown_chars: unknown }
}

fn convert_latin_word(word: &[char], out: &mut String) -> usize {
    let mut unknown = 0;
    let mut i = 0;
    while i < word.len() {
        let c = word[i];
        if i + 1 < word.len() {
            let next = word[i + 1];
            // Digraph forms: lj, Lj, LJ (but not lJ).
            let digraph_case_ok = c.is_uppercase() || next.is_lowercase();
            let pair: String = [c, next].iter().flat_map(|c| c.to_lowercase()).collect();
            if digraph_case_ok && matches!(pair.as_str(), "lj" | "nj" | "dž") {
                let cyr = lat_to_cyr_lower(&pair).expect("digraph in table");
                out.push(if c.is_uppercase() { upper(cyr) } else { cyr });
                i += 2;
                continue;
            }
        }
        let lower: String = c.to_lowercase().collect();
        match lat_to_cyr_lower(&lower) {
            Some(cyr) => out.push(if c.is_uppercase() { upper(cyr) } else { cyr }),
            None => {
                unknown += 1;
                out.push(c);
            }
        }
        i += 1;
    }
    unknown
}

/// Transliterates Serbian Cyrillic text to Latin.
pub fn cyrillic_to_latin(text: &str) -> String {
    cyrillic_to_latin_report(text).text
}

/// Like [`cyrillic_to_latin`] but also counts unknown characters.
pub fn cyrillic_to_latin_report(text: &str) -> Transliterated {
    let chars: Vec<char> = text.nfc().collect();
    let mut out = String::with_capacity(text.len());
    let mut unknown = 0;
    for (i, &c) in chars.iter().enumerate() {
        let lower = c.to_lowercase().next().unwrap_or(c);
        match cyr_to_lat_lower(lower) {
            Some(lat) if c.is_uppercase() => {
                let mut letters = lat.chars();
                let first = letters.next().expect("non-empty table entry");
                out.extend(first.to_uppercase());
                if letters.as_str().is_empty() {
                    continue;
                }
                if uppercase_context(&chars, i) {
                    out.extend(letters.flat_map(char::to_uppercase));
                } else {
                    out.push_str(letters.as_str());
                }
            }
            Some(lat) => out.push_str(lat),
            None => {
                if !is_known_nonletter(c) {
                    unknown += 1;
                }
                out.push(c);
            }
        }
    }
    Transliterated { text: out, unknown_chars: unknown }
}

/// An uppercase Љ/Њ/Џ is rendered all-caps when its nearest letter
/// neighbour in the same word (next, else previous) is uppercase.
fn uppercase_context(chars: &[char], i: usize) -> bool {
    if let Some(&next) = chars.get(i + 1).filter(|c| c.is_alphabetic()) {
        return next.is_uppercase();
    }
    if i > 0 && chars[i - 1].is_alphabetic() {
        return chars[i - 1].is_uppercase();
    }
    false
}

/// Classifies text by counting Cyrillic versus Latin letters.
pub fn detect_script(text: &str) -> ScriptTag {
    let mut cyr = 0usize;
    let mut lat = 0usize;
    for c in text.nfc() {
        if is_cyrillic_letter(c) || ('\u{0400}'..='\u{04ff}').contains(&c) {
            cyr += 1;
        } else if is_serbian_latin_letter(c) {
            lat += 1;
        }
    }
    if cyr > lat {
        ScriptTag::SerbianCyrillic
    } else if lat > cyr {
        ScriptTag::SerbianLatin
    } else {
        ScriptTag::Other
    }
}

/// Result of a forward-then-inverse transliteration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundTripReport {
    pub ok: bool,
    /// Character index (in the NFC-normalized input) of the first mismatch.
    pub first_divergence: Option<usize>,
    pub forward: String,
    pub back: String,
}

impl fmt::Display for RoundTripReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.first_divergence {
            None => write!(f, "ok"),
            Some(at) => write!(f, "diverges at char {at} (via {:?}, got {:?})", self.forward, self.back),
        }
    }
}

/// Transliterates `text` in `direction` and back, comparing with the input.
pub fn round_trip_check(text: &str, direction: Direction, lexicon: &ExceptionLexicon) -> RoundTripReport {
    let (forward, back) = match direction {
        Direction::LatinToCyrillic => {
            let fwd = latin_to_cyrillic(text, lexicon);
            let back = cyrillic_to_latin(&fwd);
            (fwd, back)
        }
        Direction::CyrillicToLatin => {
            let fwd = cyrillic_to_latin(text);
            let back = latin_to_cyrillic(&fwd, lexicon);
            (fwd, back)
        }
    };
    let first_divergence = first_divergence(text, &back);
    RoundTripReport { ok: first_divergence.is_none(), first_divergence, forward, back }
}

/// Index of the first differing character, comparing NFC forms.
pub fn first_divergence(expected: &str, actual: &str) -> Option<usize> {
    let mut a = expected.nfc();
    let mut b = actual.nfc();
    let mut i = 0;
    loop {
        match (a.next(), b.next()) {
            (None, None) => return None,
            (x, y) if x == y => i += 1,
            _ => return Some(i),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn empty() -> ExceptionLexicon {
        ExceptionLexicon::new()
    }

    #[test]
    fn operation_examples() {
        assert_eq!(latin_to_cyrillic("", &empty()), "");
        assert_eq!(latin_to_cyrillic("ljubav", &empty()), "љубав");
        assert_eq!(latin_to_cyrillic("Beograd 2024!", &empty()), "Београд 2024!");
        assert_eq!(cyrillic_to_latin("љубав"), "ljubav");
        assert_eq!(cyrillic_to_latin("ЉУБАВ"), "LJUBAV");
        assert_eq!(cyrillic_to_latin("123, ."), "123, .");
    }

    #[test]
    fn digraph_casing() {
        assert_eq!(cyrillic_to_latin("Љубав"), "Ljubav");
        assert_eq!(cyrillic_to_latin("ПОЉ"), "POLJ");
        assert_eq!(cyrillic_to_latin("Џ"), "Dž");
        assert_eq!(cyrillic_to_latin("ЏЕП"), "DŽEP");
        assert_eq!(latin_to_cyrillic("LJUBAV", &empty()), "ЉУБАВ");
        assert_eq!(latin_to_cyrillic("Njegoš", &empty()), "Његош");
        assert_eq!(latin_to_cyrillic("DŽEP", &empty()), "ЏЕП");
        // lJ is not a digraph spelling.
        assert_eq!(latin_to_cyrillic("lJ", &empty()), "лЈ");
    }

    #[test]
    fn decomposed_input_is_normalized() {
        let decomposed = "S\u{030C}uma";
        assert_eq!(latin_to_cyrillic(decomposed, &empty()), "Шума");
        assert_eq!(cyrillic_to_latin("Шума"), "Šuma");
    }

    #[test]
    fn unknown_characters_are_counted() {
        let r = latin_to_cyrillic_report("xy 😀 ok", &empty());
        assert_eq!(r.text, "xy 😀 ок");
        assert_eq!(r.unknown_chars, 3);
        let r = cyrillic_to_latin_report("α и β");
        assert_eq!(r.text, "α i β");
        assert_eq!(r.unknown_chars, 2);
    }

    #[test]
    fn detect_script_examples() {
        assert_eq!(detect_script("Београд"), ScriptTag::SerbianCyrillic);
        assert_eq!(detect_script("Beograd"), ScriptTag::SerbianLatin);
        assert_eq!(detect_script("12345"), ScriptTag::Other);
        assert_eq!(detect_script(""), ScriptTag::Other);
    }

    #[test]
    fn round_trip_examples() {
        let lex = empty();
        assert!(round_trip_check("ljubav", Direction::LatinToCyrillic, &lex).ok);
        assert!(round_trip_check("", Direction::LatinToCyrillic, &lex).ok);
        assert!(round_trip_check("", Direction::CyrillicToLatin, &lex).ok);

        // Greedy matching merges d+ž: Latin round trip still works, but the
        // true Cyrillic spelling does not survive without the lexicon.
        let naive = round_trip_check("nadživeti", Direction::LatinToCyrillic, &lex);
        assert!(naive.ok);
        assert_eq!(naive.forward, "наџивети");
        let cyr = round_trip_check("надживети", Direction::CyrillicToLatin, &lex);
        assert!(!cyr.ok);
        assert_eq!(cyr.first_divergence, Some(2));

        let mut lex = empty();
        lex.insert("nadživeti", "надживети");
        let lat = round_trip_check("nadživeti", Direction::LatinToCyrillic, &lex);
        assert!(lat.ok);
        assert_eq!(lat.forward, "надживети");
        assert!(round_trip_check("надживети", Direction::CyrillicToLatin, &lex).ok);
        assert!(round_trip_check("Надживети", Direction::CyrillicToLatin, &lex).ok);
        assert!(round_trip_check("НАДЖИВЕТИ", Direction::CyrillicToLatin, &lex).ok);
    }

    #[test]
    fn lexicon_file_format() {
        let lex = ExceptionLexicon::parse("# comment\nnadživeti\tнадживети\n\npodžupan\tподжупан\n").unwrap();
        assert_eq!(lex.len(), 2);
        assert_eq!(latin_to_cyrillic("Podžupan je nadživeti.", &lex), "Поджупан је надживети.");
        assert!(matches!(ExceptionLexicon::parse("nadživeti надживети"), Err(Error::Lexicon { line: 1, .. })));
        assert!(matches!(ExceptionLexicon::parse("abc\tгде"), Err(Error::Lexicon { .. })));
    }

    #[test]
    fn builtin_lexicon_entries_round_trip() {
        let lex = ExceptionLexicon::builtin();
        assert!(lex.len() >= 10);
        for (lat, cyr) in lex.iter() {
            assert_eq!(cyrillic_to_latin(cyr), lat);
            assert!(round_trip_check(lat, Direction::LatinToCyrillic, &lex).ok, "{lat}");
            assert!(round_trip_check(cyr, Direction::CyrillicToLatin, &lex).ok, "{cyr}");
        }
    }
}
