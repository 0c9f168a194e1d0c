//! Latin to Cyrillic and back, with a lexicon exception and a round-trip check.

use digraph_probe::translit::{cyrillic_to_latin, latin_to_cyrillic, round_trip_check, Direction, ExceptionLexicon};

fn main() {
    let lex = ExceptionLexicon::builtin();
    for s in ["Ljubljana je LJUPKA", "Džep nadživeti konj", "Vuk Karadžić"] {
        let cyr = latin_to_cyrillic(s, &lex);
        println!("{s:<24} -> {cyr:<24} -> {}", cyrillic_to_latin(&cyr));
    }

    // Without the exception, "dž" in nadživeti collapses to one letter.
    let plain = ExceptionLexicon::new();
    println!("no lexicon: {}", latin_to_cyrillic("nadživeti", &plain));
    let r = round_trip_check("надживети", Direction::CyrillicToLatin, &plain);
    println!("round trip without lexicon: {r}");
}
