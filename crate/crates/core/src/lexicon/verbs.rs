use std::collections::HashSet;
use std::path::Path;

use super::inventory::{Klass, PhonemeInventory};
use crate::error::{read_file, Error, Result};

/// One stem/past-tense pair from the lexicon.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerbPair {
    pub spelling: String,
    pub stem: String,
    pub past: String,
    pub regular: bool,
}

impl VerbPair {
    pub fn new(spelling: &str, stem: &str, past: &str, regular: bool) -> Self {
        VerbPair {
            spelling: spelling.to_string(),
            stem: stem.to_string(),
            past: past.to_string(),
            regular,
        }
    }
}

struct Row<'a> {
    line: usize,
    spelling: &'a str,
    form: &'a str,
    marker: &'a str,
    irregular: bool,
}

/// Reads a tab-separated lexicon: spelling, phonetic form, `b`/`d` marker
/// and `0`/`1` irregularity flag. Each `b` row must be followed by its `d`
/// row. Blank lines and `#` comments are skipped.
pub fn load_lexicon(path: &Path, inv: &PhonemeInventory) -> Result<Vec<VerbPair>> {
    parse_lexicon(&read_file(path)?, inv)
}

pub fn parse_lexicon(text: &str, inv: &PhonemeInventory) -> Result<Vec<VerbPair>> {
    let mut rows = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let raw = raw.trim_end_matches('\r');
        if raw.trim().is_empty() || raw.trim_start().starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = raw.split('\t').map(str::trim).collect();
        if fields.len() != 4 {
            return Err(Error::parse(
                line,
                format!("expected 4 tab-separated columns, found {}", fields.len()),
            ));
        }
        let irregular = match fields[3] {
            "0" => false,
            "1" => true,
            other => return Err(Error::parse(line, format!("bad regularity flag '{other}'"))),
        };
        if fields[2] != "b" && fields[2] != "d" {
            return Err(Error::parse(line, format!("bad marker '{}'", fields[2])));
        }
        if fields[1].is_empty() {
            return Err(Error::parse(line, "empty phonetic form"));
        }
        for symbol in fields[1].chars() {
            if !matches!(inv.klass(symbol), Some(Klass::Consonant | Klass::Vowel)) {
                return Err(Error::UnknownSymbolAt { line, symbol });
            }
        }
        rows.push(Row {
            line,
            spelling: fields[0],
            form: fields[1],
            marker: fields[2],
            irregular,
        });
    }

    let mut pairs = Vec::with_capacity(rows.len() / 2);
    let mut stems = HashSet::new();
    let mut it = rows.iter();
    while let Some(base) = it.next() {
        if base.marker != "b" {
            return Err(Error::Structure(format!(
                "line {}: past-tense row without a preceding stem row",
                base.line
            )));
        }
        let past = match it.next() {
            Some(p) if p.marker == "d" => p,
            Some(p) => {
                return Err(Error::Structure(format!(
                    "line {}: stem row at line {} has no past-tense row",
                    p.line, base.line
                )))
            }
            None => {
                return Err(Error::Structure(format!(
                    "line {}: stem row has no past-tense row",
                    base.line
                )))
            }
        };
        if !stems.insert(base.form) {
            return Err(Error::Structure(format!(
                "line {}: duplicate stem '{}'",
                base.line, base.form
            )));
        }
        pairs.push(VerbPair {
            spelling: base.spelling.to_string(),
            stem: base.form.to_string(),
            past: past.form.to_string(),
            regular: !past.irregular,
        });
    }
    Ok(pairs)
}

/// Renders pairs back into the tab-separated lexicon form.
pub fn format_lexicon(pairs: &[VerbPair]) -> String {
    let mut out = String::new();
    for p in pairs {
        let flag = if p.regular { 0 } else { 1 };
        out.push_str(&format!("{}\t{}\tb\t0\n", p.spelling, p.stem));
        out.push_str(&format!("{}-ed\t{}\td\t{}\n", p.spelling, p.past, flag));
    }
    out
}

/// The regular past-tense suffix of a stem: `Id` after `t` or `d`, `t` after
/// any other unvoiced consonant, `d` after a voiced consonant or a vowel.
pub fn regular_suffix(stem: &str, inv: &PhonemeInventory) -> Result<&'static str> {
    let last = stem
        .chars()
        .last()
        .ok_or_else(|| Error::DataConsistency("empty stem has no suffix".into()))?;
    if last == 't' || last == 'd' {
        return Ok("Id");
    }
    let phoneme = inv.phoneme(last)?;
    Ok(if phoneme.is_voiced() { "d" } else { "t" })
}

#[cfg(test)]
mod tests {
    use super::*;

    const TABLE3: &str = "abandon\t6b&nd6n\tb\t0\n\
                          abandoned\t6b&nd6nd\td\t0\n\
                          arise\t6r3z\tb\t0\n\
                          arose\t6roz\td\t1\n";

    #[test]
    fn reads_printed_rows() {
        let inv = PhonemeInventory::default_unibet();
        let pairs = parse_lexicon(TABLE3, &inv).unwrap();
        assert_eq!(
            pairs,
            vec![
                VerbPair::new("abandon", "6b&nd6n", "6b&nd6nd", true),
                VerbPair::new("arise", "6r3z", "6roz", false),
            ]
        );
    }

    #[test]
    fn empty_file_is_empty_lexicon() {
        let inv = PhonemeInventory::default_unibet();
        assert!(parse_lexicon("", &inv).unwrap().is_empty());
    }

    #[test]
    fn unknown_symbol_names_line_and_symbol() {
        let inv = PhonemeInventory::default_unibet();
        let text = "go\tgo\tb\t0\nwent\twEQt\td\t1\n";
        match parse_lexicon(text, &inv) {
            Err(Error::UnknownSymbolAt { line, symbol }) => {
                assert_eq!((line, symbol), (2, 'Q'));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn structural_errors() {
        let inv = PhonemeInventory::default_unibet();
        let lone_past = "went\twEnt\td\t1\n";
        assert!(matches!(
            parse_lexicon(lone_past, &inv),
            Err(Error::Structure(_))
        ));
        let lone_stem = "go\tgo\tb\t0\n";
        assert!(matches!(
            parse_lexicon(lone_stem, &inv),
            Err(Error::Structure(_))
        ));
        let two_pasts = "hang\th&N\tb\t0\nhung\th6N\td\t1\nhanged\th&Nd\td\t0\n";
        assert!(matches!(
            parse_lexicon(two_pasts, &inv),
            Err(Error::Structure(_))
        ));
        let dup = "a\tb6t\tb\t0\nb\tb6tId\td\t0\nc\tb6t\tb\t0\nd\tb6tId\td\t0\n";
        assert!(matches!(parse_lexicon(dup, &inv), Err(Error::Structure(_))));
    }

    #[test]
    fn round_trips_through_format() {
        let inv = PhonemeInventory::default_unibet();
        let pairs = parse_lexicon(TABLE3, &inv).unwrap();
        let again = parse_lexicon(&format_lexicon(&pairs), &inv).unwrap();
        for (a, b) in pairs.iter().zip(&again) {
            assert_eq!((&a.stem, &a.past, a.regular), (&b.stem, &b.past, b.regular));
        }
    }

    #[test]
    fn suffix_by_final_phoneme() {
        let inv = PhonemeInventory::default_unibet();
        assert_eq!(regular_suffix("Iksted", &inv).unwrap(), "Id");
        assert_eq!(regular_suffix("bEn6fIt", &inv).unwrap(), "Id");
        assert_eq!(regular_suffix("tOk", &inv).unwrap(), "t");
        assert_eq!(regular_suffix("sOlv", &inv).unwrap(), "d");
        assert_eq!(regular_suffix("6b&nd6n", &inv).unwrap(), "d");
        assert_eq!(regular_suffix("ple", &inv).unwrap(), "d");
    }
}
