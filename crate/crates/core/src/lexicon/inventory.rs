use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::error::{read_file, Error, Result};

/// Number of feature bits carried by every phoneme.
pub const FEATURE_BITS: usize = 10;

/// Index of the consonant "voiced" feature.
pub const VOICED: usize = 0;

const DEFAULT_INVENTORY: &str = include_str!("../../data/default_inventory.txt");

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Klass {
    Consonant,
    Vowel,
    Blank,
}

impl Klass {
    fn letter(self) -> char {
        match self {
            Klass::Consonant => 'C',
            Klass::Vowel => 'V',
            Klass::Blank => 'B',
        }
    }

    fn from_letter(c: &str) -> Option<Self> {
        match c {
            "C" => Some(Klass::Consonant),
            "V" => Some(Klass::Vowel),
            "B" => Some(Klass::Blank),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Phoneme {
    pub symbol: char,
    pub klass: Klass,
    pub features: [bool; FEATURE_BITS],
}

impl Phoneme {
    pub fn is_voiced(&self) -> bool {
        match self.klass {
            Klass::Vowel => true,
            Klass::Consonant => self.features[VOICED],
            Klass::Blank => false,
        }
    }
}

/// The phoneme alphabet: every symbol with its class and feature vector.
///
/// Immutable after construction; all invariants are checked by
/// [`PhonemeInventory::new`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhonemeInventory {
    entries: BTreeMap<char, Phoneme>,
    blank: char,
}

impl PhonemeInventory {
    pub fn new(phonemes: impl IntoIterator<Item = Phoneme>) -> Result<Self> {
        let mut entries = BTreeMap::new();
        let mut blank = None;
        for p in phonemes {
            if p.symbol.is_whitespace() || p.symbol.is_control() {
                return Err(Error::Inventory(format!(
                    "symbol {:?} is not a printable character",
                    p.symbol
                )));
            }
            if p.klass == Klass::Blank {
                if blank.replace(p.symbol).is_some() {
                    return Err(Error::Inventory("more than one blank phoneme".into()));
                }
                if p.features.iter().any(|&b| b) {
                    return Err(Error::Inventory(format!(
                        "blank '{}' must have an all-zero feature vector",
                        p.symbol
                    )));
                }
            }
            if p.klass == Klass::Vowel && (p.features[8] || p.features[9]) {
                return Err(Error::Inventory(format!(
                    "vowel '{}' must have zero padding features 9 and 10",
                    p.symbol
                )));
            }
            let symbol = p.symbol;
            if entries.insert(symbol, p).is_some() {
                return Err(Error::Inventory(format!("duplicate symbol '{symbol}'")));
            }
        }
        let blank = blank.ok_or_else(|| Error::Inventory("no blank phoneme".into()))?;

        let mut seen = BTreeSet::new();
        for p in entries.values() {
            if !seen.insert((p.klass, p.features)) {
                return Err(Error::Inventory(format!(
                    "'{}' repeats the feature vector of another {:?}",
                    p.symbol, p.klass
                )));
            }
        }
        Ok(PhonemeInventory { entries, blank })
    }

    /// The shipped stand-in inventory: 24 consonants, 12 vowels and `_`.
    pub fn default_unibet() -> Self {
        Self::parse(DEFAULT_INVENTORY).expect("shipped inventory is valid")
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&read_file(path)?)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut phonemes = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.trim();
            if content.is_empty() || content.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = content.split_whitespace().collect();
            if fields.len() != 2 + FEATURE_BITS {
                return Err(Error::parse(
                    line,
                    format!(
                        "expected symbol, class and {FEATURE_BITS} bits, found {} fields",
                        fields.len()
                    ),
                ));
            }
            let mut chars = fields[0].chars();
            let symbol = match (chars.next(), chars.next()) {
                (Some(c), None) => c,
                _ => return Err(Error::parse(line, "symbol must be a single character")),
            };
            let klass = Klass::from_letter(fields[1])
                .ok_or_else(|| Error::parse(line, format!("bad class '{}'", fields[1])))?;
            let mut features = [false; FEATURE_BITS];
            for (slot, bit) in features.iter_mut().zip(&fields[2..]) {
                *slot = match *bit {
                    "0" => false,
                    "1" => true,
                    other => return Err(Error::parse(line, format!("bad bit '{other}'"))),
                };
            }
            phonemes.push(Phoneme {
                symbol,
                klass,
                features,
            });
        }
        Self::new(phonemes)
    }

    pub fn blank(&self) -> char {
        self.blank
    }

    pub fn get(&self, symbol: char) -> Option<&Phoneme> {
        self.entries.get(&symbol)
    }

    pub fn phoneme(&self, symbol: char) -> Result<&Phoneme> {
        self.get(symbol).ok_or(Error::UnknownSymbol(symbol))
    }

    pub fn klass(&self, symbol: char) -> Option<Klass> {
        self.get(symbol).map(|p| p.klass)
    }

    pub fn contains(&self, symbol: char) -> bool {
        self.entries.contains_key(&symbol)
    }

    /// All phonemes in symbol order, blank included.
    pub fn iter(&self) -> impl Iterator<Item = &Phoneme> {
        self.entries.values()
    }

    /// All symbols in symbol order, blank included.
    pub fn symbols(&self) -> Vec<char> {
        self.entries.keys().copied().collect()
    }

    pub fn non_blank_len(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn of_klass(&self, klass: Klass) -> impl Iterator<Item = &Phoneme> {
        self.entries.values().filter(move |p| p.klass == klass)
    }

    /// Checks that every character of `s` is a non-blank inventory symbol.
    pub fn validate_word(&self, s: &str) -> Result<()> {
        for c in s.chars() {
            if c == self.blank || !self.contains(c) {
                return Err(Error::UnknownSymbol(c));
            }
        }
        Ok(())
    }

    /// Short content hash; stored in model files so a forest is never
    /// decoded against a different alphabet.
    pub fn fingerprint(&self) -> String {
        let digest = Sha256::digest(self.to_string().as_bytes());
        hex::encode(&digest[..8])
    }
}

impl fmt::Display for PhonemeInventory {
    /// Canonical inventory file form.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in self.entries.values() {
            write!(f, "{} {}", p.symbol, p.klass.letter())?;
            for &b in &p.features {
                write!(f, " {}", u8::from(b))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
