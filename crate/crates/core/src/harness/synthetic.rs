//! Synthetic verb lexicon for when the historical corpus is not at hand.
//!
//! Stems are one or two syllables built from onset, vowel and coda lists in
//! UNIBET. Regular pasts add Id, t or d by the stem's last phoneme. Irregular
//! pasts either change the last vowel or, for stems ending in t or d, repeat
//! the stem unchanged. Every generated stem and past fits the left-justified
//! template, so all three representations built on it keep every pair.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::lexicon::{regular_suffix, Justification, PhonemeInventory, Template, VerbPair};

const ONSETS: &[&str] = &[
    "", "", "p", "b", "t", "d", "k", "g", "f", "v", "T", "s", "z", "S", "h", "C", "J", "m", "n",
    "l", "r", "w", "y", "pl", "bl", "kl", "gl", "fl", "sl", "pr", "br", "tr", "dr", "kr", "gr",
    "fr", "Tr", "sw", "tw", "kw", "sp", "st", "sk", "sm", "sn", "str", "spr", "skr", "spl",
];
const VOWELS: &[&str] = &["i", "I", "e", "E", "&", "a", "o", "O", "U", "u", "6", "3"];
const CODAS: &[&str] = &[
    "", "p", "b", "t", "d", "k", "g", "f", "v", "T", "D", "s", "z", "S", "Z", "C", "J", "m", "n",
    "N", "l", "r", "st", "sk", "sp", "nt", "nd", "mp", "Nk", "lt", "ld", "lp", "lk", "rt", "rd",
    "rk", "rm", "rn", "ks", "ps", "ft", "kt", "pt", "ns", "lf",
];
/// Onsets allowed after a first-syllable coda.
const INNER_ONSETS: &[&str] = &[
    "", "p", "b", "t", "d", "k", "g", "f", "v", "s", "z", "m", "n", "l", "r",
];

/// Vowel replaced in the last syllable of a vowel-change irregular.
fn shifted(v: char) -> char {
    match v {
        'i' => 'E',
        'I' => '&',
        'e' => 'o',
        'E' => 'o',
        '&' => 'I',
        'a' => 'u',
        'o' => 'i',
        'O' => 'a',
        'U' => 'O',
        'u' => 'o',
        '6' => '&',
        _ => 'e',
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SyntheticParams {
    pub size: usize,
    pub irregular_fraction: f64,
    pub seed: u64,
    /// Chance a stem has a second syllable.
    pub two_syllable_fraction: f64,
}

impl Default for SyntheticParams {
    fn default() -> Self {
        SyntheticParams {
            size: 1184,
            irregular_fraction: 0.0,
            seed: 1,
            two_syllable_fraction: 0.3,
        }
    }
}

impl SyntheticParams {
    pub fn describe(&self) -> String {
        format!(
            "synthetic size={} irregular_fraction={} two_syllable_fraction={} seed={}",
            self.size, self.irregular_fraction, self.two_syllable_fraction, self.seed
        )
    }
}

fn pick<'a, R: Rng + ?Sized>(items: &[&'a str], rng: &mut R) -> &'a str {
    items.choose(rng).copied().unwrap_or_default()
}

fn stem<R: Rng + ?Sized>(params: &SyntheticParams, rng: &mut R) -> String {
    let mut s = format!("{}{}", pick(ONSETS, rng), pick(VOWELS, rng));
    if rng.gen_bool(params.two_syllable_fraction) {
        s.push_str(pick(&CODAS[..22], rng));
        s.push_str(pick(INNER_ONSETS, rng));
        s.push_str(pick(VOWELS, rng));
    }
    s.push_str(pick(CODAS, rng));
    s
}

fn irregular_past<R: Rng + ?Sized>(stem: &str, rng: &mut R, inv: &PhonemeInventory) -> String {
    let chars: Vec<char> = stem.chars().collect();
    if matches!(chars.last(), Some('t' | 'd')) && rng.gen_bool(0.3) {
        return stem.to_string();
    }
    let last_vowel = chars
        .iter()
        .rposition(|&c| inv.klass(c) == Some(crate::lexicon::Klass::Vowel))
        .expect("every stem has a vowel");
    let mut out = chars;
    out[last_vowel] = shifted(out[last_vowel]);
    out.into_iter().collect()
}

/// Generates `params.size` pairs with distinct stems. Each pair is irregular
/// with probability `irregular_fraction`.
pub fn generate(params: &SyntheticParams, inv: &PhonemeInventory) -> Result<Vec<VerbPair>> {
    if !(0.0..=1.0).contains(&params.irregular_fraction)
        || !(0.0..=1.0).contains(&params.two_syllable_fraction)
    {
        return Err(Error::Config(
            "synthetic fractions must lie in [0, 1]".into(),
        ));
    }
    let template = Template::main(Justification::Left);
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut seen = BTreeSet::new();
    let mut pairs = Vec::with_capacity(params.size);
    let mut attempts = 0usize;
    while pairs.len() < params.size {
        attempts += 1;
        if attempts > 200 * params.size + 10_000 {
            return Err(Error::Config(format!(
                "could only generate {} distinct stems of {} requested",
                pairs.len(),
                params.size
            )));
        }
        let s = stem(params, &mut rng);
        if seen.contains(&s) {
            continue;
        }
        let irregular = rng.gen_bool(params.irregular_fraction);
        let past = if irregular {
            irregular_past(&s, &mut rng, inv)
        } else {
            format!("{s}{}", regular_suffix(&s, inv)?)
        };
        if template.align(&s, inv)?.is_none() || template.align(&past, inv)?.is_none() {
            continue;
        }
        seen.insert(s.clone());
        let spelling = format!("v{:04}", pairs.len() + 1);
        pairs.push(VerbPair::new(&spelling, &s, &past, !irregular));
    }
    Ok(pairs)
}
