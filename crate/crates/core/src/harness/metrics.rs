use std::fmt;
use std::ops::Add;

use rand::Rng;

use crate::error::{Error, Result};
use crate::lexicon::{Example, Pattern};
use crate::model::Model;

/// Raw counts for one group of test items.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GroupCounts {
    pub words: usize,
    pub words_correct: usize,
    /// Output positions, blanks included.
    pub letters: usize,
    pub letters_correct: usize,
    /// Zero unless the model uses a binary encoding.
    pub bits: usize,
    pub bits_correct: usize,
}

fn rate(num: usize, den: usize) -> Option<f64> {
    (den > 0).then(|| num as f64 / den as f64)
}

impl GroupCounts {
    pub fn word_rate(&self) -> Option<f64> {
        rate(self.words_correct, self.words)
    }

    pub fn letter_rate(&self) -> Option<f64> {
        rate(self.letters_correct, self.letters)
    }

    pub fn bit_rate(&self) -> Option<f64> {
        rate(self.bits_correct, self.bits)
    }

    /// Scores one symbolic prediction, plus its bits when given.
    pub fn record(
        &mut self,
        predicted: &Pattern,
        target: &Pattern,
        bits: Option<(&Pattern, &Pattern)>,
    ) {
        let hits = predicted
            .iter()
            .zip(target.iter())
            .filter(|(a, b)| a == b)
            .count();
        self.words += 1;
        self.words_correct += usize::from(hits == target.len() && predicted.len() == target.len());
        self.letters += target.len();
        self.letters_correct += hits;
        if let Some((p, t)) = bits {
            self.bits += t.len();
            self.bits_correct += p.iter().zip(t.iter()).filter(|(a, b)| a == b).count();
        }
    }
}

impl Add for GroupCounts {
    type Output = GroupCounts;

    fn add(self, o: GroupCounts) -> GroupCounts {
        GroupCounts {
            words: self.words + o.words,
            words_correct: self.words_correct + o.words_correct,
            letters: self.letters + o.letters,
            letters_correct: self.letters_correct + o.letters_correct,
            bits: self.bits + o.bits,
            bits_correct: self.bits_correct + o.bits_correct,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Metrics {
    pub regular: GroupCounts,
    pub irregular: GroupCounts,
}

impl Metrics {
    pub fn combined(&self) -> GroupCounts {
        self.regular + self.irregular
    }

    /// Checks word rate ≤ letter rate in every group and that each combined
    /// rate is the count-weighted mean of the group rates.
    pub fn verify(&self) -> Result<()> {
        let c = self.combined();
        for (name, g) in [
            ("regular", self.regular),
            ("irregular", self.irregular),
            ("combined", c),
        ] {
            if let (Some(w), Some(l)) = (g.word_rate(), g.letter_rate()) {
                if w > l + 1e-12 {
                    return Err(Error::Training(format!(
                        "{name}: word rate {w} exceeds letter rate {l}"
                    )));
                }
            }
        }
        type Part = fn(&GroupCounts) -> (usize, Option<f64>);
        let parts: [(&str, Part); 3] = [
            ("word", |g| (g.words, g.word_rate())),
            ("letter", |g| (g.letters, g.letter_rate())),
            ("bit", |g| (g.bits, g.bit_rate())),
        ];
        for (name, part) in parts {
            let (total, combined) = part(&c);
            let Some(combined) = combined else { continue };
            let weighted: f64 = [self.regular, self.irregular]
                .iter()
                .filter_map(|g| {
                    let (n, r) = part(g);
                    r.map(|r| r * n as f64)
                })
                .sum::<f64>()
                / total as f64;
            if (weighted - combined).abs() > 1e-9 {
                return Err(Error::Training(format!(
                    "combined {name} rate {combined} is not the weighted mean {weighted}"
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for Metrics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pct =
            |x: Option<f64>| x.map_or_else(|| "-".to_string(), |r| format!("{:.1}%", 100.0 * r));
        writeln!(
            f,
            "{:<10} {:>6} {:>8} {:>8} {:>8}",
            "group", "words", "word", "letter", "bit"
        )?;
        for (name, g) in [
            ("regular", self.regular),
            ("irregular", self.irregular),
            ("combined", self.combined()),
        ] {
            writeln!(
                f,
                "{name:<10} {:>6} {:>8} {:>8} {:>8}",
                g.words,
                pct(g.word_rate()),
                pct(g.letter_rate()),
                pct(g.bit_rate())
            )?;
        }
        Ok(())
    }
}

/// Scores `model` on symbolic test examples; `regular[i]` picks the group.
/// Bit accuracy is taken on the forest's raw output, before decoding.
pub fn evaluate<R: Rng + ?Sized>(
    model: &Model,
    test: &[Example],
    regular: &[bool],
    rng: &mut R,
) -> Result<Metrics> {
    if test.len() != regular.len() {
        return Err(Error::Usage(format!(
            "{} test examples but {} regularity flags",
            test.len(),
            regular.len()
        )));
    }
    let arity = model.codec.representation.output_arity();
    let binary = model.codec.encoding.is_binary();
    let mut m = Metrics::default();
    for (e, &reg) in test.iter().zip(regular) {
        if e.output.len() != arity {
            return Err(Error::Usage(format!(
                "test output {} has {} attributes, the model produces {arity}",
                e.output,
                e.output.len()
            )));
        }
        let raw = model.predict_attributes(&e.input)?;
        let predicted = model.codec.decode_output(&raw, rng)?;
        let group = if reg {
            &mut m.regular
        } else {
            &mut m.irregular
        };
        if binary {
            let target_bits = model.codec.encode_output(&e.output)?;
            group.record(&predicted, &e.output, Some((&raw, &target_bits)));
        } else {
            group.record(&predicted, &e.output, None);
        }
    }
    m.verify()?;
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_and_letter_counts() {
        let mut g = GroupCounts::default();
        g.record(&"ab_".into(), &"ab_".into(), None);
        g.record(&"ax_".into(), &"ab_".into(), None);
        assert_eq!(g.word_rate(), Some(0.5));
        assert_eq!(g.letter_rate(), Some(5.0 / 6.0));
        assert_eq!(g.bit_rate(), None);
    }

    #[test]
    fn all_wrong_scores_zero() {
        let mut g = GroupCounts::default();
        g.record(&"xy".into(), &"ab".into(), None);
        assert_eq!(g.word_rate(), Some(0.0));
        assert_eq!(g.letter_rate(), Some(0.0));
    }

    #[test]
    fn combined_is_weighted() {
        let mut m = Metrics::default();
        for _ in 0..3 {
            m.regular.record(&"ab".into(), &"ab".into(), None);
        }
        m.irregular.record(&"ab".into(), &"ac".into(), None);
        assert_eq!(m.combined().word_rate(), Some(0.75));
        m.verify().unwrap();
    }
}
