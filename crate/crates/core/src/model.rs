//! A trained forest bundled with the representation and bit encoding its
//! patterns went through, so raw phoneme strings can be fed in directly.
//!
//! Model file format: a `model` line, an `encoding <symbolic|distributed|ecc>`
//! line, for `ecc` a `codebook <line-count>` line followed by that many
//! codebook-file lines, then the forest file.

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;

use rand::Rng;

use crate::associator::{parse_forest, Forest, ForestConfig};
use crate::encode::{
    attributes_to_bits, bits_to_attributes, decode_distributed, encode_distributed, Codebook,
};
use crate::error::{read_file, write_file, Error, Result};
use crate::lexicon::{Example, Klass, Pattern, PhonemeInventory, Representation, SlotClass};
use crate::tree::{Lines, PassthroughReference, Strategy};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Encoding {
    /// Phoneme symbols are the attribute values.
    Symbolic,
    /// Ten phonetic-feature bits per slot, one attribute per bit.
    Distributed,
    /// One codeword per slot, one attribute per bit.
    Ecc(Codebook),
}

impl Encoding {
    pub fn is_binary(&self) -> bool {
        !matches!(self, Encoding::Symbolic)
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Encoding::Symbolic => "symbolic",
            Encoding::Distributed => "distributed",
            Encoding::Ecc(_) => "ecc",
        }
    }
}

impl fmt::Display for Encoding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Encoding::Ecc(cb) => write!(f, "ecc:{}:{}", cb.code_length(), cb.min_distance()),
            other => f.write_str(other.tag()),
        }
    }
}

/// Converts symbolic patterns to forest attributes and back.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codec {
    pub representation: Representation,
    pub encoding: Encoding,
    pub inventory: PhonemeInventory,
}

impl Codec {
    pub fn new(
        representation: Representation,
        encoding: Encoding,
        inventory: PhonemeInventory,
    ) -> Result<Self> {
        match &encoding {
            Encoding::Distributed if !representation.is_templated() => {
                return Err(Error::Usage(
                    "the distributed encoding needs a templated representation to decode vowels \
                     and consonants apart"
                        .into(),
                ))
            }
            Encoding::Ecc(cb) => cb.covers(&inventory)?,
            _ => {}
        }
        Ok(Codec {
            representation,
            encoding,
            inventory,
        })
    }

    fn encode(&self, p: &Pattern, slots: &[SlotClass]) -> Result<Pattern> {
        match &self.encoding {
            Encoding::Symbolic => {
                for &c in p.iter() {
                    self.inventory.phoneme(c)?;
                }
                Ok(p.clone())
            }
            Encoding::Distributed => Ok(bits_to_attributes(&encode_distributed(
                p,
                slots,
                &self.inventory,
            )?)),
            Encoding::Ecc(cb) => Ok(bits_to_attributes(&cb.encode(p)?)),
        }
    }

    pub fn encode_input(&self, p: &Pattern) -> Result<Pattern> {
        self.encode(p, &self.representation.input_slots())
    }

    pub fn encode_output(&self, p: &Pattern) -> Result<Pattern> {
        self.encode(p, &self.representation.output_slots())
    }

    pub fn encode_example(&self, e: &Example) -> Result<Example> {
        Ok(Example {
            input: self.encode_input(&e.input)?,
            output: self.encode_output(&e.output)?,
        })
    }

    /// Decodes forest output attributes back to a symbolic pattern.
    pub fn decode_output<R: Rng + ?Sized>(&self, attrs: &Pattern, rng: &mut R) -> Result<Pattern> {
        match &self.encoding {
            Encoding::Symbolic => Ok(attrs.clone()),
            Encoding::Distributed => decode_distributed(
                &attributes_to_bits(attrs)?,
                &self.representation.output_slots(),
                &self.inventory,
                rng,
            ),
            Encoding::Ecc(cb) => cb.decode(&attributes_to_bits(attrs)?, rng),
        }
    }

    /// Legal classes per output attribute. Template slots admit blank plus
    /// their own phoneme class; bit attributes admit `0` and `1`.
    pub fn output_domains(&self) -> Vec<Option<BTreeSet<char>>> {
        let slots = self.representation.output_slots();
        match &self.encoding {
            Encoding::Symbolic => slots
                .iter()
                .map(|slot| {
                    slot.klass().map(|k| {
                        self.inventory
                            .iter()
                            .filter(|p| p.klass == k || p.klass == Klass::Blank)
                            .map(|p| p.symbol)
                            .collect()
                    })
                })
                .collect(),
            Encoding::Distributed => {
                vec![Some(['0', '1'].into()); slots.len() * crate::lexicon::FEATURE_BITS]
            }
            Encoding::Ecc(cb) => vec![Some(['0', '1'].into()); slots.len() * cb.code_length()],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Model {
    pub codec: Codec,
    pub forest: Forest,
}

impl Model {
    /// Trains on symbolic examples, encoding them first.
    pub fn train(
        examples: &[Example],
        codec: Codec,
        strategy: Strategy,
        reference: PassthroughReference,
    ) -> Result<Model> {
        let encoded = examples
            .iter()
            .map(|e| codec.encode_example(e))
            .collect::<Result<Vec<_>>>()?;
        let config = ForestConfig {
            strategy,
            reference,
            domains: Some(codec.output_domains()),
        };
        let mut forest = Forest::train(&encoded, &config)?;
        forest.representation = codec.representation.to_string();
        forest.inventory = Some(codec.inventory.fingerprint());
        Ok(Model { codec, forest })
    }

    /// Raw forest output (bit attributes for binary encodings).
    pub fn predict_attributes(&self, input: &Pattern) -> Result<Pattern> {
        self.forest.predict(&self.codec.encode_input(input)?)
    }

    pub fn predict<R: Rng + ?Sized>(&self, input: &Pattern, rng: &mut R) -> Result<Pattern> {
        self.codec
            .decode_output(&self.predict_attributes(input)?, rng)
    }

    /// Aligns a stem, predicts, and returns the past tense with blanks removed.
    pub fn predict_stem<R: Rng + ?Sized>(&self, stem: &str, rng: &mut R) -> Result<String> {
        self.codec.inventory.validate_word(stem)?;
        let input = self
            .codec
            .representation
            .align_stem(stem, &self.codec.inventory)?
            .ok_or_else(|| {
                Error::Usage(format!(
                    "stem '{stem}' does not fit the {} representation",
                    self.codec.representation
                ))
            })?;
        let output = self.predict(&input, rng)?;
        Ok(self
            .codec
            .representation
            .render_output(&output, &self.codec.inventory))
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("model\nencoding {}\n", self.codec.encoding.tag());
        if let Encoding::Ecc(cb) = &self.codec.encoding {
            let text = cb.to_text();
            out.push_str(&format!("codebook {}\n", text.lines().count()));
            out.push_str(&text);
        }
        out.push_str(&self.forest.to_text());
        out
    }

    /// Parses a model file and checks it was trained with `inventory`.
    pub fn parse(text: &str, inventory: &PhonemeInventory) -> Result<Model> {
        let mut lines = Lines::new(text);
        match lines.next() {
            Some((_, "model")) => {}
            Some((line, _)) => return Err(Error::parse(line, "expected 'model' header")),
            None => return Err(Error::parse(1, "empty model file")),
        }
        let (line, enc) = lines.expect("encoding")?;
        let encoding = match enc.strip_prefix("encoding ").map(str::trim) {
            Some("symbolic") => Encoding::Symbolic,
            Some("distributed") => Encoding::Distributed,
            Some("ecc") => {
                let (line, header) = lines.expect("codebook")?;
                let count: usize = header
                    .strip_prefix("codebook ")
                    .and_then(|n| n.trim().parse().ok())
                    .ok_or_else(|| Error::parse(line, "expected 'codebook <line-count>'"))?;
                let mut body = String::new();
                for _ in 0..count {
                    body.push_str(lines.expect("codebook line")?.1);
                    body.push('\n');
                }
                Encoding::Ecc(Codebook::parse(&body)?)
            }
            _ => {
                return Err(Error::parse(
                    line,
                    "expected 'encoding <symbolic|distributed|ecc>'",
                ))
            }
        };
        let forest = parse_forest(&mut lines)?;
        if let Some((line, _)) = lines.next() {
            return Err(Error::parse(line, "trailing content after model"));
        }
        forest.verify_inventory(&inventory.fingerprint())?;
        let representation: Representation = forest.representation.parse()?;
        let codec = Codec::new(representation, encoding, inventory.clone())?;
        Ok(Model { codec, forest })
    }

    pub fn load(path: &Path, inventory: &PhonemeInventory) -> Result<Model> {
        Self::parse(&read_file(path)?, inventory)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        write_file(path, &self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexicon::{build_examples, VerbPair};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn pairs() -> Vec<VerbPair> {
        vec![
            VerbPair::new("abandon", "6b&nd6n", "6b&nd6nd", true),
            VerbPair::new("benefit", "bEn6fIt", "bEn6fItId", true),
            VerbPair::new("arise", "6r3z", "6roz", false),
            VerbPair::new("become", "bIk6m", "bIkem", false),
            VerbPair::new("talk", "tOk", "tOkt", true),
        ]
    }

    #[test]
    fn every_encoding_replays_training_stems() {
        let inv = PhonemeInventory::default_unibet();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let cb = Codebook::build(&inv, 23, 10, &mut rng).unwrap();
        for (rep, enc) in [
            (Representation::LeftTemplate, Encoding::Symbolic),
            (Representation::RightTemplateWithCoda, Encoding::Symbolic),
            (Representation::LeftTemplate, Encoding::Distributed),
            (Representation::Consecutive(10), Encoding::Ecc(cb.clone())),
        ] {
            let (data, _) = build_examples(&pairs(), rep, &inv).unwrap();
            let codec = Codec::new(rep, enc, inv.clone()).unwrap();
            let model = Model::train(
                &data.examples(),
                codec,
                Strategy::Adaptive,
                Default::default(),
            )
            .unwrap();
            // bEn6fItId has four vowels and does not fit every output layout
            assert!(data.len() >= 4);
            for row in &data.rows {
                let p = &row.pair;
                assert_eq!(
                    model.predict_stem(&p.stem, &mut rng).unwrap(),
                    p.past,
                    "{rep}"
                );
            }
            let again = Model::parse(&model.to_text(), &inv).unwrap();
            assert_eq!(again, model);
        }
    }

    #[test]
    fn distributed_needs_a_template() {
        let inv = PhonemeInventory::default_unibet();
        assert!(Codec::new(Representation::Consecutive(8), Encoding::Distributed, inv).is_err());
    }

    #[test]
    fn unknown_symbol_in_stem_is_named() {
        let inv = PhonemeInventory::default_unibet();
        let (data, _) = build_examples(&pairs(), Representation::LeftTemplate, &inv).unwrap();
        let codec = Codec::new(Representation::LeftTemplate, Encoding::Symbolic, inv).unwrap();
        let model = Model::train(
            &data.examples(),
            codec,
            Strategy::Adaptive,
            Default::default(),
        )
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        match model.predict_stem("bQt", &mut rng) {
            Err(Error::UnknownSymbol('Q')) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn loading_with_another_inventory_fails() {
        let inv = PhonemeInventory::default_unibet();
        let (data, _) = build_examples(&pairs(), Representation::LeftTemplate, &inv).unwrap();
        let codec = Codec::new(
            Representation::LeftTemplate,
            Encoding::Symbolic,
            inv.clone(),
        )
        .unwrap();
        let model = Model::train(
            &data.examples(),
            codec,
            Strategy::Adaptive,
            Default::default(),
        )
        .unwrap();
        let other = PhonemeInventory::parse(
            &inv.to_string()
                .replace("p C 0 1 0 0 0 0 0 0 0 0", "p C 0 1 0 0 0 0 0 1 0 0"),
        )
        .unwrap();
        assert!(Model::parse(&model.to_text(), &other).is_err());
    }
}
