use std::fmt;
use std::path::Path;
use std::str::FromStr;

use super::inventory::PhonemeInventory;
use super::pattern::{Example, Pattern};
use super::template::{Justification, SlotClass, Template};
use super::verbs::{regular_suffix, VerbPair};
use crate::error::{read_file, write_file, Error, Result};

/// How phoneme strings become fixed-length patterns.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Representation {
    /// Left-to-right phoneme holders padded with blanks to a fixed arity.
    Consecutive(usize),
    /// Stem and past both in the left-justified 18-slot template.
    LeftTemplate,
    /// Stem right-justified; past right-justified without its regular suffix
    /// followed by a 5-slot coda that holds only that suffix.
    RightTemplateWithCoda,
}

impl Representation {
    fn input_template(&self) -> Template {
        match *self {
            Representation::Consecutive(k) => Template::consecutive(k),
            Representation::LeftTemplate => Template::main(Justification::Left),
            Representation::RightTemplateWithCoda => Template::main(Justification::Right),
        }
    }

    pub fn input_slots(&self) -> Vec<SlotClass> {
        self.input_template().slots().to_vec()
    }

    pub fn output_slots(&self) -> Vec<SlotClass> {
        match self {
            Representation::RightTemplateWithCoda => {
                let mut slots = Template::main(Justification::Right).slots().to_vec();
                slots.extend_from_slice(Template::coda().slots());
                slots
            }
            other => other.input_template().slots().to_vec(),
        }
    }

    pub fn input_arity(&self) -> usize {
        self.input_slots().len()
    }

    pub fn output_arity(&self) -> usize {
        self.output_slots().len()
    }

    pub fn is_templated(&self) -> bool {
        !matches!(self, Representation::Consecutive(_))
    }

    /// Aligns a stem into the input pattern, or `None` if it does not fit.
    pub fn align_stem(&self, stem: &str, inv: &PhonemeInventory) -> Result<Option<Pattern>> {
        self.input_template().align(stem, inv)
    }

    /// Builds one example, `Ok(None)` when either side does not fit.
    pub fn build_example(
        &self,
        pair: &VerbPair,
        inv: &PhonemeInventory,
    ) -> Result<Option<Example>> {
        let Some(input) = self.align_stem(&pair.stem, inv)? else {
            return Ok(None);
        };
        let output = match self {
            Representation::Consecutive(_) | Representation::LeftTemplate => {
                self.input_template().align(&pair.past, inv)?
            }
            Representation::RightTemplateWithCoda => {
                let main = Template::main(Justification::Right);
                let coda = Template::coda();
                let (body, suffix) = if pair.regular {
                    let suffix = regular_suffix(&pair.stem, inv)?;
                    if pair.past != format!("{}{}", pair.stem, suffix) {
                        return Err(Error::DataConsistency(format!(
                            "regular pair {} -> {} is not stem + '{}'",
                            pair.stem, pair.past, suffix
                        )));
                    }
                    (pair.stem.as_str(), suffix)
                } else {
                    (pair.past.as_str(), "")
                };
                match (main.align(body, inv)?, coda.align(suffix, inv)?) {
                    (Some(m), Some(c)) => Some(m.concat(&c)),
                    _ => None,
                }
            }
        };
        Ok(output.map(|output| Example { input, output }))
    }

    /// Turns an output pattern back into a phoneme string.
    pub fn render_output(&self, output: &Pattern, inv: &PhonemeInventory) -> String {
        output.strip(inv.blank())
    }
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Representation::Consecutive(k) => write!(f, "consecutive:{k}"),
            Representation::LeftTemplate => write!(f, "left-template"),
            Representation::RightTemplateWithCoda => write!(f, "right-coda"),
        }
    }
}

impl FromStr for Representation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "left-template" => Ok(Representation::LeftTemplate),
            "right-coda" => Ok(Representation::RightTemplateWithCoda),
            _ => {
                let k = s
                    .strip_prefix("consecutive:")
                    .and_then(|k| k.parse::<usize>().ok())
                    .filter(|&k| k > 0)
                    .ok_or_else(|| {
                        Error::Usage(format!(
                            "unknown representation '{s}' \
                             (expected left-template, right-coda or consecutive:<k>)"
                        ))
                    })?;
                Ok(Representation::Consecutive(k))
            }
        }
    }
}

/// A verb pair with its aligned example.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DataRow {
    pub pair: VerbPair,
    pub example: Example,
}

/// Aligned examples of one representation, as written by `spa prepare`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dataset {
    pub representation: Representation,
    pub rows: Vec<DataRow>,
}

impl Dataset {
    pub fn examples(&self) -> Vec<Example> {
        self.rows.iter().map(|r| r.example.clone()).collect()
    }

    pub fn regular_flags(&self) -> Vec<bool> {
        self.rows.iter().map(|r| r.pair.regular).collect()
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("representation {}\n", self.representation);
        for r in &self.rows {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\n",
                r.pair.spelling,
                r.pair.stem,
                r.pair.past,
                if r.pair.regular { 0 } else { 1 },
                r.example.input,
                r.example.output
            ));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let representation = match lines.next() {
            Some((_, header)) => header
                .strip_prefix("representation ")
                .ok_or_else(|| Error::parse(1, "expected 'representation <tag>' header"))?
                .trim()
                .parse::<Representation>()?,
            None => return Err(Error::parse(1, "empty dataset file")),
        };
        let (n, m) = (representation.input_arity(), representation.output_arity());
        let mut rows = Vec::new();
        for (idx, raw) in lines {
            let line = idx + 1;
            if raw.trim().is_empty() {
                continue;
            }
            let f: Vec<&str> = raw.split('\t').collect();
            if f.len() != 6 {
                return Err(Error::parse(
                    line,
                    format!("expected 6 columns, found {}", f.len()),
                ));
            }
            let regular = match f[3] {
                "0" => true,
                "1" => false,
                other => return Err(Error::parse(line, format!("bad regularity flag '{other}'"))),
            };
            let example = Example::new(f[4], f[5]);
            if example.input.len() != n || example.output.len() != m {
                return Err(Error::parse(
                    line,
                    format!(
                        "pattern arities {}/{} do not match {representation}",
                        example.input.len(),
                        example.output.len()
                    ),
                ));
            }
            rows.push(DataRow {
                pair: VerbPair::new(f[0], f[1], f[2], regular),
                example,
            });
        }
        Ok(Dataset {
            representation,
            rows,
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&read_file(path)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        write_file(path, &self.to_text())
    }
}

/// Builds aligned examples for every pair that fits `rep`.
///
/// Returns the dataset and the number of pairs dropped as unfit.
pub fn build_examples(
    pairs: &[VerbPair],
    rep: Representation,
    inv: &PhonemeInventory,
) -> Result<(Dataset, usize)> {
    let mut rows = Vec::with_capacity(pairs.len());
    let mut unfit = 0;
    for pair in pairs {
        match rep.build_example(pair, inv)? {
            Some(example) => rows.push(DataRow {
                pair: pair.clone(),
                example,
            }),
            None => unfit += 1,
        }
    }
    Ok((
        Dataset {
            representation: rep,
            rows,
        },
        unfit,
    ))
}
