use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::lexicon::Example;

/// Tolerance under which a gain or a gain-ratio difference counts as zero.
pub(crate) const EPS: f64 = 1e-12;

/// Shannon entropy, in bits, of a class-count multiset.
pub fn entropy<I: IntoIterator<Item = usize>>(counts: I) -> Result<f64> {
    let counts: Vec<usize> = counts.into_iter().collect();
    let total: usize = counts.iter().sum();
    if total == 0 {
        return Err(Error::Domain("entropy of an empty multiset".into()));
    }
    Ok(entropy_of(&counts, total))
}

pub(crate) fn entropy_of(counts: &[usize], total: usize) -> f64 {
    let n = total as f64;
    counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / n;
            -p * p.log2()
        })
        .sum()
}

/// Gain, split information and their ratio for one candidate attribute.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitStats {
    pub gain: f64,
    pub split_info: f64,
    pub ratio: f64,
}

/// Rows of (input pattern, class label) for one output attribute.
///
/// Inputs are borrowed so every tree of a forest can share one copy of the
/// training inputs.
#[derive(Debug, Clone)]
pub struct LabeledSet<'a> {
    inputs: Vec<&'a [char]>,
    labels: Vec<char>,
    arity: usize,
}

impl<'a> LabeledSet<'a> {
    /// Fails on mixed arities or on equal inputs with different labels.
    pub fn new(inputs: Vec<&'a [char]>, labels: Vec<char>) -> Result<Self> {
        if inputs.len() != labels.len() {
            return Err(Error::Training(format!(
                "{} inputs but {} labels",
                inputs.len(),
                labels.len()
            )));
        }
        let arity = inputs.first().map_or(0, |i| i.len());
        let mut seen: HashMap<&[char], char> = HashMap::with_capacity(inputs.len());
        for (input, &label) in inputs.iter().zip(&labels) {
            if input.len() != arity {
                return Err(Error::Training(format!(
                    "input arity {} differs from {arity}",
                    input.len()
                )));
            }
            if let Some(&prev) = seen.get(input) {
                if prev != label {
                    return Err(Error::Training(format!(
                        "input {} is labeled both '{prev}' and '{label}'",
                        input.iter().collect::<String>()
                    )));
                }
            } else {
                seen.insert(input, label);
            }
        }
        Ok(LabeledSet {
            inputs,
            labels,
            arity,
        })
    }

    /// Builds a set the caller has already validated.
    pub(crate) fn trusted(inputs: Vec<&'a [char]>, labels: Vec<char>, arity: usize) -> Self {
        LabeledSet {
            inputs,
            labels,
            arity,
        }
    }

    /// Projects examples onto one output attribute.
    pub fn from_examples(examples: &'a [Example], output_index: usize) -> Result<Self> {
        let mut labels = Vec::with_capacity(examples.len());
        for e in examples {
            let label = *e.output.get(output_index).ok_or_else(|| {
                Error::Training(format!("output index {output_index} out of range"))
            })?;
            labels.push(label);
        }
        Self::new(examples.iter().map(|e| e.input.values()).collect(), labels)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn input(&self, row: usize) -> &'a [char] {
        self.inputs[row]
    }

    pub fn label(&self, row: usize) -> char {
        self.labels[row]
    }

    pub fn all_rows(&self) -> Vec<usize> {
        (0..self.len()).collect()
    }

    /// Gain ratio of splitting the whole set on `attr`.
    pub fn gain_ratio(&self, attr: usize) -> f64 {
        self.split_stats(&self.all_rows(), attr).ratio
    }

    /// Class counts over `rows`, sorted by label.
    pub(crate) fn class_counts(&self, rows: &[usize]) -> Vec<(char, usize)> {
        let mut counts: Vec<(char, usize)> = Vec::new();
        for &r in rows {
            let label = self.labels[r];
            match counts.binary_search_by_key(&label, |&(c, _)| c) {
                Ok(i) => counts[i].1 += 1,
                Err(i) => counts.insert(i, (label, 1)),
            }
        }
        counts
    }

    pub(crate) fn split_stats(&self, rows: &[usize], attr: usize) -> SplitStats {
        let (classes, class_totals): (Vec<char>, Vec<usize>) =
            self.class_counts(rows).into_iter().unzip();

        // value -> per-class counts, kept sorted by value
        let mut groups: Vec<(char, Vec<usize>)> = Vec::new();
        for &r in rows {
            let value = self.inputs[r][attr];
            let class = classes.binary_search(&self.labels[r]).unwrap();
            let g = match groups.binary_search_by_key(&value, |(v, _)| *v) {
                Ok(i) => i,
                Err(i) => {
                    groups.insert(i, (value, vec![0; classes.len()]));
                    i
                }
            };
            groups[g].1[class] += 1;
        }

        let total = rows.len();
        let n = total as f64;
        let mut remainder = 0.0;
        let mut split_info = 0.0;
        for (_, counts) in &groups {
            let size: usize = counts.iter().sum();
            let w = size as f64 / n;
            remainder += w * entropy_of(counts, size);
            split_info -= w * w.log2();
        }
        let gain = entropy_of(&class_totals, total) - remainder;
        let ratio = if split_info > 0.0 {
            gain / split_info
        } else {
            0.0
        };
        SplitStats {
            gain,
            split_info,
            ratio,
        }
    }
}

/// Free-function form of [`LabeledSet::gain_ratio`].
pub fn gain_ratio(s: &LabeledSet<'_>, attr: usize) -> f64 {
    s.gain_ratio(attr)
}
