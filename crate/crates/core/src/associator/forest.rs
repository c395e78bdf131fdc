use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;

use crate::error::{read_file, write_file, Error, Result};
use crate::lexicon::{Example, Pattern};
use crate::tree::{
    parse_tree, DecisionTree, LabeledSet, Lines, PassthroughReference, Strategy, TreeConfig,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForestConfig {
    pub strategy: Strategy,
    pub reference: PassthroughReference,
    /// Legal classes per output attribute; `None` leaves every tree unrestricted.
    pub domains: Option<Vec<Option<BTreeSet<char>>>>,
}

impl ForestConfig {
    pub fn new(strategy: Strategy) -> Self {
        ForestConfig {
            strategy,
            reference: PassthroughReference::SplitAttribute,
            domains: None,
        }
    }
}

/// One decision tree per output attribute, all trained on the same inputs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Forest {
    trees: Vec<DecisionTree>,
    input_arity: usize,
    output_arity: usize,
    /// Free-form tag naming how the patterns were built.
    pub representation: String,
    /// Fingerprint of the phoneme inventory the patterns use, if any.
    pub inventory: Option<String>,
}

impl Forest {
    /// Trains tree `i` on the projection (input, output\[i\]) of every example.
    ///
    /// Trees are independent and are grown in parallel; the result does not
    /// depend on scheduling.
    pub fn train(examples: &[Example], config: &ForestConfig) -> Result<Forest> {
        let first = examples
            .first()
            .ok_or_else(|| Error::Training("no training examples".into()))?;
        let (n, m) = (first.input.len(), first.output.len());
        let mut seen: HashMap<&Pattern, &Pattern> = HashMap::with_capacity(examples.len());
        for (i, e) in examples.iter().enumerate() {
            if e.input.len() != n || e.output.len() != m {
                return Err(Error::Training(format!(
                    "example {} has arities {}/{}, expected {n}/{m}",
                    i + 1,
                    e.input.len(),
                    e.output.len()
                )));
            }
            if let Some(prev) = seen.insert(&e.input, &e.output) {
                if prev != &e.output {
                    return Err(Error::Training(format!(
                        "contradictory examples: {} maps to both {} and {}",
                        e.input, prev, e.output
                    )));
                }
            }
        }
        if let Some(d) = &config.domains {
            if d.len() != m {
                return Err(Error::Training(format!(
                    "{} output domains for {m} output attributes",
                    d.len()
                )));
            }
        }

        let inputs: Vec<&[char]> = examples.iter().map(|e| e.input.values()).collect();
        let trees = (0..m)
            .into_par_iter()
            .map(|i| {
                let labels = examples.iter().map(|e| e.output[i]).collect();
                let set = LabeledSet::trusted(inputs.clone(), labels, n);
                let tree_config = TreeConfig {
                    strategy: config.strategy,
                    reference: config.reference,
                    output_index: i,
                    domain: config.domains.as_ref().and_then(|d| d[i].clone()),
                };
                DecisionTree::induce(&set, &tree_config)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Forest {
            trees,
            input_arity: n,
            output_arity: m,
            representation: String::from("custom"),
            inventory: None,
        })
    }

    pub fn trees(&self) -> &[DecisionTree] {
        &self.trees
    }

    pub fn tree(&self, output_index: usize) -> Option<&DecisionTree> {
        self.trees.get(output_index)
    }

    pub fn input_arity(&self) -> usize {
        self.input_arity
    }

    pub fn output_arity(&self) -> usize {
        self.output_arity
    }

    pub fn predict(&self, input: &[char]) -> Result<Pattern> {
        if input.len() != self.input_arity {
            return Err(Error::Usage(format!(
                "input has {} attributes, the forest expects {}",
                input.len(),
                self.input_arity
            )));
        }
        Ok(self.trees.iter().map(|t| t.classify(input)).collect())
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "forest");
        let _ = writeln!(out, "representation {}", self.representation);
        let _ = writeln!(
            out,
            "inventory {}",
            self.inventory.as_deref().unwrap_or("-")
        );
        let _ = writeln!(out, "input-arity {}", self.input_arity);
        let _ = writeln!(out, "output-arity {}", self.output_arity);
        let _ = writeln!(out, "trees {}", self.trees.len());
        for t in &self.trees {
            out.push_str(&t.to_text());
        }
        out
    }

    pub fn parse(text: &str) -> Result<Forest> {
        let mut lines = Lines::new(text);
        let forest = parse_forest(&mut lines)?;
        if let Some((line, _)) = lines.next() {
            return Err(Error::parse(line, "trailing content after forest"));
        }
        Ok(forest)
    }

    pub fn load(path: &Path) -> Result<Forest> {
        Self::parse(&read_file(path)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        write_file(path, &self.to_text())
    }

    /// Fails unless the forest was trained against `fingerprint`.
    pub fn verify_inventory(&self, fingerprint: &str) -> Result<()> {
        match &self.inventory {
            Some(f) if f == fingerprint => Ok(()),
            Some(f) => Err(Error::Usage(format!(
                "forest was trained with inventory {f}, but {fingerprint} was supplied"
            ))),
            None => Err(Error::Usage(
                "forest records no inventory fingerprint".into(),
            )),
        }
    }
}

fn field<'a>(lines: &mut Lines<'a>, key: &str) -> Result<(usize, &'a str)> {
    let (line, text) = lines.expect(key)?;
    match text.split_once(' ') {
        Some((k, v)) if k == key => Ok((line, v.trim())),
        _ => Err(Error::parse(line, format!("expected '{key} <value>'"))),
    }
}

fn numeric(lines: &mut Lines<'_>, key: &str) -> Result<usize> {
    let (line, v) = field(lines, key)?;
    v.parse()
        .map_err(|_| Error::parse(line, format!("{key} must be a number")))
}

pub(crate) fn parse_forest(lines: &mut Lines<'_>) -> Result<Forest> {
    match lines.next() {
        Some((_, "forest")) => {}
        Some((line, _)) => return Err(Error::parse(line, "expected 'forest' header")),
        None => return Err(Error::parse(1, "empty forest file")),
    }
    let (_, representation) = field(lines, "representation")?;
    let (_, inventory) = field(lines, "inventory")?;
    let input_arity = numeric(lines, "input-arity")?;
    let output_arity = numeric(lines, "output-arity")?;
    let count = numeric(lines, "trees")?;
    if count != output_arity {
        return Err(Error::parse(
            0,
            format!("{count} trees for {output_arity} outputs"),
        ));
    }
    let mut trees = Vec::with_capacity(count);
    for i in 0..count {
        let t = parse_tree(lines)?;
        if t.output_index != i {
            return Err(Error::parse(
                0,
                format!("tree {} is out of order", t.output_index),
            ));
        }
        trees.push(t);
    }
    Ok(Forest {
        trees,
        input_arity,
        output_arity,
        representation: representation.to_string(),
        inventory: (inventory != "-").then(|| inventory.to_string()),
    })
}

pub fn train(examples: &[Example], strategy: Strategy) -> Result<Forest> {
    Forest::train(examples, &ForestConfig::new(strategy))
}

pub fn predict(f: &Forest, input: &Pattern) -> Result<Pattern> {
    f.predict(input)
}
