use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use super::gain::{LabeledSet, EPS};
use crate::error::{Error, Result};

/// Which default rule an induced tree may attach to its internal nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Plain ID3: unseen values get the node's majority class.
    Majority,
    /// Unseen values map to themselves.
    Passthrough,
    /// Per node, whichever of the two the node's training rows agree with more.
    Adaptive,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Majority => "majority",
            Strategy::Passthrough => "passthrough",
            Strategy::Adaptive => "adaptive",
        })
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "majority" => Ok(Strategy::Majority),
            "passthrough" => Ok(Strategy::Passthrough),
            "adaptive" => Ok(Strategy::Adaptive),
            other => Err(Error::Usage(format!(
                "unknown strategy '{other}' (expected majority, passthrough or adaptive)"
            ))),
        }
    }
}

/// The input attribute whose value a passthrough default copies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum PassthroughReference {
    /// The attribute the node splits on.
    #[default]
    SplitAttribute,
    /// The input attribute at the same index as the tree's output attribute.
    Twin,
}

impl fmt::Display for PassthroughReference {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PassthroughReference::SplitAttribute => "split",
            PassthroughReference::Twin => "twin",
        })
    }
}

impl FromStr for PassthroughReference {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "split" => Ok(PassthroughReference::SplitAttribute),
            "twin" => Ok(PassthroughReference::Twin),
            other => Err(Error::Usage(format!(
                "unknown passthrough reference '{other}' (expected split or twin)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DefaultMode {
    Majority,
    Passthrough,
}

impl fmt::Display for DefaultMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DefaultMode::Majority => "majority",
            DefaultMode::Passthrough => "passthrough",
        })
    }
}

/// Class assignment for a value with no branch at an internal node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DefaultRule {
    pub mode: DefaultMode,
    pub majority_class: char,
}

/// A default rule with the two counts it was chosen from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DefaultDecision {
    pub rule: DefaultRule,
    /// Rows of the most frequent class.
    pub majority_count: usize,
    /// Rows whose class equals their own value of the reference attribute.
    pub passthrough_count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TreeNode {
    Leaf(char),
    Internal {
        attribute: usize,
        branches: BTreeMap<char, TreeNode>,
        default: DefaultRule,
    },
}

impl TreeNode {
    pub fn leaf_count(&self) -> usize {
        match self {
            TreeNode::Leaf(_) => 1,
            TreeNode::Internal { branches, .. } => {
                branches.values().map(TreeNode::leaf_count).sum()
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            TreeNode::Leaf(_) => 0,
            TreeNode::Internal { branches, .. } => {
                1 + branches.values().map(TreeNode::depth).max().unwrap_or(0)
            }
        }
    }
}

/// Induction settings for one tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeConfig {
    pub strategy: Strategy,
    pub reference: PassthroughReference,
    /// Index of the output attribute this tree predicts.
    pub output_index: usize,
    /// Legal class labels; a passthrough value outside it falls back to the
    /// majority class. `None` admits every value.
    pub domain: Option<BTreeSet<char>>,
}

impl TreeConfig {
    pub fn new(strategy: Strategy) -> Self {
        TreeConfig {
            strategy,
            reference: PassthroughReference::SplitAttribute,
            output_index: 0,
            domain: None,
        }
    }

    pub fn output_index(mut self, i: usize) -> Self {
        self.output_index = i;
        self
    }

    pub fn reference(mut self, r: PassthroughReference) -> Self {
        self.reference = r;
        self
    }

    pub fn domain(mut self, d: Option<BTreeSet<char>>) -> Self {
        self.domain = d;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecisionTree {
    pub root: TreeNode,
    pub output_index: usize,
    pub strategy: Strategy,
    pub reference: PassthroughReference,
    pub domain: Option<BTreeSet<char>>,
}

/// Majority class of `rows`; the smallest symbol wins a tie.
pub(crate) fn majority(set: &LabeledSet<'_>, rows: &[usize]) -> (char, usize) {
    let mut best = ('\0', 0);
    for (c, n) in set.class_counts(rows) {
        if n > best.1 {
            best = (c, n);
        }
    }
    best
}

/// Default rule for a node splitting `rows` on `split_attr`, with the
/// passthrough count taken against the split attribute itself.
pub fn choose_default(
    set: &LabeledSet<'_>,
    rows: &[usize],
    split_attr: usize,
    strategy: Strategy,
) -> DefaultDecision {
    decide_default(set, rows, Some(split_attr), strategy)
}

fn decide_default(
    set: &LabeledSet<'_>,
    rows: &[usize],
    reference_attr: Option<usize>,
    strategy: Strategy,
) -> DefaultDecision {
    let (majority_class, majority_count) = majority(set, rows);
    let passthrough_count = match reference_attr {
        Some(a) if a < set.arity() => rows
            .iter()
            .filter(|&&r| set.label(r) == set.input(r)[a])
            .count(),
        _ => 0,
    };
    let mode = match strategy {
        Strategy::Majority => DefaultMode::Majority,
        Strategy::Passthrough => DefaultMode::Passthrough,
        // a tie goes to majority
        Strategy::Adaptive if passthrough_count > majority_count => DefaultMode::Passthrough,
        Strategy::Adaptive => DefaultMode::Majority,
    };
    DefaultDecision {
        rule: DefaultRule {
            mode,
            majority_class,
        },
        majority_count,
        passthrough_count,
    }
}

/// Attribute to split on: the highest gain ratio among attributes with
/// positive gain, lowest index first on ties. When no attribute has positive
/// gain but some attribute still varies, the lowest-index varying attribute
/// is used so that purity is always reached on noise-free data. `None` only
/// when every available attribute is constant over `rows`.
pub(crate) fn select_attribute(
    set: &LabeledSet<'_>,
    rows: &[usize],
    available: &[bool],
) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    let mut fallback = None;
    for attr in (0..set.arity()).filter(|&a| available[a]) {
        let stats = set.split_stats(rows, attr);
        if stats.split_info <= 0.0 {
            continue;
        }
        fallback.get_or_insert(attr);
        if stats.gain > EPS && best.is_none_or(|(_, r)| stats.ratio > r + EPS) {
            best = Some((attr, stats.ratio));
        }
    }
    best.map(|(a, _)| a).or(fallback)
}

/// Grows a subtree over `rows` using the attributes flagged in `available`.
pub fn induce(
    set: &LabeledSet<'_>,
    rows: &[usize],
    available: &mut [bool],
    config: &TreeConfig,
) -> TreeNode {
    let (majority_class, majority_count) = majority(set, rows);
    if majority_count == rows.len() {
        return TreeNode::Leaf(majority_class);
    }
    let Some(attr) = select_attribute(set, rows, available) else {
        return TreeNode::Leaf(majority_class);
    };

    let mut parts: BTreeMap<char, Vec<usize>> = BTreeMap::new();
    for &r in rows {
        parts.entry(set.input(r)[attr]).or_default().push(r);
    }
    available[attr] = false;
    let branches = parts
        .into_iter()
        .map(|(value, sub)| (value, induce(set, &sub, available, config)))
        .collect();
    available[attr] = true;

    let reference = match config.reference {
        PassthroughReference::SplitAttribute => Some(attr),
        PassthroughReference::Twin => Some(config.output_index),
    };
    TreeNode::Internal {
        attribute: attr,
        branches,
        default: decide_default(set, rows, reference, config.strategy).rule,
    }
}

impl DecisionTree {
    pub fn induce(set: &LabeledSet<'_>, config: &TreeConfig) -> Result<Self> {
        if set.is_empty() {
            return Err(Error::Training(
                "cannot induce a tree from an empty set".into(),
            ));
        }
        let mut available = vec![true; set.arity()];
        let root = induce(set, &set.all_rows(), &mut available, config);
        Ok(DecisionTree {
            root,
            output_index: config.output_index,
            strategy: config.strategy,
            reference: config.reference,
            domain: config.domain.clone(),
        })
    }

    /// Class of `input`. Total: a value without a branch resolves through the
    /// node's default rule, and a missing attribute counts as unseen.
    pub fn classify(&self, input: &[char]) -> char {
        let mut node = &self.root;
        loop {
            match node {
                TreeNode::Leaf(c) => return *c,
                TreeNode::Internal {
                    attribute,
                    branches,
                    default,
                } => match input.get(*attribute).and_then(|v| branches.get(v)) {
                    Some(child) => node = child,
                    None => return self.resolve_default(default, *attribute, input),
                },
            }
        }
    }

    fn resolve_default(&self, rule: &DefaultRule, attribute: usize, input: &[char]) -> char {
        if rule.mode == DefaultMode::Majority {
            return rule.majority_class;
        }
        let source = match self.reference {
            PassthroughReference::SplitAttribute => attribute,
            PassthroughReference::Twin => self.output_index,
        };
        match input.get(source) {
            Some(&v) if self.domain.as_ref().is_none_or(|d| d.contains(&v)) => v,
            _ => rule.majority_class,
        }
    }
}

/// Free-function form of [`DecisionTree::classify`].
pub fn classify(t: &DecisionTree, input: &[char]) -> char {
    t.classify(input)
}
