//! Plain-text tree serialization.
//!
//! ```text
//! tree <output-index> <strategy> <reference> <domain>
//! split <attribute> <default-mode> <majority-class> <branch-count>
//!   <value> leaf <class>
//!   <value> split <attribute> <default-mode> <majority-class> <branch-count>
//!     ...
//! ```
//!
//! `<domain>` is `*` for an unrestricted tree or the legal classes between
//! braces, e.g. `{_bdg}`. A tree that is a single leaf has `leaf <class>` as
//! its root line. Indentation is cosmetic; branches follow their parent in
//! symbol order.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use super::induce::{DecisionTree, DefaultMode, DefaultRule, TreeNode};
use crate::error::{Error, Result};

impl DecisionTree {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let domain = match &self.domain {
            None => "*".to_string(),
            Some(d) => format!("{{{}}}", d.iter().collect::<String>()),
        };
        let _ = writeln!(
            out,
            "tree {} {} {} {}",
            self.output_index, self.strategy, self.reference, domain
        );
        write_node(&mut out, &self.root, None, 0);
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = Lines::new(text);
        let tree = parse_tree(&mut lines)?;
        if let Some((line, _)) = lines.next() {
            return Err(Error::parse(line, "trailing content after tree"));
        }
        Ok(tree)
    }
}

fn write_node(out: &mut String, node: &TreeNode, value: Option<char>, depth: usize) {
    for _ in 0..depth {
        out.push_str("  ");
    }
    if let Some(v) = value {
        out.push(v);
        out.push(' ');
    }
    match node {
        TreeNode::Leaf(c) => {
            let _ = writeln!(out, "leaf {c}");
        }
        TreeNode::Internal {
            attribute,
            branches,
            default,
        } => {
            let _ = writeln!(
                out,
                "split {attribute} {} {} {}",
                default.mode,
                default.majority_class,
                branches.len()
            );
            for (v, child) in branches {
                write_node(out, child, Some(*v), depth + 1);
            }
        }
    }
}

/// Non-blank lines with their 1-based line numbers.
pub(crate) struct Lines<'a> {
    inner: Box<dyn Iterator<Item = (usize, &'a str)> + 'a>,
}

impl<'a> Lines<'a> {
    pub(crate) fn new(text: &'a str) -> Self {
        Lines {
            inner: Box::new(
                text.lines()
                    .enumerate()
                    .map(|(i, l)| (i + 1, l.trim()))
                    .filter(|(_, l)| !l.is_empty()),
            ),
        }
    }

    pub(crate) fn next(&mut self) -> Option<(usize, &'a str)> {
        self.inner.next()
    }

    pub(crate) fn expect(&mut self, what: &str) -> Result<(usize, &'a str)> {
        self.next()
            .ok_or_else(|| Error::parse(0, format!("unexpected end of input, expected {what}")))
    }
}

fn single_char(line: usize, token: Option<&str>, what: &str) -> Result<char> {
    let token = token.ok_or_else(|| Error::parse(line, format!("missing {what}")))?;
    let mut chars = token.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) => Ok(c),
        _ => Err(Error::parse(
            line,
            format!("{what} must be a single symbol, got '{token}'"),
        )),
    }
}

fn number(line: usize, token: Option<&str>, what: &str) -> Result<usize> {
    token
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::parse(line, format!("bad or missing {what}")))
}

pub(crate) fn parse_tree(lines: &mut Lines<'_>) -> Result<DecisionTree> {
    let (line, header) = lines.expect("tree header")?;
    let mut tokens = header.split_whitespace();
    if tokens.next() != Some("tree") {
        return Err(Error::parse(line, "expected 'tree' header"));
    }
    let output_index = number(line, tokens.next(), "output index")?;
    let strategy = tokens
        .next()
        .ok_or_else(|| Error::parse(line, "missing strategy"))?
        .parse()
        .map_err(|e: Error| Error::parse(line, e.to_string()))?;
    let reference = tokens
        .next()
        .ok_or_else(|| Error::parse(line, "missing passthrough reference"))?
        .parse()
        .map_err(|e: Error| Error::parse(line, e.to_string()))?;
    let domain = match tokens.next() {
        Some("*") => None,
        Some(d) if d.len() >= 2 && d.starts_with('{') && d.ends_with('}') => {
            Some(d[1..d.len() - 1].chars().collect::<BTreeSet<char>>())
        }
        _ => return Err(Error::parse(line, "bad or missing domain")),
    };
    if tokens.next().is_some() {
        return Err(Error::parse(line, "trailing tokens in tree header"));
    }

    let (line, root_line) = lines.expect("root node")?;
    let root = parse_node(lines, line, &mut root_line.split_whitespace())?;
    Ok(DecisionTree {
        root,
        output_index,
        strategy,
        reference,
        domain,
    })
}

fn parse_node<'a>(
    lines: &mut Lines<'a>,
    line: usize,
    tokens: &mut impl Iterator<Item = &'a str>,
) -> Result<TreeNode> {
    let node = match tokens.next() {
        Some("leaf") => TreeNode::Leaf(single_char(line, tokens.next(), "leaf class")?),
        Some("split") => {
            let attribute = number(line, tokens.next(), "split attribute")?;
            let mode = match tokens.next() {
                Some("majority") => DefaultMode::Majority,
                Some("passthrough") => DefaultMode::Passthrough,
                _ => return Err(Error::parse(line, "bad or missing default mode")),
            };
            let majority_class = single_char(line, tokens.next(), "majority class")?;
            let count = number(line, tokens.next(), "branch count")?;
            if count == 0 {
                return Err(Error::parse(line, "a split needs at least one branch"));
            }
            let mut branches = std::collections::BTreeMap::new();
            for _ in 0..count {
                let (child_line, text) = lines.expect("branch")?;
                let mut child_tokens = text.split_whitespace();
                let value = single_char(child_line, child_tokens.next(), "branch value")?;
                let child = parse_node(lines, child_line, &mut child_tokens)?;
                if branches.insert(value, child).is_some() {
                    return Err(Error::parse(
                        child_line,
                        format!("duplicate branch '{value}'"),
                    ));
                }
            }
            TreeNode::Internal {
                attribute,
                branches,
                default: DefaultRule {
                    mode,
                    majority_class,
                },
            }
        }
        _ => return Err(Error::parse(line, "expected 'leaf' or 'split'")),
    };
    if tokens.next().is_some() {
        return Err(Error::parse(line, "trailing tokens"));
    }
    Ok(node)
}
