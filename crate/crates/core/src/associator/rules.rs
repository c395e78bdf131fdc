use std::cmp::Reverse;
use std::fmt;

use crate::tree::{DecisionTree, TreeNode};

/// A root-to-leaf path read as "if every condition holds, the output
/// attribute takes this value". Indices are 0-based; display is 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductionRule {
    /// (input attribute, required value), in root-to-leaf order.
    pub conditions: Vec<(usize, char)>,
    pub output_index: usize,
    pub value: char,
}

impl ProductionRule {
    pub fn condition_count(&self) -> usize {
        self.conditions.len()
    }

    pub fn matches(&self, input: &[char]) -> bool {
        self.conditions
            .iter()
            .all(|&(a, v)| input.get(a) == Some(&v))
    }
}

impl fmt::Display for ProductionRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.conditions.is_empty() {
            f.write_str("If true")?;
        }
        for (i, (a, v)) in self.conditions.iter().enumerate() {
            let lead = if i == 0 { "If" } else { " and" };
            write!(f, "{lead} i{} = {v}", a + 1)?;
        }
        write!(f, ", then o{} = {}", self.output_index + 1, self.value)
    }
}

/// One rule per leaf, rules with more conditions first. Applied first-match
/// the list agrees with the tree on every input whose path exists in it; the
/// tree's default rules for unseen values are not materialized.
pub fn export_rules(t: &DecisionTree) -> Vec<ProductionRule> {
    let mut rules = Vec::with_capacity(t.root.leaf_count());
    let mut path = Vec::new();
    collect(&t.root, &mut path, t.output_index, &mut rules);
    rules.sort_by_key(|r| Reverse(r.condition_count()));
    rules
}

fn collect(
    node: &TreeNode,
    path: &mut Vec<(usize, char)>,
    output_index: usize,
    out: &mut Vec<ProductionRule>,
) {
    match node {
        TreeNode::Leaf(c) => out.push(ProductionRule {
            conditions: path.clone(),
            output_index,
            value: *c,
        }),
        TreeNode::Internal {
            attribute,
            branches,
            ..
        } => {
            for (v, child) in branches {
                path.push((*attribute, *v));
                collect(child, path, output_index, out);
                path.pop();
            }
        }
    }
}

/// Value of the first rule whose conditions all hold.
pub fn apply_rules(rules: &[ProductionRule], input: &[char]) -> Option<char> {
    rules.iter().find(|r| r.matches(input)).map(|r| r.value)
}

pub fn format_rules(rules: &[ProductionRule]) -> String {
    rules.iter().map(|r| format!("{r}\n")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::{LabeledSet, Strategy, TreeConfig};

    #[test]
    fn suffix_rule_text() {
        let rule = ProductionRule {
            conditions: vec![(3, 'k'), (4, '_')],
            output_index: 4,
            value: 't',
        };
        assert_eq!(rule.to_string(), "If i4 = k and i5 = _, then o5 = t");
    }

    #[test]
    fn single_leaf_gives_one_unconditional_rule() {
        let inputs: Vec<Vec<char>> = vec![vec!['a'], vec!['b']];
        let set = LabeledSet::new(
            inputs.iter().map(|v| v.as_slice()).collect(),
            vec!['x', 'x'],
        )
        .unwrap();
        let t = DecisionTree::induce(&set, &TreeConfig::new(Strategy::Adaptive)).unwrap();
        let rules = export_rules(&t);
        assert_eq!(rules.len(), 1);
        assert!(rules[0].conditions.is_empty());
        assert_eq!(rules[0].to_string(), "If true, then o1 = x");
        assert_eq!(apply_rules(&rules, &['q']), Some('x'));
    }

    #[test]
    fn rules_are_ordered_by_condition_count() {
        let inputs: Vec<Vec<char>> = ["ka", "kb", "ta", "sa"]
            .iter()
            .map(|s| s.chars().collect())
            .collect();
        let set = LabeledSet::new(
            inputs.iter().map(|v| v.as_slice()).collect(),
            vec!['1', '2', '3', '3'],
        )
        .unwrap();
        let t = DecisionTree::induce(&set, &TreeConfig::new(Strategy::Majority)).unwrap();
        let rules = export_rules(&t);
        assert!(rules
            .windows(2)
            .all(|w| w[0].condition_count() >= w[1].condition_count()));
        for input in &inputs {
            assert_eq!(apply_rules(&rules, input), Some(t.classify(input)));
        }
    }
}
