//! Gain-ratio decision trees with per-node default rules.
//!
//! Trees grow to purity without pruning. Every internal node stores a
//! [`DefaultRule`] that answers for attribute values the node never saw in
//! training: the node's majority class, or (passthrough) the unseen value
//! itself. Under [`Strategy::Adaptive`] each node picks passthrough only when
//! more of its rows have a class equal to their own value of the split
//! attribute than belong to the majority class.

mod format;
mod gain;
mod induce;

pub(crate) use format::{parse_tree, Lines};
pub use gain::{entropy, gain_ratio, LabeledSet, SplitStats};
pub use induce::{
    choose_default, classify, induce, DecisionTree, DefaultDecision, DefaultMode, DefaultRule,
    PassthroughReference, Strategy, TreeConfig, TreeNode,
};
