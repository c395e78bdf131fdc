//! The N-to-M pattern associator: a [`Forest`] with one tree per output
//! attribute, and export of its trees as precedence-ordered production rules.
//!
//! Default rules stay attached to the trees. A passthrough default at a node
//! splitting on attribute `k` behaves like the first-order identity rule
//! "if input k = X then output = X" for every X the node never saw.
//!
//! Forest file format:
//!
//! ```text
//! forest
//! representation <tag>
//! inventory <fingerprint or ->
//! input-arity <n>
//! output-arity <m>
//! trees <m>
//! <m tree serializations, see the tree module>
//! ```

mod forest;
mod rules;

pub(crate) use forest::parse_forest;
pub use forest::{predict, train, Forest, ForestConfig};
pub use rules::{apply_rules, export_rules, format_rules, ProductionRule};
