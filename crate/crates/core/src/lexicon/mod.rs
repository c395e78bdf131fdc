//! Phoneme inventory, verb lexicon and the pattern representations built
//! from them.
//!
//! Inventory file format, one phoneme per line:
//!
//! ```text
//! <symbol> <C|V|B> <b1> ... <b10>
//! ```
//!
//! Lexicon file format, tab separated, one row per form, the stem row (`b`)
//! immediately followed by its past-tense row (`d`):
//!
//! ```text
//! abandon    6b&nd6n    b    0
//! abandoned  6b&nd6nd   d    0
//! ```
//!
//! The last column is 1 for an irregular past tense.

mod inventory;
mod pattern;
mod representation;
mod template;
mod verbs;

pub use inventory::{Klass, Phoneme, PhonemeInventory, FEATURE_BITS, VOICED};
pub use pattern::{Example, Pattern};
pub use representation::{build_examples, DataRow, Dataset, Representation};
pub use template::{
    align_template, Justification, SlotClass, Template, CODA_TEMPLATE, MAIN_TEMPLATE,
};
pub use verbs::{format_lexicon, load_lexicon, parse_lexicon, regular_suffix, VerbPair};
