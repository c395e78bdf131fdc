//! Seeded experiments: train/test splits, scoring and reports.
//!
//! Scoring follows the usual word/letter/bit breakdown. A word is correct
//! only when every output position is; letter accuracy counts every output
//! slot, blanks included; bit accuracy is measured on the forest's raw output
//! before decoding and only exists for binary encodings.

mod config;
mod experiment;
mod metrics;
mod split;
mod synthetic;

pub use config::{CorpusSource, EncodingSpec, ExperimentConfig, ExperimentKind};
pub use experiment::{
    probe, probe_examples, run_experiment, AverageRow, Report, RunResult, PROBE_INPUT, PROBE_SETS,
};
pub use metrics::{evaluate, GroupCounts, Metrics};
pub use split::{run_seed, split, Split, SplitSpec};
pub use synthetic::{generate, SyntheticParams};
