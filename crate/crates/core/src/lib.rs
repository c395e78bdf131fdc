//! Symbolic pattern associator.
//!
//! A forest of decision trees, one per output attribute, that maps
//! fixed-length symbol patterns to fixed-length symbol patterns. Each
//! internal tree node carries its own default rule for attribute values it
//! never saw in training: the node's majority class, or the unseen value
//! itself ("passthrough"), chosen per node by whichever the training rows
//! at that node agree with more often.
//!
//! Around the learner sit the pieces needed for the English past-tense
//! experiments: phoneme inventories and templates ([`lexicon`]), bit-level
//! encodings ([`encode`]), and a seeded experiment harness ([`harness`]).

pub mod associator;
pub mod encode;
pub mod error;
pub mod harness;
pub mod lexicon;
pub mod model;
pub mod tree;

pub use error::{Error, Result};
